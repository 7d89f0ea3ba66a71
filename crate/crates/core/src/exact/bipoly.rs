//! Bivariate and small multivariate integer polynomials.
//!
//! [`BiPoly`] is Z[T][x], dense in `x` with [`IntPoly`] coefficients — the
//! representation used for algebraic elements over Q(T) and for two-variable
//! torus measures (reading the variables as `(x, y)`). [`MultiPoly`] is a
//! sparse term list for up to three torus variables.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

use crate::error::{Error, Result};
use crate::exact::factor::{factor, is_irreducible};
use crate::exact::intpoly::IntPoly;
use crate::exact::modp::gcd_q;

/// Polynomial in `x` with coefficients in Z[T]; index = power of `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiPoly {
    coeffs: Vec<IntPoly>,
}

impl BiPoly {
    pub fn new(mut coeffs: Vec<IntPoly>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        BiPoly { coeffs }
    }

    pub fn zero() -> Self {
        BiPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        BiPoly {
            coeffs: vec![IntPoly::one()],
        }
    }

    pub fn from_int_poly_in_x(f: &IntPoly) -> Self {
        BiPoly::new(
            f.coeffs()
                .iter()
                .map(|c| IntPoly::constant(c.clone()))
                .collect(),
        )
    }

    pub fn from_int_poly_in_t(f: &IntPoly) -> Self {
        BiPoly::new(vec![f.clone()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn deg_x(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn deg_t(&self) -> usize {
        self.coeffs.iter().map(|c| c.deg_or_zero()).max().unwrap_or(0)
    }

    pub fn coeff(&self, k: usize) -> IntPoly {
        self.coeffs.get(k).cloned().unwrap_or_else(IntPoly::zero)
    }

    pub fn coeffs(&self) -> &[IntPoly] {
        &self.coeffs
    }

    /// Leading coefficient in `x`, an element of Z[T].
    pub fn leading_x(&self) -> IntPoly {
        self.coeffs.last().cloned().unwrap_or_else(IntPoly::zero)
    }

    /// True when monic as a polynomial in `x`.
    pub fn is_monic_x(&self) -> bool {
        self.leading_x().is_one()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        BiPoly::new((0..n).map(|k| self.coeff(k).add(&rhs.coeff(k))).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        BiPoly::new((0..n).map(|k| self.coeff(k).sub(&rhs.coeff(k))).collect())
    }

    pub fn neg(&self) -> Self {
        BiPoly {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return BiPoly::zero();
        }
        let mut out = vec![IntPoly::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        BiPoly::new(out)
    }

    pub fn mul_t_poly(&self, c: &IntPoly) -> Self {
        if c.is_zero() {
            return BiPoly::zero();
        }
        BiPoly {
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = BiPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Content in Z[T]: the gcd of the `x`-coefficients (primitive
    /// positive-leading). Errors on zero.
    pub fn content_t(&self) -> Result<IntPoly> {
        if self.is_zero() {
            return Err(Error::domain("content of the zero polynomial"));
        }
        let mut g = IntPoly::zero();
        for c in &self.coeffs {
            if c.is_zero() {
                continue;
            }
            g = gcd_q(&g, c);
            if g.is_one() {
                break;
            }
        }
        Ok(g)
    }

    /// Integer content: gcd of all integer coefficients.
    pub fn content_z(&self) -> Result<BigInt> {
        if self.is_zero() {
            return Err(Error::domain("content of the zero polynomial"));
        }
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            for a in c.coeffs() {
                g = num_integer::Integer::gcd(&g, a);
            }
            if g.is_one() {
                break;
            }
        }
        Ok(g)
    }

    /// Divide out the integer content and normalize the sign of the leading
    /// integer coefficient of the leading `x`-coefficient.
    pub fn primitive_z(&self) -> Result<(i8, BiPoly, BigInt)> {
        let c = self.content_z()?;
        let coeffs: Vec<IntPoly> = self
            .coeffs
            .iter()
            .map(|a| IntPoly::new(a.coeffs().iter().map(|q| q / &c).collect()))
            .collect();
        let mut out = BiPoly { coeffs };
        let neg = out.leading_x().leading().is_negative();
        if neg {
            out = out.neg();
        }
        Ok((if neg { -1 } else { 1 }, out, c))
    }

    /// Exact division in (Z[T])[x]; `None` when `rhs` does not divide.
    pub fn exact_div(&self, rhs: &Self) -> Option<BiPoly> {
        if rhs.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(BiPoly::zero());
        }
        if self.coeffs.len() < rhs.coeffs.len() {
            return None;
        }
        let lead = rhs.leading_x();
        let mut rem = self.coeffs.clone();
        let dq = self.coeffs.len() - rhs.coeffs.len();
        let mut q = vec![IntPoly::zero(); dq + 1];
        for k in (0..=dq).rev() {
            let top = rem[k + rhs.coeffs.len() - 1].clone();
            if top.is_zero() {
                continue;
            }
            let c = top.exact_div(&lead)?;
            for (j, b) in rhs.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].sub(&c.mul(b));
            }
            q[k] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(BiPoly::new(q))
    }

    /// Substitute a rational value for `T`, returning the resulting
    /// polynomial in `x` with cleared denominators: `(den, f(x, t0)*den)`.
    pub fn specialize_t(&self, t0: &num_rational::BigRational) -> IntPoly {
        // common denominator is den(t0)^deg_t; evaluate exactly and clear
        let mut vals: Vec<num_rational::BigRational> = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            vals.push(c.eval_rational(t0));
        }
        let rp = crate::exact::intpoly::RatPoly::new(vals);
        rp.clear_denominators().1
    }

    /// Substitute `x -> x`, `T -> x^k` (Kronecker substitution). Monomials
    /// map injectively when `k > deg_x`.
    pub fn kronecker(&self, k: usize) -> IntPoly {
        let mut out = vec![BigInt::zero(); self.deg_x() + k * self.deg_t() + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            for (j, a) in c.coeffs().iter().enumerate() {
                out[i + k * j] += a;
            }
        }
        IntPoly::new(out)
    }

    /// Inverse of [`kronecker`]: read base-`x^k` digits as coefficients in T.
    pub fn from_kronecker(f: &IntPoly, k: usize) -> BiPoly {
        let mut coeffs: Vec<IntPoly> = vec![IntPoly::zero(); k];
        for (e, c) in f.coeffs().iter().enumerate() {
            let i = e % k;
            let j = e / k;
            if c.is_zero() {
                continue;
            }
            while coeffs.len() <= i {
                coeffs.push(IntPoly::zero());
            }
            let mut cur = coeffs[i].coeffs().to_vec();
            while cur.len() <= j {
                cur.push(BigInt::zero());
            }
            cur[j] += c;
            coeffs[i] = IntPoly::new(cur);
        }
        BiPoly::new(coeffs)
    }

    /// Evaluate the `x`-coefficients at a point on the unit circle,
    /// `T = exp(2*pi*i*t)`, producing complex coefficients for the slice
    /// polynomial in `x`.
    pub fn slice_at_circle(&self, t: f64) -> Vec<(f64, f64)> {
        let theta = 2.0 * std::f64::consts::PI * t;
        let (re, im) = (theta.cos(), theta.sin());
        self.coeffs
            .iter()
            .map(|c| eval_unit(c, re, im))
            .collect()
    }

    /// Irreducibility over Q(T) of a polynomial with deg_x >= 1, after
    /// removing the Z[T]-content. Uses rational specializations of `T` as a
    /// fast certificate and falls back to an exact Kronecker-substitution
    /// factorization, which is complete for the supported sizes.
    pub fn is_irreducible_over_qt(&self) -> Result<bool> {
        let m = self.deg_x();
        if m == 0 {
            return Ok(false);
        }
        let prim = {
            let ct = self.content_t()?;
            let by_t = self.exact_div(&BiPoly::from_int_poly_in_t(&ct)).expect("content divides");
            by_t.primitive_z()?.1
        };
        if m == 1 {
            return Ok(true);
        }
        // fast path: an irreducible specialization with full degree certifies
        // irreducibility over Q(T)
        let lead = prim.leading_x();
        for t0 in [0i64, 1, -1, 2, -2, 3, -3, 5, -5, 7] {
            let t0r = num_rational::BigRational::from_integer(BigInt::from(t0));
            if lead.eval_big(&BigInt::from(t0)).is_zero() {
                continue;
            }
            let spec = prim.specialize_t(&t0r);
            if spec.deg_or_zero() != m {
                continue;
            }
            // the specialization can acquire spurious repeated factors; only
            // an irreducible verdict transfers
            if let Ok(true) = is_irreducible(&spec) {
                return Ok(true);
            }
        }
        // exact fallback: factor the Kronecker image and test subset
        // products mapped back to (Z[T])[x]
        let k = m + 1;
        let image = prim.kronecker(k);
        if image.deg_or_zero() > crate::exact::factor::FACTOR_DEGREE_CAP {
            return Err(Error::capacity(format!(
                "bivariate irreducibility test needs univariate degree {}, beyond the cap",
                image.deg_or_zero()
            )));
        }
        let fac = factor(&image)?;
        if fac.is_irreducible() {
            return Ok(true);
        }
        // any true bivariate factor maps to a subset product of the image's
        // factors; enumerate subset products and test exact division
        let flat: Vec<IntPoly> = fac
            .factors
            .iter()
            .flat_map(|(f, mmul)| std::iter::repeat(f.clone()).take(*mmul as usize))
            .collect();
        let r = flat.len();
        if r > 20 {
            return Err(Error::capacity(
                "too many Kronecker factors for subset recombination".to_string(),
            ));
        }
        for mask in 1..(1u32 << r) - 1 {
            let mut prod = IntPoly::constant(fac.content.clone() * BigInt::from(fac.sign));
            for (i, g) in flat.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    prod = prod.mul(g);
                }
            }
            let cand = BiPoly::from_kronecker(&prod, k);
            let dx = cand.deg_x();
            if dx == 0 || dx >= m {
                continue;
            }
            let cand = match cand.primitive_z() {
                Ok((_, c, _)) => c,
                Err(_) => continue,
            };
            if prim.exact_div(&cand).is_some() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Canonical rendering with the given variable names.
    pub fn render(&self, var_x: &str, var_t: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let xs = match k {
                0 => String::new(),
                1 => var_x.to_string(),
                _ => format!("{var_x}^{k}"),
            };
            let term = if k == 0 {
                c.render(var_t)
            } else if c.is_one() {
                xs
            } else if c.is_constant() || c.coeffs().iter().filter(|q| !q.is_zero()).count() == 1 {
                if *c == IntPoly::constant(BigInt::from(-1)) {
                    format!("-{xs}")
                } else {
                    format!("{}*{xs}", c.render(var_t))
                }
            } else {
                format!("({})*{xs}", c.render(var_t))
            };
            parts.push(term);
        }
        let mut out = String::new();
        for (i, t) in parts.iter().enumerate() {
            if i == 0 {
                out.push_str(t);
            } else if let Some(stripped) = t.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(stripped);
            } else {
                out.push_str(" + ");
                out.push_str(t);
            }
        }
        out
    }
}

/// Evaluate an integer polynomial at `re + i*im` (a point on the unit
/// circle) by complex Horner.
pub fn eval_unit(c: &IntPoly, re: f64, im: f64) -> (f64, f64) {
    let mut ar = 0.0f64;
    let mut ai = 0.0f64;
    for a in c.coeffs().iter().rev() {
        let af = a.to_f64().unwrap_or(f64::NAN);
        let nr = ar * re - ai * im + af;
        let ni = ar * im + ai * re;
        ar = nr;
        ai = ni;
    }
    (ar, ai)
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("x", "T"))
    }
}

/// Sparse integer polynomial in up to three variables, used by the torus
/// measure quadrature. Terms are kept sorted by exponent vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    pub nvars: usize,
    terms: Vec<([u16; 3], BigInt)>,
}

impl MultiPoly {
    pub fn new(nvars: usize, mut terms: Vec<([u16; 3], BigInt)>) -> Result<Self> {
        if nvars == 0 || nvars > 3 {
            return Err(Error::domain("multivariate support covers 1 to 3 variables"));
        }
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<([u16; 3], BigInt)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            if c.is_zero() {
                continue;
            }
            if let Some(last) = merged.last_mut() {
                if last.0 == e {
                    last.1 += c;
                    continue;
                }
            }
            merged.push((e, c));
        }
        merged.retain(|(_, c)| !c.is_zero());
        Ok(MultiPoly {
            nvars,
            terms: merged,
        })
    }

    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[([u16; 3], BigInt)] {
        &self.terms
    }

    pub fn degree_in(&self, var: usize) -> usize {
        self.terms
            .iter()
            .map(|(e, _)| e[var] as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn total_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.terms
            .iter()
            .map(|(_, c)| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn from_int_poly(f: &IntPoly) -> Self {
        MultiPoly {
            nvars: 1,
            terms: f
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| ([k as u16, 0, 0], c.clone()))
                .collect(),
        }
    }

    /// Variables are ordered `(x, y)`: `x` exponent first, `y` second.
    pub fn from_bipoly(f: &BiPoly) -> Self {
        let mut terms = Vec::new();
        for (i, c) in f.coeffs().iter().enumerate() {
            for (j, a) in c.coeffs().iter().enumerate() {
                if !a.is_zero() {
                    terms.push(([i as u16, j as u16, 0], a.clone()));
                }
            }
        }
        MultiPoly::new(2, terms).expect("two variables")
    }

    pub fn to_int_poly(&self) -> Option<IntPoly> {
        if self.terms.iter().any(|(e, _)| e[1] != 0 || e[2] != 0) {
            return None;
        }
        let deg = self.degree_in(0);
        let mut coeffs = vec![BigInt::zero(); deg + 1];
        for (e, c) in &self.terms {
            coeffs[e[0] as usize] = c.clone();
        }
        Some(IntPoly::new(coeffs))
    }

    pub fn to_bipoly(&self) -> Option<BiPoly> {
        if self.terms.iter().any(|(e, _)| e[2] != 0) {
            return None;
        }
        let dx = self.degree_in(0);
        let mut coeffs = vec![Vec::new(); dx + 1];
        for (e, c) in &self.terms {
            let v: &mut Vec<BigInt> = &mut coeffs[e[0] as usize];
            while v.len() <= e[1] as usize {
                v.push(BigInt::zero());
            }
            v[e[1] as usize] = c.clone();
        }
        Some(BiPoly::new(coeffs.into_iter().map(IntPoly::new).collect()))
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        let nv = self.nvars.max(rhs.nvars);
        let mut terms = self.terms.clone();
        terms.extend(rhs.terms.iter().cloned());
        MultiPoly::new(nv, terms)
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        let nv = self.nvars.max(rhs.nvars);
        let mut terms = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let mut e = [0u16; 3];
                for k in 0..3 {
                    e[k] = ea[k]
                        .checked_add(eb[k])
                        .expect("exponent overflow in multivariate product");
                }
                terms.push((e, ca * cb));
            }
        }
        MultiPoly::new(nv, terms)
    }

    /// Evaluate at `(e^(2*pi*i*t_1), ..., e^(2*pi*i*t_n))` using per-variable
    /// power tables.
    pub fn eval_torus(&self, ts: &[f64]) -> (f64, f64) {
        debug_assert_eq!(ts.len(), self.nvars);
        let tables: Vec<Vec<(f64, f64)>> = (0..self.nvars)
            .map(|v| {
                let d = self.degree_in(v);
                let th = 2.0 * std::f64::consts::PI * ts[v];
                let (c, s) = (th.cos(), th.sin());
                let mut tab = Vec::with_capacity(d + 1);
                let (mut pr, mut pi) = (1.0f64, 0.0f64);
                tab.push((pr, pi));
                for _ in 0..d {
                    let nr = pr * c - pi * s;
                    let ni = pr * s + pi * c;
                    pr = nr;
                    pi = ni;
                    tab.push((pr, pi));
                }
                tab
            })
            .collect();
        let mut sr = 0.0f64;
        let mut si = 0.0f64;
        for (e, coef) in &self.terms {
            let cf = coef.to_f64().unwrap_or(f64::NAN);
            let mut tr = cf;
            let mut ti = 0.0f64;
            for v in 0..self.nvars {
                let (pr, pi) = tables[v][e[v] as usize];
                let nr = tr * pr - ti * pi;
                let ni = tr * pi + ti * pr;
                tr = nr;
                ti = ni;
            }
            sr += tr;
            si += ti;
        }
        (sr, si)
    }

    /// Fix the trailing variables at circle points, returning the complex
    /// coefficient list of the polynomial in the first variable.
    pub fn slice_coeffs(&self, outer: &[f64]) -> Vec<(f64, f64)> {
        debug_assert_eq!(outer.len() + 1, self.nvars);
        let d0 = self.degree_in(0);
        let mut out = vec![(0.0f64, 0.0f64); d0 + 1];
        let tables: Vec<Vec<(f64, f64)>> = (1..self.nvars)
            .map(|v| {
                let d = self.degree_in(v);
                let th = 2.0 * std::f64::consts::PI * outer[v - 1];
                let (c, s) = (th.cos(), th.sin());
                let mut tab = Vec::with_capacity(d + 1);
                let (mut pr, mut pi) = (1.0f64, 0.0f64);
                tab.push((pr, pi));
                for _ in 0..d {
                    let nr = pr * c - pi * s;
                    let ni = pr * s + pi * c;
                    pr = nr;
                    pi = ni;
                    tab.push((pr, pi));
                }
                tab
            })
            .collect();
        for (e, coef) in &self.terms {
            let cf = coef.to_f64().unwrap_or(f64::NAN);
            let mut tr = cf;
            let mut ti = 0.0f64;
            for v in 1..self.nvars {
                let (pr, pi) = tables[v - 1][e[v] as usize];
                let nr = tr * pr - ti * pi;
                let ni = tr * pi + ti * pr;
                tr = nr;
                ti = ni;
            }
            out[e[0] as usize].0 += tr;
            out[e[0] as usize].1 += ti;
        }
        out
    }

    /// Render with standard variable names x, y, z.
    pub fn render(&self) -> String {
        const NAMES: [&str; 3] = ["x", "y", "z"];
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        // display highest-degree first: reverse of the sorted order
        for (e, c) in self.terms.iter().rev() {
            let mut vars = String::new();
            for v in 0..self.nvars {
                if e[v] == 0 {
                    continue;
                }
                if !vars.is_empty() {
                    vars.push('*');
                }
                vars.push_str(NAMES[v]);
                if e[v] > 1 {
                    vars.push('^');
                    vars.push_str(&e[v].to_string());
                }
            }
            let piece = if vars.is_empty() {
                c.to_string()
            } else if c.is_one() {
                vars
            } else if *c == BigInt::from(-1) {
                format!("-{vars}")
            } else {
                format!("{c}*{vars}")
            };
            parts.push(piece);
        }
        let mut out = String::new();
        for (i, t) in parts.iter().enumerate() {
            if i == 0 {
                out.push_str(t);
            } else if let Some(stripped) = t.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(stripped);
            } else {
                out.push_str(" + ");
                out.push_str(t);
            }
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    fn bp(cols: &[&[i64]]) -> BiPoly {
        BiPoly::new(cols.iter().map(|c| t(c)).collect())
    }

    #[test]
    fn bipoly_arithmetic() {
        // f = x^2 - T, g = x + T: f*g = x^3 + T x^2 - T x - T^2
        let f = bp(&[&[0, -1], &[], &[1]]);
        let g = bp(&[&[0, 1], &[1]]);
        let prod = f.mul(&g);
        assert_eq!(prod.deg_x(), 3);
        assert_eq!(prod.coeff(3), t(&[1]));
        assert_eq!(prod.coeff(2), t(&[0, 1]));
        assert_eq!(prod.coeff(1), t(&[0, -1]));
        assert_eq!(prod.coeff(0), t(&[0, 0, -1]));
        assert_eq!(prod.exact_div(&g).unwrap(), f);
        assert_eq!(prod.exact_div(&f).unwrap(), g);
        assert!(f.exact_div(&g).is_none());
    }

    #[test]
    fn content_and_primitive() {
        // (T^2 + T) x + (T + 1) has Z[T]-content T + 1
        let f = bp(&[&[1, 1], &[0, 1, 1]]);
        assert_eq!(f.content_t().unwrap(), t(&[1, 1]));
        let g = bp(&[&[2, 2], &[4]]);
        assert_eq!(g.content_z().unwrap(), BigInt::from(2));
    }

    #[test]
    fn kronecker_round_trip() {
        let f = bp(&[&[1, -2, 3], &[0, 5], &[7]]);
        let k = f.deg_x() + 1;
        let img = f.kronecker(k);
        assert_eq!(BiPoly::from_kronecker(&img, k), f);
    }

    #[test]
    fn irreducibility_over_qt() {
        // x^2 - T: irreducible (T is not a square)
        assert!(bp(&[&[0, -1], &[], &[1]]).is_irreducible_over_qt().unwrap());
        // x^2 - T^2 = (x-T)(x+T): reducible
        assert!(!bp(&[&[0, 0, -1], &[], &[1]]).is_irreducible_over_qt().unwrap());
        // x^2 - (T+3): irreducible
        assert!(bp(&[&[-3, -1], &[], &[1]]).is_irreducible_over_qt().unwrap());
        // linear in x is always irreducible
        assert!(bp(&[&[1, 2, 3], &[9, 9]]).is_irreducible_over_qt().unwrap());
        // constants in x are units or content, not irreducible elements
        assert!(!bp(&[&[1, 1]]).is_irreducible_over_qt().unwrap());
        // x^2 + (T^2+1): irreducible over Q(T) even though every rational
        // specialization is a sum-of-squares candidate; fast path may fail,
        // Kronecker path must decide
        assert!(bp(&[&[1, 0, 1], &[], &[1]]).is_irreducible_over_qt().unwrap());
        // x^4 + 4: specializes reducibly everywhere constant; as a constant-
        // in-T polynomial it factors (Sophie Germain), so reducible
        assert!(!bp(&[&[4], &[], &[], &[], &[1]]).is_irreducible_over_qt().unwrap());
        // x^2 - 2: constant in T, irreducible
        assert!(bp(&[&[-2], &[], &[1]]).is_irreducible_over_qt().unwrap());
    }

    #[test]
    fn multipoly_basics() {
        // 1 + x + x*y
        let f = MultiPoly::new(
            2,
            vec![
                ([0, 0, 0], BigInt::one()),
                ([1, 0, 0], BigInt::one()),
                ([1, 1, 0], BigInt::one()),
            ],
        )
        .unwrap();
        assert_eq!(f.degree_in(0), 1);
        assert_eq!(f.degree_in(1), 1);
        assert_eq!(f.render(), "x*y + x + 1");
        // eval at t = (0, 0): f(1, 1) = 3
        let (re, im) = f.eval_torus(&[0.0, 0.0]);
        assert!((re - 3.0).abs() < 1e-12 && im.abs() < 1e-12);
        // slice at y = 1: coefficients [1, 2]
        let sc = f.slice_coeffs(&[0.0]);
        assert!((sc[0].0 - 1.0).abs() < 1e-12);
        assert!((sc[1].0 - 2.0).abs() < 1e-12);
    }

    #[test]
    fn multipoly_bipoly_round_trip() {
        let f = bp(&[&[1, -2], &[3], &[0, 0, 5]]);
        let m = MultiPoly::from_bipoly(&f);
        assert_eq!(m.to_bipoly().unwrap(), f);
        let g = t(&[1, 0, -7, 2]);
        let mg = MultiPoly::from_int_poly(&g);
        assert_eq!(mg.to_int_poly().unwrap(), g);
    }

    #[test]
    fn render_shapes() {
        let f = bp(&[&[0, -1], &[2, 1], &[1]]);
        assert_eq!(f.render("x", "T"), "x^2 + (T + 2)*x - T");
        let g = bp(&[&[3], &[-1]]);
        assert_eq!(g.render("x", "T"), "-x + 3");
    }
}
