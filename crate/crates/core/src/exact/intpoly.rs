//! Dense univariate polynomials over the integers.
//!
//! This is the workhorse type for everything exact: contents and primitive
//! parts, pseudo-division, subresultant remainder sequences, resultants,
//! squarefree decomposition, and the canonical text form used by the CLI.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::exact::rational::ExactRational;

/// A polynomial with integer coefficients, stored densely from the constant
/// term up. The zero polynomial is the empty vector; otherwise the last
/// coefficient is nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    /// Build from low-to-high coefficients, trimming trailing zeros.
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::new(vec![c])
    }

    /// The monomial `c * x^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        IntPoly { coeffs }
    }

    /// The polynomial `x`.
    pub fn var() -> Self {
        IntPoly::monomial(BigInt::one(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with `deg 0 = 0` for the zero polynomial (convenient in loops).
    pub fn deg_or_zero(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    /// Multiplicity of the root 0, i.e. the index of the lowest nonzero
    /// coefficient. Zero polynomial gives `None`.
    pub fn order_at_zero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn neg(&self) -> Self {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let mut c = self.coeff(k);
            c += rhs.coeff(k);
            out.push(c);
        }
        IntPoly::new(out)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn mul_scalar(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiply by `x^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    /// Exact division by `x^k`; errors if `x^k` does not divide.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        if self.is_zero() {
            return Ok(IntPoly::zero());
        }
        if self.order_at_zero().unwrap_or(0) < k {
            return Err(Error::domain("not divisible by the requested power of x"));
        }
        Ok(IntPoly {
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = IntPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    /// Coefficient reversal `x^deg * f(1/x)`, after stripping powers of `x`.
    pub fn reversal(&self) -> Self {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let low = self.order_at_zero().unwrap();
        let mut coeffs: Vec<BigInt> = self.coeffs[low..].to_vec();
        coeffs.reverse();
        IntPoly::new(coeffs)
    }

    /// Substitute `x -> x^k`.
    pub fn inflate(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return IntPoly::constant(self.eval_big(&BigInt::one()));
        }
        let mut coeffs = vec![BigInt::zero(); self.deg_or_zero() * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        IntPoly::new(coeffs)
    }

    /// Substitute `x -> c * x`.
    pub fn scale_arg(&self, c: &BigInt) -> Self {
        let mut power = BigInt::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &power);
            power *= c;
        }
        IntPoly::new(out)
    }

    /// Compose `self(g(x))` by Horner over polynomials.
    pub fn compose(&self, g: &IntPoly) -> Self {
        let mut acc = IntPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g);
            acc = acc.add(&IntPoly::constant(c.clone()));
        }
        acc
    }

    pub fn eval_big(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    /// Coefficients as f64, low to high. NaN on overflow is the caller's
    /// problem; exact pipelines should rescale first.
    pub fn coeffs_f64(&self) -> Vec<f64> {
        self.coeffs
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::NAN))
            .collect()
    }

    /// Largest absolute coefficient (the height of the polynomial).
    pub fn max_abs_coeff(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    /// Sum of absolute coefficients (the length of the polynomial).
    pub fn sum_abs_coeff(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }

    /// Positive gcd of the coefficients. Errors on the zero polynomial so a
    /// meaningless `content(0)` cannot slip into a normalization silently.
    pub fn content(&self) -> Result<BigInt> {
        if self.is_zero() {
            return Err(Error::domain("content of the zero polynomial"));
        }
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        Ok(g)
    }

    /// `self / content(self)`, preserving sign: `content * primitive == self`.
    pub fn primitive_part(&self) -> Result<IntPoly> {
        let c = self.content()?;
        Ok(IntPoly {
            coeffs: self.coeffs.iter().map(|a| a / &c).collect(),
        })
    }

    /// Split into `(sign, positive-leading primitive part, content)` with
    /// `sign * content * poly == self`.
    pub fn sign_primitive(&self) -> Result<(i8, IntPoly, BigInt)> {
        let c = self.content()?;
        let prim = IntPoly {
            coeffs: self.coeffs.iter().map(|a| a / &c).collect(),
        };
        if prim.leading().is_negative() {
            Ok((-1, prim.neg(), c))
        } else {
            Ok((1, prim, c))
        }
    }

    /// Exact division over the integers; `None` if `rhs` does not divide.
    pub fn exact_div(&self, rhs: &Self) -> Option<IntPoly> {
        if rhs.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        if self.coeffs.len() < rhs.coeffs.len() {
            return None;
        }
        let lead = rhs.leading();
        let mut rem = self.coeffs.clone();
        let dq = self.coeffs.len() - rhs.coeffs.len();
        let mut q = vec![BigInt::zero(); dq + 1];
        for k in (0..=dq).rev() {
            let top = rem[k + rhs.coeffs.len() - 1].clone();
            if top.is_zero() {
                continue;
            }
            let (c, r) = top.div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                rem[k + j] -= &c * b;
            }
            q[k] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(IntPoly::new(q))
    }

    /// Pseudo-division: returns `(q, r)` with
    /// `lc(rhs)^(deg f - deg g + 1) * self = q * rhs + r` and `deg r < deg rhs`.
    pub fn pseudo_divrem(&self, rhs: &Self) -> (IntPoly, IntPoly) {
        assert!(!rhs.is_zero(), "pseudo-division by zero");
        let d = rhs.deg_or_zero();
        let lead = rhs.leading();
        let mut r = self.clone();
        let mut q = IntPoly::zero();
        let mut steps = if self.coeffs.len() >= rhs.coeffs.len() {
            self.coeffs.len() - rhs.coeffs.len() + 1
        } else {
            0
        };
        while !r.is_zero() && r.deg_or_zero() >= d && r.coeffs.len() >= rhs.coeffs.len() {
            let k = r.deg_or_zero() - d;
            let t = IntPoly::monomial(r.leading(), k);
            q = q.mul_scalar(&lead).add(&t);
            r = r.mul_scalar(&lead).sub(&t.mul(rhs));
            steps -= 1;
        }
        // pad remaining multiplier so the stated identity holds exactly
        for _ in 0..steps {
            q = q.mul_scalar(&lead);
            r = r.mul_scalar(&lead);
        }
        (q, r)
    }

    /// Division over the rationals; `(q, r)` with `self = q*rhs + r` in Q[x].
    pub fn divrem_q(&self, rhs: &Self) -> Result<(RatPoly, RatPoly)> {
        RatPoly::from_int(self).divrem(&RatPoly::from_int(rhs))
    }

    /// True when `rhs` divides `self` over the rationals (equivalently, the
    /// primitive part of `rhs` divides `self` over the integers).
    pub fn divides(&self, rhs: &Self) -> bool {
        if self.is_zero() {
            return false;
        }
        match rhs.primitive_part() {
            Ok(p) => self.exact_div(&p).is_some(),
            Err(_) => true, // rhs == 0 is divisible by anything nonzero
        }
    }

    /// Subresultant polynomial remainder sequence, used by both the gcd
    /// fallback and the resultant. Returns the sequence starting with
    /// `(self, rhs)`; all entries nonzero except possibly a trailing zero.
    fn subresultant_prs(&self, rhs: &Self) -> Vec<IntPoly> {
        let mut seq = vec![self.clone(), rhs.clone()];
        let mut g = BigInt::one();
        let mut h = BigInt::one();
        loop {
            let n = seq.len();
            let a = &seq[n - 2];
            let b = &seq[n - 1];
            if b.is_zero() {
                break;
            }
            let delta = a.deg_or_zero() as i64 - b.deg_or_zero() as i64;
            if delta < 0 {
                // only possible at the first step; swap handled by caller
                break;
            }
            let (_, r) = a.pseudo_divrem(b);
            if r.is_zero() {
                seq.push(r);
                break;
            }
            let denom = &g * pow_big(&h, delta as u32);
            let next = IntPoly {
                coeffs: r.coeffs.iter().map(|c| c / &denom).collect(),
            };
            g = b.leading();
            h = if delta == 0 {
                h
            } else {
                // h^(1-delta) * g^delta, exact by the subresultant theory
                let num = pow_big(&g, delta as u32);
                let den = pow_big(&h, (delta - 1) as u32);
                &num / &den
            };
            seq.push(next);
            if seq.last().unwrap().is_constant() {
                break;
            }
        }
        seq
    }

    /// Greatest common divisor over Q, returned as the positive-leading
    /// primitive integer polynomial generating the same ideal. By convention
    /// `gcd(0, 0) = 0` and `gcd(f, 0) = primitive(f)`.
    ///
    /// This is the direct remainder-sequence implementation; the fast modular
    /// front-end in `exact::factor` calls it as its verification oracle.
    pub fn gcd_prs(&self, rhs: &Self) -> IntPoly {
        if self.is_zero() {
            if rhs.is_zero() {
                return IntPoly::zero();
            }
            return rhs.sign_primitive().unwrap().1;
        }
        if rhs.is_zero() {
            return self.sign_primitive().unwrap().1;
        }
        let (mut a, mut b) = (self.clone(), rhs.clone());
        if a.deg_or_zero() < b.deg_or_zero() {
            std::mem::swap(&mut a, &mut b);
        }
        if b.is_constant() {
            return IntPoly::one();
        }
        let a = a.sign_primitive().unwrap().1;
        let b = b.sign_primitive().unwrap().1;
        let seq = a.subresultant_prs(&b);
        // last nonzero entry is a gcd up to content
        let g = seq
            .iter()
            .rev()
            .find(|p| !p.is_zero())
            .expect("sequence starts nonzero");
        if seq.last().unwrap().is_zero() {
            g.sign_primitive().unwrap().1
        } else {
            // remainder sequence ended at a nonzero constant: coprime
            IntPoly::one()
        }
    }

    /// Resultant of `self` and `rhs` via the subresultant sequence.
    pub fn resultant(&self, rhs: &Self) -> BigInt {
        resultant_prs(self, rhs)
    }

    /// Squarefree decomposition by Yun's algorithm: returns pairs
    /// `(g_i, i)` with `self = sign * content * prod g_i^i`, the `g_i`
    /// pairwise coprime, squarefree, primitive, positive-leading.
    pub fn squarefree_decomposition(&self) -> Result<(i8, BigInt, Vec<(IntPoly, u32)>)> {
        let (sign, f, content) = self.sign_primitive()?;
        if f.is_constant() {
            return Ok((sign, content, Vec::new()));
        }
        let df = f.derivative();
        let a0 = f.gcd_prs(&df);
        let mut parts = Vec::new();
        let mut b = f.exact_div(&a0).expect("gcd divides");
        let mut c = df.exact_div(&a0).expect("gcd divides derivative");
        let mut i = 1u32;
        loop {
            let d = c.sub(&b.derivative());
            if d.is_zero() {
                if b.deg_or_zero() > 0 {
                    parts.push((b, i));
                }
                break;
            }
            let g = b.gcd_prs(&d);
            if g.deg_or_zero() > 0 {
                parts.push((g.clone(), i));
            }
            b = b.exact_div(&g).expect("gcd divides");
            c = d.exact_div(&g).expect("gcd divides");
            i += 1;
            if b.is_constant() {
                break;
            }
        }
        Ok((sign, content, parts))
    }

    /// The squarefree part `prod g_i` (radical), primitive, positive-leading.
    pub fn radical(&self) -> Result<IntPoly> {
        let (_, _, parts) = self.squarefree_decomposition()?;
        let mut out = IntPoly::one();
        for (g, _) in parts {
            out = out.mul(&g);
        }
        Ok(out)
    }

    /// Ordering used for deterministic report output: by degree, then
    /// lexicographically on coefficients from the top down.
    pub fn cmp_graded(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| {
                for (a, b) in self.coeffs.iter().rev().zip(other.coeffs.iter().rev()) {
                    match a.cmp(b) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                Ordering::Equal
            })
    }

    /// Canonical text form in the variable `var`, matching the expression
    /// grammar the CLI accepts (explicit `*`, caret powers, descending
    /// degree). The zero polynomial prints as `0`.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let show_coeff = k == 0 || !mag.is_one();
            if show_coeff {
                out.push_str(&mag.to_string());
            }
            if k > 0 {
                if show_coeff {
                    out.push('*');
                }
                out.push_str(var);
                if k > 1 {
                    out.push('^');
                    out.push_str(&k.to_string());
                }
            }
        }
        out
    }
}

fn pow_big(b: &BigInt, e: u32) -> BigInt {
    let mut acc = BigInt::one();
    for _ in 0..e {
        acc *= b;
    }
    acc
}

/// Resultant by repeated pseudo-division. With `R = prem(a, b)` (multiplier
/// `lc(b)^(da-db+1)`) the reduction is
///
/// ```text
/// res(a, b) = (-1)^(da*db) * lc(b)^(da - dR) * res(b, R) / lc(b)^((da-db+1)*db)
/// ```
///
/// so a running numerator/denominator pair of leading-coefficient powers
/// keeps everything in integers; the final division is exact because the
/// resultant of integer polynomials is an integer.
fn resultant_prs(f: &IntPoly, g: &IntPoly) -> BigInt {
    if f.is_zero() || g.is_zero() {
        return BigInt::zero();
    }
    let mut a = f.clone();
    let mut b = g.clone();
    let mut sign = 1i8;
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    if a.deg_or_zero() < b.deg_or_zero() {
        if (a.deg_or_zero() & b.deg_or_zero() & 1) == 1 {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        if b.is_constant() {
            if b.is_zero() {
                return BigInt::zero();
            }
            let total = num * pow_big(&b.leading(), a.deg_or_zero() as u32);
            let (q, rem) = total.div_rem(&den);
            debug_assert!(rem.is_zero(), "resultant bookkeeping must divide exactly");
            return if sign < 0 { -q } else { q };
        }
        let da = a.deg_or_zero();
        let db = b.deg_or_zero();
        let (_, r) = a.pseudo_divrem(&b);
        if r.is_zero() {
            return BigInt::zero();
        }
        if (da & db & 1) == 1 {
            sign = -sign;
        }
        num *= pow_big(&b.leading(), (da - r.deg_or_zero()) as u32);
        den *= pow_big(&b.leading(), (da - db + 1) as u32 * db as u32);
        a = b;
        b = r;
    }
}

/// Polynomials over Q, used internally for exact division and Bezout data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn from_int(p: &IntPoly) -> Self {
        RatPoly {
            coeffs: p
                .coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }

    pub fn mul_scalar(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return RatPoly::zero();
        }
        RatPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn divrem(&self, rhs: &Self) -> Result<(RatPoly, RatPoly)> {
        if rhs.is_zero() {
            return Err(Error::domain("polynomial division by zero"));
        }
        let d = rhs.coeffs.len();
        let lead_inv = rhs.leading().recip();
        let mut r = self.clone();
        let mut q = vec![BigRational::zero(); self.coeffs.len().saturating_sub(d) + 1];
        while !r.is_zero() && r.coeffs.len() >= d {
            let k = r.coeffs.len() - d;
            let c = r.leading() * &lead_inv;
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let t = &c * b;
                let cur = r.coeff(k + j) - t;
                if k + j < r.coeffs.len() {
                    r.coeffs[k + j] = cur;
                }
            }
            // leading term cancels exactly
            while r.coeffs.last().map_or(false, |c| c.is_zero()) {
                r.coeffs.pop();
            }
            q[k] = c;
        }
        Ok((RatPoly::new(q), r))
    }

    /// Clear denominators: `(c, p)` with `self = p / c`, p integer primitive
    /// up to the common denominator, c a positive integer.
    pub fn clear_denominators(&self) -> (BigInt, IntPoly) {
        let mut lcm = BigInt::one();
        for c in &self.coeffs {
            lcm = lcm.lcm(c.denom());
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let scaled = c * BigRational::from_integer(lcm.clone());
                debug_assert!(scaled.is_integer());
                scaled.to_integer()
            })
            .collect();
        (lcm, IntPoly::new(coeffs))
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("x"))
    }
}

/// Rational scalar times an integer polynomial: convenience for callers that
/// need `(c, f)` with value `c * f`.
#[derive(Debug, Clone)]
pub struct ScaledPoly {
    pub scalar: ExactRational,
    pub poly: IntPoly,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_i64(coeffs)
    }

    #[test]
    fn arithmetic_basics() {
        let f = p(&[1, 2, 1]); // (x+1)^2
        let g = p(&[1, 1]);
        assert_eq!(g.mul(&g), f);
        assert_eq!(f.sub(&f), IntPoly::zero());
        assert_eq!(f.degree(), Some(2));
        assert_eq!(IntPoly::zero().degree(), None);
    }

    #[test]
    fn content_and_primitive() {
        let f = p(&[6, -9, 12]);
        assert_eq!(f.content().unwrap(), BigInt::from(3));
        let prim = f.primitive_part().unwrap();
        assert_eq!(prim, p(&[2, -3, 4]));
        assert_eq!(prim.mul_scalar(&BigInt::from(3)), f);
        // sign-preserving: negative leading stays negative
        let g = p(&[4, -8]);
        assert_eq!(g.primitive_part().unwrap(), p(&[1, -2]));
        let (s, pp, c) = g.sign_primitive().unwrap();
        assert_eq!((s, c), (-1, BigInt::from(4)));
        assert_eq!(pp, p(&[-1, 2]));
        assert!(IntPoly::zero().content().is_err());
    }

    #[test]
    fn exact_division() {
        let f = p(&[-1, 0, 0, 0, 0, 0, 1]); // x^6 - 1
        let g = p(&[-1, 1]); // x - 1
        let q = f.exact_div(&g).unwrap();
        assert_eq!(q, p(&[1, 1, 1, 1, 1, 1]));
        assert!(f.exact_div(&p(&[1, 1, 1])).is_some()); // x^2+x+1 | x^6-1
        assert!(f.exact_div(&p(&[2, 1])).is_none());
    }

    #[test]
    fn pseudo_division_identity() {
        let f = p(&[3, -2, 0, 7, 1, -4]);
        let g = p(&[1, 0, -3]);
        let (q, r) = f.pseudo_divrem(&g);
        let e = f.deg_or_zero() - g.deg_or_zero() + 1;
        let lhs = f.mul_scalar(&pow_big(&g.leading(), e as u32));
        assert_eq!(lhs, q.mul(&g).add(&r));
        assert!(r.deg_or_zero() < g.deg_or_zero() || r.is_zero());
    }

    #[test]
    fn gcd_of_products() {
        let a = p(&[1, 1]); // x + 1
        let b = p(&[-2, 1]); // x - 2
        let c = p(&[1, 0, 1]); // x^2 + 1
        let f = a.mul(&b).mul(&c);
        let g = a.mul(&c).mul(&p(&[5, 3]));
        let d = f.gcd_prs(&g);
        assert_eq!(d, a.mul(&c));
        assert_eq!(p(&[2, 2]).gcd_prs(&p(&[-3, 0, 3])), p(&[1, 1])); // common x+1, contents dropped
        assert_eq!(f.gcd_prs(&IntPoly::zero()), f.sign_primitive().unwrap().1);
    }

    #[test]
    fn resultant_known_values() {
        // res(x^2 - 2, x^2 - 3) = prod over roots b of the second of (b^2 - 2)
        // = (3 - 2)(3 - 2) = 1
        let f = p(&[-2, 0, 1]);
        let g = p(&[-3, 0, 1]);
        assert_eq!(f.resultant(&g), BigInt::from(1));
        // res(x - a, g) = g(a)
        let a = p(&[-5, 1]);
        let g2 = p(&[1, 2, 3]);
        assert_eq!(a.resultant(&g2), BigInt::from(3 * 25 + 2 * 5 + 1));
        // swap symmetry: res(g, f) = (-1)^(deg f * deg g) res(f, g)
        assert_eq!(g2.resultant(&a), BigInt::from(86));
        // common root gives zero
        let h = p(&[-1, 1]).mul(&p(&[1, 1]));
        assert_eq!(h.resultant(&p(&[-1, 1])), BigInt::zero());
        // discriminant-style check: res(x^2+1, 2x) = 4
        assert_eq!(p(&[1, 0, 1]).resultant(&p(&[0, 2])), BigInt::from(4));
    }

    #[test]
    fn squarefree_decomposition_reconstructs() {
        // f = 6 * (x+1)^2 * (x^2+2)^3 * (x-3)
        let f = p(&[1, 1])
            .pow(2)
            .mul(&p(&[2, 0, 1]).pow(3))
            .mul(&p(&[-3, 1]))
            .mul_scalar(&BigInt::from(6));
        let (sign, content, parts) = f.squarefree_decomposition().unwrap();
        assert_eq!(sign, 1);
        assert_eq!(content, BigInt::from(6));
        let mut rebuilt = IntPoly::constant(content);
        for (g, m) in &parts {
            rebuilt = rebuilt.mul(&g.pow(*m));
        }
        assert_eq!(rebuilt, f);
        let mults: Vec<u32> = parts.iter().map(|(_, m)| *m).collect();
        assert_eq!(mults, vec![1, 2, 3]);
        assert_eq!(
            f.radical().unwrap(),
            p(&[1, 1]).mul(&p(&[2, 0, 1])).mul(&p(&[-3, 1]))
        );
    }

    #[test]
    fn rational_division() {
        let f = p(&[1, 0, 0, 1]); // x^3 + 1
        let g = p(&[0, 2]); // 2x
        let (q, r) = f.divrem_q(&g).unwrap();
        // x^3 + 1 = (x^2/2)(2x) + 1
        assert_eq!(q.coeff(2), BigRational::new(BigInt::one(), BigInt::from(2)));
        assert_eq!(r.coeff(0), BigRational::from_integer(BigInt::one()));
    }

    #[test]
    fn render_round_shapes() {
        assert_eq!(p(&[0]).render("x"), "0");
        assert_eq!(p(&[-1, 0, 3]).render("T"), "3*T^2 - 1");
        assert_eq!(p(&[0, -1]).render("x"), "-x");
        assert_eq!(p(&[5]).render("x"), "5");
        assert_eq!(p(&[2, 1]).render("T"), "T + 2");
        assert_eq!(
            p(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]).render("x"),
            "x^10 + x^9 - x^7 - x^6 - x^5 - x^4 - x^3 + x + 1"
        );
    }

    #[test]
    fn reversal_and_inflate() {
        let f = p(&[0, 0, 2, 0, 1]); // x^2(x^2 + 2) -> reversal 2x^2 + 1... strip x^2 first: x^2+2 -> 2x^2+1
        assert_eq!(f.reversal(), p(&[1, 0, 2]));
        assert_eq!(p(&[1, 1]).inflate(3), p(&[1, 0, 0, 1]));
        assert_eq!(p(&[1, 2]).scale_arg(&BigInt::from(3)), p(&[1, 6]));
    }

    #[test]
    fn graded_order() {
        let mut v = vec![p(&[0, 1]), p(&[-1, 1]), p(&[1, 1]), p(&[2])];
        v.sort_by(|a, b| a.cmp_graded(b));
        assert_eq!(v, vec![p(&[2]), p(&[-1, 1]), p(&[0, 1]), p(&[1, 1])]);
    }
}
