//! The adelic structure on Q(T).
//!
//! Places come in three families: closed points of the affine line over Q
//! (irreducible primitive integer polynomials `F_x`, with
//! `|phi|_x = H(x)^(-ord_x phi)` and `H(x) = exp(m(F_x))`), rational primes
//! carrying the Gauss norm (which, in canonical form, reads the p-adic data
//! off the scalar), and the circle family `t in [0,1)` evaluating at
//! `e^(2 pi i t)`. Their defining property is the product formula: the sum
//! of `log|phi|` over all places vanishes for every nonzero `phi in Q(T)`.
//!
//! On top of the places sit the heights: `h_S` on projective points over
//! Q(T) as the integral of `log max |coords|`, and on algebraic elements
//! through the closed form `m(minpoly) / deg`. The normalization machinery
//! for pairs presented by monic integral equations (the common-content
//! constant `c`, the correction polynomial, the exact finite-place
//! cancellation check, and the norm-comparison inequality) lives here too.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::cyclotomic::{
    bivariate_torsion_test, root_of_unity_order, CycFactor, TorsionCertificate, TorsionStatus,
};
use crate::error::{Error, Result};
use crate::exact::bipoly::eval_unit;
use crate::exact::ratfunc::poly_multiplicity;
use crate::exact::{factor, gcd_q, BiPoly, IntPoly, RatFunc};
use crate::mahler::{
    bivariate_measure, height_from_minpoly, int_poly_circle_args, mahler_roots, MeasureMethod,
    MeasureResult, TorusQuadratureConfig,
};
use crate::quad::integrate_all;

/// A place of the adelic structure on Q(T). Use the validating
/// constructors; the variants are public for matching.
#[derive(Debug, Clone, PartialEq)]
pub enum Place {
    /// Closed point of the affine line: an irreducible, primitive,
    /// positive-leading integer polynomial.
    ClosedPoint(IntPoly),
    /// A rational prime with the Gauss norm.
    Prime(u64),
    /// Evaluation at `e^(2 pi i t)`, `t in [0, 1)`.
    Circle(f64),
}

impl Place {
    /// Closed-point place. The polynomial is normalized to its primitive
    /// positive-leading associate (the same closed point); reducible input
    /// is a domain error.
    pub fn closed_point(fx: &IntPoly) -> Result<Place> {
        let fx = normalize_closed_point(fx)?;
        Ok(Place::ClosedPoint(fx))
    }

    pub fn prime(p: u64) -> Result<Place> {
        if !is_prime_u64(p) {
            return Err(Error::domain(format!("{p} is not prime")));
        }
        Ok(Place::Prime(p))
    }

    pub fn circle(t: f64) -> Result<Place> {
        if !(0.0..1.0).contains(&t) {
            return Err(Error::domain("circle parameter must lie in [0, 1)"));
        }
        Ok(Place::Circle(t))
    }
}

fn normalize_closed_point(fx: &IntPoly) -> Result<IntPoly> {
    if fx.is_zero() || fx.is_constant() {
        return Err(Error::domain(
            "a closed point is a nonconstant irreducible polynomial",
        ));
    }
    let (_, prim, _) = fx.sign_primitive()?;
    if !factor::is_irreducible(&prim)? {
        return Err(Error::domain(format!(
            "{} is reducible, not a closed point",
            prim.render("T")
        )));
    }
    Ok(prim)
}

/// A point of projective space over Q(T): at least two coordinates, not
/// all zero.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectivePointQT {
    coords: Vec<RatFunc>,
}

impl ProjectivePointQT {
    pub fn new(coords: Vec<RatFunc>) -> Result<ProjectivePointQT> {
        if coords.len() < 2 {
            return Err(Error::domain("a projective point needs at least two coordinates"));
        }
        if coords.iter().all(|c| c.is_zero()) {
            return Err(Error::domain("projective point with all coordinates zero"));
        }
        Ok(ProjectivePointQT { coords })
    }

    pub fn coords(&self) -> &[RatFunc] {
        &self.coords
    }
}

/// An element of the algebraic closure of Q(T), presented by its minimal
/// polynomial: irreducible over Q(T), primitive in Z[T, x] with trivial
/// content in Z[T], positive leading coefficient. Construction normalizes
/// the presentation and verifies irreducibility (x-degree capped at 6).
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraicQT {
    minpoly: BiPoly,
    degree: usize,
}

/// x-degree cap for algebraic elements.
pub const ALGEBRAIC_DEGREE_CAP: usize = 6;

impl AlgebraicQT {
    pub fn new(minpoly: &BiPoly) -> Result<AlgebraicQT> {
        if minpoly.is_zero() {
            return Err(Error::domain("zero polynomial cannot present an element"));
        }
        let ct = minpoly.content_t()?;
        let stripped = minpoly
            .exact_div(&BiPoly::from_int_poly_in_t(&ct))
            .expect("content divides");
        let (_, prim, _) = stripped.primitive_z()?;
        let d = prim.deg_x();
        if d == 0 {
            return Err(Error::domain(
                "presentation is constant in x; it does not define an algebraic element",
            ));
        }
        if d > ALGEBRAIC_DEGREE_CAP {
            return Err(Error::capacity(format!(
                "algebraic elements are supported up to x-degree {ALGEBRAIC_DEGREE_CAP}, got {d}"
            )));
        }
        if !prim.is_irreducible_over_qt()? {
            return Err(Error::domain(format!(
                "{} is reducible over Q(T)",
                prim.render("x", "T")
            )));
        }
        Ok(AlgebraicQT {
            minpoly: prim,
            degree: d,
        })
    }

    /// Element of the algebraic closure of Q, constant in T.
    pub fn from_univariate(f: &IntPoly) -> Result<AlgebraicQT> {
        AlgebraicQT::new(&BiPoly::from_int_poly_in_x(f))
    }

    pub fn minpoly(&self) -> &BiPoly {
        &self.minpoly
    }

    /// `[Q(T)(alpha) : Q(T)]`.
    pub fn degree(&self) -> usize {
        self.degree
    }
}

/// Either kind of element a height or norm computation can take.
#[derive(Debug, Clone)]
pub enum ElementQT {
    Rational(RatFunc),
    Algebraic(AlgebraicQT),
}

impl ElementQT {
    /// Degree-1 algebraic presentations are rational elements in disguise;
    /// expose that.
    fn as_rational(&self) -> Option<RatFunc> {
        match self {
            ElementQT::Rational(r) => Some(r.clone()),
            ElementQT::Algebraic(a) => {
                if a.degree == 1 {
                    // a1(T) x + a0(T) = 0  =>  x = -a0/a1
                    let a0 = a.minpoly.coeff(0);
                    let a1 = a.minpoly.coeff(1);
                    Some(RatFunc::new(&a0.neg(), &a1).expect("leading coefficient nonzero"))
                } else {
                    None
                }
            }
        }
    }
}

/// The exact data normalizing a pair presented by monic integral equations
/// `x^d + ... + f_d` and `x^e + ... + g_e` over Z[T]: the constant
/// `c = gcd(content(f_d)^e, content(g_e)^d)` and the correction polynomial
/// `prod F_x^min(e·ord_x(f_d), d·ord_x(g_e))` over the common irreducible
/// factors of the two constant terms (1 when they share none).
#[derive(Debug, Clone)]
pub struct NormalizationData {
    pub f_d: IntPoly,
    pub g_e: IntPoly,
    pub d: u32,
    pub e: u32,
    pub c: BigInt,
    pub correction: IntPoly,
}

// ---------------------------------------------------------------------------
// small numeric helpers

/// `ln |x|` for big integers, safe far beyond f64 range.
fn ln_big_abs(x: &BigInt) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let a = x.abs();
    if let Some(f) = a.to_f64() {
        if f.is_finite() && f > 0.0 {
            return f.ln();
        }
    }
    let shift = a.bits().saturating_sub(64);
    let top = (&a >> shift).to_f64().unwrap_or(f64::MAX);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

fn ln_rat_abs(q: &BigRational) -> f64 {
    ln_big_abs(q.numer()) - ln_big_abs(q.denom())
}

/// `ln |f(e^(2 pi i t))|` (overflow-safe via hypot).
fn ln_abs_on_circle(f: &IntPoly, t: f64) -> f64 {
    let th = 2.0 * std::f64::consts::PI * t;
    let (re, im) = eval_unit(f, th.cos(), th.sin());
    re.hypot(im).ln()
}

fn big_pow(b: &BigInt, e: u32) -> BigInt {
    let mut out = BigInt::one();
    for _ in 0..e {
        out *= b;
    }
    out
}

// ---------------------------------------------------------------------------
// primality and integer factorization (for the prime places of the exact
// normalization check)

fn is_prime_u64(n: u64) -> bool {
    is_probable_prime(&BigInt::from(n))
}

/// Miller-Rabin to the first twelve prime bases: deterministic for all
/// inputs below 3.3e24, strong-probable-prime beyond.
fn is_probable_prime(n: &BigInt) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if *n < BigInt::from(2) {
        return false;
    }
    for p in BASES {
        let pb = BigInt::from(p);
        if *n == pb {
            return true;
        }
        if (n % &pb).is_zero() {
            return false;
        }
    }
    let n1: BigInt = n - 1;
    let s = n1.trailing_zeros().expect("n - 1 is nonzero");
    let d = &n1 >> s;
    let two = BigInt::from(2);
    'witness: for a in BASES {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x.is_one() || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: &BigInt) -> BigInt {
    for c in 1u64..64 {
        let cc = BigInt::from(c);
        let step = |x: &BigInt| (x * x + &cc) % n;
        let mut x = BigInt::from(2);
        let mut y = BigInt::from(2);
        let mut d = BigInt::one();
        while d.is_one() {
            x = step(&x);
            y = step(&step(&y));
            d = (&x - &y).abs().gcd(n);
        }
        if &d != n {
            return d;
        }
    }
    n.clone()
}

/// Factor a positive integer. Trial division for the small part, then
/// Miller-Rabin plus Pollard rho; gives up (capacity error) only if rho
/// stalls, which does not happen at desk scale.
fn factor_positive(n: &BigInt) -> Result<Vec<(BigInt, u32)>> {
    if !n.is_positive() {
        return Err(Error::domain("factorization of a nonpositive integer"));
    }
    let mut m = n.clone();
    let mut counts: HashMap<BigInt, u32> = HashMap::new();
    let mut p = BigInt::from(2);
    while &(&p * &p) <= &m && p < BigInt::from(10_000) {
        while (&m % &p).is_zero() {
            m /= &p;
            *counts.entry(p.clone()).or_insert(0) += 1;
        }
        p += if p == BigInt::from(2) { 1 } else { 2 };
    }
    let mut stack = vec![m];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_probable_prime(&m) {
            *counts.entry(m).or_insert(0) += 1;
            continue;
        }
        let d = pollard_rho(&m);
        if d.is_one() || d == m {
            return Err(Error::capacity(format!("could not factor {m}")));
        }
        stack.push(&m / &d);
        stack.push(d);
    }
    let mut out: Vec<(BigInt, u32)> = counts.into_iter().collect();
    out.sort();
    Ok(out)
}

fn valuation(n: &BigInt, p: &BigInt) -> u32 {
    let mut m = n.abs();
    let mut v = 0;
    while !m.is_zero() && (&m % p).is_zero() {
        m /= p;
        v += 1;
    }
    v
}

// ---------------------------------------------------------------------------
// absolute values and the product formula

/// `log |phi|_w` at a single place.
///
/// Closed point: `-ord_x(phi) * log H(x)` with `H(x) = exp(m(F_x))`.
/// Prime: the Gauss norm reads off the canonical scalar, giving the exact
/// multiple `-v_p(scalar) * log p`. Circle: `log |phi(e^(2 pi i t))|`, a
/// pole error when `t` hits a zero of the denominator.
pub fn abs_value_log(phi: &RatFunc, place: &Place) -> Result<f64> {
    if phi.is_zero() {
        return Err(Error::domain("absolute value of the zero element"));
    }
    match place {
        Place::ClosedPoint(fx) => {
            let fx = normalize_closed_point(fx)?;
            let ord = phi.ord_at(&fx)?;
            if ord == 0 {
                return Ok(0.0);
            }
            let h = mahler_roots(&fx)?;
            Ok(-(ord as f64) * h.value)
        }
        Place::Prime(p) => {
            if !is_prime_u64(*p) {
                return Err(Error::domain(format!("{p} is not prime")));
            }
            let pb = BigInt::from(*p);
            let v = valuation(phi.scalar().numer(), &pb) as i64
                - valuation(phi.scalar().denom(), &pb) as i64;
            Ok(-(v as f64) * (*p as f64).ln())
        }
        Place::Circle(t) => {
            if !(0.0..1.0).contains(t) {
                return Err(Error::domain("circle parameter must lie in [0, 1)"));
            }
            let th = 2.0 * std::f64::consts::PI * t;
            let (dre, dim) = eval_unit(phi.denominator(), th.cos(), th.sin());
            let dmod = dre.hypot(dim);
            let scale = phi
                .denominator()
                .sum_abs_coeff()
                .to_f64()
                .unwrap_or(f64::MAX);
            if dmod <= 1e-12 * scale.max(1.0) {
                return Err(Error::Pole(format!(
                    "denominator vanishes at the circle point t = {t}"
                )));
            }
            let (nre, nim) = eval_unit(phi.numerator(), th.cos(), th.sin());
            Ok(ln_rat_abs(phi.scalar()) + nre.hypot(nim).ln() - dmod.ln())
        }
    }
}

/// `H(x) = exp(m(F_x))`, the local height base of a closed point; always
/// at least 1.
pub fn h_of_closed_point(fx: &IntPoly) -> Result<MeasureResult> {
    let fx = normalize_closed_point(fx)?;
    let m = mahler_roots(&fx)?;
    let h = m.value.exp();
    Ok(MeasureResult {
        value: h,
        error_bound: h * (m.error_bound.exp_m1()) + 4.0 * f64::EPSILON * h,
        method: m.method,
        evals: m.evals,
        warning: m.warning,
    })
}

/// The product formula, evaluated honestly place by place: exact
/// closed-point sum `-sum ord * m(F)` over the factors of numerator and
/// denominator, exact prime sum `-ln |scalar|` (the p-adic values of a
/// rational telescope, no integer factorization needed), plus the adaptive
/// circle integral. The result is the total, expected to vanish within its
/// error bound.
pub fn product_formula_defect(
    phi: &RatFunc,
    cfg: &TorusQuadratureConfig,
) -> Result<MeasureResult> {
    if phi.is_zero() {
        return Err(Error::domain("product formula over the zero element"));
    }
    let mut value = 0.0;
    let mut err = 0.0;
    let mut evals = 0u64;
    for (poly, sgn) in [(phi.numerator(), 1.0), (phi.denominator(), -1.0)] {
        if poly.is_constant() {
            continue;
        }
        let fac = factor::factor(poly)?;
        for (fx, mult) in &fac.factors {
            let m = mahler_roots(fx)?;
            value -= sgn * *mult as f64 * m.value;
            err += *mult as f64 * m.error_bound;
            evals += m.evals;
        }
    }
    // primes: sum_p log|scalar|_p = -ln|scalar|
    let ls = ln_rat_abs(phi.scalar());
    value -= ls;
    // circle: ln|scalar| + integral of ln|num| - ln|den|
    value += ls;
    let num = phi.numerator().clone();
    let den = phi.denominator().clone();
    let mut splits = int_poly_circle_args(&num);
    splits.extend(int_poly_circle_args(&den));
    let q = integrate_all(
        |t| {
            let n = ln_abs_on_circle(&num, t);
            if den.is_one() {
                n
            } else {
                n - ln_abs_on_circle(&den, t)
            }
        },
        0.0,
        1.0,
        &splits,
        &cfg.quad(cfg.target_abs_error),
    );
    value += q.value;
    err += q.error;
    evals += q.evals;
    Ok(MeasureResult {
        value,
        error_bound: err + f64::EPSILON * (4.0 + value.abs()),
        method: MeasureMethod::Quadrature,
        evals,
        warning: !q.converged,
    })
}

// ---------------------------------------------------------------------------
// heights

/// Reduce a pair of rational functions to the canonical coprime integral
/// representative of the same projective point: integer polynomials,
/// coprime in Q[T], with coprime contents; the denominator-side coordinate
/// keeps positive leading sign. Zero coordinates map to (0, 1) and (1, 0).
pub fn canonicalize_p1(phi: &RatFunc, psi: &RatFunc) -> Result<(IntPoly, IntPoly)> {
    if phi.is_zero() && psi.is_zero() {
        return Err(Error::domain("projective point with both coordinates zero"));
    }
    if phi.is_zero() {
        return Ok((IntPoly::zero(), IntPoly::one()));
    }
    if psi.is_zero() {
        return Ok((IntPoly::one(), IntPoly::zero()));
    }
    let r = phi.div(psi)?;
    let a = r.numerator().mul_scalar(r.scalar().numer());
    let b = r.denominator().mul_scalar(r.scalar().denom());
    Ok((a, b))
}

fn circle_log_max(polys: &[&IntPoly], cfg: &TorusQuadratureConfig) -> crate::quad::QuadResult {
    let mut splits = Vec::new();
    if cfg.singularity_split {
        for p in polys {
            splits.extend(int_poly_circle_args(p));
        }
    }
    let owned: Vec<IntPoly> = polys.iter().map(|p| (*p).clone()).collect();
    integrate_all(
        |t| {
            owned
                .iter()
                .map(|p| ln_abs_on_circle(p, t))
                .fold(f64::NEG_INFINITY, f64::max)
        },
        0.0,
        1.0,
        &splits,
        &cfg.quad(cfg.target_abs_error),
    )
}

/// Height on the projective line. The pair is canonicalized, the finite
/// places are verified — exactly — to contribute nothing (the coordinates
/// share no polynomial factor and no content), and what remains is the
/// circle integral of `log max(|a|, |b|)`.
pub fn height_p1(point: &ProjectivePointQT, cfg: &TorusQuadratureConfig) -> Result<MeasureResult> {
    if point.coords.len() != 2 {
        return Err(Error::domain(
            "the projective-line height takes exactly two coordinates",
        ));
    }
    let (a, b) = canonicalize_p1(&point.coords[0], &point.coords[1])?;
    if !a.is_zero() && !b.is_zero() {
        if !gcd_q(&a, &b).is_constant() {
            return Err(Error::domain(
                "canonical coordinates share a polynomial factor",
            ));
        }
        if !a.content()?.gcd(&b.content()?).is_one() {
            return Err(Error::domain("canonical coordinates share integer content"));
        }
    }
    let polys: Vec<&IntPoly> = [&a, &b].into_iter().filter(|p| !p.is_zero()).collect();
    let q = circle_log_max(&polys, cfg);
    Ok(MeasureResult {
        value: q.value,
        error_bound: q.error + f64::EPSILON * (4.0 + q.value.abs()),
        method: MeasureMethod::Quadrature,
        evals: q.evals,
        warning: !q.converged,
    })
}

/// Height on projective n-space. Denominators are cleared exactly; the
/// finite contributions are the honest min-valuation sums
/// `-sum ord * m(F)` over the common polynomial factor and `-ln g` over the
/// common content (both vanish for normalized coordinates), plus the circle
/// integral of `log max |A_i|`.
pub fn height_pn(point: &ProjectivePointQT, cfg: &TorusQuadratureConfig) -> Result<MeasureResult> {
    // common denominator
    let mut den_poly = IntPoly::one();
    let mut den_int = BigInt::one();
    for c in &point.coords {
        if c.is_zero() {
            continue;
        }
        let g = gcd_q(&den_poly, c.denominator());
        den_poly = den_poly
            .mul(c.denominator())
            .exact_div(&g)
            .expect("gcd divides the product");
        den_int = den_int.lcm(c.scalar().denom());
    }
    let mut cleared: Vec<IntPoly> = Vec::with_capacity(point.coords.len());
    for c in &point.coords {
        if c.is_zero() {
            cleared.push(IntPoly::zero());
            continue;
        }
        let pq = den_poly
            .exact_div(c.denominator())
            .expect("common denominator is divisible by each denominator");
        let iq = &den_int / c.scalar().denom();
        cleared.push(c.numerator().mul(&pq).mul_scalar(&(c.scalar().numer() * iq)));
    }
    // exact finite-place sums
    let nonzero: Vec<&IntPoly> = cleared.iter().filter(|p| !p.is_zero()).collect();
    let mut g_poly = nonzero[0].clone();
    for p in &nonzero[1..] {
        if g_poly.is_constant() {
            break;
        }
        g_poly = gcd_q(&g_poly, p);
    }
    let mut g_int = BigInt::zero();
    for p in &nonzero {
        g_int = g_int.gcd(&p.content()?);
    }
    let mut value = 0.0;
    let mut err = 0.0;
    let mut evals = 0u64;
    if !g_poly.is_constant() {
        let fac = factor::factor(&g_poly)?;
        for (fx, mult) in &fac.factors {
            let m = mahler_roots(fx)?;
            value -= *mult as f64 * m.value;
            err += *mult as f64 * m.error_bound;
            evals += m.evals;
        }
    }
    value -= ln_big_abs(&g_int);
    let q = circle_log_max(&nonzero, cfg);
    value += q.value;
    err += q.error;
    evals += q.evals;
    Ok(MeasureResult {
        value,
        error_bound: err + f64::EPSILON * (4.0 + value.abs()),
        method: MeasureMethod::Quadrature,
        evals,
        warning: !q.converged,
    })
}

/// Height of an algebraic element: `m(minpoly) / degree`. Elements constant
/// in T reduce to the classical Weil height through the root-certified
/// univariate measure; genuinely bivariate elements integrate the inner
/// Jensen measure over the outer circle.
pub fn height_algebraic(
    alpha: &AlgebraicQT,
    cfg: &TorusQuadratureConfig,
) -> Result<MeasureResult> {
    if alpha.minpoly.deg_t() == 0 {
        let u = IntPoly::new(
            alpha
                .minpoly
                .coeffs()
                .iter()
                .map(|c| c.constant_term())
                .collect(),
        );
        return height_from_minpoly(&u);
    }
    let m = bivariate_measure(&alpha.minpoly, cfg)?;
    let d = alpha.degree as f64;
    Ok(MeasureResult {
        value: m.value / d,
        error_bound: m.error_bound / d,
        method: m.method,
        evals: m.evals,
        warning: m.warning,
    })
}

// ---------------------------------------------------------------------------
// normalization of pairs presented by monic integral equations

/// Compute the exact normalization data of a pair presented by monic
/// integral equations over Z[T] (a domain error otherwise, and a degenerate
/// -input error when a constant term vanishes).
pub fn normalization_data(phi: &AlgebraicQT, psi: &AlgebraicQT) -> Result<NormalizationData> {
    let fp = phi.minpoly();
    let gp = psi.minpoly();
    if !fp.is_monic_x() || !gp.is_monic_x() {
        return Err(Error::domain(
            "normalization needs presentations monic in x over Z[T]",
        ));
    }
    let d = fp.deg_x() as u32;
    let e = gp.deg_x() as u32;
    let f_d = fp.coeff(0);
    let g_e = gp.coeff(0);
    if f_d.is_zero() || g_e.is_zero() {
        return Err(Error::domain(
            "degenerate presentation: a constant term vanishes",
        ));
    }
    let cf = f_d.content()?;
    let cg = g_e.content()?;
    let c = big_pow(&cf, e).gcd(&big_pow(&cg, d));
    let h = gcd_q(&f_d, &g_e);
    let correction = if h.is_constant() {
        IntPoly::one()
    } else {
        let fac = factor::factor(&h)?;
        let mut out = IntPoly::one();
        for (fx, _) in &fac.factors {
            let a = poly_multiplicity(&f_d, fx);
            let b = poly_multiplicity(&g_e, fx);
            let exp = (e * a).min(d * b);
            if exp > 0 {
                out = out.mul(&fx.pow(exp));
            }
        }
        out
    };
    Ok(NormalizationData {
        f_d,
        g_e,
        d,
        e,
        c,
        correction,
    })
}

/// Exact verification that normalizing by `(c ·
/// correction)^(1/(d·e))` makes the larger of the two coordinates'
/// absolute values equal to 1 at every finite place that could see them:
/// each closed point dividing `f_d · g_e` and each prime dividing
/// `content(f_d) · content(g_e)`. All valuations are recomputed from
/// scratch, so crossed exponents or a wrong `c` in the data fail the check.
/// Pure rational arithmetic, no tolerance.
pub fn finite_place_normalization_check(data: &NormalizationData) -> Result<bool> {
    let d = i64::from(data.d);
    let e = i64::from(data.e);
    let de = BigInt::from(d * e);
    // closed points
    let prod = data.f_d.mul(&data.g_e);
    let fac = factor::factor(&prod)?;
    for (fx, _) in &fac.factors {
        let a = poly_multiplicity(&data.f_d, fx) as i64;
        let b = poly_multiplicity(&data.g_e, fx) as i64;
        let m_corr = poly_multiplicity(&data.correction, fx) as i64;
        // log|coordinate| in units of log H(x): -ord/deg plus the
        // normalization's m_corr/(d e)
        let v1 = BigRational::new(BigInt::from(-a * e + m_corr), de.clone());
        let v2 = BigRational::new(BigInt::from(-b * d + m_corr), de.clone());
        if !v1.max(v2).is_zero() {
            return Ok(false);
        }
    }
    // primes
    let cf = data.f_d.content()?;
    let cg = data.g_e.content()?;
    let cprod = &cf * &cg;
    if !cprod.is_one() {
        for (p, _) in factor_positive(&cprod)? {
            let vf = valuation(&cf, &p) as i64;
            let vg = valuation(&cg, &p) as i64;
            let vc = valuation(&data.c, &p) as i64;
            let v1 = BigRational::new(BigInt::from(-vf * e + vc), de.clone());
            let v2 = BigRational::new(BigInt::from(-vg * d + vc), de.clone());
            if !v1.max(v2).is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// the norm-comparison inequality

/// `RHS - LHS` of the norm comparison for a coordinate pair: the larger of
/// the two circle integrals of the normalized norms against
/// `[K' : Q(T)] · h_S([phi : psi])`. Nonnegative within the error bound.
///
/// Supported shapes: both coordinates rational (norms are the identity), or
/// one rational coordinate integral over Z[T] paired with a quadratic
/// element presented by a monic integral equation (norm = constant term up
/// to sign). Anything else is a capacity error.
pub fn key2_defect(
    phi: &ElementQT,
    psi: &ElementQT,
    cfg: &TorusQuadratureConfig,
) -> Result<MeasureResult> {
    let (rp, rq) = (phi.as_rational(), psi.as_rational());
    match (rp, rq, phi, psi) {
        (Some(p), Some(q), _, _) => key2_rational(&p, &q, cfg),
        (Some(p), None, _, ElementQT::Algebraic(a)) => key2_mixed(&p, a, cfg),
        (None, Some(q), ElementQT::Algebraic(a), _) => key2_mixed(&q, a, cfg),
        _ => Err(Error::capacity(
            "norm comparison supports rational pairs or one quadratic generator, \
             not two algebraic coordinates",
        )),
    }
}

fn key2_rational(
    phi: &RatFunc,
    psi: &RatFunc,
    cfg: &TorusQuadratureConfig,
) -> Result<MeasureResult> {
    if phi.is_zero() || psi.is_zero() {
        return Err(Error::domain("norm comparison needs nonzero coordinates"));
    }
    let (a, b) = canonicalize_p1(phi, psi)?;
    // presentations x - a, x - b; degrees d = e = 1
    let pa = AlgebraicQT::new(&BiPoly::new(vec![a.neg(), IntPoly::one()]))?;
    let pb = AlgebraicQT::new(&BiPoly::new(vec![b.neg(), IntPoly::one()]))?;
    let data = normalization_data(&pa, &pb)?;
    let ma = mahler_roots(&a)?;
    let mb = mahler_roots(&b)?;
    let mcorr = mahler_roots(&data.correction)?;
    let lc = ln_big_abs(&data.c);
    let lhs_a = ma.value - lc - mcorr.value;
    let lhs_b = mb.value - lc - mcorr.value;
    let lhs = lhs_a.max(lhs_b);
    let lhs_err = ma.error_bound.max(mb.error_bound) + mcorr.error_bound;
    let point = ProjectivePointQT::new(vec![phi.clone(), psi.clone()])?;
    let rhs = height_p1(&point, cfg)?;
    Ok(MeasureResult {
        value: rhs.value - lhs,
        error_bound: rhs.error_bound + lhs_err,
        method: MeasureMethod::Quadrature,
        evals: rhs.evals + ma.evals + mb.evals,
        warning: rhs.warning,
    })
}

fn key2_mixed(
    phi: &RatFunc,
    psi: &AlgebraicQT,
    cfg: &TorusQuadratureConfig,
) -> Result<MeasureResult> {
    if phi.is_zero() {
        return Err(Error::domain("norm comparison needs nonzero coordinates"));
    }
    if psi.degree() != 2 || !psi.minpoly().is_monic_x() {
        return Err(Error::capacity(
            "mixed norm comparison needs a quadratic element presented by a \
             monic integral equation",
        ));
    }
    if !phi.denominator().is_one() || !phi.scalar().denom().is_one() {
        return Err(Error::capacity(
            "mixed norm comparison needs the rational coordinate integral over Z[T]",
        ));
    }
    let f = phi.numerator().mul_scalar(phi.scalar().numer());
    let g1 = psi.minpoly().coeff(1);
    let g2 = psi.minpoly().coeff(0);
    // presentation x - f for the rational coordinate; d = 1, e = 2
    let pa = AlgebraicQT::new(&BiPoly::new(vec![f.neg(), IntPoly::one()]))?;
    let data = normalization_data(&pa, psi)?;
    let mphi = mahler_roots(&f)?;
    let mg2 = mahler_roots(&g2)?;
    let mcorr = mahler_roots(&data.correction)?;
    let lc = ln_big_abs(&data.c);
    // norms: N(phi) = phi^2, N(psi) = g2; both normalized by (c F)
    let lhs_phi = 2.0 * mphi.value - lc - mcorr.value;
    let lhs_psi = mg2.value - lc - mcorr.value;
    let lhs = lhs_phi.max(lhs_psi);
    let lhs_err = (2.0 * mphi.error_bound).max(mg2.error_bound) + mcorr.error_bound;
    // RHS = 2 h_S([phi : psi]) = m(minpoly of psi/phi): psi/phi satisfies
    // f^2 x^2 + g1 f x + g2
    let big = BiPoly::new(vec![g2.clone(), g1.mul(&f), f.mul(&f)]);
    let (_, prim, _) = big.primitive_z()?;
    let rhs = bivariate_measure(&prim, cfg)?;
    Ok(MeasureResult {
        value: rhs.value - lhs,
        error_bound: rhs.error_bound + lhs_err,
        method: MeasureMethod::Quadrature,
        evals: rhs.evals + mphi.evals + mg2.evals,
        warning: rhs.warning,
    })
}

// ---------------------------------------------------------------------------
// kernel classification

/// Where an element stands with respect to the kernel of the height.
///
/// `TorsionCoset` covers the height-zero elements that are not constant
/// roots of unity (monomials in T times roots of unity, and their algebraic
/// analogues): the height formula puts them in the kernel while the
/// classical statement of the kernel names only roots of unity, so the
/// `statement_mismatch` flag is raised rather than silently favoring either
/// reading.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Classification {
    RootOfUnity {
        order: u32,
    },
    TorsionCoset {
        certificate: TorsionCertificate,
        statement_mismatch: bool,
    },
    PositiveHeight {
        value: f64,
        error_bound: f64,
        /// set when positivity rests on an unconfirmed numeric value (the
        /// structural search was inconclusive)
        low_confidence: bool,
    },
    Inconclusive {
        measure: f64,
        error_bound: f64,
    },
}

fn t_power_exponent(p: &IntPoly) -> Option<usize> {
    let d = p.deg_or_zero();
    if *p == IntPoly::monomial(BigInt::one(), d) {
        Some(d)
    } else {
        None
    }
}

/// Classify a nonzero element against the kernel of the height.
///
/// Rational elements are decided exactly: `±1` are the rational roots of
/// unity, `± T^q` the monomial kernel members, and everything else has
/// certified positive height. Constant algebraic elements go through exact
/// order extraction. Genuinely bivariate elements use the structural
/// torsion search, falling back to the numeric measure (`low_confidence`
/// when the search was inconclusive but the measure clearly exceeds the
/// configured tolerance, `Inconclusive` otherwise).
pub fn kernel_classify(
    alpha: &ElementQT,
    cfg: &TorusQuadratureConfig,
) -> Result<Classification> {
    match alpha {
        ElementQT::Rational(r) => {
            if r.is_zero() {
                return Err(Error::domain("kernel classification of zero"));
            }
            let abs_scalar_one = r.scalar().numer().abs() == *r.scalar().denom();
            let nump = t_power_exponent(r.numerator());
            let denp = t_power_exponent(r.denominator());
            if abs_scalar_one {
                if let (Some(dn), Some(dd)) = (nump, denp) {
                    let q = dn as i64 - dd as i64;
                    let sign: i8 = if r.scalar().numer().is_negative() { -1 } else { 1 };
                    if q == 0 {
                        return Ok(Classification::RootOfUnity {
                            order: if sign == 1 { 1 } else { 2 },
                        });
                    }
                    // minpoly of s T^q: x - s T^q (q > 0) or T^|q| x - s,
                    // certified through the cleared-cyclotomic shape
                    let certificate = TorsionCertificate {
                        sign,
                        x_monomial: 0,
                        t_monomial: 0,
                        factors: vec![CycFactor {
                            n: 1,
                            inner_sign: sign,
                            t_exp: -q as i32,
                            x_exp: 1,
                            multiplicity: 1,
                        }],
                    };
                    return Ok(Classification::TorsionCoset {
                        certificate,
                        statement_mismatch: true,
                    });
                }
            }
            let point = ProjectivePointQT::new(vec![RatFunc::one(), r.clone()])?;
            let h = height_p1(&point, cfg)?;
            Ok(Classification::PositiveHeight {
                value: h.value,
                error_bound: h.error_bound,
                low_confidence: false,
            })
        }
        ElementQT::Algebraic(a) => {
            if a.minpoly.deg_t() == 0 {
                let u = IntPoly::new(
                    a.minpoly.coeffs().iter().map(|c| c.constant_term()).collect(),
                );
                if u == IntPoly::var() {
                    return Err(Error::domain("kernel classification of zero"));
                }
                if let Some(n) = root_of_unity_order(&u)? {
                    return Ok(Classification::RootOfUnity { order: n });
                }
                let h = height_from_minpoly(&u)?;
                return Ok(Classification::PositiveHeight {
                    value: h.value,
                    error_bound: h.error_bound,
                    low_confidence: false,
                });
            }
            let v = bivariate_torsion_test(&a.minpoly, cfg)?;
            let d = a.degree as f64;
            match v.status {
                TorsionStatus::Torsion => Ok(Classification::TorsionCoset {
                    certificate: v.certificate.expect("torsion status carries a certificate"),
                    statement_mismatch: true,
                }),
                TorsionStatus::NotTorsion => Ok(Classification::PositiveHeight {
                    value: v.numeric_measure.value / d,
                    error_bound: v.numeric_measure.error_bound / d,
                    low_confidence: false,
                }),
                TorsionStatus::Inconclusive => {
                    if v.numeric_measure.value > cfg.target_abs_error {
                        Ok(Classification::PositiveHeight {
                            value: v.numeric_measure.value / d,
                            error_bound: v.numeric_measure.error_bound / d,
                            low_confidence: true,
                        })
                    } else {
                        Ok(Classification::Inconclusive {
                            measure: v.numeric_measure.value / d,
                            error_bound: v.numeric_measure.error_bound / d,
                        })
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    fn rf(num: &[i64], den: &[i64]) -> RatFunc {
        RatFunc::new(&ip(num), &ip(den)).unwrap()
    }

    fn cfg1() -> TorusQuadratureConfig {
        TorusQuadratureConfig::default()
    }

    fn cfg2() -> TorusQuadratureConfig {
        TorusQuadratureConfig::default_for_vars(2)
    }

    #[test]
    fn place_constructors_validate() {
        assert!(Place::closed_point(&ip(&[-2, 0, 1])).is_ok());
        assert!(Place::closed_point(&ip(&[-1, 0, 1])).is_err());
        assert!(Place::closed_point(&ip(&[5])).is_err());
        assert!(Place::prime(97).is_ok());
        assert!(Place::prime(91).is_err());
        assert!(Place::circle(0.0).is_ok());
        assert!(Place::circle(1.0).is_err());
        // sign and content are normalized, preserving the closed point
        match Place::closed_point(&ip(&[-4, -2])).unwrap() {
            Place::ClosedPoint(f) => assert_eq!(f, ip(&[2, 1])),
            _ => unreachable!(),
        }
    }

    #[test]
    fn absolute_values_at_each_family() {
        // order 1 at the closed point T^2 - 2, whose H is 2
        let phi = RatFunc::from_poly(&ip(&[-2, 0, 1]));
        let v = abs_value_log(&phi, &Place::closed_point(&ip(&[-2, 0, 1])).unwrap()).unwrap();
        assert!((v + std::f64::consts::LN_2).abs() < 1e-12);
        // Gauss norm of 3T + 6 at p = 3 is 1/3
        let phi = RatFunc::from_poly(&ip(&[6, 3]));
        let v = abs_value_log(&phi, &Place::prime(3).unwrap()).unwrap();
        assert!((v + 3f64.ln()).abs() < 1e-14);
        // |T + 3| at t = 0 is 4
        let phi = RatFunc::from_poly(&ip(&[3, 1]));
        let v = abs_value_log(&phi, &Place::circle(0.0).unwrap()).unwrap();
        assert!((v - 4f64.ln()).abs() < 1e-14);
        // a pole is reported as such
        let phi = rf(&[1], &[-1, 1]);
        assert!(matches!(
            abs_value_log(&phi, &Place::circle(0.0).unwrap()),
            Err(Error::Pole(_))
        ));
        // the zero element has no absolute value
        assert!(abs_value_log(&RatFunc::zero(), &Place::prime(2).unwrap()).is_err());
    }

    #[test]
    fn local_height_bases() {
        assert!((h_of_closed_point(&ip(&[0, 1])).unwrap().value - 1.0).abs() < 1e-12);
        assert!((h_of_closed_point(&ip(&[-2, 1])).unwrap().value - 2.0).abs() < 1e-12);
        assert!((h_of_closed_point(&ip(&[-2, 0, 1])).unwrap().value - 2.0).abs() < 1e-12);
        assert!(h_of_closed_point(&ip(&[-1, 0, 1])).is_err());
    }

    #[test]
    fn product_formula_worked_cases() {
        let cfg = TorusQuadratureConfig::with_tol(1e-8);
        for phi in [
            RatFunc::from_poly(&ip(&[-2, 0, 1])),
            RatFunc::from_rational(BigRational::from_integer(5.into())),
            rf(&[-1, 1], &[2]),
        ] {
            let d = product_formula_defect(&phi, &cfg).unwrap();
            assert!(
                d.value.abs() <= d.error_bound.max(1e-8),
                "defect {} +- {} for {}",
                d.value,
                d.error_bound,
                phi.render("T")
            );
        }
    }

    #[test]
    fn canonical_pairs() {
        let half = rf(&[1], &[2]);
        let t_half = rf(&[0, 1], &[2]);
        assert_eq!(canonicalize_p1(&half, &t_half).unwrap(), (ip(&[1]), ip(&[0, 1])));
        let a = RatFunc::from_poly(&ip(&[-1, 0, 1]));
        let b = RatFunc::from_poly(&ip(&[-1, 1]));
        assert_eq!(canonicalize_p1(&a, &b).unwrap(), (ip(&[1, 1]), ip(&[1])));
        let four = RatFunc::from_poly(&ip(&[4]));
        let two_t = RatFunc::from_poly(&ip(&[0, 2]));
        assert_eq!(canonicalize_p1(&four, &two_t).unwrap(), (ip(&[2]), ip(&[0, 1])));
        assert_eq!(
            canonicalize_p1(&RatFunc::zero(), &half).unwrap(),
            (IntPoly::zero(), IntPoly::one())
        );
    }

    fn p1(a: RatFunc, b: RatFunc) -> ProjectivePointQT {
        ProjectivePointQT::new(vec![a, b]).unwrap()
    }

    #[test]
    fn projective_line_heights() {
        let t = RatFunc::from_poly(&ip(&[0, 1]));
        let one = RatFunc::one();
        let two = RatFunc::from_poly(&ip(&[2]));
        let h = height_p1(&p1(one.clone(), t.clone()), &cfg1()).unwrap();
        assert!(h.value.abs() < 1e-10);
        let h = height_p1(&p1(two, t.clone()), &cfg1()).unwrap();
        assert!((h.value - std::f64::consts::LN_2).abs() < 1e-8);
        let tp1 = RatFunc::from_poly(&ip(&[1, 1]));
        let h = height_p1(&p1(one.clone(), tp1), &cfg1()).unwrap();
        assert!((h.value - 0.323_065_947_2).abs() < 1e-6);
        let h = height_p1(&p1(one, RatFunc::zero()), &cfg1()).unwrap();
        assert!(h.value.abs() < 1e-12);
    }

    #[test]
    fn projective_space_heights() {
        let t = RatFunc::from_poly(&ip(&[0, 1]));
        let t2 = RatFunc::from_poly(&ip(&[0, 0, 1]));
        let pt = ProjectivePointQT::new(vec![RatFunc::one(), t, t2]).unwrap();
        let h = height_pn(&pt, &cfg1()).unwrap();
        assert!(h.value.abs() < 1e-10);
        let pt = ProjectivePointQT::new(vec![
            RatFunc::one(),
            RatFunc::from_poly(&ip(&[2])),
            RatFunc::from_poly(&ip(&[3])),
        ])
        .unwrap();
        let h = height_pn(&pt, &cfg1()).unwrap();
        assert!((h.value - 3f64.ln()).abs() < 1e-8);
        let pt = ProjectivePointQT::new(vec![RatFunc::zero(), RatFunc::one(), RatFunc::one()])
            .unwrap();
        let h = height_pn(&pt, &cfg1()).unwrap();
        assert!(h.value.abs() < 1e-10);
        // non-normalized coordinates: common content and factor are summed
        // exactly, leaving the same projective height
        let pt = ProjectivePointQT::new(vec![
            RatFunc::from_poly(&ip(&[2])),
            RatFunc::from_poly(&ip(&[0, 4])),
            RatFunc::from_poly(&ip(&[0, 0, 6])),
        ])
        .unwrap();
        let h = height_pn(&pt, &cfg1()).unwrap();
        assert!((h.value - 3f64.ln()).abs() < 1e-8);
    }

    #[test]
    fn heights_of_algebraic_elements() {
        let sqrt2 = AlgebraicQT::from_univariate(&ip(&[-2, 0, 1])).unwrap();
        let h = height_algebraic(&sqrt2, &cfg2()).unwrap();
        assert!((h.value - std::f64::consts::LN_2 / 2.0).abs() < 1e-12);
        let gen = AlgebraicQT::new(&BiPoly::new(vec![ip(&[-3, -1]), IntPoly::zero(), ip(&[1])]))
            .unwrap();
        let h = height_algebraic(&gen, &cfg2()).unwrap();
        assert!((h.value - 3f64.ln() / 2.0).abs() < 1e-6);
        let t_itself = AlgebraicQT::new(&BiPoly::new(vec![ip(&[0, -1]), ip(&[1])])).unwrap();
        let h = height_algebraic(&t_itself, &cfg2()).unwrap();
        assert!(h.value.abs() < 1e-9);
    }

    #[test]
    fn algebraic_construction_normalizes_and_validates() {
        // content in T and integer content are stripped
        let raw = BiPoly::new(vec![ip(&[0, 0, -2]), ip(&[0, 2])]); // 2T(x - T)
        let a = AlgebraicQT::new(&raw).unwrap();
        assert_eq!(a.minpoly(), &BiPoly::new(vec![ip(&[0, -1]), ip(&[1])]));
        // reducible over Q(T) is rejected
        let red = BiPoly::new(vec![ip(&[0, 0, -1]), IntPoly::zero(), ip(&[1])]); // x^2 - T^2
        assert!(AlgebraicQT::new(&red).is_err());
        // the degree cap is a capacity error
        let mut coeffs = vec![IntPoly::zero(); 8];
        coeffs[0] = ip(&[0, -1]);
        coeffs[7] = ip(&[1]);
        assert!(matches!(
            AlgebraicQT::new(&BiPoly::new(coeffs)),
            Err(Error::Capacity(_))
        ));
    }

    #[test]
    fn normalization_data_worked_cases() {
        // f_d = T(T-1), g_e = T(T+1), d = e = 1: correction T, c = 1
        let phi = AlgebraicQT::new(&BiPoly::new(vec![ip(&[0, -1, 1]).neg(), ip(&[1])])).unwrap();
        let psi = AlgebraicQT::new(&BiPoly::new(vec![ip(&[0, 1, 1]).neg(), ip(&[1])])).unwrap();
        let data = normalization_data(&phi, &psi).unwrap();
        assert_eq!(data.c, BigInt::one());
        assert_eq!(data.correction, ip(&[0, 1]));
        assert!(finite_place_normalization_check(&data).unwrap());
        // f_d = -2, g_e = -3: c = 1, correction 1
        let phi = AlgebraicQT::new(&BiPoly::new(vec![ip(&[-2]), ip(&[1])])).unwrap();
        let psi = AlgebraicQT::new(&BiPoly::new(vec![ip(&[-3]), ip(&[1])])).unwrap();
        let data = normalization_data(&phi, &psi).unwrap();
        assert_eq!(data.c, BigInt::one());
        assert!(data.correction.is_one());
        assert!(finite_place_normalization_check(&data).unwrap());
        // contents 4 (d = 1) and 2 (e = 2): c = gcd(4^2, 2^1) = 2
        let phi = AlgebraicQT::new(&BiPoly::new(vec![ip(&[4]), ip(&[1])])).unwrap();
        let psi =
            AlgebraicQT::new(&BiPoly::new(vec![ip(&[2]), IntPoly::zero(), ip(&[1])])).unwrap();
        let data = normalization_data(&phi, &psi).unwrap();
        assert_eq!(data.c, BigInt::from(2));
        assert!(finite_place_normalization_check(&data).unwrap());
    }

    #[test]
    fn normalization_check_is_sensitive_to_corruption() {
        let phi = AlgebraicQT::new(&BiPoly::new(vec![ip(&[0, -1, 1]).neg(), ip(&[1])])).unwrap();
        let psi = AlgebraicQT::new(&BiPoly::new(vec![ip(&[0, 1, 1]).neg(), ip(&[1])])).unwrap();
        let mut data = normalization_data(&phi, &psi).unwrap();
        data.correction = ip(&[0, 0, 1]); // wrong exponent
        assert!(!finite_place_normalization_check(&data).unwrap());
        let phi = AlgebraicQT::new(&BiPoly::new(vec![ip(&[4]), ip(&[1])])).unwrap();
        let psi =
            AlgebraicQT::new(&BiPoly::new(vec![ip(&[2]), IntPoly::zero(), ip(&[1])])).unwrap();
        let mut data = normalization_data(&phi, &psi).unwrap();
        data.c = BigInt::from(4); // crossed exponents would give gcd(4, 4) = 4
        assert!(!finite_place_normalization_check(&data).unwrap());
    }

    #[test]
    fn normalization_check_spec_pairs() {
        // x^2 - T against x^2 - (T + 1): no common zeros, contents 1
        let phi =
            AlgebraicQT::new(&BiPoly::new(vec![ip(&[0, -1]), IntPoly::zero(), ip(&[1])])).unwrap();
        let psi =
            AlgebraicQT::new(&BiPoly::new(vec![ip(&[-1, -1]), IntPoly::zero(), ip(&[1])]))
                .unwrap();
        let data = normalization_data(&phi, &psi).unwrap();
        assert!(finite_place_normalization_check(&data).unwrap());
        // phi = psi = 2: c = 2
        let two = AlgebraicQT::new(&BiPoly::new(vec![ip(&[-2]), ip(&[1])])).unwrap();
        let data = normalization_data(&two, &two).unwrap();
        assert_eq!(data.c, BigInt::from(2));
        assert!(finite_place_normalization_check(&data).unwrap());
    }

    #[test]
    fn norm_comparison_worked_cases() {
        let two = ElementQT::Rational(RatFunc::from_poly(&ip(&[2])));
        let t = ElementQT::Rational(RatFunc::from_poly(&ip(&[0, 1])));
        let one = ElementQT::Rational(RatFunc::one());
        let d = key2_defect(&two, &t, &cfg1()).unwrap();
        assert!(d.value.abs() <= d.error_bound.max(1e-6), "defect {}", d.value);
        let d = key2_defect(&one, &t, &cfg1()).unwrap();
        assert!(d.value.abs() <= d.error_bound.max(1e-6));
        let gen = ElementQT::Algebraic(
            AlgebraicQT::new(&BiPoly::new(vec![ip(&[-3, -1]), IntPoly::zero(), ip(&[1])]))
                .unwrap(),
        );
        let d = key2_defect(&one, &gen, &cfg2()).unwrap();
        assert!(
            d.value.abs() <= d.error_bound.max(1e-6),
            "defect {} +- {}",
            d.value,
            d.error_bound
        );
        // swapped order works the same
        let d = key2_defect(&gen, &one, &cfg2()).unwrap();
        assert!(d.value.abs() <= d.error_bound.max(1e-6));
        // two algebraic coordinates: unsupported shape
        assert!(matches!(
            key2_defect(&gen, &gen, &cfg2()),
            Err(Error::Capacity(_))
        ));
    }

    #[test]
    fn norm_comparison_is_nonnegative_on_mixed_cases() {
        let cfg = cfg1();
        let cases: Vec<(ElementQT, ElementQT)> = vec![
            (
                ElementQT::Rational(rf(&[2, 3], &[1])),
                ElementQT::Rational(rf(&[0, 1], &[5])),
            ),
            (
                ElementQT::Rational(rf(&[-1, 1], &[2])),
                ElementQT::Rational(rf(&[1, 0, 1], &[1])),
            ),
            (
                ElementQT::Rational(rf(&[1, 2], &[1])),
                ElementQT::Algebraic(
                    AlgebraicQT::new(&BiPoly::new(vec![
                        ip(&[-1, -1]),
                        ip(&[1, 1]),
                        ip(&[1]),
                    ]))
                    .unwrap(),
                ),
            ),
        ];
        for (a, b) in &cases {
            let d = key2_defect(a, b, &cfg).unwrap();
            assert!(
                d.value >= -d.error_bound - 1e-9,
                "defect {} +- {}",
                d.value,
                d.error_bound
            );
        }
    }

    #[test]
    fn kernel_classification() {
        // constant roots of unity
        let zeta5 = ElementQT::Algebraic(
            AlgebraicQT::from_univariate(&crate::cyclotomic::cyclotomic_poly(5)).unwrap(),
        );
        assert!(matches!(
            kernel_classify(&zeta5, &cfg2()).unwrap(),
            Classification::RootOfUnity { order: 5 }
        ));
        let minus_one = ElementQT::Rational(RatFunc::from_poly(&ip(&[-1])));
        assert!(matches!(
            kernel_classify(&minus_one, &cfg2()).unwrap(),
            Classification::RootOfUnity { order: 2 }
        ));
        // T: in the kernel by the formula, flagged against the statement
        let t = ElementQT::Rational(RatFunc::from_poly(&ip(&[0, 1])));
        match kernel_classify(&t, &cfg2()).unwrap() {
            Classification::TorsionCoset {
                certificate,
                statement_mismatch,
            } => {
                assert!(statement_mismatch);
                // certificate rebuilds the minimal polynomial x - T
                assert_eq!(
                    certificate.reconstruct(),
                    BiPoly::new(vec![ip(&[0, -1]), ip(&[1])])
                );
            }
            other => unreachable!("{other:?}"),
        }
        // -1/T^2 is also a monomial kernel member
        let m = ElementQT::Rational(rf(&[-1], &[0, 0, 1]));
        match kernel_classify(&m, &cfg2()).unwrap() {
            Classification::TorsionCoset { certificate, .. } => {
                // minimal polynomial T^2 x + 1
                assert_eq!(
                    certificate.reconstruct(),
                    BiPoly::new(vec![ip(&[1]), ip(&[0, 0, 1])])
                );
            }
            other => unreachable!("{other:?}"),
        }
        // T + 1 has positive height
        let tp1 = ElementQT::Rational(RatFunc::from_poly(&ip(&[1, 1])));
        match kernel_classify(&tp1, &cfg2()).unwrap() {
            Classification::PositiveHeight { value, low_confidence, .. } => {
                assert!((value - 0.323_065_947_2).abs() < 1e-6);
                assert!(!low_confidence);
            }
            other => unreachable!("{other:?}"),
        }
        // algebraic: x - T is a torsion coset, x^2 - (T+3) is positive
        let xt = ElementQT::Algebraic(
            AlgebraicQT::new(&BiPoly::new(vec![ip(&[0, -1]), ip(&[1])])).unwrap(),
        );
        assert!(matches!(
            kernel_classify(&xt, &cfg2()).unwrap(),
            Classification::TorsionCoset { statement_mismatch: true, .. }
        ));
        let gen = ElementQT::Algebraic(
            AlgebraicQT::new(&BiPoly::new(vec![ip(&[-3, -1]), IntPoly::zero(), ip(&[1])]))
                .unwrap(),
        );
        match kernel_classify(&gen, &cfg2()).unwrap() {
            Classification::PositiveHeight { value, .. } => {
                assert!((value - 3f64.ln() / 2.0).abs() < 1e-6);
            }
            other => unreachable!("{other:?}"),
        }
    }

    #[test]
    fn projective_invariance_under_scaling() {
        let one = RatFunc::one();
        let tp1 = RatFunc::from_poly(&ip(&[1, 1]));
        let base = height_p1(&p1(one.clone(), tp1.clone()), &cfg1()).unwrap();
        for lambda in [
            rf(&[3], &[2]),
            rf(&[0, 1], &[1]),
            rf(&[-1, 1], &[7]),
        ] {
            let h = height_p1(&p1(one.mul(&lambda), tp1.mul(&lambda)), &cfg1()).unwrap();
            assert!(
                (h.value - base.value).abs() <= h.error_bound + base.error_bound + 1e-8,
                "scaling by {} moved the height from {} to {}",
                lambda.render("T"),
                base.value,
                h.value
            );
        }
    }

    #[test]
    fn kernel_subadditivity_samples() {
        let cfg = cfg1();
        let els = [rf(&[2], &[1]), rf(&[1, 1], &[1]), rf(&[0, 1], &[3])];
        let h = |x: &RatFunc| {
            height_p1(&p1(RatFunc::one(), x.clone()), &cfg)
                .unwrap()
                .value
        };
        for a in &els {
            for b in &els {
                let lhs = h(&a.mul(b));
                assert!(
                    lhs <= h(a) + h(b) + 1e-7,
                    "h({}) = {} breaks subadditivity",
                    a.mul(b).render("T"),
                    lhs
                );
            }
        }
        // the height-zero elements stay height-zero under products
        let t = rf(&[0, 1], &[1]);
        let mt2 = rf(&[0, 0, -1], &[1]);
        assert!(h(&t.mul(&mt2)).abs() < 1e-9);
    }

    #[test]
    fn power_rule_for_constant_elements() {
        // alpha = sqrt(2): the cube has minimal polynomial x^2 - 8
        let base = AlgebraicQT::from_univariate(&ip(&[-2, 0, 1])).unwrap();
        let cubed_minpoly = factor::power_minpoly(&ip(&[-2, 0, 1]), 3).unwrap();
        let cubed = AlgebraicQT::from_univariate(&cubed_minpoly).unwrap();
        let h1 = height_algebraic(&base, &cfg2()).unwrap();
        let h3 = height_algebraic(&cubed, &cfg2()).unwrap();
        assert!((h3.value - 3.0 * h1.value).abs() < 1e-9);
    }

    #[test]
    fn integer_factorization_helper() {
        let f = factor_positive(&BigInt::from(600851475143u64)).unwrap();
        let back: BigInt = f.iter().map(|(p, e)| big_pow(p, *e)).product();
        assert_eq!(back, BigInt::from(600851475143u64));
        assert!(f.iter().all(|(p, _)| is_probable_prime(p)));
        assert!(is_probable_prime(&BigInt::from(2u64.pow(61) - 1)));
        assert!(!is_probable_prime(&(BigInt::from(2u64.pow(61) - 1) * BigInt::from(3))));
    }
}
