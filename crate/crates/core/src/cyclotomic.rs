//! Exact detection of zero-measure structure.
//!
//! A nonzero integer polynomial has Mahler measure zero exactly when it is
//! `±x^k` times a product of cyclotomic polynomials. This module decides
//! that exactly (no floating point in the decision path), extracts a
//! reconstruction certificate, recovers the order of a root of unity from
//! its minimal polynomial, and runs a bounded structural search for the
//! two-variable analogue `± monomial · ∏ Φ_n(±T^a x^b)`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{is_irreducible, BiPoly, IntPoly};
use crate::mahler::{
    bivariate_measure, mahler_roots, MeasureMethod, MeasureResult, TorusQuadratureConfig,
};

/// Outcome of a torsion test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TorsionStatus {
    Torsion,
    NotTorsion,
    Inconclusive,
}

/// One certified factor `Φ_n(inner_sign · T^t_exp · x^x_exp)`, cleared to a
/// polynomial (multiplied by `T^(|t_exp|·φ(n))`) when `t_exp < 0`.
/// Univariate certificates use `t_exp = 0`, `x_exp = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycFactor {
    pub n: u32,
    pub inner_sign: i8,
    pub t_exp: i32,
    pub x_exp: u32,
    pub multiplicity: u32,
}

/// Exact witness that a polynomial equals
/// `sign · T^t_monomial · x^x_monomial · ∏ factors`.
/// The monomial part is kept separate from the factor list because it is
/// measure-zero without being a product of cyclotomics.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TorsionCertificate {
    pub sign: i8,
    pub x_monomial: u32,
    pub t_monomial: u32,
    pub factors: Vec<CycFactor>,
}

impl TorsionCertificate {
    /// Rebuild the certified polynomial exactly (univariate inputs come back
    /// as polynomials constant in `T`).
    pub fn reconstruct(&self) -> BiPoly {
        let mut memo = HashMap::new();
        let mut coeffs = vec![IntPoly::zero(); self.x_monomial as usize + 1];
        coeffs[self.x_monomial as usize] =
            IntPoly::monomial(BigInt::one(), self.t_monomial as usize);
        let mut acc = BiPoly::new(coeffs);
        for fac in &self.factors {
            let cand =
                cleared_cyclotomic(fac.n, fac.inner_sign, fac.t_exp, fac.x_exp, &mut memo);
            acc = acc.mul(&cand.pow(fac.multiplicity));
        }
        if self.sign < 0 {
            acc.neg()
        } else {
            acc
        }
    }
}

/// Verdict of a torsion test: status, optional reconstruction witness, and
/// the Mahler measure reported alongside (exactly zero when a certificate
/// proves it, numeric otherwise).
#[derive(Debug, Clone, Serialize)]
pub struct TorsionVerdict {
    pub status: TorsionStatus,
    pub certificate: Option<TorsionCertificate>,
    pub numeric_measure: MeasureResult,
}

/// Euler's totient.
pub fn euler_phi(mut n: u64) -> u64 {
    let mut phi = 1u64;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut pk = 1u64;
            while n % p == 0 {
                n /= p;
                pk *= p;
            }
            phi *= pk - pk / p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        phi *= n - 1;
    }
    phi
}

/// The `n`-th cyclotomic polynomial.
pub fn cyclotomic_poly(n: u32) -> IntPoly {
    let mut memo = HashMap::new();
    cyclotomic_memo(n, &mut memo)
}

fn cyclotomic_memo(n: u32, memo: &mut HashMap<u32, IntPoly>) -> IntPoly {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    // (x^n - 1) / prod_{d | n, d < n} Phi_d
    let mut q = IntPoly::monomial(BigInt::one(), n as usize).sub(&IntPoly::one());
    for d in 1..n {
        if n % d == 0 {
            let pd = cyclotomic_memo(d, memo);
            q = q
                .exact_div(&pd)
                .expect("division chain along divisors is exact");
        }
    }
    memo.insert(n, q.clone());
    q
}

/// `Φ_n(2)`, by the same divisor recursion on values (screening helper:
/// any cyclotomic factor of `f` forces `Φ_n(2) | f(2)`).
fn cyclotomic_at2(n: u32, memo: &mut HashMap<u32, BigInt>) -> BigInt {
    if let Some(v) = memo.get(&n) {
        return v.clone();
    }
    let mut q: BigInt = (BigInt::one() << n) - BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            q /= cyclotomic_at2(d, memo);
        }
    }
    memo.insert(n, q.clone());
    q
}

/// One root-squaring step: writing `f(x) = E(x²) + x·O(x²)`, the returned
/// polynomial `±(E(y)² − y·O(y)²)` has as roots exactly the squares of the
/// roots of `f`, with the sign chosen to make the leading coefficient
/// positive.
pub fn graeffe_step(f: &IntPoly) -> IntPoly {
    let mut even = Vec::with_capacity(f.coeffs().len() / 2 + 1);
    let mut odd = Vec::with_capacity(f.coeffs().len() / 2 + 1);
    for (k, c) in f.coeffs().iter().enumerate() {
        if k % 2 == 0 {
            even.push(c.clone());
        } else {
            odd.push(c.clone());
        }
    }
    let e = IntPoly::new(even);
    let o = IntPoly::new(odd);
    let g = e.mul(&e).sub(&o.mul(&o).shift_up(1));
    if g.leading().is_negative() {
        g.neg()
    } else {
        g
    }
}

/// `binomial(d, d/2)`: every coefficient of a degree-`d` product of
/// cyclotomics is an elementary symmetric function of `d` unit-modulus
/// numbers, so it is bounded by this. Any iterate exceeding it proves the
/// input was not such a product.
fn central_binomial(d: usize) -> BigInt {
    let mut b = BigInt::one();
    for k in 0..d / 2 {
        b = b * BigInt::from((d - k) as u64) / BigInt::from((k + 1) as u64);
    }
    b
}

/// Exact decision: is `f = ±x^k · ∏ Φ_{n_i}`?
///
/// Shape checks first (integer content 1, unit leading and trailing
/// coefficients — anything else forces positive measure). Then root
/// squaring: a unit-lead, unit-constant integer polynomial is a cyclotomic
/// product exactly when the sign-normalized squaring iteration reaches a
/// fixed point. Squaring permutes the primitive `m`-th roots of unity for
/// odd `m`, so a true product reaches its fixed point within
/// `max v₂(n_i) + 1 ≤ log₂(deg) + 2` steps — far below the `2·deg + 8`
/// cap — while any other input either blows past the coefficient bound or
/// runs out the cap. On success the certificate is extracted by exact
/// division and independently re-proves the claim.
pub fn is_cyclotomic_product(f: &IntPoly) -> Result<TorsionVerdict> {
    if f.is_zero() {
        return Err(Error::domain("is_cyclotomic_product: zero polynomial"));
    }
    let not_torsion = |nm: MeasureResult| TorsionVerdict {
        status: TorsionStatus::NotTorsion,
        certificate: None,
        numeric_measure: nm,
    };

    let (sign, prim, content) = f.sign_primitive()?;
    if !content.is_one() {
        // measure >= ln(content) >= ln 2
        return Ok(not_torsion(mahler_roots(f)?));
    }
    let k = prim.order_at_zero().unwrap_or(0);
    let core = prim.shift_down(k)?;
    let torsion = |factors: Vec<CycFactor>| TorsionVerdict {
        status: TorsionStatus::Torsion,
        certificate: Some(TorsionCertificate {
            sign,
            x_monomial: k as u32,
            t_monomial: 0,
            factors,
        }),
        numeric_measure: MeasureResult::exact(0.0, MeasureMethod::Roots),
    };
    if core.is_one() {
        // pure monomial ±x^k
        return Ok(torsion(Vec::new()));
    }
    if !core.leading().is_one() || !core.constant_term().abs().is_one() {
        // |lc| >= 2 gives m >= ln|lc|; |lc| = 1 with |trailing| >= 2 forces a
        // root outside the unit circle
        return Ok(not_torsion(mahler_roots(f)?));
    }

    let d = core.deg_or_zero();
    let bound = central_binomial(d);
    let mut g = core.clone();
    let mut fixed = false;
    for _ in 0..(2 * d + 8) {
        let next = graeffe_step(&g);
        if next == g {
            fixed = true;
            break;
        }
        if next.max_abs_coeff() > bound {
            break;
        }
        g = next;
    }
    if !fixed {
        return Ok(not_torsion(mahler_roots(f)?));
    }
    let factors = peel_cyclotomic_factors(&core)
        .ok_or_else(|| Error::domain("internal: fixed point without cyclotomic factorization"))?;
    Ok(torsion(factors))
}

/// Write `core` (unit lead, unit constant, known cyclotomic product) as a
/// multiset of `Φ_n`. Candidates run ascending over all `n` whose totient
/// fits the remaining degree; `φ(n) ≥ √(n/2)` bounds the sweep. `Φ_n(2)`
/// must divide the remaining value at 2, which screens out almost every
/// non-factor before any polynomial is built.
fn peel_cyclotomic_factors(core: &IntPoly) -> Option<Vec<CycFactor>> {
    let mut rem = core.clone();
    let mut factors = Vec::new();
    let mut poly_memo = HashMap::new();
    let mut at2_memo = HashMap::new();
    let two = BigInt::from(2);
    let mut rem2 = rem.eval_big(&two);
    let mut n: u64 = 0;
    loop {
        n += 1;
        let deg_rem = rem.deg_or_zero() as u64;
        if deg_rem == 0 {
            break;
        }
        if n > 2 * deg_rem * deg_rem + 2 {
            // no n beyond this bound has phi(n) <= deg_rem
            break;
        }
        if euler_phi(n) > deg_rem {
            continue;
        }
        let n32 = n as u32;
        let c2 = cyclotomic_at2(n32, &mut at2_memo);
        if !(&rem2 % &c2).is_zero() {
            continue;
        }
        let phi_n = cyclotomic_memo(n32, &mut poly_memo);
        let mut mult = 0u32;
        while let Some(q) = rem.exact_div(&phi_n) {
            rem = q;
            mult += 1;
        }
        if mult > 0 {
            rem2 = rem.eval_big(&two);
            factors.push(CycFactor {
                n: n32,
                inner_sign: 1,
                t_exp: 0,
                x_exp: 1,
                multiplicity: mult,
            });
        }
    }
    if rem.is_one() {
        Some(factors)
    } else {
        None
    }
}

/// If the irreducible primitive `f` is `±Φ_n`, return `n`.
///
/// Candidate orders are the `n` with `φ(n) = deg f`; `φ(n) ≥ √(n/2)` caps
/// the search at `2·deg² + 2`. Matching is exact polynomial comparison.
pub fn root_of_unity_order(f: &IntPoly) -> Result<Option<u32>> {
    if f.is_zero() || !f.content()?.is_one() {
        return Err(Error::domain(
            "root_of_unity_order: input must be primitive and irreducible",
        ));
    }
    if !is_irreducible(f)? {
        return Err(Error::domain(
            "root_of_unity_order: input must be irreducible",
        ));
    }
    let d = f.deg_or_zero() as u64;
    let mut memo = HashMap::new();
    for n in 1..=(2 * d * d + 2) {
        if euler_phi(n) != d {
            continue;
        }
        let phi_n = cyclotomic_memo(n as u32, &mut memo);
        if *f == phi_n || f.neg() == phi_n {
            return Ok(Some(n as u32));
        }
    }
    Ok(None)
}

/// Build `Φ_n(s·T^a·x^b)` cleared to a polynomial: terms
/// `c_i s^i T^{a·i} x^{b·i}`, multiplied through by `T^{|a|·φ(n)}` when
/// `a < 0`. The result has no monomial content.
fn cleared_cyclotomic(
    n: u32,
    s: i8,
    a: i32,
    b: u32,
    memo: &mut HashMap<u32, IntPoly>,
) -> BiPoly {
    let phi = cyclotomic_memo(n, memo);
    let d = phi.deg_or_zero();
    let mut xc: Vec<IntPoly> = vec![IntPoly::zero(); b as usize * d + 1];
    for (i, c) in phi.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let v = if s < 0 && i % 2 == 1 { -c.clone() } else { c.clone() };
        let t_pow = if a >= 0 {
            a as usize * i
        } else {
            a.unsigned_abs() as usize * (d - i)
        };
        let x_pow = b as usize * i;
        xc[x_pow] = xc[x_pow].add(&IntPoly::monomial(v, t_pow));
    }
    BiPoly::new(xc)
}

/// Bound on the cyclotomic index in the two-variable structural search.
const BIVARIATE_N_MAX: u32 = 120;
/// Bound on |t-exponent| of the inner monomial.
const BIVARIATE_A_MAX: i32 = 8;
/// Bound on the x-exponent of the inner monomial. Negative x-exponents are
/// redundant: cyclotomics are self-reciprocal up to sign, so the cleared
/// form of `Φ_n(±T^a x^{-b})` equals `±Φ_n(±T^{-a} x^b)` cleared.
const BIVARIATE_B_MAX: u32 = 8;

/// Three-valued torsion test for a primitive `f ∈ ℤ[T, x]`.
///
/// `Torsion` comes with an exact certificate: after stripping the monomial
/// part, a bounded search (`n ≤ 120`, `|a| ≤ 8`, `0 ≤ b ≤ 8`) greedily
/// divides out every candidate `Φ_n(±T^a x^b)` cleared to a polynomial;
/// reaching `±1` proves the decomposition. Candidate order is irrelevant:
/// dividing a torsion polynomial by a torsion factor leaves a torsion
/// polynomial, and divisions only remove irreducible factors. If the search
/// leaves a nontrivial remainder, the two-variable Mahler measure decides
/// `NotTorsion` when it exceeds three times its own error bound, and the
/// test is otherwise `Inconclusive` (measure-zero structure outside the
/// search bounds stays inconclusive by design).
pub fn bivariate_torsion_test(
    f: &BiPoly,
    cfg: &TorusQuadratureConfig,
) -> Result<TorsionVerdict> {
    if f.is_zero() {
        return Err(Error::domain("bivariate_torsion_test: zero polynomial"));
    }
    let (sign0, prim, content) = f.primitive_z()?;
    if !content.is_one() {
        return Err(Error::domain(
            "bivariate_torsion_test: input must be primitive over the integers",
        ));
    }

    // strip the monomial part T^j x^k
    let k = prim
        .coeffs()
        .iter()
        .position(|c| !c.is_zero())
        .expect("nonzero polynomial has a nonzero coefficient");
    let j = prim
        .coeffs()
        .iter()
        .filter(|c| !c.is_zero())
        .map(|c| c.order_at_zero().unwrap_or(0))
        .min()
        .unwrap_or(0);
    let mut core_coeffs = Vec::with_capacity(prim.coeffs().len() - k);
    for c in &prim.coeffs()[k..] {
        core_coeffs.push(if c.is_zero() {
            IntPoly::zero()
        } else {
            c.shift_down(j)?
        });
    }
    let core = BiPoly::new(core_coeffs);

    let mut rem = core;
    let mut factors: Vec<CycFactor> = Vec::new();
    let mut memo = HashMap::new();
    for n in 1..=BIVARIATE_N_MAX {
        if rem.deg_x() == 0 && rem.deg_t() == 0 {
            break;
        }
        let phi = euler_phi(n as u64) as usize;
        for b in 0..=BIVARIATE_B_MAX {
            for a in -BIVARIATE_A_MAX..=BIVARIATE_A_MAX {
                if a == 0 && b == 0 {
                    continue;
                }
                if b as usize * phi > rem.deg_x()
                    || a.unsigned_abs() as usize * phi > rem.deg_t()
                {
                    continue;
                }
                for s in [1i8, -1] {
                    let cand = cleared_cyclotomic(n, s, a, b, &mut memo);
                    let mut mult = 0u32;
                    while let Some(q) = rem.exact_div(&cand) {
                        rem = q;
                        mult += 1;
                    }
                    if mult > 0 {
                        factors.push(CycFactor {
                            n,
                            inner_sign: s,
                            t_exp: a,
                            x_exp: b,
                            multiplicity: mult,
                        });
                    }
                }
            }
        }
    }

    if rem.deg_x() == 0 && rem.deg_t() == 0 {
        // primitive constant: +-1; a -1 remainder folds into the sign
        let c = rem.coeff(0).constant_term();
        let sign = if c.is_negative() { -sign0 } else { sign0 };
        return Ok(TorsionVerdict {
            status: TorsionStatus::Torsion,
            certificate: Some(TorsionCertificate {
                sign,
                x_monomial: k as u32,
                t_monomial: j as u32,
                factors,
            }),
            numeric_measure: MeasureResult::exact(0.0, MeasureMethod::Roots),
        });
    }

    let nm = bivariate_measure(f, cfg)?;
    if nm.value > 3.0 * nm.error_bound {
        Ok(TorsionVerdict {
            status: TorsionStatus::NotTorsion,
            certificate: None,
            numeric_measure: nm,
        })
    } else {
        Ok(TorsionVerdict {
            status: TorsionStatus::Inconclusive,
            certificate: None,
            numeric_measure: nm,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn totient_values() {
        for (n, want) in [(1u64, 1u64), (2, 1), (3, 2), (4, 2), (12, 4), (97, 96), (100, 40)] {
            assert_eq!(euler_phi(n), want, "phi({n})");
        }
    }

    #[test]
    fn cyclotomic_polys_match_known_forms() {
        assert_eq!(cyclotomic_poly(1), ip(&[-1, 1]));
        assert_eq!(cyclotomic_poly(2), ip(&[1, 1]));
        assert_eq!(cyclotomic_poly(3), ip(&[1, 1, 1]));
        assert_eq!(cyclotomic_poly(4), ip(&[1, 0, 1]));
        assert_eq!(cyclotomic_poly(6), ip(&[1, -1, 1]));
        assert_eq!(cyclotomic_poly(12), ip(&[1, 0, -1, 0, 1]));
        // first index with a coefficient outside {-1, 0, 1}
        assert_eq!(cyclotomic_poly(105).coeff(7), BigInt::from(-2));
    }

    #[test]
    fn graeffe_squares_roots() {
        // x^2 - 2 has roots +-sqrt(2); the step must produce (y - 2)^2
        assert_eq!(graeffe_step(&ip(&[-2, 0, 1])), ip(&[4, -4, 1]));
        // phi_4 = x^2 + 1 -> (y + 1)^2
        assert_eq!(graeffe_step(&ip(&[1, 0, 1])), ip(&[1, 2, 1]));
        // phi_3 is already a fixed point
        assert_eq!(graeffe_step(&ip(&[1, 1, 1])), ip(&[1, 1, 1]));
    }

    #[test]
    fn x6_minus_1_decomposes() {
        let v = is_cyclotomic_product(&ip(&[-1, 0, 0, 0, 0, 0, 1])).unwrap();
        assert_eq!(v.status, TorsionStatus::Torsion);
        let cert = v.certificate.unwrap();
        let ns: Vec<u32> = cert.factors.iter().map(|f| f.n).collect();
        assert_eq!(ns, vec![1, 2, 3, 6]);
        assert!(cert.factors.iter().all(|f| f.multiplicity == 1));
        assert_eq!(
            cert.reconstruct(),
            BiPoly::from_int_poly_in_x(&ip(&[-1, 0, 0, 0, 0, 0, 1]))
        );
    }

    #[test]
    fn quadratic_cyclotomic_certified() {
        let v = is_cyclotomic_product(&ip(&[1, 1, 1])).unwrap();
        assert_eq!(v.status, TorsionStatus::Torsion);
        let cert = v.certificate.unwrap();
        assert_eq!(cert.factors.len(), 1);
        assert_eq!(cert.factors[0].n, 3);
        assert_eq!(v.numeric_measure.value, 0.0);
    }

    #[test]
    fn lehmer_polynomial_is_not_torsion() {
        let lehmer = ip(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]);
        let v = is_cyclotomic_product(&lehmer).unwrap();
        assert_eq!(v.status, TorsionStatus::NotTorsion);
        assert!(v.certificate.is_none());
        assert!((v.numeric_measure.value - 0.162_357_612_0).abs() < 1e-9);
    }

    #[test]
    fn integer_content_blocks_torsion() {
        let v = is_cyclotomic_product(&ip(&[-2, 0, 2])).unwrap();
        assert_eq!(v.status, TorsionStatus::NotTorsion);
        assert!((v.numeric_measure.value - std::f64::consts::LN_2).abs() < 1e-12);
    }

    #[test]
    fn signed_monomial_times_cyclotomic() {
        // -x^3 (x^2 + 1)
        let f = ip(&[0, 0, 0, -1, 0, -1]);
        let v = is_cyclotomic_product(&f).unwrap();
        assert_eq!(v.status, TorsionStatus::Torsion);
        let cert = v.certificate.unwrap();
        assert_eq!(cert.sign, -1);
        assert_eq!(cert.x_monomial, 3);
        assert_eq!(cert.factors, vec![CycFactor { n: 4, inner_sign: 1, t_exp: 0, x_exp: 1, multiplicity: 1 }]);
        assert_eq!(cert.reconstruct(), BiPoly::from_int_poly_in_x(&f));
    }

    #[test]
    fn pure_monomials_and_units() {
        let v = is_cyclotomic_product(&ip(&[0, 0, 1])).unwrap();
        assert_eq!(v.status, TorsionStatus::Torsion);
        let cert = v.certificate.unwrap();
        assert_eq!((cert.sign, cert.x_monomial), (1, 2));
        assert!(cert.factors.is_empty());
        let v = is_cyclotomic_product(&ip(&[-1])).unwrap();
        assert_eq!(v.status, TorsionStatus::Torsion);
        let v = is_cyclotomic_product(&ip(&[3])).unwrap();
        assert_eq!(v.status, TorsionStatus::NotTorsion);
    }

    #[test]
    fn every_single_cyclotomic_up_to_100_certifies() {
        for n in 1..=100u32 {
            let f = cyclotomic_poly(n);
            let v = is_cyclotomic_product(&f).unwrap();
            assert_eq!(v.status, TorsionStatus::Torsion, "phi_{n}");
            let cert = v.certificate.unwrap();
            assert_eq!(cert.factors, vec![CycFactor { n, inner_sign: 1, t_exp: 0, x_exp: 1, multiplicity: 1 }]);
        }
    }

    #[test]
    fn repeated_factors_get_multiplicities() {
        let f = cyclotomic_poly(4).pow(3).mul(&cyclotomic_poly(1));
        let v = is_cyclotomic_product(&f).unwrap();
        let cert = v.certificate.unwrap();
        assert_eq!(
            cert.factors,
            vec![
                CycFactor { n: 1, inner_sign: 1, t_exp: 0, x_exp: 1, multiplicity: 1 },
                CycFactor { n: 4, inner_sign: 1, t_exp: 0, x_exp: 1, multiplicity: 3 },
            ]
        );
        assert_eq!(cert.reconstruct(), BiPoly::from_int_poly_in_x(&f));
    }

    #[test]
    fn order_extraction() {
        assert_eq!(root_of_unity_order(&ip(&[1, 1, 1])).unwrap(), Some(3));
        assert_eq!(root_of_unity_order(&cyclotomic_poly(12)).unwrap(), Some(12));
        assert_eq!(root_of_unity_order(&ip(&[-2, 0, 1])).unwrap(), None);
        assert_eq!(root_of_unity_order(&ip(&[0, 1])).unwrap(), None);
        assert_eq!(
            root_of_unity_order(&cyclotomic_poly(2).neg()).unwrap(),
            Some(2)
        );
        assert!(root_of_unity_order(&ip(&[-1, 0, 1])).is_err());
    }

    #[test]
    fn zero_polynomial_is_domain_error() {
        assert!(is_cyclotomic_product(&IntPoly::zero()).is_err());
    }

    fn bivar(coeffs_in_t: &[&[i64]]) -> BiPoly {
        BiPoly::new(coeffs_in_t.iter().map(|c| ip(c)).collect())
    }

    #[test]
    fn x_minus_t_is_torsion() {
        // coefficients by power of x: [-T, 1]
        let f = bivar(&[&[0, -1], &[1]]);
        let v = bivariate_torsion_test(&f, &TorusQuadratureConfig::default()).unwrap();
        assert_eq!(v.status, TorsionStatus::Torsion);
        let cert = v.certificate.unwrap();
        assert_eq!(cert.factors.len(), 1);
        let fac = &cert.factors[0];
        assert_eq!((fac.n, fac.t_exp, fac.x_exp), (1, -1, 1));
        assert_eq!(cert.reconstruct(), f);
    }

    #[test]
    fn x_squared_minus_t_is_torsion() {
        let f = bivar(&[&[0, -1], &[], &[1]]);
        let v = bivariate_torsion_test(&f, &TorusQuadratureConfig::default()).unwrap();
        assert_eq!(v.status, TorsionStatus::Torsion);
        assert_eq!(v.certificate.unwrap().reconstruct(), f);
    }

    #[test]
    fn x_squared_minus_t_plus_3_is_not_torsion() {
        let f = bivar(&[&[-3, -1], &[], &[1]]);
        let v = bivariate_torsion_test(&f, &TorusQuadratureConfig::default()).unwrap();
        assert_eq!(v.status, TorsionStatus::NotTorsion);
        assert!((v.numeric_measure.value - 3f64.ln()).abs() < 1e-6);
    }

    #[test]
    fn bivariate_monomial_and_t_only_factors() {
        // T^2 x (T^2 + T + 1): torsion with monomial part and a b = 0 factor
        let phi3_t = ip(&[1, 1, 1]);
        let f = BiPoly::new(vec![IntPoly::zero(), phi3_t.shift_up(2)]);
        let v = bivariate_torsion_test(&f, &TorusQuadratureConfig::default()).unwrap();
        assert_eq!(v.status, TorsionStatus::Torsion);
        let cert = v.certificate.unwrap();
        assert_eq!((cert.x_monomial, cert.t_monomial), (1, 2));
        assert_eq!(cert.factors.len(), 1);
        assert_eq!(cert.factors[0].x_exp, 0);
        assert_eq!(cert.reconstruct(), f);
    }

    #[test]
    fn bivariate_product_of_mixed_factors_reconstructs() {
        // (x - T)(x^2 + T x + T^2) = x^3 - T^3: phi_1 and phi_3 shapes
        let f = bivar(&[&[0, 0, 0, -1], &[], &[], &[1]]);
        let v = bivariate_torsion_test(&f, &TorusQuadratureConfig::default()).unwrap();
        assert_eq!(v.status, TorsionStatus::Torsion);
        assert_eq!(v.certificate.unwrap().reconstruct(), f);
    }

    #[test]
    fn bivariate_rejects_nonprimitive() {
        let f = bivar(&[&[2], &[2]]);
        assert!(bivariate_torsion_test(&f, &TorusQuadratureConfig::default()).is_err());
    }

    #[test]
    fn torsion_iff_measure_zero_on_small_corpus() {
        // every degree <= 6 polynomial with coefficients in {-1, 0, 1} and
        // unit leading coefficient, exact test vs numeric measure
        let mut checked = 0u32;
        for mask in 0..3u32.pow(6) {
            let mut c = Vec::with_capacity(7);
            let mut m = mask;
            for _ in 0..6 {
                c.push((m % 3) as i64 - 1);
                m /= 3;
            }
            c.push(1);
            let f = ip(&c);
            let v = is_cyclotomic_product(&f).unwrap();
            let nm = mahler_roots(&f).unwrap();
            let zero = nm.value <= nm.error_bound.max(1e-9);
            assert_eq!(
                v.status == TorsionStatus::Torsion,
                zero,
                "disagreement on {c:?}: measure {} +- {}",
                nm.value,
                nm.error_bound
            );
            checked += 1;
        }
        assert_eq!(checked, 729);
    }
}
