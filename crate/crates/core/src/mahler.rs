//! Mahler measures and the classical height.
//!
//! Two independent evaluation routes are provided. The root route expands
//! `m(f) = ln|a| + sum_i ln max(1, |alpha_i|)` over certified root disks;
//! the quadrature route integrates `ln |f|` over the unit torus directly.
//! Their agreement within combined error bounds is a standing cross-check.
//! All angles are parameterized by `t in [0,1)` with `x = e^{2 pi i t}`,
//! and all logarithms are natural.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::intpoly::IntPoly;
use crate::exact::rational::big_ln_abs;
use crate::exact::MultiPoly;
use crate::exact::BiPoly;
use crate::quad::{self, QuadConfig};
use crate::roots::{self, Cplx, PrecisionConfig};

/// How a `MeasureResult` was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MeasureMethod {
    Roots,
    Quadrature,
}

/// A real value with a rigorous error bound and provenance.
#[derive(Debug, Clone, Serialize)]
pub struct MeasureResult {
    pub value: f64,
    pub error_bound: f64,
    pub method: MeasureMethod,
    /// root count or integrand evaluations, depending on method
    pub evals: u64,
    /// set when the requested tolerance was not met; `error_bound` is then
    /// the honest (larger) bound actually achieved
    pub warning: bool,
}

impl MeasureResult {
    pub(crate) fn exact(value: f64, method: MeasureMethod) -> Self {
        MeasureResult {
            value,
            error_bound: 4.0 * f64::EPSILON * value.abs().max(1.0),
            method,
            evals: 0,
            warning: false,
        }
    }
}

/// Tuning for torus quadrature.
#[derive(Debug, Clone)]
pub struct TorusQuadratureConfig {
    pub target_abs_error: f64,
    /// bisection depth cap, expressed through the interval budget
    pub max_depth: u32,
    /// initial panels per dimension
    pub base_points: u32,
    /// locate circle roots numerically and split panels at their arguments
    pub singularity_split: bool,
}

impl Default for TorusQuadratureConfig {
    fn default() -> Self {
        TorusQuadratureConfig {
            target_abs_error: 1e-10,
            max_depth: 22,
            base_points: 16,
            singularity_split: true,
        }
    }
}

impl TorusQuadratureConfig {
    /// Default tolerance by torus dimension: 1e-10, 1e-6, 1e-4.
    pub fn default_for_vars(n: usize) -> Self {
        let tol = match n {
            0 | 1 => 1e-10,
            2 => 1e-6,
            _ => 1e-4,
        };
        TorusQuadratureConfig {
            target_abs_error: tol,
            ..Default::default()
        }
    }

    pub fn with_tol(tol: f64) -> Self {
        TorusQuadratureConfig {
            target_abs_error: tol,
            ..Default::default()
        }
    }

    pub(crate) fn quad(&self, tol: f64) -> QuadConfig {
        let cap = (self.base_points.max(2) as usize)
            .saturating_mul(1usize << self.max_depth.min(26));
        QuadConfig {
            tol,
            max_intervals: cap.min(4_000_000),
        }
    }
}

/// Precision request used for measure-grade root finding: the fast lane
/// with certified radii around 1e-13, escalating automatically when the
/// fast lane cannot certify.
fn measure_precision() -> PrecisionConfig {
    PrecisionConfig {
        precision_bits: 128,
        target_radius: Some(2e-13),
        max_iterations: 400,
    }
}

/// Mahler measure through certified roots:
/// `m(f) = ln|lc(f)| + sum ln max(1, |root|)`.
pub fn mahler_roots(f: &IntPoly) -> Result<MeasureResult> {
    mahler_roots_with(f, &measure_precision())
}

/// [`mahler_roots`] with explicit root-finding precision; used when a
/// result must be re-verified above the default working precision.
pub fn mahler_roots_bits(f: &IntPoly, bits: u32) -> Result<MeasureResult> {
    let mut cfg = PrecisionConfig::with_bits(bits);
    cfg.target_radius = Some(2e-13f64.min(0.5f64.powi(bits.min(400) as i32 / 2)));
    cfg.max_iterations = 400;
    mahler_roots_with(f, &cfg)
}

fn mahler_roots_with(f: &IntPoly, precision: &PrecisionConfig) -> Result<MeasureResult> {
    let deg = f
        .degree()
        .ok_or_else(|| Error::domain("Mahler measure of the zero polynomial"))?;
    if deg == 0 {
        return Ok(MeasureResult::exact(
            big_ln_abs(&f.coeff(0)),
            MeasureMethod::Roots,
        ));
    }
    let disks = roots::all_roots(f, precision)?;
    let mut value = big_ln_abs(&f.leading());
    let mut err = 4.0 * f64::EPSILON * (value.abs() + 1.0);
    let mut count = 0u64;
    for d in &disks {
        let mult = d.multiplicity() as f64;
        let v = d.ln_abs().max(0.0);
        let up = d.ln_abs_upper().max(0.0);
        let lo = d.ln_abs_lower().max(0.0);
        value += mult * v;
        err += mult * (up - v).max(v - lo).max(0.0);
        err += mult * 2.0 * f64::EPSILON * (v.abs() + 1.0);
        count += d.multiplicity() as u64;
    }
    debug_assert_eq!(count as usize, deg);
    Ok(MeasureResult {
        value,
        error_bound: err,
        method: MeasureMethod::Roots,
        evals: count,
        warning: false,
    })
}

/// Variant adopting the convention `m(0) = 0` instead of a domain error.
pub fn mahler_roots_zero_convention(f: &IntPoly) -> Result<MeasureResult> {
    if f.is_zero() {
        return Ok(MeasureResult::exact(0.0, MeasureMethod::Roots));
    }
    mahler_roots(f)
}

/// Classical Weil height of any root of the irreducible polynomial `f`:
/// `h(alpha) = m(f) / deg f`.
pub fn height_from_minpoly(f: &IntPoly) -> Result<MeasureResult> {
    let deg = f
        .degree()
        .ok_or_else(|| Error::domain("height from the zero polynomial"))?;
    if deg == 0 {
        return Err(Error::domain("height needs a nonconstant minimal polynomial"));
    }
    if !crate::exact::is_irreducible(f)? {
        return Err(Error::domain("height_from_minpoly requires an irreducible input"));
    }
    let m = mahler_roots(f)?;
    Ok(MeasureResult {
        value: m.value / deg as f64,
        error_bound: m.error_bound / deg as f64,
        ..m
    })
}

/// Arguments `t in [0,1)` of roots lying numerically near the unit circle;
/// used as quadrature split hints, never as values.
fn circle_root_args(coeffs: &[Cplx]) -> Vec<f64> {
    let mut out = Vec::new();
    let n = coeffs.len().saturating_sub(1);
    if n == 0 {
        return out;
    }
    if let Some(zs) = roots::aberth_f64(coeffs, 300) {
        for z in zs {
            let r = z.abs();
            if (r - 1.0).abs() < 0.05 {
                let mut t = z.im.atan2(z.re) / (2.0 * std::f64::consts::PI);
                if t < 0.0 {
                    t += 1.0;
                }
                out.push(t);
            }
        }
    }
    out
}

pub(crate) fn int_poly_circle_args(f: &IntPoly) -> Vec<f64> {
    let cs: Vec<Cplx> = f.coeffs_f64().into_iter().map(Cplx::real).collect();
    if cs.iter().any(|c| !c.is_finite()) {
        return Vec::new();
    }
    circle_root_args(&cs)
}

/// `ln |p(e^{2 pi i s})|` evaluated through a Horner pass.
fn ln_on_circle(coeffs: &[Cplx], s: f64) -> f64 {
    let th = 2.0 * std::f64::consts::PI * s;
    let z = Cplx::new(th.cos(), th.sin());
    roots::horner(coeffs, z).abs().ln()
}

/// Mahler measure by iterated adaptive quadrature over the torus,
/// for polynomials in 1 to 3 variables.
///
/// When the target error is unreachable within the depth budget the best
/// value is returned with its honest (larger) error bound and the
/// `warning` flag set, rather than an error.
pub fn mahler_quadrature(f: &MultiPoly, cfg: &TorusQuadratureConfig) -> Result<MeasureResult> {
    if f.is_zero() {
        return Err(Error::domain("Mahler measure of the zero polynomial"));
    }
    let n = f.nvars;
    let tol = cfg.target_abs_error;
    match n {
        1 => {
            let coeffs: Vec<Cplx> = f
                .slice_coeffs(&[])
                .into_iter()
                .map(|(re, im)| Cplx::new(re, im))
                .collect();
            let splits = if cfg.singularity_split {
                circle_root_args(&coeffs)
            } else {
                Vec::new()
            };
            let r = quad::integrate_all(
                |s| ln_on_circle(&coeffs, s),
                0.0,
                1.0,
                &splits,
                &cfg.quad(tol),
            );
            Ok(MeasureResult {
                value: r.value,
                error_bound: r.error,
                method: MeasureMethod::Quadrature,
                evals: r.evals,
                warning: !r.converged,
            })
        }
        2 => {
            let mut evals = 0u64;
            let mut max_inner_err = 0.0f64;
            let mut inner_ok = true;
            let inner_cfg = cfg.quad(tol / 2.0);
            let outer = quad::integrate_all(
                |u| {
                    let coeffs: Vec<Cplx> = f
                        .slice_coeffs(&[u])
                        .into_iter()
                        .map(|(re, im)| Cplx::new(re, im))
                        .collect();
                    let r = quad::integrate_all(
                        |s| ln_on_circle(&coeffs, s),
                        0.0,
                        1.0,
                        &[],
                        &inner_cfg,
                    );
                    evals += r.evals;
                    if r.error > max_inner_err {
                        max_inner_err = r.error;
                    }
                    inner_ok &= r.converged;
                    r.value
                },
                0.0,
                1.0,
                &[],
                &cfg.quad(tol / 2.0),
            );
            Ok(MeasureResult {
                value: outer.value,
                error_bound: outer.error + max_inner_err,
                method: MeasureMethod::Quadrature,
                evals: evals + outer.evals,
                warning: !(outer.converged && inner_ok),
            })
        }
        3 => {
            let mut evals = 0u64;
            let mut worst_2d_err = 0.0f64;
            let mut inner_ok = true;
            let mid_cfg = cfg.quad(tol / 4.0);
            let inner_cfg = cfg.quad(tol / 4.0);
            let outer = quad::integrate_all(
                |w| {
                    let mut max_inner_err = 0.0f64;
                    let mid = quad::integrate_all(
                        |u| {
                            let coeffs: Vec<Cplx> = f
                                .slice_coeffs(&[u, w])
                                .into_iter()
                                .map(|(re, im)| Cplx::new(re, im))
                                .collect();
                            let r = quad::integrate_all(
                                |s| ln_on_circle(&coeffs, s),
                                0.0,
                                1.0,
                                &[],
                                &inner_cfg,
                            );
                            evals += r.evals;
                            if r.error > max_inner_err {
                                max_inner_err = r.error;
                            }
                            inner_ok &= r.converged;
                            r.value
                        },
                        0.0,
                        1.0,
                        &[],
                        &mid_cfg,
                    );
                    evals += mid.evals;
                    let total = mid.error + max_inner_err;
                    if total > worst_2d_err {
                        worst_2d_err = total;
                    }
                    inner_ok &= mid.converged;
                    mid.value
                },
                0.0,
                1.0,
                &[],
                &cfg.quad(tol / 2.0),
            );
            Ok(MeasureResult {
                value: outer.value,
                error_bound: outer.error + worst_2d_err,
                method: MeasureMethod::Quadrature,
                evals: evals + outer.evals,
                warning: !(outer.converged && inner_ok),
            })
        }
        _ => Err(Error::capacity("torus quadrature supports at most 3 variables")),
    }
}

/// Measure of a complex-coefficient polynomial through the fast root lane:
/// `ln|lc| + sum ln max(1, |root|)` with a certified error bound.
/// `None` when the lane fails to certify (caller falls back to quadrature).
pub(crate) fn measure_complex_poly(coeffs_in: &[Cplx]) -> Option<(f64, f64)> {
    // strip exactly-zero leading entries, then zero roots (both measure-safe)
    let mut hi = coeffs_in.len();
    while hi > 0 && coeffs_in[hi - 1].abs() == 0.0 {
        hi -= 1;
    }
    if hi == 0 {
        return None;
    }
    let mut lo = 0;
    while lo < hi - 1 && coeffs_in[lo].abs() == 0.0 {
        lo += 1;
    }
    let coeffs = &coeffs_in[lo..hi];
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    if n == 0 {
        let v = lead.abs().ln();
        return Some((v, 4.0 * f64::EPSILON * (v.abs() + 1.0)));
    }
    let zs = roots::aberth_f64(coeffs, 400)?;
    let radii = roots::certify_f64(coeffs, &zs);
    let mut value = lead.abs().ln();
    let mut err = 4.0 * f64::EPSILON * (value.abs() + 1.0);
    for (z, &r) in zs.iter().zip(radii.iter()) {
        if !r.is_finite() {
            return None;
        }
        let a = z.abs();
        let v = a.ln().max(0.0);
        let up = (a + r).ln().max(0.0);
        let lo_ln = if a > r { (a - r).ln().max(0.0) } else { 0.0 };
        value += v;
        let e = (up - v).max(v - lo_ln).max(0.0);
        if !e.is_finite() {
            return None;
        }
        err += e + 2.0 * f64::EPSILON * (v.abs() + 1.0);
    }
    if !value.is_finite() || err > 0.25 {
        return None;
    }
    Some((value, err))
}

/// Two-variable Mahler measure of `f(x, T)` on the torus, computed as an
/// adaptive integral over `t` of the exact inner Jensen value of the slice
/// `x -> f(x, e^{2 pi i t})` (itself obtained from certified roots, with a
/// direct quadrature rescue for ill-conditioned slices).
pub fn bivariate_measure(b: &BiPoly, cfg: &TorusQuadratureConfig) -> Result<MeasureResult> {
    if b.is_zero() {
        return Err(Error::domain("Mahler measure of the zero polynomial"));
    }
    let tol = cfg.target_abs_error;
    let splits = if cfg.singularity_split {
        int_poly_circle_args(&b.leading_x())
    } else {
        Vec::new()
    };
    let rescue_cfg = cfg.quad((tol / 4.0).max(1e-12));
    let mut max_slice_err = 0.0f64;
    let mut evals = 0u64;
    let mut rescue_ok = true;
    let outer = quad::integrate_all(
        |t| {
            let coeffs: Vec<Cplx> = b
                .slice_at_circle(t)
                .into_iter()
                .map(|(re, im)| Cplx::new(re, im))
                .collect();
            match measure_complex_poly(&coeffs) {
                Some((v, e)) => {
                    evals += coeffs.len() as u64;
                    if e > max_slice_err {
                        max_slice_err = e;
                    }
                    v
                }
                None => {
                    let r = quad::integrate_all(
                        |s| ln_on_circle(&coeffs, s),
                        0.0,
                        1.0,
                        &[],
                        &rescue_cfg,
                    );
                    evals += r.evals;
                    if r.error > max_slice_err {
                        max_slice_err = r.error;
                    }
                    rescue_ok &= r.converged;
                    r.value
                }
            }
        },
        0.0,
        1.0,
        &splits,
        &cfg.quad(tol),
    );
    Ok(MeasureResult {
        value: outer.value,
        error_bound: outer.error + max_slice_err,
        method: MeasureMethod::Quadrature,
        evals: evals + outer.evals,
        warning: !(outer.converged && rescue_ok),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::intpoly::IntPoly;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn monomial_measure_is_log_leading() {
        // m(5x) = ln 5
        let m = mahler_roots(&p(&[0, 5])).unwrap();
        assert!((m.value - 5f64.ln()).abs() < 1e-12);
        assert!(m.error_bound < 1e-10);
    }

    #[test]
    fn cyclotomic_measure_zero() {
        // x^4 - x^2 + 1 (order 12): all roots on the unit circle
        let m = mahler_roots(&p(&[1, 0, -1, 0, 1])).unwrap();
        assert!(m.value.abs() < 1e-12, "got {}", m.value);
        assert!(m.value >= -m.error_bound);
    }

    #[test]
    fn golden_ratio_measure() {
        let m = mahler_roots(&p(&[-1, -1, 1])).unwrap();
        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((m.value - golden.ln()).abs() < 1e-13);
    }

    #[test]
    fn lehmer_measure() {
        let f = p(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]);
        let m = mahler_roots(&f).unwrap();
        assert!((m.value - 0.1623576120).abs() < 1e-8, "got {}", m.value);
        assert!(m.error_bound < 1e-11);
    }

    #[test]
    fn height_of_sqrt2() {
        let h = height_from_minpoly(&p(&[-2, 0, 1])).unwrap();
        assert!((h.value - 0.5 * 2f64.ln()).abs() < 1e-13);
    }

    #[test]
    fn height_rejects_reducible() {
        assert!(height_from_minpoly(&p(&[-1, 0, 1])).is_err());
    }

    #[test]
    fn quadrature_matches_roots_univariate() {
        for coeffs in [&[-2i64, 0, 1][..], &[3, 1, 4, 1, 5], &[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]] {
            let f = p(coeffs);
            let mr = mahler_roots(&f).unwrap();
            let mp = MultiPoly::from_int_poly(&f);
            let mq = mahler_quadrature(&mp, &TorusQuadratureConfig::with_tol(1e-10)).unwrap();
            let gap = (mr.value - mq.value).abs();
            assert!(
                gap <= mr.error_bound + mq.error_bound + 1e-12,
                "gap {gap} for {coeffs:?}"
            );
        }
    }

    #[test]
    fn torus_monomial_measure_zero() {
        // m(x y^3) = 0
        let f = MultiPoly::new(2, vec![([1u16, 3u16, 0u16], num_bigint::BigInt::from(1))]).unwrap();
        let m = mahler_quadrature(&f, &TorusQuadratureConfig::with_tol(1e-9)).unwrap();
        assert!(m.value.abs() < 1e-9, "got {}", m.value);
    }

    #[test]
    fn smyth_two_variable_constant() {
        // m(1 + x + y) = 0.3230659472...
        let f = MultiPoly::new(
            2,
            vec![
                ([0u16, 0u16, 0u16], num_bigint::BigInt::from(1)),
                ([1, 0, 0], num_bigint::BigInt::from(1)),
                ([0, 1, 0], num_bigint::BigInt::from(1)),
            ],
        )
        .unwrap();
        let m = mahler_quadrature(&f, &TorusQuadratureConfig::with_tol(1e-6)).unwrap();
        assert!(
            (m.value - 0.3230659472).abs() < 5e-6,
            "got {} err {}",
            m.value,
            m.error_bound
        );
    }

    #[test]
    fn bivariate_constant_in_t_matches_univariate() {
        // f = x^2 - 2 viewed in Z[T][x]
        let b = BiPoly::from_int_poly_in_x(&p(&[-2, 0, 1]));
        let m2 = bivariate_measure(&b, &TorusQuadratureConfig::with_tol(1e-9)).unwrap();
        assert!((m2.value - 2f64.ln()).abs() < 1e-9, "got {}", m2.value);
    }

    #[test]
    fn bivariate_shifted_constant() {
        // f = x^2 - (T + 3): inner Jensen integral of ln|e^{2 pi i t} + 3| = ln 3
        let mut b = BiPoly::from_int_poly_in_x(&p(&[0, 0, 1]));
        b = b.sub(&BiPoly::from_int_poly_in_t(&p(&[3, 1])));
        let m2 = bivariate_measure(&b, &TorusQuadratureConfig::with_tol(1e-8)).unwrap();
        assert!((m2.value - 3f64.ln()).abs() < 1e-7, "got {}", m2.value);
    }

    #[test]
    fn measure_nonnegative_for_integer_polys() {
        for coeffs in [&[2i64, 3][..], &[-1, 2, 7], &[1, 0, 0, 1], &[4, -4, 1]] {
            let m = mahler_roots(&p(coeffs)).unwrap();
            assert!(m.value >= -m.error_bound, "violated for {coeffs:?}");
        }
    }

    #[test]
    fn multiplicativity() {
        let f = p(&[-2, 0, 1]);
        let g = p(&[3, 1, 4, 1]);
        let mf = mahler_roots(&f).unwrap();
        let mg = mahler_roots(&g).unwrap();
        let mfg = mahler_roots(&f.mul(&g)).unwrap();
        let gap = (mfg.value - mf.value - mg.value).abs();
        assert!(gap <= mf.error_bound + mg.error_bound + mfg.error_bound + 1e-12);
    }

    #[test]
    fn power_substitution_preserves_measure() {
        let f = p(&[-1, -1, 1]);
        let mf = mahler_roots(&f).unwrap();
        for k in [2usize, 3] {
            let fk = f.inflate(k);
            let mk = mahler_roots(&fk).unwrap();
            assert!(
                (mf.value - mk.value).abs() <= mf.error_bound + mk.error_bound + 1e-12,
                "k = {k}"
            );
        }
    }

    #[test]
    fn zero_convention_flag() {
        assert!(mahler_roots(&IntPoly::zero()).is_err());
        let m = mahler_roots_zero_convention(&IntPoly::zero()).unwrap();
        assert_eq!(m.value, 0.0);
    }
}
