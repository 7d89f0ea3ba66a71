//! High-precision lane: Aberth–Ehrlich over fixed-point complex numbers.
//!
//! Numbers are pairs of `BigInt` mantissas at a shared binary scale `s`
//! (value = mantissa / 2^s). Multiplication and division truncate at one
//! unit in the last place, which keeps every operation within a known error
//! budget; the final certification accounts for the accumulated evaluation
//! error explicitly, so iteration rounding never weakens the certificate.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::exact::intpoly::IntPoly;
use crate::exact::rational::big_ln_abs;
use crate::roots::Cplx;

/// Fixed-point complex number; the scale travels separately.
#[derive(Debug, Clone)]
pub struct HpC {
    pub re: BigInt,
    pub im: BigInt,
}

impl HpC {
    pub fn zero() -> Self {
        HpC {
            re: BigInt::zero(),
            im: BigInt::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn sub(&self, o: &HpC) -> HpC {
        HpC {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    pub fn add(&self, o: &HpC) -> HpC {
        HpC {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }

    /// Truncating fixed-point product.
    pub fn mul(&self, o: &HpC, s: u32) -> HpC {
        let re = &self.re * &o.re - &self.im * &o.im;
        let im = &self.re * &o.im + &self.im * &o.re;
        HpC {
            re: re >> s,
            im: im >> s,
        }
    }

    /// Truncating fixed-point quotient via the conjugate.
    /// Returns `None` when `o` is zero.
    pub fn div(&self, o: &HpC, s: u32) -> Option<HpC> {
        let den = &o.re * &o.re + &o.im * &o.im;
        if den.is_zero() {
            return None;
        }
        let num_re = (&self.re * &o.re + &self.im * &o.im) << s;
        let num_im = (&self.im * &o.re - &self.re * &o.im) << s;
        Some(HpC {
            re: num_re / &den,
            im: num_im / &den,
        })
    }
}

pub fn from_f64(x: f64, s: u32) -> BigInt {
    debug_assert!(x.is_finite());
    let m = (x * 2f64.powi(53)).round();
    let m = BigInt::from(m as i128);
    if s >= 53 {
        m << (s - 53)
    } else {
        m >> (53 - s)
    }
}

pub fn from_cplx(z: Cplx, s: u32) -> HpC {
    HpC {
        re: from_f64(z.re, s),
        im: from_f64(z.im, s),
    }
}

/// Mantissa at scale `s` back to `f64`, shifting first so huge mantissas
/// cannot overflow the conversion.
pub fn to_f64(x: &BigInt, s: u32) -> f64 {
    let bits = x.bits();
    if bits > 900 {
        let sh = (bits - 900) as u32;
        let top = x >> sh;
        top.to_f64().unwrap_or(0.0) * 2f64.powi(sh as i32 - s as i32)
    } else {
        x.to_f64().unwrap_or(0.0) * 2f64.powi(-(s as i32))
    }
}

/// `ln |z|` of a fixed-point complex number, computed in log space from the
/// exact mantissas (no underflow however small the value).
pub fn ln_mod(z: &HpC, s: u32) -> f64 {
    if z.is_zero() {
        return f64::NEG_INFINITY;
    }
    let sq = &z.re * &z.re + &z.im * &z.im;
    0.5 * big_ln_abs(&sq) - (s as f64) * std::f64::consts::LN_2
}

fn log_add_exp(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

fn horner_hp(coeffs_scaled: &[BigInt], z: &HpC, s: u32) -> HpC {
    let mut acc = HpC::zero();
    for c in coeffs_scaled.iter().rev() {
        acc = acc.mul(z, s);
        acc.re += c;
    }
    acc
}

/// Run Aberth–Ehrlich at fixed-point scale `s` from the given seeds and
/// certify. Returns the roots with certified radii only if every radius
/// meets `target`; `None` signals the caller to escalate or give up.
pub fn aberth_hp(
    g: &IntPoly,
    init: &[Cplx],
    s: u32,
    max_iter: u32,
    target: f64,
) -> Option<Vec<(HpC, f64)>> {
    let n = g.deg_or_zero();
    debug_assert_eq!(init.len(), n);
    let coeffs: Vec<BigInt> = g.coeffs().iter().map(|c| c.clone() << s).collect();
    let deriv: Vec<BigInt> = g
        .coeffs()
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| (c * BigInt::from(k)) << s)
        .collect();
    let one = HpC {
        re: BigInt::from(1) << s,
        im: BigInt::zero(),
    };
    let nudge = HpC {
        re: BigInt::from(1) << s.saturating_sub(27).max(1),
        im: BigInt::zero(),
    };
    let mut zs: Vec<HpC> = init.iter().map(|&z| from_cplx(z, s)).collect();
    let stop_ln = target.ln() - 3.0;
    let denom_floor = -(s as f64) * std::f64::consts::LN_2 * 0.5;
    let mut settled = false;
    for _ in 0..max_iter {
        let mut max_step_ln = f64::NEG_INFINITY;
        for i in 0..n {
            let fv = horner_hp(&coeffs, &zs[i], s);
            if fv.is_zero() {
                continue;
            }
            let dv = horner_hp(&deriv, &zs[i], s);
            let newton = match fv.div(&dv, s) {
                Some(q) => q,
                None => nudge.clone(),
            };
            let mut sum = HpC::zero();
            for j in 0..n {
                if i == j {
                    continue;
                }
                let d = zs[i].sub(&zs[j]);
                if let Some(inv) = one.div(&d, s) {
                    sum = sum.add(&inv);
                }
            }
            let denom = {
                let prod = newton.mul(&sum, s);
                HpC {
                    re: &one.re - &prod.re,
                    im: -prod.im,
                }
            };
            let w = if ln_mod(&denom, s) < denom_floor {
                newton
            } else {
                newton.div(&denom, s).unwrap_or(newton)
            };
            let w_ln = ln_mod(&w, s);
            if w_ln > max_step_ln {
                max_step_ln = w_ln;
            }
            zs[i] = zs[i].sub(&w);
        }
        if max_step_ln <= stop_ln {
            settled = true;
            break;
        }
    }
    if !settled {
        return None;
    }
    let radii = certify_hp(g, &zs, s);
    if radii.iter().all(|&r| r.is_finite() && r <= target) {
        Some(zs.into_iter().zip(radii).collect())
    } else {
        None
    }
}

/// Weierstrass radii about exact fixed-point centers, in log space.
/// The evaluation error of the fixed-point Horner scheme is bounded by
/// `2^-s * 3(n+1) * max(1, R)^n` where `R` bounds the center moduli; that
/// bound is folded into `|f(z_i)|` before forming the quotient.
pub fn certify_hp(g: &IntPoly, zs: &[HpC], s: u32) -> Vec<f64> {
    let n = zs.len();
    let coeffs: Vec<BigInt> = g.coeffs().iter().map(|c| c.clone() << s).collect();
    let ln_lead = big_ln_abs(&g.leading());
    let max_ln = g
        .coeffs()
        .iter()
        .map(big_ln_abs)
        .fold(f64::NEG_INFINITY, f64::max);
    let ratio_ln = max_ln - ln_lead;
    let ln_r_bound = if ratio_ln > 0.0 {
        ratio_ln + std::f64::consts::LN_2
    } else {
        std::f64::consts::LN_2
    };
    let ln_eval_err = -(s as f64) * std::f64::consts::LN_2
        + (3.0 * (n as f64 + 1.0)).ln()
        + n as f64 * ln_r_bound.max(0.0);
    let ln_n = (n as f64).ln();
    let mut out = Vec::with_capacity(n);
    for (i, z) in zs.iter().enumerate() {
        let fv = horner_hp(&coeffs, z, s);
        let ln_f = log_add_exp(ln_mod(&fv, s), ln_eval_err);
        let mut ln_prod = 0.0f64;
        let mut degenerate = false;
        for (j, zj) in zs.iter().enumerate() {
            if i == j {
                continue;
            }
            let d = z.sub(zj);
            let dl = ln_mod(&d, s);
            if dl == f64::NEG_INFINITY {
                degenerate = true;
                break;
            }
            ln_prod += dl;
        }
        if degenerate {
            out.push(f64::INFINITY);
            continue;
        }
        let ln_rad = ln_n + ln_f - ln_lead - ln_prod;
        let r = ln_rad.exp() * (1.0 + 1e-9);
        out.push(r.max(f64::MIN_POSITIVE));
    }
    out
}
