//! Certified complex root finding.
//!
//! Roots are located with the Aberth–Ehrlich simultaneous iteration and then
//! certified a posteriori: for approximations `z_1..z_n` of a degree-`n`
//! polynomial, the Weierstrass corrections
//! `W_i = f(z_i) / (lc * prod_{j != i} (z_i - z_j))` give disks
//! `D(z_i, n*|W_i|)` whose union contains every root, with any connected
//! component of `k` disks containing exactly `k` roots. The fast lane runs in
//! `f64` with running error bounds on the evaluation; the high-precision lane
//! runs in fixed-point arithmetic over `BigInt` mantissas and certifies radii
//! far below `f64` resolution.

mod cplx;
mod hp;

pub use cplx::Cplx;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::intpoly::IntPoly;
use hp::HpC;

/// Precision request for root finding.
#[derive(Debug, Clone)]
pub struct PrecisionConfig {
    /// Working precision for the high-precision lane, in bits.
    pub precision_bits: u32,
    /// Requested certified disk radius. `None` derives a target from
    /// `precision_bits`; radii around `1e-15 * |root|` and below force the
    /// high-precision lane.
    pub target_radius: Option<f64>,
    /// Iteration cap for each Aberth run.
    pub max_iterations: u32,
}

impl Default for PrecisionConfig {
    fn default() -> Self {
        PrecisionConfig {
            precision_bits: 128,
            target_radius: None,
            max_iterations: 64,
        }
    }
}

impl PrecisionConfig {
    pub fn with_bits(bits: u32) -> Self {
        PrecisionConfig {
            precision_bits: bits,
            ..Default::default()
        }
    }

    /// Effective target radius for certified disks.
    pub fn target(&self) -> f64 {
        match self.target_radius {
            Some(r) => r,
            None => {
                let bits = self.precision_bits.min(8000).max(24) as i32;
                2f64.powi(-(bits - 16))
            }
        }
    }

    /// Loose mode: the `f64` lane alone can satisfy the request.
    fn f64_suffices(&self) -> bool {
        self.target() >= 1e-13
    }
}

/// A certified disk in the complex plane: the polynomial has exactly
/// `multiplicity` roots (counted with multiplicity) within `radius` of the
/// center. The center is tracked beyond `f64` when the high-precision lane
/// produced it; `re`/`im` are rounded views.
#[derive(Debug, Clone)]
pub struct ComplexDisk {
    re: f64,
    im: f64,
    /// natural log of the center's modulus, computed before rounding
    ln_abs: f64,
    radius: f64,
    multiplicity: u32,
    hp_center: Option<(BigInt, BigInt, u32)>,
}

impl ComplexDisk {
    pub fn center(&self) -> (f64, f64) {
        (self.re, self.im)
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn multiplicity(&self) -> u32 {
        self.multiplicity
    }

    /// `ln |center|`; `f64::NEG_INFINITY` for a disk centered at 0.
    pub fn ln_abs(&self) -> f64 {
        self.ln_abs
    }

    pub fn abs(&self) -> f64 {
        self.ln_abs.exp()
    }

    /// The high-precision center, if one was computed: `(re, im, scale)`
    /// meaning `re / 2^scale + i * im / 2^scale`.
    pub fn hp_center(&self) -> Option<(&BigInt, &BigInt, u32)> {
        self.hp_center.as_ref().map(|(r, i, s)| (r, i, *s))
    }

    /// Largest `ln` of modulus consistent with the disk.
    pub fn ln_abs_upper(&self) -> f64 {
        let a = self.abs();
        (a + self.radius).ln()
    }

    /// Smallest `ln` of modulus consistent with the disk.
    pub fn ln_abs_lower(&self) -> f64 {
        let a = self.abs();
        if a <= self.radius {
            f64::NEG_INFINITY
        } else {
            (a - self.radius).ln()
        }
    }
}

/// All complex roots of `f` with multiplicity, as certified disks sorted by
/// `(re, im)`. Multiple roots are resolved exactly through the squarefree
/// decomposition, so each returned disk is certified for a simple root of
/// the appropriate squarefree part.
pub fn all_roots(f: &IntPoly, cfg: &PrecisionConfig) -> Result<Vec<ComplexDisk>> {
    let deg = f
        .degree()
        .ok_or_else(|| Error::domain("roots of the zero polynomial"))?;
    if deg == 0 {
        return Err(Error::domain("roots of a nonzero constant"));
    }
    let mut disks: Vec<ComplexDisk> = Vec::with_capacity(deg);
    let (_, _, parts) = f.squarefree_decomposition()?;
    for (g, mult) in parts {
        let zero_order = g.order_at_zero().unwrap_or(0);
        let g = if zero_order > 0 {
            disks.push(ComplexDisk {
                re: 0.0,
                im: 0.0,
                ln_abs: f64::NEG_INFINITY,
                radius: 0.0,
                multiplicity: mult * zero_order as u32,
                hp_center: None,
            });
            g.shift_down(zero_order)?
        } else {
            g
        };
        if g.deg_or_zero() == 0 {
            continue;
        }
        for d in roots_squarefree(&g, cfg)? {
            disks.push(ComplexDisk {
                multiplicity: d.multiplicity * mult,
                ..d
            });
        }
    }
    disks.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(disks)
}

/// Largest root modulus of `f` as `(value, error_bound)`.
pub fn max_modulus(f: &IntPoly, cfg: &PrecisionConfig) -> Result<(f64, f64)> {
    let disks = all_roots(f, cfg)?;
    let mut best = 0.0f64;
    let mut err = 0.0f64;
    for d in &disks {
        let a = if d.ln_abs == f64::NEG_INFINITY {
            0.0
        } else {
            d.abs()
        };
        if a > best {
            best = a;
            err = d.radius;
        }
    }
    Ok((best, err))
}

/// Roots of a squarefree primitive polynomial with nonzero constant term.
fn roots_squarefree(g: &IntPoly, cfg: &PrecisionConfig) -> Result<Vec<ComplexDisk>> {
    let n = g.deg_or_zero();
    debug_assert!(n >= 1);
    if n == 1 {
        return Ok(vec![linear_root(g, cfg)]);
    }
    // fast lane
    let coeffs = f64_coefficients(g);
    let f64_result = coeffs.as_deref().and_then(|c| {
        let zs = aberth_f64(c, cfg.max_iterations.max(120))?;
        let radii = certify_f64(c, &zs);
        Some((zs, radii))
    });
    if cfg.f64_suffices() {
        if let Some((zs, radii)) = &f64_result {
            let target = cfg.target();
            if radii
                .iter()
                .zip(zs.iter())
                .all(|(&r, z)| r.is_finite() && r <= target * z.abs().max(1.0))
            {
                return Ok(package_f64(zs, radii));
            }
        }
    }
    // high-precision lane
    let target = cfg.target();
    let mut scale = hp_scale(g, cfg, target);
    let init: Vec<Cplx> = match &f64_result {
        Some((zs, _)) => zs.clone(),
        None => initial_circle(g),
    };
    for attempt in 0..2 {
        match hp::aberth_hp(g, &init, scale, cfg.max_iterations, target) {
            Some(done) => return Ok(finish_hp(done, scale)),
            None => {
                scale *= 2;
                if attempt == 1 {
                    break;
                }
            }
        }
    }
    // report the best f64-certified error if we have one
    let best = f64_result
        .map(|(_, radii)| radii.iter().cloned().fold(0.0f64, f64::max))
        .unwrap_or(f64::INFINITY);
    Err(Error::Precision {
        what: format!("root certification for degree {n} polynomial"),
        best_error: best,
    })
}

fn linear_root(g: &IntPoly, cfg: &PrecisionConfig) -> ComplexDisk {
    // root of a1 x + a0 is -a0/a1, representable to any requested scale
    let a0 = g.coeff(0);
    let a1 = g.coeff(1);
    let scale = cfg.precision_bits.max(64);
    let re = (-(a0) << scale) / &a1;
    let val = HpC {
        re: re.clone(),
        im: BigInt::zero(),
    };
    let ln_abs = hp::ln_mod(&val, scale);
    let target = cfg.target();
    ComplexDisk {
        re: hp::to_f64(&re, scale),
        im: 0.0,
        ln_abs,
        radius: (2f64.powi(-(scale as i32))).max(f64::MIN_POSITIVE).min(target),
        multiplicity: 1,
        hp_center: Some((re, BigInt::zero(), scale)),
    }
}

/// Coefficients as f64, rescaled by a common power of two when they overflow.
/// Returns `None` when even rescaling cannot produce finite values.
fn f64_coefficients(g: &IntPoly) -> Option<Vec<Cplx>> {
    let max_bits = g
        .coeffs()
        .iter()
        .map(|c| c.bits())
        .max()
        .unwrap_or(0);
    let shift = max_bits.saturating_sub(900) as usize;
    let vals: Vec<f64> = g
        .coeffs()
        .iter()
        .map(|c| {
            let v = if shift > 0 { c >> shift } else { c.clone() };
            v.to_f64().unwrap_or(f64::NAN)
        })
        .collect();
    if vals.iter().any(|v| !v.is_finite()) {
        return None;
    }
    Some(vals.into_iter().map(Cplx::real).collect())
}

fn initial_circle(g: &IntPoly) -> Vec<Cplx> {
    let n = g.deg_or_zero();
    // geometric-mean radius |a0/an|^(1/n), clamped to a sane range
    let r = (crate::exact::rational::big_ln_abs(&g.coeff(0))
        - crate::exact::rational::big_ln_abs(&g.leading()))
        / n as f64;
    let r = (r.exp()).clamp(0.25, 4.0);
    (0..n)
        .map(|k| {
            let th = 2.0 * std::f64::consts::PI * (k as f64 + 0.35) / n as f64 + 0.42;
            Cplx::new(r * th.cos(), r * th.sin())
        })
        .collect()
}

/// Aberth–Ehrlich iteration in f64. Returns `None` when the iteration does
/// not settle (NaN, overflow, or no convergence within the cap).
pub fn aberth_f64(coeffs: &[Cplx], max_iter: u32) -> Option<Vec<Cplx>> {
    let n = coeffs.len().checked_sub(1)?;
    if n == 0 {
        return None;
    }
    let lead = coeffs[n];
    if lead.abs() == 0.0 {
        return None;
    }
    // initial guesses on a circle sized by the coefficients
    let a0 = coeffs[0].abs().max(1e-300);
    let r = (a0.ln() - lead.abs().ln()) / n as f64;
    let r = r.exp().clamp(0.25, 4.0);
    let mut zs: Vec<Cplx> = (0..n)
        .map(|k| {
            let th = 2.0 * std::f64::consts::PI * (k as f64 + 0.35) / n as f64 + 0.42;
            Cplx::new(r * th.cos(), r * th.sin())
        })
        .collect();
    aberth_f64_from(coeffs, &mut zs, max_iter).then_some(zs)
}

/// Run the iteration from caller-supplied starting points, in place.
/// Returns convergence success.
pub fn aberth_f64_from(coeffs: &[Cplx], zs: &mut [Cplx], max_iter: u32) -> bool {
    let n = coeffs.len() - 1;
    debug_assert_eq!(zs.len(), n);
    let deriv: Vec<Cplx> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c.scale(k as f64))
        .collect();
    let mut settled_passes = 0u32;
    for _ in 0..max_iter {
        let mut max_step = 0.0f64;
        for i in 0..n {
            let z = zs[i];
            let fv = horner(coeffs, z);
            let dv = horner(&deriv, z);
            if !fv.is_finite() || !dv.is_finite() {
                return false;
            }
            if fv.abs() == 0.0 {
                continue;
            }
            let newton = if dv.abs() == 0.0 {
                // nudge off a critical point
                Cplx::new(1e-8, 1e-8)
            } else {
                fv.div(dv)
            };
            let mut s = Cplx::new(0.0, 0.0);
            for (j, &zj) in zs.iter().enumerate() {
                if j != i {
                    let d = z.sub(zj);
                    if d.abs() == 0.0 {
                        continue;
                    }
                    s = s.add(Cplx::new(1.0, 0.0).div(d));
                }
            }
            let denom = Cplx::new(1.0, 0.0).sub(newton.mul(s));
            let w = if denom.abs() < 1e-290 {
                newton
            } else {
                newton.div(denom)
            };
            let znew = z.sub(w);
            if !znew.is_finite() {
                return false;
            }
            let rel = w.abs() / z.abs().max(1.0);
            if rel > max_step {
                max_step = rel;
            }
            zs[i] = znew;
        }
        if max_step < 5e-16 {
            settled_passes += 1;
            if settled_passes >= 2 {
                return true;
            }
        } else {
            settled_passes = 0;
        }
    }
    false
}

pub fn horner(coeffs: &[Cplx], z: Cplx) -> Cplx {
    let mut acc = Cplx::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        acc = acc.mul(z).add(c);
    }
    acc
}

/// Weierstrass radii in f64 with a running error bound on the evaluation:
/// `|f(z)|` is inflated by `gamma_n * sum |a_i| |z|^i` before entering the
/// quotient, so the radii stay valid despite rounding.
pub fn certify_f64(coeffs: &[Cplx], zs: &[Cplx]) -> Vec<f64> {
    let n = zs.len();
    let lead = coeffs[n];
    let ln_lead = lead.abs().ln();
    let eps = f64::EPSILON;
    let gamma = 2.0 * (n as f64 + 2.0) * eps;
    let mut out = Vec::with_capacity(n);
    for (i, &z) in zs.iter().enumerate() {
        let fv = horner(coeffs, z);
        // error bound on Horner: gamma * sum |a_k| |z|^k
        let za = z.abs();
        let mut mag = 0.0f64;
        for &c in coeffs.iter().rev() {
            mag = mag * za + c.abs();
        }
        let fv_up = fv.abs() + gamma * mag;
        let mut ln_prod = 0.0f64;
        let mut degenerate = false;
        for (j, &zj) in zs.iter().enumerate() {
            if i == j {
                continue;
            }
            let d = z.sub(zj).abs();
            if d == 0.0 {
                degenerate = true;
                break;
            }
            ln_prod += d.ln();
        }
        if degenerate || fv_up == 0.0 {
            out.push(if fv_up == 0.0 { 0.0 } else { f64::INFINITY });
            continue;
        }
        let ln_r = (n as f64).ln() + fv_up.ln() - ln_lead - ln_prod;
        // slack for the log-space accumulation itself
        let r = (ln_r).exp() * (1.0 + 1e-10 * n as f64);
        out.push(r);
    }
    out
}

fn package_f64(zs: &[Cplx], radii: &[f64]) -> Vec<ComplexDisk> {
    let disks: Vec<ComplexDisk> = zs
        .iter()
        .zip(radii.iter())
        .map(|(z, &r)| ComplexDisk {
            re: z.re,
            im: z.im,
            ln_abs: z.abs().ln(),
            radius: r,
            multiplicity: 1,
            hp_center: None,
        })
        .collect();
    merge_overlapping(disks)
}

fn finish_hp(done: Vec<(HpC, f64)>, scale: u32) -> Vec<ComplexDisk> {
    let disks: Vec<ComplexDisk> = done
        .into_iter()
        .map(|(z, r)| {
            let ln_abs = hp::ln_mod(&z, scale);
            ComplexDisk {
                re: hp::to_f64(&z.re, scale),
                im: hp::to_f64(&z.im, scale),
                ln_abs,
                radius: r,
                multiplicity: 1,
                hp_center: Some((z.re, z.im, scale)),
            }
        })
        .collect();
    merge_overlapping(disks)
}

/// Union-find merge of overlapping disks: a component of k disks holds
/// exactly k roots, reported as one disk with multiplicity k.
fn merge_overlapping(disks: Vec<ComplexDisk>) -> Vec<ComplexDisk> {
    let n = disks.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        let mut i = i;
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            let dx = disks[i].re - disks[j].re;
            let dy = disks[i].im - disks[j].im;
            let dist = dx.hypot(dy);
            if dist <= disks[i].radius + disks[j].radius {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a] = b;
                }
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    let mut out = Vec::with_capacity(groups.len());
    for (_, members) in groups {
        if members.len() == 1 {
            out.push(disks[members[0]].clone());
            continue;
        }
        let k = members.len() as f64;
        let cx = members.iter().map(|&i| disks[i].re).sum::<f64>() / k;
        let cy = members.iter().map(|&i| disks[i].im).sum::<f64>() / k;
        let mut radius = 0.0f64;
        let mut mult = 0u32;
        for &i in &members {
            let d = (disks[i].re - cx).hypot(disks[i].im - cy) + disks[i].radius;
            radius = radius.max(d);
            mult += disks[i].multiplicity;
        }
        out.push(ComplexDisk {
            re: cx,
            im: cy,
            ln_abs: cx.hypot(cy).ln(),
            radius,
            multiplicity: mult,
            hp_center: None,
        });
    }
    out
}

/// Working scale (bits) for the high-precision lane: enough for the target
/// radius after amplification through a degree-n evaluation, plus guard bits.
fn hp_scale(g: &IntPoly, cfg: &PrecisionConfig, target: f64) -> u32 {
    let n = g.deg_or_zero() as u32;
    let target_bits = (-target.log2()).ceil().max(8.0) as u32;
    // root modulus bound: 1 + max |a_i / a_n| gives log2 estimate
    let ln_lead = crate::exact::rational::big_ln_abs(&g.leading());
    let max_ln = g
        .coeffs()
        .iter()
        .map(crate::exact::rational::big_ln_abs)
        .fold(f64::NEG_INFINITY, f64::max);
    let log2_r = ((max_ln - ln_lead) / std::f64::consts::LN_2).max(0.0) + 1.0;
    let guard = 64 + n * (log2_r.ceil() as u32 + 2);
    (target_bits + guard).max(cfg.precision_bits)
}
