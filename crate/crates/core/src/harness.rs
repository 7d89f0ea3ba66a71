//! Scanning harness: corpus generators, per-polynomial measure/height rows,
//! the Dobrowolski-style margin, small-measure search, and report emission.
//!
//! A scan walks a corpus of integer polynomials, keeps the irreducible
//! ones, and emits one [`ScanRow`] each: canonical text, the certified
//! Mahler measure, the height `m/d`, the margin
//! `d·h·(log 3d / log log 3d)^3 − c` against the configured constant `c`,
//! and the exact torsion status. Rows are sorted by `(degree,
//! coefficients)` and their computation is deterministic, so identical
//! configurations produce byte-identical reports — parallelism only
//! reorders the work, never the output. Numeric failures are recorded in
//! the affected row and never abort a scan.

use std::cmp::Ordering;
use std::io::Write;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cyclotomic::{is_cyclotomic_product, TorsionStatus};
use crate::error::{Error, Result};
use crate::exact::{factor, IntPoly};
use crate::mahler::{mahler_roots_bits, MeasureResult};

/// Report encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Jsonl,
    Csv,
}

/// Tuning and limits shared by every harness run.
#[derive(Debug, Clone)]
pub struct HarnessConfig {
    /// root-finding working precision for re-verification escalation
    pub precision_bits: u32,
    /// quadrature tolerance for operations that integrate (unused by pure
    /// root-based scans, plumbed through for CLI consistency)
    pub tol: f64,
    /// the constant `c` in the margin `d·h·(log 3d/log log 3d)^3 − c`
    pub dobrowolski_c: f64,
    /// hard cap on candidate degree
    pub degree_limit: usize,
    /// hard cap on candidate |coefficient|
    pub coeff_limit: i64,
    /// maximum number of corpus candidates a single call may examine
    pub budget: u64,
    /// seed for random corpora; a fixed seed fixes the corpus
    pub seed: u64,
    pub format: OutputFormat,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        HarnessConfig {
            precision_bits: 128,
            tol: 1e-10,
            dobrowolski_c: 0.25,
            degree_limit: 120,
            coeff_limit: 1_000_000,
            budget: 5_000_000,
            seed: 0,
            format: OutputFormat::Jsonl,
        }
    }
}

impl HarnessConfig {
    pub fn validate(&self) -> Result<()> {
        if self.precision_bits < 24 {
            return Err(Error::domain("precision must be at least 24 bits"));
        }
        if !(self.tol > 0.0) {
            return Err(Error::domain("tolerance must be positive"));
        }
        if !(self.dobrowolski_c > 0.0) {
            return Err(Error::domain("the margin constant c must be positive"));
        }
        if self.degree_limit == 0 || self.coeff_limit <= 0 || self.budget == 0 {
            return Err(Error::domain("bounds must be positive"));
        }
        Ok(())
    }
}

/// What to scan.
#[derive(Debug, Clone)]
pub enum CorpusSpec {
    /// Every polynomial of degree `1..=deg_max` with coefficients in
    /// `[-coeff_bound, coeff_bound]` and positive leading coefficient (sign
    /// representatives: the measure ignores the sign).
    Exhaustive { deg_max: usize, coeff_bound: i64 },
    /// `count` polynomials drawn with the configured seed: degree uniform
    /// in `1..=deg_max`, leading coefficient uniform positive, remaining
    /// coefficients uniform in `[-coeff_bound, coeff_bound]`.
    SeededRandom {
        count: usize,
        deg_max: usize,
        coeff_bound: i64,
    },
    /// An explicit list.
    Explicit(Vec<IntPoly>),
}

/// One scanned polynomial. Serialized keys, in order: `polynomial`,
/// `degree`, `mahler {value, error_bound, method, evals, warning}`,
/// `height`, `dobrowolski_margin`, `torsion`, `violation`, and `error`
/// (present only on per-row failure, in which case the numeric fields are
/// null). Wall-clock time is deliberately not serialized: reports are
/// byte-reproducible.
#[derive(Debug, Clone, Serialize)]
pub struct ScanRow {
    pub polynomial: String,
    pub degree: usize,
    pub mahler: Option<MeasureResult>,
    pub height: Option<f64>,
    pub dobrowolski_margin: Option<f64>,
    pub torsion: Option<TorsionStatus>,
    /// a non-torsion row whose margin stayed negative after re-verification
    /// at doubled precision
    pub violation: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip)]
    pub runtime_ms: f64,
}

/// `(c/d) · (log log 3d / log 3d)^3` — the height floor the margin is
/// measured against.
pub fn dobrowolski_bound(d: usize, c: f64) -> Result<f64> {
    if d < 1 {
        return Err(Error::domain("degree must be at least 1"));
    }
    if !(c > 0.0) {
        return Err(Error::domain("the constant c must be positive"));
    }
    let l = (3.0 * d as f64).ln();
    Ok((c / d as f64) * (l.ln() / l).powi(3))
}

fn margin_factor(d: usize) -> f64 {
    let l = (3.0 * d as f64).ln();
    (l / l.ln()).powi(3)
}

// ---------------------------------------------------------------------------
// corpus enumeration

/// Number of exhaustive candidates of exact degree `d`.
fn degree_block(d: usize, b: i64) -> Option<u64> {
    let radix = (2 * b + 1) as u64;
    radix.checked_pow(d as u32)?.checked_mul(b as u64)
}

/// Decode the `i`-th degree-`d` candidate, in `(coefficients ascending)`
/// lexicographic order: `a_0` is the most significant digit, the leading
/// coefficient (`1..=b`) the least.
fn decode_candidate(i: u64, d: usize, b: i64) -> IntPoly {
    let radix = (2 * b + 1) as u64;
    let lead = (i % b as u64) as i64 + 1;
    let mut q = i / b as u64;
    let mut coeffs = vec![BigInt::from(0); d + 1];
    coeffs[d] = BigInt::from(lead);
    for j in (0..d).rev() {
        let digit = (q % radix) as i64 - b;
        coeffs[j] = BigInt::from(digit);
        q /= radix;
    }
    IntPoly::new(coeffs)
}

fn cmp_poly(a: &IntPoly, b: &IntPoly) -> Ordering {
    let da = a.deg_or_zero();
    let db = b.deg_or_zero();
    da.cmp(&db).then_with(|| a.coeffs().cmp(b.coeffs()))
}

// ---------------------------------------------------------------------------
// scanning

/// Analyze one candidate. `None` skips it (constant, non-primitive, or
/// reducible — reducible entries are redundant because the measure is
/// additive over factors); failures become rows with `error` set.
fn scan_row(f: &IntPoly, cfg: &HarnessConfig) -> Option<ScanRow> {
    let started = Instant::now();
    let deg = f.degree()?;
    if deg == 0 {
        return None;
    }
    let text = f.render("x");
    let fail = |msg: String, started: Instant| ScanRow {
        polynomial: text.clone(),
        degree: deg,
        mahler: None,
        height: None,
        dobrowolski_margin: None,
        torsion: None,
        violation: false,
        error: Some(msg),
        runtime_ms: started.elapsed().as_secs_f64() * 1e3,
    };
    if deg > cfg.degree_limit {
        return Some(fail(
            format!("degree {deg} exceeds the configured limit {}", cfg.degree_limit),
            started,
        ));
    }
    match f.content() {
        Ok(c) if c.is_one() => {}
        Ok(_) => return None, // non-primitive: an integer factor, hence reducible here
        Err(e) => return Some(fail(e.to_string(), started)),
    }
    // Irreducibility, as cheaply as available: the modular screen, then full
    // factorization, and at degrees beyond the factoring cap a certified
    // cyclotomic-product decomposition (which lists the irreducible factors
    // outright). `None` here means "decide from the torsion certificate".
    let mut irreducible = match factor::irreducible_screen(f) {
        Some(false) => return None,
        Some(true) => Some(true),
        None if deg <= factor::FACTOR_DEGREE_CAP => match factor::is_irreducible(f) {
            Ok(true) => Some(true),
            Ok(false) => return None,
            Err(e) => return Some(fail(e.to_string(), started)),
        },
        None => None,
    };
    let verdict = match is_cyclotomic_product(f) {
        Ok(v) => v,
        Err(e) => return Some(fail(e.to_string(), started)),
    };
    if irreducible.is_none() {
        if let Some(cert) = &verdict.certificate {
            let parts: u32 =
                cert.x_monomial + cert.factors.iter().map(|c| c.multiplicity).sum::<u32>();
            irreducible = Some(parts == 1);
        }
    }
    match irreducible {
        Some(true) => {}
        Some(false) => return None,
        None => {
            return Some(fail(
                format!(
                    "cannot certify irreducibility at degree {deg} (cap {})",
                    factor::FACTOR_DEGREE_CAP
                ),
                started,
            ))
        }
    }
    let mut mahler = verdict.numeric_measure.clone();
    let factor3 = margin_factor(deg);
    let mut margin = mahler.value * factor3 - cfg.dobrowolski_c;
    let mut violation = false;
    if verdict.status == TorsionStatus::NotTorsion && margin < 0.0 {
        // re-verify an apparent violation at doubled precision before
        // reporting it
        match mahler_roots_bits(f, cfg.precision_bits.saturating_mul(2)) {
            Ok(m2) => {
                mahler = m2;
                margin = mahler.value * factor3 - cfg.dobrowolski_c;
                violation = margin < 0.0;
            }
            Err(e) => return Some(fail(e.to_string(), started)),
        }
    }
    Some(ScanRow {
        polynomial: text,
        degree: deg,
        height: Some(mahler.value / deg as f64),
        dobrowolski_margin: Some(margin),
        mahler: Some(mahler),
        torsion: Some(verdict.status),
        violation,
        error: None,
        runtime_ms: started.elapsed().as_secs_f64() * 1e3,
    })
}

fn scan_exhaustive_block(d: usize, b: i64, cfg: &HarnessConfig) -> Vec<ScanRow> {
    let n = degree_block(d, b).expect("block size validated");
    (0..n)
        .into_par_iter()
        .filter_map(|i| scan_row(&decode_candidate(i, d, b), cfg))
        .collect()
}

/// Scan a corpus: one row per irreducible polynomial, sorted by `(degree,
/// coefficients)`, computed in parallel with deterministic output.
pub fn scan(spec: &CorpusSpec, cfg: &HarnessConfig) -> Result<Vec<ScanRow>> {
    cfg.validate()?;
    match spec {
        CorpusSpec::Exhaustive { deg_max, coeff_bound } => {
            validate_range(*deg_max, *coeff_bound, cfg)?;
            let mut total = 0u64;
            for d in 1..=*deg_max {
                total = degree_block(d, *coeff_bound)
                    .and_then(|n| total.checked_add(n))
                    .ok_or_else(|| Error::capacity("corpus size overflows"))?;
            }
            if total > cfg.budget {
                return Err(Error::capacity(format!(
                    "exhaustive corpus has {total} candidates, over the budget {}",
                    cfg.budget
                )));
            }
            let mut rows = Vec::new();
            for d in 1..=*deg_max {
                rows.extend(scan_exhaustive_block(d, *coeff_bound, cfg));
            }
            Ok(rows)
        }
        CorpusSpec::SeededRandom {
            count,
            deg_max,
            coeff_bound,
        } => {
            validate_range(*deg_max, *coeff_bound, cfg)?;
            if *count as u64 > cfg.budget {
                return Err(Error::capacity(format!(
                    "random corpus of {count} candidates is over the budget {}",
                    cfg.budget
                )));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let b = *coeff_bound;
            let mut polys: Vec<IntPoly> = (0..*count)
                .map(|_| {
                    let d = rng.gen_range(1..=*deg_max);
                    let mut coeffs: Vec<BigInt> =
                        (0..d).map(|_| BigInt::from(rng.gen_range(-b..=b))).collect();
                    coeffs.push(BigInt::from(rng.gen_range(1..=b)));
                    IntPoly::new(coeffs)
                })
                .collect();
            polys.sort_by(cmp_poly);
            polys.dedup();
            Ok(polys
                .par_iter()
                .filter_map(|f| scan_row(f, cfg))
                .collect())
        }
        CorpusSpec::Explicit(list) => {
            if list.len() as u64 > cfg.budget {
                return Err(Error::capacity(format!(
                    "corpus of {} candidates is over the budget {}",
                    list.len(),
                    cfg.budget
                )));
            }
            let mut polys = list.clone();
            polys.sort_by(cmp_poly);
            polys.dedup();
            Ok(polys
                .par_iter()
                .filter_map(|f| scan_row(f, cfg))
                .collect())
        }
    }
}

fn validate_range(deg_max: usize, coeff_bound: i64, cfg: &HarnessConfig) -> Result<()> {
    if deg_max == 0 || coeff_bound <= 0 {
        return Err(Error::domain("corpus bounds must be positive"));
    }
    if deg_max > cfg.degree_limit {
        return Err(Error::capacity(format!(
            "corpus degree {deg_max} exceeds the configured limit {}",
            cfg.degree_limit
        )));
    }
    if coeff_bound > cfg.coeff_limit {
        return Err(Error::capacity(format!(
            "corpus coefficient bound {coeff_bound} exceeds the configured limit {}",
            cfg.coeff_limit
        )));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// small-measure search

/// Result of a small-measure search, with explicit coverage so a partial
/// (budget-limited) run is never mistaken for a complete one.
#[derive(Debug, Clone, Serialize)]
pub struct SearchReport {
    /// the `k` smallest strictly-positive certified measures, ascending
    pub rows: Vec<ScanRow>,
    pub requested_degree_max: usize,
    /// degrees `1..=covered_degree_max` were scanned exhaustively
    pub covered_degree_max: usize,
    pub examined: u64,
    pub total: u64,
    pub complete: bool,
}

/// Exhaustively search degrees `1..=degree_max`, coefficients in
/// `[-coeff_bound, coeff_bound]`, for the `top_k` smallest
/// strictly-positive measures among irreducible, non-cyclotomic entries
/// (monomials and roots of unity are torsion and therefore excluded). The
/// search proceeds degree by degree and stops at the budget, reporting
/// exactly how far it got.
pub fn search_small_mahler(
    degree_max: usize,
    coeff_bound: i64,
    top_k: usize,
    cfg: &HarnessConfig,
) -> Result<SearchReport> {
    cfg.validate()?;
    validate_range(degree_max, coeff_bound, cfg)?;
    let mut total = 0u64;
    for d in 1..=degree_max {
        total = degree_block(d, coeff_bound)
            .and_then(|n| total.checked_add(n))
            .ok_or_else(|| Error::capacity("search space overflows"))?;
    }
    let mut examined = 0u64;
    let mut covered = 0usize;
    // (value, degree, coefficient key) keeps the ranking deterministic
    let mut best: Vec<(f64, ScanRow, Vec<BigInt>)> = Vec::new();
    for d in 1..=degree_max {
        let block = degree_block(d, coeff_bound).expect("validated");
        if examined + block > cfg.budget {
            break;
        }
        let rows: Vec<(ScanRow, Vec<BigInt>)> = (0..block)
            .into_par_iter()
            .filter_map(|i| {
                let f = decode_candidate(i, d, coeff_bound);
                let row = scan_row(&f, cfg)?;
                if row.error.is_some() || row.torsion != Some(TorsionStatus::NotTorsion) {
                    return None;
                }
                Some((row, f.coeffs().to_vec()))
            })
            .collect();
        examined += block;
        covered = d;
        for (row, key) in rows {
            let v = row.mahler.as_ref().expect("non-error row").value;
            best.push((v, row, key));
        }
        best.sort_by(|a, b| {
            a.0.total_cmp(&b.0)
                .then(a.1.degree.cmp(&b.1.degree))
                .then_with(|| a.2.cmp(&b.2))
        });
        best.truncate(top_k);
    }
    Ok(SearchReport {
        rows: best.into_iter().map(|(_, r, _)| r).collect(),
        requested_degree_max: degree_max,
        covered_degree_max: covered,
        examined,
        total,
        complete: examined == total,
    })
}

// ---------------------------------------------------------------------------
// report emission

/// One JSON object per row, keys as documented on [`ScanRow`].
pub fn write_jsonl<W: Write>(rows: &[ScanRow], out: &mut W) -> Result<()> {
    for row in rows {
        let line = serde_json::to_string(row)
            .map_err(|e| Error::domain(format!("serialization failed: {e}")))?;
        writeln!(out, "{line}").map_err(io_err)?;
    }
    Ok(())
}

const CSV_HEADER: &str = "polynomial,degree,mahler_value,mahler_error_bound,mahler_method,\
mahler_evals,mahler_warning,height,dobrowolski_margin,torsion,violation,error";

/// CSV with a fixed header, columns in the same order as the JSON keys.
pub fn write_csv<W: Write>(rows: &[ScanRow], out: &mut W) -> Result<()> {
    writeln!(out, "{CSV_HEADER}").map_err(io_err)?;
    for row in rows {
        let m = row.mahler.as_ref();
        let line = [
            csv_field(&row.polynomial),
            row.degree.to_string(),
            m.map_or(String::new(), |m| m.value.to_string()),
            m.map_or(String::new(), |m| m.error_bound.to_string()),
            m.map_or(String::new(), |m| {
                match m.method {
                    crate::mahler::MeasureMethod::Roots => "roots",
                    crate::mahler::MeasureMethod::Quadrature => "quadrature",
                }
                .to_string()
            }),
            m.map_or(String::new(), |m| m.evals.to_string()),
            m.map_or(String::new(), |m| m.warning.to_string()),
            row.height.map_or(String::new(), |h| h.to_string()),
            row.dobrowolski_margin.map_or(String::new(), |g| g.to_string()),
            row.torsion.map_or(String::new(), |t| {
                match t {
                    TorsionStatus::Torsion => "torsion",
                    TorsionStatus::NotTorsion => "not_torsion",
                    TorsionStatus::Inconclusive => "inconclusive",
                }
                .to_string()
            }),
            row.violation.to_string(),
            row.error.as_deref().map_or(String::new(), csv_field),
        ]
        .join(",");
        writeln!(out, "{line}").map_err(io_err)?;
    }
    Ok(())
}

/// Emit in the configured format.
pub fn write_rows<W: Write>(rows: &[ScanRow], format: OutputFormat, out: &mut W) -> Result<()> {
    match format {
        OutputFormat::Jsonl => write_jsonl(rows, out),
        OutputFormat::Csv => write_csv(rows, out),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::domain(format!("write failed: {e}"))
}
