//! `qth` — Mahler measures, Weil heights, and the adelic height on Q(T)
//! from the command line.
//!
//! Single-result commands print one JSON object to stdout. The scanning
//! commands (`dobrowolski-scan`, `search`) print rows in the selected
//! report format (JSON lines or CSV) to stdout and a short status summary
//! to stderr; their stdout is byte-reproducible for a fixed configuration.
//!
//! Exit codes: 0 success; 1 usage, parse, domain, or pole errors;
//! 2 numeric non-convergence; 3 capacity exceeded.

use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use qtheight::adelic::{
    abs_value_log, finite_place_normalization_check, height_algebraic, height_p1, height_pn,
    kernel_classify, key2_defect, normalization_data, product_formula_defect, AlgebraicQT,
    ElementQT, Place, ProjectivePointQT,
};
use qtheight::cyclotomic::{bivariate_torsion_test, is_cyclotomic_product};
use qtheight::error::{Error, Result};
use qtheight::exact::RatFunc;
use qtheight::harness::{
    scan, search_small_mahler, write_rows, CorpusSpec, HarnessConfig, OutputFormat,
};
use qtheight::mahler::{
    height_from_minpoly, mahler_quadrature, mahler_roots_bits, MeasureResult,
    TorusQuadratureConfig,
};
use qtheight::parse::{parse_expression, Parsed};

#[derive(Parser)]
#[command(
    name = "qth",
    version,
    about = "Heights on the adelic curve Q(T): Mahler measures, places, the product formula, torsion tests, and scanning",
    after_help = "Polynomial syntax: integer literals, variables x y z T, operators + - * / ^ \
                  (caret binds tightest, right-associative), parentheses, unary minus. \
                  Example: qth mahler \"x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1\""
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct GlobalArgs {
    /// Root-finding working precision in bits (default 128)
    #[arg(long, global = true, value_name = "BITS")]
    precision_bits: Option<u32>,
    /// Quadrature tolerance (defaults depend on the operation's dimension)
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Seed for random corpora (default 0)
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Report format for scanning commands
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,
    /// key=value file providing defaults for the flags above (plus
    /// dobrowolski-c, degree-limit, coeff-limit, budget)
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Jsonl,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Mahler measure of a polynomial (roots method for one variable,
    /// torus quadrature for 2 or 3)
    Mahler {
        /// polynomial in x (or y, z for the multivariate torus)
        poly: String,
        /// number of torus variables (inferred when omitted)
        #[arg(long)]
        vars: Option<usize>,
    },
    /// Classical Weil height m(f)/deg(f) of a root of an irreducible
    /// polynomial
    Height {
        /// irreducible polynomial in x
        poly: String,
    },
    /// Adelic heights on Q(T)
    Hs {
        #[command(subcommand)]
        sub: HsCmd,
    },
    /// Absolute values at single places
    Places {
        #[command(subcommand)]
        sub: PlacesCmd,
    },
    /// Sum of log|phi| over all places (vanishes within the error bound)
    ProductFormula {
        /// rational function of T
        ratfunc: String,
    },
    /// Exact torsion test: is every root (pair) on the unit torus?
    Kronecker {
        /// polynomial in x, or in x and T
        poly: String,
    },
    /// Normalization data for a pair presented by monic integral equations,
    /// with the exact finite-place cancellation check
    Normalize {
        /// first presentation, monic in x over Z[T]
        phi: String,
        /// second presentation, monic in x over Z[T]
        psi: String,
    },
    /// Norm-comparison defect (RHS - LHS >= 0 within the error bound) for a
    /// coordinate pair; coordinates are rational functions of T or monic
    /// presentations in x and T, given as "phi,psi" or as two arguments
    Key2 {
        #[arg(num_args = 1..=2, value_name = "PHI[,PSI]")]
        spec: Vec<String>,
    },
    /// Classify an element against the kernel of the adelic height
    Kernel {
        /// rational function of T, or a presentation in x and T
        element: String,
    },
    /// Scan a corpus and report measure, height, and the margin
    /// d*h*(log 3d / log log 3d)^3 - c per irreducible polynomial
    DobrowolskiScan {
        #[arg(long)]
        deg_max: usize,
        #[arg(long)]
        coeff_bound: i64,
        /// the constant c (default 0.25)
        #[arg(long)]
        c: Option<f64>,
        /// draw this many random candidates instead of exhausting the range
        #[arg(long)]
        count: Option<usize>,
    },
    /// Exhaustive search for the smallest strictly-positive Mahler measures
    Search {
        #[arg(long)]
        deg_max: usize,
        #[arg(long)]
        coeff_bound: i64,
        #[arg(long)]
        top_k: usize,
    },
}

#[derive(Subcommand)]
enum HsCmd {
    /// Height of a projective point over Q(T)
    Point {
        /// comma-separated coordinates, each a rational function of T
        #[arg(long)]
        coords: String,
    },
    /// Height of an algebraic element presented by its minimal polynomial
    Alg {
        /// irreducible presentation in x over Z[T]
        bipoly: String,
    },
}

#[derive(Subcommand)]
enum PlacesCmd {
    /// log |phi|_w at one place
    Eval {
        /// rational function of T
        ratfunc: String,
        /// closed:<poly in T> | prime:<p> | circle:<t>
        #[arg(long)]
        place: String,
    },
}

// ---------------------------------------------------------------------------
// settings: defaults <- config file <- command line

struct Settings {
    precision_bits: u32,
    tol: Option<f64>,
    seed: u64,
    format: OutputFormat,
    dobrowolski_c: f64,
    degree_limit: usize,
    coeff_limit: i64,
    budget: u64,
}

impl Settings {
    fn resolve(global: &GlobalArgs) -> Result<Settings> {
        let base = HarnessConfig::default();
        let mut s = Settings {
            precision_bits: base.precision_bits,
            tol: None,
            seed: base.seed,
            format: base.format,
            dobrowolski_c: base.dobrowolski_c,
            degree_limit: base.degree_limit,
            coeff_limit: base.coeff_limit,
            budget: base.budget,
        };
        if let Some(path) = &global.config {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::domain(format!("cannot read {}: {e}", path.display())))?;
            s.apply_config(&text)?;
        }
        if let Some(b) = global.precision_bits {
            s.precision_bits = b;
        }
        if let Some(t) = global.tol {
            s.tol = Some(t);
        }
        if let Some(seed) = global.seed {
            s.seed = seed;
        }
        if let Some(f) = global.format {
            s.format = match f {
                FormatArg::Jsonl => OutputFormat::Jsonl,
                FormatArg::Csv => OutputFormat::Csv,
            };
        }
        Ok(s)
    }

    fn apply_config(&mut self, text: &str) -> Result<()> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::domain(format!("config line {}: expected key=value", lineno + 1)))?;
            let key = key.trim().replace('_', "-");
            let value = value.trim();
            let bad = |what: &str| Error::domain(format!("config line {}: invalid {what}", lineno + 1));
            match key.as_str() {
                "precision-bits" => self.precision_bits = value.parse().map_err(|_| bad("precision-bits"))?,
                "tol" => self.tol = Some(value.parse().map_err(|_| bad("tol"))?),
                "seed" => self.seed = value.parse().map_err(|_| bad("seed"))?,
                "dobrowolski-c" | "c" => self.dobrowolski_c = value.parse().map_err(|_| bad("dobrowolski-c"))?,
                "degree-limit" => self.degree_limit = value.parse().map_err(|_| bad("degree-limit"))?,
                "coeff-limit" => self.coeff_limit = value.parse().map_err(|_| bad("coeff-limit"))?,
                "budget" => self.budget = value.parse().map_err(|_| bad("budget"))?,
                "format" => {
                    self.format = match value {
                        "jsonl" => OutputFormat::Jsonl,
                        "csv" => OutputFormat::Csv,
                        _ => return Err(bad("format (jsonl or csv)")),
                    }
                }
                other => {
                    return Err(Error::domain(format!(
                        "config line {}: unknown key '{other}'",
                        lineno + 1
                    )))
                }
            }
        }
        Ok(())
    }

    /// Quadrature configuration for an `n`-dimensional torus integral.
    fn quad_cfg(&self, n: usize) -> TorusQuadratureConfig {
        match self.tol {
            Some(t) => TorusQuadratureConfig::with_tol(t),
            None => TorusQuadratureConfig::default_for_vars(n),
        }
    }

    fn harness(&self) -> HarnessConfig {
        HarnessConfig {
            precision_bits: self.precision_bits,
            tol: self.tol.unwrap_or(1e-10),
            dobrowolski_c: self.dobrowolski_c,
            degree_limit: self.degree_limit,
            coeff_limit: self.coeff_limit,
            budget: self.budget,
            seed: self.seed,
            format: self.format,
        }
    }
}

// ---------------------------------------------------------------------------

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    0
                }
                _ => {
                    eprint!("{e}");
                    1
                }
            }
        }
    };
    match dispatch(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn measure_json(m: &MeasureResult) -> serde_json::Value {
    serde_json::to_value(m).expect("measure serializes")
}

fn emit(value: serde_json::Value) -> Result<()> {
    let mut out = std::io::stdout().lock();
    writeln!(out, "{value}").map_err(|e| Error::domain(format!("write failed: {e}")))?;
    Ok(())
}

fn parse_or_usage(text: &str) -> Result<Parsed> {
    parse_expression(text)
}

/// An element of Q(T) or of its algebraic closure, from expression text:
/// expressions in `T` alone are rational elements, anything involving `x`
/// is a presentation by its minimal polynomial.
fn parse_element(text: &str) -> Result<ElementQT> {
    let p = parse_or_usage(text)?;
    if p.variables().contains(&'x') {
        Ok(ElementQT::Algebraic(AlgebraicQT::new(&p.to_bipoly()?)?))
    } else {
        Ok(ElementQT::Rational(p.to_ratfunc()?))
    }
}

fn dispatch(cli: &Cli) -> Result<()> {
    let s = Settings::resolve(&cli.global)?;
    match &cli.cmd {
        Cmd::Mahler { poly, vars } => {
            let p = parse_or_usage(poly)?;
            let inferred = p
                .variables()
                .iter()
                .filter(|v| **v != 'T')
                .map(|v| match v {
                    'x' => 1,
                    'y' => 2,
                    _ => 3,
                })
                .max()
                .unwrap_or(1);
            let n = vars.unwrap_or(inferred);
            if n <= 1 && inferred <= 1 {
                let (f, _) = p.to_int_poly()?;
                let m = mahler_roots_bits(&f, s.precision_bits)?;
                emit(json!({ "polynomial": f.render("x"), "mahler": measure_json(&m) }))
            } else {
                let f = p.to_multipoly(n)?;
                let m = mahler_quadrature(&f, &s.quad_cfg(n))?;
                emit(json!({ "polynomial": f.render(), "vars": n, "mahler": measure_json(&m) }))
            }
        }
        Cmd::Height { poly } => {
            let (f, _) = parse_or_usage(poly)?.to_int_poly()?;
            let h = height_from_minpoly(&f)?;
            emit(json!({
                "polynomial": f.render("x"),
                "degree": f.deg_or_zero(),
                "height": measure_json(&h),
            }))
        }
        Cmd::Hs { sub } => match sub {
            HsCmd::Point { coords } => {
                let parts: Vec<&str> = coords.split(',').collect();
                let mut cs: Vec<RatFunc> = Vec::with_capacity(parts.len());
                for part in &parts {
                    cs.push(parse_or_usage(part.trim())?.to_ratfunc()?);
                }
                let n = cs.len();
                let point = ProjectivePointQT::new(cs)?;
                let cfg = s.quad_cfg(1);
                let h = if n == 2 {
                    height_p1(&point, &cfg)?
                } else {
                    height_pn(&point, &cfg)?
                };
                emit(json!({ "coords": n, "height": measure_json(&h) }))
            }
            HsCmd::Alg { bipoly } => {
                let b = parse_or_usage(bipoly)?.to_bipoly()?;
                let alpha = AlgebraicQT::new(&b)?;
                let h = height_algebraic(&alpha, &s.quad_cfg(2))?;
                emit(json!({
                    "minpoly": alpha.minpoly().render("x", "T"),
                    "degree": alpha.degree(),
                    "height": measure_json(&h),
                }))
            }
        },
        Cmd::Places { sub } => match sub {
            PlacesCmd::Eval { ratfunc, place } => {
                let phi = parse_or_usage(ratfunc)?.to_ratfunc()?;
                let (kind, arg) = place
                    .split_once(':')
                    .ok_or_else(|| Error::domain("place must be closed:<poly>, prime:<p>, or circle:<t>"))?;
                let w = match kind {
                    "closed" => {
                        let (fx, _) = parse_or_usage(arg)?.to_int_poly()?;
                        Place::closed_point(&fx)?
                    }
                    "prime" => Place::prime(
                        arg.parse()
                            .map_err(|_| Error::domain(format!("invalid prime '{arg}'")))?,
                    )?,
                    "circle" => Place::circle(
                        arg.parse()
                            .map_err(|_| Error::domain(format!("invalid circle parameter '{arg}'")))?,
                    )?,
                    other => {
                        return Err(Error::domain(format!(
                            "unknown place family '{other}' (closed, prime, circle)"
                        )))
                    }
                };
                let v = abs_value_log(&phi, &w)?;
                emit(json!({ "element": phi.render("T"), "place": place, "log_abs": v }))
            }
        },
        Cmd::ProductFormula { ratfunc } => {
            let phi = parse_or_usage(ratfunc)?.to_ratfunc()?;
            let cfg = match s.tol {
                Some(t) => TorusQuadratureConfig::with_tol(t),
                None => TorusQuadratureConfig::with_tol(1e-8),
            };
            let d = product_formula_defect(&phi, &cfg)?;
            emit(json!({ "element": phi.render("T"), "defect": measure_json(&d) }))
        }
        Cmd::Kronecker { poly } => {
            let p = parse_or_usage(poly)?;
            let vars = p.variables();
            let verdict = if vars.contains(&'x') && vars.contains(&'T') {
                bivariate_torsion_test(&p.to_bipoly()?, &s.quad_cfg(2))?
            } else {
                let (f, _) = p.to_int_poly()?;
                is_cyclotomic_product(&f)?
            };
            emit(serde_json::to_value(&verdict).expect("verdict serializes"))
        }
        Cmd::Normalize { phi, psi } => {
            let a = AlgebraicQT::new(&parse_or_usage(phi)?.to_bipoly()?)?;
            let b = AlgebraicQT::new(&parse_or_usage(psi)?.to_bipoly()?)?;
            let data = normalization_data(&a, &b)?;
            let ok = finite_place_normalization_check(&data)?;
            emit(json!({
                "f_d": data.f_d.render("T"),
                "g_e": data.g_e.render("T"),
                "d": data.d,
                "e": data.e,
                "c": data.c.to_string(),
                "correction": data.correction.render("T"),
                "finite_places_normalized": ok,
            }))
        }
        Cmd::Key2 { spec } => {
            let (phi, psi) = match spec.as_slice() {
                [pair] => pair
                    .split_once(',')
                    .map(|(a, b)| (a.to_string(), b.to_string()))
                    .ok_or_else(|| Error::domain("key2 expects a pair: \"phi,psi\" or two arguments"))?,
                [a, b] => (a.clone(), b.clone()),
                _ => unreachable!("clap enforces 1..=2 args"),
            };
            let a = parse_element(&phi)?;
            let b = parse_element(&psi)?;
            let bivariate = matches!(&a, ElementQT::Algebraic(x) if x.degree() > 1)
                || matches!(&b, ElementQT::Algebraic(x) if x.degree() > 1);
            let cfg = s.quad_cfg(if bivariate { 2 } else { 1 });
            let d = key2_defect(&a, &b, &cfg)?;
            emit(json!({ "defect": measure_json(&d) }))
        }
        Cmd::Kernel { element } => {
            let e = parse_element(element)?;
            let c = kernel_classify(&e, &s.quad_cfg(2))?;
            emit(serde_json::to_value(&c).expect("classification serializes"))
        }
        Cmd::DobrowolskiScan {
            deg_max,
            coeff_bound,
            c,
            count,
        } => {
            let mut cfg = s.harness();
            if let Some(c) = c {
                cfg.dobrowolski_c = *c;
            }
            let spec = match count {
                Some(count) => CorpusSpec::SeededRandom {
                    count: *count,
                    deg_max: *deg_max,
                    coeff_bound: *coeff_bound,
                },
                None => CorpusSpec::Exhaustive {
                    deg_max: *deg_max,
                    coeff_bound: *coeff_bound,
                },
            };
            let rows = scan(&spec, &cfg)?;
            let violations = rows.iter().filter(|r| r.violation).count();
            let errors = rows.iter().filter(|r| r.error.is_some()).count();
            let mut out = std::io::stdout().lock();
            write_rows(&rows, cfg.format, &mut out)?;
            out.flush()
                .map_err(|e| Error::domain(format!("write failed: {e}")))?;
            eprintln!(
                "scanned: {} rows, {} violations, {} row errors",
                rows.len(),
                violations,
                errors
            );
            Ok(())
        }
        Cmd::Search {
            deg_max,
            coeff_bound,
            top_k,
        } => {
            let cfg = s.harness();
            let report = search_small_mahler(*deg_max, *coeff_bound, *top_k, &cfg)?;
            let mut out = std::io::stdout().lock();
            write_rows(&report.rows, cfg.format, &mut out)?;
            out.flush()
                .map_err(|e| Error::domain(format!("write failed: {e}")))?;
            eprintln!(
                "coverage: degrees 1..={} of 1..={}, {} of {} candidates{}",
                report.covered_degree_max,
                report.requested_degree_max,
                report.examined,
                report.total,
                if report.complete { "" } else { " (partial: budget reached)" }
            );
            Ok(())
        }
    }
}
