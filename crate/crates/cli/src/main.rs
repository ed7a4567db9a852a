use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cyclide::acceptance::run_all;
use cyclide::canonical::{canonicalize, canonicalize_quartic};
use cyclide::classify::{classify, j0_cubic, j0_quartic, willmore_energy, J0Value};
use cyclide::canonical::canonicalize_cubic;
use cyclide::genkit::{generate_cubic, generate_quartic, rng, sample_surface, QuarticSeed};
use cyclide::io::{coefficients_from_pairs, coefficients_from_str};
use cyclide::moebius::{calibrate_convention, torus_radii, torus_radii_scaled, Variant};
use cyclide::recognize::{recognize, recognize_quartic_cases, recognize_quartic_oracle, VerdictKind};
use cyclide::{DarbouxCoefficients, Degree, Error, Mode, Rational, Scalar, TolerancePolicy};
use rayon::prelude::*;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "cyclide", version, about = "Recognize and classify Dupin cyclides given as Darboux cyclides")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    /// exact rational arithmetic (default)
    #[arg(long, global = true, conflicts_with = "float")]
    exact: bool,
    /// floating point with relative tolerance (see --tol, CYCLIDE_TOL)
    #[arg(long, global = true)]
    float: bool,
    /// relative tolerance for float mode; implies --float
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// RNG seed for generate and for sampling in to-torus
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Verb {
    /// Dupin verdict with the deciding case and residuals
    Recognize { input: String },
    /// real-point class and J0
    Classify { input: String },
    /// spectral data and canonical parameters
    Canonicalize { input: String },
    /// the Mobius invariant J0 and the Willmore energy
    J0 { input: String },
    /// torus radii and a calibrated inversion onto the torus
    ToTorus {
        input: String,
        #[arg(long, value_enum, default_value_t = VariantArg::Auto)]
        variant: VariantArg,
    },
    /// random Dupin cyclides as JSON lines
    Generate {
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, value_enum, default_value_t = Kind::Quartic)]
        kind: Kind,
    },
    /// run the acceptance suite
    Selftest,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Quartic,
    Cubic,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum VariantArg {
    Auto,
    Mobt,
    Mobt2a,
    Mobt2,
}

const EXIT_INPUT: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

/// Result of one record: the JSON line and its exit status.
struct Reply {
    value: Value,
    code: u8,
}

impl Reply {
    fn ok(value: Value) -> Self {
        Reply { value, code: 0 }
    }

    fn from_error(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) | Error::ZeroPolynomial => EXIT_INPUT,
            Error::Internal(_) => EXIT_INTERNAL,
            _ => 0,
        };
        Reply { value: json!({"error": e.to_string()}), code }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pol = match (cli.float || cli.tol.is_some(), cli.tol) {
        (false, _) => TolerancePolicy::exact(),
        (true, Some(t)) => TolerancePolicy::float(t),
        (true, None) => TolerancePolicy::float_from_env(),
    };
    let (input, task): (&str, Task) = match &cli.verb {
        Verb::Selftest => return selftest(),
        Verb::Generate { count, kind } => return generate(*count, *kind, cli.seed),
        Verb::Recognize { input } => (input, Task::Recognize),
        Verb::Classify { input } => (input, Task::Classify),
        Verb::Canonicalize { input } => (input, Task::Canonicalize),
        Verb::J0 { input } => (input, Task::J0),
        Verb::ToTorus { input, variant } => (input, Task::ToTorus(*variant)),
    };
    let records = match read_records(input) {
        Ok(r) => r,
        Err(msg) => {
            eprintln!("cyclide: {msg}");
            return ExitCode::from(EXIT_INPUT);
        }
    };
    let batch = records.len() > 1;
    let replies: Vec<Reply> = records
        .par_iter()
        .map(|(line, rec)| {
            let mut reply = match rec {
                Ok(c) => run_task(task, c, &pol, cli.seed),
                Err(msg) => Reply { value: json!({"error": msg}), code: EXIT_INPUT },
            };
            if batch || reply.code == EXIT_INPUT {
                if let Value::Object(m) = &mut reply.value {
                    m.insert("line".into(), json!(line));
                }
            }
            reply
        })
        .collect();
    let mut code = 0;
    for r in &replies {
        println!("{}", r.value);
        if r.code == EXIT_INPUT {
            eprintln!("cyclide: {}", r.value["error"].as_str().unwrap_or("input error"));
        }
        code = code.max(r.code);
    }
    ExitCode::from(code)
}

type Record = (usize, Result<DarbouxCoefficients<Rational>, String>);

/// Inline JSON, `-` for stdin, or a file of JSON lines or CSV rows.
fn read_records(input: &str) -> Result<Vec<Record>, String> {
    if input.trim_start().starts_with('{') {
        return Ok(vec![(1, coefficients_from_str(input).map_err(|e| e.to_string()))]);
    }
    let (text, csv) = if input == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| format!("reading stdin: {e}"))?;
        let csv = s.lines().find(|l| !l.trim().is_empty()).is_some_and(|l| !l.trim_start().starts_with('{'));
        (s, csv)
    } else {
        let s = std::fs::read_to_string(input).map_err(|e| format!("{input}: {e}"))?;
        (s, input.ends_with(".csv"))
    };
    if csv {
        read_csv(&text)
    } else {
        Ok(text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(i, l)| (i + 1, coefficients_from_str(l).map_err(|e| e.to_string())))
            .collect())
    }
}

fn read_csv(text: &str) -> Result<Vec<Record>, String> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let headers = rdr.headers().map_err(|e| format!("csv header: {e}"))?.clone();
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| format!("csv: {e}"))?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        let c = coefficients_from_pairs(headers.iter().zip(rec.iter())).map_err(|e| e.to_string());
        out.push((line, c));
    }
    Ok(out)
}

#[derive(Clone, Copy)]
enum Task {
    Recognize,
    Classify,
    Canonicalize,
    J0,
    ToTorus(VariantArg),
}

fn run_task(task: Task, c: &DarbouxCoefficients<Rational>, pol: &TolerancePolicy, seed: u64) -> Reply {
    let res = if pol.mode == Mode::Exact { dispatch(task, c, pol, seed) } else { dispatch(task, &c.to_f64(), pol, seed) };
    match res {
        Ok(v) => Reply::ok(v),
        Err(e) => Reply::from_error(e),
    }
}

fn dispatch<T: Scalar>(task: Task, c: &DarbouxCoefficients<T>, pol: &TolerancePolicy, seed: u64) -> Result<Value, Error> {
    match task {
        Task::Recognize => recognize_checked(c, pol),
        Task::Classify => Ok(classify(c, pol)?.to_json()),
        Task::Canonicalize => Ok(canonicalize(c, pol)?.to_json(pol)),
        Task::J0 => j0_report(c, pol),
        Task::ToTorus(v) => to_torus(c, pol, v, seed),
    }
}

/// In exact mode the quartic case analysis is cross-checked against the
/// twelve-generator oracle; a disagreement is an internal error.
fn recognize_checked<T: Scalar>(c: &DarbouxCoefficients<T>, pol: &TolerancePolicy) -> Result<Value, Error> {
    let v = recognize(c, pol)?;
    if T::EXACT && c.degree() == Degree::Quartic {
        let cases = recognize_quartic_cases(c, pol)?.kind.is_dupin();
        let (oracle, _) = recognize_quartic_oracle(c, pol)?;
        if cases != oracle {
            return Err(Error::Internal(format!("case analysis says {cases}, generator oracle says {oracle}")));
        }
    }
    Ok(v.to_json())
}

fn j0_report<T: Scalar>(c: &DarbouxCoefficients<T>, pol: &TolerancePolicy) -> Result<Value, Error> {
    let j: J0Value<T> = match recognize(c, pol)?.kind {
        VerdictKind::DupinQuartic => j0_quartic(c, pol)?,
        VerdictKind::DupinCubic => j0_cubic(c, &canonicalize_cubic(c, pol)?, pol)?,
        VerdictKind::DupinQuadric => return Err(Error::NotApplicable("J0 is defined for quartic and cubic cyclides".into())),
        VerdictKind::NotDupin => return Err(Error::NotDupin),
    };
    Ok(json!({"J0": j.to_json(), "willmore": willmore_energy(&j)}))
}

fn to_torus<T: Scalar>(c: &DarbouxCoefficients<T>, pol: &TolerancePolicy, variant: VariantArg, seed: u64) -> Result<Value, Error> {
    let (_, q) = canonicalize_quartic(c, pol)?;
    let mut out = json!({"canonical": q.to_json()});
    let t = torus_radii_scaled(&q)?;
    out["scaled"] = json!({"r_sq": t.r_sq.to_json(), "R_sq": t.big_r_sq.to_json(), "J0": t.j0().to_json()});
    let qf = q.to_f64();
    out["torus"] = match torus_radii(&qf) {
        Ok(t) => t.to_json(),
        Err(e) => json!({"error": e.to_string()}),
    };
    let variants: Vec<Variant> = match variant {
        VariantArg::Auto if q.gamma2.is_zero() => {
            out["map"] = Value::Null;
            out["note"] = json!("already a torus");
            return Ok(out);
        }
        VariantArg::Auto => vec![Variant::Mobt, Variant::Mobt2a],
        VariantArg::Mobt => vec![Variant::Mobt],
        VariantArg::Mobt2a => vec![Variant::Mobt2a],
        VariantArg::Mobt2 => vec![Variant::Mobt2],
    };
    let radius = 2.0 * qf.alpha2.abs().max(qf.gamma2.abs()).max(qf.delta2.abs()).sqrt().max(1e-3);
    let surface = QuarticSeed { s: qf.alpha2, t: qf.gamma2, u: qf.delta2, m: qf.agd.unwrap_or(0.0) }.coefficients();
    let samples = match sample_surface(&surface, 40, radius, &mut rng(seed)) {
        Ok(s) => s,
        Err(e) => {
            out["map"] = json!({"error": e.to_string()});
            return Ok(out);
        }
    };
    let mut last = None;
    for v in variants {
        match calibrate_convention(&qf, v, &samples) {
            Ok(cal) => {
                out["map"] = cal.to_json();
                return Ok(out);
            }
            Err(e) => last = Some(e),
        }
    }
    out["map"] = json!({"error": last.map(|e| e.to_string())});
    Ok(out)
}

fn generate(count: usize, kind: Kind, seed: u64) -> ExitCode {
    let mut g = rng(seed);
    for _ in 0..count {
        let gen = match kind {
            Kind::Quartic => generate_quartic(&mut g),
            Kind::Cubic => generate_cubic(&mut g),
        };
        println!("{}", gen.to_json(seed));
    }
    ExitCode::SUCCESS
}

fn selftest() -> ExitCode {
    let outcomes = run_all();
    for o in &outcomes {
        println!("{}", o.line());
    }
    if outcomes.iter().all(|o| o.passed) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
