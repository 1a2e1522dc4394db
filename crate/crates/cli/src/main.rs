use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use newton_bif_core::report::{self, Header};
use newton_bif_core::{
    euler, parse_polynomial, Analysis, Error, Mode, Options, Outcome, Rational, Settings, SparsePoly, Tolerances, Value,
};
use serde::Serialize;

mod text;

#[derive(Parser)]
#[command(name = "newton-bif", version, about = "Bifurcation values of polynomial maps from Newton polyhedra at infinity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args, Clone)]
struct Global {
    /// Polynomial text such as "x1 + x1^2*x2".
    #[arg(short, long, global = true, allow_hyphen_values = true)]
    poly: Option<String>,
    /// File with polynomial text or a JSON term list `[[num, den, [e1, ...]], ...]`.
    #[arg(short, long, global = true)]
    file: Option<PathBuf>,
    /// Number of variables; inferred from the highest variable index when omitted.
    #[arg(short, long, global = true)]
    nvars: Option<usize>,
    #[arg(long, global = true, default_value_t = Tolerances::default().root)]
    root_tol: f64,
    #[arg(long, global = true, default_value_t = Tolerances::default().residual)]
    residual_tol: f64,
    #[arg(long, global = true, default_value_t = Tolerances::default().cluster)]
    cluster_tol: f64,
    #[arg(long, global = true, env = "NEWTON_BIF_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Keep evaluating later theorems after one applies.
    #[arg(long, global = true)]
    full_trace: bool,
    /// Treat f as non-degenerate at infinity without checking.
    #[arg(long, global = true)]
    skip_nondegeneracy_check: bool,
    /// Comma-separated rational values used as f(Sing f) instead of computing it.
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    assume_critical_values: Option<Vec<String>>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Full report: polyhedron, faces, non-degeneracy, K_f, certificates, Euler jumps.
    Analyze,
    /// Newton polyhedron at infinity, atypical and bad faces.
    Faces,
    /// Dual fan: the cone of every face.
    Fan,
    /// Candidate set K_f with origins.
    Kf,
    /// Certificate for one value of K_f.
    Certify {
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Euler characteristic of the fiber over c (two variables).
    Chi {
        #[arg(allow_hyphen_values = true)]
        c: String,
    },
    /// Jump of the fiber Euler characteristic at a value of K_f (two variables).
    Jump {
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
}

fn infer_nvars(text: &str) -> usize {
    let b = text.as_bytes();
    let mut n = 0;
    let mut i = 0;
    while i < b.len() {
        if b[i] == b'x' {
            let start = i + 1;
            let mut j = start;
            while j < b.len() && b[j].is_ascii_digit() {
                j += 1;
            }
            if let Ok(k) = text[start..j].parse::<usize>() {
                n = n.max(k);
            }
            i = j;
        } else {
            i += 1;
        }
    }
    n.max(1)
}

fn read_polynomial(g: &Global) -> Result<SparsePoly> {
    let text = match (&g.poly, &g.file) {
        (Some(p), None) => p.clone(),
        (None, Some(path)) => std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?,
        (Some(_), Some(_)) => bail!("give either --poly or --file, not both"),
        (None, None) => bail!("no polynomial given; use --poly or --file"),
    };
    let trimmed = text.trim();
    if trimmed.starts_with('[') {
        let n = match g.nvars {
            Some(n) => n,
            None => {
                let terms: Vec<(serde_json::Value, serde_json::Value, Vec<i64>)> =
                    serde_json::from_str(trimmed).context("JSON input must be a list of [num, den, [e1, ...]]")?;
                terms.first().map_or(1, |t| t.2.len())
            }
        };
        return Ok(SparsePoly::from_json_str(trimmed, n, Mode::Affine)?);
    }
    let n = g.nvars.unwrap_or_else(|| infer_nvars(trimmed));
    Ok(parse_polynomial(trimmed, n, Mode::Affine)?)
}

/// An exact rational from `p`, `p/q` or a decimal literal.
fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: num_bigint::BigInt = p.trim().parse().with_context(|| format!("bad numerator in {s:?}"))?;
        let q: num_bigint::BigInt = q.trim().parse().with_context(|| format!("bad denominator in {s:?}"))?;
        if q == 0.into() {
            bail!("zero denominator in {s:?}");
        }
        return Ok(Rational::new(p, q));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() || !int.bytes().chain(frac.bytes()).all(|c| c.is_ascii_digit()) {
        bail!("not a rational number: {s:?}");
    }
    let digits: num_bigint::BigInt = format!("{int}{frac}").parse()?;
    let den = num_bigint::BigInt::from(10u32).pow(frac.len() as u32);
    let r = Rational::new(digits, den);
    Ok(if neg { -r } else { r })
}

fn settings(g: &Global) -> Result<Settings> {
    for (name, t) in [("root", g.root_tol), ("residual", g.residual_tol), ("cluster", g.cluster_tol)] {
        if !(t > 0.0 && t.is_finite()) {
            bail!("{name} tolerance must be positive");
        }
    }
    Ok(Settings { tolerances: Tolerances { root: g.root_tol, residual: g.residual_tol, cluster: g.cluster_tol }, seed: g.seed })
}

fn options(g: &Global) -> Result<Options> {
    let assumed = match &g.assume_critical_values {
        None => None,
        Some(list) => Some(list.iter().filter(|s| !s.trim().is_empty()).map(|s| parse_rational(s).map(Value::rational)).collect::<Result<Vec<_>>>()?),
    };
    Ok(Options {
        settings: settings(g)?,
        skip_nondegeneracy_check: g.skip_nondegeneracy_check,
        assumed_critical_values: assumed,
        full_trace: g.full_trace,
    })
}

fn emit<T: Serialize>(format: Format, value: &T, render: impl FnOnce(&T) -> String) -> Result<()> {
    let out = match format {
        Format::Json => serde_json::to_string_pretty(value)? + "\n",
        Format::Text => render(value),
    };
    match std::io::stdout().lock().write_all(out.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

#[derive(Serialize)]
struct ChiReport {
    #[serde(flatten)]
    header: Header,
    fiber: euler::FiberTopology,
}

#[derive(Serialize)]
struct JumpOutput {
    #[serde(flatten)]
    header: Header,
    jump: euler::JumpReport,
}

#[derive(Serialize)]
struct CertifyReport {
    #[serde(flatten)]
    header: Header,
    nondegeneracy: Option<newton_bif_core::NondegeneracyReport>,
    inclusion: newton_bif_core::certify::InclusionReport,
    certificate: newton_bif_core::Certificate,
}

fn degenerate(a: &Analysis) -> bool {
    a.nondegeneracy_outcome() == Outcome::Fail
}

fn run(cli: &Cli) -> Result<u8> {
    let g = &cli.global;
    let f = read_polynomial(g)?;
    let opts = options(g)?;
    let s = opts.settings;
    match &cli.command {
        Command::Faces => emit(g.format, &report::faces_report(&f, &s)?, text::faces)?,
        Command::Fan => emit(g.format, &report::fan_report(&f, &s)?, text::fan)?,
        Command::Chi { c } => {
            let c = Value::rational(parse_rational(c)?);
            let fiber = euler::chi_affine_curve_fiber(&f, &c)?;
            emit(g.format, &ChiReport { header: report::header(&f, &s), fiber }, |r| text::chi(&r.header, &r.fiber))?;
        }
        Command::Analyze => {
            let a = Analysis::new(&f, opts)?;
            if degenerate(&a) {
                let r = report::kf_report(&a);
                emit(g.format, &r, text::kf)?;
                return Ok(2);
            }
            emit(g.format, &report::full_report(&a)?, text::full)?;
        }
        Command::Kf => {
            let a = Analysis::new(&f, opts)?;
            emit(g.format, &report::kf_report(&a), text::kf)?;
            if degenerate(&a) {
                return Ok(2);
            }
        }
        Command::Certify { b } => {
            let a = Analysis::new(&f, opts)?;
            if degenerate(&a) {
                emit(g.format, &report::kf_report(&a), text::kf)?;
                return Ok(2);
            }
            let cand = a.candidate(&Value::rational(parse_rational(b)?))?;
            let r = CertifyReport {
                header: report::header(&f, &s),
                nondegeneracy: a.nondegeneracy.clone(),
                inclusion: a.inclusion(),
                certificate: a.certify(&cand),
            };
            emit(g.format, &r, |r| text::certificate_report(&r.header, &r.inclusion, &r.certificate))?;
        }
        Command::Jump { b } => {
            let a = Analysis::new(&f, opts)?;
            let jump = euler::euler_jump(&f, &Value::rational(parse_rational(b)?), &a.kf.values(), s.seed)?;
            emit(g.format, &JumpOutput { header: report::header(&f, &s), jump }, |r| text::jump(&r.header, &r.jump))?;
        }
    }
    Ok(0)
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::Guard(_) | Error::Overflow | Error::NotFullDimensional { .. }) => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("-1/4").unwrap(), Rational::new((-1).into(), 4.into()));
        assert_eq!(parse_rational("-0.25").unwrap(), Rational::new((-1).into(), 4.into()));
        assert_eq!(parse_rational("3").unwrap(), Rational::from_integer(3.into()));
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn variable_count() {
        assert_eq!(infer_nvars("x1 + x1^2*x3"), 3);
        assert_eq!(infer_nvars("5"), 1);
    }
}
