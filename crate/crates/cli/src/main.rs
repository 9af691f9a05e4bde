//! Command-line front end for riordan-core. Every command is a thin adapter
//! over a library call: generating functions are parsed and evaluated
//! exactly, windows and reports are emitted as pretty text, JSON or CSV, and
//! exit codes separate verification failures (1) from usage errors (2) and
//! evaluation errors (3).

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num::ToPrimitive;
use riordan_core::expr::ExprError;
use riordan_core::*;
use serde_json::json;

const EXIT_VERIFICATION: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_EVAL: u8 = 3;
const DEFAULT_MINOR_CAP: u128 = 2_000_000;

#[derive(Parser)]
#[command(
    name = "riordan",
    version,
    about = "Exact windows, characteristic sequences and positivity checks \
             for Riordan-type arrays"
)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    format: Format,
    /// Write output to a file instead of stdout
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Pretty format only: append values rounded to this many decimal places
    #[arg(long, global = true, value_name = "PLACES")]
    decimal: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Pretty,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SpecKind {
    Almost,
    Quasi,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build an array window: (d | g, f) with --d, plain (g, f) without
    Build(BuildArgs),
    /// Build a quasi array window with columns g, f, t f, t^2 f, ...
    BuildQuasi(BuildQuasiArgs),
    /// Group product of two specs, optionally emitting the product window
    Mult(MultArgs),
    /// Characteristic A/Z/W series of a spec
    Azw(AzwArgs),
    /// Production matrix from a spec or from tridiagonal a/z/w data
    Production(ProductionArgs),
    /// Solve M J = M-with-first-row-deleted for J from a window file
    ExtractProduction(ExtractArgs),
    /// Rebuild (d | g, f) from tridiagonal production data
    Recover(RecoverArgs),
    /// Enumerate minors of a window file up to a given order
    TpCheck(TpCheckArgs),
    /// Entry scan plus contiguous-minor scan for a tridiagonal-with-border window
    JacobiCheck(JacobiArgs),
    /// Banded Toeplitz determinant T_n
    DetT(DetTArgs),
    /// Leading principal minor of the tridiagonal production matrix
    DetJ(DetJArgs),
    /// Closed-form positivity verdict for tridiagonal production data
    TridiagonalTp(TridiagonalTpArgs),
    /// Membership test or sampled grid for the worked parameter regions
    Region(RegionArgs),
    /// Polya-frequency checks for polynomials and truncated series
    PfCheck(PfArgs),
    /// Replay the frozen verification corpus
    VerifyCorpus(CorpusArgs),
}

#[derive(Args)]
struct BuildArgs {
    /// Column-0 generating function (almost arrays only)
    #[arg(long)]
    d: Option<String>,
    #[arg(long)]
    g: String,
    #[arg(long)]
    f: String,
    #[arg(long)]
    rows: usize,
    #[arg(long)]
    cols: usize,
    /// Series truncation order (default: max(rows, cols))
    #[arg(long)]
    order: Option<usize>,
}

#[derive(Args)]
struct BuildQuasiArgs {
    #[arg(long)]
    g: String,
    #[arg(long)]
    f: String,
    #[arg(long)]
    rows: usize,
    #[arg(long)]
    cols: usize,
    #[arg(long)]
    order: Option<usize>,
}

#[derive(Args)]
struct MultArgs {
    #[arg(long, value_enum, default_value_t = SpecKind::Almost)]
    kind: SpecKind,
    /// Left column-0 function (almost only)
    #[arg(long)]
    d1: Option<String>,
    #[arg(long)]
    g1: String,
    #[arg(long)]
    f1: String,
    /// Right column-0 function (almost only)
    #[arg(long)]
    d2: Option<String>,
    #[arg(long)]
    g2: String,
    #[arg(long)]
    f2: String,
    #[arg(long, default_value_t = 8)]
    order: usize,
    /// Emit the product window of this many rows instead of its series
    #[arg(long, requires = "cols")]
    rows: Option<usize>,
    #[arg(long, requires = "rows")]
    cols: Option<usize>,
}

#[derive(Args)]
struct AzwArgs {
    #[arg(long, value_enum, default_value_t = SpecKind::Almost)]
    kind: SpecKind,
    /// Column-0 function (almost only)
    #[arg(long)]
    d: Option<String>,
    #[arg(long)]
    g: String,
    #[arg(long)]
    f: String,
    /// Order of the emitted A/Z/W series
    #[arg(long, default_value_t = 6)]
    order: usize,
}

#[derive(Args)]
struct ProductionArgs {
    #[arg(long)]
    d: Option<String>,
    #[arg(long)]
    g: Option<String>,
    #[arg(long)]
    f: Option<String>,
    /// A-series coefficients "a0,a1,a2"
    #[arg(long)]
    a: Option<String>,
    /// Z-series coefficients "z0,z1,z2"
    #[arg(long)]
    z: Option<String>,
    /// W-series coefficients "w0,w1"
    #[arg(long)]
    w: Option<String>,
    /// Production window size
    #[arg(long)]
    n: usize,
}

#[derive(Args)]
struct ExtractArgs {
    /// Window file, .json or .csv
    #[arg(long)]
    matrix: PathBuf,
}

#[derive(Args)]
struct RecoverArgs {
    /// A-series coefficients "a0,a1,a2"
    #[arg(long)]
    a: String,
    /// Z-series coefficients "z0,z1,z2"
    #[arg(long)]
    z: String,
    /// W-series coefficients "w0,w1"
    #[arg(long)]
    w: String,
    /// Constant term of the rebuilt d
    #[arg(long, default_value = "1")]
    d0: String,
    #[arg(long, default_value_t = 8)]
    order: usize,
}

#[derive(Args)]
struct TpCheckArgs {
    /// Window file, .json or .csv
    #[arg(long)]
    matrix: PathBuf,
    #[arg(long, default_value_t = 3)]
    max_order: usize,
    /// Minor enumeration strategy: all or contiguous-rows
    #[arg(long, default_value = "all", value_parser = parse_strategy)]
    strategy: Strategy,
}

#[derive(Args)]
struct JacobiArgs {
    /// Window file, .json or .csv
    #[arg(long)]
    matrix: PathBuf,
}

#[derive(Args)]
struct DetTArgs {
    #[arg(long)]
    a0: String,
    #[arg(long)]
    a1: String,
    #[arg(long)]
    a2: String,
    #[arg(long, required_unless_present = "find_negative", conflicts_with = "find_negative")]
    n: Option<usize>,
    /// Scan for the first n with T_n < 0 instead of evaluating one n
    #[arg(long)]
    find_negative: bool,
    /// Scan limit (default: derived from the oscillation rate)
    #[arg(long, requires = "find_negative")]
    limit: Option<usize>,
    /// recurrence or closed
    #[arg(long, default_value = "recurrence", value_parser = parse_method)]
    method: DetMethod,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum DetMethod {
    Recurrence,
    Closed,
}

#[derive(Args)]
struct DetJArgs {
    #[arg(long)]
    a: String,
    #[arg(long)]
    z: String,
    #[arg(long)]
    w: String,
    #[arg(long)]
    n: usize,
}

#[derive(Args)]
struct TridiagonalTpArgs {
    #[arg(long)]
    a: String,
    #[arg(long)]
    z: String,
    #[arg(long)]
    w: String,
}

#[derive(Args)]
struct RegionArgs {
    /// azw1, azw2, azw3 or azw4
    #[arg(long, value_parser = parse_family)]
    family: RegionFamily,
    #[arg(long, conflicts_with = "grid")]
    alpha: Option<String>,
    #[arg(long, conflicts_with = "grid")]
    beta: Option<String>,
    /// Sample a rectangle instead of testing one point
    #[arg(long)]
    grid: bool,
    #[arg(long, requires = "grid")]
    alpha_min: Option<String>,
    #[arg(long, requires = "grid")]
    alpha_max: Option<String>,
    #[arg(long, requires = "grid")]
    beta_min: Option<String>,
    #[arg(long, requires = "grid")]
    beta_max: Option<String>,
    #[arg(long, requires = "grid")]
    step: Option<String>,
}

#[derive(Args)]
struct PfArgs {
    /// Generating-function expression for the coefficient sequence
    #[arg(long)]
    series: String,
    #[arg(long, default_value_t = 8)]
    order: usize,
    /// Screen a Toeplitz window of this many rows instead of the
    /// degree-2 polynomial criterion
    #[arg(long)]
    window: Option<usize>,
    #[arg(long, default_value_t = 3)]
    max_order: usize,
}

#[derive(Args)]
struct CorpusArgs {
    /// Run every entry
    #[arg(long, conflicts_with = "id")]
    all: bool,
    /// Run one entry by id (repeatable)
    #[arg(long)]
    id: Vec<String>,
}

struct Outcome {
    text: String,
    code: u8,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, code: 0 }
    }
}

struct Failure {
    kind: &'static str,
    message: String,
    offset: Option<usize>,
    code: u8,
}

impl Failure {
    fn usage(message: String) -> Self {
        Failure { kind: "usage", message, offset: None, code: EXIT_USAGE }
    }

    fn eval(message: String) -> Self {
        Failure { kind: "evaluation", message, offset: None, code: EXIT_EVAL }
    }
}

fn parse_strategy(s: &str) -> Result<Strategy, String> {
    s.parse()
}

fn parse_family(s: &str) -> Result<RegionFamily, String> {
    s.parse()
}

fn parse_method(s: &str) -> Result<DetMethod, String> {
    match s {
        "recurrence" => Ok(DetMethod::Recurrence),
        "closed" => Ok(DetMethod::Closed),
        other => Err(format!("unknown method {other:?}, expected \"recurrence\" or \"closed\"")),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    let out = cli.out.clone();
    match run(cli) {
        Ok(outcome) => {
            match &out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, format!("{}\n", outcome.text)) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(EXIT_EVAL);
                    }
                }
                None => println!("{}", outcome.text),
            }
            ExitCode::from(outcome.code)
        }
        Err(f) => {
            if format == Format::Json {
                let mut err = json!({ "kind": f.kind, "message": f.message });
                if let Some(offset) = f.offset {
                    err["offset"] = json!(offset);
                }
                println!("{}", json!({ "error": err }));
            } else {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<Outcome, Failure> {
    let fmt = cli.format;
    let dec = cli.decimal;
    match cli.cmd {
        Cmd::Build(a) => cmd_build(a, fmt, dec),
        Cmd::BuildQuasi(a) => cmd_build_quasi(a, fmt, dec),
        Cmd::Mult(a) => cmd_mult(a, fmt, dec),
        Cmd::Azw(a) => cmd_azw(a, fmt, dec),
        Cmd::Production(a) => cmd_production(a, fmt, dec),
        Cmd::ExtractProduction(a) => cmd_extract(a, fmt, dec),
        Cmd::Recover(a) => cmd_recover(a, fmt, dec),
        Cmd::TpCheck(a) => cmd_tp_check(a, fmt),
        Cmd::JacobiCheck(a) => cmd_jacobi(a, fmt),
        Cmd::DetT(a) => cmd_det_t(a, fmt, dec),
        Cmd::DetJ(a) => cmd_det_j(a, fmt, dec),
        Cmd::TridiagonalTp(a) => cmd_tridiagonal_tp(a, fmt),
        Cmd::Region(a) => cmd_region(a, fmt),
        Cmd::PfCheck(a) => cmd_pf(a, fmt),
        Cmd::VerifyCorpus(a) => cmd_corpus(a, fmt),
    }
}

// input helpers

fn gf(label: &str, text: &str, order: usize) -> Result<Series, Failure> {
    eval_gf(text, order).map_err(|e| match e {
        ExprError::Syntax { offset, message } => Failure {
            kind: "usage",
            message: format!("--{label}: syntax error at byte {offset}: {message}"),
            offset: Some(offset),
            code: EXIT_USAGE,
        },
        other => Failure::eval(format!("--{label}: {other}")),
    })
}

fn rational_arg(label: &str, text: &str) -> Result<Rational, Failure> {
    parse_rational(text).map_err(|e| Failure::usage(format!("--{label}: {e}")))
}

fn rational_list(label: &str, text: &str, expect: usize) -> Result<Vec<Rational>, Failure> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != expect {
        return Err(Failure::usage(format!(
            "--{label}: expected {expect} comma-separated values, got {}",
            parts.len()
        )));
    }
    parts
        .iter()
        .map(|p| parse_rational(p).map_err(|e| Failure::usage(format!("--{label}: {e}"))))
        .collect()
}

fn tridiagonal_args(a: &str, z: &str, w: &str) -> Result<TridiagonalProduction, Failure> {
    let a = rational_list("a", a, 3)?;
    let z = rational_list("z", z, 3)?;
    let w = rational_list("w", w, 2)?;
    Ok(TridiagonalProduction {
        a0: a[0].clone(),
        a1: a[1].clone(),
        a2: a[2].clone(),
        z0: z[0].clone(),
        z1: z[1].clone(),
        z2: z[2].clone(),
        w0: w[0].clone(),
        w1: w[1].clone(),
    })
}

fn load_matrix(path: &Path) -> Result<MatrixWindow, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("");
    match ext {
        "json" => serde_json::from_str(&text)
            .map_err(|e| Failure::usage(format!("{}: {e}", path.display()))),
        "csv" => MatrixWindow::from_csv(&text)
            .map_err(|e| Failure::usage(format!("{}: {e}", path.display()))),
        other => Err(Failure::usage(format!(
            "{}: unsupported extension {other:?}, expected .json or .csv",
            path.display()
        ))),
    }
}

fn array_failure(e: ArrayError) -> Failure {
    match e {
        ArrayError::InvalidSpec(_) | ArrayError::NotGroupElement(_) => {
            Failure::usage(e.to_string())
        }
        ArrayError::Series(inner) => Failure::eval(inner.to_string()),
    }
}

fn seq_failure(e: SeqError) -> Failure {
    match e {
        SeqError::InvalidSpec(_) => Failure::usage(e.to_string()),
        other => Failure::eval(other.to_string()),
    }
}

fn series_failure(e: SeriesError) -> Failure {
    Failure::eval(e.to_string())
}

fn tp_failure(e: TpError) -> Failure {
    Failure::eval(e.to_string())
}

fn minor_cap() -> Result<u128, Failure> {
    match std::env::var("RIORDAN_TP_MAX_MINORS") {
        Err(_) => Ok(DEFAULT_MINOR_CAP),
        Ok(s) => s.trim().parse::<u128>().map_err(|_| {
            Failure::usage(format!(
                "RIORDAN_TP_MAX_MINORS must be a nonnegative integer, got {s:?}"
            ))
        }),
    }
}

// output helpers

fn decimal_str(v: &Rational, places: usize) -> String {
    match v.to_f64() {
        Some(x) => format!("{x:.places$}"),
        None => "?".to_string(),
    }
}

fn matrix_out(m: &MatrixWindow, fmt: Format, dec: Option<usize>) -> Result<Outcome, Failure> {
    let text = match fmt {
        Format::Pretty => {
            let mut s = m.to_string();
            if let Some(places) = dec {
                s.push_str("\ndecimal:\n");
                let rows: Vec<String> = (0..m.rows())
                    .map(|i| {
                        let cells: Vec<String> = (0..m.cols())
                            .map(|j| decimal_str(m.get(i, j), places))
                            .collect();
                        format!("[{}]", cells.join("  "))
                    })
                    .collect();
                s.push_str(&rows.join("\n"));
            }
            s
        }
        Format::Json => serde_json::to_string_pretty(m)
            .map_err(|e| Failure::eval(e.to_string()))?,
        Format::Csv => m.to_csv().trim_end().to_string(),
    };
    Ok(Outcome::ok(text))
}

fn series_table_out(
    pairs: &[(&str, &Series)],
    fmt: Format,
    dec: Option<usize>,
) -> Result<Outcome, Failure> {
    let text = match fmt {
        Format::Pretty => {
            let mut lines = Vec::new();
            for (name, s) in pairs {
                let coeffs: Vec<String> = s.coeffs().iter().map(|c| c.to_string()).collect();
                lines.push(format!("{name}: {}", coeffs.join(", ")));
                if let Some(places) = dec {
                    let decs: Vec<String> =
                        s.coeffs().iter().map(|c| decimal_str(c, places)).collect();
                    lines.push(format!("{name} (decimal): {}", decs.join(", ")));
                }
            }
            lines.join("\n")
        }
        Format::Json => {
            let mut map = serde_json::Map::new();
            for (name, s) in pairs {
                let coeffs: Vec<String> = s.coeffs().iter().map(|c| c.to_string()).collect();
                map.insert((*name).to_string(), json!(coeffs));
            }
            serde_json::to_string_pretty(&serde_json::Value::Object(map))
                .map_err(|e| Failure::eval(e.to_string()))?
        }
        Format::Csv => {
            let mut lines = Vec::new();
            for (name, s) in pairs {
                let mut cells = vec![(*name).to_string()];
                cells.extend(s.coeffs().iter().map(|c| c.to_string()));
                lines.push(cells.join(","));
            }
            lines.join("\n")
        }
    };
    Ok(Outcome::ok(text))
}

fn scalar_out(v: &Rational, fmt: Format, dec: Option<usize>) -> Result<Outcome, Failure> {
    let text = match fmt {
        Format::Pretty => match dec {
            Some(places) => format!("{v} ({})", decimal_str(v, places)),
            None => v.to_string(),
        },
        Format::Json => json!({ "value": v.to_string() }).to_string(),
        Format::Csv => v.to_string(),
    };
    Ok(Outcome::ok(text))
}

fn report_out(r: &TpReport, fmt: Format) -> Result<Outcome, Failure> {
    let code = if r.verdict == Verdict::NotTp { EXIT_VERIFICATION } else { 0 };
    let text = match fmt {
        Format::Pretty => {
            let mut s = format!(
                "verdict: {}\nchecked_order: {}",
                verdict_str(r.verdict),
                r.checked_order
            );
            if let Some(w) = &r.witness {
                s.push_str(&format!(
                    "\nwitness: rows {:?} cols {:?} value {}",
                    w.rows, w.cols, w.value
                ));
            }
            s
        }
        Format::Json => serde_json::to_string_pretty(r)
            .map_err(|e| Failure::eval(e.to_string()))?,
        Format::Csv => {
            let (rows, cols, value) = match &r.witness {
                Some(w) => (
                    join_indices(&w.rows),
                    join_indices(&w.cols),
                    w.value.to_string(),
                ),
                None => (String::new(), String::new(), String::new()),
            };
            format!(
                "verdict,checked_order,witness_rows,witness_cols,witness_value\n{},{},{},{},{}",
                verdict_str(r.verdict),
                r.checked_order,
                rows,
                cols,
                value
            )
        }
    };
    Ok(Outcome { text, code })
}

fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::WindowTp => "WindowTP",
        Verdict::NotTp => "NotTP",
    }
}

fn tri_verdict_str(v: TriVerdict) -> &'static str {
    match v {
        TriVerdict::Tp => "TP",
        TriVerdict::NotTp => "NotTP",
        TriVerdict::Inapplicable => "Inapplicable",
    }
}

fn join_indices(idx: &[usize]) -> String {
    idx.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ")
}

fn bool_out(value: bool, fmt: Format) -> Result<Outcome, Failure> {
    let text = match fmt {
        Format::Json => json!({ "value": value }).to_string(),
        _ => value.to_string(),
    };
    Ok(Outcome { text, code: if value { 0 } else { EXIT_VERIFICATION } })
}

// commands

fn cmd_build(a: BuildArgs, fmt: Format, dec: Option<usize>) -> Result<Outcome, Failure> {
    let order = a.order.unwrap_or(a.rows.max(a.cols));
    let g = gf("g", &a.g, order)?;
    let f = gf("f", &a.f, order)?;
    let w = match &a.d {
        Some(d_text) => {
            let d = gf("d", d_text, order)?;
            AlmostRiordanSpec::new(d, g, f)
                .map_err(array_failure)?
                .window(a.rows, a.cols)
                .map_err(series_failure)?
        }
        None => RiordanSpec::new(g, f)
            .map_err(array_failure)?
            .window(a.rows, a.cols)
            .map_err(series_failure)?,
    };
    matrix_out(&w, fmt, dec)
}

fn cmd_build_quasi(a: BuildQuasiArgs, fmt: Format, dec: Option<usize>) -> Result<Outcome, Failure> {
    let order = a.order.unwrap_or(a.rows.max(a.cols));
    let g = gf("g", &a.g, order)?;
    let f = gf("f", &a.f, order)?;
    let w = QuasiRiordanSpec::new(g, f)
        .map_err(array_failure)?
        .window(a.rows, a.cols)
        .map_err(series_failure)?;
    matrix_out(&w, fmt, dec)
}

fn cmd_mult(a: MultArgs, fmt: Format, dec: Option<usize>) -> Result<Outcome, Failure> {
    let order = a.order;
    match a.kind {
        SpecKind::Almost => {
            let d1 = a.d1.as_deref().ok_or_else(|| {
                Failure::usage("--kind almost needs --d1 and --d2".to_string())
            })?;
            let d2 = a.d2.as_deref().ok_or_else(|| {
                Failure::usage("--kind almost needs --d1 and --d2".to_string())
            })?;
            let lhs = AlmostRiordanSpec::new(
                gf("d1", d1, order)?,
                gf("g1", &a.g1, order)?,
                gf("f1", &a.f1, order)?,
            )
            .map_err(array_failure)?;
            let rhs = AlmostRiordanSpec::new(
                gf("d2", d2, order)?,
                gf("g2", &a.g2, order)?,
                gf("f2", &a.f2, order)?,
            )
            .map_err(array_failure)?;
            let prod = lhs.multiply(&rhs).map_err(array_failure)?;
            match (a.rows, a.cols) {
                (Some(r), Some(c)) => {
                    matrix_out(&prod.window(r, c).map_err(series_failure)?, fmt, dec)
                }
                _ => series_table_out(
                    &[("d", prod.d()), ("g", prod.g()), ("f", prod.f())],
                    fmt,
                    dec,
                ),
            }
        }
        SpecKind::Quasi => {
            if a.d1.is_some() || a.d2.is_some() {
                return Err(Failure::usage(
                    "--d1/--d2 apply to --kind almost only".to_string(),
                ));
            }
            let lhs = QuasiRiordanSpec::new(gf("g1", &a.g1, order)?, gf("f1", &a.f1, order)?)
                .map_err(array_failure)?;
            let rhs = QuasiRiordanSpec::new(gf("g2", &a.g2, order)?, gf("f2", &a.f2, order)?)
                .map_err(array_failure)?;
            let prod = lhs.multiply(&rhs).map_err(array_failure)?;
            match (a.rows, a.cols) {
                (Some(r), Some(c)) => {
                    matrix_out(&prod.window(r, c).map_err(series_failure)?, fmt, dec)
                }
                _ => series_table_out(&[("g", prod.g()), ("f", prod.f())], fmt, dec),
            }
        }
    }
}

fn cmd_azw(a: AzwArgs, fmt: Format, dec: Option<usize>) -> Result<Outcome, Failure> {
    // input series need one order above the requested sequence order
    let work = a.order + 1;
    let azw = match a.kind {
        SpecKind::Almost => {
            let d_text = a
                .d
                .as_deref()
                .ok_or_else(|| Failure::usage("--kind almost needs --d".to_string()))?;
            let spec = AlmostRiordanSpec::new(
                gf("d", d_text, work)?,
                gf("g", &a.g, work)?,
                gf("f", &a.f, work)?,
            )
            .map_err(array_failure)?;
            azw_from_almost(&spec, a.order).map_err(seq_failure)?
        }
        SpecKind::Quasi => {
            if a.d.is_some() {
                return Err(Failure::usage("--d applies to --kind almost only".to_string()));
            }
            let spec = QuasiRiordanSpec::new(gf("g", &a.g, work)?, gf("f", &a.f, work)?)
                .map_err(array_failure)?;
            azw_from_quasi(&spec, a.order).map_err(seq_failure)?
        }
    };
    series_table_out(&[("a", &azw.a), ("z", &azw.z), ("w", &azw.w)], fmt, dec)
}

fn cmd_production(a: ProductionArgs, fmt: Format, dec: Option<usize>) -> Result<Outcome, Failure> {
    let spec_mode = a.d.is_some() || a.g.is_some() || a.f.is_some();
    let data_mode = a.a.is_some() || a.z.is_some() || a.w.is_some();
    if spec_mode == data_mode {
        return Err(Failure::usage(
            "pass either --d/--g/--f or --a/--z/--w".to_string(),
        ));
    }
    let j = if spec_mode {
        let (d, g, f) = match (&a.d, &a.g, &a.f) {
            (Some(d), Some(g), Some(f)) => (d, g, f),
            _ => return Err(Failure::usage("spec mode needs all of --d, --g, --f".to_string())),
        };
        let order = a.n + 1;
        let spec = AlmostRiordanSpec::new(
            gf("d", d, order)?,
            gf("g", g, order)?,
            gf("f", f, order)?,
        )
        .map_err(array_failure)?;
        let azw = azw_from_almost(&spec, a.n).map_err(seq_failure)?;
        production_from_azw(&azw, a.n).map_err(seq_failure)?
    } else {
        let (pa, pz, pw) = match (&a.a, &a.z, &a.w) {
            (Some(pa), Some(pz), Some(pw)) => (pa, pz, pw),
            _ => return Err(Failure::usage("data mode needs all of --a, --z, --w".to_string())),
        };
        tridiagonal_args(pa, pz, pw)?.production_window(a.n)
    };
    matrix_out(&j, fmt, dec)
}

fn cmd_extract(a: ExtractArgs, fmt: Format, dec: Option<usize>) -> Result<Outcome, Failure> {
    let m = load_matrix(&a.matrix)?;
    let j = extract_production(&m).map_err(seq_failure)?;
    matrix_out(&j, fmt, dec)
}

fn cmd_recover(a: RecoverArgs, fmt: Format, dec: Option<usize>) -> Result<Outcome, Failure> {
    let p = tridiagonal_args(&a.a, &a.z, &a.w)?;
    let d0 = rational_arg("d0", &a.d0)?;
    let spec = recover_from_tridiagonal(&p, &d0, a.order).map_err(seq_failure)?;
    series_table_out(&[("d", spec.d()), ("g", spec.g()), ("f", spec.f())], fmt, dec)
}

fn cmd_tp_check(a: TpCheckArgs, fmt: Format) -> Result<Outcome, Failure> {
    let m = load_matrix(&a.matrix)?;
    let cap = minor_cap()?;
    let count = count_enumerated_minors(m.rows(), m.cols(), a.max_order, a.strategy);
    eprintln!("enumerating {count} minors (cap {cap})");
    if count > cap {
        return Err(Failure::eval(format!(
            "minor count {count} exceeds RIORDAN_TP_MAX_MINORS cap {cap}"
        )));
    }
    report_out(&tp_check(&m, a.max_order, a.strategy), fmt)
}

fn cmd_jacobi(a: JacobiArgs, fmt: Format) -> Result<Outcome, Failure> {
    let m = load_matrix(&a.matrix)?;
    let r = jacobi_tp_check(&m).map_err(tp_failure)?;
    report_out(&r, fmt)
}

fn cmd_det_t(a: DetTArgs, fmt: Format, dec: Option<usize>) -> Result<Outcome, Failure> {
    let a0 = rational_arg("a0", &a.a0)?;
    let a1 = rational_arg("a1", &a.a1)?;
    let a2 = rational_arg("a2", &a.a2)?;
    if a.find_negative {
        let (n, value) = find_negative_t(&a0, &a1, &a2, a.limit).map_err(tp_failure)?;
        let text = match fmt {
            Format::Json => json!({ "n": n, "value": value.to_string() }).to_string(),
            Format::Csv => format!("n,value\n{n},{value}"),
            Format::Pretty => format!("first negative at n = {n}: {value}"),
        };
        return Ok(Outcome::ok(text));
    }
    let n = a.n.expect("clap enforces --n without --find-negative");
    let value = match a.method {
        DetMethod::Recurrence => det_t_recurrence(&a0, &a1, &a2, n),
        DetMethod::Closed => det_t_closed(&a0, &a1, &a2, n),
    };
    scalar_out(&value, fmt, dec)
}

fn cmd_det_j(a: DetJArgs, fmt: Format, dec: Option<usize>) -> Result<Outcome, Failure> {
    let p = tridiagonal_args(&a.a, &a.z, &a.w)?;
    scalar_out(&det_j(&p, a.n), fmt, dec)
}

fn cmd_tridiagonal_tp(a: TridiagonalTpArgs, fmt: Format) -> Result<Outcome, Failure> {
    let p = tridiagonal_args(&a.a, &a.z, &a.w)?;
    let verdict = tp_verdict(&p);
    let witness = if verdict == TriVerdict::NotTp {
        Some(first_negative_contiguous_minor(&p).map_err(tp_failure)?)
    } else {
        None
    };
    let code = match verdict {
        TriVerdict::Tp => 0,
        TriVerdict::NotTp => EXIT_VERIFICATION,
        TriVerdict::Inapplicable => EXIT_EVAL,
    };
    let text = match fmt {
        Format::Json => {
            let mut v = json!({ "verdict": tri_verdict_str(verdict) });
            if let Some(w) = &witness {
                v["witness"] = json!({
                    "start": w.start,
                    "size": w.size,
                    "value": w.value.to_string(),
                });
            }
            v.to_string()
        }
        Format::Csv => {
            let (start, size, value) = match &witness {
                Some(w) => (w.start.to_string(), w.size.to_string(), w.value.to_string()),
                None => (String::new(), String::new(), String::new()),
            };
            format!(
                "verdict,witness_start,witness_size,witness_value\n{},{},{},{}",
                tri_verdict_str(verdict),
                start,
                size,
                value
            )
        }
        Format::Pretty => {
            let mut s = format!("verdict: {}", tri_verdict_str(verdict));
            if let Some(w) = &witness {
                s.push_str(&format!(
                    "\nwitness: contiguous minor at start {} size {} value {}",
                    w.start, w.size, w.value
                ));
            }
            s
        }
    };
    Ok(Outcome { text, code })
}

fn cmd_region(a: RegionArgs, fmt: Format) -> Result<Outcome, Failure> {
    fn region_failure(e: RegionError) -> Failure {
        Failure::usage(e.to_string())
    }
    if a.grid {
        let need = |label: &str, v: &Option<String>| -> Result<String, Failure> {
            v.clone().ok_or_else(|| {
                Failure::usage(format!("--grid needs --{label}"))
            })
        };
        let a_min = rational_arg("alpha-min", &need("alpha-min", &a.alpha_min)?)?;
        let a_max = rational_arg("alpha-max", &need("alpha-max", &a.alpha_max)?)?;
        let b_min = rational_arg("beta-min", &need("beta-min", &a.beta_min)?)?;
        let b_max = rational_arg("beta-max", &need("beta-max", &a.beta_max)?)?;
        let step = rational_arg("step", &need("step", &a.step)?)?;
        let points = region_grid(a.family, &a_min, &a_max, &b_min, &b_max, &step)
            .map_err(region_failure)?;
        let text = match fmt {
            Format::Json => serde_json::to_string_pretty(&points)
                .map_err(|e| Failure::eval(e.to_string()))?,
            Format::Csv => grid_to_csv(&points).trim_end().to_string(),
            Format::Pretty => points
                .iter()
                .map(|p| {
                    format!(
                        "({}, {}): {}",
                        p.alpha,
                        p.beta,
                        if p.in_region { "in" } else { "out" }
                    )
                })
                .collect::<Vec<_>>()
                .join("\n"),
        };
        return Ok(Outcome::ok(text));
    }
    let alpha_text = a
        .alpha
        .ok_or_else(|| Failure::usage("pass --alpha and --beta, or --grid".to_string()))?;
    let beta_text = a
        .beta
        .ok_or_else(|| Failure::usage("pass --alpha and --beta, or --grid".to_string()))?;
    let alpha = rational_arg("alpha", &alpha_text)?;
    let beta = rational_arg("beta", &beta_text)?;
    let in_region = region_check(a.family, &alpha, &beta).map_err(region_failure)?;
    let text = match fmt {
        Format::Json => json!({ "in_region": in_region }).to_string(),
        _ => if in_region { "in".to_string() } else { "out".to_string() },
    };
    Ok(Outcome::ok(text))
}

fn cmd_pf(a: PfArgs, fmt: Format) -> Result<Outcome, Failure> {
    let s = gf("series", &a.series, a.order)?;
    match a.window {
        None => {
            let ok = is_pf_polynomial(&s).map_err(|e| match e {
                TpError::DegreeTooHigh { degree } => Failure::eval(format!(
                    "degree {degree} is beyond the polynomial criterion, rerun with --window ROWS"
                )),
                other => tp_failure(other),
            })?;
            bool_out(ok, fmt)
        }
        Some(rows) => {
            let cap = minor_cap()?;
            let count = count_enumerated_minors(rows, rows, a.max_order, Strategy::All);
            eprintln!("enumerating {count} minors (cap {cap})");
            if count > cap {
                return Err(Failure::eval(format!(
                    "minor count {count} exceeds RIORDAN_TP_MAX_MINORS cap {cap}"
                )));
            }
            let r = pf_window_check(&s, rows, a.max_order).map_err(tp_failure)?;
            report_out(&r, fmt)
        }
    }
}

fn cmd_corpus(a: CorpusArgs, fmt: Format) -> Result<Outcome, Failure> {
    if !a.all && a.id.is_empty() {
        return Err(Failure::usage("pass --all or at least one --id".to_string()));
    }
    let filter = if a.all { Vec::new() } else { a.id.clone() };
    let report = run_corpus(&filter);
    let code = if report.passed { 0 } else { EXIT_VERIFICATION };
    let text = match fmt {
        Format::Json => serde_json::to_string_pretty(&report)
            .map_err(|e| Failure::eval(e.to_string()))?,
        Format::Csv => {
            let mut lines = vec!["id,passed".to_string()];
            for e in &report.entries {
                lines.push(format!("{},{}", e.id, e.passed));
            }
            lines.join("\n")
        }
        Format::Pretty => {
            let mut lines = Vec::new();
            for e in &report.entries {
                lines.push(format!("{}: {}", e.id, if e.passed { "pass" } else { "FAIL" }));
                for c in e.checks.iter().filter(|c| !c.passed) {
                    lines.push(format!("  {} failed: {}", c.name, c.detail));
                }
                for d in &e.discrepancies {
                    let reported =
                        if d.reported.is_empty() { "(blank)" } else { d.reported.as_str() };
                    lines.push(format!(
                        "  reported ({}, {}) = {}, computed {}",
                        d.row, d.col, reported, d.computed
                    ));
                }
            }
            lines.push(format!(
                "overall: {}",
                if report.passed { "pass" } else { "FAIL" }
            ));
            lines.join("\n")
        }
    };
    Ok(Outcome { text, code })
}
