//! The `wsc` command line.
//!
//! Exit codes: 0 success, 1 verification found violations, 2 usage or domain error,
//! 3 capacity exceeded. Diagnostics go to the error stream, data to the output stream
//! or to the `-o` file.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bounds::{cff_table, cff_table_csv, BoundTable};
use crate::construct::{
    alteration_construct, cff_alteration_construct, CffConfig, ConstructionConfig, DEFAULT_N_GUARD,
};
use crate::error::{Error, Result};
use crate::experiments::{
    estimate_success_probability, estimate_violation_probability, parse_kv_config, rate_sweep, sweep_csv, SweepConfig,
};
use crate::format::{parse_wsc, write_wsc};
use crate::matrix::{CodeMatrix, CodeParams};
use crate::verify::{
    cff_verify_report, max_code_exhaustive, verify_locally_thin_report, verify_weak, VerificationResult,
    DEFAULT_VIOLATION_CAP,
};

const SUBCOMMANDS: [&str; 6] = ["construct", "verify", "bounds", "estimate", "sweep", "oracle"];

#[derive(Debug, Parser)]
#[command(name = "wsc", version, about = "Weak superimposed codes: construct, verify, bound, simulate")]
#[command(args_override_self = true)]
struct Cli {
    /// Worker threads for verification and trials; all cores when absent.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// `key = value` file whose entries become flags; explicit flags win.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sample-and-alter construction of a weak code or cover-free family.
    Construct(ConstructArgs),
    /// Check a `.wsc` matrix file.
    Verify(VerifyArgs),
    /// Tabulate rate bounds.
    Bounds(BoundsArgs),
    /// Monte-Carlo estimates of the violation or success probability.
    Estimate(EstimateArgs),
    /// One construction per length, reported as CSV or JSON.
    Sweep(SweepArgs),
    /// Exact maximum code size by exhaustive search, l <= 4.
    Oracle(OracleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Weak,
    Cff,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CodeFormat {
    Wsc,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VerifyMode {
    Weak,
    LocallyThin,
    Cff,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EstimateMode {
    Violation,
    Success,
}

#[derive(Debug, Args)]
struct Output {
    /// Write data here instead of the output stream.
    #[arg(short = 'o', long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ConstructArgs {
    #[arg(long, value_enum, default_value_t = Family::Weak)]
    kind: Family,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long, default_value_t = 1)]
    d: usize,
    #[arg(long)]
    l: usize,
    #[arg(long, default_value_t = 2.0)]
    f: f64,
    /// Initial sample size; the rate formula is used when absent.
    #[arg(long)]
    n: Option<usize>,
    /// Bit probability; 1/t or w/(w+r) when absent.
    #[arg(long)]
    p: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_N_GUARD)]
    n_guard: usize,
    #[arg(long)]
    w: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    /// Also write the construction log as JSON.
    #[arg(long, value_name = "FILE")]
    log: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = CodeFormat::Wsc)]
    format: CodeFormat,
    #[command(flatten)]
    out: Output,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    file: PathBuf,
    /// Overrides the strength in the file header.
    #[arg(long)]
    t: Option<usize>,
    /// Overrides the multiplicity in the file header.
    #[arg(long)]
    d: Option<usize>,
    #[arg(long, value_enum, default_value_t = VerifyMode::Weak)]
    mode: VerifyMode,
    /// Subset size for locally-thin mode; the header strength when absent.
    #[arg(long)]
    u: Option<usize>,
    #[arg(long)]
    w: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    /// Maximum number of violations reported.
    #[arg(long, default_value_t = DEFAULT_VIOLATION_CAP)]
    cap: usize,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    format: ReportFormat,
    #[command(flatten)]
    out: Output,
}

#[derive(Debug, Args)]
struct BoundsArgs {
    #[arg(long, value_enum, default_value_t = Family::Weak)]
    family: Family,
    #[arg(long, default_value_t = 2)]
    t_min: usize,
    #[arg(long)]
    t_max: Option<usize>,
    #[arg(long, default_value_t = 1)]
    d: usize,
    /// Length for the finite-length rate column.
    #[arg(long)]
    l: Option<usize>,
    #[arg(long, default_value_t = 2.0)]
    f: f64,
    /// Largest w and r in the cover-free table.
    #[arg(long, default_value_t = 16)]
    wr_max: usize,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    format: TableFormat,
    #[command(flatten)]
    out: Output,
}

#[derive(Debug, Args)]
struct EstimateArgs {
    #[arg(long, value_enum, default_value_t = EstimateMode::Violation)]
    mode: EstimateMode,
    /// Columns in each sampled matrix (violation mode).
    #[arg(long)]
    s: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long, default_value_t = 1)]
    d: usize,
    #[arg(long)]
    l: usize,
    /// Bit probability; 1/s or 1/t when absent.
    #[arg(long)]
    p: Option<f64>,
    #[arg(long, default_value_t = 2.0)]
    f: f64,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_N_GUARD)]
    n_guard: usize,
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    out: Output,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long)]
    t: usize,
    #[arg(long, default_value_t = 1)]
    d: usize,
    #[arg(long, default_value_t = 2.0)]
    f: f64,
    /// Comma-separated lengths.
    #[arg(long, value_delimiter = ',', required = true)]
    l: Vec<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_N_GUARD)]
    n_guard: usize,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    format: TableFormat,
    #[command(flatten)]
    out: Output,
}

#[derive(Debug, Args)]
struct OracleArgs {
    #[arg(long)]
    l: usize,
    #[arg(long)]
    t: usize,
    #[arg(long, default_value_t = 1)]
    d: usize,
    #[arg(long, value_enum, default_value_t = CodeFormat::Json)]
    format: CodeFormat,
    #[command(flatten)]
    out: Output,
}

/// Runs the CLI against the process streams and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with_io(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// Same as [`run`] with explicit output and error streams.
pub fn run_with_io<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let argv = match expand_config(argv) {
        Ok(a) => a,
        Err(e) => return report(err, &e),
    };
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let stream: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(stream, "{}", e.render());
            return code;
        }
    };
    let (mut data, mut diag) = (Vec::new(), Vec::new());
    let result = match cli.threads {
        Some(0) => Err(Error::Usage("--threads must be >= 1".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Usage(format!("cannot start {n} worker threads: {e}")))
            .and_then(|pool| pool.install(|| dispatch(cli.command, &mut data, &mut diag))),
        None => dispatch(cli.command, &mut data, &mut diag),
    };
    let _ = err.write_all(&diag);
    if let Err(e) = out.write_all(&data).and_then(|_| out.flush()) {
        return report(err, &e.into());
    }
    match result {
        Ok(code) => code,
        Err(e) => report(err, &e),
    }
}

fn need<T>(value: Option<T>, flag: &str) -> Result<T> {
    value.ok_or_else(|| Error::Usage(format!("{flag} is required here")))
}

fn report(err: &mut dyn Write, e: &Error) -> i32 {
    let _ = writeln!(err, "error: {e}");
    e.exit_code()
}

/// Replaces `--config FILE` by the flags it lists, placed right after the subcommand so
/// that flags given on the command line override them. A `command` key supplies the
/// subcommand when the command line has none.
fn expand_config(argv: Vec<OsString>) -> Result<Vec<OsString>> {
    let mut rest = Vec::with_capacity(argv.len());
    let mut path = None;
    let mut it = argv.into_iter();
    rest.extend(it.next());
    while let Some(arg) = it.next() {
        let s = arg.to_string_lossy();
        if s == "--config" {
            match it.next() {
                Some(p) => path = Some(PathBuf::from(p)),
                None => return Err(Error::Usage("--config needs a file".into())),
            }
        } else if let Some(p) = s.strip_prefix("--config=") {
            path = Some(PathBuf::from(p));
        } else {
            rest.push(arg);
        }
    }
    let Some(path) = path else { return Ok(rest) };
    let text = std::fs::read_to_string(&path)
        .map_err(|e| Error::Usage(format!("cannot read config {}: {e}", path.display())))?;
    let mut command = None;
    let mut flags: Vec<OsString> = Vec::new();
    for (key, value) in parse_kv_config(&text)? {
        if key == "command" {
            command = Some(value);
            continue;
        }
        let flag = format!("--{}", key.replace('_', "-"));
        match value.as_str() {
            "true" => flags.push(flag.into()),
            "false" => {}
            _ => {
                flags.push(flag.into());
                flags.push(value.into());
            }
        }
    }
    let position = rest.iter().position(|a| SUBCOMMANDS.contains(&a.to_string_lossy().as_ref()));
    let at = match (position, command) {
        (Some(i), _) => i + 1,
        (None, Some(cmd)) => {
            rest.push(cmd.into());
            rest.len()
        }
        (None, None) => return Err(Error::Usage("config file names no command and none was given".into())),
    };
    rest.splice(at..at, flags);
    Ok(rest)
}

fn emit(target: &Output, out: &mut dyn Write, data: &str) -> Result<()> {
    match &target.output {
        Some(path) => std::fs::write(path, data)?,
        None => out.write_all(data.as_bytes())?,
    }
    Ok(())
}

fn to_json<S: Serialize>(value: &S) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn dispatch(command: Command, out: &mut Vec<u8>, err: &mut Vec<u8>) -> Result<i32> {
    match command {
        Command::Construct(a) => construct(a, out, err),
        Command::Verify(a) => verify(a, out, err),
        Command::Bounds(a) => bounds(a, out),
        Command::Estimate(a) => estimate(a, out),
        Command::Sweep(a) => sweep(a, out),
        Command::Oracle(a) => oracle(a, out),
    }
}

#[derive(Serialize)]
struct CodeJson<'a> {
    length: usize,
    size: usize,
    t: usize,
    d: usize,
    /// One string per live column, coordinate 0 first.
    columns: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    log: Option<&'a crate::construct::ConstructionLog>,
}

fn code_json(m: &CodeMatrix, params: CodeParams, log: Option<&crate::construct::ConstructionLog>) -> Result<String> {
    to_json(&CodeJson {
        length: m.length(),
        size: m.live_count(),
        t: params.t,
        d: params.d,
        columns: m.live_indices().into_iter().map(|j| m.column_string(j)).collect(),
        log,
    })
}

fn construct(a: ConstructArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let (m, log, params) = match a.kind {
        Family::Weak => {
            let t = need(a.t, "--t")?;
            let cfg = ConstructionConfig {
                t,
                d: a.d,
                l: a.l,
                f: a.f,
                seed: a.seed,
                p_override: a.p,
                n_override: a.n,
                n_guard: a.n_guard,
            };
            let (m, log) = alteration_construct(&cfg)?;
            (m, log, CodeParams::new(t, a.d)?)
        }
        Family::Cff => {
            let cfg = CffConfig {
                w: need(a.w, "--w")?,
                r: need(a.r, "--r")?,
                d: a.d,
                l: a.l,
                f: a.f,
                seed: a.seed,
                p_override: a.p,
                n_override: a.n,
                n_guard: a.n_guard,
            };
            let (m, log) = cff_alteration_construct(&cfg)?;
            (m, log, CodeParams::new(2, a.d)?)
        }
    };
    if !log.success {
        let _ = writeln!(
            err,
            "warning: achieved rate {} is below the finite-length target {}",
            log.achieved_rate, log.target_rate
        );
    }
    if let Some(path) = &a.log {
        std::fs::write(path, log.to_json()?)?;
    }
    let data = match a.format {
        CodeFormat::Wsc => write_wsc(&m, params),
        CodeFormat::Json => code_json(&m, params, Some(&log))?,
    };
    emit(&a.out, out, &data)?;
    Ok(0)
}

#[derive(Serialize)]
struct VerifyJson {
    file: String,
    mode: &'static str,
    length: usize,
    size: usize,
    #[serde(flatten)]
    params: serde_json::Value,
    #[serde(flatten)]
    result: VerificationResult,
}

fn read_code(path: &Path) -> Result<(CodeMatrix, CodeParams)> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))?;
    parse_wsc(&text)
}

fn verify(a: VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let (m, header) = read_code(&a.file)?;
    let mut params = header;
    if let Some(t) = a.t.filter(|&t| t != header.t) {
        let _ = writeln!(err, "warning: --t {t} overrides header strength {}", header.t);
        params.t = t;
    }
    if let Some(d) = a.d.filter(|&d| d != header.d) {
        let _ = writeln!(err, "warning: --d {d} overrides header multiplicity {}", header.d);
        params.d = d;
    }
    let params = CodeParams::new(params.t, params.d)?;
    let (mode, result, described, what) = match a.mode {
        VerifyMode::Weak => (
            "weak",
            verify_weak(&m, params.t, params.d, Some(a.cap))?,
            serde_json::json!({ "t": params.t, "d": params.d }),
            format!("weak ({}, {}) code", params.t, params.d),
        ),
        VerifyMode::LocallyThin => {
            let u = a.u.unwrap_or(params.t);
            (
                "locally_thin",
                verify_locally_thin_report(&m, u, Some(a.cap))?,
                serde_json::json!({ "u": u }),
                format!("{u}-locally thin family"),
            )
        }
        VerifyMode::Cff => {
            let (w, r) = (need(a.w, "--w")?, need(a.r, "--r")?);
            (
                "cff",
                cff_verify_report(&m, w, r, params.d)?,
                serde_json::json!({ "w": w, "r": r, "d": params.d }),
                format!("({w}, {r}; {})-cover-free family", params.d),
            )
        }
    };
    let code = if result.ok { 0 } else { 1 };
    let data = match a.format {
        ReportFormat::Json => to_json(&VerifyJson {
            file: a.file.display().to_string(),
            mode,
            length: m.length(),
            size: m.live_count(),
            params: described,
            result,
        })?,
        ReportFormat::Text => verify_text(&m, &what, params.d, &result),
    };
    emit(&a.out, out, &data)?;
    Ok(code)
}

fn verify_text(m: &CodeMatrix, what: &str, d: usize, result: &VerificationResult) -> String {
    use std::fmt::Write as _;
    let mut s = String::new();
    let verdict = if result.ok { "ok" } else { "FAILED" };
    let _ = writeln!(
        s,
        "{verdict}: {} x {} matrix as {what}; {} subsets checked, {} violations{}",
        m.length(),
        m.live_count(),
        result.subsets_checked,
        result.violations.len(),
        if result.truncated { " (truncated)" } else { "" }
    );
    for v in &result.violations {
        let _ = write!(s, "violation: columns {:?}", v.subset);
        if !v.excluded.is_empty() {
            let _ = write!(s, " against {:?}", v.excluded);
        }
        let _ = writeln!(s, " have {} qualifying rows, need {d}", v.weight_one_rows);
    }
    s
}

fn bounds(a: BoundsArgs, out: &mut dyn Write) -> Result<i32> {
    let data = match a.family {
        Family::Weak => {
            let table = BoundTable::<f64>::weak(a.t_min, need(a.t_max, "--t-max")?, a.d, a.l, a.f)?;
            match a.format {
                TableFormat::Csv => table.to_csv()?,
                TableFormat::Json => to_json(&table)?,
            }
        }
        Family::Cff => {
            let rows = cff_table::<f64>(a.wr_max)?;
            match a.format {
                TableFormat::Csv => cff_table_csv(&rows)?,
                TableFormat::Json => to_json(&rows)?,
            }
        }
    };
    emit(&a.out, out, &data)?;
    Ok(0)
}

fn estimate(a: EstimateArgs, out: &mut dyn Write) -> Result<i32> {
    let data = match a.mode {
        EstimateMode::Violation => {
            let s = need(a.s, "--s")?;
            let p = a.p.unwrap_or(1.0 / s as f64);
            to_json(&estimate_violation_probability(s, p, a.l, a.d, a.trials, a.seed)?)?
        }
        EstimateMode::Success => {
            let t = need(a.t, "--t")?;
            let cfg = ConstructionConfig {
                t,
                d: a.d,
                l: a.l,
                f: a.f,
                seed: a.seed,
                p_override: a.p,
                n_override: a.n,
                n_guard: a.n_guard,
            };
            to_json(&estimate_success_probability(&cfg, a.trials)?)?
        }
    };
    emit(&a.out, out, &data)?;
    Ok(0)
}

fn sweep(a: SweepArgs, out: &mut dyn Write) -> Result<i32> {
    let cfg =
        SweepConfig { t: a.t, d: a.d, f: a.f, seed: a.seed, p_override: a.p, n_override: a.n, n_guard: a.n_guard };
    let rows = rate_sweep(&cfg, &a.l)?;
    let data = match a.format {
        TableFormat::Csv => sweep_csv(&rows)?,
        TableFormat::Json => to_json(&rows)?,
    };
    emit(&a.out, out, &data)?;
    Ok(0)
}

#[derive(Serialize)]
struct OracleJson {
    l: usize,
    t: usize,
    d: usize,
    max_size: usize,
    witness: Vec<String>,
}

fn oracle(a: OracleArgs, out: &mut dyn Write) -> Result<i32> {
    let (size, witness) = max_code_exhaustive(a.l, a.t, a.d)?;
    let data = match a.format {
        CodeFormat::Json => to_json(&OracleJson {
            l: a.l,
            t: a.t,
            d: a.d,
            max_size: size,
            witness: (0..witness.size()).map(|j| witness.column_string(j)).collect(),
        })?,
        CodeFormat::Wsc => write_wsc(&witness, CodeParams::new(a.t, a.d)?),
    };
    emit(&a.out, out, &data)?;
    Ok(0)
}
