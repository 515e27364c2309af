//! Command-line front end.
//!
//! Exit codes: `0` success (for `classify`: the curve exists), `3` the curve
//! does not exist, `2` usage or domain error, `1` a self-test mismatch or an
//! I/O failure.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::classifier::classify;
use crate::error::Error;
use crate::lattice::{CurveQuery, Mode};
use crate::oracle::{sweep_solver, sweep_theorem, DEFAULT_D_MAX, DEFAULT_N_MAX};
use crate::record::{OutputRecord, CSV_HEADER};
use crate::special::{ci_classify, nonspecial_report, CiFamily};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NOT_EXISTS: i32 = 3;

/// Tables larger than this need `--force`.
pub const MAX_TABLE_RECORDS: u64 = 10_000_000;

#[derive(Debug, Parser)]
#[command(name = "k3curves", version, about = "Smooth curves of degree d and genus g on K3 surfaces of degree 2n")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify a single triple (n, d, g).
    Classify(ClassifyArgs),
    /// Classify every (d, g) with 1 <= d <= d-max, 0 <= g <= g-max.
    Table(TableArgs),
    /// Evaluate the non-specialty criterion for O_C(k).
    Nonspecial(NonspecialArgs),
    /// Table for a complete-intersection family.
    Ci(CiArgs),
    /// Run the brute-force consistency sweeps.
    Selftest(SelftestArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RecordFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Csv,
    JsonLines,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Embedded,
    Birational,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Embedded => Mode::Embedded,
            ModeArg::Birational => Mode::Birational,
        }
    }
}

#[derive(Debug, Args)]
struct ClassifyArgs {
    #[arg(long, allow_negative_numbers = true)]
    n: i64,
    #[arg(long, allow_negative_numbers = true)]
    d: i64,
    #[arg(long, allow_negative_numbers = true)]
    g: i64,
    /// Allow birational projective models (rational double points).
    #[arg(long)]
    birational: bool,
    #[arg(long, value_enum, default_value_t = RecordFormat::Text)]
    format: RecordFormat,
}

#[derive(Debug, Args)]
struct BoxArgs {
    #[arg(long = "d-max", allow_negative_numbers = true)]
    d_max: i64,
    #[arg(long = "g-max", allow_negative_numbers = true)]
    g_max: i64,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    format: TableFormat,
    /// Emit only rows where the curve exists.
    #[arg(long)]
    only_exists: bool,
    /// Allow more than 10^7 records.
    #[arg(long)]
    force: bool,
}

#[derive(Debug, Args)]
struct TableArgs {
    #[arg(long, allow_negative_numbers = true)]
    n: i64,
    #[command(flatten)]
    range: BoxArgs,
    #[arg(long, value_enum, default_value_t = ModeArg::Embedded)]
    mode: ModeArg,
}

#[derive(Debug, Args)]
struct CiArgs {
    /// quartic, 23 or 222.
    #[arg(long)]
    family: String,
    #[command(flatten)]
    range: BoxArgs,
}

#[derive(Debug, Args)]
struct NonspecialArgs {
    #[arg(long, allow_negative_numbers = true)]
    n: i64,
    #[arg(long, allow_negative_numbers = true)]
    d: i64,
    #[arg(long, allow_negative_numbers = true)]
    g: i64,
    #[arg(long, allow_negative_numbers = true)]
    k: i64,
    #[arg(long, value_enum, default_value_t = RecordFormat::Text)]
    format: RecordFormat,
}

#[derive(Debug, Args)]
struct SelftestArgs {
    #[arg(long = "n-max", default_value_t = DEFAULT_N_MAX)]
    n_max: i64,
    #[arg(long = "d-max", default_value_t = DEFAULT_D_MAX)]
    d_max: i64,
    #[arg(long, value_enum, default_value_t = RecordFormat::Text)]
    format: RecordFormat,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Domain(#[from] Error),
    #[error("{0}")]
    Usage(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) | CliError::Usage(_) => EXIT_USAGE,
            CliError::Io(_) | CliError::Csv(_) => EXIT_FAILURE,
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ =
                if e.use_stderr() { err.write_all(rendered.as_bytes()) } else { out.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    let result = match cli.command {
        Command::Classify(a) => cmd_classify(a, out),
        Command::Table(a) => cmd_table(a, out),
        Command::Nonspecial(a) => cmd_nonspecial(a, out),
        Command::Ci(a) => cmd_ci(a, out),
        Command::Selftest(a) => cmd_selftest(a, out),
    };
    match result.and_then(|code| out.flush().map(|_| code).map_err(CliError::from)) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn cmd_classify(a: ClassifyArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let mode = if a.birational { Mode::Birational } else { Mode::Embedded };
    let q = CurveQuery::with_mode(a.n, a.d, a.g, mode)?;
    let record = OutputRecord::from(&classify(&q)?);
    match a.format {
        RecordFormat::Text => out.write_all(record.to_text().as_bytes())?,
        RecordFormat::Json => writeln!(out, "{}", record.to_json())?,
    }
    Ok(if record.exists { EXIT_OK } else { EXIT_NOT_EXISTS })
}

fn check_box(range: &BoxArgs) -> Result<(), CliError> {
    if range.d_max < 0 || range.g_max < 0 {
        return Err(CliError::Usage(format!(
            "--d-max and --g-max must be non-negative, got {} and {}",
            range.d_max, range.g_max
        )));
    }
    let records = (range.d_max as u64).saturating_mul(range.g_max as u64 + 1);
    if records > MAX_TABLE_RECORDS && !range.force {
        return Err(CliError::Usage(format!(
            "table would have {records} records (limit {MAX_TABLE_RECORDS}); pass --force to proceed"
        )));
    }
    Ok(())
}

fn write_table<F>(range: &BoxArgs, extra_header: &[&str], out: &mut dyn Write, mut row: F) -> Result<i32, CliError>
where
    F: FnMut(i64, i64) -> Result<(OutputRecord, Vec<String>), CliError>,
{
    check_box(range)?;
    let cells = (1..=range.d_max).flat_map(|d| (0..=range.g_max).map(move |g| (d, g)));
    match range.format {
        TableFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(CSV_HEADER.iter().chain(extra_header))?;
            for (d, g) in cells {
                let (record, extra) = row(d, g)?;
                if !range.only_exists || record.exists {
                    w.write_record(record.csv_fields().iter().chain(&extra))?;
                }
            }
            w.flush()?;
        }
        TableFormat::JsonLines => {
            for (d, g) in cells {
                let (record, _) = row(d, g)?;
                if !range.only_exists || record.exists {
                    writeln!(out, "{}", record.to_json())?;
                }
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_table(a: TableArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    // Validate n up front so an empty box still reports a bad n.
    CurveQuery::new(a.n, 1, 0)?;
    let mode = Mode::from(a.mode);
    write_table(&a.range, &[], out, |d, g| {
        let q = CurveQuery::with_mode(a.n, d, g, mode)?;
        Ok((OutputRecord::from(&classify(&q)?), Vec::new()))
    })
}

fn cmd_ci(a: CiArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let family: CiFamily = a.family.parse()?;
    write_table(&a.range, &["hypersurface_degree"], out, |d, g| {
        let record = OutputRecord::from(&ci_classify(family, d, g)?);
        let extra = vec![record.hypersurface_degree.map(|h| h.to_string()).unwrap_or_default()];
        Ok((record, extra))
    })
}

fn cmd_nonspecial(a: NonspecialArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let r = nonspecial_report(a.n, a.d, a.g, a.k)?;
    match a.format {
        RecordFormat::Text => {
            writeln!(out, "nonspecial      {}", r.nonspecial)?;
            writeln!(out, "d <= 2nk        {} <= {}: {}", r.d, r.two_nk, r.d <= r.two_nk)?;
            writeln!(out, "dk > nk^2 + g   {} > {}: {}", r.dk, r.nk2_plus_g, r.dk > r.nk2_plus_g)?;
        }
        RecordFormat::Json => {
            let value = serde_json::to_value(&r).map_err(|e| CliError::Usage(e.to_string()))?;
            writeln!(out, "{value}")?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_selftest(a: SelftestArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    if a.n_max < 2 || a.d_max < 1 {
        return Err(CliError::Usage(format!("need --n-max >= 2 and --d-max >= 1, got {} and {}", a.n_max, a.d_max)));
    }
    let reports = [sweep_solver(a.n_max, a.d_max), sweep_theorem(a.n_max, a.d_max)];
    match a.format {
        RecordFormat::Text => {
            for r in &reports {
                writeln!(out, "{r}")?;
                for m in r.mismatches.iter().take(20) {
                    writeln!(out, "  {m}")?;
                }
            }
            let total: usize = reports.iter().map(|r| r.mismatches.len()).sum();
            writeln!(out, "mismatches {total}")?;
        }
        RecordFormat::Json => {
            let value = serde_json::to_value(&reports).map_err(|e| CliError::Usage(e.to_string()))?;
            writeln!(out, "{value}")?;
        }
    }
    Ok(if reports.iter().all(|r| r.passed()) { EXIT_OK } else { EXIT_FAILURE })
}
