//! Command implementations behind the `excel` binary.
//!
//! Each command writes its normal output to `out`, notices and warnings to
//! `err`, and returns a [`CliError`] carrying a stable exit code on failure.

use std::fs;
use std::io::{self, BufRead, Write};
use std::path::{Path, PathBuf};

use chrono::{DateTime, Utc};
use excel_core::chart::render_svg;
use excel_core::diaglog::{count_errors, ErrorPattern, PatternError, DEFAULT_ERROR_PATTERN};
use excel_core::history::{HistoryError, QualitySnapshot, SnapshotStore};
use excel_core::metrics::{classify_module, MetricsError};
use excel_core::report::{render_scan_report, render_verdict, ReportError, ReportOptions, TrajectoryReport};
use excel_core::scanner::{scan_bytes, ScanError, SourceStats};
use thiserror::Error;

pub mod exit {
    //! Process exit codes. Success is exactly 0.
    pub const OK: i32 = 0;
    pub const OUTPUT: i32 = 1;
    /// Reserved for argument errors reported by the parser.
    pub const USAGE: i32 = 2;
    pub const MISSING_FILE: i32 = 3;
    pub const SCAN: i32 = 4;
    pub const PATTERN: i32 = 5;
    pub const ZERO_LOC: i32 = 6;
    pub const STORE: i32 = 7;
    pub const NO_DATA: i32 = 8;
    pub const INVALID_ARGUMENT: i32 = 9;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {what} `{path}`: {source}")]
    Read {
        what: &'static str,
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{path}: {source}")]
    Scan { path: PathBuf, source: ScanError },
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error("{0}")]
    ZeroLoc(MetricsError),
    #[error(transparent)]
    Store(HistoryError),
    #[error("{0}")]
    NoData(String),
    #[error("{0}")]
    InvalidArgument(String),
    #[error("cannot write output: {0}")]
    Output(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Read { .. } => exit::MISSING_FILE,
            CliError::Scan { .. } => exit::SCAN,
            CliError::Pattern(_) => exit::PATTERN,
            CliError::ZeroLoc(_) => exit::ZERO_LOC,
            CliError::Store(_) => exit::STORE,
            CliError::NoData(_) => exit::NO_DATA,
            CliError::InvalidArgument(_) => exit::INVALID_ARGUMENT,
            CliError::Output(_) => exit::OUTPUT,
        }
    }
}

impl From<HistoryError> for CliError {
    fn from(e: HistoryError) -> Self {
        match e {
            HistoryError::Metrics(m) => CliError::ZeroLoc(m),
            HistoryError::Invalid(msg) => CliError::InvalidArgument(msg),
            other => CliError::Store(other),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct PatternArgs {
    pub pattern: Option<String>,
    pub case_sensitive: bool,
}

impl PatternArgs {
    pub fn compile(&self) -> Result<ErrorPattern, CliError> {
        match &self.pattern {
            Some(p) => Ok(ErrorPattern::new(p, self.case_sensitive)?),
            None => Ok(ErrorPattern::new(DEFAULT_ERROR_PATTERN, self.case_sensitive)?),
        }
    }
}

fn display_name(path: &Path) -> String {
    path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_else(|| path.display().to_string())
}

/// Reads and scans one source file.
pub fn scan_file(path: &Path) -> Result<SourceStats, CliError> {
    let bytes =
        fs::read(path).map_err(|source| CliError::Read { what: "source file", path: path.to_owned(), source })?;
    scan_bytes(&bytes, &display_name(path)).map_err(|source| CliError::Scan { path: path.to_owned(), source })
}

/// Error count of an optional log; a missing `--log` means 0 errors.
pub fn log_errors(log: Option<&Path>, pattern: &ErrorPattern, err: &mut dyn Write) -> Result<u64, CliError> {
    match log {
        None => {
            writeln!(err, "note: no compiler log given; assuming 0 errors")?;
            Ok(0)
        }
        Some(path) => {
            let bytes =
                fs::read(path).map_err(|source| CliError::Read { what: "log file", path: path.to_owned(), source })?;
            let text = String::from_utf8_lossy(&bytes);
            Ok(count_errors(&text, &display_name(path), pattern).error_count)
        }
    }
}

fn warn_unterminated(stats: &SourceStats, err: &mut dyn Write) -> io::Result<()> {
    if stats.unterminated_block_comment {
        writeln!(err, "warning: {} ends inside an unterminated block comment", stats.file_name)?;
    }
    Ok(())
}

#[derive(Debug, Clone, Default)]
pub struct ScanArgs {
    pub source: PathBuf,
    pub log: Option<PathBuf>,
    pub pattern: PatternArgs,
    /// Print the faulty/non-faulty verdict for this threshold after the report.
    pub verdict_threshold: Option<u64>,
}

pub fn cmd_scan(args: &ScanArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let pattern = args.pattern.compile()?;
    let stats = scan_file(&args.source)?;
    warn_unterminated(&stats, err)?;
    let errors = log_errors(args.log.as_deref(), &pattern, err)?;
    out.write_all(render_scan_report(&stats, errors).to_text().as_bytes())?;
    if let Some(threshold) = args.verdict_threshold {
        writeln!(out, "{}", render_verdict(&classify_module(errors, threshold)))?;
    }
    if stats.loc == 0 {
        return Err(CliError::ZeroLoc(MetricsError::ZeroLoc { errors }));
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct RecordArgs {
    pub source: PathBuf,
    pub log: Option<PathBuf>,
    pub pattern: PatternArgs,
    pub project: String,
    pub store: PathBuf,
    pub t_hours: Option<f64>,
    pub wall_clock: Option<DateTime<Utc>>,
}

pub fn cmd_record(args: &RecordArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let pattern = args.pattern.compile()?;
    let stats = scan_file(&args.source)?;
    warn_unterminated(&stats, err)?;
    let errors = log_errors(args.log.as_deref(), &pattern, err)?;
    let store = SnapshotStore::new(&args.store);
    let now = args.wall_clock.unwrap_or_else(Utc::now);
    let t_hours = match args.t_hours {
        Some(t) => t,
        None => store.default_t_hours(&args.project, now)?,
    };
    let snapshot = QualitySnapshot::new(&args.project, now, t_hours, stats, errors)?;
    store.append(&snapshot)?;
    writeln!(
        out,
        "Recorded {} for project `{}` at t = {} h: errors = {}, loc = {}, X = {}",
        snapshot.stats.file_name,
        snapshot.project_id,
        excel_core::report::fmt_short(snapshot.t_hours),
        snapshot.error_count,
        snapshot.stats.loc,
        excel_core::report::fmt_2dp(snapshot.metrics.degree_of_excellence),
    )?;
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Text,
    Csv,
    Svg,
}

#[derive(Debug, Clone)]
pub struct ReportArgs {
    pub project: String,
    pub store: PathBuf,
    pub options: ReportOptions,
    pub format: ReportFormat,
}

pub fn cmd_report(args: &ReportArgs, out: &mut dyn Write, _err: &mut dyn Write) -> Result<(), CliError> {
    let traj = SnapshotStore::new(&args.store).load_trajectory(&args.project)?;
    let report = TrajectoryReport::build(&traj, args.options).map_err(|e| match e {
        ReportError::EmptyTrajectory(p) => CliError::NoData(format!("no snapshots recorded for project `{p}`")),
        ReportError::Trajectory(t) => CliError::InvalidArgument(t.to_string()),
    })?;
    match args.format {
        ReportFormat::Text => out.write_all(report.render_text().as_bytes())?,
        ReportFormat::Csv => out.write_all(&render_csv(&report)?)?,
        ReportFormat::Svg => {
            let points: Vec<(f64, f64)> = report.rows.iter().map(|r| (r.t_hours, r.x)).collect();
            out.write_all(render_svg(&format!("Degree of Excellence: {}", report.project), &points).as_bytes())?
        }
    }
    Ok(())
}

/// One row per snapshot. `rate_from_previous` is the secant rate of the
/// interval ending at that snapshot, empty on the first row.
pub fn render_csv(report: &TrajectoryReport) -> Result<Vec<u8>, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| CliError::Output(io::Error::other(e));
    w.write_record(["t_hours", "x", "el_percent", "errors", "loc", "rate_from_previous"]).map_err(csv_err)?;
    for (i, row) in report.rows.iter().enumerate() {
        let rate = if i == 0 { String::new() } else { report.interval_rates[i - 1].value.to_string() };
        w.write_record([
            row.t_hours.to_string(),
            row.x.to_string(),
            row.el_percent.to_string(),
            row.errors.to_string(),
            row.loc.to_string(),
            rate,
        ])
        .map_err(csv_err)?;
    }
    w.into_inner().map_err(|e| CliError::Output(e.into_error()))
}

/// The prompt-driven session: source name, log name, report, repeat.
pub fn interactive(
    pattern: &PatternArgs,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), CliError> {
    let pattern = pattern.compile()?;
    let mut read_line = |out: &mut dyn Write, prompt: &str| -> Result<Option<String>, CliError> {
        write!(out, "{prompt}")?;
        out.flush()?;
        let mut line = String::new();
        if input.read_line(&mut line)? == 0 {
            writeln!(out)?;
            return Ok(None);
        }
        Ok(Some(line.trim().to_owned()))
    };
    loop {
        let Some(name) = read_line(out, "Enter the name of the file : ")? else { return Ok(()) };
        match scan_file(Path::new(&name)) {
            Err(e) => writeln!(out, "{e}")?,
            Ok(stats) => {
                writeln!(out, "File opened successfully!")?;
                warn_unterminated(&stats, err)?;
                let Some(log) = read_line(out, "Enter the name of the log file : ")? else { return Ok(()) };
                let log = (!log.is_empty()).then(|| PathBuf::from(log));
                match log_errors(log.as_deref(), &pattern, err) {
                    Ok(errors) => out.write_all(render_scan_report(&stats, errors).to_text().as_bytes())?,
                    Err(e) => writeln!(out, "{e}")?,
                }
            }
        }
        match read_line(out, "Want to continue? y/n : ")? {
            Some(answer) if answer.eq_ignore_ascii_case("y") => continue,
            _ => return Ok(()),
        }
    }
}
