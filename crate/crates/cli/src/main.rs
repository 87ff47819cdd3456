use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use chrono::{DateTime, Utc};
use clap::{Parser, Subcommand, ValueEnum};
use excel_cli::{
    cmd_record, cmd_report, cmd_scan, interactive, PatternArgs, RecordArgs, ReportArgs, ReportFormat, ScanArgs,
};
use excel_core::report::ReportOptions;
use excel_core::trajectory::DEFAULT_TREND_TOLERANCE;

/// Comment-aware LOC, compiler error counts, Degree of Excellence and its
/// rate of improvement over time.
#[derive(Parser, Debug)]
#[command(name = "excel", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug)]
struct PatternFlags {
    /// Regular expression a log line must match to count as one error.
    #[arg(long = "error-pattern", value_name = "REGEX")]
    error_pattern: Option<String>,
    /// Match the error pattern case-sensitively.
    #[arg(long)]
    case_sensitive: bool,
}

impl From<PatternFlags> for PatternArgs {
    fn from(f: PatternFlags) -> Self {
        PatternArgs { pattern: f.error_pattern, case_sensitive: f.case_sensitive }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Format {
    Text,
    Csv,
    Svg,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Scan a source file and print its quality report.
    Scan {
        src: PathBuf,
        /// Compiler log to count errors in; without it errors = 0.
        #[arg(long)]
        log: Option<PathBuf>,
        #[command(flatten)]
        pattern: PatternFlags,
        /// Also print the faulty/non-faulty verdict for this error threshold.
        #[arg(long, value_name = "N")]
        threshold: Option<u64>,
    },
    /// Scan a source file and append a snapshot to the history store.
    Record {
        src: PathBuf,
        #[arg(long)]
        project: String,
        #[arg(long, env = "EXCEL_STORE")]
        store: PathBuf,
        #[arg(long)]
        log: Option<PathBuf>,
        #[command(flatten)]
        pattern: PatternFlags,
        /// Hours since the project's first snapshot; defaults from the wall clock.
        #[arg(long = "t-hours", value_name = "H")]
        t_hours: Option<f64>,
        /// Wall-clock stamp to store (RFC 3339); defaults to now.
        #[arg(long = "wall-clock", value_name = "RFC3339")]
        wall_clock: Option<DateTime<Utc>>,
    },
    /// Report rates of improvement, trend and effort for a project.
    Report {
        #[arg(long)]
        project: String,
        #[arg(long, env = "EXCEL_STORE")]
        store: PathBuf,
        /// Developer-ability coefficient in E = alpha * dX/dt.
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        /// Also fit X(t) with a polynomial of this degree (1-3).
        #[arg(long = "fit-degree", value_name = "D")]
        fit_degree: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Slope tolerance (points/hour) for trend classification.
        #[arg(long, default_value_t = DEFAULT_TREND_TOLERANCE)]
        tolerance: f64,
        /// Error threshold above which the latest snapshot is faulty.
        #[arg(long, default_value_t = 0)]
        threshold: u64,
    },
    /// Prompt for file names and print reports until told to stop.
    Interactive {
        #[command(flatten)]
        pattern: PatternFlags,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let mut err = io::stderr();
    let result = match cli.command {
        Command::Scan { src, log, pattern, threshold } => cmd_scan(
            &ScanArgs { source: src, log, pattern: pattern.into(), verdict_threshold: threshold },
            &mut out,
            &mut err,
        ),
        Command::Record { src, project, store, log, pattern, t_hours, wall_clock } => cmd_record(
            &RecordArgs { source: src, log, pattern: pattern.into(), project, store, t_hours, wall_clock },
            &mut out,
            &mut err,
        ),
        Command::Report { project, store, alpha, fit_degree, format, tolerance, threshold } => cmd_report(
            &ReportArgs {
                project,
                store,
                options: ReportOptions { alpha, fit_degree, tolerance, threshold },
                format: match format {
                    Format::Text => ReportFormat::Text,
                    Format::Csv => ReportFormat::Csv,
                    Format::Svg => ReportFormat::Svg,
                },
            },
            &mut out,
            &mut err,
        ),
        Command::Interactive { pattern } => interactive(&pattern.into(), &mut io::stdin().lock(), &mut out, &mut err),
    };
    let _ = out.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
