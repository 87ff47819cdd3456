//! Software quality measurement built around the Degree of Excellence.
//!
//! The crate is a small pipeline:
//!
//! - [`scanner`] classifies every physical line of a C-like source file as
//!   code, comment or blank, and counts `for`/`while` keywords.
//! - [`diaglog`] counts error lines in a compiler diagnostics log.
//! - [`metrics`] turns those counts into the Error Level and the Degree of
//!   Excellence (`X = 100 - EL%`).
//! - [`history`] persists timestamped snapshots in a JSON Lines store.
//! - [`trajectory`] estimates `dX/dt` (secant, finite difference, polynomial
//!   fit), the developer effort `E = alpha * dX/dt`, and the trend shape.
//! - [`report`] and [`chart`] render the text report, CSV and SVG outputs.
//!
//! Batch scanning runs on rayon when the `parallel` feature is enabled (the
//! default) and falls back to a sequential loop otherwise.

pub mod batch;
pub mod chart;
pub mod diaglog;
pub mod history;
pub mod metrics;
pub mod report;
pub mod scanner;
pub mod trajectory;

pub use diaglog::{count_errors, ErrorPattern, ErrorReport, PatternError};
pub use history::{HistoryError, QualitySnapshot, SnapshotStore, Trajectory};
pub use metrics::{classify_module, compute_metrics, improvement, MetricsError, QualityMetrics, Verdict};
pub use scanner::{classify_lines, scan_bytes, scan_source, LineClass, ScanError, SourceStats};
pub use trajectory::{
    classify_trend, effort, fit_polynomial, instantaneous_rate, secant_rate, EffortEstimate, PolyFit, RateEstimate,
    RateMethod, Sample, Series, TrajectoryError, TrendClass,
};
