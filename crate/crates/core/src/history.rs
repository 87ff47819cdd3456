//! Append-only snapshot store.
//!
//! The store is a UTF-8 JSON Lines file, one snapshot per line:
//!
//! ```text
//! {"project":"demo","wall_clock":"2026-01-05T09:30:00Z","t_hours":0.0,"file":"four.c",
//!  "total_lines":675,"comment_lines":67,"blank_lines":0,"loc":608,"for_count":20,
//!  "while_count":4,"errors":0,"el_percent":0.0,"x":100.0}
//! ```
//!
//! (shown wrapped; each record is a single line on disk). Floats are written
//! in their shortest round-trip form, so reloading reproduces every value
//! bit for bit. Each append is one `write` of a complete line followed by
//! `fsync`, so an interrupted append can only damage the record being
//! written. A store has a single writer; callers must not append to the same
//! file concurrently.

use std::fs::{self, OpenOptions};
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::metrics::{compute_metrics, MetricsError, QualityMetrics};
use crate::scanner::SourceStats;

#[derive(Debug, Error)]
pub enum HistoryError {
    #[error("cannot access store {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("corrupt store {path}, line {line}: {message}")]
    Corrupt { path: PathBuf, line: usize, message: String },
    #[error("snapshot for project `{project}` at t = {attempted} h is not after the last stored t = {last} h")]
    OutOfOrder { project: String, last: f64, attempted: f64 },
    #[error("invalid snapshot: {0}")]
    Invalid(String),
    #[error(transparent)]
    Metrics(#[from] MetricsError),
}

/// One timestamped measurement of a source file.
#[derive(Debug, Clone, PartialEq)]
pub struct QualitySnapshot {
    pub project_id: String,
    pub wall_clock: DateTime<Utc>,
    /// Hours since the project's first snapshot.
    pub t_hours: f64,
    pub stats: SourceStats,
    pub error_count: u64,
    pub metrics: QualityMetrics,
}

impl QualitySnapshot {
    /// Builds a snapshot, deriving its metrics from the counts. The scanner's
    /// unterminated-comment warning is not persisted and is cleared here.
    pub fn new(
        project_id: &str,
        wall_clock: DateTime<Utc>,
        t_hours: f64,
        mut stats: SourceStats,
        error_count: u64,
    ) -> Result<Self, HistoryError> {
        if project_id.is_empty() {
            return Err(HistoryError::Invalid("project id is empty".into()));
        }
        if !t_hours.is_finite() || t_hours < 0.0 {
            return Err(HistoryError::Invalid(format!("t_hours must be finite and >= 0, got {t_hours}")));
        }
        if stats.loc != stats.total_lines.saturating_sub(stats.comment_lines) || stats.comment_lines > stats.total_lines
        {
            return Err(HistoryError::Invalid("line counts are inconsistent".into()));
        }
        stats.unterminated_block_comment = false;
        let metrics = compute_metrics(error_count, stats.loc)?;
        Ok(QualitySnapshot { project_id: project_id.to_owned(), wall_clock, t_hours, stats, error_count, metrics })
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Record {
    project: String,
    wall_clock: DateTime<Utc>,
    t_hours: f64,
    file: String,
    total_lines: u64,
    comment_lines: u64,
    blank_lines: u64,
    loc: u64,
    for_count: u64,
    while_count: u64,
    errors: u64,
    el_percent: f64,
    x: f64,
}

impl From<&QualitySnapshot> for Record {
    fn from(s: &QualitySnapshot) -> Self {
        Record {
            project: s.project_id.clone(),
            wall_clock: s.wall_clock,
            t_hours: s.t_hours,
            file: s.stats.file_name.clone(),
            total_lines: s.stats.total_lines,
            comment_lines: s.stats.comment_lines,
            blank_lines: s.stats.blank_lines,
            loc: s.stats.loc,
            for_count: s.stats.for_count,
            while_count: s.stats.while_count,
            errors: s.error_count,
            el_percent: s.metrics.error_level_percent,
            x: s.metrics.degree_of_excellence,
        }
    }
}

impl Record {
    /// Rebuilds the snapshot and checks that the stored metrics re-derive
    /// from the stored counts.
    fn into_snapshot(self) -> Result<QualitySnapshot, String> {
        let stats = SourceStats {
            file_name: self.file,
            total_lines: self.total_lines,
            comment_lines: self.comment_lines,
            blank_lines: self.blank_lines,
            loc: self.loc,
            for_count: self.for_count,
            while_count: self.while_count,
            unterminated_block_comment: false,
        };
        let snapshot = QualitySnapshot::new(&self.project, self.wall_clock, self.t_hours, stats, self.errors)
            .map_err(|e| e.to_string())?;
        if snapshot.metrics.error_level_percent.to_bits() != self.el_percent.to_bits()
            || snapshot.metrics.degree_of_excellence.to_bits() != self.x.to_bits()
        {
            return Err(format!(
                "stored metrics (el_percent {}, x {}) do not match errors = {} over loc = {}",
                self.el_percent, self.x, self.errors, self.loc
            ));
        }
        Ok(snapshot)
    }
}

/// Time-ordered snapshots of one project.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    project_id: String,
    snapshots: Vec<QualitySnapshot>,
}

impl Trajectory {
    pub fn new(project_id: &str, snapshots: Vec<QualitySnapshot>) -> Result<Self, HistoryError> {
        if let Some(s) = snapshots.iter().find(|s| s.project_id != project_id) {
            return Err(HistoryError::Invalid(format!(
                "snapshot of project `{}` in trajectory of `{project_id}`",
                s.project_id
            )));
        }
        for w in snapshots.windows(2) {
            if w[1].t_hours <= w[0].t_hours {
                return Err(HistoryError::OutOfOrder {
                    project: project_id.to_owned(),
                    last: w[0].t_hours,
                    attempted: w[1].t_hours,
                });
            }
        }
        Ok(Trajectory { project_id: project_id.to_owned(), snapshots })
    }

    pub fn project_id(&self) -> &str {
        &self.project_id
    }

    pub fn snapshots(&self) -> &[QualitySnapshot] {
        &self.snapshots
    }

    pub fn len(&self) -> usize {
        self.snapshots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.snapshots.is_empty()
    }

    pub fn first(&self) -> Option<&QualitySnapshot> {
        self.snapshots.first()
    }

    pub fn last(&self) -> Option<&QualitySnapshot> {
        self.snapshots.last()
    }
}

#[derive(Debug, Clone)]
pub struct SnapshotStore {
    path: PathBuf,
}

impl SnapshotStore {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        SnapshotStore { path: path.into() }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Reads every record. A missing file is an empty store.
    pub fn load_all(&self) -> Result<Vec<QualitySnapshot>, HistoryError> {
        let text = match fs::read(&self.path) {
            Ok(bytes) => String::from_utf8(bytes).map_err(|e| {
                let offset = e.utf8_error().valid_up_to();
                let line = e.as_bytes()[..offset].iter().filter(|b| **b == b'\n').count() + 1;
                self.corrupt(line, "invalid UTF-8".into())
            })?,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(Vec::new()),
            Err(source) => return Err(HistoryError::Io { path: self.path.clone(), source }),
        };
        let mut out = Vec::new();
        for (idx, line) in text.split('\n').enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let record: Record = serde_json::from_str(line).map_err(|e| self.corrupt(idx + 1, e.to_string()))?;
            out.push(record.into_snapshot().map_err(|m| self.corrupt(idx + 1, m))?);
        }
        Ok(out)
    }

    pub fn load_trajectory(&self, project_id: &str) -> Result<Trajectory, HistoryError> {
        let snapshots: Vec<_> = self.load_all()?.into_iter().filter(|s| s.project_id == project_id).collect();
        Trajectory::new(project_id, snapshots)
    }

    /// Appends one record after checking it is later than the project's last.
    pub fn append(&self, snapshot: &QualitySnapshot) -> Result<(), HistoryError> {
        let recheck = QualitySnapshot::new(
            &snapshot.project_id,
            snapshot.wall_clock,
            snapshot.t_hours,
            snapshot.stats.clone(),
            snapshot.error_count,
        )?;
        if recheck.metrics != snapshot.metrics {
            return Err(HistoryError::Invalid("metrics do not match the snapshot's counts".into()));
        }
        let existing = self.load_all()?;
        if let Some(last) = existing.iter().rev().find(|s| s.project_id == snapshot.project_id) {
            if snapshot.t_hours <= last.t_hours {
                return Err(HistoryError::OutOfOrder {
                    project: snapshot.project_id.clone(),
                    last: last.t_hours,
                    attempted: snapshot.t_hours,
                });
            }
        }
        let mut line = serde_json::to_string(&Record::from(snapshot))
            .map_err(|e| HistoryError::Invalid(format!("cannot encode snapshot: {e}")))?;
        line.push('\n');
        let io_err = |source| HistoryError::Io { path: self.path.clone(), source };
        let mut file = OpenOptions::new().create(true).append(true).open(&self.path).map_err(io_err)?;
        file.write_all(line.as_bytes()).map_err(io_err)?;
        file.sync_data().map_err(io_err)
    }

    /// Default time coordinate for a new snapshot taken at `now`: 0 for a
    /// project's first record, otherwise the wall-clock hours elapsed since
    /// the first record plus that record's `t_hours`.
    pub fn default_t_hours(&self, project_id: &str, now: DateTime<Utc>) -> Result<f64, HistoryError> {
        let all = self.load_all()?;
        Ok(match all.iter().find(|s| s.project_id == project_id) {
            None => 0.0,
            Some(first) => {
                let elapsed = now.signed_duration_since(first.wall_clock);
                first.t_hours + elapsed.num_milliseconds() as f64 / 3_600_000.0
            }
        })
    }

    fn corrupt(&self, line: usize, message: String) -> HistoryError {
        HistoryError::Corrupt { path: self.path.clone(), line, message }
    }
}

pub fn append_snapshot(store_path: &Path, snapshot: &QualitySnapshot) -> Result<(), HistoryError> {
    SnapshotStore::new(store_path).append(snapshot)
}

pub fn load_trajectory(store_path: &Path, project_id: &str) -> Result<Trajectory, HistoryError> {
    SnapshotStore::new(store_path).load_trajectory(project_id)
}
