//! Error Level, Degree of Excellence and the faulty-module verdict.
//!
//! `EL = errors / LOC`, `EL% = 100 * EL`, `X = 100 - EL%`. Values are kept at
//! full precision; rounding for display happens in [`crate::report`]. X is
//! not clamped, so a file with more errors than lines gets a negative X.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MetricsError {
    #[error("error level is undefined for loc = 0 ({errors} errors)")]
    ZeroLoc { errors: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QualityMetrics {
    pub error_level_fraction: f64,
    pub error_level_percent: f64,
    pub degree_of_excellence: f64,
}

pub fn compute_metrics(error_count: u64, loc: u64) -> Result<QualityMetrics, MetricsError> {
    if loc == 0 {
        return Err(MetricsError::ZeroLoc { errors: error_count });
    }
    let (errors, loc) = (error_count as f64, loc as f64);
    // A single rounding of the exact ratio 100*e/l keeps decimal ties such as
    // 0.015 representable by their shortest form, which the display rounding
    // relies on.
    let error_level_percent = errors * 100.0 / loc;
    Ok(QualityMetrics {
        error_level_fraction: errors / loc,
        error_level_percent,
        degree_of_excellence: 100.0 - error_level_percent,
    })
}

/// `x_final - x_initial`, in percentage points.
pub fn improvement(x_initial: f64, x_final: f64) -> f64 {
    x_final - x_initial
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ModuleStatus {
    Faulty,
    NonFaulty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Verdict {
    pub status: ModuleStatus,
    pub threshold: u64,
}

/// A module is faulty when its error count exceeds `threshold` (0 by default
/// in the CLI, i.e. any compiler error).
pub fn classify_module(error_count: u64, threshold: u64) -> Verdict {
    let status = if error_count > threshold { ModuleStatus::Faulty } else { ModuleStatus::NonFaulty };
    Verdict { status, threshold }
}
