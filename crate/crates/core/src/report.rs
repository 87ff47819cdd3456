//! Text rendering: the per-file quality report and the trajectory report.
//!
//! Display rounding is half away from zero, applied to the shortest decimal
//! form of a value (the digits `{}` would print), so a ratio such as 0.015
//! shows as `0.02` regardless of the binary approximation underneath.

use std::fmt::Write as _;

use crate::history::Trajectory;
use crate::metrics::{classify_module, compute_metrics, improvement, ModuleStatus, Verdict};
use crate::scanner::SourceStats;
use crate::trajectory::{
    classify_trend, effort, fit_polynomial, instantaneous_rate, interval_rates, secant_rate, EffortEstimate, PolyFit,
    RateEstimate, RateMethod, Series, TrajectoryError, TrendClass,
};

/// Rounds `value` half away from zero to `decimals` places.
pub fn round_half_away(value: f64, decimals: usize) -> String {
    if !value.is_finite() {
        return value.to_string();
    }
    let sci = format!("{:e}", value.abs());
    let (mantissa, exponent) = sci.split_once('e').expect("`{:e}` always has an exponent");
    let exponent: i64 = exponent.parse().expect("integer exponent");
    let digits: Vec<u8> = mantissa.bytes().filter(|b| b.is_ascii_digit()).map(|b| b - b'0').collect();

    // value = 0.d0 d1 d2 ... * 10^(exponent + 1)
    let keep = exponent + 1 + decimals as i64;
    let mut kept: Vec<u8> =
        if keep <= 0 { Vec::new() } else { (0..keep as usize).map(|i| digits.get(i).copied().unwrap_or(0)).collect() };
    let round_digit = if keep < 0 { 0 } else { digits.get(keep as usize).copied().unwrap_or(0) };
    if round_digit >= 5 {
        let mut i = kept.len();
        loop {
            if i == 0 {
                kept.insert(0, 1);
                break;
            }
            i -= 1;
            if kept[i] == 9 {
                kept[i] = 0;
            } else {
                kept[i] += 1;
                break;
            }
        }
    }
    while kept.len() < decimals + 1 {
        kept.insert(0, 0);
    }
    let split = kept.len() - decimals;
    let mut out = String::new();
    if value < 0.0 && kept.iter().any(|d| *d != 0) {
        out.push('-');
    }
    out.extend(kept[..split].iter().map(|d| char::from(b'0' + d)));
    if decimals > 0 {
        out.push('.');
        out.extend(kept[split..].iter().map(|d| char::from(b'0' + d)));
    }
    out
}

/// Two-decimal display used for EL% and X.
pub fn fmt_2dp(value: f64) -> String {
    round_half_away(value, 2)
}

/// Up to six decimals with trailing zeros dropped; used for times, rates and
/// effort.
pub fn fmt_short(value: f64) -> String {
    let s = round_half_away(value, 6);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" || s.is_empty() {
        "0".to_owned()
    } else {
        s.to_owned()
    }
}

fn fmt_signed_2dp(value: f64) -> String {
    let s = fmt_2dp(value);
    if s.starts_with('-') || s == "0.00" {
        s
    } else {
        format!("+{s}")
    }
}

/// The eight-line per-file report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportRendering {
    pub lines: Vec<String>,
}

impl ReportRendering {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for line in &self.lines {
            out.push_str(line);
            out.push('\n');
        }
        out
    }
}

/// Renders the census and error count. With `loc = 0` the last two lines
/// read `undefined (loc = 0)`.
pub fn render_scan_report(stats: &SourceStats, error_count: u64) -> ReportRendering {
    let (el, x) = match compute_metrics(error_count, stats.loc) {
        Ok(m) => (fmt_2dp(m.error_level_percent), fmt_2dp(m.degree_of_excellence)),
        Err(_) => ("undefined (loc = 0)".to_owned(), "undefined (loc = 0)".to_owned()),
    };
    ReportRendering {
        lines: vec![
            format!("The number of lines in the file is : {}", stats.total_lines),
            format!("Number of comment lines is : {}", stats.comment_lines),
            format!("The number of for loops is : {}", stats.for_count),
            format!("The number of while loops is : {}", stats.while_count),
            format!("Number of errors = {error_count}"),
            format!("loc = {}", stats.loc),
            format!("Error level w.r.t LOC = {el}"),
            format!("Quality Level or Degree of excellence = {x}"),
        ],
    }
}

pub fn render_verdict(verdict: &Verdict) -> String {
    match verdict.status {
        ModuleStatus::Faulty => format!("Module verdict: faulty (errors exceed threshold {})", verdict.threshold),
        ModuleStatus::NonFaulty => format!("Module verdict: non-faulty (threshold {})", verdict.threshold),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReportOptions {
    pub alpha: f64,
    pub fit_degree: Option<usize>,
    pub tolerance: f64,
    pub threshold: u64,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            alpha: 1.0,
            fit_degree: None,
            tolerance: crate::trajectory::DEFAULT_TREND_TOLERANCE,
            threshold: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SnapshotRow {
    pub t_hours: f64,
    pub file: String,
    pub errors: u64,
    pub loc: u64,
    pub el_percent: f64,
    pub x: f64,
}

/// Rate and effort figures; present once a trajectory has two snapshots.
#[derive(Debug, Clone, PartialEq)]
pub struct RateSummary {
    pub improvement: f64,
    pub average: RateEstimate,
    pub instantaneous: RateEstimate,
    pub trend: TrendClass,
    pub average_effort: EffortEstimate,
    pub instantaneous_effort: EffortEstimate,
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum ReportError {
    #[error("project `{0}` has no snapshots")]
    EmptyTrajectory(String),
    #[error(transparent)]
    Trajectory(#[from] TrajectoryError),
}

/// Everything the text, CSV and SVG outputs show, computed once.
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryReport {
    pub project: String,
    pub options: ReportOptions,
    pub rows: Vec<SnapshotRow>,
    /// Secant rate of each consecutive pair; `interval_rates[i]` ends at `rows[i + 1]`.
    pub interval_rates: Vec<RateEstimate>,
    pub rates: Option<RateSummary>,
    pub fit: Option<Result<PolyFit, TrajectoryError>>,
    pub verdict: Verdict,
}

impl TrajectoryReport {
    pub fn build(traj: &Trajectory, options: ReportOptions) -> Result<Self, ReportError> {
        if !(options.alpha.is_finite() && options.alpha > 0.0) {
            return Err(TrajectoryError::InvalidCoefficient(options.alpha).into());
        }
        if !(options.tolerance.is_finite() && options.tolerance >= 0.0) {
            return Err(TrajectoryError::InvalidTolerance(options.tolerance).into());
        }
        if let Some(d) = options.fit_degree {
            if !(1..=3).contains(&d) {
                return Err(TrajectoryError::InvalidDegree(d).into());
            }
        }
        let last = traj.last().ok_or_else(|| ReportError::EmptyTrajectory(traj.project_id().to_owned()))?;
        let rows = traj
            .snapshots()
            .iter()
            .map(|s| SnapshotRow {
                t_hours: s.t_hours,
                file: s.stats.file_name.clone(),
                errors: s.error_count,
                loc: s.stats.loc,
                el_percent: s.metrics.error_level_percent,
                x: s.metrics.degree_of_excellence,
            })
            .collect::<Vec<_>>();
        let series = Series::from(traj);
        let rates = if series.len() >= 2 {
            let (first, latest) = (&rows[0], &rows[rows.len() - 1]);
            let average = secant_rate(&series, first.t_hours, latest.t_hours)?;
            let instantaneous = instantaneous_rate(&series, latest.t_hours)?;
            Some(RateSummary {
                improvement: improvement(first.x, latest.x),
                average,
                instantaneous,
                trend: classify_trend(&series, options.tolerance)?,
                average_effort: effort(options.alpha, average)?,
                instantaneous_effort: effort(options.alpha, instantaneous)?,
            })
        } else {
            None
        };
        Ok(TrajectoryReport {
            project: traj.project_id().to_owned(),
            options,
            interval_rates: interval_rates(&series),
            rows,
            rates,
            fit: options.fit_degree.map(|d| fit_polynomial(&series, d)),
            verdict: classify_module(last.error_count, options.threshold),
        })
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let latest = self.rows.last().expect("report has at least one row");
        let n = self.rows.len();
        let _ = writeln!(out, "Project: {}", self.project);
        let _ = writeln!(out, "Snapshots: {n}");
        let _ = writeln!(out);
        let _ =
            writeln!(out, "{:>10}  {:>8}  {:>8}  {:>8}  {:>8}  file", "t (hours)", "errors", "loc", "EL (%)", "X (%)");
        for row in &self.rows {
            let _ = writeln!(
                out,
                "{:>10}  {:>8}  {:>8}  {:>8}  {:>8}  {}",
                fmt_short(row.t_hours),
                row.errors,
                row.loc,
                fmt_2dp(row.el_percent),
                fmt_2dp(row.x),
                row.file
            );
        }
        let _ = writeln!(out);
        let _ = writeln!(out, "Latest snapshot (t = {} h):", fmt_short(latest.t_hours));
        let _ = writeln!(out, "Error level w.r.t LOC = {}", fmt_2dp(latest.el_percent));
        let _ = writeln!(out, "Quality Level or Degree of excellence = {}", fmt_2dp(latest.x));
        let _ = writeln!(out, "{}", render_verdict(&self.verdict));
        let _ = writeln!(out);

        match &self.rates {
            None => {
                let _ = writeln!(out, "Rates of improvement: insufficient data ({n} snapshot, need 2)");
                let _ = writeln!(out, "Effort: insufficient data");
            }
            Some(r) => {
                let (t0, t1) = r.average.interval;
                let _ = writeln!(
                    out,
                    "Improvement of X over [{}, {}] h: {} points",
                    fmt_short(t0),
                    fmt_short(t1),
                    fmt_signed_2dp(r.improvement)
                );
                let _ = writeln!(out, "Interval rates (points/hour):");
                for rate in &self.interval_rates {
                    let _ = writeln!(
                        out,
                        "  [{}, {}] h: {}",
                        fmt_short(rate.interval.0),
                        fmt_short(rate.interval.1),
                        fmt_short(rate.value)
                    );
                }
                let _ = writeln!(out, "Average rate of improvement: {} points/hour", fmt_short(r.average.value));
                let _ = writeln!(
                    out,
                    "Instantaneous rate at t = {} h ({}): {} points/hour",
                    fmt_short(t1),
                    method_name(r.instantaneous.method),
                    fmt_short(r.instantaneous.value)
                );
                let _ = writeln!(out, "Trend: {} (tolerance {})", r.trend, self.options.tolerance);
                let _ = writeln!(
                    out,
                    "Effort (alpha = {}): average {}, instantaneous {}",
                    fmt_short(self.options.alpha),
                    fmt_short(r.average_effort.effort),
                    fmt_short(r.instantaneous_effort.effort)
                );
            }
        }

        if let Some(fit) = &self.fit {
            let _ = writeln!(out);
            match fit {
                Ok(fit) => {
                    let terms: Vec<String> = fit
                        .coefficients
                        .iter()
                        .enumerate()
                        .map(|(k, c)| match k {
                            0 => format!("{c:.6}"),
                            1 => format!("{c:.6} t"),
                            _ => format!("{c:.6} t^{k}"),
                        })
                        .collect();
                    let _ = writeln!(out, "Polynomial fit (degree {}): X(t) = {}", fit.degree, terms.join(" + "));
                    let _ = writeln!(out, "Residual sum of squares: {:e}", fit.residual_sum_of_squares);
                    if let Ok(rate) = fit.rate_at(latest.t_hours) {
                        let _ = writeln!(
                            out,
                            "Fit rate at t = {} h: {} points/hour",
                            fmt_short(latest.t_hours),
                            fmt_short(rate.value)
                        );
                    }
                }
                Err(e) => {
                    let _ = writeln!(out, "Polynomial fit: {e}");
                }
            }
        }
        out
    }
}

fn method_name(method: RateMethod) -> &'static str {
    match method {
        RateMethod::Secant => "secant",
        RateMethod::CentralDifference => "central difference",
        RateMethod::OneSidedDifference => "one-sided difference",
        RateMethod::FitDerivative => "fit derivative",
    }
}
