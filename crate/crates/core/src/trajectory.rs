//! Rate of improvement of the Degree of Excellence and developer effort.
//!
//! All estimators work on a [`Series`] of `(t_hours, X)` samples with strictly
//! increasing time. Rates are in percentage points of X per hour.
//!
//! - [`secant_rate`]: average rate between two stored samples, no
//!   interpolation.
//! - [`instantaneous_rate`]: three-point finite difference (the derivative of
//!   the quadratic through neighbouring samples), so it is exact for
//!   quadratics on any spacing. Interior samples use both neighbours, end
//!   samples a one-sided stencil; a time between two samples gets the slope
//!   of the bracketing pair.
//! - [`fit_polynomial`]: least squares of degree 1..=3, solved through the
//!   normal equations on a shifted and scaled time axis.

use thiserror::Error;

use crate::history::Trajectory;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TrajectoryError {
    #[error("insufficient data: need at least {needed} snapshots, have {got}")]
    InsufficientData { needed: usize, got: usize },
    #[error("no snapshot at t = {t} h; available: {}", fmt_times(.available))]
    TimestampNotFound { t: f64, available: Vec<f64> },
    #[error("invalid interval: t_start = {t_start} must be before t_end = {t_end}")]
    InvalidInterval { t_start: f64, t_end: f64 },
    #[error("t = {t} h is outside the sampled range [{first}, {last}]; extrapolation is refused")]
    OutOfRange { t: f64, first: f64, last: f64 },
    #[error("sample times must be finite and strictly increasing (at index {index})")]
    Unordered { index: usize },
    #[error("polynomial degree must be 1, 2 or 3, got {0}")]
    InvalidDegree(usize),
    #[error("least-squares system is singular")]
    Singular,
    #[error("developer-ability coefficient must be finite and > 0, got {0}")]
    InvalidCoefficient(f64),
    #[error("trend tolerance must be finite and >= 0, got {0}")]
    InvalidTolerance(f64),
}

fn fmt_times(times: &[f64]) -> String {
    if times.is_empty() {
        return "none".to_owned();
    }
    times.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(", ")
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub t_hours: f64,
    pub x: f64,
}

/// X sampled over time; times are finite and strictly increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    samples: Vec<Sample>,
}

impl Series {
    pub fn new(samples: Vec<Sample>) -> Result<Self, TrajectoryError> {
        for (i, s) in samples.iter().enumerate() {
            if !s.t_hours.is_finite() || !s.x.is_finite() || (i > 0 && s.t_hours <= samples[i - 1].t_hours) {
                return Err(TrajectoryError::Unordered { index: i });
            }
        }
        Ok(Series { samples })
    }

    pub fn from_points(points: &[(f64, f64)]) -> Result<Self, TrajectoryError> {
        Series::new(points.iter().map(|&(t_hours, x)| Sample { t_hours, x }).collect())
    }

    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn times(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.t_hours).collect()
    }

    fn position(&self, t: f64) -> Option<usize> {
        self.samples.iter().position(|s| s.t_hours == t)
    }

    fn require(&self, needed: usize) -> Result<(), TrajectoryError> {
        if self.samples.len() < needed {
            Err(TrajectoryError::InsufficientData { needed, got: self.samples.len() })
        } else {
            Ok(())
        }
    }
}

impl From<&Trajectory> for Series {
    fn from(traj: &Trajectory) -> Self {
        // Trajectory already guarantees strictly increasing times.
        Series {
            samples: traj
                .snapshots()
                .iter()
                .map(|s| Sample { t_hours: s.t_hours, x: s.metrics.degree_of_excellence })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RateMethod {
    Secant,
    CentralDifference,
    OneSidedDifference,
    FitDerivative,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateEstimate {
    pub value: f64,
    pub method: RateMethod,
    /// Time span of the samples the estimate was built from.
    pub interval: (f64, f64),
}

pub fn secant_rate(series: &Series, t_i: f64, t_f: f64) -> Result<RateEstimate, TrajectoryError> {
    if t_i.partial_cmp(&t_f) != Some(std::cmp::Ordering::Less) {
        return Err(TrajectoryError::InvalidInterval { t_start: t_i, t_end: t_f });
    }
    let find =
        |t: f64| series.position(t).ok_or_else(|| TrajectoryError::TimestampNotFound { t, available: series.times() });
    let (i, f) = (find(t_i)?, find(t_f)?);
    let (a, b) = (series.samples[i], series.samples[f]);
    Ok(RateEstimate { value: (b.x - a.x) / (b.t_hours - a.t_hours), method: RateMethod::Secant, interval: (t_i, t_f) })
}

/// Secant rates over each pair of consecutive samples.
pub fn interval_rates(series: &Series) -> Vec<RateEstimate> {
    series
        .samples
        .windows(2)
        .map(|w| RateEstimate {
            value: (w[1].x - w[0].x) / (w[1].t_hours - w[0].t_hours),
            method: RateMethod::Secant,
            interval: (w[0].t_hours, w[1].t_hours),
        })
        .collect()
}

/// Derivative at `t` of the quadratic through three samples (Newton form).
fn quadratic_slope(p: [Sample; 3], t: f64) -> f64 {
    let d01 = (p[1].x - p[0].x) / (p[1].t_hours - p[0].t_hours);
    let d12 = (p[2].x - p[1].x) / (p[2].t_hours - p[1].t_hours);
    let curvature = (d12 - d01) / (p[2].t_hours - p[0].t_hours);
    d01 + curvature * ((t - p[0].t_hours) + (t - p[1].t_hours))
}

pub fn instantaneous_rate(series: &Series, t: f64) -> Result<RateEstimate, TrajectoryError> {
    series.require(2)?;
    let s = &series.samples;
    let (first, last) = (s[0].t_hours, s[s.len() - 1].t_hours);
    if !(t >= first && t <= last) {
        return Err(TrajectoryError::OutOfRange { t, first, last });
    }
    let n = s.len();
    let estimate = |lo: usize, hi: usize, value: f64, method| RateEstimate {
        value,
        method,
        interval: (s[lo].t_hours, s[hi].t_hours),
    };
    match series.position(t) {
        Some(k) if k > 0 && k + 1 < n => {
            Ok(estimate(k - 1, k + 1, quadratic_slope([s[k - 1], s[k], s[k + 1]], t), RateMethod::CentralDifference))
        }
        Some(_) if n == 2 => {
            let value = (s[1].x - s[0].x) / (s[1].t_hours - s[0].t_hours);
            Ok(estimate(0, 1, value, RateMethod::OneSidedDifference))
        }
        Some(0) => Ok(estimate(0, 2, quadratic_slope([s[0], s[1], s[2]], t), RateMethod::OneSidedDifference)),
        Some(_) => Ok(estimate(
            n - 3,
            n - 1,
            quadratic_slope([s[n - 3], s[n - 2], s[n - 1]], t),
            RateMethod::OneSidedDifference,
        )),
        None => {
            let hi = s.iter().position(|p| p.t_hours > t).expect("t is inside the sampled range");
            let lo = hi - 1;
            let value = (s[hi].x - s[lo].x) / (s[hi].t_hours - s[lo].t_hours);
            Ok(estimate(lo, hi, value, RateMethod::CentralDifference))
        }
    }
}

/// Least-squares polynomial fit of X over time.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyFit {
    pub degree: usize,
    /// Coefficients in absolute time, constant term first.
    pub coefficients: Vec<f64>,
    pub residual_sum_of_squares: f64,
    origin: f64,
    shifted: Vec<f64>,
    span: (f64, f64),
}

impl PolyFit {
    pub fn eval(&self, t: f64) -> f64 {
        let u = t - self.origin;
        self.shifted.iter().rev().fold(0.0, |acc, c| acc * u + c)
    }

    pub fn derivative(&self, t: f64) -> f64 {
        let u = t - self.origin;
        self.shifted.iter().enumerate().skip(1).rev().fold(0.0, |acc, (k, c)| acc * u + k as f64 * c)
    }

    /// `dX/dt` of the fitted polynomial at `t`, which must lie in the fitted span.
    pub fn rate_at(&self, t: f64) -> Result<RateEstimate, TrajectoryError> {
        let (first, last) = self.span;
        if !(t >= first && t <= last) {
            return Err(TrajectoryError::OutOfRange { t, first, last });
        }
        Ok(RateEstimate { value: self.derivative(t), method: RateMethod::FitDerivative, interval: self.span })
    }
}

fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Result<Vec<f64>, TrajectoryError> {
    let n = b.len();
    let scale = a.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs())).unwrap();
        if a[pivot][col].abs() <= scale * 1e-13 {
            return Err(TrajectoryError::Singular);
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        let (upper, lower) = a.split_at_mut(col + 1);
        let pivot_row = &upper[col];
        for (offset, row) in lower.iter_mut().enumerate() {
            let factor = row[col] / pivot_row[col];
            for (dst, src) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *dst -= factor * src;
            }
            b[col + 1 + offset] -= factor * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let tail: f64 = (row + 1..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - tail) / a[row][row];
    }
    Ok(x)
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

pub fn fit_polynomial(series: &Series, degree: usize) -> Result<PolyFit, TrajectoryError> {
    if !(1..=3).contains(&degree) {
        return Err(TrajectoryError::InvalidDegree(degree));
    }
    series.require(degree + 1)?;
    let s = &series.samples;
    let origin = s[0].t_hours;
    let span = (origin, s[s.len() - 1].t_hours);
    let width = span.1 - span.0;
    let m = degree + 1;

    // Normal equations in v = (t - origin) / width, v in [0, 1].
    let mut a = vec![vec![0.0; m]; m];
    let mut b = vec![0.0; m];
    for p in s {
        let v = (p.t_hours - origin) / width;
        let powers: Vec<f64> = (0..2 * m - 1).map(|k| v.powi(k as i32)).collect();
        for j in 0..m {
            for k in 0..m {
                a[j][k] += powers[j + k];
            }
            b[j] += powers[j] * p.x;
        }
    }
    let scaled = solve(a, b)?;
    let shifted: Vec<f64> = scaled.iter().enumerate().map(|(k, c)| c / width.powi(k as i32)).collect();

    // Expand sum_k c_k (t - origin)^k into powers of t.
    let mut coefficients = vec![0.0; m];
    for (k, c) in shifted.iter().enumerate() {
        for (j, slot) in coefficients.iter_mut().enumerate().take(k + 1) {
            *slot += c * binomial(k, j) * (-origin).powi((k - j) as i32);
        }
    }

    let mut fit = PolyFit { degree, coefficients, residual_sum_of_squares: 0.0, origin, shifted, span };
    fit.residual_sum_of_squares = s.iter().map(|p| (p.x - fit.eval(p.t_hours)).powi(2)).sum();
    Ok(fit)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffortEstimate {
    pub alpha: f64,
    pub rate: RateEstimate,
    pub effort: f64,
}

/// Developer effort `E = alpha * dX/dt`.
pub fn effort(alpha: f64, rate: RateEstimate) -> Result<EffortEstimate, TrajectoryError> {
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(TrajectoryError::InvalidCoefficient(alpha));
    }
    Ok(EffortEstimate { alpha, rate, effort: alpha * rate.value })
}

/// Shape of X(t). `Uniform` is a constant positive slope; a flat series is
/// `Mixed` since it neither improves nor regresses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrendClass {
    Uniform,
    Positive,
    Negative,
    Mixed,
}

impl std::fmt::Display for TrendClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            TrendClass::Uniform => "Uniform",
            TrendClass::Positive => "Positive",
            TrendClass::Negative => "Negative",
            TrendClass::Mixed => "Mixed",
        })
    }
}

pub const DEFAULT_TREND_TOLERANCE: f64 = 1e-6;

pub fn classify_trend(series: &Series, tolerance: f64) -> Result<TrendClass, TrajectoryError> {
    if !(tolerance.is_finite() && tolerance >= 0.0) {
        return Err(TrajectoryError::InvalidTolerance(tolerance));
    }
    series.require(2)?;
    let slopes: Vec<f64> = interval_rates(series).iter().map(|r| r.value).collect();
    Ok(classify_slopes(&slopes, tolerance))
}

pub(crate) fn classify_slopes(slopes: &[f64], tolerance: f64) -> TrendClass {
    let mean = slopes.iter().sum::<f64>() / slopes.len() as f64;
    if mean > tolerance && slopes.iter().all(|s| (s - mean).abs() <= tolerance) {
        TrendClass::Uniform
    } else if slopes.iter().all(|&s| s > tolerance) {
        TrendClass::Positive
    } else if slopes.iter().all(|&s| s < -tolerance) {
        TrendClass::Negative
    } else {
        TrendClass::Mixed
    }
}
