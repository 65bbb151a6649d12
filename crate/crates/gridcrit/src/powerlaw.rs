//! Power-law exponent estimation from size-frequency distributions.
//!
//! The estimator is a log-log frequency regression: count how often each
//! distinct size occurs, take natural logs of both size and count, and fit
//!
//! ```text
//! ln f_i = C - alpha * ln x_i + e_i
//! ```
//!
//! by unweighted ordinary least squares. `alpha` is the negative of the
//! slope; fit quality is the coefficient of determination R². No binning, no
//! frequency weighting, no lower-cutoff optimization — those are different
//! estimators and would change results. Sizes below `x_min` are excluded
//! before counting; everything else enters, including sizes seen once.
//!
//! [`fit_ccdf_slope`] is a deliberately independent cross-check used by the
//! validation suite: it regresses the log empirical complementary CDF on log
//! size, which for power-law data has slope `-(alpha - 1)`.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

/// Default minimum number of distinct sizes required for a fit. Regression
/// over fewer points yields R² values with no discriminating power, and the
/// rolling engine needs a crisp insufficient-data status instead of noise.
pub const DEFAULT_MIN_POINTS: usize = 10;

/// Fraction of the sample that must lie at or above a size for that size to
/// enter the CCDF regression. Restricting to the body of the distribution
/// keeps the cross-check away from the truncation- and noise-dominated far
/// tail, where the empirical CCDF bends off the power law.
const CCDF_BODY_FLOOR: f64 = 0.1;

/// Errors from exponent estimation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PowerLawError {
    /// Fewer distinct sizes than the configured minimum.
    #[error("insufficient data: {n_distinct_sizes} distinct sizes, need at least {min_points}")]
    InsufficientData {
        n_distinct_sizes: usize,
        min_points: usize,
    },
    /// All sizes equal: the regressor has no spread, so no slope exists.
    #[error("degenerate regressor: all sizes equal")]
    DegenerateRegressor,
    /// A frequency value was zero, negative, or non-finite.
    #[error("invalid frequency value: frequencies must be positive and finite")]
    InvalidFrequency,
}

/// A size-frequency distribution: how many times each distinct size occurred.
///
/// Sizes are strictly increasing, all `>= x_min`, and every count is at
/// least 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrequencyDistribution {
    points: Vec<(u64, u64)>,
    x_min: u64,
}

impl FrequencyDistribution {
    /// `(size, count)` pairs in strictly increasing size order.
    pub fn points(&self) -> &[(u64, u64)] {
        &self.points
    }

    pub fn x_min(&self) -> u64 {
        self.x_min
    }

    /// Number of distinct sizes (regression points).
    pub fn n_distinct_sizes(&self) -> usize {
        self.points.len()
    }

    /// Total number of events counted into the distribution.
    pub fn n_events(&self) -> u64 {
        self.points.iter().map(|&(_, c)| c).sum()
    }
}

/// Result of a log-log frequency regression.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerLawFit {
    /// Critical exponent: the negative of the fitted slope.
    pub alpha: f64,
    /// Fitted intercept C.
    pub intercept: f64,
    /// Coefficient of determination of the regression, in [0, 1].
    pub r_squared: f64,
    /// Number of distinct sizes the regression ran over.
    pub n_distinct_sizes: usize,
    /// Total events behind those sizes.
    pub n_events: u64,
}

/// Count occurrences of each distinct size at or above `x_min`.
///
/// Sizes below `x_min` (including zero) are dropped. Empty input yields an
/// empty distribution.
pub fn frequency_distribution(sizes: &[u64], x_min: u64) -> FrequencyDistribution {
    let x_min = x_min.max(1);
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    for &s in sizes {
        if s >= x_min {
            *counts.entry(s).or_insert(0) += 1;
        }
    }
    FrequencyDistribution {
        points: counts.into_iter().collect(),
        x_min,
    }
}

/// Fit `ln f = C - alpha * ln x` over a counted distribution.
///
/// Requires at least `min_points` distinct sizes and at least two distinct
/// sizes overall (otherwise the regressor is degenerate).
pub fn fit_log_linear(
    dist: &FrequencyDistribution,
    min_points: usize,
) -> Result<PowerLawFit, PowerLawError> {
    let pairs: Vec<(u64, f64)> = dist
        .points
        .iter()
        .map(|&(x, f)| (x, f as f64))
        .collect();
    let mut fit = fit_log_frequencies(&pairs, min_points)?;
    fit.n_events = dist.n_events();
    Ok(fit)
}

/// Fit `ln f = C - alpha * ln x` over explicit `(size, frequency)` pairs.
///
/// The frequency values may be non-integral; this is the entry point used
/// when validating exact-recovery behaviour, where `f = exp(C) * x^-alpha`
/// rarely lands on an integer. For integer-counted data prefer
/// [`fit_log_linear`].
pub fn fit_log_frequencies(
    points: &[(u64, f64)],
    min_points: usize,
) -> Result<PowerLawFit, PowerLawError> {
    if points.iter().any(|&(x, f)| x == 0 || !(f > 0.0) || !f.is_finite()) {
        return Err(PowerLawError::InvalidFrequency);
    }
    let mut distinct: Vec<u64> = points.iter().map(|&(x, _)| x).collect();
    distinct.sort_unstable();
    distinct.dedup();
    let n_distinct = distinct.len();
    if n_distinct < min_points {
        return Err(PowerLawError::InsufficientData {
            n_distinct_sizes: n_distinct,
            min_points,
        });
    }
    if n_distinct < 2 {
        return Err(PowerLawError::DegenerateRegressor);
    }

    let xs: Vec<f64> = points.iter().map(|&(x, _)| (x as f64).ln()).collect();
    let ys: Vec<f64> = points.iter().map(|&(_, f)| f.ln()).collect();
    let (slope, intercept, r_squared) = ols(&xs, &ys);

    Ok(PowerLawFit {
        alpha: -slope,
        intercept,
        r_squared,
        n_distinct_sizes: n_distinct,
        n_events: points.len() as u64,
    })
}

/// Ordinary least squares of `y` on `x` with centred sums.
///
/// When the response has no variance the zero-slope line fits exactly and R²
/// is defined as 1. Rounding can push R² marginally outside [0, 1]; it is
/// clamped.
fn ols(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let x_bar = xs.iter().sum::<f64>() / n;
    let y_bar = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    let mut syy = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        let dx = x - x_bar;
        let dy = y - y_bar;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    let slope = sxy / sxx;
    let intercept = y_bar - slope * x_bar;
    let r_squared = if syy == 0.0 {
        1.0
    } else {
        let ss_res: f64 = xs
            .iter()
            .zip(ys)
            .map(|(&x, &y)| {
                let r = y - (intercept + slope * x);
                r * r
            })
            .sum();
        (1.0 - ss_res / syy).clamp(0.0, 1.0)
    };
    (slope, intercept, r_squared)
}

/// Slope of the log empirical CCDF against log size: an exponent estimate on
/// a different statistic of the same sample, used to corroborate
/// [`fit_log_linear`]. For power-law data with exponent `alpha` the returned
/// slope estimates `-(alpha - 1)`.
///
/// Two estimator details, both aimed at the discrete bounded supports this
/// crate samples from: sizes enter with a half-step continuity correction
/// (`ln(x - 1/2)`), and the regression is restricted to sizes holding at
/// least 10% of the sample at or above them (falling back to all sizes when
/// that leaves fewer than two points).
pub fn fit_ccdf_slope(
    sizes: &[u64],
    x_min: u64,
    min_points: usize,
) -> Result<f64, PowerLawError> {
    let dist = frequency_distribution(sizes, x_min);
    let n_distinct = dist.n_distinct_sizes();
    if n_distinct < min_points.max(2) {
        return Err(PowerLawError::InsufficientData {
            n_distinct_sizes: n_distinct,
            min_points: min_points.max(2),
        });
    }
    let n = dist.n_events() as f64;

    // Count of samples >= size, walking sizes from the top down.
    let pts = dist.points();
    let mut at_or_above = vec![0u64; pts.len()];
    let mut acc = 0u64;
    for (i, &(_, c)) in pts.iter().enumerate().rev() {
        acc += c;
        at_or_above[i] = acc;
    }

    let all: Vec<(f64, f64)> = pts
        .iter()
        .zip(&at_or_above)
        .map(|(&(x, _), &ge)| ((x as f64 - 0.5).ln(), (ge as f64 / n).ln()))
        .collect();
    let body: Vec<(f64, f64)> = pts
        .iter()
        .zip(&at_or_above)
        .filter(|&(_, &ge)| ge as f64 / n >= CCDF_BODY_FLOOR)
        .map(|(&(x, _), &ge)| ((x as f64 - 0.5).ln(), (ge as f64 / n).ln()))
        .collect();
    let use_pts = if body.len() >= 2 { &body } else { &all };

    let xs: Vec<f64> = use_pts.iter().map(|&(x, _)| x).collect();
    let ys: Vec<f64> = use_pts.iter().map(|&(_, y)| y).collect();
    let (slope, _, _) = ols(&xs, &ys);
    Ok(slope)
}
