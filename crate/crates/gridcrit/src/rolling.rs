//! Backward-looking critical-exponent series.
//!
//! For a grid of time points `t`, fit the exponent over the events dated in
//! `(t - length_days, t]` and nothing later. Causality is strict: a point's
//! value is a pure function of the events at or before its own `t`, so
//! recomputing history after new data arrives never changes old points.
//!
//! The grid is anchored at the range start and stepped by a day count — a
//! "30-day step" means thirty days, not a calendar month, so the arithmetic
//! is reproducible. Windows with too few distinct sizes yield an explicit
//! insufficient-data point rather than disappearing; downstream episode
//! logic decides how gaps interact with durations.
//!
//! Window fits are independent and run in parallel; the collected series is
//! identical to sequential evaluation.

use crate::aggregate::{window_slice, DailyEvent};
use crate::powerlaw::{fit_log_linear, frequency_distribution, PowerLawFit};
use chrono::{Days, NaiveDate};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::io::{Read, Write};
use thiserror::Error;

/// Window geometry and fit gating for a rolling run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct WindowSpec {
    /// Days of history each fit sees. 180 and 90 are the tested presets.
    pub length_days: u32,
    /// Days between consecutive grid points; pairs 30 with the 180-day
    /// window and 15 with the 90-day window (length / 6).
    pub step_days: u32,
    /// Smallest size admitted into the frequency distribution.
    pub x_min: u64,
    /// Minimum distinct sizes for a window to produce a fit.
    pub min_points: usize,
}

impl Default for WindowSpec {
    fn default() -> Self {
        Self {
            length_days: 180,
            step_days: 30,
            x_min: 1,
            min_points: crate::powerlaw::DEFAULT_MIN_POINTS,
        }
    }
}

/// Outcome of one window fit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum AlphaStatus {
    Ok(PowerLawFit),
    InsufficientData {
        n_distinct_sizes: usize,
        n_events: u64,
    },
}

/// One point of the exponent trajectory: the system state at time `t` as
/// seen from the preceding window.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlphaPoint {
    /// Window right edge (inclusive).
    pub t: NaiveDate,
    pub status: AlphaStatus,
}

impl AlphaPoint {
    pub fn fit(&self) -> Option<&PowerLawFit> {
        match &self.status {
            AlphaStatus::Ok(fit) => Some(fit),
            AlphaStatus::InsufficientData { .. } => None,
        }
    }

    pub fn alpha(&self) -> Option<f64> {
        self.fit().map(|f| f.alpha)
    }

    pub fn is_ok(&self) -> bool {
        self.fit().is_some()
    }
}

/// The exponent trajectory over a date range.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlphaSeries {
    pub spec: WindowSpec,
    /// Points ordered by `t`; consecutive points differ by exactly
    /// `spec.step_days`.
    pub points: Vec<AlphaPoint>,
}

/// Errors from series construction.
#[derive(Debug, Error)]
pub enum RollingError {
    #[error("invalid window spec: {0}")]
    InvalidSpec(String),
    #[error(
        "invalid range: need start + length_days <= end, got [{start}, {end}] with a {length_days}-day window"
    )]
    InvalidRange {
        start: NaiveDate,
        end: NaiveDate,
        length_days: u32,
    },
    #[error("events must be sorted by strictly increasing date")]
    UnsortedEvents,
}

/// Compute the exponent series over `[start, end]`.
///
/// The first grid point is `start + length_days` — the first date with a
/// full window behind it — and the grid then steps by `step_days` for as
/// long as it stays at or before `end`. Each point fits
/// `frequency_distribution(window events, x_min)` with the spec's
/// `min_points` gate; windows that fail the gate come out as
/// [`AlphaStatus::InsufficientData`] carrying the observed counts.
pub fn alpha_series(
    events: &[DailyEvent],
    spec: &WindowSpec,
    start: NaiveDate,
    end: NaiveDate,
) -> Result<AlphaSeries, RollingError> {
    if spec.length_days == 0 || spec.step_days == 0 {
        return Err(RollingError::InvalidSpec(
            "length_days and step_days must be at least 1".into(),
        ));
    }
    if spec.step_days > spec.length_days {
        return Err(RollingError::InvalidSpec(format!(
            "step_days {} exceeds length_days {}",
            spec.step_days, spec.length_days
        )));
    }
    if spec.x_min < 1 {
        return Err(RollingError::InvalidSpec("x_min must be at least 1".into()));
    }
    if events.windows(2).any(|w| w[0].date >= w[1].date) {
        return Err(RollingError::UnsortedEvents);
    }
    let first_t = start + Days::new(spec.length_days as u64);
    if first_t > end {
        return Err(RollingError::InvalidRange {
            start,
            end,
            length_days: spec.length_days,
        });
    }

    let mut grid = Vec::new();
    let mut t = first_t;
    while t <= end {
        grid.push(t);
        t += Days::new(spec.step_days as u64);
    }

    let points: Vec<AlphaPoint> = grid
        .par_iter()
        .map(|&t| {
            let window = window_slice(events, t, spec.length_days);
            let sizes: Vec<u64> = window.iter().map(|e| e.size).collect();
            let dist = frequency_distribution(&sizes, spec.x_min);
            let status = match fit_log_linear(&dist, spec.min_points) {
                Ok(fit) => AlphaStatus::Ok(fit),
                Err(_) => AlphaStatus::InsufficientData {
                    n_distinct_sizes: dist.n_distinct_sizes(),
                    n_events: dist.n_events(),
                },
            };
            AlphaPoint { t, status }
        })
        .collect();

    Ok(AlphaSeries {
        spec: spec.clone(),
        points,
    })
}

/// Write a series as the tabular artifact:
/// `t,alpha,intercept,r_squared,n_distinct_sizes,n_events,status`.
///
/// Floats carry six significant digits so identical runs emit identical
/// bytes; insufficient-data rows leave the fit columns empty but still
/// report the observed counts.
pub fn write_alpha_csv<W: Write>(w: W, series: &AlphaSeries) -> Result<(), csv::Error> {
    use crate::numfmt::format_sig;
    let mut out = csv::Writer::from_writer(w);
    out.write_record([
        "t",
        "alpha",
        "intercept",
        "r_squared",
        "n_distinct_sizes",
        "n_events",
        "status",
    ])?;
    for p in &series.points {
        match &p.status {
            AlphaStatus::Ok(fit) => out.write_record([
                p.t.to_string(),
                format_sig(fit.alpha, 6),
                format_sig(fit.intercept, 6),
                format_sig(fit.r_squared, 6),
                fit.n_distinct_sizes.to_string(),
                fit.n_events.to_string(),
                "ok".to_string(),
            ])?,
            AlphaStatus::InsufficientData {
                n_distinct_sizes,
                n_events,
            } => out.write_record([
                p.t.to_string(),
                String::new(),
                String::new(),
                String::new(),
                n_distinct_sizes.to_string(),
                n_events.to_string(),
                "insufficient_data".to_string(),
            ])?,
        }
    }
    out.flush()?;
    Ok(())
}

/// Errors from reading an exponent-series artifact.
#[derive(Debug, Error)]
pub enum AlphaCsvError {
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("line {line}: {message}")]
    BadRow { line: u64, message: String },
}

/// Read points back from an exponent-series artifact. Fit values carry the
/// artifact's six-significant-digit precision.
pub fn read_alpha_csv<R: Read>(r: R) -> Result<Vec<AlphaPoint>, AlphaCsvError> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(r);
    let mut points = Vec::new();
    for record in rdr.records() {
        let record = record?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        let bad = |message: String| AlphaCsvError::BadRow { line, message };
        let t: NaiveDate = record
            .get(0)
            .unwrap_or("")
            .parse()
            .map_err(|e| bad(format!("bad date: {e}")))?;
        let status = record.get(6).unwrap_or("").trim();
        let n_distinct_sizes: usize = record
            .get(4)
            .unwrap_or("")
            .parse()
            .map_err(|e| bad(format!("bad n_distinct_sizes: {e}")))?;
        let n_events: u64 = record
            .get(5)
            .unwrap_or("")
            .parse()
            .map_err(|e| bad(format!("bad n_events: {e}")))?;
        let status = match status {
            "ok" => {
                let parse_f = |idx: usize, name: &str| -> Result<f64, AlphaCsvError> {
                    record
                        .get(idx)
                        .unwrap_or("")
                        .parse()
                        .map_err(|e| bad(format!("bad {name}: {e}")))
                };
                AlphaStatus::Ok(PowerLawFit {
                    alpha: parse_f(1, "alpha")?,
                    intercept: parse_f(2, "intercept")?,
                    r_squared: parse_f(3, "r_squared")?,
                    n_distinct_sizes,
                    n_events,
                })
            }
            "insufficient_data" => AlphaStatus::InsufficientData {
                n_distinct_sizes,
                n_events,
            },
            other => return Err(bad(format!("unknown status '{other}'"))),
        };
        points.push(AlphaPoint { t, status });
    }
    Ok(points)
}
