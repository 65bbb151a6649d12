//! Percentile-threshold extreme-event identification.
//!
//! An event is extreme when its size reaches the nearest-rank percentile of
//! the full study period's daily event sizes. Nearest rank keeps the cutoff
//! deterministic on integer data: no interpolation, the cutoff is always an
//! observed size. The boundary is inclusive — with ties at the cutoff,
//! excluding them would drop the very observation that defines it.

use crate::aggregate::DailyEvent;
use chrono::NaiveDate;
use serde::{Deserialize, Serialize};
use std::io::{Read, Write};
use thiserror::Error;

/// A daily event at or above the percentile cutoff.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtremeEvent {
    pub date: NaiveDate,
    pub size: u64,
    /// The cutoff in effect when this event was flagged.
    pub threshold_size: u64,
    /// The percentile that produced the cutoff, e.g. 99.9.
    pub percentile: f64,
}

/// Errors from extreme-event identification.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExtremesError {
    #[error("empty input: percentile of nothing is undefined")]
    EmptyInput,
    #[error("percentile must be strictly between 0 and 100, got {0}")]
    InvalidPercentile(f64),
}

/// Nearest-rank percentile: the value at rank `ceil(p/100 * n)` (1-based) of
/// the ascending-sorted sizes.
///
/// The rank product is computed in floating point, so values that are
/// mathematically integral can land a hair above their integer; ranks within
/// 1e-9 of an integer snap to it before the ceiling is taken.
pub fn percentile_threshold(sizes: &[u64], p: f64) -> Result<u64, ExtremesError> {
    if sizes.is_empty() {
        return Err(ExtremesError::EmptyInput);
    }
    if !p.is_finite() || p <= 0.0 || p >= 100.0 {
        return Err(ExtremesError::InvalidPercentile(p));
    }
    let mut sorted = sizes.to_vec();
    sorted.sort_unstable();
    let n = sorted.len();
    let raw = p * n as f64 / 100.0;
    let nearest = raw.round();
    let rank = if (raw - nearest).abs() < 1e-9 {
        nearest as usize
    } else {
        raw.ceil() as usize
    };
    let rank = rank.clamp(1, n);
    Ok(sorted[rank - 1])
}

/// Events whose size meets the percentile cutoff of the whole series,
/// in chronological order.
///
/// The cutoff is computed once over all event sizes — a single global event
/// set, not per-window.
pub fn extreme_events(events: &[DailyEvent], p: f64) -> Result<Vec<ExtremeEvent>, ExtremesError> {
    let sizes: Vec<u64> = events.iter().map(|e| e.size).collect();
    let threshold_size = percentile_threshold(&sizes, p)?;
    Ok(events
        .iter()
        .filter(|e| e.size >= threshold_size)
        .map(|e| ExtremeEvent {
            date: e.date,
            size: e.size,
            threshold_size,
            percentile: p,
        })
        .collect())
}

/// Write extremes as `date,size,threshold_size,percentile` CSV.
pub fn write_extremes_csv<W: Write>(w: W, extremes: &[ExtremeEvent]) -> Result<(), csv::Error> {
    use crate::numfmt::format_sig;
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["date", "size", "threshold_size", "percentile"])?;
    for e in extremes {
        out.write_record([
            e.date.to_string(),
            e.size.to_string(),
            e.threshold_size.to_string(),
            format_sig(e.percentile, 6),
        ])?;
    }
    out.flush()?;
    Ok(())
}

/// Errors from reading an extremes artifact.
#[derive(Debug, Error)]
pub enum ExtremesCsvError {
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("line {line}: {message}")]
    BadRow { line: u64, message: String },
}

/// Read extremes back from the CSV artifact.
pub fn read_extremes_csv<R: Read>(r: R) -> Result<Vec<ExtremeEvent>, ExtremesCsvError> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(r);
    let mut out = Vec::new();
    for record in rdr.records() {
        let record = record?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        let bad = |message: String| ExtremesCsvError::BadRow { line, message };
        out.push(ExtremeEvent {
            date: record
                .get(0)
                .unwrap_or("")
                .parse()
                .map_err(|e| bad(format!("bad date: {e}")))?,
            size: record
                .get(1)
                .unwrap_or("")
                .parse()
                .map_err(|e| bad(format!("bad size: {e}")))?,
            threshold_size: record
                .get(2)
                .unwrap_or("")
                .parse()
                .map_err(|e| bad(format!("bad threshold_size: {e}")))?,
            percentile: record
                .get(3)
                .unwrap_or("")
                .parse()
                .map_err(|e| bad(format!("bad percentile: {e}")))?,
        });
    }
    Ok(out)
}
