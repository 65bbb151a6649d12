//! Parsing and validation of raw outage-snapshot CSVs.
//!
//! Input is header-bearing comma-separated text; the four canonical fields
//! (`timestamp`, `state`, `county`, `fips`, `customers_out`) can be remapped
//! to arbitrary source headers through [`ColumnMap`], so public datasets are
//! consumed as published. Timestamps are interpreted as UTC throughout; day
//! boundaries downstream are UTC midnights. A local-time reading would shift
//! daily maxima by at most one day.
//!
//! Real extracts contain gaps and damage, so the default policy skips
//! malformed rows, tallies them by reason, and fails the run only when the
//! malformed fraction exceeds a ceiling (1% by default). Rows excluded by
//! the state or time filters are tallied separately and never count against
//! that ceiling. Rows with blank customer counts are dropped rather than
//! read as zero; a zero count itself is valid and kept — it is excluded
//! later, at distribution construction.

use chrono::{DateTime, NaiveDate, NaiveDateTime, Utc};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::io::{Read, Write};
use thiserror::Error;

/// One county-level outage snapshot.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutageRecord {
    pub timestamp: DateTime<Utc>,
    pub state: String,
    pub county: String,
    pub fips: String,
    pub customers_out: u64,
}

/// Mapping from canonical field names to source column headers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct ColumnMap {
    pub timestamp: String,
    pub state: String,
    pub county: String,
    pub fips: String,
    pub customers_out: String,
}

impl Default for ColumnMap {
    fn default() -> Self {
        Self {
            timestamp: "timestamp".into(),
            state: "state".into(),
            county: "county".into(),
            fips: "fips".into(),
            customers_out: "customers_out".into(),
        }
    }
}

/// What to do with rows that fail to parse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MalformedRowPolicy {
    /// Drop the row, record the reason, keep going.
    SkipAndCount,
    /// Abort on the first malformed row, reporting its line number.
    FailFast,
}

/// Half-open instant range `[start, end)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TimeRange {
    pub start: DateTime<Utc>,
    pub end: DateTime<Utc>,
}

impl TimeRange {
    pub fn contains(&self, t: DateTime<Utc>) -> bool {
        self.start <= t && t < self.end
    }
}

/// Ingest configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct IngestConfig {
    pub column_map: ColumnMap,
    /// Keep only rows with this state code, when set.
    pub state_filter: Option<String>,
    /// Keep only rows with timestamp in `[start, end)`, when set.
    pub time_range: Option<TimeRange>,
    pub malformed_row_policy: MalformedRowPolicy,
    /// Largest tolerated malformed-row fraction before the parse is
    /// declared a data-quality failure.
    pub max_skip_fraction: f64,
}

impl Default for IngestConfig {
    fn default() -> Self {
        Self {
            column_map: ColumnMap::default(),
            state_filter: None,
            time_range: None,
            malformed_row_policy: MalformedRowPolicy::SkipAndCount,
            max_skip_fraction: 0.01,
        }
    }
}

/// Why a row was skipped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SkipReason {
    /// The CSV record itself was broken (wrong field count, bad encoding).
    MalformedRecord,
    /// Timestamp failed to parse as an instant.
    BadTimestamp,
    /// Customer count was present but not a non-negative integer.
    BadCount,
    /// Customer count was blank; blanks are dropped, not read as zero.
    BlankCount,
    /// Row excluded by the state filter.
    FilteredState,
    /// Row excluded by the time range.
    FilteredTime,
}

impl SkipReason {
    /// Filter exclusions are bookkeeping, not damage; only the rest count
    /// against the malformed-fraction ceiling.
    pub fn is_malformed(self) -> bool {
        !matches!(self, SkipReason::FilteredState | SkipReason::FilteredTime)
    }
}

/// Exact tallies of a parse.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IngestReport {
    pub rows_read: u64,
    pub rows_accepted: u64,
    pub rows_skipped: u64,
    pub skip_reasons: BTreeMap<SkipReason, u64>,
}

impl IngestReport {
    fn skip(&mut self, reason: SkipReason) {
        self.rows_skipped += 1;
        *self.skip_reasons.entry(reason).or_insert(0) += 1;
    }

    /// Skipped rows that were actually damaged (filter exclusions excluded).
    pub fn malformed_rows(&self) -> u64 {
        self.skip_reasons
            .iter()
            .filter(|(r, _)| r.is_malformed())
            .map(|(_, n)| n)
            .sum()
    }

    /// Malformed rows over rows read; zero on empty input.
    pub fn malformed_fraction(&self) -> f64 {
        if self.rows_read == 0 {
            0.0
        } else {
            self.malformed_rows() as f64 / self.rows_read as f64
        }
    }

    /// Fold another report into this one (multi-file ingest).
    pub fn merge(&mut self, other: &IngestReport) {
        self.rows_read += other.rows_read;
        self.rows_accepted += other.rows_accepted;
        self.rows_skipped += other.rows_skipped;
        for (&reason, &n) in &other.skip_reasons {
            *self.skip_reasons.entry(reason).or_insert(0) += n;
        }
    }
}

/// Errors that abort a parse.
#[derive(Debug, Error)]
pub enum IngestError {
    /// A mapped column is absent from the header row.
    #[error("configuration error: mapped column '{source_column}' for canonical field '{canonical}' not found in header")]
    MissingColumn {
        canonical: &'static str,
        source_column: String,
    },
    /// First malformed row under the fail-fast policy.
    #[error("malformed row at line {line}: {detail}")]
    MalformedRow {
        line: u64,
        reason: SkipReason,
        detail: String,
    },
    /// Malformed fraction exceeded the configured ceiling.
    #[error(
        "data-quality error: malformed fraction {fraction:.4} exceeds ceiling {max:.4} \
         ({malformed} of {rows_read} rows)"
    )]
    SkipFractionExceeded {
        fraction: f64,
        max: f64,
        malformed: u64,
        rows_read: u64,
    },
    /// Unrecoverable read failure.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

/// Parse a CSV byte stream into canonical records plus an exact report.
///
/// Records come out in source order. Every accepted record satisfies the
/// [`OutageRecord`] invariants; nothing with an unparseable timestamp or
/// count gets through.
pub fn parse_outage_csv<R: Read>(
    source: R,
    config: &IngestConfig,
) -> Result<(Vec<OutageRecord>, IngestReport), IngestError> {
    let mut records = Vec::new();
    let report = parse_outage_csv_with(source, config, |r| records.push(r))?;
    Ok((records, report))
}

/// Streaming variant of [`parse_outage_csv`]: accepted records go to `sink`
/// one at a time, nothing is retained. The parse is single-pass and pure
/// with respect to its inputs.
pub fn parse_outage_csv_with<R: Read, F: FnMut(OutageRecord)>(
    source: R,
    config: &IngestConfig,
    mut sink: F,
) -> Result<IngestReport, IngestError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(source);

    let headers = rdr.headers().map_err(io_or_config)?.clone();
    let col = |canonical: &'static str, name: &str| -> Result<usize, IngestError> {
        headers
            .iter()
            .position(|h| h.trim() == name)
            .ok_or_else(|| IngestError::MissingColumn {
                canonical,
                source_column: name.to_string(),
            })
    };
    let map = &config.column_map;
    let ts_idx = col("timestamp", &map.timestamp)?;
    let state_idx = col("state", &map.state)?;
    let county_idx = col("county", &map.county)?;
    let fips_idx = col("fips", &map.fips)?;
    let count_idx = col("customers_out", &map.customers_out)?;

    let mut report = IngestReport::default();
    let fail_fast = config.malformed_row_policy == MalformedRowPolicy::FailFast;

    for result in rdr.records() {
        report.rows_read += 1;
        let mut reject = |report: &mut IngestReport,
                          line: u64,
                          reason: SkipReason,
                          detail: String|
         -> Result<(), IngestError> {
            if fail_fast && reason.is_malformed() {
                return Err(IngestError::MalformedRow {
                    line,
                    reason,
                    detail,
                });
            }
            report.skip(reason);
            Ok(())
        };

        let record = match result {
            Ok(r) => r,
            Err(e) => {
                if let csv::ErrorKind::Io(_) = e.kind() {
                    return Err(IngestError::Io(std::io::Error::other(e)));
                }
                let line = e.position().map(|p| p.line()).unwrap_or(0);
                reject(
                    &mut report,
                    line,
                    SkipReason::MalformedRecord,
                    e.to_string(),
                )?;
                continue;
            }
        };
        let line = record.position().map(|p| p.line()).unwrap_or(0);

        let ts_raw = record.get(ts_idx).unwrap_or("").trim();
        let timestamp = match parse_timestamp(ts_raw) {
            Some(t) => t,
            None => {
                reject(
                    &mut report,
                    line,
                    if ts_raw.is_empty() {
                        SkipReason::MalformedRecord
                    } else {
                        SkipReason::BadTimestamp
                    },
                    format!("unparseable timestamp '{ts_raw}'"),
                )?;
                continue;
            }
        };

        let count_raw = record.get(count_idx).unwrap_or("").trim();
        let customers_out = if count_raw.is_empty() {
            reject(
                &mut report,
                line,
                SkipReason::BlankCount,
                "blank customer count".into(),
            )?;
            continue;
        } else {
            match parse_count(count_raw) {
                Some(c) => c,
                None => {
                    reject(
                        &mut report,
                        line,
                        SkipReason::BadCount,
                        format!("customer count '{count_raw}' is not a non-negative integer"),
                    )?;
                    continue;
                }
            }
        };

        let state = record.get(state_idx).unwrap_or("").trim();
        if let Some(filter) = &config.state_filter {
            if state != filter {
                report.skip(SkipReason::FilteredState);
                continue;
            }
        }
        if let Some(range) = &config.time_range {
            if !range.contains(timestamp) {
                report.skip(SkipReason::FilteredTime);
                continue;
            }
        }

        report.rows_accepted += 1;
        sink(OutageRecord {
            timestamp,
            state: state.to_string(),
            county: record.get(county_idx).unwrap_or("").trim().to_string(),
            fips: record.get(fips_idx).unwrap_or("").trim().to_string(),
            customers_out,
        });
    }

    let fraction = report.malformed_fraction();
    if fraction > config.max_skip_fraction {
        return Err(IngestError::SkipFractionExceeded {
            fraction,
            max: config.max_skip_fraction,
            malformed: report.malformed_rows(),
            rows_read: report.rows_read,
        });
    }
    Ok(report)
}

fn io_or_config(e: csv::Error) -> IngestError {
    IngestError::Io(std::io::Error::other(e))
}

/// Accept RFC 3339, `YYYY-MM-DD HH:MM:SS`, `YYYY-MM-DDTHH:MM:SS` (optional
/// fractional seconds), or a bare date. Naive forms are read as UTC.
fn parse_timestamp(raw: &str) -> Option<DateTime<Utc>> {
    if raw.is_empty() {
        return None;
    }
    if let Ok(t) = DateTime::parse_from_rfc3339(raw) {
        return Some(t.with_timezone(&Utc));
    }
    for fmt in ["%Y-%m-%d %H:%M:%S%.f", "%Y-%m-%dT%H:%M:%S%.f"] {
        if let Ok(t) = NaiveDateTime::parse_from_str(raw, fmt) {
            return Some(t.and_utc());
        }
    }
    if let Ok(d) = raw.parse::<NaiveDate>() {
        return Some(d.and_hms_opt(0, 0, 0).expect("midnight exists").and_utc());
    }
    None
}

/// Counts are integers, but tolerate float renderings with no fractional
/// part ("1234.0"), which some exports produce.
fn parse_count(raw: &str) -> Option<u64> {
    if let Ok(v) = raw.parse::<u64>() {
        return Some(v);
    }
    if let Ok(v) = raw.parse::<f64>() {
        if v.is_finite() && v >= 0.0 && v.fract() == 0.0 && v <= u64::MAX as f64 {
            return Some(v as u64);
        }
    }
    None
}

/// Records with matching state and timestamp in `[start, end)`, order
/// preserved. An empty result is valid.
pub fn filter_records(records: &[OutageRecord], state: &str, range: &TimeRange) -> Vec<OutageRecord> {
    records
        .iter()
        .filter(|r| r.state == state && range.contains(r.timestamp))
        .cloned()
        .collect()
}

/// Serialize records in canonical column order with RFC 3339 timestamps.
pub fn write_records_csv<W: Write>(w: W, records: &[OutageRecord]) -> Result<(), csv::Error> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["timestamp", "state", "county", "fips", "customers_out"])?;
    for r in records {
        out.write_record([
            r.timestamp.to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
            r.state.clone(),
            r.county.clone(),
            r.fips.clone(),
            r.customers_out.to_string(),
        ])?;
    }
    out.flush()?;
    Ok(())
}
