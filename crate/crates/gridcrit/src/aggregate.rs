//! Daily-maximum aggregation and window slicing.
//!
//! Raw outage data arrives as intraday snapshots. The analysis works on one
//! event per day: the largest snapshot of that UTC calendar day. Days whose
//! snapshots are all zero produce no event at all — a zero has no place in a
//! size distribution that gets log-transformed downstream.

use crate::ingest::OutageRecord;
use chrono::{DateTime, Days, NaiveDate, Utc};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::io::{Read, Write};
use thiserror::Error;

/// The maximal outage event of one UTC calendar day.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DailyEvent {
    pub date: NaiveDate,
    /// Customers affected; always at least 1.
    pub size: u64,
    /// Instant of the maximal snapshot. Ties keep the earliest instant.
    /// Metadata only: never feeds the exponent estimate.
    pub at: DateTime<Utc>,
}

/// Errors from reading a daily event series.
#[derive(Debug, Error)]
pub enum AggregateError {
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("line {line}: {message}")]
    BadRow { line: u64, message: String },
    #[error("line {line}: dates must be strictly increasing")]
    UnsortedDates { line: u64 },
}

/// Incremental daily-maximum reduction, for callers that stream records
/// instead of materializing them.
#[derive(Debug, Default)]
pub struct DailyMaxAccumulator {
    days: BTreeMap<NaiveDate, (u64, DateTime<Utc>)>,
}

impl DailyMaxAccumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, timestamp: DateTime<Utc>, customers_out: u64) {
        if customers_out == 0 {
            return;
        }
        let date = timestamp.date_naive();
        match self.days.get_mut(&date) {
            Some((size, at)) => {
                if customers_out > *size || (customers_out == *size && timestamp < *at) {
                    *size = customers_out;
                    *at = timestamp;
                }
            }
            None => {
                self.days.insert(date, (customers_out, timestamp));
            }
        }
    }

    pub fn finish(self) -> Vec<DailyEvent> {
        self.days
            .into_iter()
            .map(|(date, (size, at))| DailyEvent { date, size, at })
            .collect()
    }
}

/// Reduce records to one maximal event per day.
///
/// Only records with `customers_out >= 1` qualify; days without any such
/// record are absent from the output. Dates come out strictly increasing.
pub fn daily_max(records: &[OutageRecord]) -> Vec<DailyEvent> {
    let mut acc = DailyMaxAccumulator::new();
    for r in records {
        acc.push(r.timestamp, r.customers_out);
    }
    acc.finish()
}

/// Events with date in the half-open window `(t - length_days, t]`.
///
/// `events` must be sorted by date (as [`daily_max`] produces). The window
/// is open at the old end and closed at `t`, so back-to-back windows
/// stepping by their own length partition time exactly.
pub fn window_slice(events: &[DailyEvent], t: NaiveDate, length_days: u32) -> &[DailyEvent] {
    let oldest_excluded = t - Days::new(length_days as u64);
    let lo = events.partition_point(|e| e.date <= oldest_excluded);
    let hi = events.partition_point(|e| e.date <= t);
    &events[lo..hi]
}

/// Write a daily series as `date,size` CSV with ISO-8601 dates.
pub fn write_daily_csv<W: Write>(w: W, events: &[DailyEvent]) -> Result<(), csv::Error> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["date", "size"])?;
    for e in events {
        out.write_record([e.date.to_string(), e.size.to_string()])?;
    }
    out.flush()?;
    Ok(())
}

/// Read a `date,size` CSV back into a daily series.
///
/// Dates must be strictly increasing and sizes at least 1; the snapshot
/// instant is reconstructed as UTC midnight.
pub fn read_daily_csv<R: Read>(r: R) -> Result<Vec<DailyEvent>, AggregateError> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(r);
    let headers = rdr.headers()?.clone();
    let date_idx = headers
        .iter()
        .position(|h| h.trim() == "date")
        .ok_or_else(|| AggregateError::BadRow {
            line: 1,
            message: "missing 'date' column".into(),
        })?;
    let size_idx = headers
        .iter()
        .position(|h| h.trim() == "size")
        .ok_or_else(|| AggregateError::BadRow {
            line: 1,
            message: "missing 'size' column".into(),
        })?;

    let mut events = Vec::new();
    for record in rdr.records() {
        let record = record?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        let date: NaiveDate = record
            .get(date_idx)
            .unwrap_or("")
            .trim()
            .parse()
            .map_err(|e| AggregateError::BadRow {
                line,
                message: format!("bad date: {e}"),
            })?;
        let size: u64 = record
            .get(size_idx)
            .unwrap_or("")
            .trim()
            .parse()
            .map_err(|e| AggregateError::BadRow {
                line,
                message: format!("bad size: {e}"),
            })?;
        if size == 0 {
            return Err(AggregateError::BadRow {
                line,
                message: "size must be at least 1".into(),
            });
        }
        if let Some(last) = events.last() {
            let last: &DailyEvent = last;
            if date <= last.date {
                return Err(AggregateError::UnsortedDates { line });
            }
        }
        events.push(DailyEvent {
            date,
            size,
            at: date.and_hms_opt(0, 0, 0).expect("midnight exists").and_utc(),
        });
    }
    Ok(events)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rec(ts: &str, customers: u64) -> OutageRecord {
        OutageRecord {
            timestamp: ts.parse().unwrap(),
            state: "TX".into(),
            county: "Harris".into(),
            fips: "48201".into(),
            customers_out: customers,
        }
    }

    fn ev(date: &str, size: u64) -> DailyEvent {
        let date: NaiveDate = date.parse().unwrap();
        DailyEvent {
            date,
            size,
            at: date.and_hms_opt(0, 0, 0).unwrap().and_utc(),
        }
    }

    #[test]
    fn singleton_record_becomes_singleton_event() {
        let events = daily_max(&[rec("2021-02-15T12:00:00Z", 4_500_000)]);
        assert_eq!(events.len(), 1);
        assert_eq!(events[0].date, "2021-02-15".parse().unwrap());
        assert_eq!(events[0].size, 4_500_000);
    }

    #[test]
    fn same_day_takes_maximum() {
        let events = daily_max(&[
            rec("2021-02-15T00:15:00Z", 10),
            rec("2021-02-15T06:00:00Z", 20),
        ]);
        assert_eq!(events.len(), 1);
        assert_eq!(events[0].size, 20);
        assert_eq!(events[0].at, "2021-02-15T06:00:00Z".parse().unwrap());
    }

    #[test]
    fn ties_keep_earliest_instant() {
        let events = daily_max(&[
            rec("2021-02-15T09:00:00Z", 20),
            rec("2021-02-15T03:00:00Z", 20),
        ]);
        assert_eq!(events[0].at, "2021-02-15T03:00:00Z".parse().unwrap());
    }

    #[test]
    fn zero_only_days_produce_no_event() {
        let events = daily_max(&[rec("2021-02-15T00:00:00Z", 0)]);
        assert!(events.is_empty());
        assert!(daily_max(&[]).is_empty());
    }

    #[test]
    fn day_boundaries_are_utc_midnights() {
        let events = daily_max(&[
            rec("2021-02-15T23:59:59Z", 5),
            rec("2021-02-16T00:00:00Z", 7),
        ]);
        assert_eq!(events.len(), 2);
        assert_eq!(events[0].size, 5);
        assert_eq!(events[1].size, 7);
    }

    #[test]
    fn matches_group_by_oracle_on_random_records() {
        use rand_core::{RngCore, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let base = NaiveDate::from_ymd_opt(2020, 1, 1).unwrap();
        let records: Vec<OutageRecord> = (0..10_000)
            .map(|_| {
                let day = rng.next_u64() % 365;
                let sec = rng.next_u64() % 86_400;
                let ts = (base + Days::new(day))
                    .and_hms_opt(0, 0, 0)
                    .unwrap()
                    .and_utc()
                    + chrono::Duration::seconds(sec as i64);
                OutageRecord {
                    timestamp: ts,
                    state: "TX".into(),
                    county: String::new(),
                    fips: String::new(),
                    customers_out: rng.next_u64() % 1000,
                }
            })
            .collect();

        // Brute-force group-by-date-then-max with earliest-instant ties.
        let mut oracle: BTreeMap<NaiveDate, (u64, DateTime<Utc>)> = BTreeMap::new();
        for r in &records {
            if r.customers_out == 0 {
                continue;
            }
            let d = r.timestamp.date_naive();
            let entry = oracle.entry(d).or_insert((r.customers_out, r.timestamp));
            if r.customers_out > entry.0
                || (r.customers_out == entry.0 && r.timestamp < entry.1)
            {
                *entry = (r.customers_out, r.timestamp);
            }
        }
        let expected: Vec<DailyEvent> = oracle
            .into_iter()
            .map(|(date, (size, at))| DailyEvent { date, size, at })
            .collect();

        assert_eq!(daily_max(&records), expected);
    }

    #[test]
    fn daily_max_is_idempotent() {
        let records = vec![
            rec("2021-02-14T01:00:00Z", 3),
            rec("2021-02-14T02:00:00Z", 9),
            rec("2021-02-15T01:00:00Z", 4),
        ];
        let once = daily_max(&records);
        let as_records: Vec<OutageRecord> = once
            .iter()
            .map(|e| OutageRecord {
                timestamp: e.at,
                state: String::new(),
                county: String::new(),
                fips: String::new(),
                customers_out: e.size,
            })
            .collect();
        assert_eq!(daily_max(&as_records), once);
    }

    #[test]
    fn full_cover_slice_is_identity() {
        let events: Vec<DailyEvent> = (1..=30).map(|d| ev(&format!("2021-01-{d:02}"), d)).collect();
        let t = "2021-01-30".parse().unwrap();
        assert_eq!(window_slice(&events, t, 30), &events[..]);
    }

    #[test]
    fn one_day_window_holds_at_most_the_edge_event() {
        let events = vec![ev("2021-01-01", 1), ev("2021-01-02", 2), ev("2021-01-03", 3)];
        let got = window_slice(&events, "2021-01-02".parse().unwrap(), 1);
        assert_eq!(got, &events[1..2]);
        let none = window_slice(&events, "2021-01-10".parse().unwrap(), 1);
        assert!(none.is_empty());
    }

    #[test]
    fn window_is_open_old_closed_new() {
        let events = vec![ev("2021-01-01", 1), ev("2021-01-02", 2), ev("2021-01-03", 3)];
        // (01-01, 01-03]: excludes the event dated exactly t - length.
        let got = window_slice(&events, "2021-01-03".parse().unwrap(), 2);
        assert_eq!(got, &events[1..3]);
    }

    #[test]
    fn slice_matches_scan_oracle_on_random_queries() {
        use rand_core::{RngCore, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(8);
        let base = NaiveDate::from_ymd_opt(2019, 6, 1).unwrap();
        let mut dates: Vec<u64> = (0..200).map(|_| rng.next_u64() % 800).collect();
        dates.sort_unstable();
        dates.dedup();
        let events: Vec<DailyEvent> = dates
            .iter()
            .map(|&d| {
                let date = base + Days::new(d);
                DailyEvent {
                    date,
                    size: rng.next_u64() % 100 + 1,
                    at: date.and_hms_opt(0, 0, 0).unwrap().and_utc(),
                }
            })
            .collect();

        for _ in 0..500 {
            let t = base + Days::new(rng.next_u64() % 900);
            let len = (rng.next_u64() % 400 + 1) as u32;
            let got = window_slice(&events, t, len);
            let oracle: Vec<&DailyEvent> = events
                .iter()
                .filter(|e| e.date > t - Days::new(len as u64) && e.date <= t)
                .collect();
            assert_eq!(got.iter().collect::<Vec<_>>(), oracle);
        }
    }

    #[test]
    fn daily_csv_round_trips() {
        let events = vec![ev("2021-01-01", 4), ev("2021-02-03", 4_500_000)];
        let mut buf = Vec::new();
        write_daily_csv(&mut buf, &events).unwrap();
        assert_eq!(
            String::from_utf8(buf.clone()).unwrap(),
            "date,size\n2021-01-01,4\n2021-02-03,4500000\n"
        );
        assert_eq!(read_daily_csv(buf.as_slice()).unwrap(), events);
    }

    #[test]
    fn daily_csv_rejects_unsorted_and_zero_sizes() {
        let unsorted = "date,size\n2021-01-02,5\n2021-01-01,4\n";
        assert!(matches!(
            read_daily_csv(unsorted.as_bytes()),
            Err(AggregateError::UnsortedDates { line: 3 })
        ));
        let zero = "date,size\n2021-01-02,0\n";
        assert!(matches!(
            read_daily_csv(zero.as_bytes()),
            Err(AggregateError::BadRow { line: 2, .. })
        ));
    }

    proptest! {
        /// Every produced size equals some input record's count, and longer
        /// windows contain shorter ones.
        #[test]
        fn sizes_come_from_inputs_and_windows_nest(seed in 0u64..300) {
            use rand_core::{RngCore, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let base = NaiveDate::from_ymd_opt(2020, 1, 1).unwrap();
            let records: Vec<OutageRecord> = (0..300)
                .map(|_| {
                    let ts = (base + Days::new(rng.next_u64() % 90))
                        .and_hms_opt(0, 0, 0)
                        .unwrap()
                        .and_utc()
                        + chrono::Duration::seconds((rng.next_u64() % 86_400) as i64);
                    OutageRecord {
                        timestamp: ts,
                        state: String::new(),
                        county: String::new(),
                        fips: String::new(),
                        customers_out: rng.next_u64() % 50,
                    }
                })
                .collect();
            let events = daily_max(&records);
            let inputs: std::collections::HashSet<u64> =
                records.iter().map(|r| r.customers_out).collect();
            for e in &events {
                prop_assert!(inputs.contains(&e.size));
                prop_assert!(e.size >= 1);
            }
            prop_assert!(events.windows(2).all(|w| w[0].date < w[1].date));

            let t = base + Days::new(60);
            let short = window_slice(&events, t, 10);
            let long = window_slice(&events, t, 40);
            for e in short {
                prop_assert!(long.contains(e));
            }
        }
    }
}
