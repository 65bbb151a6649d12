//! C ABI for the gridcrit library.
//!
//! The surface mirrors the pipeline: build an event series (from arrays or
//! a `date,size` CSV), compute the rolling exponent series over it, then
//! read points, threshold crossings, and below-threshold episodes out of
//! plain C structs. Handles are opaque; every constructor has a matching
//! `_free`, and every fallible call returns a [`GcStatus`] with results
//! through out-pointers.
//!
//! Dates cross the boundary as days since 1970-01-01 (UTC). Variable-length
//! results use the usual two-call pattern: pass a null buffer to learn the
//! length, then call again with capacity.
//!
//! The generated header lands in `include/gridcrit.h` at build time.

use chrono::NaiveDate;
use gridcrit::aggregate::{read_daily_csv, DailyEvent};
use gridcrit::rolling::{alpha_series, AlphaSeries, AlphaStatus, WindowSpec};
use gridcrit::synth::{sample_power_law, SynthSpec};
use gridcrit::transitions::{
    classify_regime, detect_crossings, episodes, CrossingDirection, RegimeLabel,
};
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Days between 0001-01-01 (chrono's day 1) and 1970-01-01.
const UNIX_EPOCH_DAYS_FROM_CE: i32 = 719_163;

fn date_from_epoch_days(days: i32) -> Option<NaiveDate> {
    NaiveDate::from_num_days_from_ce_opt(days + UNIX_EPOCH_DAYS_FROM_CE)
}

fn epoch_days_from_date(date: NaiveDate) -> i32 {
    chrono::Datelike::num_days_from_ce(&date) - UNIX_EPOCH_DAYS_FROM_CE
}

/// Call outcome. Anything but `Ok` leaves out-parameters untouched.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GcStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// An argument failed validation (bad dates, bad spec, bad range).
    InvalidArgument = 2,
    /// Input file could not be read or parsed.
    ParseError = 3,
    /// An index was out of bounds.
    OutOfBounds = 4,
    /// The provided buffer is too small; call again with more capacity.
    BufferTooSmall = 5,
    /// A panic was caught at the boundary; state is unchanged.
    InternalError = 6,
}

/// Opaque daily event series.
pub struct GcEventSeries {
    events: Vec<DailyEvent>,
}

/// Opaque exponent trajectory.
pub struct GcAlphaSeries {
    series: AlphaSeries,
}

/// Window geometry for `gc_alpha_series_compute`.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct GcWindowSpec {
    pub length_days: u32,
    pub step_days: u32,
    pub x_min: u64,
    pub min_points: u64,
}

/// Fit state of one trajectory point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GcPointStatus {
    PointOk = 0,
    PointInsufficientData = 1,
}

/// One trajectory point. When `status` is `PointInsufficientData` the three
/// fit fields are NaN and the counts describe the window that fell short.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct GcAlphaPoint {
    pub epoch_day: i32,
    pub status: GcPointStatus,
    pub alpha: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub n_distinct_sizes: u64,
    pub n_events: u64,
}

/// Crossing direction.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GcDirection {
    Downward = 0,
    Upward = 1,
}

/// A threshold crossing between adjacent fitted points.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct GcCrossing {
    pub epoch_day: i32,
    pub direction: GcDirection,
    pub alpha_before: f64,
    pub alpha_after: f64,
}

/// A below-threshold episode. `end_epoch_day` is meaningful only when
/// `has_end` is true; otherwise the episode was still open at series end.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct GcEpisode {
    pub start_epoch_day: i32,
    pub has_end: bool,
    pub end_epoch_day: i32,
    pub duration_days: u32,
    pub min_alpha: f64,
    pub depth: f64,
    pub min_alpha_epoch_day: i32,
}

/// Regime of an exponent relative to the critical threshold.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GcRegime {
    AboveThreshold = 0,
    NearThreshold = 1,
    BelowThreshold = 2,
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn gc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn gc_status_message(status: GcStatus) -> *const c_char {
    let msg: &'static str = match status {
        GcStatus::Ok => "ok\0",
        GcStatus::NullPointer => "required pointer argument was null\0",
        GcStatus::InvalidArgument => "invalid argument\0",
        GcStatus::ParseError => "could not read or parse input\0",
        GcStatus::OutOfBounds => "index out of bounds\0",
        GcStatus::BufferTooSmall => "buffer too small; call again with more capacity\0",
        GcStatus::InternalError => "internal error\0",
    };
    msg.as_ptr() as *const c_char
}

fn guarded(f: impl FnOnce() -> GcStatus) -> GcStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(GcStatus::InternalError)
}

/// Build an event series from parallel arrays of epoch days and sizes.
///
/// Dates must be strictly increasing and every size at least 1.
///
/// # Safety
/// `epoch_days` and `sizes` must point to at least `len` readable elements;
/// `out` must be a valid writable pointer. On `Ok` the caller owns the
/// handle and must release it with [`gc_events_free`].
#[no_mangle]
pub unsafe extern "C" fn gc_events_from_arrays(
    epoch_days: *const i32,
    sizes: *const u64,
    len: usize,
    out: *mut *mut GcEventSeries,
) -> GcStatus {
    if epoch_days.is_null() || sizes.is_null() || out.is_null() {
        return GcStatus::NullPointer;
    }
    let days = std::slice::from_raw_parts(epoch_days, len);
    let sizes = std::slice::from_raw_parts(sizes, len);
    guarded(|| {
        let mut events = Vec::with_capacity(len);
        for (&d, &size) in days.iter().zip(sizes) {
            let Some(date) = date_from_epoch_days(d) else {
                return GcStatus::InvalidArgument;
            };
            if size == 0 {
                return GcStatus::InvalidArgument;
            }
            if let Some(prev) = events.last() {
                let prev: &DailyEvent = prev;
                if date <= prev.date {
                    return GcStatus::InvalidArgument;
                }
            }
            events.push(DailyEvent {
                date,
                size,
                at: date.and_hms_opt(0, 0, 0).expect("midnight exists").and_utc(),
            });
        }
        unsafe {
            *out = Box::into_raw(Box::new(GcEventSeries { events }));
        }
        GcStatus::Ok
    })
}

/// Read an event series from a `date,size` CSV file.
///
/// # Safety
/// `path` must be a valid NUL-terminated string and `out` a writable
/// pointer. On `Ok` the caller owns the handle.
#[no_mangle]
pub unsafe extern "C" fn gc_events_from_csv_path(
    path: *const c_char,
    out: *mut *mut GcEventSeries,
) -> GcStatus {
    if path.is_null() || out.is_null() {
        return GcStatus::NullPointer;
    }
    let Ok(path) = CStr::from_ptr(path).to_str() else {
        return GcStatus::InvalidArgument;
    };
    guarded(|| {
        let Ok(file) = std::fs::File::open(path) else {
            return GcStatus::ParseError;
        };
        match read_daily_csv(std::io::BufReader::new(file)) {
            Ok(events) => {
                unsafe {
                    *out = Box::into_raw(Box::new(GcEventSeries { events }));
                }
                GcStatus::Ok
            }
            Err(_) => GcStatus::ParseError,
        }
    })
}

/// Number of events in the series; 0 for a null handle.
///
/// # Safety
/// `series` must be null or a live handle from an events constructor.
#[no_mangle]
pub unsafe extern "C" fn gc_events_len(series: *const GcEventSeries) -> usize {
    if series.is_null() {
        return 0;
    }
    (*series).events.len()
}

/// Release an event series. Null is a no-op.
///
/// # Safety
/// `series` must be null or a live handle, and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn gc_events_free(series: *mut GcEventSeries) {
    if !series.is_null() {
        drop(Box::from_raw(series));
    }
}

/// The default window: 180-day length, 30-day step, x_min 1, 10 points.
#[no_mangle]
pub extern "C" fn gc_window_spec_default() -> GcWindowSpec {
    let spec = WindowSpec::default();
    GcWindowSpec {
        length_days: spec.length_days,
        step_days: spec.step_days,
        x_min: spec.x_min,
        min_points: spec.min_points as u64,
    }
}

/// Compute the rolling exponent series over `[start, end]` (epoch days).
///
/// # Safety
/// `events` must be a live events handle and `out` writable. On `Ok` the
/// caller owns the handle and must release it with [`gc_alpha_series_free`].
#[no_mangle]
pub unsafe extern "C" fn gc_alpha_series_compute(
    events: *const GcEventSeries,
    spec: GcWindowSpec,
    start_epoch_day: i32,
    end_epoch_day: i32,
    out: *mut *mut GcAlphaSeries,
) -> GcStatus {
    if events.is_null() || out.is_null() {
        return GcStatus::NullPointer;
    }
    let events = &(*events).events;
    guarded(|| {
        let (Some(start), Some(end)) = (
            date_from_epoch_days(start_epoch_day),
            date_from_epoch_days(end_epoch_day),
        ) else {
            return GcStatus::InvalidArgument;
        };
        let spec = WindowSpec {
            length_days: spec.length_days,
            step_days: spec.step_days,
            x_min: spec.x_min,
            min_points: spec.min_points as usize,
        };
        match alpha_series(events, &spec, start, end) {
            Ok(series) => {
                unsafe {
                    *out = Box::into_raw(Box::new(GcAlphaSeries { series }));
                }
                GcStatus::Ok
            }
            Err(_) => GcStatus::InvalidArgument,
        }
    })
}

/// Number of points in the trajectory; 0 for a null handle.
///
/// # Safety
/// `series` must be null or a live alpha-series handle.
#[no_mangle]
pub unsafe extern "C" fn gc_alpha_series_len(series: *const GcAlphaSeries) -> usize {
    if series.is_null() {
        return 0;
    }
    (*series).series.points.len()
}

/// Copy out one trajectory point.
///
/// # Safety
/// `series` must be a live alpha-series handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gc_alpha_series_point(
    series: *const GcAlphaSeries,
    index: usize,
    out: *mut GcAlphaPoint,
) -> GcStatus {
    if series.is_null() || out.is_null() {
        return GcStatus::NullPointer;
    }
    let points = &(*series).series.points;
    let Some(point) = points.get(index) else {
        return GcStatus::OutOfBounds;
    };
    let converted = match &point.status {
        AlphaStatus::Ok(fit) => GcAlphaPoint {
            epoch_day: epoch_days_from_date(point.t),
            status: GcPointStatus::PointOk,
            alpha: fit.alpha,
            intercept: fit.intercept,
            r_squared: fit.r_squared,
            n_distinct_sizes: fit.n_distinct_sizes as u64,
            n_events: fit.n_events,
        },
        AlphaStatus::InsufficientData {
            n_distinct_sizes,
            n_events,
        } => GcAlphaPoint {
            epoch_day: epoch_days_from_date(point.t),
            status: GcPointStatus::PointInsufficientData,
            alpha: f64::NAN,
            intercept: f64::NAN,
            r_squared: f64::NAN,
            n_distinct_sizes: *n_distinct_sizes as u64,
            n_events: *n_events,
        },
    };
    *out = converted;
    GcStatus::Ok
}

/// Release an alpha series. Null is a no-op.
///
/// # Safety
/// `series` must be null or a live handle, and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn gc_alpha_series_free(series: *mut GcAlphaSeries) {
    if !series.is_null() {
        drop(Box::from_raw(series));
    }
}

/// Detect threshold crossings. Two-call: with `buf` null, only `out_len` is
/// written; otherwise up to `cap` crossings are copied.
///
/// # Safety
/// `series` must be a live handle; `out_len` writable; `buf` either null or
/// pointing at `cap` writable elements.
#[no_mangle]
pub unsafe extern "C" fn gc_crossings(
    series: *const GcAlphaSeries,
    threshold: f64,
    buf: *mut GcCrossing,
    cap: usize,
    out_len: *mut usize,
) -> GcStatus {
    if series.is_null() || out_len.is_null() {
        return GcStatus::NullPointer;
    }
    let series = &(*series).series;
    guarded(|| {
        let crossings = detect_crossings(series, threshold);
        unsafe {
            *out_len = crossings.len();
        }
        if buf.is_null() {
            return GcStatus::Ok;
        }
        if cap < crossings.len() {
            return GcStatus::BufferTooSmall;
        }
        for (i, c) in crossings.iter().enumerate() {
            unsafe {
                *buf.add(i) = GcCrossing {
                    epoch_day: epoch_days_from_date(c.t),
                    direction: match c.direction {
                        CrossingDirection::Downward => GcDirection::Downward,
                        CrossingDirection::Upward => GcDirection::Upward,
                    },
                    alpha_before: c.alpha_before,
                    alpha_after: c.alpha_after,
                };
            }
        }
        GcStatus::Ok
    })
}

/// Extract below-threshold episodes. Same two-call pattern as
/// [`gc_crossings`].
///
/// # Safety
/// `series` must be a live handle; `out_len` writable; `buf` either null or
/// pointing at `cap` writable elements.
#[no_mangle]
pub unsafe extern "C" fn gc_episodes(
    series: *const GcAlphaSeries,
    threshold: f64,
    buf: *mut GcEpisode,
    cap: usize,
    out_len: *mut usize,
) -> GcStatus {
    if series.is_null() || out_len.is_null() {
        return GcStatus::NullPointer;
    }
    let series = &(*series).series;
    guarded(|| {
        let eps = episodes(series, threshold);
        unsafe {
            *out_len = eps.len();
        }
        if buf.is_null() {
            return GcStatus::Ok;
        }
        if cap < eps.len() {
            return GcStatus::BufferTooSmall;
        }
        for (i, e) in eps.iter().enumerate() {
            unsafe {
                *buf.add(i) = GcEpisode {
                    start_epoch_day: epoch_days_from_date(e.start_t),
                    has_end: e.end_t.is_some(),
                    end_epoch_day: e.end_t.map(epoch_days_from_date).unwrap_or(0),
                    duration_days: e.duration_days,
                    min_alpha: e.min_alpha,
                    depth: e.depth,
                    min_alpha_epoch_day: epoch_days_from_date(e.min_alpha_t),
                };
            }
        }
        GcStatus::Ok
    })
}

/// Label an exponent relative to the threshold with a tolerance band.
#[no_mangle]
pub extern "C" fn gc_classify_regime(alpha: f64, threshold: f64, tol: f64) -> GcRegime {
    match classify_regime(alpha, threshold, tol) {
        RegimeLabel::AboveThreshold => GcRegime::AboveThreshold,
        RegimeLabel::NearThreshold => GcRegime::NearThreshold,
        RegimeLabel::BelowThreshold => GcRegime::BelowThreshold,
    }
}

/// Nearest-rank percentile of `sizes`; `p` strictly between 0 and 100.
///
/// # Safety
/// `sizes` must point to `len` readable elements and `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn gc_percentile_threshold(
    sizes: *const u64,
    len: usize,
    p: f64,
    out: *mut u64,
) -> GcStatus {
    if sizes.is_null() || out.is_null() {
        return GcStatus::NullPointer;
    }
    let sizes = std::slice::from_raw_parts(sizes, len);
    guarded(|| match gridcrit::extremes::percentile_threshold(sizes, p) {
        Ok(v) => {
            unsafe {
                *out = v;
            }
            GcStatus::Ok
        }
        Err(_) => GcStatus::InvalidArgument,
    })
}

/// Draw `n` sizes from the truncated power law `x^-alpha` on
/// `[x_min, x_max]`, seeded; identical arguments reproduce identical
/// samples.
///
/// # Safety
/// `out_buf` must point to `n` writable elements.
#[no_mangle]
pub unsafe extern "C" fn gc_sample_power_law(
    alpha: f64,
    x_min: u64,
    x_max: u64,
    seed: u64,
    out_buf: *mut u64,
    n: usize,
) -> GcStatus {
    if out_buf.is_null() {
        return GcStatus::NullPointer;
    }
    guarded(|| {
        let spec = SynthSpec {
            alpha_true: alpha,
            x_min,
            x_max,
            n,
            seed,
        };
        match sample_power_law(&spec) {
            Ok(samples) => {
                let out = unsafe { std::slice::from_raw_parts_mut(out_buf, n) };
                out.copy_from_slice(&samples);
                GcStatus::Ok
            }
            Err(_) => GcStatus::InvalidArgument,
        }
    })
}
