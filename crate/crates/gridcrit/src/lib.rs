//! Criticality monitoring for event-size streams.
//!
//! `gridcrit` estimates the power-law exponent of event-size distributions
//! over rolling backward-looking windows and watches for transitions across
//! the critical threshold at exponent 1, below which a power law loses its
//! normalizability and extreme events stop being rare. The crate grew out of
//! power-grid outage analysis (county-level affected-customer counts, reduced
//! to one maximal event per day) but the machinery is generic over any
//! positive-integer event-size stream.
//!
//! The pipeline, end to end:
//!
//! 1. [`ingest`] — parse raw outage-snapshot CSVs into canonical records.
//! 2. [`aggregate`] — reduce snapshots to a daily-maximum event series.
//! 3. [`powerlaw`] — build size-frequency distributions and fit
//!    `ln f = C - alpha * ln x` by ordinary least squares.
//! 4. [`rolling`] — sweep a backward window over the event series to produce
//!    an exponent trajectory that never looks at data past its own window
//!    edge.
//! 5. [`transitions`] — detect threshold crossings, below-threshold episodes
//!    (duration, depth), and lead times to later extreme events.
//! 6. [`extremes`] — flag events above a percentile cutoff.
//! 7. [`synth`] — seeded truncated power-law generators used as ground truth
//!    for validating the estimator and the whole pipeline.
//!
//! The `gridcrit` binary wires these together behind `analyze`, `synth`, and
//! `report` subcommands; see [`cli`].
//!
//! All computation is deterministic: identical inputs and configuration
//! produce byte-identical artifacts, including under parallel window
//! evaluation.

pub mod aggregate;
pub mod cli;
pub mod extremes;
pub mod figure;
pub mod ingest;
pub mod powerlaw;
pub mod rolling;
pub mod synth;
pub mod transitions;

pub use aggregate::{daily_max, window_slice, DailyEvent};
pub use extremes::{extreme_events, percentile_threshold, ExtremeEvent};
pub use ingest::{filter_records, parse_outage_csv, IngestConfig, IngestReport, OutageRecord};
pub use powerlaw::{
    fit_ccdf_slope, fit_log_linear, frequency_distribution, FrequencyDistribution, PowerLawFit,
};
pub use rolling::{alpha_series, AlphaPoint, AlphaSeries, AlphaStatus, WindowSpec};
pub use synth::{generate_scenario, sample_power_law, ScenarioSpec, SynthSpec};
pub use transitions::{
    classify_regime, detect_crossings, episodes, lead_times, RegimeLabel, ThresholdCrossing,
    VulnerabilityEpisode,
};

pub(crate) mod numfmt {
    /// Format `x` with a fixed number of significant digits, plain decimal
    /// notation. Used everywhere a float enters a text artifact so that
    /// identical runs produce byte-identical files.
    pub fn format_sig(x: f64, digits: u32) -> String {
        if x == 0.0 {
            return "0.00000".to_string();
        }
        if !x.is_finite() {
            return format!("{x}");
        }
        let mag = x.abs().log10().floor() as i32;
        let dec = (digits as i32 - 1 - mag).max(0) as usize;
        format!("{x:.dec$}")
    }

    #[cfg(test)]
    mod tests {
        use super::format_sig;

        #[test]
        fn six_significant_digits() {
            assert_eq!(format_sig(1.45, 6), "1.45000");
            assert_eq!(format_sig(0.623001, 6), "0.623001");
            assert_eq!(format_sig(-0.5, 6), "-0.500000");
            assert_eq!(format_sig(12.3456789, 6), "12.3457");
            assert_eq!(format_sig(0.0, 6), "0.00000");
            assert_eq!(format_sig(123456.7, 6), "123457");
        }
    }
}
