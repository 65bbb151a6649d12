//! Threshold crossings, below-threshold episodes, regime labels, and lead
//! times to extreme events.
//!
//! The threshold of interest is exponent 1: below it the power law's
//! normalization diverges and extreme events stop being statistically rare.
//! Crossings are read off the sampled series without interpolation, so their
//! time resolution equals the series step. Insufficient-data points break
//! adjacency — no crossing is inferred across a gap, and an episode never
//! claims the system stayed below threshold through an unobserved stretch.

use crate::extremes::ExtremeEvent;
use crate::rolling::AlphaSeries;
use chrono::{Days, NaiveDate};
use serde::{Deserialize, Serialize};

/// Direction of a threshold crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CrossingDirection {
    Downward,
    Upward,
}

/// A crossing between two adjacent ok points straddling the threshold.
/// `t` is the later point's date.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdCrossing {
    pub t: NaiveDate,
    pub direction: CrossingDirection,
    pub alpha_before: f64,
    pub alpha_after: f64,
}

/// A maximal run of ok points with exponent below the threshold.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VulnerabilityEpisode {
    /// Date of the first below-threshold point.
    pub start_t: NaiveDate,
    /// Date of the last below-threshold point, or `None` when the run is
    /// still open at the series end.
    pub end_t: Option<NaiveDate>,
    /// Days from the first to the last member point (0 for a single point).
    pub duration_days: u32,
    /// Smallest exponent seen during the episode.
    pub min_alpha: f64,
    /// Excursion depth: threshold minus `min_alpha`.
    pub depth: f64,
    /// Date of the (first) minimal point.
    pub min_alpha_t: NaiveDate,
}

/// Position of an exponent relative to the critical threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegimeLabel {
    AboveThreshold,
    NearThreshold,
    BelowThreshold,
}

/// An extreme event following an episode onset within the horizon.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LeadTimeAssociation {
    /// Episode onset (the downward crossing date).
    pub crossing_t: NaiveDate,
    pub event_date: NaiveDate,
    /// Days from onset to the event; always positive.
    pub lead_days: u32,
    pub event_size: u64,
}

/// Detect threshold crossings between adjacent ok points.
///
/// A downward crossing has `alpha_before >= threshold > alpha_after`; upward
/// is the mirror image. Pairs with an insufficient-data point on either side
/// are not adjacent and produce nothing.
pub fn detect_crossings(series: &AlphaSeries, threshold: f64) -> Vec<ThresholdCrossing> {
    let mut crossings = Vec::new();
    for pair in series.points.windows(2) {
        let (Some(before), Some(after)) = (pair[0].alpha(), pair[1].alpha()) else {
            continue;
        };
        let was_below = before < threshold;
        let is_below = after < threshold;
        if was_below != is_below {
            crossings.push(ThresholdCrossing {
                t: pair[1].t,
                direction: if is_below {
                    CrossingDirection::Downward
                } else {
                    CrossingDirection::Upward
                },
                alpha_before: before,
                alpha_after: after,
            });
        }
    }
    crossings
}

/// Extract maximal below-threshold runs of ok points.
///
/// Insufficient-data gaps terminate a run. A run that reaches the final
/// series point is reported as ongoing (`end_t = None`); its duration still
/// measures first-to-last member point.
pub fn episodes(series: &AlphaSeries, threshold: f64) -> Vec<VulnerabilityEpisode> {
    struct Run {
        start: NaiveDate,
        last: NaiveDate,
        min_alpha: f64,
        min_t: NaiveDate,
    }
    let mut out = Vec::new();
    let mut run: Option<Run> = None;
    let mut close = |run: &mut Option<Run>, open_at_end: bool| {
        if let Some(r) = run.take() {
            out.push(VulnerabilityEpisode {
                start_t: r.start,
                end_t: if open_at_end { None } else { Some(r.last) },
                duration_days: (r.last - r.start).num_days() as u32,
                min_alpha: r.min_alpha,
                depth: threshold - r.min_alpha,
                min_alpha_t: r.min_t,
            });
        }
    };

    for point in &series.points {
        match point.alpha() {
            Some(alpha) if alpha < threshold => match &mut run {
                Some(r) => {
                    r.last = point.t;
                    if alpha < r.min_alpha {
                        r.min_alpha = alpha;
                        r.min_t = point.t;
                    }
                }
                None => {
                    run = Some(Run {
                        start: point.t,
                        last: point.t,
                        min_alpha: alpha,
                        min_t: point.t,
                    });
                }
            },
            // Above threshold or a gap: either way the run is over.
            _ => close(&mut run, false),
        }
    }
    close(&mut run, true);
    out
}

/// Place an exponent relative to the threshold with a tolerance band.
///
/// `|alpha - threshold| <= tol` is near; above the band is above; the rest
/// is below. Monotone in `alpha`: raising it never moves the label toward
/// below-threshold.
pub fn classify_regime(alpha: f64, threshold: f64, tol: f64) -> RegimeLabel {
    debug_assert!(tol >= 0.0, "tolerance must be non-negative");
    let tol = tol.max(0.0);
    if (alpha - threshold).abs() <= tol {
        RegimeLabel::NearThreshold
    } else if alpha > threshold + tol {
        RegimeLabel::AboveThreshold
    } else {
        RegimeLabel::BelowThreshold
    }
}

/// Associate episodes with the extreme events that follow their onset.
///
/// For each episode, every extreme event dated in
/// `(start_t, start_t + horizon_days]` yields an association; the lead time
/// is measured from the episode onset. Both inputs must be chronologically
/// sorted.
pub fn lead_times(
    episodes: &[VulnerabilityEpisode],
    extremes: &[ExtremeEvent],
    horizon_days: u32,
) -> Vec<LeadTimeAssociation> {
    debug_assert!(episodes.windows(2).all(|w| w[0].start_t <= w[1].start_t));
    debug_assert!(extremes.windows(2).all(|w| w[0].date <= w[1].date));
    let mut out = Vec::new();
    for ep in episodes {
        let horizon_end = ep.start_t + Days::new(horizon_days as u64);
        for ev in extremes {
            if ev.date > horizon_end {
                break;
            }
            if ev.date > ep.start_t {
                out.push(LeadTimeAssociation {
                    crossing_t: ep.start_t,
                    event_date: ev.date,
                    lead_days: (ev.date - ep.start_t).num_days() as u32,
                    event_size: ev.size,
                });
            }
        }
    }
    out
}
