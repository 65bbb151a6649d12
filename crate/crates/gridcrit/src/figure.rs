//! Self-contained SVG chart of an exponent trajectory.
//!
//! One figure carries the whole story: the exponent line on the left axis,
//! the critical-threshold rule, extreme events as vertical spikes scaled by
//! the logarithm of their size on the right axis, and an optional dated
//! marker. Plain SVG text, no rendering dependencies, byte-stable output.

use crate::extremes::ExtremeEvent;
use crate::rolling::AlphaSeries;
use chrono::{Datelike, NaiveDate};
use std::fmt::Write;

const WIDTH: f64 = 960.0;
const HEIGHT: f64 = 420.0;
const MARGIN_LEFT: f64 = 60.0;
const MARGIN_RIGHT: f64 = 70.0;
const MARGIN_TOP: f64 = 30.0;
const MARGIN_BOTTOM: f64 = 50.0;

/// Render the figure. `marker` draws a dated vertical rule (e.g. a known
/// crisis date); `threshold` draws the horizontal critical rule.
pub fn render_alpha_figure(
    series: &AlphaSeries,
    extremes: &[ExtremeEvent],
    threshold: f64,
    marker: Option<NaiveDate>,
) -> String {
    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;

    // Horizontal domain: union of series dates, extreme dates, marker.
    let mut dates: Vec<NaiveDate> = series.points.iter().map(|p| p.t).collect();
    dates.extend(extremes.iter().map(|e| e.date));
    if let Some(m) = marker {
        dates.push(m);
    }
    let (d0, d1) = match (dates.iter().min(), dates.iter().max()) {
        (Some(&a), Some(&b)) if a < b => (a, b),
        (Some(&a), _) => (a, a + chrono::Days::new(1)),
        _ => {
            let today = NaiveDate::from_ymd_opt(2000, 1, 1).expect("valid date");
            (today, today + chrono::Days::new(1))
        }
    };
    let span_days = (d1 - d0).num_days().max(1) as f64;
    let x = |d: NaiveDate| MARGIN_LEFT + (d - d0).num_days() as f64 / span_days * plot_w;

    // Left axis: exponent. Pad around observed values and the threshold.
    let alphas: Vec<f64> = series.points.iter().filter_map(|p| p.alpha()).collect();
    let mut a_lo = threshold.min(alphas.iter().copied().fold(f64::INFINITY, f64::min));
    let mut a_hi = threshold.max(alphas.iter().copied().fold(f64::NEG_INFINITY, f64::max));
    if !a_lo.is_finite() || !a_hi.is_finite() {
        a_lo = 0.0;
        a_hi = 2.0;
    }
    let pad = ((a_hi - a_lo) * 0.1).max(0.1);
    a_lo -= pad;
    a_hi += pad;
    let y_alpha = |a: f64| MARGIN_TOP + (a_hi - a) / (a_hi - a_lo) * plot_h;

    // Right axis: log10 of extreme size, spikes rising from the floor.
    let log_max = extremes
        .iter()
        .map(|e| (e.size as f64).log10())
        .fold(1.0f64, f64::max);
    let spike_h = |size: u64| (size as f64).log10().max(0.0) / log_max * plot_h * 0.85;

    let mut svg = String::new();
    let _ = write!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">
<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>
"#
    );

    // Axes.
    let x0 = MARGIN_LEFT;
    let x1 = WIDTH - MARGIN_RIGHT;
    let y0 = MARGIN_TOP;
    let y1 = HEIGHT - MARGIN_BOTTOM;
    let _ = writeln!(
        svg,
        r#"<g class="axes" stroke="#333" stroke-width="1" fill="none">
<line x1="{x0:.2}" y1="{y1:.2}" x2="{x1:.2}" y2="{y1:.2}"/>
<line x1="{x0:.2}" y1="{y0:.2}" x2="{x0:.2}" y2="{y1:.2}"/>
<line x1="{x1:.2}" y1="{y0:.2}" x2="{x1:.2}" y2="{y1:.2}"/>
</g>"#
    );

    // Year ticks.
    let _ = writeln!(svg, r#"<g class="ticks" font-family="sans-serif" font-size="11" fill="#333">"#);
    for year in d0.year()..=d1.year() {
        if let Some(jan1) = NaiveDate::from_ymd_opt(year, 1, 1) {
            if jan1 >= d0 && jan1 <= d1 {
                let xt = x(jan1);
                let _ = writeln!(
                    svg,
                    r#"<line x1="{xt:.2}" y1="{y1:.2}" x2="{xt:.2}" y2="{:.2}" stroke="#333"/><text x="{xt:.2}" y="{:.2}" text-anchor="middle">{year}</text>"#,
                    y1 + 5.0,
                    y1 + 18.0
                );
            }
        }
    }
    // Left-axis value ticks at 0.25 steps.
    let mut tick = (a_lo / 0.25).ceil() * 0.25;
    while tick <= a_hi {
        let yt = y_alpha(tick);
        let _ = writeln!(
            svg,
            r#"<line x1="{:.2}" y1="{yt:.2}" x2="{x0:.2}" y2="{yt:.2}" stroke="#333"/><text x="{:.2}" y="{:.2}" text-anchor="end">{tick:.2}</text>"#,
            x0 - 5.0,
            x0 - 8.0,
            yt + 4.0
        );
        tick += 0.25;
    }
    let _ = writeln!(svg, "</g>");

    // Extreme-event spikes (log-scaled heights, right axis).
    let _ = writeln!(svg, r#"<g class="extremes" stroke="#cc2222" stroke-width="1.5">"#);
    for e in extremes {
        let xe = x(e.date);
        let h = spike_h(e.size);
        let _ = writeln!(
            svg,
            r#"<line class="extreme" x1="{xe:.2}" y1="{y1:.2}" x2="{xe:.2}" y2="{:.2}"/>"#,
            y1 - h
        );
    }
    let _ = writeln!(svg, "</g>");

    // Critical threshold rule.
    let yt = y_alpha(threshold);
    let _ = writeln!(
        svg,
        r#"<line class="threshold" x1="{x0:.2}" y1="{yt:.2}" x2="{x1:.2}" y2="{yt:.2}" stroke="#cc2222" stroke-width="1" stroke-dasharray="6,4"/>"#
    );

    // Marker date rule.
    if let Some(m) = marker {
        let xm = x(m);
        let _ = writeln!(
            svg,
            r#"<line class="marker" x1="{xm:.2}" y1="{y0:.2}" x2="{xm:.2}" y2="{y1:.2}" stroke="#cc2222" stroke-width="1" stroke-dasharray="4,4"/>"#
        );
    }

    // Exponent trajectory: one polyline per gap-free run of ok points.
    let mut runs: Vec<Vec<(f64, f64)>> = Vec::new();
    let mut current: Vec<(f64, f64)> = Vec::new();
    for p in &series.points {
        match p.alpha() {
            Some(a) => current.push((x(p.t), y_alpha(a))),
            None => {
                if !current.is_empty() {
                    runs.push(std::mem::take(&mut current));
                }
            }
        }
    }
    if !current.is_empty() {
        runs.push(current);
    }
    for run in &runs {
        if run.len() == 1 {
            let (cx, cy) = run[0];
            let _ = writeln!(
                svg,
                r#"<circle class="alpha-point" cx="{cx:.2}" cy="{cy:.2}" r="2.5" fill="#1f4e9c"/>"#
            );
            continue;
        }
        let pts: Vec<String> = run.iter().map(|(px, py)| format!("{px:.2},{py:.2}")).collect();
        let _ = writeln!(
            svg,
            r#"<polyline class="alpha-line" points="{}" fill="none" stroke="#1f4e9c" stroke-width="1.8"/>"#,
            pts.join(" ")
        );
    }

    // Labels.
    let _ = writeln!(
        svg,
        r#"<g font-family="sans-serif" font-size="12" fill="#333">
<text x="{:.2}" y="{:.2}" transform="rotate(-90 {:.2} {:.2})" text-anchor="middle">critical exponent</text>
<text x="{:.2}" y="{:.2}" transform="rotate(90 {:.2} {:.2})" text-anchor="middle">log10 extreme size</text>
</g>"#,
        16.0,
        (y0 + y1) / 2.0,
        16.0,
        (y0 + y1) / 2.0,
        WIDTH - 14.0,
        (y0 + y1) / 2.0,
        WIDTH - 14.0,
        (y0 + y1) / 2.0
    );

    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::powerlaw::PowerLawFit;
    use crate::rolling::{AlphaPoint, AlphaStatus, WindowSpec};

    fn series(values: &[Option<f64>]) -> AlphaSeries {
        let base: NaiveDate = "2020-01-01".parse().unwrap();
        AlphaSeries {
            spec: WindowSpec::default(),
            points: values
                .iter()
                .enumerate()
                .map(|(i, v)| AlphaPoint {
                    t: base + chrono::Days::new(30 * i as u64),
                    status: match v {
                        Some(alpha) => AlphaStatus::Ok(PowerLawFit {
                            alpha: *alpha,
                            intercept: 1.0,
                            r_squared: 0.9,
                            n_distinct_sizes: 12,
                            n_events: 180,
                        }),
                        None => AlphaStatus::InsufficientData {
                            n_distinct_sizes: 2,
                            n_events: 5,
                        },
                    },
                })
                .collect(),
        }
    }

    #[test]
    fn figure_contains_all_advertised_elements() {
        let s = series(&[Some(1.4), Some(1.2), Some(0.9), Some(0.7), Some(1.1)]);
        let extremes = vec![
            ExtremeEvent {
                date: "2020-03-15".parse().unwrap(),
                size: 4_500_000,
                threshold_size: 100_000,
                percentile: 99.9,
            },
            ExtremeEvent {
                date: "2020-04-20".parse().unwrap(),
                size: 150_000,
                threshold_size: 100_000,
                percentile: 99.9,
            },
        ];
        let svg = render_alpha_figure(&s, &extremes, 1.0, Some("2020-03-15".parse().unwrap()));
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains(r#"class="alpha-line""#));
        assert!(svg.contains(r#"class="threshold""#));
        assert!(svg.contains(r#"class="marker""#));
        assert_eq!(svg.matches(r#"class="extreme""#).count(), 2);
        assert!(svg.ends_with("</svg>\n"));
    }

    #[test]
    fn gaps_split_the_trajectory_into_separate_lines() {
        let s = series(&[Some(1.4), Some(1.2), None, Some(0.9), Some(0.8)]);
        let svg = render_alpha_figure(&s, &[], 1.0, None);
        assert_eq!(svg.matches(r#"class="alpha-line""#).count(), 2);
    }

    #[test]
    fn rendering_is_deterministic() {
        let s = series(&[Some(1.3), Some(0.8)]);
        let a = render_alpha_figure(&s, &[], 1.0, None);
        let b = render_alpha_figure(&s, &[], 1.0, None);
        assert_eq!(a, b);
    }
}
