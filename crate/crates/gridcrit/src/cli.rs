//! Batch pipeline orchestration behind the command-line interface.
//!
//! `analyze` runs ingest → daily aggregation → rolling exponent series →
//! transition/extreme analysis and writes the artifact set into an output
//! directory; `synth` renders a scenario file into a daily event CSV;
//! `report` turns a finished run directory into a human-readable summary.
//!
//! Artifacts are byte-stable: floats are written with six significant
//! digits, JSON field order is fixed, and the run manifest carries no
//! wall-clock state — identical inputs and configuration reproduce identical
//! bytes. The manifest (inputs with checksums, full configuration, ingest
//! tallies, tool version) is what makes a run replayable.

use crate::aggregate::{read_daily_csv, write_daily_csv, DailyEvent, DailyMaxAccumulator};
use crate::extremes::{extreme_events, read_extremes_csv, write_extremes_csv, ExtremeEvent};
use crate::figure::render_alpha_figure;
use crate::ingest::{parse_outage_csv_with, IngestConfig, IngestError, IngestReport};
use crate::numfmt::format_sig;
use crate::rolling::{
    alpha_series, read_alpha_csv, write_alpha_csv, AlphaPoint, AlphaSeries, RollingError,
    WindowSpec,
};
use crate::synth::{generate_scenario, ScenarioSpec};
use crate::transitions::{
    classify_regime, detect_crossings, episodes, lead_times, CrossingDirection, RegimeLabel,
    ThresholdCrossing, VulnerabilityEpisode,
};
use chrono::{Days, NaiveDate};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use thiserror::Error;

pub const TOOL_NAME: &str = "gridcrit";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Which artifacts a run writes. The manifest is always written.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct EmitFlags {
    pub alpha_csv: bool,
    pub episodes_json: bool,
    pub crossings_json: bool,
    pub extremes_csv: bool,
    pub daily_csv: bool,
    pub figure_svg: bool,
}

impl Default for EmitFlags {
    fn default() -> Self {
        Self {
            alpha_csv: true,
            episodes_json: true,
            crossings_json: true,
            extremes_csv: true,
            daily_csv: false,
            figure_svg: false,
        }
    }
}

/// Inclusive analysis date range for the exponent series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DateRange {
    pub start: NaiveDate,
    pub end: NaiveDate,
}

/// Full configuration of an `analyze` run. Serializable as the `--config`
/// JSON document; command-line flags override individual fields.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RunConfig {
    /// Input CSV paths, read in order.
    pub inputs: Vec<PathBuf>,
    /// When true, inputs are already daily event series (`date,size`)
    /// rather than raw outage snapshots.
    pub events_input: bool,
    pub ingest: IngestConfig,
    pub window: WindowSpec,
    /// Critical threshold on the exponent.
    pub threshold: f64,
    /// Percentile defining extreme events.
    pub extreme_percentile: f64,
    /// Horizon for lead-time association, days after an episode onset.
    pub horizon_days: u32,
    /// Analysis range; derived from the data when absent (from the day
    /// before the first event through the last event).
    pub range: Option<DateRange>,
    pub out_dir: PathBuf,
    pub emit: EmitFlags,
    /// Optional dated rule drawn on the figure.
    pub marker_date: Option<NaiveDate>,
    /// Tolerance band for regime labelling in reports.
    pub regime_tol: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            inputs: Vec::new(),
            events_input: false,
            ingest: IngestConfig::default(),
            window: WindowSpec::default(),
            threshold: 1.0,
            extreme_percentile: 99.9,
            horizon_days: 365,
            range: None,
            out_dir: PathBuf::from("gridcrit-run"),
            emit: EmitFlags::default(),
            marker_date: None,
            regime_tol: 0.0,
        }
    }
}

/// Pipeline failure, mapped onto process exit codes.
#[derive(Debug, Error)]
pub enum CliError {
    /// Unusable configuration or unreadable input (exit 1).
    #[error("configuration error: {0}")]
    Config(String),
    /// Ingest quality ceiling breached (exit 2).
    #[error("data-quality error: {0}")]
    DataQuality(String),
    /// No window in the whole range produced a fit (exit 3).
    #[error("insufficient data: {0}")]
    InsufficientData(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 1,
            CliError::DataQuality(_) => 2,
            CliError::InsufficientData(_) => 3,
        }
    }
}

/// One input file as recorded in the manifest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDigest {
    pub path: PathBuf,
    pub sha256: String,
}

/// Replayable description of a finished run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub config: RunConfig,
    pub inputs: Vec<InputDigest>,
    /// Present for raw-snapshot inputs; absent in events mode.
    pub ingest: Option<IngestReport>,
    pub event_count: usize,
    pub first_event: Option<NaiveDate>,
    pub last_event: Option<NaiveDate>,
    pub series_points: usize,
    pub series_ok_points: usize,
    pub artifacts: Vec<String>,
}

/// Result of a successful `analyze`.
#[derive(Debug)]
pub struct AnalyzeOutcome {
    pub manifest: RunManifest,
    pub series: AlphaSeries,
    pub crossings: Vec<ThresholdCrossing>,
    pub episodes: Vec<VulnerabilityEpisode>,
    pub extremes: Vec<ExtremeEvent>,
}

fn sha256_file(path: &Path) -> Result<String, CliError> {
    let file = File::open(path)
        .map_err(|e| CliError::Config(format!("cannot open input '{}': {e}", path.display())))?;
    let mut reader = BufReader::new(file);
    let mut hasher = Sha256::new();
    let mut buf = [0u8; 64 * 1024];
    loop {
        let n = reader
            .read(&mut buf)
            .map_err(|e| CliError::Config(format!("cannot read '{}': {e}", path.display())))?;
        if n == 0 {
            break;
        }
        hasher.update(&buf[..n]);
    }
    Ok(hex::encode(hasher.finalize()))
}

fn load_events(config: &RunConfig) -> Result<(Vec<DailyEvent>, Option<IngestReport>), CliError> {
    if config.inputs.is_empty() {
        return Err(CliError::Config("no input files given".into()));
    }
    if config.events_input {
        let mut events: Vec<DailyEvent> = Vec::new();
        for path in &config.inputs {
            let file = File::open(path).map_err(|e| {
                CliError::Config(format!("cannot open input '{}': {e}", path.display()))
            })?;
            let part = read_daily_csv(BufReader::new(file)).map_err(|e| {
                CliError::Config(format!("bad events file '{}': {e}", path.display()))
            })?;
            if let (Some(last), Some(first)) = (events.last(), part.first()) {
                if first.date <= last.date {
                    return Err(CliError::Config(format!(
                        "events files overlap or are out of order at '{}'",
                        path.display()
                    )));
                }
            }
            events.extend(part);
        }
        Ok((events, None))
    } else {
        let mut acc = DailyMaxAccumulator::new();
        let mut report = IngestReport::default();
        for path in &config.inputs {
            let file = File::open(path).map_err(|e| {
                CliError::Config(format!("cannot open input '{}': {e}", path.display()))
            })?;
            let part = parse_outage_csv_with(BufReader::new(file), &config.ingest, |record| {
                acc.push(record.timestamp, record.customers_out);
            })
            .map_err(|e| match e {
                IngestError::SkipFractionExceeded { .. } => CliError::DataQuality(format!(
                    "{e} in '{}'",
                    path.display()
                )),
                IngestError::MalformedRow { .. } => {
                    CliError::DataQuality(format!("{e} in '{}'", path.display()))
                }
                other => CliError::Config(format!("{other} in '{}'", path.display())),
            })?;
            report.merge(&part);
        }
        Ok((acc.finish(), Some(report)))
    }
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let file = File::create(path)
        .map_err(|e| CliError::Config(format!("cannot create '{}': {e}", path.display())))?;
    let mut w = BufWriter::new(file);
    serde_json::to_writer_pretty(&mut w, value)
        .map_err(|e| CliError::Config(format!("cannot write '{}': {e}", path.display())))?;
    w.write_all(b"\n")
        .and_then(|_| w.flush())
        .map_err(|e| CliError::Config(format!("cannot write '{}': {e}", path.display())))?;
    Ok(())
}

/// Run the full analysis pipeline and write artifacts.
pub fn cmd_analyze(config: &RunConfig) -> Result<AnalyzeOutcome, CliError> {
    let inputs: Vec<InputDigest> = config
        .inputs
        .iter()
        .map(|p| {
            Ok(InputDigest {
                path: p.clone(),
                sha256: sha256_file(p)?,
            })
        })
        .collect::<Result<_, CliError>>()?;

    let (events, ingest_report) = load_events(config)?;
    if events.is_empty() {
        return Err(CliError::InsufficientData(
            "no usable events: input produced an empty daily series".into(),
        ));
    }

    let first = events.first().expect("nonempty").date;
    let last = events.last().expect("nonempty").date;
    let range = config.range.unwrap_or(DateRange {
        // Start the day before the first event so the first full window
        // (open at its old end) still contains that event.
        start: first - Days::new(1),
        end: last,
    });
    if range.start + Days::new(config.window.length_days as u64) > range.end {
        let msg = format!(
            "range [{}, {}] is shorter than one {}-day window",
            range.start, range.end, config.window.length_days
        );
        return if config.range.is_some() {
            Err(CliError::Config(msg))
        } else {
            Err(CliError::InsufficientData(msg))
        };
    }

    let series = alpha_series(&events, &config.window, range.start, range.end).map_err(|e| {
        match e {
            RollingError::InvalidRange { .. } => CliError::InsufficientData(e.to_string()),
            other => CliError::Config(other.to_string()),
        }
    })?;
    let ok_points = series.points.iter().filter(|p| p.is_ok()).count();
    if ok_points == 0 {
        return Err(CliError::InsufficientData(format!(
            "no window in [{}, {}] reached {} distinct sizes",
            range.start, range.end, config.window.min_points
        )));
    }

    let crossings = detect_crossings(&series, config.threshold);
    let eps = episodes(&series, config.threshold);
    let extremes = extreme_events(&events, config.extreme_percentile)
        .map_err(|e| CliError::Config(e.to_string()))?;

    fs::create_dir_all(&config.out_dir).map_err(|e| {
        CliError::Config(format!(
            "cannot create output directory '{}': {e}",
            config.out_dir.display()
        ))
    })?;
    let out = |name: &str| config.out_dir.join(name);
    let mut artifacts = vec!["manifest.json".to_string()];

    if config.emit.alpha_csv {
        let file = File::create(out("alpha.csv"))
            .map_err(|e| CliError::Config(format!("cannot create alpha.csv: {e}")))?;
        write_alpha_csv(BufWriter::new(file), &series)
            .map_err(|e| CliError::Config(format!("cannot write alpha.csv: {e}")))?;
        artifacts.push("alpha.csv".into());
    }
    if config.emit.crossings_json {
        write_json(&out("crossings.json"), &crossings)?;
        artifacts.push("crossings.json".into());
    }
    if config.emit.episodes_json {
        write_json(&out("episodes.json"), &eps)?;
        artifacts.push("episodes.json".into());
    }
    if config.emit.extremes_csv {
        let file = File::create(out("extremes.csv"))
            .map_err(|e| CliError::Config(format!("cannot create extremes.csv: {e}")))?;
        write_extremes_csv(BufWriter::new(file), &extremes)
            .map_err(|e| CliError::Config(format!("cannot write extremes.csv: {e}")))?;
        artifacts.push("extremes.csv".into());
    }
    if config.emit.daily_csv {
        let file = File::create(out("daily.csv"))
            .map_err(|e| CliError::Config(format!("cannot create daily.csv: {e}")))?;
        write_daily_csv(BufWriter::new(file), &events)
            .map_err(|e| CliError::Config(format!("cannot write daily.csv: {e}")))?;
        artifacts.push("daily.csv".into());
    }
    if config.emit.figure_svg {
        let svg = render_alpha_figure(&series, &extremes, config.threshold, config.marker_date);
        fs::write(out("figure.svg"), svg)
            .map_err(|e| CliError::Config(format!("cannot write figure.svg: {e}")))?;
        artifacts.push("figure.svg".into());
    }

    artifacts.sort();
    let manifest = RunManifest {
        tool: TOOL_NAME.into(),
        version: TOOL_VERSION.into(),
        config: config.clone(),
        inputs,
        ingest: ingest_report,
        event_count: events.len(),
        first_event: Some(first),
        last_event: Some(last),
        series_points: series.points.len(),
        series_ok_points: ok_points,
        artifacts,
    };
    write_json(&out("manifest.json"), &manifest)?;

    Ok(AnalyzeOutcome {
        manifest,
        series,
        crossings,
        episodes: eps,
        extremes,
    })
}

/// Render a scenario spec into a daily event CSV.
pub fn cmd_synth(scenario_path: &Path, out_path: &Path) -> Result<(), CliError> {
    let text = fs::read_to_string(scenario_path).map_err(|e| {
        CliError::Config(format!(
            "cannot read scenario '{}': {e}",
            scenario_path.display()
        ))
    })?;
    let spec: ScenarioSpec = serde_json::from_str(&text).map_err(|e| {
        CliError::Config(format!(
            "bad scenario '{}': {e}",
            scenario_path.display()
        ))
    })?;
    let events = generate_scenario(&spec).map_err(|e| CliError::Config(e.to_string()))?;
    if let Some(dir) = out_path.parent() {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir).map_err(|e| {
                CliError::Config(format!("cannot create '{}': {e}", dir.display()))
            })?;
        }
    }
    let file = File::create(out_path)
        .map_err(|e| CliError::Config(format!("cannot create '{}': {e}", out_path.display())))?;
    write_daily_csv(BufWriter::new(file), &events)
        .map_err(|e| CliError::Config(format!("cannot write '{}': {e}", out_path.display())))?;
    Ok(())
}

fn read_artifact<T>(
    dir: &Path,
    name: &str,
    read: impl FnOnce(File) -> Result<T, String>,
) -> Result<T, CliError> {
    let path = dir.join(name);
    let file = File::open(&path).map_err(|_| {
        CliError::Config(format!(
            "missing artifact '{}' — is '{}' a finished run directory?",
            name,
            dir.display()
        ))
    })?;
    read(file).map_err(|e| CliError::Config(format!("bad artifact '{name}': {e}")))
}

/// Summarize a finished run directory as human-readable text.
pub fn cmd_report(run_dir: &Path) -> Result<String, CliError> {
    let manifest: RunManifest = read_artifact(run_dir, "manifest.json", |f| {
        serde_json::from_reader(BufReader::new(f)).map_err(|e| e.to_string())
    })?;
    let points: Vec<AlphaPoint> = read_artifact(run_dir, "alpha.csv", |f| {
        read_alpha_csv(BufReader::new(f)).map_err(|e| e.to_string())
    })?;
    let eps: Vec<VulnerabilityEpisode> = read_artifact(run_dir, "episodes.json", |f| {
        serde_json::from_reader(BufReader::new(f)).map_err(|e| e.to_string())
    })?;
    let crossings: Vec<ThresholdCrossing> = read_artifact(run_dir, "crossings.json", |f| {
        serde_json::from_reader(BufReader::new(f)).map_err(|e| e.to_string())
    })?;
    let extremes: Vec<ExtremeEvent> = read_artifact(run_dir, "extremes.csv", |f| {
        read_extremes_csv(BufReader::new(f)).map_err(|e| e.to_string())
    })?;

    let cfg = &manifest.config;
    let mut s = String::new();
    use std::fmt::Write as _;
    let _ = writeln!(s, "{} {} run report", manifest.tool, manifest.version);
    let _ = writeln!(
        s,
        "  window: {}-day, {}-day step; x_min {}; min_points {}",
        cfg.window.length_days, cfg.window.step_days, cfg.window.x_min, cfg.window.min_points
    );
    let _ = writeln!(
        s,
        "  threshold {}; extreme percentile {}; horizon {} days",
        format_sig(cfg.threshold, 6),
        format_sig(cfg.extreme_percentile, 6),
        cfg.horizon_days
    );
    if let Some(r) = &manifest.ingest {
        let _ = writeln!(
            s,
            "  ingest: {} rows read, {} accepted, {} skipped",
            r.rows_read, r.rows_accepted, r.rows_skipped
        );
    }
    let _ = writeln!(
        s,
        "  series: {} points ({} ok) over {} events",
        manifest.series_points, manifest.series_ok_points, manifest.event_count
    );

    let _ = writeln!(s, "\nregime timeline (tol {}):", format_sig(cfg.regime_tol, 6));
    let labelled: Vec<(NaiveDate, Option<RegimeLabel>)> = points
        .iter()
        .map(|p| {
            (
                p.t,
                p.alpha()
                    .map(|a| classify_regime(a, cfg.threshold, cfg.regime_tol)),
            )
        })
        .collect();
    let mut i = 0;
    while i < labelled.len() {
        let mut j = i;
        while j + 1 < labelled.len() && labelled[j + 1].1 == labelled[i].1 {
            j += 1;
        }
        let name = match labelled[i].1 {
            Some(RegimeLabel::AboveThreshold) => "above_threshold",
            Some(RegimeLabel::NearThreshold) => "near_threshold",
            Some(RegimeLabel::BelowThreshold) => "below_threshold",
            None => "insufficient_data",
        };
        let _ = writeln!(
            s,
            "  {} .. {}  {}  ({} points)",
            labelled[i].0,
            labelled[j].0,
            name,
            j - i + 1
        );
        i = j + 1;
    }

    if eps.is_empty() {
        let _ = writeln!(s, "\nno below-threshold episodes");
    } else {
        let _ = writeln!(s, "\nbelow-threshold episodes: {}", eps.len());
        for (k, e) in eps.iter().enumerate() {
            let end = match e.end_t {
                Some(d) => d.to_string(),
                None => "ongoing at series end".into(),
            };
            let _ = writeln!(
                s,
                "  {}. {} -> {}  duration {} days  min alpha {} on {}  depth {}",
                k + 1,
                e.start_t,
                end,
                e.duration_days,
                format_sig(e.min_alpha, 6),
                e.min_alpha_t,
                format_sig(e.depth, 6)
            );
        }
    }

    let down = crossings
        .iter()
        .filter(|c| c.direction == CrossingDirection::Downward)
        .count();
    let _ = writeln!(
        s,
        "\nthreshold crossings: {} ({} downward, {} upward)",
        crossings.len(),
        down,
        crossings.len() - down
    );

    if let Some(first) = extremes.first() {
        let _ = writeln!(
            s,
            "\nextreme events: {} at or above size {} ({}th percentile)",
            extremes.len(),
            first.threshold_size,
            format_sig(first.percentile, 6)
        );
    } else {
        let _ = writeln!(s, "\nextreme events: none");
    }

    let assocs = lead_times(&eps, &extremes, cfg.horizon_days);
    if assocs.is_empty() {
        let _ = writeln!(
            s,
            "no extreme events within {} days of an episode onset",
            cfg.horizon_days
        );
    } else {
        let _ = writeln!(
            s,
            "lead times (extremes within {} days of an episode onset):",
            cfg.horizon_days
        );
        for a in &assocs {
            let _ = writeln!(
                s,
                "  {}  {} customers  {} days after onset {}",
                a.event_date, a.event_size, a.lead_days, a.crossing_t
            );
        }
    }

    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth::{ScenarioSegment, ScenarioSpec};

    fn two_regime_scenario() -> ScenarioSpec {
        ScenarioSpec {
            start_date: "2015-01-01".parse().unwrap(),
            events_per_day: 1,
            segments: vec![
                ScenarioSegment {
                    duration_days: 360,
                    alpha_true: 1.4,
                    x_min: 1,
                    x_max: 15,
                    seed: 100,
                },
                ScenarioSegment {
                    duration_days: 360,
                    alpha_true: 0.8,
                    x_min: 1,
                    x_max: 1000,
                    seed: 101,
                },
            ],
        }
    }

    fn write_scenario(dir: &Path) -> PathBuf {
        let path = dir.join("scenario.json");
        fs::write(&path, serde_json::to_string(&two_regime_scenario()).unwrap()).unwrap();
        path
    }

    #[test]
    fn synth_then_analyze_happy_path() {
        let tmp = tempfile::tempdir().unwrap();
        let scenario = write_scenario(tmp.path());
        let events_csv = tmp.path().join("events.csv");
        cmd_synth(&scenario, &events_csv).unwrap();

        let config = RunConfig {
            inputs: vec![events_csv],
            events_input: true,
            out_dir: tmp.path().join("run"),
            emit: EmitFlags {
                daily_csv: true,
                figure_svg: true,
                ..EmitFlags::default()
            },
            marker_date: Some("2016-02-01".parse().unwrap()),
            ..RunConfig::default()
        };
        let outcome = cmd_analyze(&config).unwrap();
        for name in [
            "manifest.json",
            "alpha.csv",
            "crossings.json",
            "episodes.json",
            "extremes.csv",
            "daily.csv",
            "figure.svg",
        ] {
            assert!(config.out_dir.join(name).exists(), "{name} missing");
        }
        assert!(outcome.manifest.series_ok_points > 0);
        assert_eq!(outcome.manifest.event_count, 720);

        let report = cmd_report(&config.out_dir).unwrap();
        assert!(report.contains("below-threshold episodes"));
        assert!(report.contains("regime timeline"));
    }

    #[test]
    fn synth_output_is_deterministic() {
        let tmp = tempfile::tempdir().unwrap();
        let scenario = write_scenario(tmp.path());
        let a = tmp.path().join("a.csv");
        let b = tmp.path().join("b.csv");
        cmd_synth(&scenario, &a).unwrap();
        cmd_synth(&scenario, &b).unwrap();
        assert_eq!(fs::read(a).unwrap(), fs::read(b).unwrap());
    }

    #[test]
    fn empty_input_maps_to_insufficient_data() {
        let tmp = tempfile::tempdir().unwrap();
        let empty = tmp.path().join("empty.csv");
        fs::write(&empty, "timestamp,state,county,fips,customers_out\n").unwrap();
        let config = RunConfig {
            inputs: vec![empty],
            out_dir: tmp.path().join("run"),
            ..RunConfig::default()
        };
        let err = cmd_analyze(&config).unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn missing_input_is_a_config_error() {
        let tmp = tempfile::tempdir().unwrap();
        let config = RunConfig {
            inputs: vec![tmp.path().join("nope.csv")],
            out_dir: tmp.path().join("run"),
            ..RunConfig::default()
        };
        assert_eq!(cmd_analyze(&config).unwrap_err().exit_code(), 1);
        let no_inputs = RunConfig {
            inputs: vec![],
            out_dir: tmp.path().join("run2"),
            ..RunConfig::default()
        };
        assert_eq!(cmd_analyze(&no_inputs).unwrap_err().exit_code(), 1);
    }

    #[test]
    fn report_on_missing_artifacts_fails() {
        let tmp = tempfile::tempdir().unwrap();
        let err = cmd_report(tmp.path()).unwrap_err();
        assert_eq!(err.exit_code(), 1);
        assert!(err.to_string().contains("manifest.json"));
    }

    #[test]
    fn config_json_round_trips() {
        let config = RunConfig {
            inputs: vec!["data/a.csv".into()],
            threshold: 1.0,
            extreme_percentile: 99.9,
            ..RunConfig::default()
        };
        let text = serde_json::to_string_pretty(&config).unwrap();
        let back: RunConfig = serde_json::from_str(&text).unwrap();
        assert_eq!(config, back);

        // Sparse documents fill in defaults.
        let sparse: RunConfig =
            serde_json::from_str(r#"{"inputs": ["x.csv"], "threshold": 0.9}"#).unwrap();
        assert_eq!(sparse.threshold, 0.9);
        assert_eq!(sparse.window, WindowSpec::default());
    }
}
