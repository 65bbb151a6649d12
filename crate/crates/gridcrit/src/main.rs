use clap::{Args, Parser, Subcommand};
use gridcrit::cli::{cmd_analyze, cmd_report, cmd_synth, CliError, DateRange, RunConfig};
use std::path::PathBuf;
use std::process::ExitCode;

/// Critical-exponent monitoring for event-size streams.
#[derive(Parser)]
#[command(name = "gridcrit", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline on outage CSVs (or daily event series) and
    /// write analysis artifacts.
    Analyze(AnalyzeArgs),
    /// Generate a synthetic daily event series from a scenario file.
    Synth(SynthArgs),
    /// Print a human-readable summary of a finished run directory.
    Report(ReportArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Input CSV files.
    #[arg(value_name = "INPUT")]
    inputs: Vec<PathBuf>,

    /// JSON run configuration; flags below override its fields.
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Treat inputs as daily event series (date,size) instead of raw
    /// outage snapshots.
    #[arg(long)]
    events: bool,

    /// Output directory for artifacts.
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,

    /// Backward window length in days (90 and 180 are the usual presets).
    #[arg(long, value_name = "DAYS")]
    window_days: Option<u32>,

    /// Grid step in days; defaults to window length / 6 when only the
    /// window length is given (180 -> 30, 90 -> 15).
    #[arg(long, value_name = "DAYS")]
    step_days: Option<u32>,

    /// Critical threshold on the exponent.
    #[arg(long)]
    threshold: Option<f64>,

    /// Percentile defining extreme events.
    #[arg(long)]
    percentile: Option<f64>,

    /// Keep only rows with this state code.
    #[arg(long, value_name = "CODE")]
    state: Option<String>,

    /// First study date (YYYY-MM-DD): filters rows and anchors the series.
    #[arg(long, value_name = "DATE")]
    from: Option<chrono::NaiveDate>,

    /// Last study date (YYYY-MM-DD), inclusive.
    #[arg(long, value_name = "DATE")]
    to: Option<chrono::NaiveDate>,

    /// Smallest size admitted into the frequency distribution.
    #[arg(long, value_name = "SIZE")]
    x_min: Option<u64>,

    /// Minimum distinct sizes for a window to produce a fit.
    #[arg(long, value_name = "N")]
    min_points: Option<usize>,

    /// Lead-time association horizon in days.
    #[arg(long, value_name = "DAYS")]
    horizon_days: Option<u32>,

    /// Draw a dated vertical rule on the figure (YYYY-MM-DD).
    #[arg(long, value_name = "DATE")]
    marker: Option<chrono::NaiveDate>,

    /// Emit the SVG figure.
    #[arg(long)]
    svg: bool,

    /// Emit the aggregated daily series CSV.
    #[arg(long)]
    emit_daily: bool,

    /// Regime-label tolerance band around the threshold (for reports).
    #[arg(long, value_name = "TOL")]
    tol: Option<f64>,
}

#[derive(Args)]
struct SynthArgs {
    /// Scenario JSON file.
    #[arg(long, value_name = "FILE")]
    scenario: PathBuf,

    /// Output CSV path.
    #[arg(long, value_name = "FILE")]
    out: PathBuf,
}

#[derive(Args)]
struct ReportArgs {
    /// A directory produced by `gridcrit analyze`.
    #[arg(value_name = "RUN_DIR")]
    run_dir: PathBuf,
}

fn build_config(args: AnalyzeArgs) -> Result<RunConfig, CliError> {
    let mut config = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                CliError::Config(format!("cannot read config '{}': {e}", path.display()))
            })?;
            serde_json::from_str(&text).map_err(|e| {
                CliError::Config(format!("bad config '{}': {e}", path.display()))
            })?
        }
        None => RunConfig::default(),
    };

    if !args.inputs.is_empty() {
        config.inputs = args.inputs;
    }
    if args.events {
        config.events_input = true;
    }
    if let Some(out) = args.out {
        config.out_dir = out;
    }
    if let Some(days) = args.window_days {
        config.window.length_days = days;
        if args.step_days.is_none() {
            config.window.step_days = (days / 6).max(1);
        }
    }
    if let Some(step) = args.step_days {
        config.window.step_days = step;
    }
    if let Some(t) = args.threshold {
        config.threshold = t;
    }
    if let Some(p) = args.percentile {
        config.extreme_percentile = p;
    }
    if let Some(state) = args.state {
        config.ingest.state_filter = Some(state);
    }
    if args.from.is_some() || args.to.is_some() {
        let from = args
            .from
            .ok_or_else(|| CliError::Config("--from requires --to".into()))?;
        let to = args
            .to
            .ok_or_else(|| CliError::Config("--to requires --from".into()))?;
        if from > to {
            return Err(CliError::Config(format!("--from {from} is after --to {to}")));
        }
        // Filter rows to the study dates and anchor the series so the first
        // window already contains the first study day.
        config.ingest.time_range = Some(gridcrit::ingest::TimeRange {
            start: from.and_hms_opt(0, 0, 0).expect("midnight").and_utc(),
            end: (to + chrono::Days::new(1))
                .and_hms_opt(0, 0, 0)
                .expect("midnight")
                .and_utc(),
        });
        config.range = Some(DateRange {
            start: from - chrono::Days::new(1),
            end: to,
        });
    }
    if let Some(x_min) = args.x_min {
        config.window.x_min = x_min;
    }
    if let Some(mp) = args.min_points {
        config.window.min_points = mp;
    }
    if let Some(h) = args.horizon_days {
        config.horizon_days = h;
    }
    if let Some(m) = args.marker {
        config.marker_date = Some(m);
    }
    if args.svg {
        config.emit.figure_svg = true;
    }
    if args.emit_daily {
        config.emit.daily_csv = true;
    }
    if let Some(tol) = args.tol {
        config.regime_tol = tol;
    }
    Ok(config)
}

fn run() -> Result<(), CliError> {
    match Cli::parse().command {
        Command::Analyze(args) => {
            let config = build_config(args)?;
            let outcome = cmd_analyze(&config)?;
            let m = &outcome.manifest;
            println!(
                "analyzed {} events -> {} series points ({} ok), {} crossings, {} episodes, {} extremes",
                m.event_count,
                m.series_points,
                m.series_ok_points,
                outcome.crossings.len(),
                outcome.episodes.len(),
                outcome.extremes.len()
            );
            println!("artifacts in {}", config.out_dir.display());
            Ok(())
        }
        Command::Synth(args) => {
            cmd_synth(&args.scenario, &args.out)?;
            println!("wrote {}", args.out.display());
            Ok(())
        }
        Command::Report(args) => {
            let text = cmd_report(&args.run_dir)?;
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
