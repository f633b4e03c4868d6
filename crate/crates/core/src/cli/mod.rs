//! Command-line front end: scenario files, presets, result tables and plots.
//!
//! The binary is a thin wrapper over [`run`], [`validate`] and
//! [`list_presets`], so everything it does is reachable from tests.

use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::montecarlo::{sweep_with, Execution, ScenarioConfig, SweepAxis, SweepResult};

pub mod experiment;
pub mod params;
pub mod preset;
pub mod report;
pub mod svg;

pub use experiment::{parse_config, parse_document, Experiment, PlotMetric, Series, SweepSpec};
pub use params::ParamKey;
pub use preset::Preset;
pub use report::{emit_csv, render_csv, result_rows, ResultRow};
pub use svg::{emit_svg, render_svg, LinePlot, PlotSeries};

pub const RESULTS_CSV: &str = "results.csv";
pub const SUMMARY_TXT: &str = "summary.txt";
pub const PLOT_SVG: &str = "plot.svg";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}: no such file")]
    MissingFile(PathBuf),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{origin}: malformed scenario document: {message}")]
    Malformed { origin: String, message: String },
    #[error("unknown key {0:?}")]
    UnknownKey(String),
    #[error("invalid value for {key:?}: {reason}")]
    InvariantViolation { key: String, reason: String },
    #[error("override {0:?} must have the form key=value")]
    BadOverride(String),
    #[error("series {series:?} has {points} plottable points, at least 2 are needed")]
    InsufficientPoints { series: String, points: usize },
    #[error("no result rows to write")]
    NoRows,
    #[error(transparent)]
    Simulation(#[from] crate::Error),
}

impl CliError {
    pub fn invariant(key: impl Into<String>, reason: impl Into<String>) -> Self {
        CliError::InvariantViolation { key: key.into(), reason: reason.into() }
    }
}

/// Everything `run` needs besides the experiment itself.
#[derive(Debug, Clone)]
pub struct RunOptions {
    /// Preset name or path to a scenario file.
    pub target: String,
    pub seed: Option<u64>,
    pub trials: Option<u64>,
    /// Raw `key=value` overrides, applied in order.
    pub overrides: Vec<String>,
    pub svg: bool,
    pub out_dir: PathBuf,
    /// Add the secrecy rate at the mean SNRs to the summary.
    pub rate_at_mean_snr: bool,
    pub execution: Execution,
}

impl RunOptions {
    pub fn new(target: impl Into<String>, out_dir: impl Into<PathBuf>) -> Self {
        Self {
            target: target.into(),
            seed: None,
            trials: None,
            overrides: Vec::new(),
            svg: false,
            out_dir: out_dir.into(),
            rate_at_mean_snr: false,
            execution: Execution::Parallel,
        }
    }
}

/// One sweep per series.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesResult {
    pub label: String,
    pub config: ScenarioConfig,
    pub sweep: SweepResult,
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub experiment: Experiment,
    pub results: Vec<SeriesResult>,
    pub files: Vec<PathBuf>,
}

/// A preset name or a scenario file.
pub fn load_target(target: &str) -> Result<Experiment, CliError> {
    match Preset::parse(target) {
        Some(p) => Ok(p.expand()),
        None => parse_config(Path::new(target)),
    }
}

/// Applies seed, trial count and `key=value` overrides.
pub fn apply_overrides(
    exp: &mut Experiment,
    seed: Option<u64>,
    trials: Option<u64>,
    overrides: &[String],
) -> Result<(), CliError> {
    if let Some(s) = seed {
        exp.set(ParamKey::Seed, &s.into(), "--seed")?;
    }
    if let Some(t) = trials {
        exp.set(ParamKey::Trials, &t.into(), "--trials")?;
    }
    for o in overrides {
        let (k, v) = o.split_once('=').ok_or_else(|| CliError::BadOverride(o.clone()))?;
        let key = ParamKey::parse(k.trim()).ok_or_else(|| CliError::UnknownKey(k.trim().to_string()))?;
        exp.set(key, &params::parse_value(v), key.name())?;
    }
    exp.validate()
}

/// Runs every series of an experiment.
pub fn run_experiment(exp: &Experiment, exec: Execution) -> Result<Vec<SeriesResult>, CliError> {
    exp.validate()?;
    (0..exp.series.len())
        .map(|i| {
            let config = exp.series_config(i)?;
            let (axis, values) = match &exp.sweep {
                Some(s) => (s.axis(), s.axis_values()?),
                None => (SweepAxis::Theta, vec![config.topology.theta]),
            };
            let sweep = sweep_with(&config, axis, &values, exec)?;
            Ok(SeriesResult { label: exp.series[i].label(), config, sweep })
        })
        .collect()
}

pub fn plot_for(exp: &Experiment, results: &[SeriesResult]) -> LinePlot {
    let x_label = match exp.sweep.as_ref().map(|s| s.key) {
        Some(ParamKey::ThetaDeg) => "RIS elevation angle theta (deg)".to_string(),
        Some(ParamKey::NElements) => "number of RIS elements N".into(),
        Some(ParamKey::DTeM) => "Tx-eavesdropper distance d_te (m)".into(),
        Some(ParamKey::Alpha) => "path-loss exponent alpha".into(),
        Some(ParamKey::QuantizationBits) => "phase quantization bits".into(),
        _ => "RIS elevation angle theta (deg)".into(),
    };
    let y_label = match exp.plot {
        PlotMetric::Rate => "mean secrecy rate (bits/s/Hz)",
        PlotMetric::Outage => "secrecy outage probability",
    };
    let series = results
        .iter()
        .map(|r| PlotSeries {
            label: r.label.clone(),
            points: r
                .sweep
                .axis_values
                .iter()
                .zip(&r.sweep.points)
                .map(|(x, p)| {
                    let y = match exp.plot {
                        PlotMetric::Rate => p.rate.mean,
                        PlotMetric::Outage => p.outage.mean,
                    };
                    (report::external_axis_value(r.sweep.axis, *x), y)
                })
                .collect(),
        })
        .collect();
    LinePlot { title: exp.name.clone(), x_label, y_label: y_label.into(), series }
}

/// `run <preset|file>`: writes `results.csv`, `summary.txt` and, when asked,
/// `plot.svg` into `out_dir`. On failure no partially written file is left
/// behind.
pub fn run(opts: &RunOptions) -> Result<RunReport, CliError> {
    let mut exp = load_target(&opts.target)?;
    apply_overrides(&mut exp, opts.seed, opts.trials, &opts.overrides)?;
    let results = run_experiment(&exp, opts.execution)?;
    let rows = result_rows(&exp, &results);

    let csv = render_csv(&rows, &exp.name)?;
    let summary = report::render_summary(&exp, &results, opts.rate_at_mean_snr);
    let plot = if opts.svg { Some(render_svg(&plot_for(&exp, &results))?) } else { None };

    let mut outputs = vec![(RESULTS_CSV, csv), (SUMMARY_TXT, summary)];
    if let Some(svg) = plot {
        outputs.push((PLOT_SVG, svg));
    }
    std::fs::create_dir_all(&opts.out_dir)
        .map_err(|source| CliError::Io { path: opts.out_dir.clone(), source })?;
    let mut written = Vec::new();
    for (name, text) in outputs {
        let path = opts.out_dir.join(name);
        if let Err(source) = std::fs::write(&path, text) {
            for p in written.iter().chain([&path]) {
                let _ = std::fs::remove_file(p);
            }
            return Err(CliError::Io { path, source });
        }
        written.push(path);
    }
    Ok(RunReport { experiment: exp, results, files: written })
}

/// `validate <file>`: the expanded experiment, ready to print.
pub fn validate(path: &Path) -> Result<Experiment, CliError> {
    parse_config(path)
}

pub fn list_presets() -> String {
    Preset::ALL
        .iter()
        .map(|p| format!("{:<6}  {}\n", p.name(), p.description()))
        .collect()
}
