//! CSV and plain-text result tables.
//!
//! `results.csv` layout: one `#` comment line with tool version, experiment,
//! seed and trial count, a header, then one row per (series, axis value):
//!
//! ```text
//! series,axis,axis_value,theta_deg,n_elements,alpha,d_te_m,quantization_bits,
//! include_ris,include_direct,r_th_bps_hz,rate_mean,rate_ci_low,rate_ci_high,
//! outage_mean,outage_ci_low,outage_ci_high,trials,seed
//! ```
//!
//! Real numbers are written positionally with 9 significant digits.
//! `quantization_bits` is `inf` for continuous phases. Lines end in LF.

use std::fmt::Write as _;
use std::path::Path;

use super::experiment::Experiment;
use super::params::ParamKey;
use super::{CliError, SeriesResult};
use crate::montecarlo::{argbest, Objective, ScenarioConfig, SweepAxis};

pub const CSV_COLUMNS: [&str; 19] = [
    "series",
    "axis",
    "axis_value",
    "theta_deg",
    "n_elements",
    "alpha",
    "d_te_m",
    "quantization_bits",
    "include_ris",
    "include_direct",
    "r_th_bps_hz",
    "rate_mean",
    "rate_ci_low",
    "rate_ci_high",
    "outage_mean",
    "outage_ci_low",
    "outage_ci_high",
    "trials",
    "seed",
];

#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub series: String,
    /// Sweep key name, `none` for a single-point run.
    pub axis: String,
    /// Axis value in external units; `None` for a single-point run.
    pub axis_value: Option<f64>,
    pub config: ScenarioConfig,
    pub rate_mean: f64,
    pub rate_ci: (f64, f64),
    pub outage_mean: f64,
    pub outage_ci: (f64, f64),
    pub trials: u64,
    pub seed: u64,
}

/// Rows for every series, in series then axis order.
pub fn result_rows(exp: &Experiment, results: &[SeriesResult]) -> Vec<ResultRow> {
    let key = exp.sweep.as_ref().map(|s| s.key);
    let mut rows = Vec::new();
    for r in results {
        for (x, p) in r.sweep.axis_values.iter().zip(&r.sweep.points) {
            let config = r.sweep.axis.apply(&r.config, *x).expect("validated before running");
            rows.push(ResultRow {
                series: r.label.clone(),
                axis: key.map_or("none", |k| k.name()).to_string(),
                axis_value: key.map(|_| external_axis_value(r.sweep.axis, *x)),
                config,
                rate_mean: p.rate.mean,
                rate_ci: (p.rate.ci_low, p.rate.ci_high),
                outage_mean: p.outage.mean,
                outage_ci: (p.outage.ci_low, p.outage.ci_high),
                trials: p.rate.n_trials,
                seed: config.seed,
            });
        }
    }
    rows
}

pub fn external_axis_value(axis: SweepAxis, x: f64) -> f64 {
    match axis {
        SweepAxis::Theta => x.to_degrees(),
        _ => x,
    }
}

/// Positional decimal rendering with 9 significant digits.
pub fn format_sig9(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{:.8e}", x.abs());
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    let digits: String = mantissa.chars().filter(char::is_ascii_digit).collect();
    let sign = if x.is_sign_negative() && x != 0.0 { "-" } else { "" };
    let body = if exp >= 8 {
        format!("{digits}{}", "0".repeat((exp - 8) as usize))
    } else if exp >= 0 {
        let split = (exp + 1) as usize;
        format!("{}.{}", &digits[..split], &digits[split..])
    } else {
        format!("0.{}{digits}", "0".repeat((-exp - 1) as usize))
    };
    format!("{sign}{body}")
}

fn bits_cell(b: Option<u32>) -> String {
    b.map_or("inf".into(), |b| b.to_string())
}

pub fn render_csv(rows: &[ResultRow], experiment: &str) -> Result<String, CliError> {
    let first = rows.first().ok_or(CliError::NoRows)?;
    let mut out = String::new();
    writeln!(
        out,
        "# {} {} experiment={} seed={} trials={}",
        env!("CARGO_PKG_NAME"),
        env!("CARGO_PKG_VERSION"),
        experiment,
        first.seed,
        first.trials
    )
    .unwrap();
    out.push_str(&CSV_COLUMNS.join(","));
    out.push('\n');
    for r in rows {
        let c = &r.config;
        let cells = [
            r.series.clone(),
            r.axis.clone(),
            r.axis_value.map_or(String::new(), format_sig9),
            format_sig9(c.topology.theta.to_degrees()),
            c.n_elements.to_string(),
            format_sig9(c.budget.alpha),
            format_sig9(c.topology.d_te),
            bits_cell(c.quantization_bits),
            c.include_ris.to_string(),
            c.include_direct.to_string(),
            format_sig9(c.r_th),
            format_sig9(r.rate_mean),
            format_sig9(r.rate_ci.0),
            format_sig9(r.rate_ci.1),
            format_sig9(r.outage_mean),
            format_sig9(r.outage_ci.0),
            format_sig9(r.outage_ci.1),
            r.trials.to_string(),
            r.seed.to_string(),
        ];
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    Ok(out)
}

pub fn emit_csv(rows: &[ResultRow], experiment: &str, path: &Path) -> Result<(), CliError> {
    let text = render_csv(rows, experiment)?;
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

/// Human-readable summary; includes the best RIS angle per series when the
/// sweep runs over `theta_deg`.
pub fn render_summary(exp: &Experiment, results: &[SeriesResult], with_mean_snr_rate: bool) -> String {
    let mut out = String::new();
    let key = exp.sweep.as_ref().map(|s| s.key);
    let axis_name = key.map_or("point", |k| k.name());
    writeln!(out, "experiment: {}", exp.name).unwrap();
    writeln!(out, "seed: {}", exp.base.seed).unwrap();
    writeln!(out, "trials per point: {}", exp.base.trials).unwrap();
    writeln!(out, "sweep: {axis_name}").unwrap();
    for r in results {
        writeln!(out, "\nseries: {}", r.label).unwrap();
        write!(out, "  {axis_name:>12}  {:>30}  {:>30}", "secrecy rate [95% CI]", "outage [95% CI]").unwrap();
        if with_mean_snr_rate {
            write!(out, "  {:>14}", "rate@mean SNR").unwrap();
        }
        out.push('\n');
        for (x, p) in r.sweep.axis_values.iter().zip(&r.sweep.points) {
            let xs = match key {
                Some(ParamKey::QuantizationBits) if x.is_infinite() => "inf".to_string(),
                Some(_) => format!("{}", external_axis_value(r.sweep.axis, *x)),
                None => "-".into(),
            };
            write!(
                out,
                "  {xs:>12}  {:>30}  {:>30}",
                format!("{:.4} [{:.4}, {:.4}]", p.rate.mean, p.rate.ci_low, p.rate.ci_high),
                format!("{:.4} [{:.4}, {:.4}]", p.outage.mean, p.outage.ci_low, p.outage.ci_high),
            )
            .unwrap();
            if with_mean_snr_rate {
                write!(out, "  {:>14.4}", p.rate_at_mean_snr()).unwrap();
            }
            out.push('\n');
        }
        if key == Some(ParamKey::ThetaDeg) {
            let deg = |x: f64| x.to_degrees();
            if let Ok(x) = argbest(&r.sweep, Objective::MaxRate) {
                writeln!(out, "  highest secrecy rate at theta_deg = {}", deg(x)).unwrap();
            }
            if let Ok(x) = argbest(&r.sweep, Objective::MinOutage) {
                writeln!(out, "  lowest outage probability at theta_deg = {}", deg(x)).unwrap();
            }
        }
    }
    out
}
