//! Seeded Monte Carlo trial loops, confidence intervals and parameter sweeps.
//!
//! Trial `t` of a scenario always draws its fading from
//! `RngStream { seed, trial_index: t }`. Per-trial results are collected in
//! trial order and reduced serially, so serial and parallel execution give
//! bit-identical estimates. Because the draws only depend on `(seed, t, N)`,
//! every sweep point that keeps `N` fixed sees the same fading realizations.

use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::channel::{
    cascade_with_phasors, direct_channel, sample_small_scale, LinkBudget, RngStream,
};
use crate::geometry::{link_distances, Topology};
use crate::metrics::{outage_indicator, secrecy_rate, snr, SecrecySample};
use crate::ris::{optimal_phases, quantize_phases, MAX_QUANTIZATION_BITS};
use crate::{Error, Result};

/// Two-sided 95% normal quantile.
pub const Z_95: f64 = 1.96;

pub const DEFAULT_RATE_TRIALS: u64 = 10_000;
pub const DEFAULT_OUTAGE_TRIALS: u64 = 100_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScenarioConfig {
    pub topology: Topology,
    pub budget: LinkBudget,
    pub n_elements: usize,
    /// Phase bit depth; `None` means continuous phases.
    pub quantization_bits: Option<u32>,
    pub include_ris: bool,
    pub include_direct: bool,
    /// Secrecy rate target for outage, bits/s/Hz.
    pub r_th: f64,
    pub trials: u64,
    pub seed: u64,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            topology: Topology::default(),
            budget: LinkBudget::default(),
            n_elements: 50,
            quantization_bits: None,
            include_ris: true,
            include_direct: true,
            r_th: 2.5,
            trials: DEFAULT_RATE_TRIALS,
            seed: 1,
        }
    }
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<()> {
        self.topology.validate()?;
        self.budget.validate()?;
        if self.trials == 0 {
            return Err(Error::EmptyTrials);
        }
        if self.n_elements == 0 {
            return Err(Error::ZeroElements);
        }
        if let Some(b) = self.quantization_bits {
            if !(1..=MAX_QUANTIZATION_BITS).contains(&b) {
                return Err(Error::InvalidBitDepth(b));
            }
        }
        if !self.include_ris && !self.include_direct {
            return Err(Error::InvalidScenario(
                "at least one of the RIS and direct links must be enabled".into(),
            ));
        }
        if !(self.r_th >= 0.0 && self.r_th.is_finite()) {
            return Err(Error::InvalidScenario(format!(
                "secrecy rate threshold must be nonnegative, got {}",
                self.r_th
            )));
        }
        Ok(())
    }

    pub fn stream(&self, trial_index: u64) -> RngStream {
        RngStream::new(self.seed, trial_index)
    }
}

/// A Monte Carlo mean with its standard error and 95% normal interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarloEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub n_trials: u64,
}

impl MonteCarloEstimate {
    /// Two-pass mean and unbiased variance, summed in slice order.
    pub fn from_samples(xs: &[f64]) -> Self {
        let n = xs.len();
        assert!(n > 0, "estimate needs at least one sample");
        let nf = n as f64;
        let mean = xs.iter().sum::<f64>() / nf;
        let var = if n > 1 {
            xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (nf - 1.0)
        } else {
            0.0
        };
        let std_error = (var / nf).sqrt();
        Self {
            mean,
            std_error,
            ci_low: mean - Z_95 * std_error,
            ci_high: mean + Z_95 * std_error,
            n_trials: n as u64,
        }
    }

    pub fn overlaps(&self, other: &Self) -> bool {
        self.ci_low <= other.ci_high && other.ci_low <= self.ci_high
    }

    /// True when this interval lies entirely above `other`'s.
    pub fn above(&self, other: &Self) -> bool {
        self.ci_low > other.ci_high
    }

    pub fn contains(&self, x: f64) -> bool {
        self.ci_low <= x && x <= self.ci_high
    }
}

impl fmt::Display for MonteCarloEstimate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:.4} [{:.4}, {:.4}] (n={})",
            self.mean, self.ci_low, self.ci_high, self.n_trials
        )
    }
}

/// Aggregated statistics of one scenario run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScenarioOutcome {
    /// Mean instantaneous secrecy rate, bits/s/Hz.
    pub rate: MonteCarloEstimate,
    /// Secrecy outage probability at `r_th`.
    pub outage: MonteCarloEstimate,
    pub gamma_rx: MonteCarloEstimate,
    pub gamma_eve: MonteCarloEstimate,
}

impl ScenarioOutcome {
    /// Secrecy rate evaluated at the mean SNRs rather than averaged over
    /// realizations. Reported alongside the main statistic for comparison.
    pub fn rate_at_mean_snr(&self) -> f64 {
        secrecy_rate(self.gamma_rx.mean, self.gamma_eve.mean)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Serial,
    #[default]
    Parallel,
}

/// Everything about a scenario that does not change between trials.
struct Kernel {
    n: usize,
    bits: Option<u32>,
    cascade_rx: Option<f64>,
    cascade_eve: Option<f64>,
    direct: Option<(f64, f64)>,
    blockage_db: f64,
    p_tx: f64,
    noise: f64,
}

impl Kernel {
    fn new(cfg: &ScenarioConfig) -> Result<Self> {
        cfg.validate()?;
        let d = link_distances(&cfg.topology)?;
        let b = &cfg.budget;
        let hop1 = b.path_loss(d.d_tx_ris)?;
        let (cascade_rx, cascade_eve) = if cfg.include_ris {
            (
                Some((hop1 * b.path_loss(d.d_ris_rx)?).sqrt()),
                Some((hop1 * b.path_loss(d.d_ris_eve)?).sqrt()),
            )
        } else {
            (None, None)
        };
        let direct = if cfg.include_direct {
            Some((b.path_loss(d.d_tx_rx)?, b.path_loss(d.d_tx_eve)?))
        } else {
            None
        };
        Ok(Self {
            n: cfg.n_elements,
            bits: cfg.quantization_bits,
            cascade_rx,
            cascade_eve,
            direct,
            blockage_db: b.blockage_db,
            p_tx: b.p_tx_watts(),
            noise: b.noise_watts(),
        })
    }

    fn trial(&self, stream: RngStream) -> Result<SecrecySample> {
        let r = sample_small_scale(stream, self.n)?;
        let mut y_rx = Complex64::new(0.0, 0.0);
        let mut y_eve = Complex64::new(0.0, 0.0);
        if let (Some(a_rx), Some(a_eve)) = (self.cascade_rx, self.cascade_eve) {
            let mut profile = optimal_phases(&r.h, &r.g_rx)?;
            if let Some(bits) = self.bits {
                profile = quantize_phases(&profile, bits)?;
            }
            let phasors = profile.phasors();
            y_rx += cascade_with_phasors(&r.h, &r.g_rx, &phasors, a_rx);
            y_eve += cascade_with_phasors(&r.h, &r.g_eve, &phasors, a_eve);
        }
        if let Some((pl_rx, pl_eve)) = self.direct {
            y_rx += direct_channel(r.f_rx, pl_rx, self.blockage_db);
            y_eve += direct_channel(r.f_eve, pl_eve, self.blockage_db);
        }
        Ok(SecrecySample::new(
            snr(y_rx, self.p_tx, self.noise)?,
            snr(y_eve, self.p_tx, self.noise)?,
        ))
    }
}

/// The secrecy sample of a single trial.
pub fn trial_sample(cfg: &ScenarioConfig, trial_index: u64) -> Result<SecrecySample> {
    Kernel::new(cfg)?.trial(cfg.stream(trial_index))
}

/// Per-trial samples in trial order.
pub fn trial_samples(cfg: &ScenarioConfig, exec: Execution) -> Result<Vec<SecrecySample>> {
    let kernel = Kernel::new(cfg)?;
    match exec {
        Execution::Serial => (0..cfg.trials).map(|t| kernel.trial(cfg.stream(t))).collect(),
        Execution::Parallel => (0..cfg.trials)
            .into_par_iter()
            .map(|t| kernel.trial(cfg.stream(t)))
            .collect(),
    }
}

pub fn run_scenario(cfg: &ScenarioConfig) -> Result<ScenarioOutcome> {
    run_scenario_with(cfg, Execution::Parallel)
}

pub fn run_scenario_with(cfg: &ScenarioConfig, exec: Execution) -> Result<ScenarioOutcome> {
    let samples = trial_samples(cfg, exec)?;
    let column = |f: &dyn Fn(&SecrecySample) -> f64| -> Vec<f64> { samples.iter().map(f).collect() };
    Ok(ScenarioOutcome {
        rate: MonteCarloEstimate::from_samples(&column(&|s| s.c_s)),
        outage: MonteCarloEstimate::from_samples(&column(&|s| {
            f64::from(outage_indicator(s.c_s, cfg.r_th))
        })),
        gamma_rx: MonteCarloEstimate::from_samples(&column(&|s| s.gamma_rx)),
        gamma_eve: MonteCarloEstimate::from_samples(&column(&|s| s.gamma_eve)),
    })
}

/// Scenario parameter varied along a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepAxis {
    /// RIS elevation angle, radians.
    Theta,
    NElements,
    Alpha,
    /// Tx-eavesdropper distance, meters.
    DTe,
    /// Phase bit depth; `f64::INFINITY` stands for continuous phases.
    QuantizationBits,
}

impl SweepAxis {
    pub const ALL: [SweepAxis; 5] = [
        SweepAxis::Theta,
        SweepAxis::NElements,
        SweepAxis::Alpha,
        SweepAxis::DTe,
        SweepAxis::QuantizationBits,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SweepAxis::Theta => "theta",
            SweepAxis::NElements => "n_elements",
            SweepAxis::Alpha => "alpha",
            SweepAxis::DTe => "d_te",
            SweepAxis::QuantizationBits => "quantization_bits",
        }
    }

    /// `base` with this axis set to `value`, validated.
    pub fn apply(&self, base: &ScenarioConfig, value: f64) -> Result<ScenarioConfig> {
        let invalid = |reason: &str| Error::InvalidAxisValue {
            axis: self.name(),
            value,
            reason: reason.to_string(),
        };
        let mut cfg = *base;
        match self {
            SweepAxis::Theta => cfg.topology.theta = value,
            SweepAxis::Alpha => cfg.budget.alpha = value,
            SweepAxis::DTe => cfg.topology.d_te = value,
            SweepAxis::NElements => {
                if !(value >= 1.0 && value.fract() == 0.0 && value <= u32::MAX as f64) {
                    return Err(invalid("element count must be a positive integer"));
                }
                cfg.n_elements = value as usize;
            }
            SweepAxis::QuantizationBits => {
                cfg.quantization_bits = if value == f64::INFINITY {
                    None
                } else if value.fract() == 0.0
                    && (1.0..=MAX_QUANTIZATION_BITS as f64).contains(&value)
                {
                    Some(value as u32)
                } else {
                    return Err(invalid("bit depth must be an integer in 1..=8 or infinity"));
                };
            }
        }
        cfg.validate().map_err(|e| invalid(&e.to_string()))?;
        Ok(cfg)
    }
}

impl fmt::Display for SweepAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub axis: SweepAxis,
    pub axis_values: Vec<f64>,
    /// One outcome per axis value, same order.
    pub points: Vec<ScenarioOutcome>,
}

impl SweepResult {
    pub fn len(&self) -> usize {
        self.axis_values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.axis_values.is_empty()
    }

    pub fn rates(&self) -> impl Iterator<Item = &MonteCarloEstimate> {
        self.points.iter().map(|p| &p.rate)
    }

    pub fn outages(&self) -> impl Iterator<Item = &MonteCarloEstimate> {
        self.points.iter().map(|p| &p.outage)
    }
}

pub fn sweep(base: &ScenarioConfig, axis: SweepAxis, values: &[f64]) -> Result<SweepResult> {
    sweep_with(base, axis, values, Execution::Parallel)
}

pub fn sweep_with(
    base: &ScenarioConfig,
    axis: SweepAxis,
    values: &[f64],
    exec: Execution,
) -> Result<SweepResult> {
    if values.is_empty() {
        return Err(Error::EmptySweep);
    }
    if let Some(w) = values.windows(2).find(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidAxisValue {
            axis: axis.name(),
            value: w[1],
            reason: "sweep values must be strictly increasing".into(),
        });
    }
    let configs = values
        .iter()
        .map(|&v| axis.apply(base, v))
        .collect::<Result<Vec<_>>>()?;
    let points = configs
        .iter()
        .map(|c| run_scenario_with(c, exec))
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult { axis, axis_values: values.to_vec(), points })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    MaxRate,
    MinOutage,
}

/// Axis value with the best mean; ties go to the smaller axis value.
pub fn argbest(s: &SweepResult, objective: Objective) -> Result<f64> {
    let mut best: Option<(f64, f64)> = None;
    for (&x, p) in s.axis_values.iter().zip(&s.points) {
        let score = match objective {
            Objective::MaxRate => p.rate.mean,
            Objective::MinOutage => -p.outage.mean,
        };
        best = match best {
            Some((bx, bs)) if score > bs || (score == bs && x < bx) => Some((x, score)),
            None => Some((x, score)),
            keep => keep,
        };
    }
    best.map(|(x, _)| x).ok_or(Error::EmptySweep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::sample_small_scale;

    fn small(trials: u64) -> ScenarioConfig {
        ScenarioConfig { trials, quantization_bits: Some(3), ..ScenarioConfig::default() }
    }

    fn est(mean: f64) -> MonteCarloEstimate {
        MonteCarloEstimate { mean, std_error: 0.0, ci_low: mean, ci_high: mean, n_trials: 1 }
    }

    fn fake_sweep(rates: &[f64]) -> SweepResult {
        SweepResult {
            axis: SweepAxis::Theta,
            axis_values: (0..rates.len()).map(|i| i as f64).collect(),
            points: rates
                .iter()
                .map(|&r| ScenarioOutcome {
                    rate: est(r),
                    outage: est(1.0 - r / 10.0),
                    gamma_rx: est(0.0),
                    gamma_eve: est(0.0),
                })
                .collect(),
        }
    }

    #[test]
    fn estimate_of_known_samples() {
        let e = MonteCarloEstimate::from_samples(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(e.mean, 2.5);
        let se = (5.0f64 / 3.0 / 4.0).sqrt();
        assert!((e.std_error - se).abs() < 1e-15);
        assert!((e.ci_high - e.ci_low - 2.0 * Z_95 * se).abs() < 1e-12);
        assert_eq!(e.n_trials, 4);
        let one = MonteCarloEstimate::from_samples(&[7.0]);
        assert_eq!((one.mean, one.std_error, one.ci_low, one.ci_high), (7.0, 0.0, 7.0, 7.0));
    }

    #[test]
    fn interval_shrinks_with_root_n() {
        let base: Vec<f64> = (0..100).map(|i| (i % 2) as f64).collect();
        let big: Vec<f64> = base.iter().cycle().take(10_000).copied().collect();
        let a = MonteCarloEstimate::from_samples(&base);
        let b = MonteCarloEstimate::from_samples(&big);
        let ratio = (a.ci_high - a.ci_low) / (b.ci_high - b.ci_low);
        // 10 * sqrt((n_b - 1) / n_b * n_a / (n_a - 1)) from the unbiased variance
        assert!((ratio - 10.0).abs() < 0.06, "{ratio}");
    }

    #[test]
    fn rejects_invalid_configs() {
        let mut c = small(10);
        c.include_ris = false;
        c.include_direct = false;
        assert!(matches!(run_scenario(&c), Err(Error::InvalidScenario(_))));
        assert!(matches!(run_scenario(&small(0)), Err(Error::EmptyTrials)));
        let c = ScenarioConfig { n_elements: 0, ..small(10) };
        assert!(matches!(run_scenario(&c), Err(Error::ZeroElements)));
        let c = ScenarioConfig { quantization_bits: Some(9), ..small(10) };
        assert!(matches!(run_scenario(&c), Err(Error::InvalidBitDepth(9))));
        let mut c = small(10);
        c.topology.theta = 2.0;
        assert!(matches!(run_scenario(&c), Err(Error::InvalidTopology(_))));
    }

    #[test]
    fn zero_threshold_never_outages() {
        let c = ScenarioConfig { r_th: 0.0, ..small(2_000) };
        let out = run_scenario(&c).unwrap();
        assert_eq!(out.outage.mean, 0.0);
        assert!(out.outage.contains(0.0));
    }

    #[test]
    fn serial_and_parallel_agree_bitwise() {
        let c = small(3_000);
        let s = run_scenario_with(&c, Execution::Serial).unwrap();
        let p = run_scenario_with(&c, Execution::Parallel).unwrap();
        assert_eq!(s, p);
        assert_eq!(s, run_scenario(&c).unwrap());
    }

    #[test]
    fn trial_sample_matches_batch() {
        let c = small(50);
        let all = trial_samples(&c, Execution::Serial).unwrap();
        assert_eq!(all[17], trial_sample(&c, 17).unwrap());
    }

    #[test]
    fn direct_only_matches_hand_computation() {
        let c = ScenarioConfig { include_ris: false, ..small(5) };
        let s = trial_sample(&c, 2).unwrap();
        let r = sample_small_scale(c.stream(2), c.n_elements).unwrap();
        // 20 dBm over -100 dBm noise, 30 dB reference loss, 50 dB blockage
        let scale = 1e12 * 1e-3 * 1e-5;
        let g_rx = scale * 40f64.powf(-2.5) * r.f_rx.norm_sqr();
        let g_eve = scale * 30f64.powf(-2.5) * r.f_eve.norm_sqr();
        assert!((s.gamma_rx - g_rx).abs() <= 1e-12 * g_rx);
        assert!((s.gamma_eve - g_eve).abs() <= 1e-12 * g_eve);
    }

    #[test]
    fn ris_only_continuous_gamma_is_aligned_sum() {
        let c = ScenarioConfig { include_direct: false, quantization_bits: None, ..small(5) };
        let s = trial_sample(&c, 0).unwrap();
        let r = sample_small_scale(c.stream(0), c.n_elements).unwrap();
        let d = link_distances(&c.topology).unwrap();
        let pl = |x: f64| 1e-3 * x.powf(-2.5);
        let amp: f64 = r.h.iter().zip(&r.g_rx).map(|(h, g)| (h * g).norm()).sum();
        let expect = 1e12 * pl(d.d_tx_ris) * pl(d.d_ris_rx) * amp * amp;
        assert!((s.gamma_rx - expect).abs() <= 1e-9 * expect);
    }

    #[test]
    fn sweep_shares_fading_across_alpha() {
        // same stream at every point where N is unchanged
        let c = small(4);
        let a = SweepAxis::Alpha.apply(&c, 2.5).unwrap();
        let b = SweepAxis::Alpha.apply(&c, 3.0).unwrap();
        for t in 0..4 {
            assert_eq!(
                sample_small_scale(a.stream(t), a.n_elements).unwrap(),
                sample_small_scale(b.stream(t), b.n_elements).unwrap()
            );
        }
        // with the direct link only, alpha scales every SNR by a fixed factor
        let c = ScenarioConfig { include_ris: false, ..small(4) };
        let lo = trial_sample(&SweepAxis::Alpha.apply(&c, 2.5).unwrap(), 3).unwrap();
        let hi = trial_sample(&SweepAxis::Alpha.apply(&c, 3.0).unwrap(), 3).unwrap();
        let k = 40f64.powf(-0.5);
        assert!((hi.gamma_rx / lo.gamma_rx - k).abs() < 1e-12);
    }

    #[test]
    fn single_value_sweep_equals_run() {
        let c = small(500);
        let s = sweep(&c, SweepAxis::Theta, &[c.topology.theta]).unwrap();
        assert_eq!(s.points, vec![run_scenario(&c).unwrap()]);
    }

    #[test]
    fn theta_sweep_cardinality() {
        let c = small(50);
        let values: Vec<f64> = (0..7).map(|k| (10.0 * k as f64).to_radians()).collect();
        let s = sweep(&c, SweepAxis::Theta, &values).unwrap();
        assert_eq!(s.len(), 7);
        assert_eq!(s.points.len(), 7);
    }

    #[test]
    fn sweep_rejects_bad_values() {
        let c = small(10);
        assert!(matches!(sweep(&c, SweepAxis::Alpha, &[]), Err(Error::EmptySweep)));
        assert!(matches!(
            sweep(&c, SweepAxis::Alpha, &[3.0, 2.5]),
            Err(Error::InvalidAxisValue { .. })
        ));
        assert!(matches!(
            sweep(&c, SweepAxis::Theta, &[0.1, 1.6]),
            Err(Error::InvalidAxisValue { axis: "theta", .. })
        ));
        assert!(sweep(&c, SweepAxis::NElements, &[10.5]).is_err());
        assert!(sweep(&c, SweepAxis::QuantizationBits, &[0.0]).is_err());
        assert!(sweep(&c, SweepAxis::DTe, &[-1.0]).is_err());
    }

    #[test]
    fn quantization_axis_maps_infinity_to_continuous() {
        let c = small(10);
        assert_eq!(SweepAxis::QuantizationBits.apply(&c, f64::INFINITY).unwrap().quantization_bits, None);
        assert_eq!(SweepAxis::QuantizationBits.apply(&c, 2.0).unwrap().quantization_bits, Some(2));
    }

    #[test]
    fn argbest_picks_extremes_and_breaks_ties_low() {
        let s = fake_sweep(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(argbest(&s, Objective::MaxRate).unwrap(), 3.0);
        assert_eq!(argbest(&s, Objective::MinOutage).unwrap(), 3.0);
        let s = fake_sweep(&[1.0, 5.0, 2.0, 5.0]);
        assert_eq!(argbest(&s, Objective::MaxRate).unwrap(), 1.0);
        assert_eq!(argbest(&s, Objective::MinOutage).unwrap(), 1.0);
        let s = fake_sweep(&[4.0, 3.0]);
        assert_eq!(argbest(&s, Objective::MaxRate).unwrap(), 0.0);
        assert!(argbest(&fake_sweep(&[]), Objective::MaxRate).is_err());
    }

    #[test]
    fn seeds_agree_within_three_standard_errors() {
        let c = ScenarioConfig { trials: 10_000, ..small(0) };
        let a = run_scenario(&ScenarioConfig { seed: 11, ..c }).unwrap().rate;
        let b = run_scenario(&ScenarioConfig { seed: 12, ..c }).unwrap().rate;
        let se = (a.std_error.powi(2) + b.std_error.powi(2)).sqrt();
        assert!((a.mean - b.mean).abs() <= 3.0 * se, "{a} vs {b}");
    }
}
