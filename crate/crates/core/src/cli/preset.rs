//! Built-in experiments reproducing the secrecy-rate and outage figures.
//!
//! All presets share the link budget of [`LinkBudget::default`]: 20 dBm
//! transmit power, -100 dBm noise, 30 dB attenuation at 1 m and 50 dB
//! blockage on both direct links, with `d_tr = 20 m`, `d_tl = 40 m` and
//! `N = 50` unless the preset sweeps it.

use std::fmt;

use serde_json::{json, Value};

use super::experiment::{Experiment, PlotMetric, Series};
use super::params::ParamKey;
use crate::channel::LinkBudget;
use crate::geometry::Topology;
use crate::montecarlo::{ScenarioConfig, DEFAULT_OUTAGE_TRIALS, DEFAULT_RATE_TRIALS};

pub const DEFAULT_SEED: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// Secrecy rate vs RIS angle, with and without the RIS.
    Fig5b,
    /// Secrecy rate vs element count for 1, 2, 3 bits and continuous phases.
    Fig5c,
    /// Outage vs element count, same series as `Fig5c`.
    Fig5d,
    /// Secrecy rate vs RIS angle for two eavesdropper distances, 3-bit phases.
    Fig5e,
    /// Outage vs RIS angle, same series as `Fig5e`.
    Fig5f,
}

impl Preset {
    pub const ALL: [Preset; 5] = [Preset::Fig5b, Preset::Fig5c, Preset::Fig5d, Preset::Fig5e, Preset::Fig5f];

    pub fn name(&self) -> &'static str {
        match self {
            Preset::Fig5b => "fig5b",
            Preset::Fig5c => "fig5c",
            Preset::Fig5d => "fig5d",
            Preset::Fig5e => "fig5e",
            Preset::Fig5f => "fig5f",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.name() == name)
    }

    pub fn description(&self) -> &'static str {
        match self {
            Preset::Fig5b => "secrecy rate vs theta, RIS+direct vs direct only, alpha in {2.5, 3.0}, d_te=50 m",
            Preset::Fig5c => "secrecy rate vs N, phase bits in {1, 2, 3, continuous}, theta=10 deg, d_te=30 m",
            Preset::Fig5d => "secrecy outage (R_th=2.5) vs N, phase bits in {1, 2, 3, continuous}",
            Preset::Fig5e => "secrecy rate vs theta, d_te in {30, 35} m, alpha in {2.5, 3.0}, 3-bit phases",
            Preset::Fig5f => "secrecy outage (R_th=3.0) vs theta, d_te in {30, 35} m, alpha in {2.5, 3.0}, 3-bit phases",
        }
    }

    pub fn expand(&self) -> Experiment {
        let base = ScenarioConfig {
            topology: Topology { d_tr: 20.0, d_te: 30.0, d_tl: 40.0, theta: 10f64.to_radians() },
            budget: LinkBudget::default(),
            n_elements: 50,
            quantization_bits: None,
            include_ris: true,
            include_direct: true,
            r_th: 2.5,
            trials: DEFAULT_RATE_TRIALS,
            seed: DEFAULT_SEED,
        };
        let degrees = |step: usize| -> Vec<Value> { (0..=60).step_by(step).map(|d| json!(d)).collect() };
        let mut e = Experiment::new(self.name(), base);
        match self {
            Preset::Fig5b => {
                e.base.topology.d_te = 50.0;
                e.sweep_unchecked(ParamKey::ThetaDeg, degrees(10));
                e.series = [2.5, 3.0]
                    .iter()
                    .flat_map(|&a| {
                        [true, false].map(|ris| {
                            Series::new([(ParamKey::Alpha, json!(a)), (ParamKey::IncludeRis, json!(ris))])
                        })
                    })
                    .collect();
            }
            Preset::Fig5c | Preset::Fig5d => {
                e.sweep_unchecked(ParamKey::NElements, (10..=100).step_by(10).map(|n| json!(n)).collect());
                e.series = [json!(1), json!(2), json!(3), Value::Null]
                    .into_iter()
                    .map(|b| Series::new([(ParamKey::QuantizationBits, b)]))
                    .collect();
                if *self == Preset::Fig5d {
                    e.base.trials = DEFAULT_OUTAGE_TRIALS;
                    e.plot = PlotMetric::Outage;
                }
            }
            Preset::Fig5e | Preset::Fig5f => {
                e.base.quantization_bits = Some(3);
                e.base.r_th = 3.0;
                e.sweep_unchecked(ParamKey::ThetaDeg, degrees(5));
                e.series = [30, 35]
                    .iter()
                    .flat_map(|&d| {
                        [2.5, 3.0].map(|a| Series::new([(ParamKey::DTeM, json!(d)), (ParamKey::Alpha, json!(a))]))
                    })
                    .collect();
                if *self == Preset::Fig5f {
                    e.base.trials = DEFAULT_OUTAGE_TRIALS;
                    e.plot = PlotMetric::Outage;
                }
            }
        }
        e
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Experiment {
    fn sweep_unchecked(&mut self, key: ParamKey, values: Vec<Value>) {
        self.set_sweep(key, values).expect("preset sweeps are valid");
    }
}
