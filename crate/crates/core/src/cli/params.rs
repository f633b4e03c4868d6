//! Flat, unit-suffixed scenario keys shared by scenario files, presets and
//! `--set key=value` overrides.

use std::fmt;

use serde_json::{json, Value};

use crate::montecarlo::{ScenarioConfig, SweepAxis};
use crate::ris::MAX_QUANTIZATION_BITS;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ParamKey {
    DTrM,
    DTeM,
    DTlM,
    ThetaDeg,
    PTxDbm,
    NoiseDbm,
    C0Db,
    D0M,
    Alpha,
    BlockageDb,
    NElements,
    QuantizationBits,
    IncludeRis,
    IncludeDirect,
    RThBpsHz,
    Trials,
    Seed,
}

impl ParamKey {
    pub const ALL: [ParamKey; 17] = [
        ParamKey::DTrM,
        ParamKey::DTeM,
        ParamKey::DTlM,
        ParamKey::ThetaDeg,
        ParamKey::PTxDbm,
        ParamKey::NoiseDbm,
        ParamKey::C0Db,
        ParamKey::D0M,
        ParamKey::Alpha,
        ParamKey::BlockageDb,
        ParamKey::NElements,
        ParamKey::QuantizationBits,
        ParamKey::IncludeRis,
        ParamKey::IncludeDirect,
        ParamKey::RThBpsHz,
        ParamKey::Trials,
        ParamKey::Seed,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ParamKey::DTrM => "d_tr_m",
            ParamKey::DTeM => "d_te_m",
            ParamKey::DTlM => "d_tl_m",
            ParamKey::ThetaDeg => "theta_deg",
            ParamKey::PTxDbm => "p_tx_dbm",
            ParamKey::NoiseDbm => "noise_dbm",
            ParamKey::C0Db => "c0_db",
            ParamKey::D0M => "d0_m",
            ParamKey::Alpha => "alpha",
            ParamKey::BlockageDb => "blockage_db",
            ParamKey::NElements => "n_elements",
            ParamKey::QuantizationBits => "quantization_bits",
            ParamKey::IncludeRis => "include_ris",
            ParamKey::IncludeDirect => "include_direct",
            ParamKey::RThBpsHz => "r_th_bps_hz",
            ParamKey::Trials => "trials",
            ParamKey::Seed => "seed",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == name)
    }

    /// Writes `v` into `cfg`, checking this key's own range.
    pub fn apply(&self, cfg: &mut ScenarioConfig, v: &Value) -> Result<(), String> {
        match self {
            ParamKey::DTrM => cfg.topology.d_tr = positive(v)?,
            ParamKey::DTeM => cfg.topology.d_te = positive(v)?,
            ParamKey::DTlM => cfg.topology.d_tl = positive(v)?,
            ParamKey::ThetaDeg => {
                let deg = number(v)?;
                if !(0.0..90.0).contains(&deg) {
                    return Err(format!("must lie in [0, 90) degrees, got {deg}"));
                }
                cfg.topology.theta = deg.to_radians();
            }
            ParamKey::PTxDbm => cfg.budget.p_tx_dbm = number(v)?,
            ParamKey::NoiseDbm => cfg.budget.noise_dbm = number(v)?,
            ParamKey::C0Db => cfg.budget.c0_db = nonnegative(v)?,
            ParamKey::D0M => cfg.budget.d0_m = positive(v)?,
            ParamKey::Alpha => cfg.budget.alpha = positive(v)?,
            ParamKey::BlockageDb => cfg.budget.blockage_db = nonnegative(v)?,
            ParamKey::NElements => {
                let n = integer(v)?;
                if n < 1 {
                    return Err(format!("must be at least 1, got {n}"));
                }
                cfg.n_elements = n as usize;
            }
            ParamKey::QuantizationBits => {
                cfg.quantization_bits = match v {
                    Value::Null => None,
                    _ => {
                        let b = integer(v)?;
                        if !(1..=MAX_QUANTIZATION_BITS as u64).contains(&b) {
                            return Err(format!(
                                "must be null or an integer in 1..={MAX_QUANTIZATION_BITS}, got {b}"
                            ));
                        }
                        Some(b as u32)
                    }
                }
            }
            ParamKey::IncludeRis => cfg.include_ris = boolean(v)?,
            ParamKey::IncludeDirect => cfg.include_direct = boolean(v)?,
            ParamKey::RThBpsHz => cfg.r_th = nonnegative(v)?,
            ParamKey::Trials => {
                let n = integer(v)?;
                if n < 1 {
                    return Err(format!("must be at least 1, got {n}"));
                }
                cfg.trials = n;
            }
            ParamKey::Seed => cfg.seed = integer(v)?,
        }
        Ok(())
    }

    /// Current value of this key in external units.
    pub fn get(&self, cfg: &ScenarioConfig) -> Value {
        match self {
            ParamKey::DTrM => json!(cfg.topology.d_tr),
            ParamKey::DTeM => json!(cfg.topology.d_te),
            ParamKey::DTlM => json!(cfg.topology.d_tl),
            ParamKey::ThetaDeg => json!(cfg.topology.theta.to_degrees()),
            ParamKey::PTxDbm => json!(cfg.budget.p_tx_dbm),
            ParamKey::NoiseDbm => json!(cfg.budget.noise_dbm),
            ParamKey::C0Db => json!(cfg.budget.c0_db),
            ParamKey::D0M => json!(cfg.budget.d0_m),
            ParamKey::Alpha => json!(cfg.budget.alpha),
            ParamKey::BlockageDb => json!(cfg.budget.blockage_db),
            ParamKey::NElements => json!(cfg.n_elements),
            ParamKey::QuantizationBits => json!(cfg.quantization_bits),
            ParamKey::IncludeRis => json!(cfg.include_ris),
            ParamKey::IncludeDirect => json!(cfg.include_direct),
            ParamKey::RThBpsHz => json!(cfg.r_th),
            ParamKey::Trials => json!(cfg.trials),
            ParamKey::Seed => json!(cfg.seed),
        }
    }

    /// The sweep axis this key drives, if it can be swept.
    pub fn axis(&self) -> Option<SweepAxis> {
        match self {
            ParamKey::ThetaDeg => Some(SweepAxis::Theta),
            ParamKey::NElements => Some(SweepAxis::NElements),
            ParamKey::Alpha => Some(SweepAxis::Alpha),
            ParamKey::DTeM => Some(SweepAxis::DTe),
            ParamKey::QuantizationBits => Some(SweepAxis::QuantizationBits),
            _ => None,
        }
    }

    /// Converts an external sweep value (degrees, `null` for continuous
    /// phases) to the internal axis value.
    pub fn to_axis_value(&self, v: &Value) -> Result<f64, String> {
        match self {
            ParamKey::ThetaDeg => Ok(number(v)?.to_radians()),
            ParamKey::QuantizationBits if v.is_null() => Ok(f64::INFINITY),
            _ => number(v),
        }
    }

    pub fn from_axis_value(&self, x: f64) -> Value {
        match self {
            ParamKey::ThetaDeg => json!(x.to_degrees()),
            ParamKey::QuantizationBits if x.is_infinite() => Value::Null,
            ParamKey::QuantizationBits | ParamKey::NElements => json!(x as u64),
            _ => json!(x),
        }
    }
}

impl fmt::Display for ParamKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parses the right-hand side of `key=value`: JSON literals first, then a
/// bare string.
pub fn parse_value(text: &str) -> Value {
    serde_json::from_str(text.trim()).unwrap_or_else(|_| Value::String(text.trim().to_string()))
}

/// Compact rendering used in series labels.
pub fn display_value(v: &Value) -> String {
    match v {
        Value::Null => "inf".into(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn number(v: &Value) -> Result<f64, String> {
    match v.as_f64() {
        Some(x) if x.is_finite() => Ok(x),
        _ => Err(format!("expected a finite number, got {v}")),
    }
}

fn positive(v: &Value) -> Result<f64, String> {
    let x = number(v)?;
    if x > 0.0 {
        Ok(x)
    } else {
        Err(format!("must be positive, got {x}"))
    }
}

fn nonnegative(v: &Value) -> Result<f64, String> {
    let x = number(v)?;
    if x >= 0.0 {
        Ok(x)
    } else {
        Err(format!("must be nonnegative, got {x}"))
    }
}

fn integer(v: &Value) -> Result<u64, String> {
    if let Some(n) = v.as_u64() {
        return Ok(n);
    }
    match v.as_f64() {
        Some(x) if x >= 0.0 && x.fract() == 0.0 && x < 2f64.powi(53) => Ok(x as u64),
        _ => Err(format!("expected a nonnegative integer, got {v}")),
    }
}

fn boolean(v: &Value) -> Result<bool, String> {
    v.as_bool().ok_or_else(|| format!("expected true or false, got {v}"))
}
