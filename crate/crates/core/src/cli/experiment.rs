//! Experiment descriptions: a base scenario, an optional sweep, and the
//! series plotted against it. Parsed from JSON scenario files or expanded
//! from presets.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde_json::{json, Map, Value};

use super::params::{display_value, ParamKey};
use super::preset::Preset;
use super::CliError;
use crate::montecarlo::{ScenarioConfig, SweepAxis};
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotMetric {
    Rate,
    Outage,
}

impl PlotMetric {
    pub fn name(&self) -> &'static str {
        match self {
            PlotMetric::Rate => "rate",
            PlotMetric::Outage => "outage",
        }
    }
}

/// Sweep over one scenario key, values in external units.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub key: ParamKey,
    pub values: Vec<Value>,
}

impl SweepSpec {
    pub fn axis(&self) -> SweepAxis {
        self.key.axis().expect("sweep key checked at construction")
    }

    pub fn axis_values(&self) -> Result<Vec<f64>, CliError> {
        self.values
            .iter()
            .enumerate()
            .map(|(i, v)| {
                self.key
                    .to_axis_value(v)
                    .map_err(|reason| CliError::invariant(format!("sweep.values[{i}]"), reason))
            })
            .collect()
    }
}

/// One plotted curve: overrides applied on top of the base scenario.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Series {
    pub label: Option<String>,
    pub overrides: BTreeMap<ParamKey, Value>,
}

impl Series {
    pub fn new<const N: usize>(overrides: [(ParamKey, Value); N]) -> Self {
        Self { label: None, overrides: overrides.into_iter().collect() }
    }

    pub fn label(&self) -> String {
        if let Some(l) = &self.label {
            return l.clone();
        }
        if self.overrides.is_empty() {
            return "base".into();
        }
        self.overrides
            .iter()
            .map(|(k, v)| format!("{k}={}", display_value(v)))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Experiment {
    pub name: String,
    pub base: ScenarioConfig,
    pub sweep: Option<SweepSpec>,
    pub series: Vec<Series>,
    pub plot: PlotMetric,
}

impl Experiment {
    pub fn new(name: impl Into<String>, base: ScenarioConfig) -> Self {
        Self {
            name: name.into(),
            base,
            sweep: None,
            series: vec![Series::default()],
            plot: PlotMetric::Rate,
        }
    }

    /// Applies `key = value` to the base scenario and to every series,
    /// dropping series that become duplicates.
    pub fn set(&mut self, key: ParamKey, value: &Value, path: &str) -> Result<(), CliError> {
        if self.sweep.as_ref().is_some_and(|s| s.key == key) {
            return Err(CliError::invariant(path, "is the sweep axis of this experiment"));
        }
        key.apply(&mut self.base, value)
            .map_err(|reason| CliError::invariant(path, reason))?;
        let mut kept: Vec<Series> = Vec::with_capacity(self.series.len());
        for mut s in std::mem::take(&mut self.series) {
            s.overrides.remove(&key);
            if !kept.contains(&s) {
                kept.push(s);
            }
        }
        self.series = kept;
        Ok(())
    }

    pub fn set_sweep(&mut self, key: ParamKey, values: Vec<Value>) -> Result<(), CliError> {
        let sweep = SweepSpec { key, values };
        if key.axis().is_none() {
            return Err(CliError::invariant("sweep.axis", format!("{key} cannot be swept")));
        }
        if sweep.values.is_empty() {
            return Err(CliError::invariant("sweep.values", "must not be empty"));
        }
        let xs = sweep.axis_values()?;
        if let Some(i) = xs.windows(2).position(|w| !(w[0] < w[1])) {
            return Err(CliError::invariant(
                format!("sweep.values[{}]", i + 1),
                "sweep values must be strictly increasing",
            ));
        }
        self.sweep = Some(sweep);
        Ok(())
    }

    pub fn series_config(&self, index: usize) -> Result<ScenarioConfig, CliError> {
        let s = &self.series[index];
        let mut cfg = self.base;
        for (k, v) in &s.overrides {
            k.apply(&mut cfg, v)
                .map_err(|reason| CliError::invariant(format!("series[{index}].{k}"), reason))?;
        }
        Ok(cfg)
    }

    /// Full validation: every series at every sweep point.
    pub fn validate(&self) -> Result<(), CliError> {
        if self.series.is_empty() {
            return Err(CliError::invariant("series", "must contain at least one series"));
        }
        for (i, s) in self.series.iter().enumerate() {
            if let Some(sweep) = &self.sweep {
                if s.overrides.contains_key(&sweep.key) {
                    return Err(CliError::invariant(
                        format!("series[{i}].{}", sweep.key),
                        "conflicts with the sweep axis",
                    ));
                }
            }
            let cfg = self.series_config(i)?;
            let path = if self.series.len() == 1 && s.overrides.is_empty() {
                String::new()
            } else {
                format!("series[{i}].")
            };
            cfg.validate().map_err(|e| config_error(&path, e))?;
            if let Some(sweep) = &self.sweep {
                for (j, x) in sweep.axis_values()?.into_iter().enumerate() {
                    sweep.axis().apply(&cfg, x).map_err(|e| {
                        CliError::invariant(format!("sweep.values[{j}]"), e.to_string())
                    })?;
                }
            }
        }
        Ok(())
    }

    /// JSON document that parses back to this experiment.
    pub fn to_document(&self) -> Value {
        let mut doc = Map::new();
        doc.insert("name".into(), json!(self.name));
        let swept = self.sweep.as_ref().map(|s| s.key);
        for k in ParamKey::ALL.into_iter().filter(|k| Some(*k) != swept) {
            doc.insert(k.name().into(), k.get(&self.base));
        }
        if let Some(s) = &self.sweep {
            doc.insert("sweep".into(), json!({ "axis": s.key.name(), "values": s.values }));
        }
        let series: Vec<Value> = self
            .series
            .iter()
            .map(|s| {
                let mut m = Map::new();
                if let Some(l) = &s.label {
                    m.insert("label".into(), json!(l));
                }
                for (k, v) in &s.overrides {
                    m.insert(k.name().into(), v.clone());
                }
                Value::Object(m)
            })
            .collect();
        doc.insert("series".into(), Value::Array(series));
        doc.insert("plot".into(), json!(self.plot.name()));
        Value::Object(doc)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("document is plain JSON") + "\n"
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "experiment: {}", self.name)?;
        for k in ParamKey::ALL {
            writeln!(f, "  {k} = {}", k.get(&self.base))?;
        }
        match &self.sweep {
            Some(s) => writeln!(
                f,
                "  sweep {} over [{}]",
                s.key,
                s.values.iter().map(display_value).collect::<Vec<_>>().join(", ")
            )?,
            None => writeln!(f, "  no sweep")?,
        }
        for s in &self.series {
            writeln!(f, "  series: {}", s.label())?;
        }
        write!(f, "  plot: {}", self.plot.name())
    }
}

fn config_error(prefix: &str, e: Error) -> CliError {
    let key = match &e {
        Error::InvalidScenario(_) => "include_ris".to_string(),
        Error::EmptyTrials => "trials".into(),
        Error::ZeroElements => "n_elements".into(),
        Error::InvalidBitDepth(_) => "quantization_bits".into(),
        Error::InvalidTopology(_) => "topology".into(),
        Error::InvalidLinkBudget(_) => "link budget".into(),
        _ => "scenario".into(),
    };
    CliError::invariant(format!("{prefix}{key}"), e.to_string())
}

/// Reads and validates a scenario file.
pub fn parse_config(path: &Path) -> Result<Experiment, CliError> {
    if !path.exists() {
        return Err(CliError::MissingFile(path.to_path_buf()));
    }
    let text = std::fs::read_to_string(path)
        .map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    let fallback = path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("scenario")
        .to_string();
    let exp = parse_document(&text, &fallback).map_err(|e| match e {
        CliError::Malformed { message, .. } => {
            CliError::Malformed { origin: path.display().to_string(), message }
        }
        other => other,
    })?;
    Ok(exp)
}

/// Parses a scenario document. `default_name` names the experiment when
/// the document has neither `name` nor `preset`.
pub fn parse_document(text: &str, default_name: &str) -> Result<Experiment, CliError> {
    let doc: Value = serde_json::from_str(text).map_err(|e| CliError::Malformed {
        origin: default_name.to_string(),
        message: e.to_string(),
    })?;
    let Value::Object(map) = doc else {
        return Err(CliError::Malformed {
            origin: default_name.to_string(),
            message: "top level must be a JSON object".into(),
        });
    };

    let mut exp = match map.get("preset") {
        None => Experiment::new(default_name, ScenarioConfig::default()),
        Some(Value::String(name)) => Preset::parse(name)
            .ok_or_else(|| CliError::invariant("preset", format!("unknown preset {name:?}")))?
            .expand(),
        Some(other) => return Err(CliError::invariant("preset", format!("expected a string, got {other}"))),
    };

    if let Some(v) = map.get("sweep") {
        let (k, values) = parse_sweep(v)?;
        exp.set_sweep(k, values)?;
    }
    for (key, v) in &map {
        match key.as_str() {
            "preset" | "name" | "sweep" | "series" | "plot" => {}
            _ => match ParamKey::parse(key) {
                Some(k) => exp.set(k, v, key)?,
                None => return Err(CliError::UnknownKey(key.clone())),
            },
        }
    }
    if let Some(v) = map.get("series") {
        exp.series = parse_series(v)?;
    }
    if let Some(v) = map.get("plot") {
        exp.plot = match v.as_str() {
            Some("rate") => PlotMetric::Rate,
            Some("outage") => PlotMetric::Outage,
            _ => return Err(CliError::invariant("plot", format!("expected \"rate\" or \"outage\", got {v}"))),
        };
    }
    if let Some(v) = map.get("name") {
        exp.name = v
            .as_str()
            .ok_or_else(|| CliError::invariant("name", "expected a string"))?
            .to_string();
    }
    exp.validate()?;
    Ok(exp)
}

fn parse_sweep(v: &Value) -> Result<(ParamKey, Vec<Value>), CliError> {
    let obj = v
        .as_object()
        .ok_or_else(|| CliError::invariant("sweep", "expected an object with axis and values"))?;
    if let Some(k) = obj.keys().find(|k| *k != "axis" && *k != "values") {
        return Err(CliError::UnknownKey(format!("sweep.{k}")));
    }
    let axis = obj
        .get("axis")
        .and_then(Value::as_str)
        .ok_or_else(|| CliError::invariant("sweep.axis", "expected a key name"))?;
    let key = ParamKey::parse(axis)
        .ok_or_else(|| CliError::invariant("sweep.axis", format!("unknown key {axis:?}")))?;
    let values = obj
        .get("values")
        .and_then(Value::as_array)
        .ok_or_else(|| CliError::invariant("sweep.values", "expected an array"))?
        .clone();
    Ok((key, values))
}

fn parse_series(v: &Value) -> Result<Vec<Series>, CliError> {
    let arr = v
        .as_array()
        .ok_or_else(|| CliError::invariant("series", "expected an array of objects"))?;
    arr.iter()
        .enumerate()
        .map(|(i, item)| {
            let obj = item
                .as_object()
                .ok_or_else(|| CliError::invariant(format!("series[{i}]"), "expected an object"))?;
            let mut s = Series::default();
            for (k, v) in obj {
                if k == "label" {
                    s.label = Some(
                        v.as_str()
                            .ok_or_else(|| CliError::invariant(format!("series[{i}].label"), "expected a string"))?
                            .to_string(),
                    );
                    continue;
                }
                let key = ParamKey::parse(k)
                    .ok_or_else(|| CliError::UnknownKey(format!("series[{i}].{k}")))?;
                s.overrides.insert(key, v.clone());
            }
            Ok(s)
        })
        .collect()
}
