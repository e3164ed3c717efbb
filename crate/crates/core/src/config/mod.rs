//! Dotted-key configuration with defaults, shortcuts and explicit overrides.
//!
//! Every key lives in [`registry::REGISTRY`]. A [`ConfigTree`] always holds a
//! value for every registered key, so lookups never fail at runtime.

pub mod registry;

use crate::analytics::correlation::CorrMethod;
use crate::chart::ChartKind;
use crate::error::{EdaError, Result};
use registry::{KeySpec, ValueType, REGISTRY};
use serde::{Serialize, Serializer};
use std::fmt;
use std::path::Path;

#[derive(Debug, Clone, PartialEq)]
pub enum ConfigValue {
    Bool(bool),
    Int(i64),
    Float(f64),
    Str(String),
    List(Vec<String>),
}

impl ConfigValue {
    /// CLI value parsing: bool, then int, then float, then string.
    pub fn parse(raw: &str) -> ConfigValue {
        let t = raw.trim();
        match t {
            "true" => return ConfigValue::Bool(true),
            "false" => return ConfigValue::Bool(false),
            _ => {}
        }
        if let Ok(i) = t.parse::<i64>() {
            return ConfigValue::Int(i);
        }
        if let Ok(x) = t.parse::<f64>() {
            return ConfigValue::Float(x);
        }
        ConfigValue::Str(t.to_owned())
    }

    fn coerce(self, spec: &KeySpec) -> Result<ConfigValue> {
        let mismatch = |got: &ConfigValue| EdaError::TypeMismatch {
            key: spec.key.to_owned(),
            expected: spec.ty().as_str(),
            got: got.to_string(),
        };
        let v = match (spec.ty(), self) {
            (ValueType::Bool, v @ ConfigValue::Bool(_)) => v,
            (ValueType::Int, ConfigValue::Int(i)) if i >= 0 => ConfigValue::Int(i),
            (ValueType::Int, ConfigValue::Float(x)) if x >= 0.0 && x.fract() == 0.0 && x < 9e15 => {
                ConfigValue::Int(x as i64)
            }
            (ValueType::Float, ConfigValue::Int(i)) => ConfigValue::Float(i as f64),
            (ValueType::Float, v @ ConfigValue::Float(x)) if x.is_finite() => v,
            (ValueType::Str, v) => ConfigValue::Str(v.to_string()),
            (ValueType::StrList, ConfigValue::Str(s)) => {
                ConfigValue::List(s.split(',').map(str::trim).filter(|x| !x.is_empty()).map(str::to_owned).collect())
            }
            (ValueType::StrList, v @ ConfigValue::List(_)) => v,
            (_, v) => return Err(mismatch(&v)),
        };
        if spec.key == "corr.methods" {
            if let ConfigValue::List(items) = &v {
                if items.iter().any(|m| CorrMethod::parse(m).is_none()) {
                    return Err(EdaError::TypeMismatch {
                        key: spec.key.to_owned(),
                        expected: "methods among pearson, spearman, kendall",
                        got: v.to_string(),
                    });
                }
            }
        }
        Ok(v)
    }
}

impl fmt::Display for ConfigValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigValue::Bool(b) => write!(f, "{b}"),
            ConfigValue::Int(i) => write!(f, "{i}"),
            ConfigValue::Float(x) => write!(f, "{x}"),
            ConfigValue::Str(s) => f.write_str(s),
            ConfigValue::List(xs) => f.write_str(&xs.join(",")),
        }
    }
}

impl Serialize for ConfigValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ConfigValue::Bool(b) => s.serialize_bool(*b),
            ConfigValue::Int(i) => s.serialize_i64(*i),
            ConfigValue::Float(x) => s.serialize_f64(*x),
            ConfigValue::Str(v) => s.serialize_str(v),
            ConfigValue::List(xs) => xs.serialize(s),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Default,
    Shortcut,
    Explicit,
}

/// Resolved parameters, one entry per registry key in registry order.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigTree {
    entries: Vec<(ConfigValue, Provenance)>,
    shortcuts: Vec<(String, ConfigValue)>,
}

impl Default for ConfigTree {
    fn default() -> Self {
        ConfigTree {
            entries: REGISTRY.iter().map(|s| (s.default.value(), Provenance::Default)).collect(),
            shortcuts: Vec::new(),
        }
    }
}

fn index_of(key: &str) -> Result<usize> {
    REGISTRY
        .iter()
        .position(|s| s.key == key)
        .ok_or_else(|| EdaError::UnknownKey { key: key.to_owned(), suggestion: registry::suggest(key) })
}

/// Resolve shortcuts and explicit pairs over the registry defaults.
///
/// Precedence is explicit over shortcut over default regardless of argument
/// order; among repeated assignments of the same key the last one wins.
pub fn build_config(explicit: &[(String, ConfigValue)], shortcuts: &[(String, ConfigValue)]) -> Result<ConfigTree> {
    let mut cfg = ConfigTree::default();
    for (name, value) in shortcuts {
        let targets = registry::shortcut_targets(name)
            .ok_or_else(|| EdaError::UnknownKey { key: name.clone(), suggestion: registry::suggest(name) })?;
        for key in targets {
            let i = index_of(key)?;
            cfg.entries[i] = (value.clone().coerce(&REGISTRY[i])?, Provenance::Shortcut);
        }
        cfg.shortcuts.push((name.clone(), value.clone()));
    }
    for (key, value) in explicit {
        let i = index_of(key)?;
        cfg.entries[i] = (value.clone().coerce(&REGISTRY[i])?, Provenance::Explicit);
    }
    Ok(cfg)
}

/// Build from raw `KEY=VALUE` pairs; keys without a dot are shortcuts.
pub fn from_assignments<S: AsRef<str>>(assignments: &[S]) -> Result<ConfigTree> {
    let mut explicit = Vec::new();
    let mut shortcuts = Vec::new();
    for a in assignments {
        let (k, v) = parse_assignment(a.as_ref())?;
        if k.contains('.') {
            explicit.push((k, v));
        } else {
            shortcuts.push((k, v));
        }
    }
    build_config(&explicit, &shortcuts)
}

pub fn parse_assignment(raw: &str) -> Result<(String, ConfigValue)> {
    let (k, v) = raw
        .split_once('=')
        .ok_or_else(|| EdaError::InvalidArgument(format!("expected KEY=VALUE, got `{raw}`")))?;
    let k = k.trim().trim_matches('"');
    if k.is_empty() {
        return Err(EdaError::InvalidArgument(format!("empty key in `{raw}`")));
    }
    Ok((k.to_owned(), ConfigValue::parse(v)))
}

/// Read a flat `KEY=VALUE` file; blank lines and `#` comments are skipped.
pub fn read_assignments(path: &Path) -> Result<Vec<String>> {
    let text = std::fs::read_to_string(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => EdaError::FileNotFound(path.display().to_string()),
        _ => EdaError::Io(e),
    })?;
    Ok(text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_owned)
        .collect())
}

impl ConfigTree {
    pub fn resolve(&self, key: &str) -> Result<&ConfigValue> {
        Ok(&self.entries[index_of(key)?].0)
    }

    pub fn provenance(&self, key: &str) -> Result<Provenance> {
        Ok(self.entries[index_of(key)?].1)
    }

    /// `(key, value, provenance)` in registry order.
    pub fn entries(&self) -> impl Iterator<Item = (&'static str, &ConfigValue, Provenance)> {
        REGISTRY.iter().zip(&self.entries).map(|(s, (v, p))| (s.key, v, *p))
    }

    pub fn explicit_pairs(&self) -> Vec<(String, ConfigValue)> {
        self.entries()
            .filter(|(_, _, p)| *p == Provenance::Explicit)
            .map(|(k, v, _)| (k.to_owned(), v.clone()))
            .collect()
    }

    pub fn shortcut_pairs(&self) -> &[(String, ConfigValue)] {
        &self.shortcuts
    }

    fn known(&self, key: &str) -> &ConfigValue {
        match self.resolve(key) {
            Ok(v) => v,
            Err(_) => panic!("`{key}` is not a registered config key"),
        }
    }

    pub fn int(&self, key: &str) -> i64 {
        match self.known(key) {
            ConfigValue::Int(i) => *i,
            other => panic!("`{key}` holds {other}, not an int"),
        }
    }

    pub fn usize(&self, key: &str) -> usize {
        self.int(key).max(0) as usize
    }

    /// Integer keys that size something: never below one.
    pub fn count(&self, key: &str) -> usize {
        self.usize(key).max(1)
    }

    pub fn float(&self, key: &str) -> f64 {
        match self.known(key) {
            ConfigValue::Float(x) => *x,
            ConfigValue::Int(i) => *i as f64,
            other => panic!("`{key}` holds {other}, not a float"),
        }
    }

    pub fn flag(&self, key: &str) -> bool {
        match self.known(key) {
            ConfigValue::Bool(b) => *b,
            other => panic!("`{key}` holds {other}, not a bool"),
        }
    }

    pub fn list(&self, key: &str) -> &[String] {
        match self.known(key) {
            ConfigValue::List(xs) => xs,
            other => panic!("`{key}` holds {other}, not a list"),
        }
    }

    pub fn corr_methods(&self) -> Vec<CorrMethod> {
        let listed: Vec<CorrMethod> = self.list("corr.methods").iter().filter_map(|m| CorrMethod::parse(m)).collect();
        CorrMethod::ALL.into_iter().filter(|m| listed.contains(m)).collect()
    }

    /// Whether every switch that governs `kind` is on.
    pub fn chart_enabled(&self, kind: ChartKind) -> bool {
        let switches_on = registry::keys_for(kind)
            .filter(|s| s.key.ends_with(".enabled"))
            .all(|s| self.flag(s.key));
        let method_on = match kind {
            ChartKind::CorrHeatmap(m) | ChartKind::CorrRank(m) => self.corr_methods().contains(&m),
            _ => true,
        };
        switches_on && method_on
    }

    /// How-to guide for a chart: its keys with their current values.
    pub fn howto(&self, kind: ChartKind) -> Vec<HowtoEntry> {
        registry::keys_for(kind)
            .map(|s| {
                let value = self.known(s.key).to_string();
                HowtoEntry { key: s.key.to_owned(), snippet: format!("--config {}={}", s.key, value), value }
            })
            .collect()
    }
}

/// One line of a how-to guide.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HowtoEntry {
    pub key: String,
    pub value: String,
    pub snippet: String,
}

impl HowtoEntry {
    /// The `KEY=VALUE` part of the snippet.
    pub fn assignment(&self) -> &str {
        self.snippet.trim_start_matches("--config ").trim()
    }
}

/// Default chart list for a task, filtered by the per-chart switches.
pub fn enabled_charts(cfg: &ConfigTree, sig: &crate::tasks::TaskSignature) -> Vec<ChartKind> {
    crate::tasks::mapping(sig).into_iter().filter(|k| cfg.chart_enabled(*k)).collect()
}
