//! Detector thresholds, lexicons and switches.
//!
//! Configuration is layered: built-in defaults, then an optional JSON file
//! whose fields mirror [`ScanConfig`], then command-line overrides.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;

use regex::Regex;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;
use thiserror::Error;

use crate::catalogue::{Severity, SmellKey, UnknownSmell};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid config: {0}")]
    Parse(String),
    #[error("unknown config field `{0}`")]
    UnknownField(String),
    #[error("invalid value for `{field}`: {reason}")]
    Invalid { field: String, reason: String },
    #[error(transparent)]
    UnknownSmell(#[from] UnknownSmell),
}

/// A compiled regular expression that serializes as its source text.
#[derive(Clone)]
pub struct Pattern(Regex);

impl Pattern {
    pub fn new(source: &str) -> Result<Self, regex::Error> {
        Regex::new(source).map(Pattern)
    }

    pub fn is_match(&self, s: &str) -> bool {
        self.0.is_match(s)
    }

    pub fn as_str(&self) -> &str {
        self.0.as_str()
    }
}

impl fmt::Debug for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pattern({:?})", self.as_str())
    }
}

impl PartialEq for Pattern {
    fn eq(&self, other: &Self) -> bool {
        self.as_str() == other.as_str()
    }
}

impl Serialize for Pattern {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for Pattern {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let source = String::deserialize(d)?;
        Pattern::new(&source).map_err(serde::de::Error::custom)
    }
}

fn set(words: &[&str]) -> BTreeSet<String> {
    words.iter().map(|w| w.to_string()).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScanConfig {
    pub corr_threshold: f64,
    pub corr_min_pairs: usize,
    pub uid_min_rows: usize,
    pub uid_name_pattern: Pattern,
    pub high_cardinality_threshold: usize,
    pub imbalance_ratio: f64,
    pub target_name_pattern: Pattern,
    pub missing_fraction_threshold: f64,
    pub binary_missing_fraction: f64,
    pub positive_response_lexicon: BTreeSet<String>,
    pub sentinel_string_lexicon: BTreeSet<String>,
    /// Matched against the integer text of integral numeric values.
    pub sentinel_number_pattern: Pattern,
    pub sentinel_min_fraction: f64,
    pub sensitive_lexicon: BTreeSet<String>,
    pub quantity_lexicon: BTreeSet<String>,
    pub unit_token_lexicon: BTreeSet<String>,
    pub str_pattern_fraction: f64,
    /// Number of most frequent values kept per column.
    pub top_k: usize,
    /// Per-smell switches; smells not listed are enabled.
    pub enabled: BTreeMap<SmellKey, bool>,
    pub severity_overrides: BTreeMap<SmellKey, Severity>,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            corr_threshold: 0.8,
            corr_min_pairs: 30,
            uid_min_rows: 10,
            uid_name_pattern: Pattern::new(
                r"(?i)(?:^|[^a-z0-9])(?:id|uid|key|index)(?:[^a-z0-9]|$)|(?:id|uid|key|index)$",
            )
            .unwrap(),
            high_cardinality_threshold: 20,
            imbalance_ratio: 0.10,
            target_name_pattern: Pattern::new(
                r"(?i)(?:^|[^a-z0-9])(?:class|label|target|outcome|churn)(?:[^a-z0-9]|$)",
            )
            .unwrap(),
            missing_fraction_threshold: 0.25,
            binary_missing_fraction: 0.50,
            positive_response_lexicon: set(&["y", "yes", "t", "true", "1"]),
            sentinel_string_lexicon: set(&[
                "?", "-", "--", ".", "null", "nil", "none", "n/a", "na", "unknown", "missing", "undefined",
            ]),
            sentinel_number_pattern: Pattern::new(r"^[-+]?(?:9{3,}|6{3,})$").unwrap(),
            sentinel_min_fraction: 0.01,
            sensitive_lexicon: set(&[
                "sex",
                "gender",
                "race",
                "ethnicity",
                "religion",
                "nationality",
                "native country",
                "age",
                "disability",
                "marital status",
                "pregnancy",
                "sexual orientation",
            ]),
            quantity_lexicon: set(&[
                "radius",
                "perimeter",
                "area",
                "length",
                "width",
                "height",
                "weight",
                "mass",
                "duration",
                "distance",
                "depth",
                "volume",
                "temperature",
                "price",
                "salary",
                "income",
                "speed",
            ]),
            unit_token_lexicon: set(&[
                "mm", "cm", "m", "km", "in", "ft", "g", "kg", "lb", "s", "sec", "min", "h", "hr", "ms", "usd",
                "eur", "gbp", "$", "%", "°c", "°f", "k",
            ]),
            str_pattern_fraction: 0.95,
            top_k: 20,
            enabled: BTreeMap::new(),
            severity_overrides: BTreeMap::new(),
        }
    }
}

/// Command-line layer applied on top of the config file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    /// `field=value` pairs. Values are parsed as JSON when possible; list
    /// fields also accept comma-separated words.
    pub set: Vec<String>,
    pub enable: Vec<String>,
    pub disable: Vec<String>,
}

impl ScanConfig {
    pub fn is_enabled(&self, key: SmellKey) -> bool {
        self.enabled.get(&key).copied().unwrap_or(true)
    }

    pub fn severity_for(&self, key: SmellKey, detected: Severity) -> Severity {
        self.severity_overrides.get(&key).copied().unwrap_or(detected)
    }

    pub fn field_names() -> Vec<String> {
        match serde_json::to_value(ScanConfig::default()) {
            Ok(Value::Object(map)) => map.keys().cloned().collect(),
            _ => Vec::new(),
        }
    }

    pub fn from_json_str(text: &str) -> Result<ScanConfig, ConfigError> {
        let cfg: ScanConfig = serde_json::from_str(text).map_err(|e| parse_error(&e))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let invalid = |field: &str, reason: &str| ConfigError::Invalid {
            field: field.to_string(),
            reason: reason.to_string(),
        };
        for (field, v) in [
            ("corr_threshold", self.corr_threshold),
            ("imbalance_ratio", self.imbalance_ratio),
            ("missing_fraction_threshold", self.missing_fraction_threshold),
            ("binary_missing_fraction", self.binary_missing_fraction),
            ("sentinel_min_fraction", self.sentinel_min_fraction),
            ("str_pattern_fraction", self.str_pattern_fraction),
        ] {
            if !(0.0..=1.0).contains(&v) {
                return Err(invalid(field, "must lie in [0, 1]"));
            }
            if v == 0.0 && field != "sentinel_min_fraction" {
                return Err(invalid(field, "must be positive"));
            }
        }
        for (field, v) in [
            ("corr_min_pairs", self.corr_min_pairs),
            ("uid_min_rows", self.uid_min_rows),
            ("high_cardinality_threshold", self.high_cardinality_threshold),
            ("top_k", self.top_k),
        ] {
            if v == 0 {
                return Err(invalid(field, "must be positive"));
            }
        }
        for (field, lex) in [
            ("positive_response_lexicon", &self.positive_response_lexicon),
            ("sentinel_string_lexicon", &self.sentinel_string_lexicon),
            ("sensitive_lexicon", &self.sensitive_lexicon),
            ("quantity_lexicon", &self.quantity_lexicon),
            ("unit_token_lexicon", &self.unit_token_lexicon),
        ] {
            if lex.is_empty() {
                return Err(invalid(field, "must not be empty"));
            }
        }
        Ok(())
    }

    /// Applies `field=value` overrides and enable/disable switches.
    pub fn apply(&mut self, overrides: &Overrides) -> Result<(), ConfigError> {
        if !overrides.set.is_empty() {
            let mut value = serde_json::to_value(&*self).map_err(|e| ConfigError::Parse(e.to_string()))?;
            let map = value.as_object_mut().expect("config serializes as an object");
            for assignment in &overrides.set {
                let (field, raw) = assignment.split_once('=').ok_or_else(|| ConfigError::Invalid {
                    field: assignment.clone(),
                    reason: "expected key=value".into(),
                })?;
                let field = field.trim();
                let current = map
                    .get(field)
                    .ok_or_else(|| ConfigError::UnknownField(field.to_string()))?;
                let parsed = parse_override(current, raw.trim());
                map.insert(field.to_string(), parsed);
            }
            *self = serde_json::from_value(value).map_err(|e| {
                ConfigError::Parse(format!("{e} (in --set overrides)"))
            })?;
        }
        for key in &overrides.enable {
            self.enabled.insert(key.parse()?, true);
        }
        for key in &overrides.disable {
            self.enabled.insert(key.parse()?, false);
        }
        self.validate()
    }
}

fn parse_override(current: &Value, raw: &str) -> Value {
    if let Ok(v) = serde_json::from_str::<Value>(raw) {
        let same_kind = matches!(
            (current, &v),
            (Value::Number(_), Value::Number(_))
                | (Value::Array(_), Value::Array(_))
                | (Value::Object(_), Value::Object(_))
                | (Value::Bool(_), Value::Bool(_))
                | (Value::String(_), Value::String(_))
        );
        if same_kind {
            return v;
        }
    }
    match current {
        Value::Array(_) => Value::Array(
            raw.split(',')
                .map(|w| w.trim())
                .filter(|w| !w.is_empty())
                .map(|w| Value::String(w.to_string()))
                .collect(),
        ),
        _ => Value::String(raw.to_string()),
    }
}

fn parse_error(e: &serde_json::Error) -> ConfigError {
    let msg = e.to_string();
    if let Some(rest) = msg.strip_prefix("unknown field `") {
        if let Some(end) = rest.find('`') {
            return ConfigError::UnknownField(rest[..end].to_string());
        }
    }
    ConfigError::Parse(msg)
}

/// Defaults, then the optional config file, then overrides.
pub fn load_config(path: Option<&Path>, overrides: &Overrides) -> Result<ScanConfig, ConfigError> {
    let mut cfg = match path {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|source| ConfigError::Io {
                path: p.display().to_string(),
                source,
            })?;
            ScanConfig::from_json_str(&text)?
        }
        None => ScanConfig::default(),
    };
    cfg.apply(overrides)?;
    Ok(cfg)
}
