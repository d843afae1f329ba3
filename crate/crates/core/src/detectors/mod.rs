//! Smell detectors.
//!
//! Each detector is a pure function of a [`TableProfile`] and a
//! [`ScanConfig`]. [`run_all`] runs the enabled ones, applies severity
//! overrides and returns findings in report order.

mod categorical;
mod misc;
mod missing;
mod redundant;
mod strings;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::catalogue::{Confidence, Group, Severity, SmellKey};
use crate::config::ScanConfig;
use crate::exec::Execution;
use crate::profiler::{ColumnProfile, TableProfile};

pub use categorical::{detect_cat_bin, detect_cat_hierarchy};
pub use misc::{detect_misc_balance, detect_misc_sensitive, detect_misc_unit};
pub use missing::{detect_miss_bin, detect_miss_null, detect_miss_sp_val};
pub use redundant::{detect_red_corr, detect_red_dup, detect_red_uid};
pub use strings::{detect_str_human, detect_str_num, detect_str_sanitise};

/// One evidence metric attached to a finding.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Evidence {
    Count(u64),
    Number(f64),
    Text(String),
    List(Vec<String>),
    Histogram(BTreeMap<String, u64>),
}

impl From<usize> for Evidence {
    fn from(v: usize) -> Self {
        Evidence::Count(v as u64)
    }
}

impl From<f64> for Evidence {
    fn from(v: f64) -> Self {
        Evidence::Number(v)
    }
}

impl From<&str> for Evidence {
    fn from(v: &str) -> Self {
        Evidence::Text(v.to_string())
    }
}

impl From<String> for Evidence {
    fn from(v: String) -> Self {
        Evidence::Text(v)
    }
}

impl From<Vec<String>> for Evidence {
    fn from(v: Vec<String>) -> Self {
        Evidence::List(v)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Finding {
    pub smell_key: SmellKey,
    pub group: Group,
    /// Empty for table-level findings.
    pub columns: Vec<String>,
    pub column_indices: Vec<usize>,
    pub severity: Severity,
    pub confidence: Confidence,
    pub evidence: BTreeMap<String, Evidence>,
    pub suggestion: String,
    pub message: String,
}

impl Finding {
    pub(crate) fn new(key: SmellKey, columns: &[&ColumnProfile], message: impl Into<String>) -> Finding {
        let d = key.descriptor();
        Finding {
            smell_key: key,
            group: key.group(),
            columns: columns.iter().map(|c| c.name.clone()).collect(),
            column_indices: columns.iter().map(|c| c.index).collect(),
            severity: d.default_severity,
            confidence: d.default_confidence,
            evidence: BTreeMap::new(),
            suggestion: d.mitigation.to_string(),
            message: message.into(),
        }
    }

    pub(crate) fn with(mut self, metric: &str, value: impl Into<Evidence>) -> Finding {
        self.evidence.insert(metric.to_string(), value.into());
        self
    }

    pub(crate) fn severity(mut self, severity: Severity) -> Finding {
        self.severity = severity;
        self
    }

    pub(crate) fn confidence(mut self, confidence: Confidence) -> Finding {
        self.confidence = confidence;
        self
    }

    fn sort_key(&self) -> (SmellKey, Option<usize>, Option<usize>) {
        (
            self.smell_key,
            self.column_indices.first().copied(),
            self.column_indices.get(1).copied(),
        )
    }
}

pub type Detector = fn(&TableProfile, &ScanConfig) -> Vec<Finding>;

/// Detectors in catalogue order.
pub const DETECTORS: [(SmellKey, Detector); 14] = [
    (SmellKey::RedCorr, detect_red_corr),
    (SmellKey::RedDup, detect_red_dup),
    (SmellKey::RedUid, detect_red_uid),
    (SmellKey::CatBin, detect_cat_bin),
    (SmellKey::CatHierarchy, detect_cat_hierarchy),
    (SmellKey::MiscBalance, detect_misc_balance),
    (SmellKey::MiscSensitive, detect_misc_sensitive),
    (SmellKey::MiscUnit, detect_misc_unit),
    (SmellKey::MissBin, detect_miss_bin),
    (SmellKey::MissNull, detect_miss_null),
    (SmellKey::MissSpVal, detect_miss_sp_val),
    (SmellKey::StrHuman, detect_str_human),
    (SmellKey::StrNum, detect_str_num),
    (SmellKey::StrSanitise, detect_str_sanitise),
];

pub fn run_all(profile: &TableProfile, cfg: &ScanConfig) -> Vec<Finding> {
    run_all_with(profile, cfg, Execution::default())
}

/// Runs every enabled detector. Suppression between overlapping smells is
/// decided inside the detectors and does not depend on which are enabled, so
/// disabling one smell never changes another's findings.
pub fn run_all_with(profile: &TableProfile, cfg: &ScanConfig, exec: Execution) -> Vec<Finding> {
    let enabled: Vec<&(SmellKey, Detector)> =
        DETECTORS.iter().filter(|(key, _)| cfg.is_enabled(*key)).collect();
    let mut findings: Vec<Finding> = exec
        .map_slice(&enabled, |(_, detect)| detect(profile, cfg))
        .into_iter()
        .flatten()
        .map(|mut f| {
            f.severity = cfg.severity_for(f.smell_key, f.severity);
            f
        })
        .collect();
    findings.sort_by_key(Finding::sort_key);
    findings
}

pub(crate) fn fraction(part: usize, whole: usize) -> f64 {
    if whole == 0 {
        0.0
    } else {
        part as f64 / whole as f64
    }
}


#[cfg(test)]
mod tests {
    use super::testutil::*;
    use super::*;

    #[test]
    fn clean_table_has_no_findings() {
        let rows: Vec<Vec<String>> = (0..60)
            .map(|i| {
                vec![
                    format!("{:.3}", ((i * 7919) % 101) as f64 / 7.0),
                    format!("{:.3}", ((i * 104729) % 97) as f64 / 3.0 + (i % 5) as f64),
                    ["red", "green", "blue"][i % 3].to_string(),
                ]
            })
            .collect();
        let p = profile(&["score", "ratio", "colour"], &rows);
        let findings = run_all(&p, &ScanConfig::default());
        assert!(findings.is_empty(), "{findings:#?}");
    }

    #[test]
    fn findings_are_sorted_and_overridable() {
        let rows: Vec<Vec<String>> = (0..40)
            .map(|i| vec![i.to_string(), (2 * i + 1).to_string(), ["m", "f"][i % 2].to_string()])
            .collect();
        let p = profile(&["x", "y", "sex"], &rows);
        let mut cfg = ScanConfig::default();
        let findings = run_all(&p, &cfg);
        let keys: Vec<_> = findings.iter().map(|f| f.smell_key).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert!(keys.contains(&SmellKey::RedCorr));

        cfg.severity_overrides.insert(SmellKey::RedCorr, Severity::Error);
        cfg.enabled.insert(SmellKey::MiscSensitive, false);
        let findings = run_all(&p, &cfg);
        assert!(findings.iter().all(|f| f.smell_key != SmellKey::MiscSensitive));
        let corr = findings.iter().find(|f| f.smell_key == SmellKey::RedCorr).unwrap();
        assert_eq!(corr.severity, Severity::Error);
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let rows: Vec<Vec<String>> = (0..80)
            .map(|i| vec![i.to_string(), (3 * i).to_string(), if i % 9 == 0 { "".into() } else { "Y".into() }])
            .collect();
        let p = profile(&["id", "v", "flag"], &rows);
        let cfg = ScanConfig::default();
        assert_eq!(
            run_all_with(&p, &cfg, Execution::Sequential),
            run_all_with(&p, &cfg, Execution::Parallel)
        );
    }
}
