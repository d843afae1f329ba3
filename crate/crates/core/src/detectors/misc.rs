use std::collections::BTreeMap;

use crate::catalogue::{Severity, SmellKey};
use crate::config::ScanConfig;
use crate::names::{match_lexicon, tokenize};
use crate::profiler::TableProfile;

use super::{fraction, Evidence, Finding};

const BALANCE_MAX_CLASSES: usize = 10;

pub fn detect_misc_sensitive(profile: &TableProfile, cfg: &ScanConfig) -> Vec<Finding> {
    profile
        .columns
        .iter()
        .filter_map(|c| {
            let term = match_lexicon(&c.name, &cfg.sensitive_lexicon)?;
            Some(
                Finding::new(
                    SmellKey::MiscSensitive,
                    &[c],
                    format!("`{}` looks like a sensitive attribute ({term})", c.name),
                )
                .with("matched_term", term),
            )
        })
        .collect()
}

/// Rarest class compared with `imbalance_ratio` times the uniform share.
pub fn detect_misc_balance(profile: &TableProfile, cfg: &ScanConfig) -> Vec<Finding> {
    profile
        .columns
        .iter()
        .filter(|c| {
            c.is_categorical
                && (2..=BALANCE_MAX_CLASSES).contains(&c.distinct_count)
                && c.has_full_histogram()
        })
        .filter_map(|c| {
            let k = c.distinct_count;
            let rarest = c.top_values.last()?;
            let minority = fraction(rarest.count, c.non_missing_count);
            let expected_share = 1.0 / k as f64;
            if minority >= cfg.imbalance_ratio * expected_share {
                return None;
            }
            let severity = if cfg.target_name_pattern.is_match(&c.name) {
                Severity::Error
            } else {
                Severity::Info
            };
            let histogram: BTreeMap<String, u64> =
                c.top_values.iter().map(|v| (v.value.clone(), v.count as u64)).collect();
            Some(
                Finding::new(
                    SmellKey::MiscBalance,
                    &[c],
                    format!(
                        "class `{}` of `{}` covers only {:.2}% of rows",
                        rarest.value,
                        c.name,
                        minority * 100.0
                    ),
                )
                .severity(severity)
                .with("minority_class", rarest.value.as_str())
                .with("minority_fraction", minority)
                .with("expected_share", expected_share)
                .with("class_histogram", Evidence::Histogram(histogram)),
            )
        })
        .collect()
}

/// Numeric quantities whose name carries no unit.
pub fn detect_misc_unit(profile: &TableProfile, cfg: &ScanConfig) -> Vec<Finding> {
    profile
        .columns
        .iter()
        .filter(|c| c.inferred_type.is_numeric())
        .filter_map(|c| {
            let term = match_lexicon(&c.name, &cfg.quantity_lexicon)?;
            let tokens = tokenize(&c.name);
            let has_unit = tokens.iter().any(|t| cfg.unit_token_lexicon.contains(t))
                || c.name.contains('$')
                || c.name.contains('%');
            if has_unit {
                return None;
            }
            Some(
                Finding::new(
                    SmellKey::MiscUnit,
                    &[c],
                    format!("numeric quantity `{}` does not state its unit", c.name),
                )
                .with("quantity_term", term),
            )
        })
        .collect()
}
