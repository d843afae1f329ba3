use std::collections::BTreeMap;

use crate::catalogue::{Severity, SmellKey};
use crate::config::ScanConfig;
use crate::ingest::InferredType;
use crate::profiler::{ColumnProfile, TableProfile};

use super::{fraction, Finding};

/// A mostly-missing column whose only present value is a positive response.
fn binary_missing_value<'a>(c: &'a ColumnProfile, cfg: &ScanConfig) -> Option<&'a str> {
    if c.missing_fraction() < cfg.binary_missing_fraction || c.distinct_count != 1 {
        return None;
    }
    let value = c.top_values.first()?.value.as_str();
    cfg.positive_response_lexicon
        .contains(&value.trim().to_lowercase())
        .then_some(value)
}

pub fn detect_miss_bin(profile: &TableProfile, cfg: &ScanConfig) -> Vec<Finding> {
    profile
        .columns
        .iter()
        .filter_map(|c| {
            let value = binary_missing_value(c, cfg)?;
            Some(
                Finding::new(
                    SmellKey::MissBin,
                    &[c],
                    format!(
                        "`{}` is {:.1}% missing and otherwise always `{}`; blanks likely mean no",
                        c.name,
                        c.missing_fraction() * 100.0,
                        value.trim()
                    ),
                )
                .with("missing_fraction", c.missing_fraction())
                .with("value", value),
            )
        })
        .collect()
}

/// Column-level findings above the threshold plus one table-level summary.
/// Columns that qualify as binary missing values are left to that smell.
pub fn detect_miss_null(profile: &TableProfile, cfg: &ScanConfig) -> Vec<Finding> {
    let mut out: Vec<Finding> = profile
        .columns
        .iter()
        .filter(|c| c.missing_fraction() >= cfg.missing_fraction_threshold)
        .filter(|c| binary_missing_value(c, cfg).is_none())
        .map(|c| {
            Finding::new(
                SmellKey::MissNull,
                &[c],
                format!("`{}` is {:.1}% missing", c.name, c.missing_fraction() * 100.0),
            )
            .with("missing_fraction", c.missing_fraction())
            .with("missing_count", c.missing_count)
        })
        .collect();

    let missing = profile.missing_cells();
    if missing > 0 {
        let total = profile.row_count * profile.column_count;
        let overall = fraction(missing, total);
        let affected = profile.columns.iter().filter(|c| c.missing_count > 0).count();
        out.push(
            Finding::new(
                SmellKey::MissNull,
                &[],
                format!("{:.2}% of all cells are missing", overall * 100.0),
            )
            .severity(Severity::Info)
            .with("missing_fraction", overall)
            .with("missing_cells", missing)
            .with("columns_with_missing", affected),
        );
    }
    out
}

pub fn detect_miss_sp_val(profile: &TableProfile, cfg: &ScanConfig) -> Vec<Finding> {
    let mut out = Vec::new();
    for c in &profile.columns {
        if c.non_missing_count == 0 {
            continue;
        }
        match c.inferred_type {
            InferredType::String => {
                let mut tokens: BTreeMap<String, usize> = BTreeMap::new();
                for v in &c.top_values {
                    let token = v.value.trim().to_lowercase();
                    if cfg.sentinel_string_lexicon.contains(&token) {
                        *tokens.entry(token).or_insert(0) += v.count;
                    }
                }
                let hits: Vec<(String, usize)> = tokens
                    .into_iter()
                    .filter(|(_, n)| fraction(*n, c.non_missing_count) >= cfg.sentinel_min_fraction)
                    .collect();
                let Some((token, count)) = hits.iter().max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0))) else {
                    continue;
                };
                out.push(
                    Finding::new(
                        SmellKey::MissSpVal,
                        &[c],
                        format!("`{}` uses `{token}` as a missing-value placeholder ({count} cells)", c.name),
                    )
                    .with("token", token.as_str())
                    .with("count", *count)
                    .with("fraction", fraction(*count, c.non_missing_count))
                    .with("tokens", hits.iter().map(|(t, _)| t.clone()).collect::<Vec<_>>()),
                );
            }
            InferredType::Integer | InferredType::Float => {
                let hits: Vec<_> = c
                    .sentinel_candidates
                    .iter()
                    .filter(|s| fraction(s.count, c.non_missing_count) >= cfg.sentinel_min_fraction)
                    .filter(|s| s.outside_fences())
                    .collect();
                let Some(s) = hits.iter().max_by(|a, b| a.count.cmp(&b.count).then(b.value.cmp(&a.value))) else {
                    continue;
                };
                out.push(
                    Finding::new(
                        SmellKey::MissSpVal,
                        &[c],
                        format!(
                            "`{}` uses {} as a missing-value placeholder ({} cells)",
                            c.name, s.value, s.count
                        ),
                    )
                    .with("sentinel_value", s.value.to_string())
                    .with("count", s.count)
                    .with("fraction", fraction(s.count, c.non_missing_count))
                    .with("tokens", hits.iter().map(|h| h.value.to_string()).collect::<Vec<_>>()),
                );
            }
            InferredType::Boolean => {}
        }
    }
    out
}
