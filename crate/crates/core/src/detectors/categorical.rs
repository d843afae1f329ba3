use crate::catalogue::SmellKey;
use crate::config::ScanConfig;
use crate::ingest::InferredType;
use crate::names::match_lexicon;
use crate::profiler::TableProfile;

use super::{fraction, Finding};

/// Sensitive categorical columns, where label encoding would invent an order.
pub fn detect_cat_hierarchy(profile: &TableProfile, cfg: &ScanConfig) -> Vec<Finding> {
    profile
        .columns
        .iter()
        .filter(|c| c.is_categorical && c.non_missing_count > 0)
        .filter_map(|c| {
            let term = match_lexicon(&c.name, &cfg.sensitive_lexicon)?;
            Some(
                Finding::new(
                    SmellKey::CatHierarchy,
                    &[c],
                    format!("sensitive categorical column `{}` should not be label encoded", c.name),
                )
                .with("matched_term", term)
                .with("distinct_count", c.distinct_count),
            )
        })
        .collect()
}

/// High-cardinality categories. The upper gate keeps free text and
/// identifiers out.
pub fn detect_cat_bin(profile: &TableProfile, cfg: &ScanConfig) -> Vec<Finding> {
    profile
        .columns
        .iter()
        .filter(|c| c.is_categorical || c.inferred_type == InferredType::String)
        .filter(|c| {
            c.distinct_count >= cfg.high_cardinality_threshold
                && (c.distinct_count as f64) < 0.5 * c.non_missing_count as f64
        })
        .map(|c| {
            Finding::new(
                SmellKey::CatBin,
                &[c],
                format!("`{}` has {} distinct categories", c.name, c.distinct_count),
            )
            .with("distinct_count", c.distinct_count)
            .with("tail_fraction", fraction(c.singleton_count, c.distinct_count))
        })
        .collect()
}
