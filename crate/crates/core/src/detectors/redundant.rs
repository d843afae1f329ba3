use crate::catalogue::SmellKey;
use crate::config::ScanConfig;
use crate::profiler::{classify_uid, TableProfile};

use super::Finding;

pub fn detect_red_corr(profile: &TableProfile, cfg: &ScanConfig) -> Vec<Finding> {
    profile
        .correlations
        .iter()
        .filter(|e| e.r.abs() >= cfg.corr_threshold && e.n_pairs >= cfg.corr_min_pairs)
        .map(|e| {
            let (a, b) = (&profile.columns[e.column_a], &profile.columns[e.column_b]);
            Finding::new(
                SmellKey::RedCorr,
                &[a, b],
                format!("`{}` and `{}` are linearly correlated (r = {:.3})", a.name, b.name, e.r),
            )
            .with("r", e.r)
            .with("n_pairs", e.n_pairs)
        })
        .collect()
}

pub fn detect_red_uid(profile: &TableProfile, cfg: &ScanConfig) -> Vec<Finding> {
    profile
        .columns
        .iter()
        .filter_map(|c| {
            let (confidence, rule) = classify_uid(c, cfg.uid_min_rows, &cfg.uid_name_pattern)?;
            Some(
                Finding::new(
                    SmellKey::RedUid,
                    &[c],
                    format!("`{}` holds a distinct value in every row", c.name),
                )
                .confidence(confidence)
                .with("distinct_ratio", 1.0)
                .with("distinct_count", c.distinct_count)
                .with("matched_rule", rule.as_str()),
            )
        })
        .collect()
}

pub fn detect_red_dup(profile: &TableProfile, _cfg: &ScanConfig) -> Vec<Finding> {
    if profile.duplicate_groups.is_empty() {
        return Vec::new();
    }
    let redundant = profile.redundant_rows();
    let excluded: Vec<String> = profile
        .duplicate_key_excluded
        .iter()
        .map(|&i| profile.columns[i].name.clone())
        .collect();
    vec![Finding::new(
        SmellKey::RedDup,
        &[],
        format!(
            "{redundant} row(s) duplicate earlier rows across {} group(s)",
            profile.duplicate_groups.len()
        ),
    )
    .with("duplicate_groups", profile.duplicate_groups.len())
    .with("redundant_rows", redundant)
    .with("first_duplicate_rows", {
        let g = &profile.duplicate_groups[0];
        g.members.iter().take(5).map(|r| r.to_string()).collect::<Vec<_>>()
    })
    .with("excluded_columns", excluded)]
}
