use crate::catalogue::SmellKey;
use crate::config::ScanConfig;
use crate::profiler::{ColumnProfile, PatternCensus, PatternClass, TableProfile};

use super::{fraction, Finding};

fn census(c: &ColumnProfile) -> Option<&PatternCensus> {
    c.string.as_ref().map(|s| &s.patterns).filter(|p| p.total() > 0)
}

fn human_format(p: &PatternCensus, cfg: &ScanConfig) -> bool {
    fraction(p.num_with_unit, p.total()) >= cfg.str_pattern_fraction && p.unit_words.len() >= 2
}

pub fn detect_str_sanitise(profile: &TableProfile, _cfg: &ScanConfig) -> Vec<Finding> {
    profile
        .columns
        .iter()
        .filter_map(|c| {
            let s = c.string.as_ref()?;
            if s.whitespace_affected_count == 0 && s.distinct_after_trim_casefold >= c.distinct_count {
                return None;
            }
            Some(
                Finding::new(
                    SmellKey::StrSanitise,
                    &[c],
                    format!(
                        "`{}` has {} cell(s) with stray whitespace or case variants ({} -> {} distinct)",
                        c.name, s.whitespace_affected_count, c.distinct_count, s.distinct_after_trim_casefold
                    ),
                )
                .with("affected_cells", s.whitespace_affected_count)
                .with("distinct_before", c.distinct_count)
                .with("distinct_after", s.distinct_after_trim_casefold),
            )
        })
        .collect()
}

pub fn detect_str_num(profile: &TableProfile, cfg: &ScanConfig) -> Vec<Finding> {
    profile
        .columns
        .iter()
        .filter_map(|c| {
            let p = census(c)?;
            let coverage = fraction(p.numeric_like(), p.total());
            if coverage < cfg.str_pattern_fraction || human_format(p, cfg) {
                return None;
            }
            let dominant = p.dominant()?;
            Some(
                Finding::new(
                    SmellKey::StrNum,
                    &[c],
                    format!("string column `{}` holds numbers ({})", c.name, dominant.as_str()),
                )
                .with("dominant_pattern", dominant.as_str())
                .with("coverage", coverage),
            )
        })
        .collect()
}

pub fn detect_str_human(profile: &TableProfile, cfg: &ScanConfig) -> Vec<Finding> {
    profile
        .columns
        .iter()
        .filter_map(|c| {
            let p = census(c)?;
            if !human_format(p, cfg) {
                return None;
            }
            let units: Vec<String> = p.unit_words.iter().cloned().collect();
            Some(
                Finding::new(
                    SmellKey::StrHuman,
                    &[c],
                    format!("`{}` mixes units: {}", c.name, units.join(", ")),
                )
                .with("unit_words", units)
                .with("coverage", fraction(p.count(PatternClass::NumWithUnit), p.total())),
            )
        })
        .collect()
}
