//! Classification of string cells that carry numeric information.

use std::collections::BTreeSet;
use std::sync::LazyLock;

use regex::Regex;
use serde::{Deserialize, Serialize};

use crate::ingest::is_float;

const NUMBER: &str = r"[-+]?(?:\d{1,3}(?:,\d{3})+|\d+)(?:\.\d+)?";

static VERSION: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"^\d+(?:\.\d+)+$").unwrap());
static WITH_UNIT_WORD: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(&format!(r"^{NUMBER}\s+(\p{{Alphabetic}}+)$")).unwrap());
static WITH_CURRENCY: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(&format!(r"^([$€£¥])\s?{NUMBER}$")).unwrap());
static WITH_PERCENT: LazyLock<Regex> = LazyLock::new(|| Regex::new(&format!(r"^{NUMBER}\s?%$")).unwrap());
static FORMATTED: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"^[-+]?\d{1,3}(?:,\d{3})+(?:\.\d+)?$").unwrap());

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PatternClass {
    /// Dot-separated numeric parts, e.g. `1.1.9`.
    Version,
    /// A number with a unit word, currency symbol or percent sign.
    NumWithUnit,
    /// A number with thousands separators, e.g. `1,234`.
    FormattedNum,
    PureNum,
    Other,
}

impl PatternClass {
    pub fn as_str(self) -> &'static str {
        match self {
            PatternClass::Version => "version",
            PatternClass::NumWithUnit => "num_with_unit",
            PatternClass::FormattedNum => "formatted_num",
            PatternClass::PureNum => "pure_num",
            PatternClass::Other => "other",
        }
    }
}

/// Classifies one cell, returning the unit (case-folded and singularized)
/// for [`PatternClass::NumWithUnit`].
pub fn classify(cell: &str) -> (PatternClass, Option<String>) {
    let t = cell.trim();
    if VERSION.is_match(t) {
        return (PatternClass::Version, None);
    }
    if let Some(c) = WITH_UNIT_WORD.captures(t) {
        return (PatternClass::NumWithUnit, Some(singularize(&c[1].to_lowercase())));
    }
    if let Some(c) = WITH_CURRENCY.captures(t) {
        return (PatternClass::NumWithUnit, Some(c[1].to_string()));
    }
    if WITH_PERCENT.is_match(t) {
        return (PatternClass::NumWithUnit, Some("%".to_string()));
    }
    if FORMATTED.is_match(t) {
        return (PatternClass::FormattedNum, None);
    }
    if is_float(t) {
        return (PatternClass::PureNum, None);
    }
    (PatternClass::Other, None)
}

/// Strips one trailing `s`. Two-letter words are left alone so `ms` stays
/// distinct from `m`.
fn singularize(word: &str) -> String {
    match word.strip_suffix('s') {
        Some(stem) if word.chars().count() > 2 && !stem.ends_with('s') => stem.to_string(),
        _ => word.to_string(),
    }
}

/// Per-class cell counts for one string column.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternCensus {
    pub version: usize,
    pub num_with_unit: usize,
    pub formatted_num: usize,
    pub pure_num: usize,
    pub other: usize,
    pub unit_words: BTreeSet<String>,
}

impl PatternCensus {
    pub fn add(&mut self, cell: &str, count: usize) {
        let (class, unit) = classify(cell);
        *self.count_mut(class) += count;
        if let Some(u) = unit {
            self.unit_words.insert(u);
        }
    }

    fn count_mut(&mut self, class: PatternClass) -> &mut usize {
        match class {
            PatternClass::Version => &mut self.version,
            PatternClass::NumWithUnit => &mut self.num_with_unit,
            PatternClass::FormattedNum => &mut self.formatted_num,
            PatternClass::PureNum => &mut self.pure_num,
            PatternClass::Other => &mut self.other,
        }
    }

    pub fn count(&self, class: PatternClass) -> usize {
        match class {
            PatternClass::Version => self.version,
            PatternClass::NumWithUnit => self.num_with_unit,
            PatternClass::FormattedNum => self.formatted_num,
            PatternClass::PureNum => self.pure_num,
            PatternClass::Other => self.other,
        }
    }

    pub fn total(&self) -> usize {
        self.numeric_like() + self.other
    }

    /// Cells in any class other than `Other`.
    pub fn numeric_like(&self) -> usize {
        self.version + self.num_with_unit + self.formatted_num + self.pure_num
    }

    /// Most frequent numeric-like class; ties go to the earlier class.
    pub fn dominant(&self) -> Option<PatternClass> {
        [
            PatternClass::Version,
            PatternClass::NumWithUnit,
            PatternClass::FormattedNum,
            PatternClass::PureNum,
        ]
        .into_iter()
        .filter(|c| self.count(*c) > 0)
        .fold(None, |best: Option<PatternClass>, c| match best {
            Some(b) if self.count(b) >= self.count(c) => Some(b),
            _ => Some(c),
        })
    }
}
