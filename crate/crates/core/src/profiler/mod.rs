//! Column and table profiling.
//!
//! A [`TableProfile`] holds everything the detectors look at: per-column
//! statistics, missingness, cardinality, the string pattern census, exact
//! duplicate rows and pairwise-complete correlations between numeric columns.

pub mod patterns;
pub mod stats;

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::catalogue::Confidence;
use crate::config::{Pattern, ScanConfig};
use crate::exec::Execution;
use crate::ingest::{parse_number, InferredType, ParseWarning, RawTable, TypeCounts, TypedTable};

pub use patterns::{PatternCensus, PatternClass};
pub use stats::Correlation;

/// Integer columns with at most this many distinct values are treated as
/// categorical codes (class labels, encoded categories).
pub const INTEGER_CATEGORICAL_MAX_DISTINCT: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueCount {
    pub value: String,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NumericStats {
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    pub sample_stddev: Option<f64>,
    pub q1: f64,
    pub q2: f64,
    pub q3: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StringStats {
    /// Cells whose trimmed form differs from the raw form.
    pub whitespace_affected_count: usize,
    pub distinct_after_trim_casefold: usize,
    pub integer_like_count: usize,
    pub float_like_count: usize,
    pub patterns: PatternCensus,
}

/// A numeric value that looks like a placeholder for missing data, with the
/// outlier fences of the column computed without it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SentinelCandidate {
    pub value: i64,
    pub count: usize,
    pub fence_low: Option<f64>,
    pub fence_high: Option<f64>,
}

impl SentinelCandidate {
    /// True when the value lies strictly outside `[Q1 - 3 IQR, Q3 + 3 IQR]`
    /// of the remaining values. A column of nothing but the sentinel counts
    /// as outside.
    pub fn outside_fences(&self) -> bool {
        match (self.fence_low, self.fence_high) {
            (Some(lo), Some(hi)) => (self.value as f64) < lo || (self.value as f64) > hi,
            _ => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ColumnProfile {
    pub name: String,
    pub index: usize,
    pub inferred_type: InferredType,
    pub is_categorical: bool,
    pub row_count: usize,
    pub missing_count: usize,
    pub non_missing_count: usize,
    /// Exact count over raw (untrimmed) cell text.
    pub distinct_count: usize,
    /// Distinct values that occur exactly once.
    pub singleton_count: usize,
    /// Most frequent values, count descending then value ascending.
    pub top_values: Vec<ValueCount>,
    pub type_counts: TypeCounts,
    pub numeric: Option<NumericStats>,
    pub string: Option<StringStats>,
    pub sentinel_candidates: Vec<SentinelCandidate>,
}

impl ColumnProfile {
    pub fn missing_fraction(&self) -> f64 {
        if self.row_count == 0 {
            0.0
        } else {
            self.missing_count as f64 / self.row_count as f64
        }
    }

    /// Whether the top values cover every distinct value.
    pub fn has_full_histogram(&self) -> bool {
        self.top_values.len() == self.distinct_count
    }
}

/// Rows that are identical on the compared columns. `members` includes the
/// representative and is ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DuplicateGroup {
    pub representative: usize,
    pub members: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationEntry {
    pub column_a: usize,
    pub column_b: usize,
    pub r: f64,
    pub n_pairs: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableProfile {
    pub source_name: String,
    pub row_count: usize,
    pub column_count: usize,
    pub columns: Vec<ColumnProfile>,
    pub duplicate_groups: Vec<DuplicateGroup>,
    /// Columns left out of the duplicate-row key (high-confidence uids).
    pub duplicate_key_excluded: Vec<usize>,
    pub correlations: Vec<CorrelationEntry>,
    pub warnings: Vec<ParseWarning>,
}

impl TableProfile {
    pub fn redundant_rows(&self) -> usize {
        self.duplicate_groups.iter().map(|g| g.members.len() - 1).sum()
    }

    pub fn missing_cells(&self) -> usize {
        self.columns.iter().map(|c| c.missing_count).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UidRule {
    /// The column name looks like an identifier.
    Name,
    /// Distinct integers forming a run with step 1.
    Sequence,
    /// Distinct in every row, nothing more.
    Distinct,
}

impl UidRule {
    pub fn as_str(self) -> &'static str {
        match self {
            UidRule::Name => "name",
            UidRule::Sequence => "sequence",
            UidRule::Distinct => "distinct",
        }
    }
}

/// Decides whether a column behaves like a unique identifier.
pub fn classify_uid(
    col: &ColumnProfile,
    uid_min_rows: usize,
    name_pattern: &Pattern,
) -> Option<(Confidence, UidRule)> {
    classify_key(col, col.row_count, uid_min_rows, name_pattern)
}

/// Like [`classify_uid`], but the column only has to be distinct across
/// `distinct_rows` rows. Exact copies of a whole row repeat every value, so
/// judging over the distinct rows keeps the answer stable when rows are
/// duplicated.
pub fn classify_key(
    col: &ColumnProfile,
    distinct_rows: usize,
    uid_min_rows: usize,
    name_pattern: &Pattern,
) -> Option<(Confidence, UidRule)> {
    let eligible = distinct_rows >= uid_min_rows
        && col.missing_count == 0
        && col.distinct_count == distinct_rows
        && matches!(col.inferred_type, InferredType::Integer | InferredType::String);
    if !eligible {
        return None;
    }
    if name_pattern.is_match(&col.name) {
        return Some((Confidence::High, UidRule::Name));
    }
    if col.inferred_type == InferredType::Integer {
        if let Some(n) = &col.numeric {
            if n.max - n.min + 1.0 == col.distinct_count as f64 {
                return Some((Confidence::High, UidRule::Sequence));
            }
        }
    }
    Some((Confidence::Medium, UidRule::Distinct))
}

pub fn profile_table(table: &TypedTable, cfg: &ScanConfig) -> TableProfile {
    profile_table_with(table, cfg, Execution::default())
}

pub fn profile_table_with(table: &TypedTable, cfg: &ScanConfig, exec: Execution) -> TableProfile {
    let raw = table.raw();
    let columns: Vec<(ColumnProfile, Option<Vec<Option<f64>>>)> =
        exec.map_range(raw.column_count(), |c| profile_column(table, c, cfg));

    let numeric: Vec<(usize, &Vec<Option<f64>>)> = columns
        .iter()
        .enumerate()
        .filter_map(|(i, (_, v))| v.as_ref().map(|v| (i, v)))
        .collect();
    let pairs: Vec<(usize, usize)> = (0..numeric.len())
        .flat_map(|a| (a + 1..numeric.len()).map(move |b| (a, b)))
        .collect();
    let correlations = exec
        .map_slice(&pairs, |&(a, b)| {
            let (ia, xa) = numeric[a];
            let (ib, xb) = numeric[b];
            stats::pearson(xa, xb).map(|c| CorrelationEntry {
                column_a: ia,
                column_b: ib,
                r: c.r,
                n_pairs: c.n_pairs,
            })
        })
        .into_iter()
        .flatten()
        .collect();

    let columns: Vec<ColumnProfile> = columns.into_iter().map(|(p, _)| p).collect();
    let exact = find_duplicate_rows(raw, &[]);
    let distinct_rows = raw.row_count() - exact.iter().map(|g| g.members.len() - 1).sum::<usize>();
    let excluded: Vec<usize> = columns
        .iter()
        .filter(|c| {
            matches!(
                classify_key(c, distinct_rows, cfg.uid_min_rows, &cfg.uid_name_pattern),
                Some((Confidence::High, _))
            )
        })
        .map(|c| c.index)
        .collect();
    let duplicate_groups = if excluded.is_empty() {
        exact
    } else {
        find_duplicate_rows(raw, &excluded)
    };

    TableProfile {
        source_name: raw.source_name().to_string(),
        row_count: raw.row_count(),
        column_count: raw.column_count(),
        columns,
        duplicate_groups,
        duplicate_key_excluded: excluded,
        correlations,
        warnings: raw.warnings().to_vec(),
    }
}

fn is_categorical(ty: InferredType, distinct: usize, non_missing: usize) -> bool {
    match ty {
        InferredType::Boolean => true,
        InferredType::Integer => distinct <= INTEGER_CATEGORICAL_MAX_DISTINCT,
        InferredType::Float => false,
        InferredType::String => {
            non_missing > 0 && distinct as f64 <= f64::max(20.0, 0.05 * non_missing as f64)
        }
    }
}

/// Profiles column `col`. For numeric columns the parsed values are returned
/// alongside so correlations can reuse them.
pub fn profile_column(
    table: &TypedTable,
    col: usize,
    cfg: &ScanConfig,
) -> (ColumnProfile, Option<Vec<Option<f64>>>) {
    let raw = table.raw();
    let ty = table.column_type(col);
    let row_count = raw.row_count();

    let mut freq: HashMap<&str, usize> = HashMap::new();
    let mut missing = 0usize;
    for cell in raw.column(col) {
        match cell {
            Some(v) => *freq.entry(v).or_insert(0) += 1,
            None => missing += 1,
        }
    }
    let non_missing = row_count - missing;
    let distinct = freq.len();

    let mut top: Vec<(&str, usize)> = freq.iter().map(|(k, v)| (*k, *v)).collect();
    top.sort_unstable_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));
    let top_values = top
        .iter()
        .take(cfg.top_k)
        .map(|(v, c)| ValueCount {
            value: v.to_string(),
            count: *c,
        })
        .collect();

    let mut numeric = None;
    let mut sentinel_candidates = Vec::new();
    let mut values = None;
    if ty.is_numeric() {
        let parsed: Vec<Option<f64>> = raw.column(col).map(|c| c.and_then(parse_number)).collect();
        let mut sorted: Vec<f64> = parsed.iter().flatten().copied().collect();
        sorted.sort_unstable_by(f64::total_cmp);
        numeric = numeric_stats(&sorted);
        sentinel_candidates = sentinel_candidates_for(&freq, &sorted, &cfg.sentinel_number_pattern);
        values = Some(parsed);
    }

    let string = (ty == InferredType::String).then(|| {
        let mut whitespace = 0;
        let mut folded = HashSet::new();
        let mut census = PatternCensus::default();
        for (v, count) in &freq {
            let trimmed = v.trim();
            if trimmed != *v {
                whitespace += count;
            }
            folded.insert(trimmed.to_lowercase());
            census.add(v, *count);
        }
        let counts = table.parse_stats()[col];
        StringStats {
            whitespace_affected_count: whitespace,
            distinct_after_trim_casefold: folded.len(),
            integer_like_count: counts.integer,
            float_like_count: counts.float,
            patterns: census,
        }
    });

    let profile = ColumnProfile {
        name: raw.headers()[col].clone(),
        index: col,
        inferred_type: ty,
        is_categorical: is_categorical(ty, distinct, non_missing),
        row_count,
        missing_count: missing,
        non_missing_count: non_missing,
        distinct_count: distinct,
        singleton_count: freq.values().filter(|c| **c == 1).count(),
        top_values,
        type_counts: table.parse_stats()[col],
        numeric,
        string,
        sentinel_candidates,
    };
    (profile, values)
}

fn numeric_stats(sorted: &[f64]) -> Option<NumericStats> {
    Some(NumericStats {
        min: *sorted.first()?,
        max: *sorted.last()?,
        mean: stats::mean(sorted)?,
        sample_stddev: stats::sample_stddev(sorted),
        q1: stats::quantile_sorted(sorted, 0.25)?,
        q2: stats::quantile_sorted(sorted, 0.5)?,
        q3: stats::quantile_sorted(sorted, 0.75)?,
    })
}

fn sentinel_candidates_for(
    freq: &HashMap<&str, usize>,
    sorted: &[f64],
    pattern: &Pattern,
) -> Vec<SentinelCandidate> {
    let mut by_value: BTreeMap<i64, usize> = BTreeMap::new();
    for (text, count) in freq {
        let Some(v) = parse_number(text) else { continue };
        if v.fract() != 0.0 || v.abs() >= 1e15 {
            continue;
        }
        let int = v as i64;
        if pattern.is_match(&int.to_string()) {
            *by_value.entry(int).or_insert(0) += count;
        }
    }
    by_value
        .into_iter()
        .map(|(value, count)| {
            let rest: Vec<f64> = sorted.iter().copied().filter(|x| *x != value as f64).collect();
            let q1 = stats::quantile_sorted(&rest, 0.25);
            let q3 = stats::quantile_sorted(&rest, 0.75);
            let (fence_low, fence_high) = match (q1, q3) {
                (Some(q1), Some(q3)) => {
                    let iqr = q3 - q1;
                    (Some(q1 - 3.0 * iqr), Some(q3 + 3.0 * iqr))
                }
                _ => (None, None),
            };
            SentinelCandidate {
                value,
                count,
                fence_low,
                fence_high,
            }
        })
        .collect()
}

/// Groups rows that are identical on every column outside `ignore_columns`.
/// Missing matches missing. Groups are ordered by representative row.
pub fn find_duplicate_rows(raw: &RawTable, ignore_columns: &[usize]) -> Vec<DuplicateGroup> {
    let keep: Vec<usize> = (0..raw.column_count())
        .filter(|c| !ignore_columns.contains(c))
        .collect();
    let mut first_seen: HashMap<Vec<Option<&str>>, usize> = HashMap::with_capacity(raw.row_count());
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for r in 0..raw.row_count() {
        let row = raw.row(r);
        let key: Vec<Option<&str>> = keep.iter().map(|&c| row[c].as_deref()).collect();
        match first_seen.get(&key) {
            Some(&rep) => groups.entry(rep).or_insert_with(|| vec![rep]).push(r),
            None => {
                first_seen.insert(key, r);
            }
        }
    }
    groups
        .into_iter()
        .map(|(representative, members)| DuplicateGroup {
            representative,
            members,
        })
        .collect()
}
