//! Rendering of scan results and profiles.
//!
//! JSON output is canonical: object keys are sorted, there is no
//! whitespace between tokens, and every floating-point number carries
//! exactly twelve significant digits. Parsing a rendered document and
//! rendering it again reproduces the same bytes.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::catalogue::{list_smells, Group, Severity, SmellDescriptor, SmellKey};
use crate::config::ScanConfig;
use crate::detectors::{Evidence, Finding};
use crate::ingest::ParseWarning;
use crate::profiler::TableProfile;

pub const SCHEMA: &str = "smelt/1";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Finding counts per group and per smell. Every group and smell is listed,
/// including those with no findings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub by_group: BTreeMap<Group, usize>,
    pub by_smell: BTreeMap<SmellKey, usize>,
    pub by_severity: BTreeMap<Severity, usize>,
}

impl Summary {
    pub fn of(findings: &[Finding]) -> Summary {
        let mut by_group: BTreeMap<Group, usize> = Group::ALL.iter().map(|g| (*g, 0)).collect();
        let mut by_smell: BTreeMap<SmellKey, usize> = SmellKey::ALL.iter().map(|k| (*k, 0)).collect();
        let mut by_severity: BTreeMap<Severity, usize> =
            [Severity::Info, Severity::Warning, Severity::Error].iter().map(|s| (*s, 0)).collect();
        for f in findings {
            *by_group.get_mut(&f.group).unwrap() += 1;
            *by_smell.get_mut(&f.smell_key).unwrap() += 1;
            *by_severity.get_mut(&f.severity).unwrap() += 1;
        }
        Summary {
            total: findings.len(),
            by_group,
            by_smell,
            by_severity,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub schema: String,
    pub tool_version: String,
    pub source_name: String,
    pub rows: usize,
    pub columns: usize,
    pub warnings: Vec<ParseWarning>,
    pub summary: Summary,
    pub findings: Vec<Finding>,
    pub config_echo: ScanConfig,
}

impl ScanReport {
    pub fn new(profile: &TableProfile, findings: Vec<Finding>, cfg: &ScanConfig) -> ScanReport {
        ScanReport {
            schema: SCHEMA.to_string(),
            tool_version: TOOL_VERSION.to_string(),
            source_name: profile.source_name.clone(),
            rows: profile.row_count,
            columns: profile.column_count,
            warnings: profile.warnings.clone(),
            summary: Summary::of(&findings),
            findings,
            config_echo: cfg.clone(),
        }
    }
}

/// Wrapper giving profile output the same envelope as scan reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileReport {
    pub schema: String,
    pub tool_version: String,
    pub profile: TableProfile,
}

impl ProfileReport {
    pub fn new(profile: TableProfile) -> ProfileReport {
        ProfileReport {
            schema: SCHEMA.to_string(),
            tool_version: TOOL_VERSION.to_string(),
            profile,
        }
    }
}

/// The lowest severity that makes a scan fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum FailOn {
    Info,
    Warning,
    Error,
    Never,
}

impl FailOn {
    pub fn threshold(self) -> Option<Severity> {
        match self {
            FailOn::Info => Some(Severity::Info),
            FailOn::Warning => Some(Severity::Warning),
            FailOn::Error => Some(Severity::Error),
            FailOn::Never => None,
        }
    }
}

impl FromStr for FailOn {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "info" => Ok(FailOn::Info),
            "warning" => Ok(FailOn::Warning),
            "error" => Ok(FailOn::Error),
            "never" => Ok(FailOn::Never),
            other => Err(format!("unknown fail-on level `{other}` (expected error, warning, info or never)")),
        }
    }
}

pub const EXIT_CLEAN: i32 = 0;
pub const EXIT_FINDINGS: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

pub fn exit_status(report: &ScanReport, fail_on: FailOn) -> i32 {
    match fail_on.threshold() {
        Some(min) if report.findings.iter().any(|f| f.severity >= min) => EXIT_FINDINGS,
        _ => EXIT_CLEAN,
    }
}

/// Canonical JSON for any serializable value.
pub fn to_canonical_json<T: Serialize + ?Sized>(value: &T) -> String {
    let value = serde_json::to_value(value).expect("report values serialize to JSON");
    canonicalize(&value)
}

/// Re-renders an already parsed JSON document canonically.
pub fn canonicalize(value: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, value);
    out
}

pub fn render_json(report: &ScanReport) -> String {
    to_canonical_json(report)
}

/// Several reports as one JSON array.
pub fn render_json_many(reports: &[ScanReport]) -> String {
    to_canonical_json(reports)
}

fn write_value(out: &mut String, value: &Value) {
    match value {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if let Some(i) = n.as_u64() {
                write!(out, "{i}").unwrap();
            } else if let Some(i) = n.as_i64() {
                write!(out, "{i}").unwrap();
            } else {
                out.push_str(&format_float(n.as_f64().unwrap_or(f64::NAN)));
            }
        }
        Value::String(s) => out.push_str(&serde_json::to_string(s).unwrap()),
        Value::Array(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_value(out, item);
            }
            out.push(']');
        }
        Value::Object(map) => {
            let mut entries: Vec<(&String, &Value)> = map.iter().collect();
            entries.sort_by(|a, b| a.0.cmp(b.0));
            out.push('{');
            for (i, (k, v)) in entries.into_iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&serde_json::to_string(k).unwrap());
                out.push(':');
                write_value(out, v);
            }
            out.push('}');
        }
    }
}

/// Twelve significant digits, trailing zeros kept. Plain notation for
/// decimal exponents -4 through 10, scientific otherwise. Non-finite values
/// become `null`.
pub fn format_float(v: f64) -> String {
    if !v.is_finite() {
        return "null".to_string();
    }
    let sci = format!("{v:.11e}");
    let (_, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("numeric exponent");
    if (-4..=10).contains(&exp) {
        format!("{v:.prec$}", prec = (11 - exp) as usize)
    } else {
        sci
    }
}

fn format_evidence(e: &Evidence) -> String {
    match e {
        Evidence::Count(n) => n.to_string(),
        Evidence::Number(x) => short_float(*x),
        Evidence::Text(s) => s.clone(),
        Evidence::List(items) => format!("[{}]", items.join(", ")),
        Evidence::Histogram(h) => {
            let parts: Vec<String> = h.iter().map(|(k, v)| format!("{k}: {v}")).collect();
            format!("{{{}}}", parts.join(", "))
        }
    }
}

fn short_float(x: f64) -> String {
    if x == x.trunc() && x.abs() < 1e15 {
        return format!("{x:.1}");
    }
    let s = format!("{x:.6}");
    let s = s.trim_end_matches('0');
    s.strip_suffix('.').unwrap_or(s).to_string()
}

/// Line-oriented text report. Verbosity 1 and above adds confidence,
/// column positions and the reasoning behind each smell.
pub fn render_text(report: &ScanReport, verbosity: u8) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "{}: {} rows x {} columns",
        report.source_name, report.rows, report.columns
    )
    .unwrap();
    for w in &report.warnings {
        writeln!(out, "parse warning: {w}").unwrap();
    }
    out.push('\n');

    for group in Group::ALL {
        writeln!(out, "{}  {}", group.name(), report.summary.by_group[&group]).unwrap();
        for key in SmellKey::ALL.iter().filter(|k| k.group() == group) {
            writeln!(out, "  {}  {}", key, report.summary.by_smell[key]).unwrap();
        }
    }
    writeln!(out, "total  {}", report.summary.total).unwrap();
    out.push('\n');

    if report.findings.is_empty() {
        out.push_str("no data smells detected\n");
        return out;
    }

    for f in &report.findings {
        let target = if f.columns.is_empty() {
            "(table)".to_string()
        } else {
            f.columns.join(", ")
        };
        writeln!(out, "{} [{}] {}", f.smell_key, f.severity.as_str(), target).unwrap();
        writeln!(out, "  {}", f.message).unwrap();
        if verbosity > 0 {
            let positions: Vec<String> = f.column_indices.iter().map(|i| i.to_string()).collect();
            writeln!(out, "  confidence: {}", f.confidence.as_str()).unwrap();
            if !positions.is_empty() {
                writeln!(out, "  column positions: {}", positions.join(", ")).unwrap();
            }
        }
        for (metric, value) in &f.evidence {
            writeln!(out, "  {metric}: {}", format_evidence(value)).unwrap();
        }
        writeln!(out, "  suggestion: {}", f.suggestion).unwrap();
        if verbosity > 0 {
            writeln!(out, "  why it matters: {}", f.smell_key.descriptor().rationale).unwrap();
        }
        out.push('\n');
    }
    out
}

/// Column-by-column text view of a profile.
pub fn render_profile_text(profile: &TableProfile) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "{}: {} rows x {} columns",
        profile.source_name, profile.row_count, profile.column_count
    )
    .unwrap();
    for w in &profile.warnings {
        writeln!(out, "parse warning: {w}").unwrap();
    }
    for c in &profile.columns {
        out.push('\n');
        let kind = if c.is_categorical { ", categorical" } else { "" };
        writeln!(out, "{} ({}{kind})", c.name, c.inferred_type.as_str()).unwrap();
        writeln!(
            out,
            "  missing {} of {} ({:.1}%), distinct {}",
            c.missing_count,
            c.row_count,
            c.missing_fraction() * 100.0,
            c.distinct_count
        )
        .unwrap();
        if let Some(n) = &c.numeric {
            let sd = n.sample_stddev.map(short_float).unwrap_or_else(|| "n/a".into());
            writeln!(
                out,
                "  min {}  q1 {}  median {}  q3 {}  max {}  mean {}  sd {sd}",
                short_float(n.min),
                short_float(n.q1),
                short_float(n.q2),
                short_float(n.q3),
                short_float(n.max),
                short_float(n.mean)
            )
            .unwrap();
        }
        let top: Vec<String> = c.top_values.iter().take(5).map(|v| format!("{:?} x{}", v.value, v.count)).collect();
        if !top.is_empty() {
            writeln!(out, "  top: {}", top.join(", ")).unwrap();
        }
    }
    if !profile.correlations.is_empty() {
        out.push('\n');
        out.push_str("correlations\n");
        for e in &profile.correlations {
            writeln!(
                out,
                "  {} ~ {}  r {}  pairs {}",
                profile.columns[e.column_a].name,
                profile.columns[e.column_b].name,
                short_float(e.r),
                e.n_pairs
            )
            .unwrap();
        }
    }
    writeln!(out, "\nduplicate rows: {}", profile.redundant_rows()).unwrap();
    out
}

pub fn render_catalogue_text() -> String {
    let mut out = String::new();
    for group in Group::ALL {
        writeln!(out, "{}", group.name()).unwrap();
        for d in list_smells().iter().filter(|d| d.group == group) {
            writeln!(out, "  {:<14}{}", d.key.as_str(), d.name).unwrap();
        }
    }
    out
}

pub fn render_descriptor_text(d: &SmellDescriptor) -> String {
    format!(
        "{} ({})\ngroup: {}\ndefault severity: {}\ndefault confidence: {}\n\n{}\n\nWhy it matters: {}\n\nWhat to do: {}\n",
        d.name,
        d.key,
        d.group_name,
        d.default_severity.as_str(),
        d.default_confidence.as_str(),
        d.description,
        d.rationale,
        d.mitigation
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalogue::Confidence;
    use proptest::prelude::*;

    fn empty_profile() -> TableProfile {
        TableProfile {
            source_name: "t.csv".into(),
            row_count: 3,
            column_count: 2,
            columns: Vec::new(),
            duplicate_groups: Vec::new(),
            duplicate_key_excluded: Vec::new(),
            correlations: Vec::new(),
            warnings: Vec::new(),
        }
    }

    fn corr_finding() -> Finding {
        let d = SmellKey::RedCorr.descriptor();
        Finding {
            smell_key: SmellKey::RedCorr,
            group: Group::Red,
            columns: vec!["x".into(), "y".into()],
            column_indices: vec![0, 1],
            severity: Severity::Warning,
            confidence: Confidence::Medium,
            evidence: [("r".to_string(), Evidence::Number(1.0)), ("n_pairs".to_string(), Evidence::Count(40))]
                .into_iter()
                .collect(),
            suggestion: d.mitigation.into(),
            message: "x and y".into(),
        }
    }

    #[test]
    fn float_formatting() {
        assert_eq!(format_float(1.0), "1.00000000000");
        assert_eq!(format_float(0.0), "0.00000000000");
        assert_eq!(format_float(-0.8315218406202999), "-0.831521840620");
        assert_eq!(format_float(0.000123), "0.000123000000000");
        assert_eq!(format_float(1.5e-7), "1.50000000000e-7");
        assert_eq!(format_float(12345678901.0), "12345678901.0");
        assert_eq!(format_float(1e11), "1.00000000000e11");
        assert_eq!(format_float(9.9999999999999), "10.0000000000");
        assert_eq!(format_float(f64::NAN), "null");
    }

    #[test]
    fn empty_report() {
        let r = ScanReport::new(&empty_profile(), Vec::new(), &ScanConfig::default());
        let text = render_text(&r, 0);
        assert!(text.contains("no data smells detected"));
        assert!(text.contains("Redundant value smells  0"));
        let json = render_json(&r);
        assert!(json.contains(r#""findings":[]"#));
        assert!(json.contains(r#""schema":"smelt/1""#));
        assert_eq!(exit_status(&r, FailOn::Warning), EXIT_CLEAN);
        assert_eq!(exit_status(&r, FailOn::Info), EXIT_CLEAN);
    }

    #[test]
    fn one_correlation_finding() {
        let r = ScanReport::new(&empty_profile(), vec![corr_finding()], &ScanConfig::default());
        let text = render_text(&r, 0);
        assert!(text.contains("Redundant value smells  1\n"));
        assert!(text.contains("  red-corr  1\n"));
        assert!(text.contains("String value smells  0\n"));
        let json = render_json(&r);
        assert!(json.contains(r#""r":1.00000000000"#));
        assert!(json.contains(r#""n_pairs":40"#));
        assert_eq!(exit_status(&r, FailOn::Warning), EXIT_FINDINGS);
        assert_eq!(exit_status(&r, FailOn::Info), EXIT_FINDINGS);
        assert_eq!(exit_status(&r, FailOn::Error), EXIT_CLEAN);
        assert_eq!(exit_status(&r, FailOn::Never), EXIT_CLEAN);
    }

    #[test]
    fn summary_matches_findings() {
        let mut f2 = corr_finding();
        f2.column_indices = vec![0, 2];
        let r = ScanReport::new(&empty_profile(), vec![corr_finding(), f2], &ScanConfig::default());
        assert_eq!(r.summary.total, 2);
        assert_eq!(r.summary.by_group[&Group::Red], 2);
        assert_eq!(r.summary.by_smell[&SmellKey::RedCorr], 2);
        assert_eq!(r.summary.by_smell.values().sum::<usize>(), 2);
    }

    #[test]
    fn json_round_trip_is_byte_identical() {
        let r = ScanReport::new(&empty_profile(), vec![corr_finding()], &ScanConfig::default());
        let json = render_json(&r);
        let parsed: Value = serde_json::from_str(&json).unwrap();
        assert_eq!(canonicalize(&parsed), json);
        let typed: ScanReport = serde_json::from_str(&json).unwrap();
        assert_eq!(render_json(&typed), json);
    }

    #[test]
    fn keys_are_sorted_without_whitespace() {
        let v: Value = serde_json::from_str(r#"{ "b": [1, 2.5], "a": {"z": null, "c": true} }"#).unwrap();
        assert_eq!(canonicalize(&v), r#"{"a":{"c":true,"z":null},"b":[1,2.50000000000]}"#);
    }

    #[test]
    fn fail_on_parsing() {
        assert_eq!("never".parse::<FailOn>(), Ok(FailOn::Never));
        assert!("fatal".parse::<FailOn>().is_err());
    }

    proptest! {
        #[test]
        fn float_round_trip(v in proptest::num::f64::NORMAL | proptest::num::f64::ZERO) {
            let s = format_float(v);
            let back: f64 = s.parse().unwrap();
            prop_assert_eq!(format_float(back), s.clone());
            let parsed: Value = serde_json::from_str(&s).unwrap();
            prop_assert_eq!(canonicalize(&parsed), s);
        }

        #[test]
        fn exit_status_is_monotone(sevs in proptest::collection::vec(0u8..3, 0..6)) {
            let findings: Vec<Finding> = sevs.iter().map(|s| {
                let mut f = corr_finding();
                f.severity = [Severity::Info, Severity::Warning, Severity::Error][*s as usize];
                f
            }).collect();
            let r = ScanReport::new(&empty_profile(), findings, &ScanConfig::default());
            let levels = [FailOn::Never, FailOn::Error, FailOn::Warning, FailOn::Info];
            for w in levels.windows(2) {
                prop_assert!(exit_status(&r, w[0]) <= exit_status(&r, w[1]));
            }
        }
    }
}
