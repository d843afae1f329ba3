//! The built-in registry of data smells.
//!
//! Fourteen smells in five groups. The registry is static; configuration can
//! disable smells or override their severity but cannot add new ones.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Group {
    Red,
    Cat,
    Misc,
    Miss,
    Str,
}

impl Group {
    pub const ALL: [Group; 5] = [Group::Red, Group::Cat, Group::Misc, Group::Miss, Group::Str];

    pub const fn key(self) -> &'static str {
        match self {
            Group::Red => "red",
            Group::Cat => "cat",
            Group::Misc => "misc",
            Group::Miss => "miss",
            Group::Str => "str",
        }
    }

    pub const fn name(self) -> &'static str {
        match self {
            Group::Red => "Redundant value smells",
            Group::Cat => "Categorical value smells",
            Group::Misc => "Miscellaneous value smells",
            Group::Miss => "Missing value smells",
            Group::Str => "String value smells",
        }
    }
}

/// Identifier of one catalogued smell. Variant order is report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SmellKey {
    #[serde(rename = "red-corr")]
    RedCorr,
    #[serde(rename = "red-dup")]
    RedDup,
    #[serde(rename = "red-uid")]
    RedUid,
    #[serde(rename = "cat-bin")]
    CatBin,
    #[serde(rename = "cat-hierarchy")]
    CatHierarchy,
    #[serde(rename = "misc-balance")]
    MiscBalance,
    #[serde(rename = "misc-sensitive")]
    MiscSensitive,
    #[serde(rename = "misc-unit")]
    MiscUnit,
    #[serde(rename = "miss-bin")]
    MissBin,
    #[serde(rename = "miss-null")]
    MissNull,
    #[serde(rename = "miss-sp-val")]
    MissSpVal,
    #[serde(rename = "str-human")]
    StrHuman,
    #[serde(rename = "str-num")]
    StrNum,
    #[serde(rename = "str-sanitise")]
    StrSanitise,
}

impl SmellKey {
    /// Grouped in catalogue order, alphabetical by key within each group.
    pub const ALL: [SmellKey; 14] = [
        SmellKey::RedCorr,
        SmellKey::RedDup,
        SmellKey::RedUid,
        SmellKey::CatBin,
        SmellKey::CatHierarchy,
        SmellKey::MiscBalance,
        SmellKey::MiscSensitive,
        SmellKey::MiscUnit,
        SmellKey::MissBin,
        SmellKey::MissNull,
        SmellKey::MissSpVal,
        SmellKey::StrHuman,
        SmellKey::StrNum,
        SmellKey::StrSanitise,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SmellKey::RedCorr => "red-corr",
            SmellKey::RedDup => "red-dup",
            SmellKey::RedUid => "red-uid",
            SmellKey::CatBin => "cat-bin",
            SmellKey::CatHierarchy => "cat-hierarchy",
            SmellKey::MiscBalance => "misc-balance",
            SmellKey::MiscSensitive => "misc-sensitive",
            SmellKey::MiscUnit => "misc-unit",
            SmellKey::MissBin => "miss-bin",
            SmellKey::MissNull => "miss-null",
            SmellKey::MissSpVal => "miss-sp-val",
            SmellKey::StrHuman => "str-human",
            SmellKey::StrNum => "str-num",
            SmellKey::StrSanitise => "str-sanitise",
        }
    }

    pub fn group(self) -> Group {
        match self {
            SmellKey::RedCorr | SmellKey::RedDup | SmellKey::RedUid => Group::Red,
            SmellKey::CatBin | SmellKey::CatHierarchy => Group::Cat,
            SmellKey::MiscBalance | SmellKey::MiscSensitive | SmellKey::MiscUnit => Group::Misc,
            SmellKey::MissBin | SmellKey::MissNull | SmellKey::MissSpVal => Group::Miss,
            SmellKey::StrHuman | SmellKey::StrNum | SmellKey::StrSanitise => Group::Str,
        }
    }

    pub fn descriptor(self) -> &'static SmellDescriptor {
        &CATALOGUE[self as usize]
    }
}

impl fmt::Display for SmellKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown smell `{given}`; valid keys: {}", valid_keys().join(", "))]
pub struct UnknownSmell {
    pub given: String,
}

fn valid_keys() -> Vec<&'static str> {
    SmellKey::ALL.iter().map(|k| k.as_str()).collect()
}

impl FromStr for SmellKey {
    type Err = UnknownSmell;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        SmellKey::ALL
            .into_iter()
            .find(|k| k.as_str().eq_ignore_ascii_case(t))
            .ok_or_else(|| UnknownSmell { given: s.to_string() })
    }
}

/// Ordered `info < warning < error`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Info,
    Warning,
    Error,
}

impl Severity {
    pub fn as_str(self) -> &'static str {
        match self {
            Severity::Info => "info",
            Severity::Warning => "warning",
            Severity::Error => "error",
        }
    }
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Confidence {
    Low,
    Medium,
    High,
}

impl Confidence {
    pub fn as_str(self) -> &'static str {
        match self {
            Confidence::Low => "low",
            Confidence::Medium => "medium",
            Confidence::High => "high",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmellDescriptor {
    pub key: SmellKey,
    pub name: &'static str,
    pub group: Group,
    pub group_name: &'static str,
    pub description: &'static str,
    pub rationale: &'static str,
    pub mitigation: &'static str,
    /// Anchor of the smell's entry in the rendered catalogue page.
    pub anchor: &'static str,
    pub default_severity: Severity,
    pub default_confidence: Confidence,
}

macro_rules! smell {
    ($key:ident, $anchor:literal, $name:literal, $group:ident, $sev:ident, $conf:ident,
     $description:literal, $rationale:literal, $mitigation:literal) => {
        SmellDescriptor {
            key: SmellKey::$key,
            name: $name,
            group: Group::$group,
            group_name: Group::$group.name(),
            description: $description,
            rationale: $rationale,
            mitigation: $mitigation,
            anchor: $anchor,
            default_severity: Severity::$sev,
            default_confidence: Confidence::$conf,
        }
    };
}

// Indexed by `SmellKey as usize`.
static CATALOGUE: [SmellDescriptor; 14] = [
    smell!(RedCorr, "#red-corr", "Correlated features", Red, Warning, Medium,
        "Two numeric columns move together almost linearly. One of them carries little information the other does not already provide.",
        "Redundant features make the dataset larger and slower to work with at every later stage without improving what a model can learn.",
        "Run feature selection and consider dropping one column of the pair if model quality does not suffer."),
    smell!(RedDup, "#red-dup", "Duplicate examples", Red, Warning, High,
        "Two or more rows are identical once unique identifier columns are ignored. Such rows describe the same entity more than once.",
        "Repeated examples inflate the dataset and let a model fit the same example several times, which encourages overfitting.",
        "Remove the duplicate rows before training so the model does not fit the same example twice. Event logs and other time series can legitimately repeat rows, so confirm the data is not one."),
    smell!(RedUid, "#red-uid", "Unique identifiers", Red, Warning, High,
        "A column holds a different value in every row, like a database primary key. It identifies rows rather than describing them.",
        "A model can latch onto accidental relations between identifiers and the target that never generalise, and identifiers hide duplicate rows.",
        "Exclude the identifier from the training features; keep it for joins and for analysis such as spotting repeated hosts or owners."),
    smell!(CatBin, "#cat-bin", "Binning categorical features", Cat, Info, Medium,
        "A categorical column has many distinct values, several of which occur only rarely.",
        "One-hot encoding a high-cardinality column creates a very wide feature space that costs memory, disk and compute throughout the pipeline.",
        "Bin rare values into broader groups, for example countries into continents, or use an existing coarser column."),
    smell!(CatHierarchy, "#cat-hierarchy", "Hierarchy from label encoding", Cat, Warning, Medium,
        "A sensitive categorical column has no natural order among its values. Label encoding would assign them ordered integers anyway.",
        "The implied order can make a model treat one group as greater than another, producing biased results.",
        "Use one-hot encoding for this column instead of label encoding."),
    smell!(MiscBalance, "#misc-balance", "Imbalanced examples", Misc, Info, Medium,
        "A low-cardinality column, often the prediction target, has one class that is far rarer than a uniform split would give.",
        "Classifiers trained on skewed classes tend to ignore the rare class while still scoring high accuracy.",
        "Evaluate with precision and recall rather than accuracy, collect more examples, or resample so classes are balanced."),
    smell!(MiscSensitive, "#misc-sensitive", "Presence of sensitive features", Misc, Warning, Medium,
        "The column name suggests a protected attribute such as sex, race or age.",
        "Historical data often encodes unfair patterns along protected attributes, and a model trained on them reproduces those patterns.",
        "Leave the column out of training or apply fairness-aware regularisation; it can still be used to audit the model."),
    smell!(MiscUnit, "#misc-unit", "Unknown unit of measure", Misc, Info, Low,
        "A numeric column measures a physical or monetary quantity but neither its name nor the data states the unit.",
        "Values recorded in mixed or unknown units break scaling, outlier detection and any feature derived from them.",
        "Document the unit in the column header or in the data documentation."),
    smell!(MissBin, "#miss-bin", "Binary missing values", Miss, Warning, Medium,
        "A mostly empty column whose present values are all a single positive response such as `Y` or `true`.",
        "The blanks probably mean the negative response; dropping or imputing them destroys that information.",
        "Fill the missing cells with the negative response instead of dropping rows or imputing."),
    smell!(MissNull, "#miss-null", "Missing values", Miss, Warning, High,
        "A large share of the column's cells are empty or null.",
        "Statistics silently skip missing cells and dropping rows can remove whole groups, so conclusions and models become biased.",
        "Impute the missing values, from simple mean or median filling up to model-based imputation, or document why they are absent."),
    smell!(MissSpVal, "#miss-sp-val", "Special missing values", Miss, Error, Medium,
        "Missing values are written as a placeholder such as `?`, `unknown` or an implausible number like -9999 instead of a real null.",
        "Tools do not recognise the placeholder as missing. Numeric placeholders are worse because computations keep running on them.",
        "Convert the placeholder to a proper null when loading the data, and document the convention if it must stay."),
    smell!(StrHuman, "#str-human", "Strings in human-friendly formats", Str, Warning, Medium,
        "A text column holds numbers with unit words attached, and the units differ between rows, for example minutes and seasons.",
        "A uniform numeric representation requires converting between the units, which can need domain knowledge.",
        "Convert every value to one unit and store the number; investigate how to convert units that have no fixed ratio."),
    smell!(StrNum, "#str-num", "Numerical feature as string", Str, Warning, Medium,
        "A text column whose values are numeric information in disguise: versions, numbers with units or formatted numbers.",
        "The numeric content is invisible to analysis tools and models while stored as text.",
        "Extract the numeric part into its own feature, for instance split a version into major, minor and patch."),
    smell!(StrSanitise, "#str-sanitise", "Strings with special characters", Str, Warning, High,
        "Text values carry leading or trailing whitespace, or differ only by letter case.",
        "Tools treat the variants as distinct values, so categories split and matching placeholders becomes harder.",
        "Trim whitespace and normalise case when loading text columns."),
];

/// All descriptors, grouped as in the catalogue and ordered by key.
pub fn list_smells() -> &'static [SmellDescriptor] {
    &CATALOGUE
}

pub fn describe(key: &str) -> Result<&'static SmellDescriptor, UnknownSmell> {
    key.parse::<SmellKey>().map(SmellKey::descriptor)
}

/// The catalogue as a Markdown page; `docs/SMELLS.md` is generated from it.
pub fn render_markdown() -> String {
    let mut out = String::from("# Data smell catalogue\n\n| Key | Name | Group |\n|---|---|---|\n");
    for d in list_smells() {
        out.push_str(&format!("| [`{}`]({}) | {} | {} |\n", d.key, d.anchor, d.name, d.group.key()));
    }
    for group in Group::ALL {
        out.push_str(&format!("\n## {} ({})\n", group.name(), group.key()));
        for d in list_smells().iter().filter(|d| d.group == group) {
            out.push_str(&format!(
                "\n### {}\n\n**{}** (default severity: {}, confidence: {})\n\n{}\n\n*Why it matters:* {}\n\n*Suggested fix:* {}\n",
                d.key,
                d.name,
                d.default_severity,
                d.default_confidence.as_str(),
                d.description,
                d.rationale,
                d.mitigation
            ));
        }
    }
    out
}
