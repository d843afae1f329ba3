//! CSV ingestion and per-column type inference.
//!
//! Parsing keeps the untrimmed form of every present cell; a cell is missing
//! when its trimmed form is one of the configured null tokens. Type inference
//! is strict: a column resolves to the most specific type that every
//! non-missing cell matches.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exec::Execution;

pub const DEFAULT_NULL_TOKENS: &[&str] = &["", "NA", "N/A", "NaN", "nan", "null", "NULL", "nil", "None"];

const BOOLEAN_WORDS: &[&str] = &["true", "false", "t", "f", "yes", "no", "y", "n"];

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{source_name}: no data rows")]
    EmptyTable { source_name: String },
    #[error("{source_name}: malformed CSV, unterminated quoted field starting at byte offset {offset}")]
    MalformedCsv { source_name: String, offset: u64 },
    #[error("{source_name}: {source}")]
    Csv {
        source_name: String,
        #[source]
        source: csv::Error,
    },
    #[error("invalid parse options: {0}")]
    InvalidOptions(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseOptions {
    pub delimiter: u8,
    pub quote: u8,
    /// Compared against trimmed cell text; always contains the empty string.
    pub null_tokens: BTreeSet<String>,
    pub has_header: bool,
    /// Cap on the number of data rows read.
    pub max_rows: Option<usize>,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions {
            delimiter: b',',
            quote: b'"',
            null_tokens: DEFAULT_NULL_TOKENS.iter().map(|s| s.to_string()).collect(),
            has_header: true,
            max_rows: None,
        }
    }
}

impl ParseOptions {
    /// Replaces the null tokens. The empty string is always kept.
    pub fn with_null_tokens<I, S>(mut self, tokens: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.null_tokens = tokens.into_iter().map(|t| t.into().trim().to_string()).collect();
        self.null_tokens.insert(String::new());
        self
    }

    pub fn validate(&self) -> Result<(), IngestError> {
        if self.delimiter == self.quote {
            return Err(IngestError::InvalidOptions(format!(
                "delimiter and quote are both {:?}",
                self.delimiter as char
            )));
        }
        for (what, b) in [("delimiter", self.delimiter), ("quote", self.quote)] {
            if b == b'\n' || b == b'\r' || !b.is_ascii() {
                return Err(IngestError::InvalidOptions(format!(
                    "{what} must be a single ASCII character other than a line break"
                )));
            }
        }
        if !self.null_tokens.contains("") {
            return Err(IngestError::InvalidOptions(
                "null tokens must include the empty string".into(),
            ));
        }
        if self.max_rows == Some(0) {
            return Err(IngestError::InvalidOptions("max_rows must be positive".into()));
        }
        Ok(())
    }

    pub fn is_null(&self, cell: &str) -> bool {
        self.null_tokens.contains(cell.trim())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ParseWarning {
    /// Rows whose field count differed from the widest row; they were padded
    /// with missing cells.
    RaggedRows { count: usize, first_row: usize, width: usize },
    /// Cells holding invalid UTF-8, decoded with replacement characters.
    InvalidUtf8 { count: usize, first_row: usize },
}

impl fmt::Display for ParseWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseWarning::RaggedRows { count, first_row, width } => write!(
                f,
                "{count} row(s) did not have {width} fields and were padded with missing cells (first: data row {first_row})"
            ),
            ParseWarning::InvalidUtf8 { count, first_row } => write!(
                f,
                "{count} cell(s) contained invalid UTF-8 and were decoded lossily (first: data row {first_row})"
            ),
        }
    }
}

/// Parsed cells with null tokens normalized to `None`.
///
/// Storage is a flat row-major grid; every row has exactly `column_count`
/// cells and header names are unique.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawTable {
    source_name: String,
    headers: Vec<String>,
    cells: Vec<Option<Box<str>>>,
    row_count: usize,
    warnings: Vec<ParseWarning>,
}

impl RawTable {
    /// Builds a table from already-split records, applying null
    /// normalization, ragged-row padding and header disambiguation.
    ///
    /// With `headers = None`, names `col_0..col_{k-1}` are synthesized.
    pub fn from_records<S: AsRef<str>>(
        source_name: impl Into<String>,
        headers: Option<Vec<String>>,
        records: Vec<Vec<S>>,
        options: &ParseOptions,
    ) -> Result<RawTable, IngestError> {
        let source_name = source_name.into();
        if records.is_empty() {
            return Err(IngestError::EmptyTable { source_name });
        }
        let header_len = headers.as_ref().map_or(0, Vec::len);
        let width = records.iter().map(Vec::len).max().unwrap_or(0).max(header_len);

        let mut warnings = Vec::new();
        let mut ragged = 0usize;
        let mut first_ragged = 0usize;
        let mut cells = Vec::with_capacity(records.len() * width);
        for (i, record) in records.iter().enumerate() {
            if record.len() != width {
                if ragged == 0 {
                    first_ragged = i;
                }
                ragged += 1;
            }
            cells.extend(record.iter().map(|c| {
                let c = c.as_ref();
                (!options.is_null(c)).then(|| Box::<str>::from(c))
            }));
            cells.extend(std::iter::repeat_n(None, width - record.len()));
        }
        if ragged > 0 || (headers.is_some() && header_len != width) {
            warnings.push(ParseWarning::RaggedRows {
                count: ragged,
                first_row: first_ragged,
                width,
            });
        }

        let headers = disambiguate(headers.unwrap_or_default(), width);
        Ok(RawTable {
            source_name,
            headers,
            cells,
            row_count: records.len(),
            warnings,
        })
    }

    pub fn source_name(&self) -> &str {
        &self.source_name
    }

    pub fn headers(&self) -> &[String] {
        &self.headers
    }

    pub fn row_count(&self) -> usize {
        self.row_count
    }

    pub fn column_count(&self) -> usize {
        self.headers.len()
    }

    pub fn warnings(&self) -> &[ParseWarning] {
        &self.warnings
    }

    /// The untrimmed cell text, or `None` when missing.
    pub fn cell(&self, row: usize, col: usize) -> Option<&str> {
        self.cells[row * self.headers.len() + col].as_deref()
    }

    pub fn row(&self, row: usize) -> &[Option<Box<str>>] {
        let w = self.headers.len();
        &self.cells[row * w..(row + 1) * w]
    }

    pub fn column(&self, col: usize) -> impl ExactSizeIterator<Item = Option<&str>> + '_ {
        let w = self.headers.len();
        (0..self.row_count).map(move |r| self.cells[r * w + col].as_deref())
    }

    /// Returns a copy with the given column names. Used for rename-invariance
    /// checks; names are disambiguated like parsed headers.
    pub fn with_headers(&self, headers: Vec<String>) -> RawTable {
        let mut t = self.clone();
        t.headers = disambiguate(headers, self.headers.len());
        t
    }

    pub(crate) fn push_warning(&mut self, w: ParseWarning) {
        self.warnings.push(w);
    }
}

fn disambiguate(mut names: Vec<String>, width: usize) -> Vec<String> {
    for i in names.len()..width {
        names.push(format!("col_{i}"));
    }
    for (i, n) in names.iter_mut().enumerate() {
        let trimmed = n.trim();
        *n = if trimmed.is_empty() { format!("col_{i}") } else { trimmed.to_string() };
    }
    let mut seen: HashSet<String> = HashSet::with_capacity(names.len());
    let mut out = Vec::with_capacity(names.len());
    for name in names {
        if seen.insert(name.clone()) {
            out.push(name);
            continue;
        }
        let mut k = 1;
        loop {
            let candidate = format!("{name}.{k}");
            if seen.insert(candidate.clone()) {
                out.push(candidate);
                break;
            }
            k += 1;
        }
    }
    out
}

/// Reads a CSV file from disk. The file name becomes the table's source name.
pub fn read_csv_path(path: impl AsRef<Path>, options: &ParseOptions) -> Result<RawTable, IngestError> {
    let path = path.as_ref();
    let display = path.display().to_string();
    let file = std::fs::File::open(path).map_err(|source| IngestError::Io {
        path: display.clone(),
        source,
    })?;
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or(display);
    read_csv(file, name, options)
}

/// Parses RFC-4180 style CSV from a byte stream.
pub fn read_csv<R: Read>(
    mut source: R,
    source_name: impl Into<String>,
    options: &ParseOptions,
) -> Result<RawTable, IngestError> {
    options.validate()?;
    let source_name = source_name.into();
    let mut bytes = Vec::new();
    source.read_to_end(&mut bytes).map_err(|source| IngestError::Io {
        path: source_name.clone(),
        source,
    })?;
    let body = bytes.strip_prefix(b"\xEF\xBB\xBF").unwrap_or(&bytes);
    let bom = (bytes.len() - body.len()) as u64;

    if let Some(offset) = unterminated_quote(body, options.delimiter, options.quote) {
        return Err(IngestError::MalformedCsv {
            source_name,
            offset: offset + bom,
        });
    }

    let mut reader = csv::ReaderBuilder::new()
        .delimiter(options.delimiter)
        .quote(options.quote)
        .double_quote(true)
        .has_headers(false)
        .flexible(true)
        .from_reader(body);

    let mut headers = None;
    let mut records: Vec<Vec<String>> = Vec::new();
    let mut bad_utf8 = 0usize;
    let mut first_bad = 0usize;
    let mut record = csv::ByteRecord::new();
    loop {
        let more = reader.read_byte_record(&mut record).map_err(|source| IngestError::Csv {
            source_name: source_name.clone(),
            source,
        })?;
        if !more {
            break;
        }
        let fields: Vec<String> = record
            .iter()
            .map(|f| match std::str::from_utf8(f) {
                Ok(s) => s.to_string(),
                Err(_) => {
                    if bad_utf8 == 0 {
                        first_bad = records.len();
                    }
                    bad_utf8 += 1;
                    String::from_utf8_lossy(f).into_owned()
                }
            })
            .collect();
        if options.has_header && headers.is_none() {
            headers = Some(fields);
            continue;
        }
        records.push(fields);
        if options.max_rows.is_some_and(|m| records.len() >= m) {
            break;
        }
    }

    let mut table = RawTable::from_records(source_name, headers, records, options)?;
    if bad_utf8 > 0 {
        table.push_warning(ParseWarning::InvalidUtf8 {
            count: bad_utf8,
            first_row: first_bad,
        });
    }
    Ok(table)
}

/// Byte offset of a quoted field that is still open at end of input.
fn unterminated_quote(bytes: &[u8], delimiter: u8, quote: u8) -> Option<u64> {
    #[derive(Clone, Copy)]
    enum State {
        FieldStart,
        Unquoted,
        Quoted,
        QuoteInQuoted,
    }
    let mut state = State::FieldStart;
    let mut opened_at = 0usize;
    for (i, &b) in bytes.iter().enumerate() {
        let boundary = b == delimiter || b == b'\n' || b == b'\r';
        state = match state {
            State::FieldStart if b == quote => {
                opened_at = i;
                State::Quoted
            }
            State::FieldStart | State::Unquoted if boundary => State::FieldStart,
            State::FieldStart | State::Unquoted => State::Unquoted,
            State::Quoted if b == quote => State::QuoteInQuoted,
            State::Quoted => State::Quoted,
            State::QuoteInQuoted if b == quote => State::Quoted,
            State::QuoteInQuoted if boundary => State::FieldStart,
            State::QuoteInQuoted => State::Unquoted,
        };
    }
    matches!(state, State::Quoted).then_some(opened_at as u64)
}

/// Semantic type of a column. Ordered from most to least specific.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InferredType {
    Boolean,
    Integer,
    Float,
    String,
}

impl InferredType {
    pub fn is_numeric(self) -> bool {
        matches!(self, InferredType::Integer | InferredType::Float)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            InferredType::Boolean => "boolean",
            InferredType::Integer => "integer",
            InferredType::Float => "float",
            InferredType::String => "string",
        }
    }
}

/// How many non-missing cells of a column match each candidate type.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeCounts {
    pub non_missing: usize,
    pub boolean: usize,
    pub integer: usize,
    pub float: usize,
}

impl TypeCounts {
    pub fn resolve(&self) -> InferredType {
        let n = self.non_missing;
        if n == 0 {
            InferredType::String
        } else if self.boolean == n {
            InferredType::Boolean
        } else if self.integer == n {
            InferredType::Integer
        } else if self.float == n {
            InferredType::Float
        } else {
            InferredType::String
        }
    }
}

pub fn is_boolean(cell: &str) -> bool {
    let t = cell.trim();
    BOOLEAN_WORDS.iter().any(|w| t.eq_ignore_ascii_case(w))
}

/// Optional sign followed by one or more decimal digits.
pub fn is_integer(cell: &str) -> bool {
    let t = cell.trim();
    let digits = t.strip_prefix(['+', '-']).unwrap_or(t);
    !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
}

/// Decimal or scientific notation with a finite value. Words such as `inf`
/// or `nan` that `f64::from_str` accepts do not count.
pub fn is_float(cell: &str) -> bool {
    parse_number(cell).is_some()
}

/// Parses a cell as a finite number under the [`is_float`] grammar.
pub fn parse_number(cell: &str) -> Option<f64> {
    let t = cell.trim();
    if !has_float_shape(t.as_bytes()) {
        return None;
    }
    t.parse::<f64>().ok().filter(|v| v.is_finite())
}

fn has_float_shape(s: &[u8]) -> bool {
    let mut i = 0;
    if matches!(s.first(), Some(b'+' | b'-')) {
        i += 1;
    }
    let int_start = i;
    while i < s.len() && s[i].is_ascii_digit() {
        i += 1;
    }
    let int_digits = i - int_start;
    let mut frac_digits = 0;
    if i < s.len() && s[i] == b'.' {
        i += 1;
        let start = i;
        while i < s.len() && s[i].is_ascii_digit() {
            i += 1;
        }
        frac_digits = i - start;
    }
    if int_digits + frac_digits == 0 {
        return false;
    }
    if i < s.len() && (s[i] == b'e' || s[i] == b'E') {
        i += 1;
        if matches!(s.get(i), Some(b'+' | b'-')) {
            i += 1;
        }
        let start = i;
        while i < s.len() && s[i].is_ascii_digit() {
            i += 1;
        }
        if i == start {
            return false;
        }
    }
    i == s.len()
}

/// Resolves the most specific type matched by every non-missing cell.
pub fn infer_column_type<'a, I>(cells: I) -> (InferredType, TypeCounts)
where
    I: IntoIterator<Item = Option<&'a str>>,
{
    let mut counts = TypeCounts::default();
    for cell in cells.into_iter().flatten() {
        counts.non_missing += 1;
        if is_boolean(cell) {
            counts.boolean += 1;
        }
        if is_integer(cell) {
            counts.integer += 1;
            counts.float += 1;
        } else if is_float(cell) {
            counts.float += 1;
        }
    }
    (counts.resolve(), counts)
}

/// A raw table with a resolved type per column.
#[derive(Debug, Clone, PartialEq)]
pub struct TypedTable {
    raw: RawTable,
    column_types: Vec<InferredType>,
    parse_stats: Vec<TypeCounts>,
}

impl TypedTable {
    pub fn raw(&self) -> &RawTable {
        &self.raw
    }

    pub fn column_types(&self) -> &[InferredType] {
        &self.column_types
    }

    pub fn column_type(&self, col: usize) -> InferredType {
        self.column_types[col]
    }

    pub fn parse_stats(&self) -> &[TypeCounts] {
        &self.parse_stats
    }

    pub fn into_raw(self) -> RawTable {
        self.raw
    }
}

pub fn parse_table(raw: RawTable) -> TypedTable {
    parse_table_with(raw, Execution::default())
}

pub fn parse_table_with(raw: RawTable, exec: Execution) -> TypedTable {
    let inferred = exec.map_range(raw.column_count(), |c| infer_column_type(raw.column(c)));
    let (column_types, parse_stats) = inferred.into_iter().unzip();
    TypedTable {
        raw,
        column_types,
        parse_stats,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn read(s: &str) -> Result<RawTable, IngestError> {
        read_csv(s.as_bytes(), "t.csv", &ParseOptions::default())
    }

    #[test]
    fn minimal_table() {
        let t = read("a,b\n1,2\n").unwrap();
        assert_eq!(t.headers(), ["a", "b"]);
        assert_eq!(t.row_count(), 1);
        assert_eq!(t.cell(0, 0), Some("1"));
        assert_eq!(t.cell(0, 1), Some("2"));
    }

    #[test]
    fn empty_cell_is_missing() {
        let t = read("a,b\n1,\n").unwrap();
        assert_eq!(t.cell(0, 1), None);
    }

    #[test]
    fn quoted_delimiter_and_doubled_quote() {
        let t = read("a,b\n\"x,y\",3\n\"say \"\"hi\"\"\",4\n").unwrap();
        assert_eq!(t.cell(0, 0), Some("x,y"));
        assert_eq!(t.cell(1, 0), Some("say \"hi\""));
    }

    #[test]
    fn quoted_newline_stays_in_cell() {
        let t = read("a,b\n\"line1\nline2\",3\n").unwrap();
        assert_eq!(t.row_count(), 1);
        assert_eq!(t.cell(0, 0), Some("line1\nline2"));
    }

    #[test]
    fn untrimmed_value_is_retained() {
        let t = read("sex\n M\nF \n").unwrap();
        assert_eq!(t.cell(0, 0), Some(" M"));
        assert_eq!(t.cell(1, 0), Some("F "));
    }

    #[test]
    fn null_tokens_match_after_trim() {
        let t = read("a,b\n NA ,x\nnull,y\n").unwrap();
        assert_eq!(t.cell(0, 0), None);
        assert_eq!(t.cell(1, 0), None);
    }

    #[test]
    fn zero_data_rows() {
        assert!(matches!(read("a,b\n"), Err(IngestError::EmptyTable { .. })));
        assert!(matches!(read(""), Err(IngestError::EmptyTable { .. })));
    }

    #[test]
    fn unterminated_quote_names_offset() {
        match read("a,b\n1,\"oops\n2,3\n") {
            Err(IngestError::MalformedCsv { offset, .. }) => assert_eq!(offset, 6),
            other => panic!("expected malformed error, got {other:?}"),
        }
    }

    #[test]
    fn ragged_rows_are_padded_with_warning() {
        let t = read("a,b,c\n1,2\n1,2,3,4\n").unwrap();
        assert_eq!(t.column_count(), 4);
        assert_eq!(t.headers()[3], "col_3");
        assert_eq!(t.cell(0, 2), None);
        assert_eq!(t.cell(0, 3), None);
        assert_eq!(t.cell(1, 3), Some("4"));
        assert!(matches!(
            t.warnings()[0],
            ParseWarning::RaggedRows { count: 1, first_row: 0, width: 4 }
        ));
    }

    #[test]
    fn duplicate_headers_are_suffixed() {
        let t = read("x,x,x,x.1\n1,2,3,4\n").unwrap();
        assert_eq!(t.headers(), ["x", "x.1", "x.2", "x.1.1"]);
    }

    #[test]
    fn no_header_synthesizes_names() {
        let opts = ParseOptions {
            has_header: false,
            ..Default::default()
        };
        let t = read_csv("1,2\n3,4\n".as_bytes(), "t", &opts).unwrap();
        assert_eq!(t.headers(), ["col_0", "col_1"]);
        assert_eq!(t.row_count(), 2);
    }

    #[test]
    fn max_rows_caps_data_rows() {
        let opts = ParseOptions {
            max_rows: Some(2),
            ..Default::default()
        };
        let t = read_csv("a\n1\n2\n3\n\"unterminated".as_bytes(), "t", &opts);
        // The quote check covers the whole input, even past the cap.
        assert!(matches!(t, Err(IngestError::MalformedCsv { .. })));
        let t = read_csv("a\n1\n2\n3\n".as_bytes(), "t", &opts).unwrap();
        assert_eq!(t.row_count(), 2);
    }

    #[test]
    fn invalid_utf8_is_replaced_with_warning() {
        let t = read_csv(&b"a\n\xff\xfe\nok\n"[..], "t", &ParseOptions::default()).unwrap();
        assert_eq!(t.cell(0, 0), Some("\u{FFFD}\u{FFFD}"));
        assert!(matches!(t.warnings()[0], ParseWarning::InvalidUtf8 { count: 1, first_row: 0 }));
    }

    #[test]
    fn options_validation() {
        let bad = ParseOptions {
            quote: b',',
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        let custom = ParseOptions::default().with_null_tokens(["?"]);
        assert!(custom.null_tokens.contains(""));
        assert!(custom.is_null(" ? "));
        assert!(!custom.is_null("NA"));
    }

    fn infer(cells: &[&str]) -> InferredType {
        infer_column_type(cells.iter().map(|c| Some(*c))).0
    }

    #[test]
    fn inference_examples() {
        assert_eq!(infer(&["1", "2", "-3"]), InferredType::Integer);
        assert_eq!(infer(&["1.5", "2", "3e2"]), InferredType::Float);
        assert_eq!(infer(&["90 min", "104 min"]), InferredType::String);
        assert_eq!(infer(&["Y", "n", "TRUE"]), InferredType::Boolean);
        assert_eq!(infer(&["1", "0"]), InferredType::Integer);
        assert_eq!(infer(&["inf", "1"]), InferredType::String);
        assert_eq!(infer(&[".5", "5.", "-1E-3"]), InferredType::Float);
        assert_eq!(infer(&["1e", "2"]), InferredType::String);
        assert_eq!(infer(&[" 7 "]), InferredType::Integer);
    }

    #[test]
    fn all_missing_column_is_string() {
        let (ty, counts) = infer_column_type([None, None]);
        assert_eq!(ty, InferredType::String);
        assert_eq!(counts.non_missing, 0);
    }

    #[test]
    fn mixed_column_keeps_parse_counts() {
        let (ty, counts) = infer_column_type(["1", "2", "x"].map(Some));
        assert_eq!(ty, InferredType::String);
        assert_eq!(counts.integer, 2);
        assert_eq!(counts.float, 2);
        assert_eq!(counts.non_missing, 3);
    }

    #[test]
    fn parse_table_types_columns() {
        let t = parse_table(read("id,name,empty\n1,ann,\n2,bob,\n").unwrap());
        assert_eq!(
            t.column_types(),
            [InferredType::Integer, InferredType::String, InferredType::String]
        );
        assert_eq!(t.parse_stats()[2].non_missing, 0);
    }

    proptest! {
        #[test]
        fn non_conforming_cell_demotes_integer_column(values in prop::collection::vec(-1_000_000i64..1_000_000, 1..50)) {
            let cells: Vec<String> = values.iter().map(|v| v.to_string()).collect();
            let (ty, counts) = infer_column_type(cells.iter().map(|c| Some(c.as_str())));
            prop_assert_eq!(ty, InferredType::Integer);
            prop_assert_eq!(counts.float, counts.non_missing);
            let mut with_x = cells.clone();
            with_x.push("x".into());
            prop_assert_eq!(infer_column_type(with_x.iter().map(|c| Some(c.as_str()))).0, InferredType::String);
        }

        #[test]
        fn no_cell_equals_a_null_token(rows in prop::collection::vec(prop::collection::vec(
            prop::sample::select(vec!["", " NA", "x", "null ", "1", " ", "None", "y"]), 3), 1..20)) {
            let opts = ParseOptions::default();
            let t = RawTable::from_records("p", None, rows.clone(), &opts).unwrap();
            let mut expected_missing = 0;
            for r in &rows {
                expected_missing += r.iter().filter(|c| opts.null_tokens.contains(c.trim())).count();
            }
            let mut missing = 0;
            for r in 0..t.row_count() {
                for c in 0..t.column_count() {
                    match t.cell(r, c) {
                        Some(v) => prop_assert!(!opts.null_tokens.contains(v.trim())),
                        None => missing += 1,
                    }
                }
            }
            prop_assert_eq!(missing, expected_missing);
        }

        #[test]
        fn parsing_is_deterministic(rows in prop::collection::vec(prop::collection::vec("[a-c0-9 ,\"]{0,4}", 2), 1..10)) {
            let mut csv = String::from("p,q\n");
            for r in &rows {
                let quoted: Vec<String> = r.iter().map(|c| format!("\"{}\"", c.replace('"', "\"\""))).collect();
                csv.push_str(&quoted.join(","));
                csv.push('\n');
            }
            let a = parse_table(read(&csv).unwrap());
            let b = parse_table(read(&csv).unwrap());
            prop_assert_eq!(&a, &b);
            for (i, r) in rows.iter().enumerate() {
                for (j, c) in r.iter().enumerate() {
                    let expected = (!ParseOptions::default().is_null(c)).then_some(c.as_str());
                    prop_assert_eq!(a.raw().cell(i, j), expected);
                }
            }
        }
    }
}
