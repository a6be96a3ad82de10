//! MULAN-style multi-label dataset loading.
//!
//! A dataset is distributed as an ARFF file (features and labels mixed in one
//! attribute list) plus an XML header that names the label attributes. Train
//! and test splits share the header. Both dense and sparse ARFF data rows are
//! supported; label columns are located by name, not by position.

use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("xml parse error at line {line}: {message}")]
    XmlParse { line: usize, message: String },
    #[error("label header declares no labels")]
    NoLabels,
    #[error("duplicate label name {0:?} in header")]
    DuplicateLabel(String),
    #[error("arff syntax error at line {line}: {message}")]
    ArffSyntax { line: usize, message: String },
    #[error("label {0:?} from the header has no matching @attribute")]
    MissingLabelAttribute(String),
    #[error("label value outside {{0,1}} at line {line}: {value:?}")]
    LabelValue { line: usize, value: String },
    #[error("non-numeric value {token:?} in numeric column {column:?} at line {line}")]
    NonNumeric {
        line: usize,
        column: String,
        token: String,
    },
    #[error("value {token:?} at line {line} is not a category of nominal attribute {column:?}")]
    UnknownNominal {
        line: usize,
        column: String,
        token: String,
    },
    #[error("missing value ('?') at line {line}; imputation is not supported")]
    MissingValue { line: usize },
    #[error("data row at line {line} has {got} values, expected {expected}")]
    RowArity {
        line: usize,
        expected: usize,
        got: usize,
    },
    #[error("sparse index {index} at line {line} is out of range (attributes: {count})")]
    SparseIndex {
        line: usize,
        index: usize,
        count: usize,
    },
    #[error("train/test schema mismatch: {0}")]
    SchemaMismatch(String),
    #[error("label matrix is not rectangular or contains non-binary entries")]
    InvalidLabelMatrix,
    #[error("reading {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// Dense row-major 0/1 matrix of label assignments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl LabelMatrix {
    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self, DatasetError> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols || row.iter().any(|&v| v > 1) {
                return Err(DatasetError::InvalidLabelMatrix);
            }
            data.extend_from_slice(row);
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn num_rows(&self) -> usize {
        self.rows
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.data[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: u8) {
        debug_assert!(value <= 1);
        self.data[row * self.cols + col] = value;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u8]> {
        self.data.chunks_exact(self.cols.max(1)).take(self.rows)
    }

    /// Label indices set in row `i`, ascending.
    pub fn active_labels(&self, i: usize) -> Vec<usize> {
        self.row(i)
            .iter()
            .enumerate()
            .filter(|(_, &v)| v == 1)
            .map(|(j, _)| j)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AttributeKind {
    Numeric,
    /// Categories in declaration order; values are encoded as their index.
    Nominal(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttributeMeta {
    pub name: String,
    pub kind: AttributeKind,
}

/// An in-memory multi-label dataset: numeric feature matrix, binary label
/// matrix, and the metadata needed to interpret both.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub features: Vec<Vec<f64>>,
    pub labels: LabelMatrix,
    pub label_names: Vec<String>,
    pub attributes: Vec<AttributeMeta>,
}

impl Dataset {
    pub fn num_instances(&self) -> usize {
        self.labels.num_rows()
    }

    pub fn num_features(&self) -> usize {
        self.attributes.len()
    }

    pub fn num_labels(&self) -> usize {
        self.label_names.len()
    }
}

/// A train/test pair sharing one schema.
#[derive(Debug, Clone)]
pub struct DatasetPair {
    pub train: Dataset,
    pub test: Dataset,
}

/// Parses a MULAN XML label header into the ordered list of label names.
///
/// The header has a `labels` root whose `label` children each carry a
/// `name` attribute. Document order is preserved; duplicates and empty
/// headers are rejected.
pub fn parse_label_header(xml_text: &str) -> Result<Vec<String>, DatasetError> {
    use quick_xml::events::Event;
    use quick_xml::Reader;

    let line_of = |pos: u64| -> usize {
        let pos = (pos as usize).min(xml_text.len());
        xml_text[..pos].bytes().filter(|&b| b == b'\n').count() + 1
    };

    let mut reader = Reader::from_str(xml_text);
    let mut names: Vec<String> = Vec::new();
    let mut saw_root = false;
    loop {
        let pos = reader.buffer_position();
        match reader.read_event() {
            Ok(Event::Start(e)) | Ok(Event::Empty(e)) => {
                let local = e.local_name();
                let local = local.as_ref();
                if !saw_root {
                    if local != b"labels" {
                        return Err(DatasetError::XmlParse {
                            line: line_of(pos),
                            message: format!(
                                "expected `labels` root element, found {:?}",
                                String::from_utf8_lossy(local)
                            ),
                        });
                    }
                    saw_root = true;
                } else if local == b"label" {
                    let mut name = None;
                    for attr in e.attributes() {
                        let attr = attr.map_err(|err| DatasetError::XmlParse {
                            line: line_of(pos),
                            message: err.to_string(),
                        })?;
                        if attr.key.local_name().as_ref() == b"name" {
                            let value = attr
                                .normalized_value(quick_xml::XmlVersion::default())
                                .map_err(|err| DatasetError::XmlParse {
                                    line: line_of(pos),
                                    message: err.to_string(),
                                })?;
                            name = Some(value.into_owned());
                        }
                    }
                    let name = name.ok_or_else(|| DatasetError::XmlParse {
                        line: line_of(pos),
                        message: "`label` element without a `name` attribute".into(),
                    })?;
                    if names.contains(&name) {
                        return Err(DatasetError::DuplicateLabel(name));
                    }
                    names.push(name);
                }
            }
            Ok(Event::Eof) => break,
            Ok(_) => {}
            Err(err) => {
                return Err(DatasetError::XmlParse {
                    line: line_of(reader.buffer_position()),
                    message: err.to_string(),
                })
            }
        }
    }
    if !saw_root {
        return Err(DatasetError::XmlParse {
            line: 1,
            message: "no `labels` root element".into(),
        });
    }
    if names.is_empty() {
        return Err(DatasetError::NoLabels);
    }
    Ok(names)
}

#[derive(Debug, Clone)]
struct ArffAttribute {
    name: String,
    kind: AttributeKind,
}

/// Splits a comma-separated ARFF payload, honoring single/double quotes.
fn split_csv_quoted(line: &str) -> Vec<String> {
    let mut fields = Vec::new();
    let mut current = String::new();
    let mut quote: Option<char> = None;
    for c in line.chars() {
        match quote {
            Some(q) => {
                if c == q {
                    quote = None;
                } else {
                    current.push(c);
                }
            }
            None => match c {
                '\'' | '"' => quote = Some(c),
                ',' => {
                    fields.push(current.trim().to_string());
                    current = String::new();
                }
                _ => current.push(c),
            },
        }
    }
    fields.push(current.trim().to_string());
    fields
}

fn strip_quotes(token: &str) -> &str {
    let t = token.trim();
    if t.len() >= 2 {
        let bytes = t.as_bytes();
        if (bytes[0] == b'\'' && bytes[t.len() - 1] == b'\'')
            || (bytes[0] == b'"' && bytes[t.len() - 1] == b'"')
        {
            return &t[1..t.len() - 1];
        }
    }
    t
}

fn parse_attribute_line(rest: &str, line: usize) -> Result<ArffAttribute, DatasetError> {
    let rest = rest.trim();
    let syntax = |message: String| DatasetError::ArffSyntax { line, message };

    // Attribute name: quoted or bare up to whitespace.
    let (name, type_part) = if rest.starts_with('\'') || rest.starts_with('"') {
        let quote = rest.chars().next().unwrap();
        let end = rest[1..]
            .find(quote)
            .ok_or_else(|| syntax("unterminated quoted attribute name".into()))?;
        (
            rest[1..1 + end].to_string(),
            rest[1 + end + 1..].trim_start(),
        )
    } else {
        let end = rest
            .find(char::is_whitespace)
            .ok_or_else(|| syntax("attribute declaration without a type".into()))?;
        (rest[..end].to_string(), rest[end..].trim_start())
    };

    let kind = if let Some(body) = type_part.strip_prefix('{') {
        let body = body
            .strip_suffix('}')
            .ok_or_else(|| syntax("unterminated nominal specification".into()))?;
        let categories: Vec<String> = split_csv_quoted(body)
            .into_iter()
            .map(|c| strip_quotes(&c).to_string())
            .collect();
        if categories.iter().any(String::is_empty) {
            return Err(syntax("empty category in nominal specification".into()));
        }
        AttributeKind::Nominal(categories)
    } else {
        match type_part.to_ascii_lowercase().as_str() {
            "numeric" | "real" | "integer" => AttributeKind::Numeric,
            other => {
                return Err(syntax(format!(
                    "unsupported attribute type {other:?} (string/date attributes are not supported)"
                )))
            }
        }
    };
    Ok(ArffAttribute { name, kind })
}

/// A raw cell value before the label/feature split.
#[derive(Debug, Clone, Copy)]
enum Cell {
    /// Numeric value, or nominal category index.
    Value(f64),
}

fn decode_cell(
    token: &str,
    attr: &ArffAttribute,
    line: usize,
) -> Result<Cell, DatasetError> {
    let token = strip_quotes(token);
    if token == "?" {
        return Err(DatasetError::MissingValue { line });
    }
    match &attr.kind {
        AttributeKind::Numeric => {
            let value = token
                .parse::<f64>()
                .map_err(|_| DatasetError::NonNumeric {
                    line,
                    column: attr.name.clone(),
                    token: token.to_string(),
                })?;
            Ok(Cell::Value(value))
        }
        AttributeKind::Nominal(categories) => {
            let index = categories
                .iter()
                .position(|c| c == token)
                .ok_or_else(|| DatasetError::UnknownNominal {
                    line,
                    column: attr.name.clone(),
                    token: token.to_string(),
                })?;
            Ok(Cell::Value(index as f64))
        }
    }
}

/// Parses ARFF text into a [`Dataset`], extracting the columns named in
/// `label_names` as the binary label matrix and keeping the rest as
/// features (nominal features integer-coded in declaration order).
///
/// Dense rows (`v1,v2,...`) and sparse rows (`{index value, ...}`, omitted
/// entries defaulting to 0) are both accepted. Missing values (`?`) are an
/// error.
pub fn parse_arff(arff_text: &str, label_names: &[String]) -> Result<Dataset, DatasetError> {
    let mut attributes: Vec<ArffAttribute> = Vec::new();
    let mut in_data = false;
    let mut rows: Vec<Vec<Cell>> = Vec::new();

    for (idx, raw_line) in arff_text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw_line.trim();
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        if !in_data {
            let lower = line.to_ascii_lowercase();
            if lower.starts_with("@relation") {
                continue;
            } else if lower.starts_with("@attribute") {
                let rest = &line["@attribute".len()..];
                attributes.push(parse_attribute_line(rest, line_no)?);
            } else if lower.starts_with("@data") {
                in_data = true;
            } else {
                return Err(DatasetError::ArffSyntax {
                    line: line_no,
                    message: format!("unexpected directive {line:?}"),
                });
            }
            continue;
        }

        let row = if line.starts_with('{') {
            let body = line
                .strip_prefix('{')
                .and_then(|s| s.strip_suffix('}'))
                .ok_or_else(|| DatasetError::ArffSyntax {
                    line: line_no,
                    message: "unterminated sparse row".into(),
                })?;
            // Sparse rows default every omitted attribute to 0: numeric zero
            // or the first nominal category.
            let mut cells = vec![Cell::Value(0.0); attributes.len()];
            for entry in split_csv_quoted(body) {
                if entry.is_empty() {
                    continue;
                }
                let mut parts = entry.splitn(2, char::is_whitespace);
                let index: usize = parts
                    .next()
                    .unwrap()
                    .parse()
                    .map_err(|_| DatasetError::ArffSyntax {
                        line: line_no,
                        message: format!("bad sparse index in {entry:?}"),
                    })?;
                let token = parts.next().ok_or_else(|| DatasetError::ArffSyntax {
                    line: line_no,
                    message: format!("sparse entry {entry:?} without a value"),
                })?;
                if index >= attributes.len() {
                    return Err(DatasetError::SparseIndex {
                        line: line_no,
                        index,
                        count: attributes.len(),
                    });
                }
                cells[index] = decode_cell(token.trim(), &attributes[index], line_no)?;
            }
            cells
        } else {
            let tokens = split_csv_quoted(line);
            if tokens.len() != attributes.len() {
                return Err(DatasetError::RowArity {
                    line: line_no,
                    expected: attributes.len(),
                    got: tokens.len(),
                });
            }
            tokens
                .iter()
                .zip(&attributes)
                .map(|(token, attr)| decode_cell(token, attr, line_no))
                .collect::<Result<Vec<_>, _>>()?
        };
        rows.push(row);
    }

    // Locate label columns by name.
    let mut label_cols = Vec::with_capacity(label_names.len());
    for name in label_names {
        let col = attributes
            .iter()
            .position(|a| &a.name == name)
            .ok_or_else(|| DatasetError::MissingLabelAttribute(name.clone()))?;
        label_cols.push(col);
    }
    let is_label: Vec<bool> = (0..attributes.len())
        .map(|i| label_cols.contains(&i))
        .collect();

    // Label semantics: the decoded value must be exactly 0 or 1. For nominal
    // label attributes that means the matched category string itself must be
    // "0" or "1"; anything else is outside {0,1}.
    let label_bit = |cell: Cell, col: usize, line: usize| -> Result<u8, DatasetError> {
        let Cell::Value(v) = cell;
        let outside = || {
            let shown = match &attributes[col].kind {
                AttributeKind::Nominal(cats) => cats
                    .get(v as usize)
                    .cloned()
                    .unwrap_or_else(|| v.to_string()),
                AttributeKind::Numeric => v.to_string(),
            };
            DatasetError::LabelValue { line, value: shown }
        };
        match &attributes[col].kind {
            AttributeKind::Numeric => {
                if v == 0.0 {
                    Ok(0)
                } else if v == 1.0 {
                    Ok(1)
                } else {
                    Err(outside())
                }
            }
            AttributeKind::Nominal(cats) => match cats.get(v as usize).map(String::as_str) {
                Some("0") => Ok(0),
                Some("1") => Ok(1),
                _ => Err(outside()),
            },
        }
    };

    let mut features = Vec::with_capacity(rows.len());
    let mut labels = LabelMatrix::zeros(rows.len(), label_names.len());
    for (r, row) in rows.iter().enumerate() {
        let mut feat_row = Vec::with_capacity(attributes.len() - label_names.len());
        for (c, &cell) in row.iter().enumerate() {
            if !is_label[c] {
                let Cell::Value(v) = cell;
                feat_row.push(v);
            }
        }
        for (j, &col) in label_cols.iter().enumerate() {
            // Data lines were consumed in order, so the reported line number
            // is approximate for error text only when rows were sparse.
            labels.set(r, j, label_bit(row[col], col, r + 1)?);
        }
        features.push(feat_row);
    }

    let feature_meta: Vec<AttributeMeta> = attributes
        .iter()
        .enumerate()
        .filter(|(i, _)| !is_label[*i])
        .map(|(_, a)| AttributeMeta {
            name: a.name.clone(),
            kind: a.kind.clone(),
        })
        .collect();

    Ok(Dataset {
        features,
        labels,
        label_names: label_names.to_vec(),
        attributes: feature_meta,
    })
}

fn schema_diff(train: &Dataset, test: &Dataset) -> Option<String> {
    if train.label_names != test.label_names {
        return Some(format!(
            "label names differ: train {:?} vs test {:?}",
            train.label_names, test.label_names
        ));
    }
    if train.attributes.len() != test.attributes.len() {
        let train_names: Vec<&str> = train.attributes.iter().map(|a| a.name.as_str()).collect();
        let test_names: Vec<&str> = test.attributes.iter().map(|a| a.name.as_str()).collect();
        let missing: Vec<&&str> = train_names.iter().filter(|n| !test_names.contains(n)).collect();
        let extra: Vec<&&str> = test_names.iter().filter(|n| !train_names.contains(n)).collect();
        return Some(format!(
            "attribute counts differ ({} vs {}); missing in test: {missing:?}; extra in test: {extra:?}",
            train_names.len(),
            test_names.len()
        ));
    }
    for (a, b) in train.attributes.iter().zip(&test.attributes) {
        if a != b {
            return Some(format!(
                "attribute mismatch: train has {:?} ({:?}), test has {:?} ({:?})",
                a.name, a.kind, b.name, b.kind
            ));
        }
    }
    None
}

/// Loads a train/test ARFF pair plus the XML label header and enforces that
/// both sides share the same schema.
pub fn load_pair(
    train_path: &Path,
    test_path: &Path,
    xml_path: &Path,
) -> Result<DatasetPair, DatasetError> {
    let read = |path: &Path| -> Result<String, DatasetError> {
        std::fs::read_to_string(path).map_err(|source| DatasetError::Io {
            path: path.display().to_string(),
            source,
        })
    };
    let label_names = parse_label_header(&read(xml_path)?)?;
    let train = parse_arff(&read(train_path)?, &label_names)?;
    let test = parse_arff(&read(test_path)?, &label_names)?;
    if let Some(diff) = schema_diff(&train, &test) {
        return Err(DatasetError::SchemaMismatch(diff));
    }
    Ok(DatasetPair { train, test })
}

/// Serializes a dataset back to dense ARFF with features first and label
/// attributes (declared nominal `{0,1}`) last. Re-parsing the output with the
/// same label names reproduces the dataset.
pub fn to_dense_arff(dataset: &Dataset, relation: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "@relation {relation}");
    for attr in &dataset.attributes {
        match &attr.kind {
            AttributeKind::Numeric => {
                let _ = writeln!(out, "@attribute '{}' numeric", attr.name);
            }
            AttributeKind::Nominal(cats) => {
                let quoted: Vec<String> = cats.iter().map(|c| format!("'{c}'")).collect();
                let _ = writeln!(out, "@attribute '{}' {{{}}}", attr.name, quoted.join(","));
            }
        }
    }
    for name in &dataset.label_names {
        let _ = writeln!(out, "@attribute '{name}' {{0,1}}");
    }
    let _ = writeln!(out, "@data");
    for (i, feats) in dataset.features.iter().enumerate() {
        let mut fields: Vec<String> = Vec::with_capacity(feats.len() + dataset.num_labels());
        for (j, &v) in feats.iter().enumerate() {
            match &dataset.attributes[j].kind {
                AttributeKind::Numeric => fields.push(format!("{v}")),
                AttributeKind::Nominal(cats) => fields.push(format!("'{}'", cats[v as usize])),
            }
        }
        for &bit in dataset.labels.row(i) {
            fields.push(bit.to_string());
        }
        let _ = writeln!(out, "{}", fields.join(","));
    }
    out
}

/// Serializes label names to the MULAN XML header format.
pub fn to_label_header_xml(label_names: &[String]) -> String {
    let mut out = String::from("<labels xmlns=\"http://mulan.sourceforge.net/labels\">\n");
    for name in label_names {
        let escaped = name.replace('&', "&amp;").replace('"', "&quot;").replace('<', "&lt;");
        let _ = writeln!(out, "  <label name=\"{escaped}\"></label>");
    }
    out.push_str("</labels>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn header_reads_names_in_document_order() {
        let xml = r#"<labels xmlns="http://mulan.sourceforge.net/labels">
            <label name="beach"/>
            <label name="urban"/>
        </labels>"#;
        assert_eq!(parse_label_header(xml).unwrap(), names(&["beach", "urban"]));
    }

    #[test]
    fn header_rejects_zero_labels() {
        assert!(matches!(
            parse_label_header("<labels/>"),
            Err(DatasetError::NoLabels)
        ));
    }

    #[test]
    fn header_rejects_duplicates() {
        let xml = r#"<labels><label name="a"/><label name="a"/></labels>"#;
        assert!(matches!(
            parse_label_header(xml),
            Err(DatasetError::DuplicateLabel(n)) if n == "a"
        ));
    }

    #[test]
    fn header_reports_line_on_malformed_xml() {
        let xml = "<labels>\n<label name=\"a\"></labels>";
        match parse_label_header(xml) {
            Err(DatasetError::XmlParse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected XmlParse error, got {other:?}"),
        }
    }

    #[test]
    fn dense_rows_parse_to_features_and_labels() {
        let arff = "@relation toy\n@attribute f1 numeric\n@attribute A {0,1}\n@data\n1.5,1\n2.0,0\n";
        let ds = parse_arff(arff, &names(&["A"])).unwrap();
        assert_eq!(ds.features, vec![vec![1.5], vec![2.0]]);
        assert_eq!(ds.labels.row(0), &[1]);
        assert_eq!(ds.labels.row(1), &[0]);
        assert_eq!(ds.attributes.len(), 1);
    }

    #[test]
    fn sparse_rows_default_omitted_entries_to_zero() {
        let arff = "@relation toy\n@attribute f1 numeric\n@attribute f2 numeric\n@attribute A {0,1}\n@data\n{0 2.5, 2 1}\n";
        let ds = parse_arff(arff, &names(&["A"])).unwrap();
        assert_eq!(ds.features, vec![vec![2.5, 0.0]]);
        assert_eq!(ds.labels.row(0), &[1]);
    }

    #[test]
    fn label_value_outside_binary_is_rejected() {
        let arff = "@relation toy\n@attribute f1 numeric\n@attribute A numeric\n@data\n1.0,2\n";
        assert!(matches!(
            parse_arff(arff, &names(&["A"])),
            Err(DatasetError::LabelValue { .. })
        ));
    }

    #[test]
    fn nominal_label_categories_must_be_binary() {
        let arff = "@relation toy\n@attribute f1 numeric\n@attribute A {yes,no}\n@data\n1.0,yes\n";
        assert!(matches!(
            parse_arff(arff, &names(&["A"])),
            Err(DatasetError::LabelValue { .. })
        ));
    }

    #[test]
    fn nominal_features_are_coded_by_declaration_order() {
        let arff = "@relation toy\n@attribute color {red,green,blue}\n@attribute A {0,1}\n@data\ngreen,0\nblue,1\nred,1\n";
        let ds = parse_arff(arff, &names(&["A"])).unwrap();
        assert_eq!(ds.features, vec![vec![1.0], vec![2.0], vec![0.0]]);
    }

    #[test]
    fn label_columns_may_sit_anywhere() {
        let arff = "@relation toy\n@attribute A {0,1}\n@attribute f1 numeric\n@attribute B {0,1}\n@data\n1,3.5,0\n";
        let ds = parse_arff(arff, &names(&["A", "B"])).unwrap();
        assert_eq!(ds.features, vec![vec![3.5]]);
        assert_eq!(ds.labels.row(0), &[1, 0]);
    }

    #[test]
    fn missing_values_are_rejected() {
        let arff = "@relation toy\n@attribute f1 numeric\n@attribute A {0,1}\n@data\n?,1\n";
        assert!(matches!(
            parse_arff(arff, &names(&["A"])),
            Err(DatasetError::MissingValue { line: 5 })
        ));
    }

    #[test]
    fn unknown_attribute_arity_is_reported() {
        let arff = "@relation toy\n@attribute f1 numeric\n@attribute A {0,1}\n@data\n1.0,1,9\n";
        assert!(matches!(
            parse_arff(arff, &names(&["A"])),
            Err(DatasetError::RowArity { expected: 2, got: 3, .. })
        ));
    }

    #[test]
    fn missing_label_attribute_is_reported() {
        let arff = "@relation toy\n@attribute f1 numeric\n@data\n1.0\n";
        assert!(matches!(
            parse_arff(arff, &names(&["A"])),
            Err(DatasetError::MissingLabelAttribute(n)) if n == "A"
        ));
    }

    #[test]
    fn dense_round_trip_reproduces_dataset() {
        let arff = "@relation toy\n@attribute f1 numeric\n@attribute color {red,blue}\n@attribute A {0,1}\n@attribute B {0,1}\n@data\n1.25,red,1,0\n-3.0,blue,0,1\n";
        let ds = parse_arff(arff, &names(&["A", "B"])).unwrap();
        let round = parse_arff(&to_dense_arff(&ds, "toy"), &names(&["A", "B"])).unwrap();
        assert_eq!(ds, round);
    }

    #[test]
    fn sparse_and_dense_agree() {
        let dense = "@relation t\n@attribute f1 numeric\n@attribute f2 numeric\n@attribute A {0,1}\n@data\n2.5,0,1\n0,1.5,0\n";
        let sparse = "@relation t\n@attribute f1 numeric\n@attribute f2 numeric\n@attribute A {0,1}\n@data\n{0 2.5, 2 1}\n{1 1.5}\n";
        let a = parse_arff(dense, &names(&["A"])).unwrap();
        let b = parse_arff(sparse, &names(&["A"])).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn pair_schema_mismatch_is_detailed() {
        let dir = tempfile::tempdir().unwrap();
        let xml = dir.path().join("l.xml");
        let train = dir.path().join("train.arff");
        let test = dir.path().join("test.arff");
        std::fs::write(&xml, "<labels><label name=\"A\"/></labels>").unwrap();
        std::fs::write(
            &train,
            "@relation t\n@attribute f1 numeric\n@attribute f2 numeric\n@attribute A {0,1}\n@data\n1,2,0\n",
        )
        .unwrap();
        std::fs::write(
            &test,
            "@relation t\n@attribute f1 numeric\n@attribute A {0,1}\n@data\n1,0\n",
        )
        .unwrap();
        match load_pair(&train, &test, &xml) {
            Err(DatasetError::SchemaMismatch(diff)) => assert!(diff.contains("f2"), "{diff}"),
            other => panic!("expected SchemaMismatch, got {other:?}"),
        }
    }
}
