//! Structured experiment output: a table of typed cells with named columns,
//! carrying the tool version, a schema version, and the echoed run
//! configuration. Serializes to tidy CSV (UTF-8, comma separators, header
//! row, LF line endings, locale-independent decimal points) and to a single
//! versioned JSON object.
//!
//! Rendering is fully deterministic: cell formatting uses Rust's
//! shortest-round-trip float representation, field order is fixed, and
//! timings are recorded only when explicitly requested, so a fixed
//! configuration yields byte-identical output across runs.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};

/// Version of the JSON layout; bumped on breaking changes.
pub const SCHEMA_VERSION: u32 = 1;

/// One typed value in a report row.
#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(i128),
    Uint(u128),
    Float(f64),
    Text(String),
    Bool(bool),
    /// Not-applicable; rendered as an empty CSV field and JSON null.
    Empty,
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v as i128)
    }
}

impl From<i128> for Cell {
    fn from(v: i128) -> Self {
        Cell::Int(v)
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Uint(v as u128)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Uint(v as u128)
    }
}

impl From<u128> for Cell {
    fn from(v: u128) -> Self {
        Cell::Uint(v)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_owned())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl Cell {
    /// CSV text of the cell. Floats use the shortest representation that
    /// round-trips, so numeric content survives a parse-back exactly.
    fn to_csv_field(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Uint(v) => v.to_string(),
            Cell::Float(v) => format_float(*v),
            Cell::Text(s) => escape_csv(s),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn to_json_value(&self) -> Value {
        match self {
            Cell::Int(v) => match i64::try_from(*v) {
                Ok(small) => json!(small),
                Err(_) => json!(v.to_string()),
            },
            Cell::Uint(v) => match u64::try_from(*v) {
                Ok(small) => json!(small),
                Err(_) => json!(v.to_string()),
            },
            Cell::Float(v) => serde_json::Number::from_f64(*v)
                .map(Value::Number)
                .unwrap_or(Value::Null),
            Cell::Text(s) => json!(s),
            Cell::Bool(b) => json!(b),
            Cell::Empty => Value::Null,
        }
    }
}

fn format_float(v: f64) -> String {
    if v.is_nan() {
        "NaN".to_owned()
    } else if v.is_infinite() {
        if v > 0.0 { "inf".to_owned() } else { "-inf".to_owned() }
    } else {
        format!("{v}")
    }
}

fn escape_csv(field: &str) -> String {
    if field.contains(',') || field.contains('"') || field.contains('\n') || field.contains('\r') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_owned()
    }
}

/// Requested serialization of a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// A completed experiment: named columns, rows of typed cells, the echoed
/// configuration, and optional per-row timings.
#[derive(Clone, Debug)]
pub struct ExperimentReport {
    pub tool_version: String,
    pub schema_version: u32,
    /// Echo of the run parameters (subcommand, grid, seed, budget).
    pub config: Value,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    /// Wall-clock milliseconds per row; recorded only on request because
    /// timings break byte-for-byte reproducibility.
    pub timings_ms: Option<Vec<f64>>,
}

impl ExperimentReport {
    pub fn new(config: Value, columns: &[&str]) -> Self {
        ExperimentReport {
            tool_version: env!("CARGO_PKG_VERSION").to_owned(),
            schema_version: SCHEMA_VERSION,
            config,
            columns: columns.iter().map(|c| (*c).to_owned()).collect(),
            rows: Vec::new(),
            timings_ms: None,
        }
    }

    /// Appends a row; its arity must match the column list.
    pub fn push_row(&mut self, row: Vec<Cell>) {
        assert_eq!(
            row.len(),
            self.columns.len(),
            "report row arity must match its columns"
        );
        self.rows.push(row);
    }

    /// Records one wall-clock duration per pushed row.
    pub fn record_timing(&mut self, millis: f64) {
        self.timings_ms.get_or_insert_with(Vec::new).push(millis);
    }

    /// Tidy CSV: header line then one line per row, LF endings throughout.
    pub fn to_csv(&self) -> Result<String> {
        if self.rows.is_empty() {
            return Err(Error::param("cannot emit CSV for a report with no rows"));
        }
        let mut out = String::new();
        out.push_str(
            &self
                .columns
                .iter()
                .map(|c| escape_csv(c))
                .collect::<Vec<_>>()
                .join(","),
        );
        out.push('\n');
        for row in &self.rows {
            let line = row
                .iter()
                .map(Cell::to_csv_field)
                .collect::<Vec<_>>()
                .join(",");
            out.push_str(&line);
            out.push('\n');
        }
        Ok(out)
    }

    /// Single versioned JSON object with fixed key order.
    pub fn to_json(&self) -> Result<String> {
        let mut root = Map::new();
        root.insert("schema_version".into(), json!(self.schema_version));
        root.insert("tool_version".into(), json!(self.tool_version));
        root.insert("config".into(), self.config.clone());
        root.insert("columns".into(), json!(self.columns));
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| Value::Array(row.iter().map(Cell::to_json_value).collect()))
            .collect();
        root.insert("rows".into(), Value::Array(rows));
        root.insert(
            "timings".into(),
            match &self.timings_ms {
                Some(t) => json!(t),
                None => Value::Null,
            },
        );
        let mut text = serde_json::to_string_pretty(&Value::Object(root))
            .map_err(|e| Error::Internal(format!("JSON serialization failed: {e}")))?;
        text.push('\n');
        Ok(text)
    }

    /// Serializes in the requested format.
    pub fn render(&self, format: OutputFormat) -> Result<String> {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ExperimentReport {
        let mut r = ExperimentReport::new(json!({"subcommand": "demo"}), &["n", "value", "ok"]);
        r.push_row(vec![8i64.into(), 9.900232.into(), true.into()]);
        r
    }

    #[test]
    fn single_row_gives_a_two_line_csv() {
        let csv = sample().to_csv().unwrap();
        let lines: Vec<&str> = csv.split('\n').collect();
        assert_eq!(lines, vec!["n,value,ok", "8,9.900232,true", ""]);
    }

    #[test]
    fn empty_reports_refuse_csv() {
        let r = ExperimentReport::new(json!({}), &["a"]);
        assert!(matches!(r.to_csv(), Err(Error::Parameter(_))));
    }

    #[test]
    fn csv_fields_with_separators_are_quoted() {
        let mut r = ExperimentReport::new(json!({}), &["text"]);
        r.push_row(vec!["a,b \"c\"".into()]);
        let csv = r.to_csv().unwrap();
        assert!(csv.contains("\"a,b \"\"c\"\"\""));
    }

    #[test]
    fn float_cells_round_trip_through_csv() {
        let values = [
            0.1,
            1.0 / 3.0,
            -2.5e-13,
            9.900232,
            f64::MIN_POSITIVE,
            123456789.123456,
        ];
        let mut r = ExperimentReport::new(json!({}), &["v"]);
        for v in values {
            r.push_row(vec![v.into()]);
        }
        let csv = r.to_csv().unwrap();
        for (line, v) in csv.lines().skip(1).zip(values) {
            let parsed: f64 = line.parse().unwrap();
            assert_eq!(parsed, v, "float must survive a parse-back exactly");
        }
    }

    #[test]
    fn json_carries_version_config_and_null_timings() {
        let text = sample().to_json().unwrap();
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["schema_version"], json!(SCHEMA_VERSION));
        assert_eq!(v["config"]["subcommand"], json!("demo"));
        assert_eq!(v["rows"][0][0], json!(8));
        assert_eq!(v["rows"][0][2], json!(true));
        assert!(v["timings"].is_null());
        assert!(text.ends_with('\n'));
    }

    #[test]
    fn oversized_integers_become_strings_in_json() {
        let mut r = ExperimentReport::new(json!({}), &["big"]);
        r.push_row(vec![Cell::Uint(u128::MAX)]);
        let v: Value = serde_json::from_str(&r.to_json().unwrap()).unwrap();
        assert_eq!(v["rows"][0][0], json!(u128::MAX.to_string()));
    }

    #[test]
    fn rendering_is_reproducible() {
        let a = sample().render(OutputFormat::Json).unwrap();
        let b = sample().render(OutputFormat::Json).unwrap();
        assert_eq!(a, b);
        let a = sample().render(OutputFormat::Csv).unwrap();
        let b = sample().render(OutputFormat::Csv).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn non_finite_floats_have_stable_text_forms() {
        let mut r = ExperimentReport::new(json!({}), &["v"]);
        r.push_row(vec![f64::NAN.into()]);
        r.push_row(vec![f64::INFINITY.into()]);
        r.push_row(vec![f64::NEG_INFINITY.into()]);
        let csv = r.to_csv().unwrap();
        assert_eq!(csv, "v\nNaN\ninf\n-inf\n");
        let v: Value = serde_json::from_str(&r.to_json().unwrap()).unwrap();
        assert!(v["rows"][0][0].is_null());
    }
}
