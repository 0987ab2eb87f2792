//! Tabular output: CSV with a header row, or a JSON array of flat objects
//! with the same field names. Numbers use six significant digits.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde_json::{Map, Value};

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Bool(bool),
    Na,
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        if x.is_finite() {
            Cell::Num(x)
        } else {
            Cell::Na
        }
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Na, Cell::from)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<bool> for Cell {
    fn from(x: bool) -> Self {
        Cell::Bool(x)
    }
}

impl From<&str> for Cell {
    fn from(x: &str) -> Self {
        Cell::Text(x.to_string())
    }
}

impl From<String> for Cell {
    fn from(x: String) -> Self {
        Cell::Text(x)
    }
}

/// C-style `%g` with six significant digits.
pub fn fmt_g(x: f64) -> String {
    const P: i32 = 6;
    if x == 0.0 {
        return "0".to_string();
    }
    let sci = format!("{:.*e}", (P - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..P).contains(&exp) {
        let decimals = (P - 1 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        let m = trim_zeros(mantissa.to_string());
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    let t = s.trim_end_matches('0').trim_end_matches('.');
    if t == "-0" {
        "0".to_string()
    } else {
        t.to_string()
    }
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Num(x) => fmt_g(*x),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Na => "NA".to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            // round-trip through the CSV text so both formats carry the same digits
            Cell::Num(x) => {
                fmt_g(*x).parse::<f64>().ok().and_then(serde_json::Number::from_f64).map_or(Value::Null, Value::Number)
            }
            Cell::Int(i) => Value::from(*i),
            Cell::Text(s) => Value::from(s.as_str()),
            Cell::Bool(b) => Value::from(*b),
            Cell::Na => Value::Null,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

/// Rows sharing one set of column names.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RowSet {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl RowSet {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        RowSet { columns: columns.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    /// Builds a row set from `(column, value)` pairs; every row must list
    /// the same columns in the same order.
    pub fn from_records(records: Vec<Vec<(&str, Cell)>>) -> Self {
        let columns = records.first().map(|r| r.iter().map(|(k, _)| k.to_string()).collect()).unwrap_or_default();
        let rows = records.into_iter().map(|r| r.into_iter().map(|(_, v)| v).collect()).collect();
        RowSet { columns, rows }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// 1-based column index, as used by plotting tools.
    pub fn column_number(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name).map(|k| k + 1)
    }

    pub fn render(&self, format: Format) -> io::Result<String> {
        match format {
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.columns)?;
                for row in &self.rows {
                    w.write_record(row.iter().map(Cell::text))?;
                }
                let bytes = w.into_inner().map_err(|e| io::Error::other(e.to_string()))?;
                String::from_utf8(bytes).map_err(|e| io::Error::other(e.to_string()))
            }
            Format::Json => {
                let array: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|row| {
                        let obj: Map<String, Value> =
                            self.columns.iter().cloned().zip(row.iter().map(Cell::json)).collect();
                        Value::Object(obj)
                    })
                    .collect();
                let mut s = serde_json::to_string_pretty(&Value::Array(array))?;
                s.push('\n');
                Ok(s)
            }
        }
    }
}

/// Files to write once every computation has finished.
#[derive(Debug, Default)]
pub struct PendingWrites {
    files: Vec<(PathBuf, String)>,
}

impl PendingWrites {
    pub fn add(&mut self, path: impl Into<PathBuf>, contents: String) {
        self.files.push((path.into(), contents));
    }

    pub fn is_empty(&self) -> bool {
        self.files.is_empty()
    }

    pub fn paths(&self) -> impl Iterator<Item = &Path> {
        self.files.iter().map(|(p, _)| p.as_path())
    }

    /// Writes each file through a temporary sibling and a rename.
    pub fn commit(self) -> io::Result<()> {
        for (path, contents) in self.files {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir)?;
            }
            let mut tmp = path.clone().into_os_string();
            tmp.push(".tmp");
            fs::write(&tmp, contents)?;
            fs::rename(&tmp, &path)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g_formatting() {
        assert_eq!(fmt_g(0.0), "0");
        assert_eq!(fmt_g(1.0), "1");
        assert_eq!(fmt_g(0.5), "0.5");
        assert_eq!(fmt_g(1.0 / 3.0), "0.333333");
        assert_eq!(fmt_g(2.0 / 3.0), "0.666667");
        assert_eq!(fmt_g(123456.7), "123457");
        assert_eq!(fmt_g(1234567.0), "1.23457e+06");
        assert_eq!(fmt_g(0.0001234567), "0.000123457");
        assert_eq!(fmt_g(0.00001234567), "1.23457e-05");
        assert_eq!(fmt_g(-0.75), "-0.75");
        assert_eq!(fmt_g(-1e-20), "-1e-20");
        assert_eq!(fmt_g(999999.5), "1e+06");
    }

    #[test]
    fn csv_and_json_share_fields() {
        let mut rs = RowSet::new(["a", "b", "c"]);
        rs.push(vec![Cell::from(0.1234567), Cell::Na, Cell::from("x")]);
        assert_eq!(rs.render(Format::Csv).unwrap(), "a,b,c\n0.123457,NA,x\n");
        let v: Value = serde_json::from_str(&rs.render(Format::Json).unwrap()).unwrap();
        assert_eq!(v[0]["a"], 0.123457);
        assert!(v[0]["b"].is_null());
        let keys: Vec<&String> = v[0].as_object().unwrap().keys().collect();
        assert_eq!(keys, ["a", "b", "c"]);
    }
}
