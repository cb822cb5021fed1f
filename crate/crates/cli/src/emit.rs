use serde_json::{json, Value};
use stairflow::hyperdisk::Slope;
use stairflow::FieldElement;

use crate::{CliError, Format};

/// A command result: a JSON document, an optional CSV table and a verdict.
#[derive(Debug, Clone)]
pub struct Report {
    pub json: Value,
    pub table: Option<Table>,
    pub ok: bool,
}

#[derive(Debug, Clone)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Report {
    pub fn new(json: Value) -> Self {
        Report { json, table: None, ok: true }
    }

    pub fn with_table(mut self, header: Vec<&'static str>, rows: Vec<Vec<String>>) -> Self {
        self.table = Some(Table { header, rows });
        self
    }

    pub fn verdict(mut self, ok: bool) -> Self {
        self.ok = ok;
        self
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("json values serialise");
                s.push('\n');
                Ok(s)
            }
            Format::Csv => {
                let t = self.table.as_ref().ok_or_else(|| CliError::Usage("this subcommand has no CSV form".into()))?;
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&t.header).map_err(csv_err)?;
                for r in &t.rows {
                    w.write_record(r).map_err(csv_err)?;
                }
                let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
                Ok(String::from_utf8(bytes).expect("csv of utf-8 fields"))
            }
        }
    }
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Io(std::io::Error::other(e))
}

pub fn element(e: &FieldElement, digits: u32) -> Value {
    json!({ "exact": e.to_text(), "decimal": e.embed(digits) })
}

pub fn slope(s: &Slope, digits: u32) -> Value {
    json!({ "exact": s.to_text(), "decimal": s.embed(digits) })
}

pub fn texts(v: &[FieldElement]) -> Value {
    Value::Array(v.iter().map(|e| Value::String(e.to_text())).collect())
}

/// `f64` as a JSON number, or a string for non-finite values.
pub fn float(v: f64) -> Value {
    serde_json::Number::from_f64(v).map(Value::Number).unwrap_or_else(|| Value::String(v.to_string()))
}
