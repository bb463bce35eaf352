//! Uniform record emission for the command line tool.
//!
//! Every subcommand produces a stream of flat records. The emitter renders
//! them as aligned key=value text, as line-delimited JSON, or as CSV with a
//! header derived from the first record. Numbers that fit in u64 stay typed
//! in JSON; anything bigger travels as a decimal string so no consumer ever
//! sees a rounded value.

use std::io::Write;

use crate::error::{Error, Result};

/// One field value. Big integers and rationals are preformatted to decimal
/// strings by the caller; this layer only distinguishes what JSON can type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldValue {
    Int(u64),
    Str(String),
    Bool(bool),
}

impl FieldValue {
    fn as_text(&self) -> String {
        match self {
            FieldValue::Int(v) => v.to_string(),
            FieldValue::Str(s) => s.clone(),
            FieldValue::Bool(b) => b.to_string(),
        }
    }
}

/// An ordered list of named fields. Order is part of the output contract:
/// text and CSV columns appear exactly as pushed.
#[derive(Debug, Clone, Default)]
pub struct Record {
    fields: Vec<(&'static str, FieldValue)>,
}

impl Record {
    pub fn new() -> Self {
        Record { fields: Vec::new() }
    }

    pub fn int(mut self, key: &'static str, value: u64) -> Self {
        self.fields.push((key, FieldValue::Int(value)));
        self
    }

    pub fn str(mut self, key: &'static str, value: impl Into<String>) -> Self {
        self.fields.push((key, FieldValue::Str(value.into())));
        self
    }

    pub fn bool(mut self, key: &'static str, value: bool) -> Self {
        self.fields.push((key, FieldValue::Bool(value)));
        self
    }

    pub fn keys(&self) -> Vec<&'static str> {
        self.fields.iter().map(|(k, _)| *k).collect()
    }
}

/// Output syntax for record streams.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Jsonl,
    Csv,
}

/// Streams records to a writer in one of the three formats. CSV emits a
/// header from the first record and insists every later record has the
/// same column list, so concatenated outputs stay machine-readable.
pub struct Emitter<W: Write> {
    out: W,
    format: Format,
    csv_keys: Option<Vec<&'static str>>,
}

impl<W: Write> Emitter<W> {
    pub fn new(out: W, format: Format) -> Self {
        Emitter {
            out,
            format,
            csv_keys: None,
        }
    }

    pub fn emit(&mut self, record: &Record) -> Result<()> {
        match self.format {
            Format::Text => self.emit_text(record),
            Format::Jsonl => self.emit_jsonl(record),
            Format::Csv => self.emit_csv(record),
        }
    }

    fn io_err(e: std::io::Error) -> Error {
        Error::InvalidArgument(format!("write failed: {e}"))
    }

    fn emit_text(&mut self, record: &Record) -> Result<()> {
        let line = record
            .fields
            .iter()
            .map(|(k, v)| format!("{k}={}", v.as_text()))
            .collect::<Vec<_>>()
            .join(" ");
        writeln!(self.out, "{line}").map_err(Self::io_err)
    }

    fn emit_jsonl(&mut self, record: &Record) -> Result<()> {
        let mut map = serde_json::Map::new();
        for (k, v) in &record.fields {
            let val = match v {
                FieldValue::Int(n) => serde_json::Value::from(*n),
                FieldValue::Str(s) => serde_json::Value::from(s.clone()),
                FieldValue::Bool(b) => serde_json::Value::from(*b),
            };
            map.insert((*k).to_string(), val);
        }
        let line = serde_json::Value::Object(map).to_string();
        writeln!(self.out, "{line}").map_err(Self::io_err)
    }

    fn emit_csv(&mut self, record: &Record) -> Result<()> {
        let keys = record.keys();
        match &self.csv_keys {
            None => {
                let header = csv_line(keys.iter().map(|k| k.to_string()).collect())?;
                self.out.write_all(&header).map_err(Self::io_err)?;
                self.csv_keys = Some(keys.clone());
            }
            Some(expected) if *expected != keys => {
                return Err(Error::InvalidArgument(format!(
                    "csv records must share one schema; saw {expected:?} then {keys:?}"
                )));
            }
            Some(_) => {}
        }
        let row = csv_line(record.fields.iter().map(|(_, v)| v.as_text()).collect())?;
        self.out.write_all(&row).map_err(Self::io_err)
    }

    pub fn into_inner(self) -> W {
        self.out
    }
}

/// One CSV record rendered to bytes, quoting handled by the csv crate.
fn csv_line(values: Vec<String>) -> Result<Vec<u8>> {
    let err = |e: String| Error::InvalidArgument(format!("csv encoding: {e}"));
    let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
    w.write_record(&values).map_err(|e| err(e.to_string()))?;
    w.flush().map_err(|e| err(e.to_string()))?;
    w.into_inner().map_err(|e| err(e.to_string()))
}
