//! Stable machine-readable emission.
//!
//! CSV carries full-precision floats (17 significant digits) so downstream
//! re-checks never lose bits; JSON mirrors the identical values. Every file
//! opens with its record kind and schema_version. Writers take `io::Write`
//! so region scans can stream row-by-row.

use std::io::{self, Write};

/// 17 significant digits: enough for exact f64 round-trips.
pub fn fmt_f64(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else if v.is_nan() {
        "nan".to_string()
    } else if v > 0.0 {
        "inf".to_string()
    } else {
        "-inf".to_string()
    }
}

pub struct CsvWriter<W: Write> {
    sink: W,
}

impl<W: Write> CsvWriter<W> {
    /// Open a CSV stream with the `# trimap <kind> schema_version=N` preamble.
    pub fn new(mut sink: W, kind: &str, schema_version: u32) -> io::Result<Self> {
        writeln!(sink, "# trimap {kind} schema_version={schema_version}")?;
        Ok(CsvWriter { sink })
    }

    pub fn header(&mut self, columns: &[&str]) -> io::Result<()> {
        writeln!(self.sink, "{}", columns.join(","))
    }

    pub fn row(&mut self, fields: &[String]) -> io::Result<()> {
        writeln!(self.sink, "{}", fields.join(","))
    }

    /// Structured trailer line: `# key=value ...` pairs survive naive CSV
    /// readers and are parsed back by the round-trip tooling.
    pub fn trailer(&mut self, pairs: &[(&str, String)]) -> io::Result<()> {
        let body: Vec<String> = pairs.iter().map(|(k, v)| format!("{k}={v}")).collect();
        writeln!(self.sink, "# {}", body.join(" "))
    }

    pub fn finish(mut self) -> io::Result<()> {
        self.sink.flush()
    }
}

/// Write a serde-serializable report as a single JSON document with the
/// schema fields injected at the top level.
pub fn write_json<W: Write, T: serde::Serialize>(
    mut sink: W,
    kind: &str,
    schema_version: u32,
    payload: &T,
) -> io::Result<()> {
    let mut value = serde_json::to_value(payload).map_err(io::Error::other)?;
    if let serde_json::Value::Object(map) = &mut value {
        map.insert("kind".into(), serde_json::Value::String(kind.into()));
        map.insert("schema_version".into(), serde_json::Value::from(schema_version));
    }
    let text = serde_json::to_string_pretty(&value).map_err(io::Error::other)?;
    sink.write_all(text.as_bytes())?;
    sink.write_all(b"\n")?;
    sink.flush()
}
