//! File output: CSV and NDJSON tables plus the histogram snapshot stream.
//!
//! Every file starts with a header carrying the artifact version and the
//! canonical config digest. Floats in CSV are written with 17 significant
//! digits so values round-trip exactly; NDJSON uses the shortest exact
//! representation. On an integrator failure the partial file is closed with
//! an explicit failure marker instead of being silently truncated.

use crate::config::{OutputFormat, RunConfig};
use crate::error::{Error, Result};
use crate::histogram::HistogramSnapshot;
use serde_json::json;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// 17 significant digits: enough to reproduce any f64 bit pattern.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// A table of float columns written as CSV or NDJSON rows.
pub struct TableWriter {
    out: BufWriter<File>,
    format: OutputFormat,
    columns: Vec<String>,
    path: PathBuf,
}

impl TableWriter {
    /// `extra_header` lands in the file header verbatim; period scans use it
    /// to record the non-relativistic reference period.
    pub fn create(
        path: &Path,
        config: &RunConfig,
        columns: Vec<String>,
        extra_header: Option<String>,
    ) -> Result<TableWriter> {
        let file = File::create(path)?;
        let mut out = BufWriter::new(file);
        let extra = extra_header.map_or(String::new(), |e| format!(" | {e}"));
        match config.format {
            OutputFormat::Csv => {
                writeln!(
                    out,
                    "# relosc {VERSION} | config: {}{extra}",
                    config.header_digest()
                )?;
                writeln!(out, "{}", columns.join(","))?;
            }
            OutputFormat::Ndjson => {
                let header = json!({
                    "relosc_version": VERSION,
                    "config": config.header_digest(),
                    "extra": extra.trim_start_matches(" | "),
                });
                writeln!(out, "{header}")?;
            }
        }
        Ok(TableWriter {
            out,
            format: config.format,
            columns,
            path: path.to_path_buf(),
        })
    }

    pub fn write_row(&mut self, values: &[f64]) -> Result<()> {
        debug_assert_eq!(values.len(), self.columns.len());
        match self.format {
            OutputFormat::Csv => {
                let row = values
                    .iter()
                    .map(|v| format_float(*v))
                    .collect::<Vec<_>>()
                    .join(",");
                writeln!(self.out, "{row}")?;
            }
            OutputFormat::Ndjson => {
                let mut map = serde_json::Map::new();
                for (name, value) in self.columns.iter().zip(values) {
                    map.insert(name.clone(), json!(value));
                }
                writeln!(self.out, "{}", serde_json::Value::Object(map))?;
            }
        }
        Ok(())
    }

    /// Mark the file as incomplete after a numerical failure.
    pub fn write_failure(&mut self, err: &Error) -> Result<()> {
        match self.format {
            OutputFormat::Csv => writeln!(self.out, "# FAILED: {err}")?,
            OutputFormat::Ndjson => writeln!(self.out, "{}", json!({ "error": err.to_string() }))?,
        }
        self.out.flush()?;
        Ok(())
    }

    pub fn finish(mut self) -> Result<PathBuf> {
        self.out.flush()?;
        Ok(self.path)
    }

    pub fn path(&self) -> &Path {
        &self.path
    }
}

/// NDJSON stream of histogram snapshots (always NDJSON regardless of the
/// table format; the record layout is part of the file contract).
pub struct HistogramWriter {
    out: BufWriter<File>,
    path: PathBuf,
}

impl HistogramWriter {
    pub fn create(path: &Path, config: &RunConfig) -> Result<HistogramWriter> {
        let file = File::create(path)?;
        let mut out = BufWriter::new(file);
        let header = json!({
            "relosc_version": VERSION,
            "config": config.header_digest(),
        });
        writeln!(out, "{header}")?;
        Ok(HistogramWriter {
            out,
            path: path.to_path_buf(),
        })
    }

    pub fn write_snapshot(&mut self, snapshot: &HistogramSnapshot) -> Result<()> {
        writeln!(self.out, "{}", serde_json::to_string(snapshot)?)?;
        Ok(())
    }

    pub fn write_failure(&mut self, err: &Error) -> Result<()> {
        writeln!(self.out, "{}", json!({ "error": err.to_string() }))?;
        self.out.flush()?;
        Ok(())
    }

    pub fn finish(mut self) -> Result<PathBuf> {
        self.out.flush()?;
        Ok(self.path)
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.into())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{parse_config, ConfigOverrides, RunConfig};
    use crate::histogram::{HistogramKind, HistogramSnapshot};

    fn test_config(format: &str) -> RunConfig {
        let text = format!("format = {format}\n");
        RunConfig::resolve(Some(parse_config(&text).unwrap()), ConfigOverrides::default()).unwrap()
    }

    #[test]
    fn float_formatting_roundtrips() {
        for &v in &[0.0, 0.1, -2.0 / 3.0, 1e-300, 87.0, std::f64::consts::PI] {
            let s = format_float(v);
            assert_eq!(s.parse::<f64>().unwrap(), v, "string was {s}");
        }
    }

    #[test]
    fn csv_layout() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.csv");
        let config = test_config("csv");
        let mut w = TableWriter::create(
            &path,
            &config,
            vec!["t".into(), "x".into()],
            None,
        )
        .unwrap();
        w.write_row(&[0.0, 1.5]).unwrap();
        w.finish().unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert!(lines[0].starts_with("# relosc"));
        assert!(lines[0].contains("config:"));
        assert_eq!(lines[1], "t,x");
        assert!(lines[2].starts_with("0.0000000000000000e0,1.5000000000000000e0"));
    }

    #[test]
    fn ndjson_layout() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.ndjson");
        let config = test_config("ndjson");
        let mut w =
            TableWriter::create(&path, &config, vec!["t".into(), "x".into()], None).unwrap();
        w.write_row(&[0.5, -1.0]).unwrap();
        w.write_failure(&Error::EmptyEnsemble).unwrap();
        w.finish().unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        let header: serde_json::Value = serde_json::from_str(lines[0]).unwrap();
        assert_eq!(header["relosc_version"], VERSION);
        let row: serde_json::Value = serde_json::from_str(lines[1]).unwrap();
        assert_eq!(row["t"], 0.5);
        let marker: serde_json::Value = serde_json::from_str(lines[2]).unwrap();
        assert!(marker["error"].is_string());
    }

    #[test]
    fn histogram_stream_schema() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("h.ndjson");
        let config = test_config("csv");
        let mut w = HistogramWriter::create(&path, &config).unwrap();
        w.write_snapshot(&HistogramSnapshot {
            t: 1.0,
            kind: HistogramKind::Velocity,
            edges: vec![-1.0, 0.0, 1.0],
            counts: vec![3, 4],
            underflow: 0,
            overflow: 0,
        })
        .unwrap();
        w.finish().unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let record: serde_json::Value = serde_json::from_str(text.lines().nth(1).unwrap()).unwrap();
        assert_eq!(record["kind"], "v");
        assert_eq!(record["counts"], json!([3, 4]));
        assert_eq!(record["edges"], json!([-1.0, 0.0, 1.0]));
        assert_eq!(record["underflow"], 0);
    }
}
