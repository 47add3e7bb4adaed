//! CSV/JSON artifact emission.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;
use tempfile::NamedTempFile;

use crate::error::CliError;

const SIGNIFICANT_DIGITS: usize = 9;

/// Formats `x` with nine significant digits, fixed-point for moderate
/// exponents and scientific otherwise. Trailing zeros are kept so columns
/// stay diffable.
pub fn format_float(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let exp: i32 = sci[sci.find('e').expect("exponent") + 1..].parse().expect("integer exponent");
    if (-5..15).contains(&exp) {
        let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - exp).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        sci
    }
}

pub fn format_opt(x: Option<f64>) -> String {
    x.map(format_float).unwrap_or_default()
}

/// One CSV table plus the JSON document that accompanies it.
#[derive(Debug, Clone)]
pub struct Artifact {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub json: Value,
}

impl Artifact {
    pub fn new(header: &[&str], json: Value) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
            json,
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    /// CSV text: `#` lines carrying the compact JSON envelope minus its
    /// result, then the header row and the data rows.
    pub fn csv_text(&self) -> Result<String, CliError> {
        let mut out = Vec::new();
        let mut meta = self.json.clone();
        if let Some(obj) = meta.as_object_mut() {
            obj.remove("result");
        }
        writeln!(out, "# {}", serde_json::to_string(&meta).map_err(json_err)?)?;
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
        w.write_record(&self.header).map_err(csv_err)?;
        for row in &self.rows {
            w.write_record(row).map_err(csv_err)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::validation(format!("csv error: {e}")))?;
        String::from_utf8(bytes).map_err(|e| CliError::validation(e.to_string()))
    }

    pub fn json_text(&self) -> Result<String, CliError> {
        let mut s = serde_json::to_string_pretty(&self.json).map_err(json_err)?;
        s.push('\n');
        Ok(s)
    }

    /// Writes `<prefix>.csv` and `<prefix>.json`. Both are rendered and
    /// staged in temporary files before either is renamed into place.
    pub fn write(&self, prefix: &Path) -> Result<(PathBuf, PathBuf), CliError> {
        let csv_path = with_suffix(prefix, "csv");
        let json_path = with_suffix(prefix, "json");
        let csv_tmp = stage(&csv_path, &self.csv_text()?)?;
        let json_tmp = stage(&json_path, &self.json_text()?)?;
        persist(csv_tmp, &csv_path)?;
        persist(json_tmp, &json_path)?;
        Ok((csv_path, json_path))
    }
}

pub fn to_value<T: Serialize>(value: &T) -> Result<Value, CliError> {
    serde_json::to_value(value).map_err(json_err)
}

fn with_suffix(prefix: &Path, ext: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

fn stage(target: &Path, text: &str) -> Result<NamedTempFile, CliError> {
    let dir = match target.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let mut tmp = NamedTempFile::new_in(&dir)
        .map_err(|e| CliError::validation(format!("output directory {} not writable: {e}", dir.display())))?;
    tmp.write_all(text.as_bytes())?;
    tmp.as_file().sync_all()?;
    Ok(tmp)
}

fn persist(tmp: NamedTempFile, target: &Path) -> Result<(), CliError> {
    tmp.persist(target)
        .map_err(|e| CliError::validation(format!("cannot write {}: {}", target.display(), e.error)))?;
    Ok(())
}

fn json_err(e: serde_json::Error) -> CliError {
    CliError::validation(format!("json error: {e}"))
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::validation(format!("csv error: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn nine_significant_digits() {
        assert_eq!(format_float(0.0), "0");
        assert_eq!(format_float(1.0), "1.00000000");
        assert_eq!(format_float(-9.3852912345), "-9.38529123");
        assert_eq!(format_float(200.0), "200.000000");
        assert_eq!(format_float(9.9999999999), "10.0000000");
        assert_eq!(format_float(1.5e-7), "1.50000000e-7");
        assert_eq!(format_float(0.000123456789123), "0.000123456789");
        assert_eq!(format_float(6.02e23), "6.02000000e23");
    }

    #[test]
    fn formatted_values_round_trip_to_nine_digits() {
        for &x in &[std::f64::consts::PI, -1.0 / 3.0, 12345.6789012, 7.77e-9, 4.4e18] {
            let back: f64 = format_float(x).parse().unwrap();
            assert!(((back - x) / x).abs() < 1e-8, "{x} -> {back}");
        }
    }

    #[test]
    fn csv_layout() {
        let mut a = Artifact::new(&["a", "b"], json!({"command": "t", "result": [1, 2]}));
        a.push(vec!["1".into(), "x,y".into()]);
        let text = a.csv_text().unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], r#"# {"command":"t"}"#);
        assert_eq!(lines[1], "a,b");
        assert_eq!(lines[2], "1,\"x,y\"");
        assert!(!text.contains('\r'));
    }

    #[test]
    fn write_creates_both_files() {
        let dir = tempfile::tempdir().unwrap();
        let prefix = dir.path().join("run");
        let a = Artifact::new(&["x"], json!({"result": 1}));
        let (c, j) = a.write(&prefix).unwrap();
        assert!(c.ends_with("run.csv") && j.ends_with("run.json"));
        assert!(c.exists() && j.exists());
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 2);
    }

    #[test]
    fn missing_directory_writes_nothing() {
        let dir = tempfile::tempdir().unwrap();
        let prefix = dir.path().join("absent").join("run");
        let err = Artifact::new(&["x"], json!({})).write(&prefix).unwrap_err();
        assert_eq!(err.code(), 1);
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
    }
}
