//! Deterministic JSON/CSV rendering and atomic file output.

use std::io::Write;
use std::path::Path;

use leafdbar::Complex64;
use serde::Serialize;
use serde_json::Value;

use crate::error::CliError;

pub const SIGNIFICANT_DIGITS: usize = 12;

/// Rounds to [`SIGNIFICANT_DIGITS`] significant digits; `-0` becomes `0`.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x).parse().expect("formatted float parses")
}

/// Fixed-width scientific text for CSV cells.
pub fn csv_float(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JsonComplex {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for JsonComplex {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

fn normalize(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round_sig(n.as_f64().expect("f64 number"));
            *v = serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number);
        }
        Value::Array(items) => items.iter_mut().for_each(normalize),
        Value::Object(map) => map.values_mut().for_each(normalize),
        _ => {}
    }
}

/// Pretty JSON with sorted keys and rounded floats; identical input gives
/// identical bytes.
pub fn render_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut v = serde_json::to_value(value).map_err(|e| CliError::Io(e.to_string()))?;
    normalize(&mut v);
    let mut s = serde_json::to_string_pretty(&v).map_err(|e| CliError::Io(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn render_csv(header: &[&str], rows: &[Vec<f64>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = row.iter().map(|&x| csv_float(x)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// Fails unless every target's directory exists, so a run never starts
/// work it cannot save.
pub fn check_targets(paths: &[&Path]) -> Result<(), CliError> {
    for p in paths {
        let dir = parent_dir(p);
        if !dir.is_dir() {
            return Err(CliError::Io(format!("output directory {} does not exist", dir.display())));
        }
    }
    Ok(())
}

fn parent_dir(path: &Path) -> &Path {
    match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    }
}

/// Writes through a temporary file in the target directory and renames it
/// into place.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    check_targets(&[path])?;
    let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(parent_dir(path)).map_err(io)?;
    tmp.write_all(contents.as_bytes()).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rounding_examples() {
        assert_eq!(round_sig(0.1 + 0.2), 0.3);
        assert_eq!(round_sig(-0.0).to_bits(), 0.0f64.to_bits());
        assert_eq!(round_sig(1.234567890123456e-7), 1.23456789012e-7);
        assert!(round_sig(f64::NAN).is_nan());
        assert_eq!(csv_float(-2.5), "-2.50000000000e0");
    }

    #[test]
    fn json_is_sorted_and_rounded() {
        #[derive(Serialize)]
        struct Rec {
            zeta: f64,
            alpha: Vec<f64>,
            c: JsonComplex,
            n: usize,
        }
        let rec = Rec {
            zeta: 1.0 / 3.0,
            alpha: vec![2.0 / 3.0, f64::NAN],
            c: Complex64::new(-0.0, 1e-20).into(),
            n: 3,
        };
        let s = render_json(&rec).unwrap();
        assert_eq!(s, render_json(&rec).unwrap());
        assert!(s.find("alpha").unwrap() < s.find("zeta").unwrap());
        assert!(s.contains("0.333333333333") && !s.contains("0.3333333333333"));
        assert!(s.contains("null") && s.contains("\"n\": 3"));
    }

    #[test]
    fn atomic_write_requires_directory() {
        let dir = tempfile::tempdir().unwrap();
        let ok = dir.path().join("a.csv");
        write_atomic(&ok, "x\n").unwrap();
        assert_eq!(std::fs::read_to_string(&ok).unwrap(), "x\n");
        let missing = dir.path().join("nope").join("b.csv");
        assert_eq!(write_atomic(&missing, "x\n").unwrap_err().exit_code(), 1);
        assert!(!missing.exists());
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }

    proptest! {
        #[test]
        fn rounding_is_idempotent_and_close(x in -1e300f64..1e300) {
            let r = round_sig(x);
            prop_assert_eq!(round_sig(r), r);
            prop_assert!((r - x).abs() <= 1e-11 * x.abs());
        }
    }
}
