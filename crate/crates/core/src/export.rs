//! CSV and JSON writers. Every float is printed with 17 significant digits
//! so files round-trip exactly, and every file starts with a header block.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::membrane::MembraneEigenvalue;

pub const TOOL_NAME: &str = "sloshing";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Provenance recorded at the top of every output file.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutputHeader {
    pub tool: String,
    pub version: String,
    /// sha256 of the canonical JSON encoding of the run configuration.
    pub config_hash: String,
    pub tolerances: BTreeMap<String, f64>,
}

impl OutputHeader {
    pub fn new<C: Serialize>(config: &C, tolerances: &[(&str, f64)]) -> Result<Self> {
        Ok(OutputHeader {
            tool: TOOL_NAME.into(),
            version: TOOL_VERSION.into(),
            config_hash: config_hash(config)?,
            tolerances: tolerances.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
        })
    }
}

pub fn config_hash<C: Serialize>(config: &C) -> Result<String> {
    let canonical = serde_json::to_value(config).map_err(|e| Error::Config(e.to_string()))?;
    let text = serde_json::to_string(&canonical).map_err(|e| Error::Config(e.to_string()))?;
    Ok(hex::encode(Sha256::digest(text.as_bytes())))
}

/// `{:.16e}`, i.e. 17 significant digits. Non-finite values print as
/// `nan`, `inf`, `-inf`.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:.16e}")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

fn csv_text(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Num(x) => format_float(*x),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => csv_text(s),
        }
    }
}

fn header_lines(header: &OutputHeader) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# tool: {} {}", header.tool, header.version);
    let _ = writeln!(out, "# config_sha256: {}", header.config_hash);
    for (k, v) in &header.tolerances {
        let _ = writeln!(out, "# tolerance {k}: {}", format_float(*v));
    }
    out
}

/// Header block as `#` comment lines, then the column row, then data rows.
pub fn csv_string(header: &OutputHeader, columns: &[&str], rows: &[Vec<Cell>]) -> Result<String> {
    let mut out = header_lines(header);
    out.push_str(&columns.join(","));
    out.push('\n');
    for (i, row) in rows.iter().enumerate() {
        if row.len() != columns.len() {
            return Err(Error::InvalidParameter(format!(
                "row {i} has {} cells, expected {}",
                row.len(),
                columns.len()
            )));
        }
        let cells: Vec<String> = row.iter().map(Cell::render).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    Ok(out)
}

fn write_json_value(out: &mut String, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent + 1);
    let close = "  ".repeat(indent);
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if n.is_f64() {
                match n.as_f64() {
                    Some(x) if x.is_finite() => out.push_str(&format_float(x)),
                    _ => out.push_str("null"),
                }
            } else {
                out.push_str(&n.to_string());
            }
        }
        Value::String(s) => out.push_str(&Value::String(s.clone()).to_string()),
        Value::Array(items) => {
            if items.is_empty() {
                out.push_str("[]");
                return;
            }
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                out.push_str(&pad);
                write_json_value(out, item, indent + 1);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&close);
            out.push(']');
        }
        Value::Object(map) => {
            if map.is_empty() {
                out.push_str("{}");
                return;
            }
            out.push_str("{\n");
            for (i, (k, item)) in map.iter().enumerate() {
                out.push_str(&pad);
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_json_value(out, item, indent + 1);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&close);
            out.push('}');
        }
    }
}

/// Pretty JSON with floats at 17 significant digits.
pub fn to_json_17<T: Serialize>(value: &T) -> Result<String> {
    let v = serde_json::to_value(value).map_err(|e| Error::NumericalFault(e.to_string()))?;
    let mut out = String::new();
    write_json_value(&mut out, &v, 0);
    out.push('\n');
    Ok(out)
}

#[derive(Serialize)]
struct Document<'a, T: Serialize> {
    header: &'a OutputHeader,
    result: &'a T,
}

/// `{"header": …, "result": …}`
pub fn json_string<T: Serialize>(header: &OutputHeader, result: &T) -> Result<String> {
    to_json_17(&Document { header, result })
}

/// Membrane spectrum as CSV: `k_squared, multiplicity, mode_ids`, the ids
/// separated by `;`.
pub fn membrane_csv(header: &OutputHeader, levels: &[MembraneEigenvalue]) -> Result<String> {
    let rows: Vec<Vec<Cell>> = levels
        .iter()
        .map(|l| {
            let ids: Vec<String> = l.mode_ids.iter().map(|id| id.to_string()).collect();
            vec![l.k_squared.into(), l.multiplicity.into(), ids.join(";").into()]
        })
        .collect();
    csv_string(header, &["k_squared", "multiplicity", "mode_ids"], &rows)
}

/// Vertical profile samples `(y, value)` as CSV.
pub fn profile_csv(header: &OutputHeader, samples: &[(f64, f64)]) -> Result<String> {
    let rows: Vec<Vec<Cell>> = samples.iter().map(|&(y, v)| vec![y.into(), v.into()]).collect();
    csv_string(header, &["y", "value"], &rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn header() -> OutputHeader {
        OutputHeader::new(&serde_json::json!({"a": 1}), &[("scan", 1e-12)]).unwrap()
    }

    #[test]
    fn floats_round_trip() {
        for x in [0.1, 1.0 / 3.0, std::f64::consts::PI * 1e-300, 2.0f64.powi(60), -7.25e-5] {
            let s = format_float(x);
            assert_eq!(s.parse::<f64>().unwrap(), x);
            let mantissa = s.split('e').next().unwrap().replace(['-', '.'], "");
            assert_eq!(mantissa.len(), 17);
        }
    }

    #[test]
    fn csv_has_header_block() {
        let s = csv_string(&header(), &["x", "label"], &[vec![0.5.into(), "a,b".into()]]).unwrap();
        let lines: Vec<&str> = s.lines().collect();
        assert!(lines[0].starts_with("# tool: sloshing"));
        assert!(lines[1].starts_with("# config_sha256: "));
        assert_eq!(lines[1].len(), "# config_sha256: ".len() + 64);
        assert_eq!(lines[2], "# tolerance scan: 9.9999999999999998e-13");
        assert_eq!(lines[3], "x,label");
        assert_eq!(lines[4], "5.0000000000000000e-1,\"a,b\"");
    }

    #[test]
    fn ragged_rows_rejected() {
        assert!(csv_string(&header(), &["x", "y"], &[vec![1.0.into()]]).is_err());
    }

    #[test]
    fn json_is_valid_and_exact() {
        let v = serde_json::json!({"x": 0.1, "n": 3, "bad": f64::NAN, "list": [1.5, "s"]});
        let s = to_json_17(&v).unwrap();
        let back: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(back["x"].as_f64().unwrap(), 0.1);
        assert_eq!(back["n"].as_i64().unwrap(), 3);
        assert!(back["bad"].is_null());
        assert!(s.contains("1.0000000000000001e-1"));
    }

    #[test]
    fn hash_depends_on_config_only() {
        let a = config_hash(&serde_json::json!({"rho": 2.0})).unwrap();
        let b = config_hash(&serde_json::json!({"rho": 2.0})).unwrap();
        let c = config_hash(&serde_json::json!({"rho": 2.5})).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}
