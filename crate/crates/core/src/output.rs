//! Flat output records for the `polya` command, written as JSON Lines or
//! CSV. Every record starts with the `command` that produced it; big
//! integers and rationals are decimal strings so no precision is lost.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(Error::parse(format!(
                "format must be json or csv, got {s:?}"
            ))),
        }
    }
}

/// One `(n, B_n)` row of `count`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountRow {
    pub command: String,
    pub dim: u8,
    pub method: String,
    pub n: u32,
    pub value: String,
}

/// One `(n, P_n)` row of `simple`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimpleRow {
    pub command: String,
    pub dim: u8,
    pub n: u32,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReturnProbRow {
    pub command: String,
    pub dim: u8,
    pub terms: usize,
    pub mode: String,
    /// `p/q` in exact mode, shortest round-trip decimal in float mode.
    pub value: String,
    pub approx: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CodecRow {
    pub command: String,
    pub op: String,
    pub walk: String,
    pub pair: String,
    pub class: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticRow {
    pub command: String,
    pub dim: u8,
    pub n: u64,
    pub weighted_coefficient: f64,
    pub predicted: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulateRow {
    pub command: String,
    pub dim: u8,
    pub steps: u64,
    pub samples: u64,
    pub seed: u64,
    pub workers: usize,
    pub returned: u64,
    pub fraction: f64,
    pub stderr: f64,
    /// Exact return probability within `steps`, when within the exact
    /// threshold.
    pub exact: Option<String>,
    pub z_score: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyRow {
    pub command: String,
    pub check: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

/// Writes `rows` in the requested format. CSV gets a header line.
pub fn write_records<T: Serialize>(format: Format, rows: &[T], out: impl Write) -> Result<()> {
    let io_err = |e: &dyn std::fmt::Display| Error::Io(e.to_string());
    match format {
        Format::Json => {
            let mut out = out;
            for row in rows {
                serde_json::to_writer(&mut out, row).map_err(|e| io_err(&e))?;
                out.write_all(b"\n").map_err(|e| io_err(&e))?;
            }
            out.flush().map_err(|e| io_err(&e))
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for row in rows {
                w.serialize(row).map_err(|e| io_err(&e))?;
            }
            w.flush().map_err(|e| io_err(&e))
        }
    }
}
