use std::io::Write;

use serde::{Serialize, Serializer};

use crate::error::Result;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
        }
    }
}

/// A measured error: exact checks report a zero/nonzero marker instead of a
/// float.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Measured {
    ExactZero,
    /// Count of offending terms or cases on the exact track.
    ExactNonzero(usize),
    Float(f64),
    None,
}

impl Measured {
    pub fn render(&self) -> String {
        match self {
            Measured::ExactZero => "exact-zero".into(),
            Measured::ExactNonzero(n) => format!("exact-nonzero:{n}"),
            Measured::Float(v) => format!("{v:e}"),
            Measured::None => String::new(),
        }
    }
}

impl Serialize for Measured {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Measured::Float(v) => s.serialize_f64(*v),
            Measured::None => s.serialize_none(),
            other => s.serialize_str(&other.render()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tolerance {
    Exact,
    /// `measured <= bound`.
    AtMost(f64),
    /// `measured >= bound`.
    AtLeast(f64),
    /// Ratio check `bound / factor <= measured <= bound * factor`.
    WithinFactor { target: f64, factor: f64 },
}

impl Tolerance {
    pub fn render(&self) -> String {
        match self {
            Tolerance::Exact => "exact".into(),
            Tolerance::AtMost(v) => format!("{v:e}"),
            Tolerance::AtLeast(v) => format!(">={v:e}"),
            Tolerance::WithinFactor { target, factor } => format!("{target:e}x{factor}"),
        }
    }
}

impl Serialize for Tolerance {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Tolerance::AtMost(v) => s.serialize_f64(*v),
            other => s.serialize_str(&other.render()),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: Status,
    pub measured_error: Measured,
    pub tolerance: Tolerance,
    pub runtime_ms: f64,
    pub provenance: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// One row of a resolution sweep.
#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceRow {
    pub check: String,
    pub resolution: usize,
    pub error: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub algebra: String,
    pub m: usize,
    pub config: serde_json::Value,
    pub records: Vec<CheckRecord>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub convergence: Vec<ConvergenceRow>,
    pub all_passed: bool,
}

impl Report {
    pub fn failures(&self) -> usize {
        self.records.iter().filter(|r| r.status == Status::Fail).count()
    }

    pub fn write_json(&self, out: &mut dyn Write) -> Result<()> {
        serde_json::to_writer_pretty(&mut *out, self)?;
        writeln!(out)?;
        Ok(())
    }

    /// One row per check: `name,status,measured_error,tolerance,runtime_ms`.
    pub fn write_csv(&self, out: &mut dyn Write) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["name", "status", "measured_error", "tolerance", "runtime_ms"])
            .map_err(csv_error)?;
        for r in &self.records {
            w.write_record([
                r.name.as_str(),
                r.status.as_str(),
                &r.measured_error.render(),
                &r.tolerance.render(),
                &format!("{:.3}", r.runtime_ms),
            ])
            .map_err(csv_error)?;
        }
        w.flush()?;
        Ok(())
    }
}

fn csv_error(e: csv::Error) -> crate::error::Error {
    crate::error::Error::Io(std::io::Error::other(e))
}
