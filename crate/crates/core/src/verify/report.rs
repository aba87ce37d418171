use std::fmt;
use std::fs;
use std::io;
use std::path::Path;
use std::str::FromStr;

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;
use thiserror::Error;

use super::IdentityKind;

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("unsupported report format {0:?} (expected json or csv)")]
    UnsupportedFormat(String),
    #[error("cannot write report: {0}")]
    Io(#[from] io::Error),
    #[error("cannot encode report: {0}")]
    Encode(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

impl FromStr for ReportFormat {
    type Err = ReportError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            _ => Err(ReportError::UnsupportedFormat(s.into())),
        }
    }
}

fn params_as_map<S: Serializer>(params: &[(String, String)], ser: S) -> Result<S::Ok, S::Error> {
    let mut map = ser.serialize_map(Some(params.len()))?;
    for (k, v) in params {
        map.serialize_entry(k, v)?;
    }
    map.end()
}

/// Outcome at one grid point.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct PointResult {
    /// Parameter names and values, in grid order.
    #[serde(serialize_with = "params_as_map")]
    pub params: Vec<(String, String)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threshold: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equal: Option<bool>,
    /// Separately evaluated pieces, for identities composed numerically.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub components: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub refused: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub pass: bool,
    /// Distinct ζ values evaluated.
    pub evals: usize,
    pub elapsed_ms: f64,
}

impl PointResult {
    pub fn params_text(&self) -> String {
        self.params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(";")
    }

    fn residual_text(&self) -> String {
        if let Some(reason) = &self.refused {
            return format!("refused: {reason}");
        }
        if let Some(e) = &self.error {
            return format!("error: {e}");
        }
        match (self.residual, self.equal) {
            (Some(r), _) => format!("{r:e}"),
            (None, Some(true)) => "equal".into(),
            (None, Some(false)) => "unequal".into(),
            (None, None) => String::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub identity: String,
    pub kind: IdentityKind,
    pub grid: String,
    /// Base tolerance of each ζ evaluation; zero for exact identities.
    pub tol: f64,
    pub pass: bool,
    pub max_residual: f64,
    pub evals: usize,
    pub elapsed_ms: f64,
    pub points: Vec<PointResult>,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &PointResult> {
        self.points.iter().filter(|p| !p.pass)
    }

    pub fn to_json(&self) -> Result<String, ReportError> {
        serde_json::to_string_pretty(self).map_err(|e| ReportError::Encode(e.to_string()))
    }

    pub fn to_csv(&self) -> Result<String, ReportError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let enc = |e: csv::Error| ReportError::Encode(e.to_string());
        w.write_record(["identity", "params", "residual", "tol", "pass", "evals", "elapsed_ms"])
            .map_err(enc)?;
        for p in &self.points {
            w.write_record([
                self.identity.clone(),
                p.params_text(),
                p.residual_text(),
                format!("{:e}", p.threshold.unwrap_or(0.0)),
                p.pass.to_string(),
                p.evals.to_string(),
                format!("{:.3}", p.elapsed_ms),
            ])
            .map_err(enc)?;
        }
        let bytes = w.into_inner().map_err(|e| ReportError::Encode(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| ReportError::Encode(e.to_string()))
    }
}

impl fmt::Display for VerificationReport {
    /// One summary line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        let failed = self.failures().count();
        write!(f, "{}: {verdict} ({} points", self.identity, self.points.len())?;
        if failed > 0 {
            write!(f, ", {failed} failing")?;
        }
        match self.kind {
            IdentityKind::Exact => write!(f, ", exact)"),
            IdentityKind::Numeric => write!(
                f,
                ", max residual {:.3e}, tol {:e}, {} ζ evaluations)",
                self.max_residual, self.tol, self.evals
            ),
        }
    }
}

pub fn report_to_file(
    report: &VerificationReport,
    path: impl AsRef<Path>,
    format: ReportFormat,
) -> Result<(), ReportError> {
    let text = match format {
        ReportFormat::Json => report.to_json()?,
        ReportFormat::Csv => report.to_csv()?,
    };
    fs::write(path, text)?;
    Ok(())
}
