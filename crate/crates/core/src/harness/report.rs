use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::bounds::BoundFamily;
use crate::error::{invalid, Result};
use crate::hypergraph::WeightDistribution;

use super::tail::TailEstimate;

pub const CSV_HEADER: &str =
    "theta,empirical,ci_low,ci_high,chernoff_upper,chernoff_lower,bennett,bernstein,master,valid_flags";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportMetadata {
    pub m: usize,
    #[serde(rename = "M")]
    pub half: usize,
    #[serde(rename = "N")]
    pub n_graphs: usize,
    pub trials: usize,
    pub seed: u64,
    pub distribution: WeightDistribution,
    pub center: bool,
    pub normalize: bool,
    pub ci_level: f64,
    pub nu: f64,
    pub sigma2: f64,
    pub k: usize,
    pub dim_upper: usize,
    pub dim_lower: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    /// Only filled in on request so that reports stay reproducible.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_s: Option<f64>,
}

/// One threshold of a tail report. `theta` is an absolute threshold on the
/// algebraic connectivity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TailRow {
    pub theta: f64,
    /// Upper tail `Pr(alpha >= theta)`.
    pub empirical: TailEstimate,
    /// Lower tail `Pr(alpha <= theta)`, reported alongside `chernoff_lower`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lower: Option<TailEstimate>,
    pub bounds: BTreeMap<BoundFamily, f64>,
    /// Trace form of the master bound before the `dim * lambda_max` relaxation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub master_trace: Option<f64>,
    /// Whether `theta` is in the range stated with each requested family.
    pub valid: BTreeMap<BoundFamily, bool>,
    pub violations: Vec<BoundFamily>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TailReport {
    pub metadata: ReportMetadata,
    pub rows: Vec<TailRow>,
}

impl TailReport {
    pub fn violation_count(&self) -> usize {
        self.rows.iter().filter(|r| !r.violations.is_empty()).count()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for row in &self.rows {
            let mut cells = vec![
                float(row.theta),
                float(row.empirical.estimate),
                float(row.empirical.ci_low),
                float(row.empirical.ci_high),
            ];
            for family in BoundFamily::ALL {
                cells.push(row.bounds.get(&family).map(|&v| float(v)).unwrap_or_default());
            }
            let flags: Vec<String> = row
                .valid
                .iter()
                .map(|(f, &ok)| format!("{}={}", f.name(), u8::from(ok)))
                .collect();
            cells.push(flags.join(";"));
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load_json(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn emit(&self, path: impl AsRef<Path>, format: Format) -> Result<()> {
        let text = match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json()?,
        };
        std::fs::write(path, text)?;
        Ok(())
    }
}

/// 17 significant digits.
fn float(v: f64) -> String {
    format!("{v:.16e}")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(invalid(format!("unknown format {s:?}, expected csv or json"))),
        }
    }
}
