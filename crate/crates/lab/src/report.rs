//! Versioned JSON report and CSV export.
//!
//! Reports are byte-deterministic for a fixed (config, seed): maps are
//! ordered, floats use shortest round-trip serialization, and wall-clock
//! timings are deliberately kept out (they go to the diagnostic stream).

use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use pgreedy_core::constants::ConstantEstimate;
use pgreedy_core::renorm::{EquivalenceReport, RenormedEstimate};
use pgreedy_core::spaces::AxiomReport;
use pgreedy_core::theorems::{InequalityRecord, Status};
use pgreedy_core::Field;

use crate::error::LabError;

pub const SCHEMA_VERSION: u32 = 1;

/// One row of the constants table (Annex layout: symbol, name, value,
/// then the full witness certificate).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantRow {
    pub symbol: String,
    pub name: String,
    pub estimate: ConstantEstimate,
}

/// Renorm phase results for one space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RenormReport {
    pub multipliers: Vec<f64>,
    pub plain_cpg: f64,
    pub d_value: f64,
    pub equivalence: EquivalenceReport,
    pub renormed_cpg: RenormedEstimate,
}

/// Everything computed for one space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpaceReport {
    pub name: String,
    pub dimension: usize,
    pub p: f64,
    pub field: Field,
    pub grid_hash: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub axioms: Option<AxiomReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub constants: Vec<ConstantRow>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub ledger: Vec<InequalityRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub renorm: Option<RenormReport>,
}

/// The full report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool_version: String,
    pub config_hash: String,
    pub seed: u64,
    pub spaces: Vec<SpaceReport>,
}

impl Report {
    pub fn new(config_hash: String, seed: u64) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            config_hash,
            seed,
            spaces: Vec::new(),
        }
    }

    /// `true` iff no axiom violation, no FAIL ledger record, and every
    /// computed equivalence report passed.
    pub fn passed(&self) -> bool {
        self.spaces.iter().all(|s| {
            s.axioms.as_ref().map_or(true, |a| a.passed())
                && s.ledger.iter().all(|r| r.status != Status::Fail)
                && s.renorm.as_ref().map_or(true, |r| r.equivalence.passed())
        })
    }

    pub fn save(&self, path: &Path) -> Result<(), LabError> {
        let mut bytes = serde_json::to_vec_pretty(self)
            .map_err(|e| LabError::Compute(format!("report serialization failed: {e}")))?;
        bytes.push(b'\n');
        std::fs::write(path, bytes)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self, LabError> {
        let bytes = std::fs::read(path)
            .map_err(|_| LabError::Dependency(path.display().to_string()))?;
        serde_json::from_slice(&bytes)
            .map_err(|e| LabError::Usage(format!("invalid report {}: {e}", path.display())))
    }

    /// Export the Annex-style constants table and the inequality ledger as
    /// CSV, one pair of files per space. Returns the written paths.
    pub fn export_csv(&self, out_dir: &Path) -> Result<Vec<PathBuf>, LabError> {
        let mut written = Vec::new();
        for (i, space) in self.spaces.iter().enumerate() {
            if !space.constants.is_empty() {
                let path = out_dir.join(format!("constants_{}.csv", space.name));
                let mut file = std::fs::File::create(&path)?;
                writeln!(file, "symbol,name,value,witness_ref")?;
                for (j, row) in space.constants.iter().enumerate() {
                    writeln!(
                        file,
                        "{},{},{},report.json#/spaces/{}/constants/{}/estimate/witness",
                        row.symbol,
                        csv_quote(&row.name),
                        row.estimate.value,
                        i,
                        j
                    )?;
                }
                written.push(path);
            }
            if !space.ledger.is_empty() {
                let path = out_dir.join(format!("ledger_{}.csv", space.name));
                let mut file = std::fs::File::create(&path)?;
                writeln!(file, "id,lhs,rhs,margin,status")?;
                for r in &space.ledger {
                    let status = match r.status {
                        Status::Pass => "PASS",
                        Status::Fail => "FAIL",
                        Status::NotApplicable => "NOT-APPLICABLE",
                    };
                    writeln!(file, "{},{},{},{},{}", r.id, r.lhs, r.rhs, r.margin, status)?;
                }
                written.push(path);
            }
        }
        Ok(written)
    }
}

/// Quote a CSV field if it contains a comma or quote.
fn csv_quote(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
