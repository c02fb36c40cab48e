//! Phase orchestration: spaces → axioms → constants → theorems → renorm.
//!
//! The orchestrator is single-threaded; worker parallelism happens inside
//! the constant estimators by chunking the outer enumeration into
//! contiguous blocks and merging the blocks in order, which reproduces the
//! sequential result bit for bit regardless of the worker count.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use pgreedy_core::constants::{
    estimate_part, merge, ConstantEstimate, ConstantKind, EstimateSet, Part,
};
use pgreedy_core::grid::GridSpec;
use pgreedy_core::renorm::{check_equivalence, estimate_cpg_renormed};
use pgreedy_core::spaces::{check_axioms, AxiomReport};
use pgreedy_core::theorems::check_all;
use pgreedy_core::PSpace;

use crate::config::{Phase, RunConfig, SpaceConfig};
use crate::error::LabError;
use crate::report::{ConstantRow, RenormReport, Report, SpaceReport};

/// Estimate one constant, optionally fanning the outer enumeration out to
/// `workers` threads. Merging blocks in index order keeps the result
/// identical to the sequential search.
pub fn estimate_parallel(
    kind: ConstantKind,
    space: &PSpace,
    grid: &GridSpec,
    workers: usize,
    cap: usize,
) -> Result<ConstantEstimate, LabError> {
    if workers <= 1 {
        return Ok(estimate_part(kind, space, grid, Part::full(), cap)?);
    }
    let results: Vec<Result<ConstantEstimate, pgreedy_core::Error>> =
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..workers)
                .map(|index| {
                    let part = Part { index, count: workers };
                    scope.spawn(move || estimate_part(kind, space, grid, part, cap))
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("estimator worker panicked"))
                .collect()
        });
    let mut acc: Option<ConstantEstimate> = None;
    for r in results {
        let e = r?;
        acc = Some(match acc {
            None => e,
            Some(prev) => merge(prev, e),
        });
    }
    Ok(acc.expect("at least one worker"))
}

fn log_phase(space: &str, phase: &str, t0: Instant) {
    eprintln!("phase[{phase}] space={space} elapsed={:?}", t0.elapsed());
}

fn built(config: &RunConfig, sc: &SpaceConfig) -> Result<(PSpace, GridSpec), LabError> {
    let space = sc.build()?;
    let grid = config.grid.build(sc.dimension, sc.field)?;
    Ok((space, grid))
}

/// Axiom phase for one space.
pub fn axiom_phase(config: &RunConfig, sc: &SpaceConfig) -> Result<AxiomReport, LabError> {
    let (space, _) = built(config, sc)?;
    Ok(check_axioms(&space, config.axiom_samples, config.seed)?)
}

/// Constants phase for one space; `only = None` estimates all ten.
pub fn constants_phase(
    config: &RunConfig,
    sc: &SpaceConfig,
    only: Option<&[ConstantKind]>,
) -> Result<Vec<ConstantRow>, LabError> {
    let (space, grid) = built(config, sc)?;
    let mut rows = Vec::new();
    for kind in ConstantKind::ALL {
        if let Some(filter) = only {
            if !filter.contains(&kind) {
                continue;
            }
        }
        let estimate =
            estimate_parallel(kind, &space, &grid, config.workers, config.max_dimension)?;
        rows.push(ConstantRow {
            symbol: kind.symbol().to_string(),
            name: kind.name().to_string(),
            estimate,
        });
    }
    Ok(rows)
}

/// Rebuild an [`EstimateSet`] from report rows.
pub fn estimate_set_from_rows(rows: &[ConstantRow]) -> EstimateSet {
    let mut set = EstimateSet::default();
    for row in rows {
        set.insert(row.estimate.clone());
    }
    set
}

/// Theorems phase for one space, given its estimates.
pub fn theorems_phase(
    config: &RunConfig,
    sc: &SpaceConfig,
    rows: &[ConstantRow],
) -> Result<Vec<pgreedy_core::theorems::InequalityRecord>, LabError> {
    let set = estimate_set_from_rows(rows);
    let closure_ok = config.grid.indicator_augmented;
    Ok(check_all(&set, sc.p, sc.field, closure_ok)?)
}

/// Renorm phase for one space. Computes the plain `C_pg` and `D` values
/// itself when they are not already available.
pub fn renorm_phase(
    config: &RunConfig,
    sc: &SpaceConfig,
    rows: &[ConstantRow],
) -> Result<RenormReport, LabError> {
    let (space, grid) = built(config, sc)?;
    let spec = config.renorm.build(sc.dimension, sc.field)?;
    let set = estimate_set_from_rows(rows);
    let plain_cpg = match set.value(ConstantKind::Cpg) {
        Some(v) => v,
        None => {
            estimate_parallel(
                ConstantKind::Cpg,
                &space,
                &grid,
                config.workers,
                config.max_dimension,
            )?
            .value
        }
    };
    let d_value = match set.value(ConstantKind::D) {
        Some(v) => v,
        None => {
            estimate_parallel(
                ConstantKind::D,
                &space,
                &grid,
                config.workers,
                config.max_dimension,
            )?
            .value
        }
    };
    let equivalence = check_equivalence(&space, &spec, &grid, d_value)?;
    let renormed_cpg = estimate_cpg_renormed(&space, &grid, &spec)?;
    Ok(RenormReport {
        multipliers: config.renorm.multipliers.clone(),
        plain_cpg,
        d_value,
        equivalence,
        renormed_cpg,
    })
}

/// Execute the configured phases and build the full report.
pub fn run_full(config: &RunConfig) -> Result<Report, LabError> {
    let phases = config.ordered_phases();
    let mut report = Report::new(config.hash(), config.seed);
    for sc in &config.spaces {
        let grid = config.grid.build(sc.dimension, sc.field)?;
        let mut space_report = SpaceReport {
            name: sc.name.clone(),
            dimension: sc.dimension,
            p: sc.p,
            field: sc.field,
            grid_hash: grid.hash(),
            axioms: None,
            constants: Vec::new(),
            ledger: Vec::new(),
            renorm: None,
        };
        for phase in &phases {
            let t0 = Instant::now();
            match phase {
                Phase::Axioms => {
                    space_report.axioms = Some(axiom_phase(config, sc)?);
                    log_phase(&sc.name, "axioms", t0);
                }
                Phase::Constants => {
                    space_report.constants = constants_phase(config, sc, None)?;
                    log_phase(&sc.name, "constants", t0);
                }
                Phase::Theorems => {
                    space_report.ledger = theorems_phase(config, sc, &space_report.constants)?;
                    log_phase(&sc.name, "theorems", t0);
                }
                Phase::Renorm => {
                    space_report.renorm =
                        Some(renorm_phase(config, sc, &space_report.constants)?);
                    log_phase(&sc.name, "renorm", t0);
                }
            }
        }
        report.spaces.push(space_report);
    }
    Ok(report)
}

/// Intermediate artifact written by `constants estimate` and consumed by
/// `theorems check` / `renorm verify`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EstimatesArtifact {
    pub config_hash: String,
    pub spaces: Vec<SpaceEstimates>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpaceEstimates {
    pub name: String,
    pub constants: Vec<ConstantRow>,
}
