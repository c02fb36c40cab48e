//! JSON run configuration: space definitions, grid, renorm spec and phases.

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use pgreedy_core::grid::{Fnv64, GridSpec};
use pgreedy_core::renorm::RenormSearchSpec;
use pgreedy_core::{Field, NormSpec, PSpace, SignSet};

use crate::error::LabError;

/// Built-in space families, instantiable from a dimension and exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    CanonicalLp,
    DyadicWeightedLp,
    SummingAugmentedLp,
}

/// One space to run the laboratory on. Either a `family` shorthand or an
/// explicit `norm` spec must be given (not both).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceConfig {
    pub name: String,
    pub dimension: usize,
    pub p: f64,
    #[serde(default = "default_field")]
    pub field: Field,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<Family>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub norm: Option<NormSpec>,
}

fn default_field() -> Field {
    Field::Real
}

impl SpaceConfig {
    pub fn build(&self) -> Result<PSpace, LabError> {
        let space = match (&self.family, &self.norm) {
            (Some(_), Some(_)) => {
                return Err(LabError::Usage(format!(
                    "space '{}': give either 'family' or 'norm', not both",
                    self.name
                )))
            }
            (None, None) => {
                return Err(LabError::Usage(format!(
                    "space '{}': one of 'family' or 'norm' is required",
                    self.name
                )))
            }
            (Some(Family::CanonicalLp), None) => {
                PSpace::canonical_lp(self.dimension, self.p, self.field)
            }
            (Some(Family::DyadicWeightedLp), None) => {
                PSpace::dyadic_weighted_lp(self.dimension, self.p, self.field)
            }
            (Some(Family::SummingAugmentedLp), None) => {
                PSpace::summing_augmented(self.dimension, self.p, self.field)
            }
            (None, Some(spec)) => PSpace::new(self.dimension, self.p, self.field, spec.clone()),
        }?;
        Ok(space)
    }
}

/// Grid settings shared by every space; the dimension is taken per space.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    #[serde(default = "default_magnitudes")]
    pub magnitudes: Vec<f64>,
    /// `max_support` defaults to the space dimension when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_support: Option<usize>,
    #[serde(default = "default_true")]
    pub indicator_augmented: bool,
}

fn default_magnitudes() -> Vec<f64> {
    vec![0.0, 0.25, 0.5, 1.0, 2.0]
}

fn default_true() -> bool {
    true
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            magnitudes: default_magnitudes(),
            max_support: None,
            indicator_augmented: true,
        }
    }
}

impl GridConfig {
    pub fn build(&self, dimension: usize, field: Field) -> Result<GridSpec, LabError> {
        let signs = SignSet::for_field(field);
        let grid = GridSpec::new(
            dimension,
            self.magnitudes.clone(),
            signs,
            self.max_support.unwrap_or(dimension),
            self.indicator_augmented,
        )?;
        Ok(grid)
    }
}

/// Renorm search settings shared by every space.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RenormConfig {
    #[serde(default = "default_multipliers")]
    pub multipliers: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_support: Option<usize>,
}

fn default_multipliers() -> Vec<f64> {
    vec![1.0, 2.0, 4.0]
}

impl Default for RenormConfig {
    fn default() -> Self {
        RenormConfig {
            multipliers: default_multipliers(),
            max_support: None,
        }
    }
}

impl RenormConfig {
    pub fn build(&self, dimension: usize, field: Field) -> Result<RenormSearchSpec, LabError> {
        let spec = RenormSearchSpec::new(
            self.multipliers.clone(),
            SignSet::for_field(field),
            self.max_support.unwrap_or(dimension),
        )?;
        Ok(spec)
    }
}

/// Pipeline phases, run in this fixed order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Phase {
    Axioms,
    Constants,
    Theorems,
    Renorm,
}

impl Phase {
    pub const ORDER: [Phase; 4] = [Phase::Axioms, Phase::Constants, Phase::Theorems, Phase::Renorm];
}

fn default_phases() -> Vec<Phase> {
    Phase::ORDER.to_vec()
}

fn default_seed() -> u64 {
    7
}

fn default_workers() -> usize {
    1
}

fn default_axiom_samples() -> usize {
    2000
}

fn default_max_dimension() -> usize {
    12
}

/// The full run configuration (canonical JSON form).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub spaces: Vec<SpaceConfig>,
    #[serde(default)]
    pub grid: GridConfig,
    #[serde(default)]
    pub renorm: RenormConfig,
    #[serde(default = "default_phases")]
    pub phases: Vec<Phase>,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_workers")]
    pub workers: usize,
    #[serde(default = "default_axiom_samples")]
    pub axiom_samples: usize,
    #[serde(default = "default_max_dimension")]
    pub max_dimension: usize,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, LabError> {
        let bytes = std::fs::read(path).map_err(|e| {
            LabError::Usage(format!("cannot read config {}: {e}", path.display()))
        })?;
        let config: RunConfig = serde_json::from_slice(&bytes)
            .map_err(|e| LabError::Usage(format!("invalid config {}: {e}", path.display())))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), LabError> {
        if self.spaces.is_empty() {
            return Err(LabError::Usage("config lists no spaces".into()));
        }
        let mut names = BTreeSet::new();
        for s in &self.spaces {
            if !names.insert(&s.name) {
                return Err(LabError::Usage(format!("duplicate space name '{}'", s.name)));
            }
            if s.dimension > self.max_dimension {
                return Err(LabError::SizeCap {
                    size: s.dimension,
                    cap: self.max_dimension,
                });
            }
            s.build()?;
            self.grid.build(s.dimension, s.field)?;
            self.renorm.build(s.dimension, s.field)?;
        }
        if self.workers == 0 {
            return Err(LabError::Usage("workers must be at least 1".into()));
        }
        if self.phases.is_empty() {
            return Err(LabError::Usage("config lists no phases".into()));
        }
        Ok(())
    }

    /// Phases in canonical execution order, deduplicated.
    pub fn ordered_phases(&self) -> Vec<Phase> {
        Phase::ORDER
            .into_iter()
            .filter(|p| self.phases.contains(p))
            .collect()
    }

    /// FNV-1a hash of the canonical JSON serialization. The worker count
    /// is an execution detail that cannot change any result, so it is
    /// normalized out: runs of one config agree byte for byte regardless
    /// of parallelism.
    pub fn hash(&self) -> String {
        let mut canonical = self.clone();
        canonical.workers = 1;
        let bytes = serde_json::to_vec(&canonical).expect("config serializes");
        let mut h = Fnv64::new();
        h.write_bytes(&bytes);
        format!("{:016x}", h.finish())
    }
}
