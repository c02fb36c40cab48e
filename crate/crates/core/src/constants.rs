//! Exhaustive lower-bound estimators, with witness certificates, for every
//! constant in the summary table: the greedy-type constants, the
//! conservative-like constants, the truncation operator bounds, and the
//! `D`-functional that characterizes partial greediness.
//!
//! Every estimate is a certified lower bound of the true constant: it is the
//! maximum of the defining ratio over a finite grid, and the attached witness
//! reproduces the value exactly.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::greedy::{
    self, complement_projection, indicator, partial_sum, projection, TiePolicy,
};
use crate::grid::{subsets_of, GridSpec, DEFAULT_DIMENSION_CAP};
use crate::scalar::{sign_patterns, SignPattern};
use crate::spaces::PSpace;
use crate::vector::CoeffVector;
use crate::{Error, Result};

/// The constants of the summary table plus the `C` of the
/// partially-symmetric characterization.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, serde::Serialize, serde::Deserialize,
)]
#[serde(rename_all = "snake_case")]
pub enum ConstantKind {
    Cqg,
    Cql,
    Cpg,
    D,
    Delta,
    DeltaS,
    DeltaPl,
    GammaU,
    GammaT,
    CThree,
}

impl ConstantKind {
    pub const ALL: [ConstantKind; 10] = [
        ConstantKind::Cqg,
        ConstantKind::Cql,
        ConstantKind::Cpg,
        ConstantKind::D,
        ConstantKind::Delta,
        ConstantKind::DeltaS,
        ConstantKind::DeltaPl,
        ConstantKind::GammaU,
        ConstantKind::GammaT,
        ConstantKind::CThree,
    ];

    pub fn symbol(&self) -> &'static str {
        match self {
            ConstantKind::Cqg => "C_qg",
            ConstantKind::Cql => "C_ql",
            ConstantKind::Cpg => "C_pg",
            ConstantKind::D => "D",
            ConstantKind::Delta => "Delta",
            ConstantKind::DeltaS => "Delta_s",
            ConstantKind::DeltaPl => "Delta_pl",
            ConstantKind::GammaU => "Gamma_u",
            ConstantKind::GammaT => "Gamma_t",
            ConstantKind::CThree => "C_three",
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ConstantKind::Cqg => "Quasi-greedy constant",
            ConstantKind::Cql => "Quasi-greedy for largest coeffs. constant",
            ConstantKind::Cpg => "Partially-greedy constant",
            ConstantKind::D => "Partial-sum displacement constant",
            ConstantKind::Delta => "Conservativeness constant",
            ConstantKind::DeltaS => "Super-conservativeness constant",
            ConstantKind::DeltaPl => "Partially-symmetry for largest coeffs. constant",
            ConstantKind::GammaU => "Restricted truncation operator constant",
            ConstantKind::GammaT => "Truncation operator constant",
            ConstantKind::CThree => "Partially-symmetric characterization constant",
        }
    }

    pub fn parse(s: &str) -> Option<ConstantKind> {
        Self::ALL.iter().copied().find(|k| {
            k.symbol().eq_ignore_ascii_case(s)
                || k.symbol().replace('_', "").eq_ignore_ascii_case(&s.replace('_', ""))
        })
    }
}

/// The maximizing configuration of an estimate: enough structure to
/// recompute the defining ratio from scratch.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f: Option<CoeffVector>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z: Option<CoeffVector>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub set_a: Option<BTreeSet<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub set_b: Option<BTreeSet<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sign_a: Option<SignPattern>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sign_b: Option<SignPattern>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    pub lhs: f64,
    pub rhs: f64,
}

impl Witness {
    fn new(lhs: f64, rhs: f64) -> Self {
        Witness {
            f: None,
            z: None,
            set_a: None,
            set_b: None,
            sign_a: None,
            sign_b: None,
            k: None,
            lhs,
            rhs,
        }
    }
}

/// A certified lower bound for one constant, with its witness.
/// `value = 0` with no witness encodes "no admissible configuration".
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ConstantEstimate {
    pub kind: ConstantKind,
    pub value: f64,
    pub witness: Option<Witness>,
    pub grid_hash: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// A contiguous block of an estimator's outer enumeration; chunked search
/// merged in block order reproduces the sequential result bit for bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Part {
    pub index: usize,
    pub count: usize,
}

impl Part {
    pub fn full() -> Self {
        Part { index: 0, count: 1 }
    }

    pub fn slice<'a, T>(&self, items: &'a [T]) -> &'a [T] {
        let n = items.len();
        let lo = self.index * n / self.count;
        let hi = (self.index + 1) * n / self.count;
        &items[lo..hi]
    }
}

/// Take the larger estimate; on an exact tie the earlier block's witness
/// wins, matching sequential first-found order.
pub fn merge(a: ConstantEstimate, b: ConstantEstimate) -> ConstantEstimate {
    if b.value > a.value {
        b
    } else {
        a
    }
}

struct Best {
    value: f64,
    witness: Option<Witness>,
}

impl Best {
    fn new() -> Self {
        Best { value: 0.0, witness: None }
    }

    /// Keep the first configuration attaining the running maximum.
    fn offer(&mut self, ratio: f64, witness: impl FnOnce() -> Witness) {
        if self.witness.is_none() || ratio > self.value {
            self.value = ratio;
            self.witness = Some(witness());
        }
    }

    fn finish(self, kind: ConstantKind, grid: &GridSpec) -> ConstantEstimate {
        let note = if self.witness.is_none() {
            Some("no admissible configuration on this grid".into())
        } else {
            None
        };
        ConstantEstimate {
            kind,
            value: if self.witness.is_some() { self.value } else { 0.0 },
            witness: self.witness,
            grid_hash: grid.hash(),
            note,
        }
    }
}

/// `lhs / rhs` with the degenerate-norm guard: `0/0` configurations are
/// skipped, a positive numerator over a zero denominator aborts the run.
fn ratio(lhs: f64, rhs: f64, context: impl Fn() -> String) -> Result<Option<f64>> {
    if rhs == 0.0 {
        if lhs == 0.0 {
            Ok(None)
        } else {
            Err(Error::DegenerateNorm(format!(
                "infinite ratio (lhs = {lhs}, rhs = 0) at {}",
                context()
            )))
        }
    } else {
        Ok(Some(lhs / rhs))
    }
}

fn validate(space: &PSpace, grid: &GridSpec, cap: usize) -> Result<()> {
    if space.dimension != grid.dimension {
        return Err(Error::DimensionMismatch {
            expected: space.dimension,
            got: grid.dimension,
        });
    }
    grid.check_cap(cap)
}

fn complement(dim: usize, set: &BTreeSet<usize>) -> BTreeSet<usize> {
    (1..=dim).filter(|n| !set.contains(n)).collect()
}

/// Estimate one constant over the full grid with the default dimension cap.
pub fn estimate(kind: ConstantKind, space: &PSpace, grid: &GridSpec) -> Result<ConstantEstimate> {
    estimate_part(kind, space, grid, Part::full(), DEFAULT_DIMENSION_CAP)
}

/// Estimate one constant on a block of the outer enumeration (see [`Part`]).
pub fn estimate_part(
    kind: ConstantKind,
    space: &PSpace,
    grid: &GridSpec,
    part: Part,
    cap: usize,
) -> Result<ConstantEstimate> {
    validate(space, grid, cap)?;
    match kind {
        ConstantKind::Cqg => estimate_cqg(space, grid, part),
        ConstantKind::Cql => estimate_cql(space, grid, part),
        ConstantKind::Cpg => estimate_cpg(space, grid, part, TiePolicy::All),
        ConstantKind::D => estimate_d(space, grid, part),
        ConstantKind::Delta => estimate_conservative(space, grid, part, false),
        ConstantKind::DeltaS => estimate_conservative(space, grid, part, true),
        ConstantKind::DeltaPl => estimate_delta_pl(space, grid, part),
        ConstantKind::GammaU => estimate_truncation(space, grid, part, false),
        ConstantKind::GammaT => estimate_truncation(space, grid, part, true),
        ConstantKind::CThree => estimate_c_three(space, grid, part),
    }
}

/// `C_pg` under an explicit tie policy (the default estimator uses `All`,
/// the stronger reading; reports may show both when they differ).
pub fn estimate_cpg_with_ties(
    space: &PSpace,
    grid: &GridSpec,
    ties: TiePolicy,
) -> Result<ConstantEstimate> {
    validate(space, grid, DEFAULT_DIMENSION_CAP)?;
    estimate_cpg(space, grid, Part::full(), ties)
}

/// sup `‖P_A(f)‖ / ‖f‖` over grid vectors and all their greedy sets.
fn estimate_cqg(space: &PSpace, grid: &GridSpec, part: Part) -> Result<ConstantEstimate> {
    let vectors = grid.vectors();
    let mut best = Best::new();
    for f in part.slice(&vectors) {
        if f.is_zero() {
            continue;
        }
        let nf = space.norm(f)?;
        for m in 0..=space.dimension {
            for a in greedy::greedy_sets(f, m, TiePolicy::All)? {
                let lhs = space.norm(&projection(f, &a)?)?;
                if let Some(r) = ratio(lhs, nf, || format!("C_qg: f = {f:?}, A = {a:?}"))? {
                    best.offer(r, || {
                        let mut w = Witness::new(lhs, nf);
                        w.f = Some(f.clone());
                        w.set_a = Some(a.clone());
                        w
                    });
                }
            }
        }
    }
    Ok(best.finish(ConstantKind::Cqg, grid))
}

/// sup `‖1_{eps A}‖ / ‖f + 1_{eps A}‖` over disjoint `(f, A)` with
/// `max |e_n*(f)| <= 1`.
fn estimate_cql(space: &PSpace, grid: &GridSpec, part: Part) -> Result<ConstantEstimate> {
    let dim = space.dimension;
    let all: BTreeSet<usize> = (1..=dim).collect();
    let vectors = grid.vectors_bounded(&all, 1.0);
    let mut best = Best::new();
    for f in part.slice(&vectors) {
        let free = complement(dim, &f.support());
        for a in subsets_of(&free) {
            if a.is_empty() {
                continue;
            }
            for eps in sign_patterns(&a, &grid.signs) {
                let ind = indicator(dim, &a, &eps)?;
                let lhs = space.norm(&ind)?;
                let rhs = space.norm(&f.add(&ind)?)?;
                if let Some(r) = ratio(lhs, rhs, || format!("C_ql: f = {f:?}, A = {a:?}"))? {
                    best.offer(r, || {
                        let mut w = Witness::new(lhs, rhs);
                        w.f = Some(f.clone());
                        w.set_a = Some(a.clone());
                        w.sign_a = Some(eps.clone());
                        w
                    });
                }
            }
        }
    }
    Ok(best.finish(ConstantKind::Cql, grid))
}

/// sup over `f` and greedy sets `A` of
/// `‖f - P_A(f)‖ / inf_{k <= |A|} ‖f - S_k(f)‖`.
/// A `0/0` configuration (some `S_k(f) = f`, remainder also zero)
/// contributes ratio 1.
fn estimate_cpg(
    space: &PSpace,
    grid: &GridSpec,
    part: Part,
    ties: TiePolicy,
) -> Result<ConstantEstimate> {
    let vectors = grid.vectors();
    let mut best = Best::new();
    for f in part.slice(&vectors) {
        if f.is_zero() {
            continue;
        }
        let tail_norms: Vec<f64> = (0..=space.dimension)
            .map(|k| space.norm(&f.sub(&partial_sum(f, k)?)?))
            .collect::<Result<_>>()?;
        for m in 0..=space.dimension {
            // inf over k <= m, with the first attaining k as witness
            let (k_star, denom) = tail_norms[..=m]
                .iter()
                .enumerate()
                .fold((0usize, f64::INFINITY), |(bi, bv), (i, &v)| {
                    if v < bv {
                        (i, v)
                    } else {
                        (bi, bv)
                    }
                });
            for a in greedy::greedy_sets(f, m, ties)? {
                let lhs = space.norm(&f.sub(&projection(f, &a)?)?)?;
                let r = match ratio(lhs, denom, || format!("C_pg: f = {f:?}, A = {a:?}"))? {
                    Some(r) => r,
                    // denom = 0 forces lhs = 0 here; count the config as 1.
                    None => 1.0,
                };
                best.offer(r, || {
                    let mut w = Witness::new(lhs, denom);
                    w.f = Some(f.clone());
                    w.set_a = Some(a.clone());
                    w.k = Some(k_star);
                    w
                });
            }
        }
    }
    Ok(best.finish(ConstantKind::Cpg, grid))
}

/// sup `‖f‖ / ‖f - S_k(f) + z‖` over admissible `(f, k, z)`:
/// `supp(f) ∩ supp(z) = ∅`, `k < min supp(z)`, `k <= |supp(z)|`, and
/// `max_{supp f} |e_n*(f)| <= min_{supp z} |e_n*(z)|`.
fn estimate_d(space: &PSpace, grid: &GridSpec, part: Part) -> Result<ConstantEstimate> {
    let dim = space.dimension;
    let vectors = grid.vectors();
    let mut z_cache: BTreeMap<Vec<usize>, Vec<CoeffVector>> = BTreeMap::new();
    let mut best = Best::new();
    for f in part.slice(&vectors) {
        if f.is_zero() {
            continue;
        }
        let nf = space.norm(f)?;
        let max_f = f.max_modulus();
        let free = complement(dim, &f.support());
        let free_key: Vec<usize> = free.iter().copied().collect();
        let candidates = z_cache
            .entry(free_key)
            .or_insert_with(|| grid.vectors_on(&free));
        for z in candidates.iter() {
            if z.min_support_modulus() < max_f {
                continue;
            }
            let k_max = if z.is_zero() {
                0
            } else {
                let min_supp = *z.support().iter().next().unwrap();
                (min_supp - 1).min(z.support_len())
            };
            for k in 0..=k_max {
                let rhs = space.norm(&f.sub(&partial_sum(f, k)?)?.add(z)?)?;
                if let Some(r) =
                    ratio(nf, rhs, || format!("D: f = {f:?}, k = {k}, z = {z:?}"))?
                {
                    best.offer(r, || {
                        let mut w = Witness::new(nf, rhs);
                        w.f = Some(f.clone());
                        w.z = Some(z.clone());
                        w.k = Some(k);
                        w
                    });
                }
            }
        }
    }
    Ok(best.finish(ConstantKind::D, grid))
}

/// sup `‖1_{eps A}‖ / ‖1_{eps' B}‖` over `A < B`, `|A| <= |B|`
/// (`eps ≡ eps' ≡ 1` for the plain conservative constant).
fn estimate_conservative(
    space: &PSpace,
    grid: &GridSpec,
    part: Part,
    with_signs: bool,
) -> Result<ConstantEstimate> {
    let dim = space.dimension;
    let all: BTreeSet<usize> = (1..=dim).collect();
    let mut pairs: Vec<(BTreeSet<usize>, BTreeSet<usize>)> = Vec::new();
    for a in subsets_of(&all) {
        if a.is_empty() {
            continue;
        }
        let max_a = *a.iter().next_back().unwrap();
        let beyond: BTreeSet<usize> = (max_a + 1..=dim).collect();
        for b in subsets_of(&beyond) {
            if b.len() >= a.len() && !b.is_empty() {
                pairs.push((a.clone(), b));
            }
        }
    }
    let kind = if with_signs { ConstantKind::DeltaS } else { ConstantKind::Delta };
    let mut best = Best::new();
    for (a, b) in part.slice(&pairs) {
        let eps_list = if with_signs {
            sign_patterns(a, &grid.signs)
        } else {
            alloc::vec![SignPattern::ones(a)]
        };
        let eps_list_b = if with_signs {
            sign_patterns(b, &grid.signs)
        } else {
            alloc::vec![SignPattern::ones(b)]
        };
        for eps in &eps_list {
            let lhs = space.norm(&indicator(dim, a, eps)?)?;
            for eps_b in &eps_list_b {
                let rhs = space.norm(&indicator(dim, b, eps_b)?)?;
                if let Some(r) = ratio(lhs, rhs, || format!("{}: A = {a:?}, B = {b:?}", kind.symbol()))? {
                    best.offer(r, || {
                        let mut w = Witness::new(lhs, rhs);
                        w.set_a = Some(a.clone());
                        w.set_b = Some(b.clone());
                        if with_signs {
                            w.sign_a = Some(eps.clone());
                            w.sign_b = Some(eps_b.clone());
                        }
                        w
                    });
                }
            }
        }
    }
    Ok(best.finish(kind, grid))
}

/// sup `‖f + 1_{eps A}‖ / ‖f + 1_{eps' B}‖` over `|A| <= |B|`,
/// `A < supp(f) ∪ B`, `B ∩ supp(f) = ∅`, `max |e_n*(f)| <= 1`.
fn estimate_delta_pl(space: &PSpace, grid: &GridSpec, part: Part) -> Result<ConstantEstimate> {
    let dim = space.dimension;
    let all: BTreeSet<usize> = (1..=dim).collect();
    let vectors = grid.vectors_bounded(&all, 1.0);
    let mut best = Best::new();
    for f in part.slice(&vectors) {
        let supp_f = f.support();
        let free = complement(dim, &supp_f);
        for b in subsets_of(&free) {
            // A lives strictly below min(supp(f) ∪ B)
            let floor = supp_f
                .iter()
                .chain(b.iter())
                .copied()
                .min()
                .unwrap_or(dim + 1);
            let below: BTreeSet<usize> = (1..floor).collect();
            for a in subsets_of(&below) {
                if a.len() > b.len() {
                    continue;
                }
                for eps_b in sign_patterns(&b, &grid.signs) {
                    let rhs = space.norm(&f.add(&indicator(dim, &b, &eps_b)?)?)?;
                    for eps_a in sign_patterns(&a, &grid.signs) {
                        let lhs = space.norm(&f.add(&indicator(dim, &a, &eps_a)?)?)?;
                        if let Some(r) = ratio(lhs, rhs, || {
                            format!("Delta_pl: f = {f:?}, A = {a:?}, B = {b:?}")
                        })? {
                            best.offer(r, || {
                                let mut w = Witness::new(lhs, rhs);
                                w.f = Some(f.clone());
                                w.set_a = Some(a.clone());
                                w.set_b = Some(b.clone());
                                w.sign_a = Some(eps_a.clone());
                                w.sign_b = Some(eps_b.clone());
                                w
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(best.finish(ConstantKind::DeltaPl, grid))
}

/// sup `‖f‖ / ‖f - S_k(f) + 1_{eps B}‖` over nonempty `B` disjoint from
/// `supp(f)`, `k < min B`, `k <= |B|`, `max |e_n*(f)| <= 1`.
///
/// The cardinality bound `k <= |B|` mirrors the admissibility of the
/// `D`-functional; without it the supremum is not comparable to the
/// partially-symmetric constant.
fn estimate_c_three(space: &PSpace, grid: &GridSpec, part: Part) -> Result<ConstantEstimate> {
    let dim = space.dimension;
    let all: BTreeSet<usize> = (1..=dim).collect();
    let vectors = grid.vectors_bounded(&all, 1.0);
    let mut best = Best::new();
    for f in part.slice(&vectors) {
        if f.is_zero() {
            continue;
        }
        let nf = space.norm(f)?;
        let free = complement(dim, &f.support());
        for b in subsets_of(&free) {
            if b.is_empty() {
                continue;
            }
            let min_b = *b.iter().next().unwrap();
            let k_max = (min_b - 1).min(b.len());
            for eps in sign_patterns(&b, &grid.signs) {
                let ind = indicator(dim, &b, &eps)?;
                for k in 0..=k_max {
                    let rhs = space.norm(&f.sub(&partial_sum(f, k)?)?.add(&ind)?)?;
                    if let Some(r) = ratio(nf, rhs, || {
                        format!("C_three: f = {f:?}, k = {k}, B = {b:?}")
                    })? {
                        best.offer(r, || {
                            let mut w = Witness::new(nf, rhs);
                            w.f = Some(f.clone());
                            w.set_b = Some(b.clone());
                            w.sign_b = Some(eps.clone());
                            w.k = Some(k);
                            w
                        });
                    }
                }
            }
        }
    }
    Ok(best.finish(ConstantKind::CThree, grid))
}

/// sup `‖U(f,A)‖ / ‖f‖` (resp. `‖T(f,A)‖ / ‖f‖`) over grid vectors and
/// greedy sets inside the support — the homogeneous reformulation of the
/// unit-ball supremum.
fn estimate_truncation(
    space: &PSpace,
    grid: &GridSpec,
    part: Part,
    full_truncation: bool,
) -> Result<ConstantEstimate> {
    let vectors = grid.vectors();
    let kind = if full_truncation { ConstantKind::GammaT } else { ConstantKind::GammaU };
    let mut best = Best::new();
    for f in part.slice(&vectors) {
        if f.is_zero() {
            continue;
        }
        let nf = space.norm(f)?;
        let m_lo = if full_truncation { 0 } else { 1 };
        for m in m_lo..=f.support_len() {
            for a in greedy::greedy_sets(f, m, TiePolicy::All)? {
                let u = greedy::restricted_truncation(f, &a)?;
                let image = if full_truncation {
                    u.add(&complement_projection(f, &a)?)?
                } else {
                    u
                };
                let lhs = space.norm(&image)?;
                if let Some(r) = ratio(lhs, nf, || {
                    format!("{}: f = {f:?}, A = {a:?}", kind.symbol())
                })? {
                    best.offer(r, || {
                        let mut w = Witness::new(lhs, nf);
                        w.f = Some(f.clone());
                        w.set_a = Some(a.clone());
                        w
                    });
                }
            }
        }
    }
    Ok(best.finish(kind, grid))
}

/// Recompute the defining ratio of `estimate` from its witness structure
/// alone. Used to certify that reported values are reproducible.
pub fn recompute(space: &PSpace, estimate: &ConstantEstimate) -> Result<f64> {
    let w = estimate
        .witness
        .as_ref()
        .ok_or_else(|| Error::InvalidParameter("estimate carries no witness".into()))?;
    let dim = space.dimension;
    let need = |name: &str| Error::InvalidParameter(format!("witness misses field {name}"));
    let (lhs, rhs) = match estimate.kind {
        ConstantKind::Cqg => {
            let f = w.f.as_ref().ok_or_else(|| need("f"))?;
            let a = w.set_a.as_ref().ok_or_else(|| need("A"))?;
            (space.norm(&projection(f, a)?)?, space.norm(f)?)
        }
        ConstantKind::Cql => {
            let f = w.f.as_ref().ok_or_else(|| need("f"))?;
            let a = w.set_a.as_ref().ok_or_else(|| need("A"))?;
            let eps = w.sign_a.as_ref().ok_or_else(|| need("sign_a"))?;
            let ind = indicator(dim, a, eps)?;
            (space.norm(&ind)?, space.norm(&f.add(&ind)?)?)
        }
        ConstantKind::Cpg => {
            let f = w.f.as_ref().ok_or_else(|| need("f"))?;
            let a = w.set_a.as_ref().ok_or_else(|| need("A"))?;
            let k = w.k.ok_or_else(|| need("k"))?;
            let lhs = space.norm(&f.sub(&projection(f, a)?)?)?;
            let rhs = space.norm(&f.sub(&partial_sum(f, k)?)?)?;
            if lhs == 0.0 && rhs == 0.0 {
                return Ok(1.0);
            }
            (lhs, rhs)
        }
        ConstantKind::D => {
            let f = w.f.as_ref().ok_or_else(|| need("f"))?;
            let z = w.z.as_ref().ok_or_else(|| need("z"))?;
            let k = w.k.ok_or_else(|| need("k"))?;
            (
                space.norm(f)?,
                space.norm(&f.sub(&partial_sum(f, k)?)?.add(z)?)?,
            )
        }
        ConstantKind::Delta | ConstantKind::DeltaS => {
            let a = w.set_a.as_ref().ok_or_else(|| need("A"))?;
            let b = w.set_b.as_ref().ok_or_else(|| need("B"))?;
            let eps_a = w.sign_a.clone().unwrap_or_else(|| SignPattern::ones(a));
            let eps_b = w.sign_b.clone().unwrap_or_else(|| SignPattern::ones(b));
            (
                space.norm(&indicator(dim, a, &eps_a)?)?,
                space.norm(&indicator(dim, b, &eps_b)?)?,
            )
        }
        ConstantKind::DeltaPl => {
            let f = w.f.as_ref().ok_or_else(|| need("f"))?;
            let a = w.set_a.as_ref().ok_or_else(|| need("A"))?;
            let b = w.set_b.as_ref().ok_or_else(|| need("B"))?;
            let eps_a = w.sign_a.as_ref().ok_or_else(|| need("sign_a"))?;
            let eps_b = w.sign_b.as_ref().ok_or_else(|| need("sign_b"))?;
            (
                space.norm(&f.add(&indicator(dim, a, eps_a)?)?)?,
                space.norm(&f.add(&indicator(dim, b, eps_b)?)?)?,
            )
        }
        ConstantKind::CThree => {
            let f = w.f.as_ref().ok_or_else(|| need("f"))?;
            let b = w.set_b.as_ref().ok_or_else(|| need("B"))?;
            let eps = w.sign_b.as_ref().ok_or_else(|| need("sign_b"))?;
            let k = w.k.ok_or_else(|| need("k"))?;
            let ind = indicator(dim, b, eps)?;
            (
                space.norm(f)?,
                space.norm(&f.sub(&partial_sum(f, k)?)?.add(&ind)?)?,
            )
        }
        ConstantKind::GammaU => {
            let f = w.f.as_ref().ok_or_else(|| need("f"))?;
            let a = w.set_a.as_ref().ok_or_else(|| need("A"))?;
            (
                space.norm(&greedy::restricted_truncation(f, a)?)?,
                space.norm(f)?,
            )
        }
        ConstantKind::GammaT => {
            let f = w.f.as_ref().ok_or_else(|| need("f"))?;
            let a = w.set_a.as_ref().ok_or_else(|| need("A"))?;
            (space.norm(&greedy::truncation(f, a)?)?, space.norm(f)?)
        }
    };
    if rhs == 0.0 {
        return Err(Error::DegenerateNorm("witness ratio has zero denominator".into()));
    }
    Ok(lhs / rhs)
}

/// The estimates computed for one space, keyed by kind.
#[derive(Debug, Clone, Default, serde::Serialize, serde::Deserialize)]
pub struct EstimateSet {
    pub estimates: BTreeMap<ConstantKind, ConstantEstimate>,
}

impl EstimateSet {
    pub fn insert(&mut self, e: ConstantEstimate) {
        self.estimates.insert(e.kind, e);
    }

    pub fn get(&self, kind: ConstantKind) -> Option<&ConstantEstimate> {
        self.estimates.get(&kind)
    }

    pub fn value(&self, kind: ConstantKind) -> Option<f64> {
        self.get(kind).map(|e| e.value)
    }
}
