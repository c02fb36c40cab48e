//! Greedy sets, projections, partial sums, indicator sums and the two
//! truncation operators.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use crate::grid::combinations;
use crate::scalar::{sign_of, SignPattern};
use crate::vector::CoeffVector;
use crate::{Error, Result};

/// How coefficient ties are resolved when selecting greedy sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TiePolicy {
    /// Every index set satisfying the greedy-set inequality.
    All,
    /// The single set from the lexicographically-smallest greedy ordering.
    First,
}

/// `A` is a greedy set of `f` iff `min_{n in A} |f_n| >= max_{n not in A} |f_n|`.
pub fn is_greedy_set(f: &CoeffVector, set: &BTreeSet<usize>) -> bool {
    let dim = f.dimension();
    if set.iter().any(|&n| n < 1 || n > dim) {
        return false;
    }
    let min_in = set
        .iter()
        .map(|&n| f.coeff_modulus(n))
        .fold(f64::INFINITY, f64::min);
    let max_out = (1..=dim)
        .filter(|n| !set.contains(n))
        .map(|n| f.coeff_modulus(n))
        .fold(0.0f64, f64::max);
    min_in >= max_out
}

/// All greedy sets of `f` of cardinality `m` (policy `All`), or the single
/// lexicographically-first one (policy `First`).
///
/// Indices outside `supp(f)` can be selected only when `m > |supp(f)|`
/// (zero-coefficient ties); under `First` that padding is taken in
/// increasing index order.
pub fn greedy_sets(f: &CoeffVector, m: usize, ties: TiePolicy) -> Result<Vec<BTreeSet<usize>>> {
    let dim = f.dimension();
    if m > dim {
        return Err(Error::InvalidParameter(format!(
            "greedy order m = {m} exceeds dimension {dim}"
        )));
    }
    if m == 0 {
        return Ok(alloc::vec![BTreeSet::new()]);
    }

    // Moduli sorted descending, index ascending within a tie group.
    let mut order: Vec<usize> = (1..=dim).collect();
    order.sort_by(|&a, &b| {
        f.coeff_modulus(b)
            .partial_cmp(&f.coeff_modulus(a))
            .unwrap()
            .then(a.cmp(&b))
    });
    let threshold = f.coeff_modulus(order[m - 1]);

    let mandatory: Vec<usize> = (1..=dim)
        .filter(|&n| f.coeff_modulus(n) > threshold)
        .collect();
    let tied: Vec<usize> = (1..=dim)
        .filter(|&n| f.coeff_modulus(n) == threshold)
        .collect();
    let need = m - mandatory.len();

    let sets = match ties {
        TiePolicy::First => {
            let mut set: BTreeSet<usize> = mandatory.iter().copied().collect();
            set.extend(tied.iter().take(need).copied());
            alloc::vec![set]
        }
        TiePolicy::All => combinations(&tied, need)
            .into_iter()
            .map(|choice| {
                let mut set: BTreeSet<usize> = mandatory.iter().copied().collect();
                set.extend(choice);
                set
            })
            .collect(),
    };
    debug_assert!(sets.iter().all(|a| a.len() == m && is_greedy_set(f, a)));
    Ok(sets)
}

/// `P_A(f) = sum_{n in A} e_n*(f) e_n`.
pub fn projection(f: &CoeffVector, set: &BTreeSet<usize>) -> Result<CoeffVector> {
    let dim = f.dimension();
    for &n in set {
        if n < 1 || n > dim {
            return Err(Error::IndexOutOfRange { index: n, dimension: dim });
        }
    }
    CoeffVector::from_entries(dim, f.iter().filter(|(n, _)| set.contains(n)))
}

/// `P_{A^c}(f)`.
pub fn complement_projection(f: &CoeffVector, set: &BTreeSet<usize>) -> Result<CoeffVector> {
    let dim = f.dimension();
    for &n in set {
        if n < 1 || n > dim {
            return Err(Error::IndexOutOfRange { index: n, dimension: dim });
        }
    }
    CoeffVector::from_entries(dim, f.iter().filter(|(n, _)| !set.contains(n)))
}

/// `S_k(f) = P_{{1..k}}(f)`.
pub fn partial_sum(f: &CoeffVector, k: usize) -> Result<CoeffVector> {
    if k > f.dimension() {
        return Err(Error::IndexOutOfRange { index: k, dimension: f.dimension() });
    }
    CoeffVector::from_entries(f.dimension(), f.iter().filter(|&(n, _)| n <= k))
}

/// `1_{eps A} = sum_{n in A} eps_n e_n`.
pub fn indicator(dimension: usize, set: &BTreeSet<usize>, eps: &SignPattern) -> Result<CoeffVector> {
    let mut entries = Vec::with_capacity(set.len());
    for &n in set {
        let sign = eps.get(n).ok_or_else(|| {
            Error::ContractViolation(format!("sign pattern misses index {n}"))
        })?;
        entries.push((n, sign));
    }
    CoeffVector::from_entries(dimension, entries)
}

/// `1_A` (all signs `+1`).
pub fn indicator_ones(dimension: usize, set: &BTreeSet<usize>) -> Result<CoeffVector> {
    indicator(dimension, set, &SignPattern::ones(set))
}

/// `G_m(f) = P_A(f)` for the selected greedy set `A`
/// (first in enumeration order under either policy).
pub fn greedy_sum(f: &CoeffVector, m: usize, ties: TiePolicy) -> Result<CoeffVector> {
    let sets = greedy_sets(f, m, ties)?;
    projection(f, &sets[0])
}

fn require_greedy_in_support(f: &CoeffVector, set: &BTreeSet<usize>) -> Result<()> {
    if !is_greedy_set(f, set) {
        return Err(Error::ContractViolation(format!(
            "{set:?} is not a greedy set of the given vector"
        )));
    }
    let supp = f.support();
    if !set.is_subset(&supp) {
        return Err(Error::ContractViolation(
            "truncations require A ⊆ supp(f); zero-padded greedy sets are not allowed".into(),
        ));
    }
    Ok(())
}

/// Restricted truncation `U(f, A) = min_{n in A} |e_n*(f)| · 1_{eps A}`
/// with `eps_n = sgn(e_n*(f))`.
pub fn restricted_truncation(f: &CoeffVector, set: &BTreeSet<usize>) -> Result<CoeffVector> {
    require_greedy_in_support(f, set)?;
    if set.is_empty() {
        return Ok(CoeffVector::zero(f.dimension()));
    }
    let t = set
        .iter()
        .map(|&n| f.coeff_modulus(n))
        .fold(f64::INFINITY, f64::min);
    let entries = set.iter().map(|&n| (n, sign_of(f.coeff(n)) * t));
    CoeffVector::from_entries(f.dimension(), entries)
}

/// Truncation `T(f, A) = U(f, A) + P_{A^c}(f)`.
pub fn truncation(f: &CoeffVector, set: &BTreeSet<usize>) -> Result<CoeffVector> {
    let u = restricted_truncation(f, set)?;
    u.add(&complement_projection(f, set)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[usize]) -> BTreeSet<usize> {
        xs.iter().copied().collect()
    }

    #[test]
    fn strict_ordering_single_set() {
        let f = CoeffVector::dense(&[3.0, 1.0, 2.0]);
        let sets = greedy_sets(&f, 2, TiePolicy::All).unwrap();
        assert_eq!(sets, alloc::vec![set(&[1, 3])]);
    }

    #[test]
    fn tie_yields_two_sets_under_all() {
        let f = CoeffVector::dense(&[1.0, 1.0, 0.0]);
        let sets = greedy_sets(&f, 1, TiePolicy::All).unwrap();
        assert_eq!(sets, alloc::vec![set(&[1]), set(&[2])]);
    }

    #[test]
    fn tie_breaks_lexicographically_under_first() {
        let f = CoeffVector::dense(&[1.0, 1.0, 0.0]);
        let sets = greedy_sets(&f, 1, TiePolicy::First).unwrap();
        assert_eq!(sets, alloc::vec![set(&[1])]);
    }

    #[test]
    fn zero_padding_only_beyond_support() {
        let f = CoeffVector::dense(&[0.0, 2.0, 0.0]);
        // m = 1: only the support index.
        assert_eq!(greedy_sets(&f, 1, TiePolicy::All).unwrap(), alloc::vec![set(&[2])]);
        // m = 2: support plus one zero index, both choices under All.
        let sets = greedy_sets(&f, 2, TiePolicy::All).unwrap();
        assert_eq!(sets, alloc::vec![set(&[1, 2]), set(&[2, 3])]);
        // First pads in increasing index order.
        assert_eq!(greedy_sets(&f, 2, TiePolicy::First).unwrap(), alloc::vec![set(&[1, 2])]);
    }

    #[test]
    fn projection_and_partial_sum_examples() {
        let f = CoeffVector::dense(&[3.0, 1.0, 2.0]);
        assert_eq!(projection(&f, &set(&[2])).unwrap(), CoeffVector::dense(&[0.0, 1.0, 0.0]));
        assert!(partial_sum(&f, 0).unwrap().is_zero());
        assert_eq!(
            greedy_sum(&f, 2, TiePolicy::All).unwrap(),
            CoeffVector::dense(&[3.0, 0.0, 2.0])
        );
    }

    #[test]
    fn projection_is_idempotent() {
        let f = CoeffVector::dense(&[3.0, -1.0, 2.0, 0.5]);
        let a = set(&[1, 4]);
        let once = projection(&f, &a).unwrap();
        assert_eq!(projection(&once, &a).unwrap(), once);
    }

    #[test]
    fn partial_sums_compose_by_min() {
        let f = CoeffVector::dense(&[3.0, -1.0, 2.0, 0.5]);
        for k in 0..=4 {
            for j in 0..=4 {
                let a = partial_sum(&partial_sum(&f, j).unwrap(), k).unwrap();
                let b = partial_sum(&f, k.min(j)).unwrap();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn restricted_truncation_examples() {
        let f = CoeffVector::dense(&[3.0, -1.0, 2.0]);
        assert_eq!(
            restricted_truncation(&f, &set(&[1, 3])).unwrap(),
            CoeffVector::dense(&[2.0, 0.0, 2.0])
        );
        assert_eq!(
            restricted_truncation(&f, &set(&[1])).unwrap(),
            CoeffVector::dense(&[3.0, 0.0, 0.0])
        );
        let flat = CoeffVector::dense(&[1.0, 1.0]);
        assert_eq!(restricted_truncation(&flat, &set(&[1, 2])).unwrap(), flat);
    }

    #[test]
    fn truncation_examples() {
        let f = CoeffVector::dense(&[3.0, -1.0, 2.0]);
        assert_eq!(
            truncation(&f, &set(&[1, 3])).unwrap(),
            CoeffVector::dense(&[2.0, -1.0, 2.0])
        );
        // min over A equals the coefficient itself -> identity
        let g = CoeffVector::dense(&[4.0, 1.0]);
        assert_eq!(truncation(&g, &set(&[1])).unwrap(), g);
        // flat vector, A = supp(f) -> identity
        let flat = CoeffVector::dense(&[1.0, -1.0, 1.0]);
        assert_eq!(truncation(&flat, &set(&[1, 2, 3])).unwrap(), flat);
    }

    #[test]
    fn truncation_rejects_non_greedy_set() {
        let f = CoeffVector::dense(&[3.0, -1.0, 2.0]);
        assert!(restricted_truncation(&f, &set(&[2])).is_err());
    }

    #[test]
    fn truncation_rejects_padded_set() {
        let f = CoeffVector::dense(&[3.0, 0.0]);
        // {1,2} is a greedy set of f but contains a zero coefficient.
        assert!(is_greedy_set(&f, &set(&[1, 2])));
        assert!(restricted_truncation(&f, &set(&[1, 2])).is_err());
    }

    #[test]
    fn indicator_support_is_the_set() {
        let a = set(&[2, 4]);
        let ind = indicator_ones(5, &a).unwrap();
        assert_eq!(ind.support(), a);
    }
}
