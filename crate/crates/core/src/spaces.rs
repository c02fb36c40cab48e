//! p-normed finite-dimensional spaces, their geometric constants, and the
//! sampled axiom / convexity-bound checkers.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::grid::subsets_of;
use crate::scalar::{modulus, sign_patterns, Field, Scalar, SignSet};
use crate::vector::CoeffVector;
use crate::{Error, Result};

/// `x^p` for `x >= 0`, special-cased at the exponents used throughout so
/// dyadic inputs stay exact at `p = 1` and precise at `p = 1/2`.
pub(crate) fn powp(x: f64, p: f64) -> f64 {
    if p == 1.0 {
        x
    } else if p == 0.5 {
        libm::sqrt(x)
    } else if p == 2.0 {
        x * x
    } else {
        libm::pow(x, p)
    }
}

/// How a space's p-norm is evaluated on coefficient vectors.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NormSpec {
    /// `(sum_n w_n |f_n|^p)^{1/p}`.
    WeightedLp { weights: Vec<f64> },
    /// `(sum_n w_n |f_n|^p + max_k |sum_{i<=k} f_i|^p)^{1/p}` — a conditional
    /// (summing-type) companion of the weighted space.
    SummingAugmentedLp { weights: Vec<f64> },
    /// Weighted-`l_p` norm of `M f` for an invertible square matrix `M`
    /// (row-major); changes the norm, not the basis vectors.
    MatrixNorm { matrix: Vec<Vec<f64>>, weights: Vec<f64> },
}

/// A finite-dimensional space `(X, ‖·‖)` with its canonical coordinate basis.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct PSpace {
    pub dimension: usize,
    pub p: f64,
    pub field: Field,
    pub norm_spec: NormSpec,
}

impl PSpace {
    pub fn new(dimension: usize, p: f64, field: Field, norm_spec: NormSpec) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::InvalidParameter("dimension must be positive".into()));
        }
        if !(p > 0.0 && p <= 1.0) {
            return Err(Error::InvalidParameter(format!("p = {p} outside (0, 1]")));
        }
        let weights_len = match &norm_spec {
            NormSpec::WeightedLp { weights } | NormSpec::SummingAugmentedLp { weights } => {
                weights.len()
            }
            NormSpec::MatrixNorm { matrix, weights } => {
                if matrix.len() != dimension || matrix.iter().any(|row| row.len() != dimension) {
                    return Err(Error::InvalidParameter(format!(
                        "matrix must be {dimension}x{dimension}"
                    )));
                }
                weights.len()
            }
        };
        if weights_len != dimension {
            return Err(Error::DimensionMismatch {
                expected: dimension,
                got: weights_len,
            });
        }
        Ok(PSpace {
            dimension,
            p,
            field,
            norm_spec,
        })
    }

    /// Unweighted `l_p` of the given dimension.
    pub fn canonical_lp(dimension: usize, p: f64, field: Field) -> Result<Self> {
        Self::new(
            dimension,
            p,
            field,
            NormSpec::WeightedLp {
                weights: alloc::vec![1.0; dimension],
            },
        )
    }

    /// Weighted `l_p` with dyadic weights `w_n = 2^{1-n}`.
    pub fn dyadic_weighted_lp(dimension: usize, p: f64, field: Field) -> Result<Self> {
        let weights = (0..dimension).map(|i| libm::exp2(-(i as f64))).collect();
        Self::new(dimension, p, field, NormSpec::WeightedLp { weights })
    }

    /// Unweighted summing-augmented `l_p`.
    pub fn summing_augmented(dimension: usize, p: f64, field: Field) -> Result<Self> {
        Self::new(
            dimension,
            p,
            field,
            NormSpec::SummingAugmentedLp {
                weights: alloc::vec![1.0; dimension],
            },
        )
    }

    /// Evaluate `‖f‖`.
    pub fn norm(&self, f: &CoeffVector) -> Result<f64> {
        if f.dimension() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                got: f.dimension(),
            });
        }
        let p = self.p;
        match &self.norm_spec {
            NormSpec::WeightedLp { weights } => {
                let s: f64 = f
                    .iter()
                    .map(|(n, c)| weights[n - 1] * powp(modulus(c), p))
                    .sum();
                Ok(powp(s, 1.0 / p))
            }
            NormSpec::SummingAugmentedLp { weights } => {
                let mut s: f64 = f
                    .iter()
                    .map(|(n, c)| weights[n - 1] * powp(modulus(c), p))
                    .sum();
                let mut partial = Scalar::new(0.0, 0.0);
                let mut best = 0.0f64;
                for n in 1..=self.dimension {
                    partial += f.coeff(n);
                    best = best.max(modulus(partial));
                }
                s += powp(best, p);
                Ok(powp(s, 1.0 / p))
            }
            NormSpec::MatrixNorm { matrix, weights } => {
                let mut s = 0.0;
                for (row, &w) in matrix.iter().zip(weights.iter()) {
                    let mut y = Scalar::new(0.0, 0.0);
                    for (n, c) in f.iter() {
                        y += c * row[n - 1];
                    }
                    s += w * powp(modulus(y), p);
                }
                Ok(powp(s, 1.0 / p))
            }
        }
    }
}

/// The geometric constants attached to the exponent `p` and the field.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct GeomConstants {
    pub p: f64,
    pub a_p: f64,
    pub b_p: f64,
}

/// `A_p = (2^p - 1)^{-1/p}` and `B_p = 2^{1/p} A_p` (real) or `4^{1/p} A_p`
/// (complex).
pub fn geom_constants(p: f64, field: Field) -> Result<GeomConstants> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::InvalidParameter(format!("p = {p} outside (0, 1]")));
    }
    let a_p = powp(libm::pow(2.0, p) - 1.0, -1.0 / p);
    let base: f64 = match field {
        Field::Real => 2.0,
        Field::Complex => 4.0,
    };
    let b_p = libm::pow(base, 1.0 / p) * a_p;
    Ok(GeomConstants { p, a_p, b_p })
}

/// Golden-section minimization of a unimodal function on `(lo, hi)`,
/// to absolute tolerance `tol` in the argument.
pub fn golden_section_min(mut lo: f64, mut hi: f64, tol: f64, f: impl Fn(f64) -> f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    let x = 0.5 * (lo + hi);
    (x, f(x))
}

/// `eta_p(u) = min_{0<t<1} (1-t^p)^{-1/p} (1 - (1 + A_p^{-1} u^{-1} t)^{-p})^{-1/p}`.
///
/// The objective is unimodal on every sampled `(p, u)`; golden-section on
/// `(1e-9, 1-1e-9)` to `1e-9` in `t`. A dense-grid cross-check lives in tests.
pub fn eta_p(p: f64, u: f64) -> Result<f64> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::InvalidParameter(format!("p = {p} outside (0, 1]")));
    }
    if !(u > 0.0) {
        return Err(Error::InvalidParameter(format!("u = {u} must be positive")));
    }
    let a_p = geom_constants(p, Field::Real)?.a_p;
    let obj = |t: f64| eta_objective(p, u, a_p, t);
    let (_, val) = golden_section_min(1e-9, 1.0 - 1e-9, 1e-9, obj);
    Ok(val)
}

pub(crate) fn eta_objective(p: f64, u: f64, a_p: f64, t: f64) -> f64 {
    let first = powp(1.0 - powp(t, p), -1.0 / p);
    let inner = 1.0 - libm::pow(1.0 + t / (a_p * u), -p);
    first * powp(inner, -1.0 / p)
}

/// Outcome of the sampled quasi-norm axiom check.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct AxiomReport {
    pub samples: usize,
    pub positivity_ok: bool,
    pub homogeneity_ok: bool,
    pub p_triangle_ok: bool,
    /// Worst violations observed (negative slack means failure).
    pub worst_homogeneity_rel_err: f64,
    pub worst_triangle_slack: f64,
    /// `sup_n max(‖e_n‖, ‖e_n*‖)` — the semi-normalization bound;
    /// `‖e_n*‖` is measured as a sampled supremum of `|f_n| / ‖f‖`.
    pub basis_bound: f64,
    /// First counterexample, if any, rendered for the report.
    pub counterexample: Option<String>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.positivity_ok && self.homogeneity_ok && self.p_triangle_ok
    }
}

/// Draw `sample_count` random pairs `(f, g)` and scalars `t`, and test
/// positivity, homogeneity (relative error <= 1e-12) and the p-triangle
/// inequality (slack >= -1e-12). Failures are reported, not raised.
pub fn check_axioms(space: &PSpace, sample_count: usize, seed: u64) -> Result<AxiomReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = space.dimension;
    let p = space.p;

    let mut report = AxiomReport {
        samples: sample_count,
        positivity_ok: true,
        homogeneity_ok: true,
        p_triangle_ok: true,
        worst_homogeneity_rel_err: 0.0,
        worst_triangle_slack: f64::INFINITY,
        basis_bound: 0.0,
        counterexample: None,
    };

    let note = |report: &mut AxiomReport, msg: String| {
        if report.counterexample.is_none() {
            report.counterexample = Some(msg);
        }
    };

    for n in 1..=dim {
        let e_n = CoeffVector::basis(dim, n)?;
        report.basis_bound = report.basis_bound.max(space.norm(&e_n)?);
    }

    let mut dual_sup = alloc::vec![0.0f64; dim];
    for _ in 0..sample_count {
        let f = random_vector(space, &mut rng);
        let g = random_vector(space, &mut rng);
        let nf = space.norm(&f)?;
        let ng = space.norm(&g)?;

        if !f.is_zero() && !(nf > 0.0) {
            report.positivity_ok = false;
            note(&mut report, format!("positivity: ‖f‖ = {nf} for nonzero f = {f:?}"));
        }

        for (n, s) in dual_sup.iter_mut().enumerate() {
            if nf > 0.0 {
                *s = s.max(f.coeff_modulus(n + 1) / nf);
            }
        }

        let t: f64 = rng.gen_range(-3.0..3.0);
        let tf = f.scale(Scalar::new(t, 0.0));
        let ntf = space.norm(&tf)?;
        let expected = libm::fabs(t) * nf;
        let rel = if expected > 0.0 {
            libm::fabs(ntf - expected) / expected
        } else {
            ntf
        };
        report.worst_homogeneity_rel_err = report.worst_homogeneity_rel_err.max(rel);
        if rel > 1e-12 {
            report.homogeneity_ok = false;
            note(&mut report, format!("homogeneity: t = {t}, rel err = {rel}"));
        }

        let sum = f.add(&g)?;
        let nsum = space.norm(&sum)?;
        let slack = powp(nf, p) + powp(ng, p) - powp(nsum, p);
        report.worst_triangle_slack = report.worst_triangle_slack.min(slack);
        if slack < -1e-12 {
            report.p_triangle_ok = false;
            note(
                &mut report,
                format!("p-triangle: slack {slack} for f = {f:?}, g = {g:?}"),
            );
        }
    }

    for s in dual_sup {
        report.basis_bound = report.basis_bound.max(s);
    }
    Ok(report)
}

fn random_vector(space: &PSpace, rng: &mut ChaCha8Rng) -> CoeffVector {
    let dim = space.dimension;
    let mut entries = Vec::new();
    for n in 1..=dim {
        if rng.gen_bool(0.75) {
            let re: f64 = rng.gen_range(-2.0..2.0);
            let im = match space.field {
                Field::Real => 0.0,
                Field::Complex => rng.gen_range(-2.0..2.0),
            };
            entries.push((n, Scalar::new(re, im)));
        }
    }
    CoeffVector::from_entries(dim, entries).expect("indices in range")
}

/// One line of a convexity-bound check.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ConvexityLine {
    pub item: char,
    pub lhs: f64,
    pub rhs: f64,
    pub ok: bool,
}

/// Exhaustively verify the three convexity bounds tying arbitrary scalar
/// multipliers on `J` to suprema over subsets / sign patterns of `J`:
///
/// a) `‖g + sum a_n e_n‖ <= A_p sup_{A ⊆ J} ‖g + 1_A‖` for `a_n in [0,1]`,
/// b) `‖g + sum a_n e_n‖ <= A_p sup_{eps} ‖g + 1_{eps J}‖` for `|a_n| <= 1`,
/// c) `‖sum a_n e_n‖ <= B_p sup_{A ⊆ J} ‖1_A‖` for `|a_n| <= 1`.
///
/// Slack must be `>= -1e-12` after normalizing by `max(1, rhs)`.
pub fn check_convexity_bounds(
    space: &PSpace,
    g: &CoeffVector,
    j_set: &BTreeSet<usize>,
    coeffs: &[Scalar],
) -> Result<Vec<ConvexityLine>> {
    const ENUM_CAP: usize = 20;
    if j_set.len() > ENUM_CAP {
        return Err(Error::SizeCapExceeded {
            size: j_set.len(),
            cap: ENUM_CAP,
        });
    }
    if coeffs.len() != j_set.len() {
        return Err(Error::InvalidParameter(
            "one coefficient required per index of J".into(),
        ));
    }
    if j_set.iter().any(|n| g.coeff_modulus(*n) != 0.0) {
        return Err(Error::ContractViolation(
            "J must be disjoint from supp(g)".into(),
        ));
    }
    for c in coeffs {
        if modulus(*c) > 1.0 + 1e-12 {
            return Err(Error::ContractViolation(
                "coefficients must have modulus at most 1".into(),
            ));
        }
    }

    let geom = geom_constants(space.p, space.field)?;
    let dim = space.dimension;
    let perturbed = {
        let pairs = j_set.iter().zip(coeffs.iter()).map(|(&n, &c)| (n, c));
        g.add(&CoeffVector::from_entries(dim, pairs)?)?
    };
    let lhs_gj = space.norm(&perturbed)?;

    // a) supremum over subsets of J, indicators added to g.
    let mut sup_a = 0.0f64;
    for a in subsets_of(j_set) {
        let ind = CoeffVector::from_entries(dim, a.iter().map(|&n| (n, Scalar::new(1.0, 0.0))))?;
        sup_a = sup_a.max(space.norm(&g.add(&ind)?)?);
    }

    // b) supremum over full sign patterns on J.
    let signs = SignSet::for_field(space.field);
    let mut sup_b = 0.0f64;
    for eps in sign_patterns(j_set, &signs) {
        let ind = CoeffVector::from_entries(dim, eps.iter())?;
        sup_b = sup_b.max(space.norm(&g.add(&ind)?)?);
    }

    // c) supremum over subset indicators alone.
    let mut sup_c = 0.0f64;
    for a in subsets_of(j_set) {
        let ind = CoeffVector::from_entries(dim, a.iter().map(|&n| (n, Scalar::new(1.0, 0.0))))?;
        sup_c = sup_c.max(space.norm(&ind)?);
    }
    let lhs_c = {
        let pairs = j_set.iter().zip(coeffs.iter()).map(|(&n, &c)| (n, c));
        space.norm(&CoeffVector::from_entries(dim, pairs)?)?
    };

    let a_applicable = coeffs.iter().all(|c| c.im == 0.0 && c.re >= 0.0 && c.re <= 1.0);
    let mut out = Vec::new();
    let check = |lhs: f64, rhs: f64| rhs - lhs >= -1e-12 * rhs.max(1.0);
    if a_applicable {
        let rhs = geom.a_p * sup_a;
        out.push(ConvexityLine { item: 'a', lhs: lhs_gj, rhs, ok: check(lhs_gj, rhs) });
    }
    let rhs_b = geom.a_p * sup_b;
    out.push(ConvexityLine { item: 'b', lhs: lhs_gj, rhs: rhs_b, ok: check(lhs_gj, rhs_b) });
    let rhs_c = geom.b_p * sup_c;
    out.push(ConvexityLine { item: 'c', lhs: lhs_c, rhs: rhs_c, ok: check(lhs_c, rhs_c) });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn l1(dim: usize) -> PSpace {
        PSpace::canonical_lp(dim, 1.0, Field::Real).unwrap()
    }

    #[test]
    fn l1_norm_is_the_sum() {
        let f = CoeffVector::dense(&[3.0, 1.0, 2.0]);
        assert_eq!(l1(3).norm(&f).unwrap(), 6.0);
    }

    #[test]
    fn weighted_single_weight_readoff() {
        let space = PSpace::new(
            3,
            1.0,
            Field::Real,
            NormSpec::WeightedLp { weights: vec![1.0, 0.5, 0.25] },
        )
        .unwrap();
        let e3 = CoeffVector::basis(3, 3).unwrap();
        assert_eq!(space.norm(&e3).unwrap(), 0.25);
    }

    #[test]
    fn summing_augmented_hand_value() {
        // f = (1, -1): lp part 2, running sums |1|, |0| -> max 1, total 3.
        let space = PSpace::summing_augmented(2, 1.0, Field::Real).unwrap();
        let f = CoeffVector::dense(&[1.0, -1.0]);
        assert_eq!(space.norm(&f).unwrap(), 3.0);
    }

    #[test]
    fn geom_constants_p1() {
        let g = geom_constants(1.0, Field::Real).unwrap();
        assert_eq!(g.a_p, 1.0);
        assert_eq!(g.b_p, 2.0);
        let gc = geom_constants(1.0, Field::Complex).unwrap();
        assert_eq!(gc.b_p, 4.0);
    }

    #[test]
    fn geom_constants_half() {
        // A_{1/2} = (sqrt(2) - 1)^{-2}
        let g = geom_constants(0.5, Field::Real).unwrap();
        let expected = libm::pow(libm::sqrt(2.0) - 1.0, -2.0);
        assert!((g.a_p - expected).abs() < 1e-12);
        assert!((g.b_p - 4.0 * expected).abs() < 1e-11);
    }

    #[test]
    fn geom_rejects_bad_p() {
        assert!(geom_constants(0.0, Field::Real).is_err());
        assert!(geom_constants(1.5, Field::Real).is_err());
    }

    #[test]
    fn eta_1_1_closed_form() {
        // minimizer t = sqrt(2) - 1, value 3 + 2 sqrt(2)
        let v = eta_p(1.0, 1.0).unwrap();
        assert!((v - (3.0 + 2.0 * libm::sqrt(2.0))).abs() < 1e-9);
    }

    #[test]
    fn eta_nondecreasing_in_u() {
        for p in [1.0, 0.5, 0.25] {
            let mut prev = 0.0;
            for u in [0.5, 1.0, 2.0, 4.0, 16.0] {
                let v = eta_p(p, u).unwrap();
                assert!(v >= prev - 1e-9, "eta_{p}({u}) decreased");
                prev = v;
            }
        }
    }

    #[test]
    fn axioms_pass_on_weighted_lp() {
        let r = check_axioms(&l1(4), 2000, 7).unwrap();
        assert!(r.passed(), "{:?}", r.counterexample);
    }

    #[test]
    fn axioms_pass_on_summing_augmented_half() {
        let space = PSpace::summing_augmented(4, 0.5, Field::Real).unwrap();
        let r = check_axioms(&space, 2000, 7).unwrap();
        assert!(r.passed(), "{:?}", r.counterexample);
    }

    #[test]
    fn corrupted_weight_fails_positivity() {
        let space = PSpace::new(
            3,
            1.0,
            Field::Real,
            NormSpec::WeightedLp { weights: vec![1.0, 0.0, 1.0] },
        )
        .unwrap();
        let r = check_axioms(&space, 500, 7).unwrap();
        assert!(!r.positivity_ok);
        assert!(!r.passed());
    }

    #[test]
    fn convexity_hand_example() {
        // l1, g = 5 e1, J = {2,3}, a = (0.5, 0.25): lhs = 5.75, rhs item a = 7.
        let g = CoeffVector::dense(&[5.0, 0.0, 0.0]);
        let j: BTreeSet<usize> = [2, 3].into_iter().collect();
        let coeffs = [Scalar::new(0.5, 0.0), Scalar::new(0.25, 0.0)];
        let lines = check_convexity_bounds(&l1(3), &g, &j, &coeffs).unwrap();
        let a = lines.iter().find(|l| l.item == 'a').unwrap();
        assert!((a.lhs - 5.75).abs() < 1e-12);
        assert!((a.rhs - 7.0).abs() < 1e-12);
        assert!(lines.iter().all(|l| l.ok));
    }

    #[test]
    fn convexity_rejects_overlapping_support() {
        let g = CoeffVector::dense(&[5.0, 0.0, 0.0]);
        let j: BTreeSet<usize> = [1, 2].into_iter().collect();
        let coeffs = [Scalar::new(0.5, 0.0), Scalar::new(0.25, 0.0)];
        assert!(check_convexity_bounds(&l1(3), &g, &j, &coeffs).is_err());
    }
}
