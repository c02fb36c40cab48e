//! Independent brute-force oracles for every constant estimator.
//!
//! The oracles below work on dense `Vec<f64>` vectors and bitmask index
//! sets, share no code with the library (norms are recomputed from the
//! defining formulas with `f64::powf`), and enumerate the same finite
//! universe directly from the definitions. Estimator values must agree
//! with the oracle to 1e-12 relative.

use pgreedy_core::constants::{estimate, ConstantKind};
use pgreedy_core::grid::GridSpec;
use pgreedy_core::{Field, PSpace, SignSet};

const DIM: usize = 3;
const VALS: [f64; 5] = [0.0, 0.5, 1.0, -0.5, -1.0];

/// Oracle-side space: weighted l_p, optionally augmented with the
/// max-of-running-sums term.
struct OSpace {
    p: f64,
    weights: Vec<f64>,
    summing: bool,
}

impl OSpace {
    fn norm(&self, f: &[f64]) -> f64 {
        let mut s: f64 = f
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * x.abs().powf(self.p))
            .sum();
        if self.summing {
            let mut run = 0.0f64;
            let mut best = 0.0f64;
            for &x in f {
                run += x;
                best = best.max(run.abs());
            }
            s += best.powf(self.p);
        }
        s.powf(1.0 / self.p)
    }
}

fn all_vectors() -> Vec<Vec<f64>> {
    let mut out = Vec::new();
    let n = VALS.len();
    for code in 0..n.pow(DIM as u32) {
        let mut c = code;
        let mut v = vec![0.0; DIM];
        for x in v.iter_mut() {
            *x = VALS[c % n];
            c /= n;
        }
        out.push(v);
    }
    out
}

fn support_mask(f: &[f64]) -> u32 {
    f.iter()
        .enumerate()
        .filter(|(_, &x)| x != 0.0)
        .fold(0, |m, (i, _)| m | 1 << i)
}

fn is_greedy(f: &[f64], a: u32) -> bool {
    let min_in = (0..DIM)
        .filter(|i| a >> i & 1 == 1)
        .map(|i| f[i].abs())
        .fold(f64::INFINITY, f64::min);
    let max_out = (0..DIM)
        .filter(|i| a >> i & 1 == 0)
        .map(|i| f[i].abs())
        .fold(0.0f64, f64::max);
    min_in >= max_out
}

fn proj(f: &[f64], a: u32) -> Vec<f64> {
    (0..DIM)
        .map(|i| if a >> i & 1 == 1 { f[i] } else { 0.0 })
        .collect()
}

/// `f - S_k(f)`: zero out coordinates `1..=k` (1-based).
fn tail(f: &[f64], k: usize) -> Vec<f64> {
    (0..DIM).map(|i| if i < k { 0.0 } else { f[i] }).collect()
}

fn add(f: &[f64], g: &[f64]) -> Vec<f64> {
    f.iter().zip(g).map(|(a, b)| a + b).collect()
}

fn sub(f: &[f64], g: &[f64]) -> Vec<f64> {
    f.iter().zip(g).map(|(a, b)| a - b).collect()
}

/// All `±1`-signed indicators of the bitmask `b`.
fn signed_indicators(b: u32) -> Vec<Vec<f64>> {
    let idx: Vec<usize> = (0..DIM).filter(|i| b >> i & 1 == 1).collect();
    let mut out = Vec::new();
    for code in 0..1usize << idx.len() {
        let mut v = vec![0.0; DIM];
        for (j, &i) in idx.iter().enumerate() {
            v[i] = if code >> j & 1 == 1 { -1.0 } else { 1.0 };
        }
        out.push(v);
    }
    out
}

fn ratio(lhs: f64, rhs: f64) -> Option<f64> {
    if rhs == 0.0 {
        assert_eq!(lhs, 0.0, "oracle hit an infinite ratio");
        None
    } else {
        Some(lhs / rhs)
    }
}

fn min_support_index(f: &[f64]) -> Option<usize> {
    (0..DIM).find(|&i| f[i] != 0.0)
}

fn oracle_cqg(s: &OSpace) -> f64 {
    let mut best = 0.0f64;
    for f in all_vectors() {
        if support_mask(&f) == 0 {
            continue;
        }
        let nf = s.norm(&f);
        for a in 0..1u32 << DIM {
            if is_greedy(&f, a) {
                if let Some(r) = ratio(s.norm(&proj(&f, a)), nf) {
                    best = best.max(r);
                }
            }
        }
    }
    best
}

fn oracle_cql(s: &OSpace) -> f64 {
    let mut best = 0.0f64;
    for f in all_vectors() {
        let free = !support_mask(&f) & ((1 << DIM) - 1);
        for a in 1..1u32 << DIM {
            if a & !free != 0 {
                continue;
            }
            for ind in signed_indicators(a) {
                if let Some(r) = ratio(s.norm(&ind), s.norm(&add(&f, &ind))) {
                    best = best.max(r);
                }
            }
        }
    }
    best
}

fn oracle_cpg(s: &OSpace) -> f64 {
    let mut best = 0.0f64;
    for f in all_vectors() {
        if support_mask(&f) == 0 {
            continue;
        }
        let tails: Vec<f64> = (0..=DIM).map(|k| s.norm(&tail(&f, k))).collect();
        for a in 0..1u32 << DIM {
            if !is_greedy(&f, a) {
                continue;
            }
            let m = a.count_ones() as usize;
            let denom = tails[..=m].iter().copied().fold(f64::INFINITY, f64::min);
            let lhs = s.norm(&sub(&f, &proj(&f, a)));
            let r = match ratio(lhs, denom) {
                Some(r) => r,
                None => 1.0,
            };
            best = best.max(r);
        }
    }
    best
}

fn oracle_d(s: &OSpace) -> f64 {
    let vecs = all_vectors();
    let mut best = 0.0f64;
    for f in &vecs {
        let supp_f = support_mask(f);
        if supp_f == 0 {
            continue;
        }
        let nf = s.norm(f);
        let max_f = f.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        for z in &vecs {
            let supp_z = support_mask(z);
            if supp_z & supp_f != 0 {
                continue;
            }
            let min_mod_z = (0..DIM)
                .filter(|i| supp_z >> i & 1 == 1)
                .map(|i| z[i].abs())
                .fold(f64::INFINITY, f64::min);
            if min_mod_z < max_f {
                continue;
            }
            let k_max = match min_support_index(z) {
                None => 0,
                Some(i0) => i0.min(supp_z.count_ones() as usize),
            };
            for k in 0..=k_max {
                if let Some(r) = ratio(nf, s.norm(&add(&tail(f, k), z))) {
                    best = best.max(r);
                }
            }
        }
    }
    best
}

fn oracle_conservative(s: &OSpace, with_signs: bool) -> f64 {
    let mut best = 0.0f64;
    for a in 1..1u32 << DIM {
        let max_a = 31 - a.leading_zeros();
        for b in 1..1u32 << DIM {
            let min_b = b.trailing_zeros();
            if min_b <= max_a || b.count_ones() < a.count_ones() {
                continue;
            }
            let inds_a = if with_signs {
                signed_indicators(a)
            } else {
                vec![proj(&vec![1.0; DIM], a)]
            };
            let inds_b = if with_signs {
                signed_indicators(b)
            } else {
                vec![proj(&vec![1.0; DIM], b)]
            };
            for ia in &inds_a {
                for ib in &inds_b {
                    if let Some(r) = ratio(s.norm(ia), s.norm(ib)) {
                        best = best.max(r);
                    }
                }
            }
        }
    }
    best
}

fn oracle_delta_pl(s: &OSpace) -> f64 {
    let mut best = 0.0f64;
    for f in all_vectors() {
        let supp_f = support_mask(&f);
        let free = !supp_f & ((1 << DIM) - 1);
        for b in 0..1u32 << DIM {
            if b & !free != 0 {
                continue;
            }
            let occupied = supp_f | b;
            let floor = if occupied == 0 {
                DIM
            } else {
                occupied.trailing_zeros() as usize
            };
            let below = (1u32 << floor) - 1;
            for a in 0..1u32 << DIM {
                if a & !below != 0 || a.count_ones() > b.count_ones() {
                    continue;
                }
                for ib in signed_indicators(b) {
                    let rhs = s.norm(&add(&f, &ib));
                    for ia in signed_indicators(a) {
                        if let Some(r) = ratio(s.norm(&add(&f, &ia)), rhs) {
                            best = best.max(r);
                        }
                    }
                }
            }
        }
    }
    best
}

fn oracle_c_three(s: &OSpace) -> f64 {
    let mut best = 0.0f64;
    for f in all_vectors() {
        let supp_f = support_mask(&f);
        if supp_f == 0 {
            continue;
        }
        let nf = s.norm(&f);
        let free = !supp_f & ((1 << DIM) - 1);
        for b in 1..1u32 << DIM {
            if b & !free != 0 {
                continue;
            }
            let min_b = b.trailing_zeros() as usize; // 0-based
            let k_max = min_b.min(b.count_ones() as usize);
            for ind in signed_indicators(b) {
                for k in 0..=k_max {
                    if let Some(r) = ratio(nf, s.norm(&add(&tail(&f, k), &ind))) {
                        best = best.max(r);
                    }
                }
            }
        }
    }
    best
}

fn oracle_truncation(s: &OSpace, full: bool) -> f64 {
    let mut best = if full { 1.0f64 } else { 0.0f64 }; // T(f, ∅) = f
    for f in all_vectors() {
        let supp_f = support_mask(&f);
        if supp_f == 0 {
            continue;
        }
        let nf = s.norm(&f);
        for a in 1..1u32 << DIM {
            if a & !supp_f != 0 || !is_greedy(&f, a) {
                continue;
            }
            let t = (0..DIM)
                .filter(|i| a >> i & 1 == 1)
                .map(|i| f[i].abs())
                .fold(f64::INFINITY, f64::min);
            let u: Vec<f64> = (0..DIM)
                .map(|i| {
                    if a >> i & 1 == 1 {
                        t * f[i].signum()
                    } else {
                        0.0
                    }
                })
                .collect();
            let image = if full {
                add(&u, &proj(&f, !a & ((1 << DIM) - 1)))
            } else {
                u
            };
            if let Some(r) = ratio(s.norm(&image), nf) {
                best = best.max(r);
            }
        }
    }
    best
}

fn oracle_value(kind: ConstantKind, s: &OSpace) -> f64 {
    match kind {
        ConstantKind::Cqg => oracle_cqg(s),
        ConstantKind::Cql => oracle_cql(s),
        ConstantKind::Cpg => oracle_cpg(s),
        ConstantKind::D => oracle_d(s),
        ConstantKind::Delta => oracle_conservative(s, false),
        ConstantKind::DeltaS => oracle_conservative(s, true),
        ConstantKind::DeltaPl => oracle_delta_pl(s),
        ConstantKind::GammaU => oracle_truncation(s, false),
        ConstantKind::GammaT => oracle_truncation(s, true),
        ConstantKind::CThree => oracle_c_three(s),
    }
}

fn grid() -> GridSpec {
    GridSpec::new(DIM, vec![0.0, 0.5, 1.0], SignSet::Real, DIM, true).unwrap()
}

fn check_space(space: &PSpace, oracle: &OSpace) {
    let g = grid();
    for kind in ConstantKind::ALL {
        let est = estimate(kind, space, &g).unwrap();
        let want = oracle_value(kind, oracle);
        assert!(
            (est.value - want).abs() <= 1e-12 * want.abs().max(1.0),
            "{}: estimator {} vs oracle {}",
            kind.symbol(),
            est.value,
            want
        );
    }
}

#[test]
fn oracle_agrees_on_canonical_l1() {
    let space = PSpace::canonical_lp(DIM, 1.0, Field::Real).unwrap();
    let oracle = OSpace { p: 1.0, weights: vec![1.0; DIM], summing: false };
    check_space(&space, &oracle);
}

#[test]
fn oracle_agrees_on_canonical_l_half() {
    let space = PSpace::canonical_lp(DIM, 0.5, Field::Real).unwrap();
    let oracle = OSpace { p: 0.5, weights: vec![1.0; DIM], summing: false };
    check_space(&space, &oracle);
}

#[test]
fn oracle_agrees_on_dyadic_weighted_l1() {
    let space = PSpace::dyadic_weighted_lp(DIM, 1.0, Field::Real).unwrap();
    let oracle = OSpace { p: 1.0, weights: vec![1.0, 0.5, 0.25], summing: false };
    check_space(&space, &oracle);
}

#[test]
fn oracle_agrees_on_dyadic_weighted_l_half() {
    let space = PSpace::dyadic_weighted_lp(DIM, 0.5, Field::Real).unwrap();
    let oracle = OSpace { p: 0.5, weights: vec![1.0, 0.5, 0.25], summing: false };
    check_space(&space, &oracle);
}

#[test]
fn oracle_agrees_on_summing_augmented_l1() {
    let space = PSpace::summing_augmented(DIM, 1.0, Field::Real).unwrap();
    let oracle = OSpace { p: 1.0, weights: vec![1.0; DIM], summing: true };
    check_space(&space, &oracle);
}

#[test]
fn oracle_agrees_on_summing_augmented_l_half() {
    let space = PSpace::summing_augmented(DIM, 0.5, Field::Real).unwrap();
    let oracle = OSpace { p: 0.5, weights: vec![1.0; DIM], summing: true };
    check_space(&space, &oracle);
}
