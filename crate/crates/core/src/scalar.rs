//! Scalars, fields and unimodular sign sets.

use alloc::collections::BTreeMap;
use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::{Error, Result};

/// Coefficients are stored as complex doubles; real-field spaces simply keep
/// the imaginary part at exactly `0.0`, so real arithmetic stays bit-exact.
pub type Scalar = num_complex::Complex64;

/// Scalar field of a space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Complex,
}

/// Modulus of a scalar. Exact for real and purely imaginary values.
pub fn modulus(c: Scalar) -> f64 {
    if c.im == 0.0 {
        libm::fabs(c.re)
    } else if c.re == 0.0 {
        libm::fabs(c.im)
    } else {
        libm::hypot(c.re, c.im)
    }
}

/// `sgn(c) = c / |c|`, with `sgn(0) = 1` by convention.
pub fn sign_of(c: Scalar) -> Scalar {
    let m = modulus(c);
    if m == 0.0 {
        Scalar::new(1.0, 0.0)
    } else if c.im == 0.0 {
        Scalar::new(if c.re >= 0.0 { 1.0 } else { -1.0 }, 0.0)
    } else {
        c / m
    }
}

/// A finite set of unimodular scalars over which sign patterns range.
///
/// Over the reals this is `{+1, -1}`. Over the complex field the torus is
/// discretized to the `K`-th roots of unity, so complex constants computed
/// from sign enumerations are lower bounds of the true supremum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SignSet {
    Real,
    RootsOfUnity { order: u32 },
}

impl SignSet {
    /// Default sign set for a field (8th roots of unity over `C`).
    pub fn for_field(field: Field) -> Self {
        match field {
            Field::Real => SignSet::Real,
            Field::Complex => SignSet::RootsOfUnity { order: 8 },
        }
    }

    /// The members, in a fixed deterministic order.
    pub fn members(&self) -> Vec<Scalar> {
        match *self {
            SignSet::Real => alloc::vec![Scalar::new(1.0, 0.0), Scalar::new(-1.0, 0.0)],
            SignSet::RootsOfUnity { order } => {
                let k = order.max(1);
                (0..k).map(|j| root_of_unity(j, k)).collect()
            }
        }
    }
}

/// `exp(2*pi*i*j/k)`, snapped exactly onto the axes when `4j % k == 0`-style
/// multiples of a quarter turn occur, so `k in {1,2,4}` stays bit-exact.
fn root_of_unity(j: u32, k: u32) -> Scalar {
    let (jj, kk) = (j as u64 * 4, k as u64);
    if jj % kk == 0 {
        match (jj / kk) % 4 {
            0 => return Scalar::new(1.0, 0.0),
            1 => return Scalar::new(0.0, 1.0),
            2 => return Scalar::new(-1.0, 0.0),
            _ => return Scalar::new(0.0, -1.0),
        }
    }
    let theta = 2.0 * PI * (j as f64) / (k as f64);
    Scalar::new(libm::cos(theta), libm::sin(theta))
}

/// A sign pattern: an assignment of unimodular scalars to a finite index set.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct SignPattern {
    assignment: BTreeMap<usize, Scalar>,
}

impl SignPattern {
    /// Build a pattern, checking `|eps_n| = 1` for every entry.
    pub fn new(assignment: BTreeMap<usize, Scalar>) -> Result<Self> {
        for (&n, &eps) in &assignment {
            let m = modulus(eps);
            if libm::fabs(m - 1.0) > 1e-12 {
                return Err(Error::ContractViolation(alloc::format!(
                    "sign at index {n} has modulus {m}, expected 1"
                )));
            }
        }
        Ok(SignPattern { assignment })
    }

    /// The all-ones pattern on `set`.
    pub fn ones<'a>(set: impl IntoIterator<Item = &'a usize>) -> Self {
        SignPattern {
            assignment: set
                .into_iter()
                .map(|&n| (n, Scalar::new(1.0, 0.0)))
                .collect(),
        }
    }

    pub fn domain(&self) -> BTreeSet<usize> {
        self.assignment.keys().copied().collect()
    }

    pub fn get(&self, n: usize) -> Option<Scalar> {
        self.assignment.get(&n).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, Scalar)> + '_ {
        self.assignment.iter().map(|(&n, &c)| (n, c))
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }
}

/// All sign patterns from `signs` over `set`, in lexicographic order.
/// The pattern count is `|signs|^|set|`; callers cap `|set|` beforehand.
pub fn sign_patterns(set: &BTreeSet<usize>, signs: &SignSet) -> Vec<SignPattern> {
    let members = signs.members();
    let idx: Vec<usize> = set.iter().copied().collect();
    let mut out = Vec::new();
    let total = members.len().checked_pow(idx.len() as u32).unwrap_or(usize::MAX);
    for code in 0..total {
        let mut c = code;
        let mut assignment = BTreeMap::new();
        for &n in &idx {
            assignment.insert(n, members[c % members.len()]);
            c /= members.len();
        }
        out.push(SignPattern { assignment });
    }
    out
}

/// Short human-readable rendering used in witness logs.
pub fn format_scalar(c: Scalar) -> String {
    if c.im == 0.0 {
        alloc::format!("{}", c.re)
    } else {
        alloc::format!("{}{}{}i", c.re, if c.im >= 0.0 { "+" } else { "" }, c.im)
    }
}
