//! Finite sparse coefficient vectors `f = sum e_n*(f) e_n`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::scalar::{modulus, Scalar};
use crate::{Error, Result};

/// A finite coefficient assignment `index -> scalar` on `1..=dimension`.
/// Only nonzero entries are stored, so `support` is exactly the key set
/// and `f = 0` iff the map is empty.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct CoeffVector {
    dimension: usize,
    entries: BTreeMap<usize, Scalar>,
}

impl CoeffVector {
    pub fn zero(dimension: usize) -> Self {
        CoeffVector {
            dimension,
            entries: BTreeMap::new(),
        }
    }

    /// Build from `(index, scalar)` pairs; zero scalars are dropped.
    pub fn from_entries(
        dimension: usize,
        entries: impl IntoIterator<Item = (usize, Scalar)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (n, c) in entries {
            if n < 1 || n > dimension {
                return Err(Error::IndexOutOfRange { index: n, dimension });
            }
            if c != Scalar::new(0.0, 0.0) {
                map.insert(n, c);
            }
        }
        Ok(CoeffVector {
            dimension,
            entries: map,
        })
    }

    /// Dense real constructor, handy in tests: `dense(&[3.0, 1.0, 2.0])`.
    pub fn dense(coeffs: &[f64]) -> Self {
        let entries = coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0.0)
            .map(|(i, &c)| (i + 1, Scalar::new(c, 0.0)));
        CoeffVector {
            dimension: coeffs.len(),
            entries: entries.collect(),
        }
    }

    /// The canonical basis vector `e_n`.
    pub fn basis(dimension: usize, n: usize) -> Result<Self> {
        Self::from_entries(dimension, [(n, Scalar::new(1.0, 0.0))])
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// `e_n*(f)`; zero for indices off the support.
    pub fn coeff(&self, n: usize) -> Scalar {
        self.entries.get(&n).copied().unwrap_or(Scalar::new(0.0, 0.0))
    }

    /// `|e_n*(f)|`.
    pub fn coeff_modulus(&self, n: usize) -> f64 {
        modulus(self.coeff(n))
    }

    pub fn support(&self) -> BTreeSet<usize> {
        self.entries.keys().copied().collect()
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, Scalar)> + '_ {
        self.entries.iter().map(|(&n, &c)| (n, c))
    }

    /// `max_{n in supp f} |e_n*(f)|`; 0 for the zero vector.
    pub fn max_modulus(&self) -> f64 {
        self.entries
            .values()
            .map(|&c| modulus(c))
            .fold(0.0, f64::max)
    }

    /// `min_{n in supp f} |e_n*(f)|`; `+inf` for the zero vector
    /// (the `min over the empty set` convention used by `D(f)`).
    pub fn min_support_modulus(&self) -> f64 {
        self.entries
            .values()
            .map(|&c| modulus(c))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn add(&self, other: &CoeffVector) -> Result<CoeffVector> {
        if self.dimension != other.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                got: other.dimension,
            });
        }
        let mut entries = self.entries.clone();
        for (&n, &c) in &other.entries {
            let v = entries.get(&n).copied().unwrap_or(Scalar::new(0.0, 0.0)) + c;
            if v == Scalar::new(0.0, 0.0) {
                entries.remove(&n);
            } else {
                entries.insert(n, v);
            }
        }
        Ok(CoeffVector {
            dimension: self.dimension,
            entries,
        })
    }

    pub fn sub(&self, other: &CoeffVector) -> Result<CoeffVector> {
        self.add(&other.scale(Scalar::new(-1.0, 0.0)))
    }

    pub fn scale(&self, t: Scalar) -> CoeffVector {
        if t == Scalar::new(0.0, 0.0) {
            return CoeffVector::zero(self.dimension);
        }
        CoeffVector {
            dimension: self.dimension,
            entries: self.entries.iter().map(|(&n, &c)| (n, c * t)).collect(),
        }
    }

    pub fn supports_disjoint(&self, other: &CoeffVector) -> bool {
        self.entries.keys().all(|n| !other.entries.contains_key(n))
    }

    /// Canonical byte key (dimension, then index/re/im bit patterns),
    /// used for deterministic memoization.
    pub fn cache_key(&self) -> Vec<u64> {
        let mut key = Vec::with_capacity(1 + 3 * self.entries.len());
        key.push(self.dimension as u64);
        for (&n, &c) in &self.entries {
            key.push(n as u64);
            key.push(c.re.to_bits());
            key.push(c.im.to_bits());
        }
        key
    }
}
