//! Greedy-basis laboratory for finite-dimensional p-normed spaces.
//!
//! Everything here is pure computation over immutable values: p-norm
//! evaluation, greedy orderings and truncation operators, exhaustive
//! lower-bound estimation of basis constants with witness certificates,
//! inequality-chain checking, and the `‖·‖_a` renorming that makes a
//! partially-greedy basis 1-partially-greedy.
//!
//! The crate is `no_std` (alloc required); IO, configuration and the CLI
//! live in the companion `pgreedy-lab` crate.

#![cfg_attr(not(feature = "std"), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

pub mod constants;
pub mod error;
pub mod greedy;
pub mod grid;
pub mod renorm;
pub mod scalar;
pub mod spaces;
pub mod theorems;
pub mod vector;

pub use error::Error;
pub use scalar::{Field, Scalar, SignPattern, SignSet};
pub use spaces::{GeomConstants, NormSpec, PSpace};
pub use vector::CoeffVector;

/// Result alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;
