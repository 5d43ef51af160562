//! Exact computations with finite-dimensional algebras over prime fields.

pub mod algebra;
pub mod correspondence;
pub mod desk;
pub mod error;
pub mod exactla;
pub mod homological;
pub mod invariants;
pub mod report;
pub mod repmod;
pub mod tensorlab;
#[cfg(test)]
mod testkit;

pub use algebra::Algebra;
pub use error::{Error, Result};
pub use exactla::{Field, Fp, Matrix};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Seed used whenever the caller does not provide one.
pub const DEFAULT_SEED: u64 = 0xD7;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub type F101 = Fp<101>;
pub type Matrix101 = Matrix<F101>;
pub type Algebra101 = Algebra<F101>;
