//! Shared inputs for the benchmarks.

use fairmatch_core::{FeasibilityMask, MatchingProblem, Matrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Square problem with satisfaction values on a 0.01 grid and every pair feasible.
pub fn random_problem(size: usize, seed: u64) -> MatchingProblem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cell = |_: usize, _: usize| (rng.gen_range(0..=100) as f64) / 100.0;
    let alpha = Matrix::from_fn(size, size, &mut cell);
    let beta = Matrix::from_fn(size, size, &mut cell);
    MatchingProblem::new(alpha, beta, FeasibilityMask::all(size, size)).expect("valid problem")
}
