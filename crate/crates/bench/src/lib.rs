//! Shared inputs for the benchmarks.

use steiner_core::random::{random_line, rng, uniform_points};
use steiner_core::{Gamma, Point};

/// `n` uniform points in the unit square and one random line through it.
pub fn instance(n: usize, seed: u64) -> (Vec<Point>, Gamma) {
    (uniform_points(n, seed), random_line(&mut rng(seed)))
}

/// A few lines for multi-constraint and `k = 2` runs.
pub fn lines(j: usize, seed: u64) -> Vec<Gamma> {
    let mut r = rng(seed ^ 0xb1a5);
    (0..j).map(|_| random_line(&mut r)).collect()
}
