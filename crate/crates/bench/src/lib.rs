//! Inputs shared by the benchmarks: unit Gaussian mixtures on centered grids.

use tfloc::fixtures::{FixtureRng, GaussianMixture};
use tfloc::{Grid1D, SampledSignal};

/// Grid with `dx = 1/√n`, so time and frequency extents match.
pub fn grid(n: usize) -> Grid1D {
    Grid1D::centered(n, 1.0 / (n as f64).sqrt()).expect("power-of-two n")
}

pub fn signal(seed: u64, grid: &Grid1D) -> SampledSignal {
    let mut rng = FixtureRng::new(seed);
    GaussianMixture::random_unit(&mut rng, 3, grid).expect("nonzero mixture").sample(grid)
}
