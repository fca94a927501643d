use crate::grid::{Grid1D, SampledSignal};
use num_complex::Complex64;

/// Deterministic complex noise in `[-0.5, 0.5)²` (LCG, test-only).
pub fn noise_vec(len: usize, seed: u64) -> Vec<Complex64> {
    let mut s = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(1);
    let mut next = move || {
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((s >> 11) as f64) / ((1u64 << 53) as f64) - 0.5
    };
    (0..len).map(|_| Complex64::new(next(), next())).collect()
}

pub fn noise(grid: Grid1D, seed: u64) -> SampledSignal {
    SampledSignal::new(grid, noise_vec(grid.n(), seed)).unwrap()
}
