//! Centered discrete Fourier sums on top of `rustfft`.
//!
//! Storage is fftshift-style: index `k` of a length-`n` array stands for the
//! centered integer `k - n/2`. The transforms here compute
//!
//! ```text
//! out[k] = sum_i exp(sign * 2πi (k - n/2)(i - n/2) / n) * inp[i]
//! ```
//!
//! with no normalization. Every grid-level transform in the crate reduces to
//! this sum plus phase/scale factors.

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::f64::consts::PI;
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    /// `exp(-2πi ...)`
    Forward,
    /// `exp(+2πi ...)`
    Inverse,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Forward => -1.0,
            Sign::Inverse => 1.0,
        }
    }
}

/// A reusable centered DFT of fixed length.
pub struct CenteredDft {
    n: usize,
    fft: Arc<dyn Fft<f64>>,
    sign: Sign,
    // exp(sign*2πi*(n/2)^2/n) = exp(sign*πi*n/2)
    corner: Complex64,
}

impl CenteredDft {
    pub fn new(n: usize, sign: Sign) -> Self {
        let mut planner = FftPlanner::new();
        let fft = match sign {
            Sign::Forward => planner.plan_fft_forward(n),
            Sign::Inverse => planner.plan_fft_inverse(n),
        };
        let half = (n / 2) as f64;
        let corner = Complex64::from_polar(1.0, sign.value() * 2.0 * PI * half * half / n as f64);
        Self { n, fft, sign, corner }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    /// Transform `buf` in place.
    pub fn process(&self, buf: &mut [Complex64]) {
        assert_eq!(buf.len(), self.n);
        // (k-h)(i-h) = ki - h(k+i) + h^2 with h = n/2; exp(∓πi i) = (-1)^i
        for (i, v) in buf.iter_mut().enumerate() {
            if i % 2 == 1 {
                *v = -*v;
            }
        }
        self.fft.process(buf);
        for (k, v) in buf.iter_mut().enumerate() {
            let s = if k % 2 == 1 { -self.corner } else { self.corner };
            *v *= s;
        }
    }
}

/// One-shot centered DFT.
pub fn centered_dft(input: &[Complex64], sign: Sign) -> Vec<Complex64> {
    let mut out = input.to_vec();
    CenteredDft::new(input.len(), sign).process(&mut out);
    out
}
