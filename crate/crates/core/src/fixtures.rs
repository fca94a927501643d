//! Deterministic test signals: chirped Gaussians with closed-form Fourier
//! transforms, their mixtures, Hermite functions and CSV files.

use crate::error::{Error, Result};
use crate::grid::{Grid1D, SampledSignal};
use crate::hermite::{hermite_function, HermiteSpec};
use num_complex::Complex64;
use rand::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::path::PathBuf;

/// SplitMix64 stream with uniform doubles `(u >> 11) · 2^-53`.
#[derive(Debug, Clone)]
pub struct FixtureRng(SplitMix64);

impl FixtureRng {
    pub fn new(seed: u64) -> Self {
        Self(SplitMix64::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform in `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    /// Real and imaginary parts uniform in `[-1, 1)`.
    pub fn complex(&mut self) -> Complex64 {
        let re = self.uniform_in(-1.0, 1.0);
        let im = self.uniform_in(-1.0, 1.0);
        Complex64::new(re, im)
    }
}

/// `(2/w²)^{1/4} exp(-π(t-c)²/w² + iπ·chirp·t² + 2πi·freq·t)`, unit `L²` norm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianSpec {
    #[serde(default)]
    pub center: f64,
    #[serde(default = "one")]
    pub width: f64,
    #[serde(default)]
    pub chirp: f64,
    #[serde(default)]
    pub freq: f64,
}

fn one() -> f64 {
    1.0
}

impl Default for GaussianSpec {
    fn default() -> Self {
        Self { center: 0.0, width: 1.0, chirp: 0.0, freq: 0.0 }
    }
}

impl GaussianSpec {
    pub fn validate(&self) -> Result<()> {
        let ok = [self.center, self.width, self.chirp, self.freq].iter().all(|v| v.is_finite())
            && self.width > 0.0;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!("invalid gaussian {self:?}")))
        }
    }

    /// Width in `[0.9, 1.1]`, chirp in `[-0.3, 0.3]`, freq in `[-0.4, 0.4]`,
    /// center in `[-0.5, 0.5]`; drawn in that order.
    pub fn random(rng: &mut FixtureRng) -> Self {
        let width = rng.uniform_in(0.9, 1.1);
        let chirp = rng.uniform_in(-0.3, 0.3);
        let freq = rng.uniform_in(-0.4, 0.4);
        let center = rng.uniform_in(-0.5, 0.5);
        Self { center, width, chirp, freq }
    }

    fn amplitude(&self) -> f64 {
        (2.0 / (self.width * self.width)).powf(0.25)
    }

    // exponent -α t² + β t + γ
    fn coefficients(&self) -> (Complex64, Complex64, f64) {
        let w2 = self.width * self.width;
        let alpha = Complex64::new(PI / w2, -PI * self.chirp);
        let beta = Complex64::new(2.0 * PI * self.center / w2, 2.0 * PI * self.freq);
        let gamma = -PI * self.center * self.center / w2;
        (alpha, beta, gamma)
    }

    pub fn eval(&self, t: f64) -> Complex64 {
        let (alpha, beta, gamma) = self.coefficients();
        self.amplitude() * (-alpha * t * t + beta * t + gamma).exp()
    }

    /// `∫ f(t) e^{-2πitω} dt` in closed form.
    pub fn fourier_eval(&self, omega: f64) -> Complex64 {
        let (alpha, beta, gamma) = self.coefficients();
        let b = beta - Complex64::new(0.0, 2.0 * PI * omega);
        self.amplitude() * (Complex64::new(PI, 0.0) / alpha).sqrt() * (b * b / (4.0 * alpha) + gamma).exp()
    }

    pub fn sample(&self, grid: &Grid1D) -> SampledSignal {
        SampledSignal::from_fn(*grid, |t| self.eval(t))
    }
}

/// `Σ c_j g_j` for Gaussians `g_j`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaussianMixture {
    pub terms: Vec<(Complex64, GaussianSpec)>,
}

impl GaussianMixture {
    /// `k` terms with coefficients from [`FixtureRng::complex`].
    pub fn random(rng: &mut FixtureRng, k: usize) -> Self {
        let terms = (0..k)
            .map(|_| {
                let c = rng.complex();
                (c, GaussianSpec::random(rng))
            })
            .collect();
        Self { terms }
    }

    pub fn eval(&self, t: f64) -> Complex64 {
        self.terms.iter().map(|(c, g)| c * g.eval(t)).sum()
    }

    pub fn fourier_eval(&self, omega: f64) -> Complex64 {
        self.terms.iter().map(|(c, g)| c * g.fourier_eval(omega)).sum()
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self { terms: self.terms.iter().map(|(c, g)| (c * s, *g)).collect() }
    }

    pub fn sample(&self, grid: &Grid1D) -> SampledSignal {
        SampledSignal::from_fn(*grid, |t| self.eval(t))
    }

    /// Rescale so the sampled signal has unit discrete norm on `grid`.
    pub fn normalized_on(&self, grid: &Grid1D) -> Result<Self> {
        let nrm = self.sample(grid).norm();
        if nrm == 0.0 {
            return Err(Error::ZeroSignal);
        }
        Ok(self.scaled(1.0 / nrm))
    }

    /// A random unit-norm mixture of `k` terms.
    pub fn random_unit(rng: &mut FixtureRng, k: usize, grid: &Grid1D) -> Result<Self> {
        Self::random(rng, k).normalized_on(grid)
    }
}

/// Signal source in run configurations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FixtureSpec {
    Gaussian(GaussianSpec),
    Hermite(HermiteSpec),
    File { path: PathBuf },
}

impl Default for FixtureSpec {
    fn default() -> Self {
        FixtureSpec::Gaussian(GaussianSpec::default())
    }
}

impl FixtureSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            FixtureSpec::Gaussian(g) => g.validate(),
            FixtureSpec::Hermite(h) => h.validate(),
            FixtureSpec::File { .. } => Ok(()),
        }
    }

    /// Sample on `grid`. File fixtures must already live on exactly that grid.
    pub fn build(&self, grid: &Grid1D) -> Result<SampledSignal> {
        match self {
            FixtureSpec::Gaussian(g) => {
                g.validate()?;
                Ok(g.sample(grid))
            }
            FixtureSpec::Hermite(h) => hermite_function(*h, grid),
            FixtureSpec::File { path } => {
                let s = crate::io::read_signal_csv(path)?;
                s.grid().ensure_same(grid)?;
                Ok(s)
            }
        }
    }
}
