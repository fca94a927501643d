//! Uniform periodic grids, sampled signals and the elementary operators
//! acting on them.

use crate::dft::{CenteredDft, Sign};
use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

const GRID_TOL: f64 = 1e-9;

/// A uniform periodic grid `t_i = x0 + i*dx`, `i = 0..n`.
///
/// `n` is a power of two and `x0` is an integer multiple of `dx`, so the
/// origin is always a sample (possibly after periodic wrap).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid1D {
    n: usize,
    dx: f64,
    x0: f64,
}

impl Grid1D {
    pub fn new(n: usize, dx: f64, x0: f64) -> Result<Self> {
        if n < 2 || !n.is_power_of_two() {
            return Err(Error::InvalidGrid(format!("n = {n} must be a power of two >= 2")));
        }
        if !(dx.is_finite() && dx > 0.0) {
            return Err(Error::InvalidGrid(format!("dx = {dx} must be finite and positive")));
        }
        if !x0.is_finite() {
            return Err(Error::InvalidGrid(format!("x0 = {x0} must be finite")));
        }
        let o = x0 / dx;
        if (o - o.round()).abs() > GRID_TOL * o.abs().max(1.0) {
            return Err(Error::InvalidGrid(format!(
                "x0 = {x0} is not an integer multiple of dx = {dx}"
            )));
        }
        Ok(Self { n, dx, x0: o.round() * dx })
    }

    /// Grid with `x0 = -(n/2)*dx`, i.e. covering `[-n*dx/2, n*dx/2)`.
    pub fn centered(n: usize, dx: f64) -> Result<Self> {
        Self::new(n, dx, -((n / 2) as f64) * dx)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    pub fn period(&self) -> f64 {
        self.n as f64 * self.dx
    }

    /// Spacing of the dual (frequency) grid, `1/(n*dx)`.
    pub fn dw(&self) -> f64 {
        1.0 / self.period()
    }

    pub fn coord(&self, i: usize) -> f64 {
        self.x0 + i as f64 * self.dx
    }

    pub fn coords(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.coord(i)).collect()
    }

    /// Index of the sample at coordinate 0, modulo `n`.
    pub fn origin_index(&self) -> usize {
        let o = (-self.x0 / self.dx).round() as i64;
        o.rem_euclid(self.n as i64) as usize
    }

    pub fn is_centered(&self) -> bool {
        self.origin_index() == self.n / 2 && self.x0 < 0.0
    }

    /// The centered frequency grid on which [`fourier`] returns values.
    pub fn dual(&self) -> Grid1D {
        Grid1D {
            n: self.n,
            dx: self.dw(),
            x0: -((self.n / 2) as f64) * self.dw(),
        }
    }

    /// The same grid with half the spacing over half the extent.
    pub fn halved(&self) -> Grid1D {
        Grid1D {
            n: self.n,
            dx: self.dx / 2.0,
            x0: self.x0 / 2.0,
        }
    }

    /// The same grid with twice the spacing over twice the extent.
    pub fn doubled(&self) -> Grid1D {
        Grid1D {
            n: self.n,
            dx: self.dx * 2.0,
            x0: self.x0 * 2.0,
        }
    }

    pub fn approx_eq(&self, other: &Grid1D) -> bool {
        self.n == other.n
            && (self.dx - other.dx).abs() <= GRID_TOL * self.dx
            && (self.x0 - other.x0).abs() <= GRID_TOL * self.dx.max(self.x0.abs())
    }

    pub fn ensure_same(&self, other: &Grid1D) -> Result<()> {
        if self.approx_eq(other) {
            Ok(())
        } else {
            Err(Error::GridMismatch(format!("{self:?} vs {other:?}")))
        }
    }

    pub fn ensure_centered(&self) -> Result<()> {
        if self.is_centered() {
            Ok(())
        } else {
            Err(Error::InvalidGrid(format!("grid {self:?} is not centered")))
        }
    }

    /// Index of `x` if it lies on the grid (periodically).
    pub fn index_of(&self, x: f64) -> Option<usize> {
        let r = (x - self.x0) / self.dx;
        if (r - r.round()).abs() > GRID_TOL * r.abs().max(1.0) {
            return None;
        }
        Some((r.round() as i64).rem_euclid(self.n as i64) as usize)
    }
}

/// Complex samples of a function on a [`Grid1D`].
#[derive(Debug, Clone, PartialEq)]
pub struct SampledSignal {
    grid: Grid1D,
    samples: Vec<Complex64>,
}

impl SampledSignal {
    pub fn new(grid: Grid1D, samples: Vec<Complex64>) -> Result<Self> {
        if samples.len() != grid.n() {
            return Err(Error::Length { expected: grid.n(), got: samples.len() });
        }
        if let Some(i) = samples.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::NonFinite(i));
        }
        Ok(Self { grid, samples })
    }

    pub fn zeros(grid: Grid1D) -> Self {
        Self { grid, samples: vec![Complex64::new(0.0, 0.0); grid.n()] }
    }

    pub fn from_fn(grid: Grid1D, f: impl Fn(f64) -> Complex64) -> Self {
        let samples = (0..grid.n()).map(|i| f(grid.coord(i))).collect();
        Self { grid, samples }
    }

    pub(crate) fn from_parts(grid: Grid1D, samples: Vec<Complex64>) -> Self {
        debug_assert_eq!(samples.len(), grid.n());
        Self { grid, samples }
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<Complex64> {
        self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn norm(&self) -> f64 {
        inner(self, self).map(|z| z.re.max(0.0).sqrt()).unwrap_or(0.0)
    }

    pub fn max_abs(&self) -> f64 {
        self.samples.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.samples.iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        Self::from_parts(self.grid, self.samples.iter().map(|z| z * c).collect())
    }

    pub fn conj(&self) -> Self {
        Self::from_parts(self.grid, self.samples.iter().map(|z| z.conj()).collect())
    }

    /// Max-abs difference to another signal on the same grid.
    pub fn max_diff(&self, other: &SampledSignal) -> Result<f64> {
        self.grid.ensure_same(&other.grid)?;
        Ok(self
            .samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Rescale to unit discrete L² norm.
    pub fn normalized(&self) -> Result<Self> {
        let nrm = self.norm();
        if nrm == 0.0 {
            return Err(Error::ZeroSignal);
        }
        Ok(self.scaled(Complex64::new(1.0 / nrm, 0.0)))
    }
}

impl std::ops::Index<usize> for SampledSignal {
    type Output = Complex64;
    fn index(&self, i: usize) -> &Complex64 {
        &self.samples[i]
    }
}

/// Which frequency lattice a [`PhaseGrid`] carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PhaseLattice {
    /// `x` on the signal grid, `ω` on its dual: STFT, ambiguity and
    /// localization symbols.
    Standard,
    /// Both axes at half spacing (`dx/2`, `dω/2`): Grossmann-Royer, Wigner
    /// and Weyl symbols. The point `(x, ω)` of the standard lattice
    /// corresponds to `(x/2, ω/2)` here, index for index.
    HalfStep,
    /// Both axes at double spacing. This is where the symplectic Fourier
    /// transform of a half-step array lives, and vice versa.
    DoubleStep,
}

/// A sampled phase space `(x, ω)`. Rows index `x`, columns index `ω`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseGrid {
    signal: Grid1D,
    lattice: PhaseLattice,
}

impl PhaseGrid {
    pub fn standard(signal: &Grid1D) -> Result<Self> {
        signal.ensure_centered()?;
        Ok(Self { signal: *signal, lattice: PhaseLattice::Standard })
    }

    pub fn half_step(signal: &Grid1D) -> Result<Self> {
        signal.ensure_centered()?;
        Ok(Self { signal: *signal, lattice: PhaseLattice::HalfStep })
    }

    pub fn with_lattice(signal: &Grid1D, lattice: PhaseLattice) -> Result<Self> {
        signal.ensure_centered()?;
        Ok(Self { signal: *signal, lattice })
    }

    /// The grid of the signals this phase space belongs to.
    pub fn signal_grid(&self) -> &Grid1D {
        &self.signal
    }

    pub fn lattice(&self) -> PhaseLattice {
        self.lattice
    }

    pub fn is_half_step(&self) -> bool {
        self.lattice == PhaseLattice::HalfStep
    }

    pub fn n(&self) -> usize {
        self.signal.n()
    }

    pub fn xgrid(&self) -> Grid1D {
        match self.lattice {
            PhaseLattice::Standard => self.signal,
            PhaseLattice::HalfStep => self.signal.halved(),
            PhaseLattice::DoubleStep => self.signal.doubled(),
        }
    }

    pub fn wgrid(&self) -> Grid1D {
        match self.lattice {
            PhaseLattice::Standard => self.signal.dual(),
            PhaseLattice::HalfStep => self.signal.dual().halved(),
            PhaseLattice::DoubleStep => self.signal.dual().doubled(),
        }
    }

    pub fn cell_area(&self) -> f64 {
        self.xgrid().dx() * self.wgrid().dx()
    }

    pub fn ensure_same(&self, other: &PhaseGrid) -> Result<()> {
        if self.lattice != other.lattice {
            return Err(Error::GridMismatch(format!(
                "lattice {:?} vs {:?}",
                self.lattice, other.lattice
            )));
        }
        self.signal.ensure_same(&other.signal)
    }

    pub fn ensure_lattice(&self, lattice: PhaseLattice) -> Result<()> {
        if self.lattice == lattice {
            Ok(())
        } else {
            Err(Error::GridMismatch(format!("expected {lattice:?} lattice, got {:?}", self.lattice)))
        }
    }
}

/// Riemann-sum Fourier transform `dx * Σ f(t_i) exp(-2πi t_i ω_k)` onto the
/// centered dual grid.
pub fn fourier(f: &SampledSignal) -> SampledSignal {
    let g = f.grid;
    let n = g.n();
    let dual = g.dual();
    // t_i = (i - n/2) dx + shift
    let shift = g.x0() + (n / 2) as f64 * g.dx();
    let mut buf = f.samples.clone();
    CenteredDft::new(n, Sign::Forward).process(&mut buf);
    for (k, v) in buf.iter_mut().enumerate() {
        let ph = -2.0 * PI * shift * dual.coord(k);
        *v *= Complex64::from_polar(g.dx(), ph);
    }
    SampledSignal::from_parts(dual, buf)
}

/// Inverse of [`fourier`] back onto the centered grid dual to `big_f`'s.
pub fn inverse_fourier(big_f: &SampledSignal) -> Result<SampledSignal> {
    let target = Grid1D::centered(big_f.grid.n(), big_f.grid.dw())?;
    inverse_fourier_onto(big_f, &target)
}

/// Inverse of [`fourier`] onto an arbitrary time grid whose dual is the
/// (centered) grid of `big_f`.
pub fn inverse_fourier_onto(big_f: &SampledSignal, target: &Grid1D) -> Result<SampledSignal> {
    target.dual().ensure_same(&big_f.grid)?;
    let n = target.n();
    let shift = target.x0() + (n / 2) as f64 * target.dx();
    let fg = big_f.grid;
    let mut buf: Vec<Complex64> = big_f
        .samples
        .iter()
        .enumerate()
        .map(|(k, &v)| v * Complex64::from_polar(1.0, 2.0 * PI * shift * fg.coord(k)))
        .collect();
    CenteredDft::new(n, Sign::Inverse).process(&mut buf);
    for v in buf.iter_mut() {
        *v *= fg.dx();
    }
    Ok(SampledSignal::from_parts(*target, buf))
}

/// `T_{j dx} f`: circular shift by `j` samples.
pub fn translate(f: &SampledSignal, j: i64) -> SampledSignal {
    let n = f.len() as i64;
    let samples = (0..n)
        .map(|i| f.samples[(i - j).rem_euclid(n) as usize])
        .collect();
    SampledSignal::from_parts(f.grid, samples)
}

/// `M_{k dω} f`: multiplication by `exp(2πi k dω t)`.
pub fn modulate(f: &SampledSignal, k: i64) -> SampledSignal {
    let g = f.grid;
    let nu = k as f64 * g.dw();
    let samples = f
        .samples
        .iter()
        .enumerate()
        .map(|(i, &v)| v * Complex64::from_polar(1.0, 2.0 * PI * nu * g.coord(i)))
        .collect();
    SampledSignal::from_parts(g, samples)
}

/// `f(-t)`, reflecting about the origin sample with periodic wrap.
pub fn reflect(f: &SampledSignal) -> SampledSignal {
    let n = f.len();
    let o = f.grid.origin_index();
    let samples = (0..n).map(|i| f.samples[(2 * o + n - i) % n]).collect();
    SampledSignal::from_parts(f.grid, samples)
}

/// `⟨f, g⟩ = dx Σ f ḡ`.
pub fn inner(f: &SampledSignal, g: &SampledSignal) -> Result<Complex64> {
    f.grid.ensure_same(&g.grid)?;
    let s: Complex64 = f.samples.iter().zip(&g.samples).map(|(a, b)| a * b.conj()).sum();
    Ok(s * f.grid.dx())
}
