//! L²-normalized Hermite functions.

use crate::error::{Error, Result};
use crate::grid::{Grid1D, PhaseGrid, SampledSignal};
use crate::tfr::{TfrKind, TfrMatrix};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Highest order for which the recurrence is validated.
pub const MAX_ORDER: usize = 200;

/// `√λ · h_k(λ t)`, with `h_k` the Hermite function of the `e^{-t²/2}` family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HermiteSpec {
    pub order: usize,
    pub scale: f64,
}

impl HermiteSpec {
    pub fn new(order: usize, scale: f64) -> Result<Self> {
        let s = Self { order, scale };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if self.order > MAX_ORDER {
            return Err(Error::OrderOutOfRange(self.order));
        }
        if !(self.scale.is_finite() && self.scale > 0.0) {
            return Err(Error::InvalidParameter(format!("hermite scale {} must be positive", self.scale)));
        }
        Ok(())
    }

    /// Evaluate at a single point.
    pub fn eval(&self, t: f64) -> f64 {
        let s = self.scale;
        hermite_values(self.order, s * t)[self.order] * s.sqrt()
    }
}

/// `ψ_0(t), ..., ψ_k(t)` via the normalized three-term recurrence.
pub fn hermite_values(k: usize, t: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(k + 1);
    out.push(PI.powf(-0.25) * (-0.5 * t * t).exp());
    if k >= 1 {
        out.push(2f64.sqrt() * t * out[0]);
    }
    for m in 1..k {
        let mf = m as f64;
        let next = t * (2.0 / (mf + 1.0)).sqrt() * out[m] - (mf / (mf + 1.0)).sqrt() * out[m - 1];
        out.push(next);
    }
    out
}

pub fn hermite_function(spec: HermiteSpec, grid: &Grid1D) -> Result<SampledSignal> {
    spec.validate()?;
    Ok(SampledSignal::from_fn(*grid, |t| Complex64::new(spec.eval(t), 0.0)))
}

/// Hermite function dilated by `√(2π)`, an eigenfunction of the
/// `e^{-2πitω}` Fourier transform with eigenvalue `(-i)^k`.
pub fn hermite_ft_eigen(order: usize, grid: &Grid1D) -> Result<SampledSignal> {
    hermite_function(HermiteSpec::new(order, (2.0 * PI).sqrt())?, grid)
}

/// Separable product `h_{k1}(x) h_{k2}(ω)` on a phase grid, both factors at the
/// FT-eigen scale.
pub fn hermite_tensor2(k1: usize, k2: usize, pgrid: &PhaseGrid) -> Result<TfrMatrix> {
    let a = hermite_ft_eigen(k1, &pgrid.xgrid())?;
    let b = hermite_ft_eigen(k2, &pgrid.wgrid())?;
    let n = pgrid.n();
    let mut values = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            values.push(a[i] * b[j]);
        }
    }
    TfrMatrix::new(*pgrid, values, TfrKind::Generic)
}
