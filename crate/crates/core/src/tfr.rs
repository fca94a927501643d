//! Time-frequency representations on sampled phase space.
//!
//! Grossmann-Royer transforms and Wigner distributions live on the half-step
//! lattice: `x'_m = (m - n/2) dx/2`, `ω'_k = (k - n/2) dω/2`. There the phase
//! `e^{4πiω't}` is an exact centered DFT kernel, so every row is one FFT.
//! STFTs and ambiguity functions use the standard lattice.

use crate::dft::{CenteredDft, Sign};
use crate::error::{Error, Result};
use crate::grid::{reflect, Grid1D, PhaseGrid, PhaseLattice, SampledSignal};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum TfrKind {
    Grt,
    Stft,
    Wigner,
    Ambiguity,
    Generic,
}

impl TfrKind {
    pub fn name(self) -> &'static str {
        match self {
            TfrKind::Grt => "GRT",
            TfrKind::Stft => "STFT",
            TfrKind::Wigner => "WIGNER",
            TfrKind::Ambiguity => "AMBIGUITY",
            TfrKind::Generic => "GENERIC",
        }
    }
}

impl std::str::FromStr for TfrKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "GRT" => Ok(TfrKind::Grt),
            "STFT" => Ok(TfrKind::Stft),
            "WIGNER" => Ok(TfrKind::Wigner),
            "AMBIGUITY" => Ok(TfrKind::Ambiguity),
            "GENERIC" => Ok(TfrKind::Generic),
            _ => Err(Error::InvalidParameter(format!("unknown representation kind '{s}'"))),
        }
    }
}

/// An `n x n` complex array on a [`PhaseGrid`], row-major with rows indexing `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct TfrMatrix {
    pgrid: PhaseGrid,
    values: Vec<Complex64>,
    kind: TfrKind,
}

impl TfrMatrix {
    pub fn new(pgrid: PhaseGrid, values: Vec<Complex64>, kind: TfrKind) -> Result<Self> {
        let n = pgrid.n();
        if values.len() != n * n {
            return Err(Error::Length { expected: n * n, got: values.len() });
        }
        if let Some(i) = values.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::NonFinite(i));
        }
        Ok(Self { pgrid, values, kind })
    }

    pub fn zeros(pgrid: PhaseGrid, kind: TfrKind) -> Self {
        let n = pgrid.n();
        Self { pgrid, values: vec![Complex64::new(0.0, 0.0); n * n], kind }
    }

    pub fn from_fn(pgrid: PhaseGrid, kind: TfrKind, f: impl Fn(f64, f64) -> Complex64) -> Self {
        let (xg, wg) = (pgrid.xgrid(), pgrid.wgrid());
        let n = pgrid.n();
        let mut values = Vec::with_capacity(n * n);
        for m in 0..n {
            for k in 0..n {
                values.push(f(xg.coord(m), wg.coord(k)));
            }
        }
        Self { pgrid, values, kind }
    }

    pub(crate) fn from_parts(pgrid: PhaseGrid, values: Vec<Complex64>, kind: TfrKind) -> Self {
        debug_assert_eq!(values.len(), pgrid.n() * pgrid.n());
        Self { pgrid, values, kind }
    }

    pub fn pgrid(&self) -> &PhaseGrid {
        &self.pgrid
    }

    pub fn kind(&self) -> TfrKind {
        self.kind
    }

    pub fn with_kind(mut self, kind: TfrKind) -> Self {
        self.kind = kind;
        self
    }

    pub fn n(&self) -> usize {
        self.pgrid.n()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn get(&self, m: usize, k: usize) -> Complex64 {
        self.values[m * self.n() + k]
    }

    pub fn row(&self, m: usize) -> &[Complex64] {
        let n = self.n();
        &self.values[m * n..(m + 1) * n]
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        Self::from_parts(self.pgrid, self.values.iter().map(|z| z * c).collect(), self.kind)
    }

    pub fn conj(&self) -> Self {
        Self::from_parts(self.pgrid, self.values.iter().map(|z| z.conj()).collect(), self.kind)
    }

    pub fn max_diff(&self, other: &TfrMatrix) -> Result<f64> {
        self.pgrid.ensure_same(&other.pgrid)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Phase-space quadrature `Σ F Ḡ · cell_area`.
    pub fn inner(&self, other: &TfrMatrix) -> Result<Complex64> {
        self.pgrid.ensure_same(&other.pgrid)?;
        let s: Complex64 = self.values.iter().zip(&other.values).map(|(a, b)| a * b.conj()).sum();
        Ok(s * self.pgrid.cell_area())
    }

    pub fn l2_norm(&self) -> f64 {
        let s: f64 = self.values.iter().map(|z| z.norm_sqr()).sum();
        (s * self.pgrid.cell_area()).sqrt()
    }

    /// Largest `|Im|` relative to nothing; used to check real-valuedness.
    pub fn max_imag(&self) -> f64 {
        self.values.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    fn ensure_kind(&self, kinds: &[TfrKind], expected: &'static str) -> Result<()> {
        if kinds.contains(&self.kind) {
            Ok(())
        } else {
            Err(Error::WrongKind { expected, got: self.kind.name().to_string() })
        }
    }
}

fn check_pair(f: &SampledSignal, g: &SampledSignal) -> Result<Grid1D> {
    f.grid().ensure_same(g.grid())?;
    f.grid().ensure_centered()?;
    Ok(*f.grid())
}

fn half_step_index(grid: &Grid1D, x: f64, omega: f64) -> Result<(i64, i64)> {
    let a = x / (grid.dx() / 2.0);
    let b = omega / (grid.dw() / 2.0);
    let on = |r: f64| (r - r.round()).abs() <= 1e-9 * r.abs().max(1.0);
    if !(on(a) && on(b)) {
        return Err(Error::OffGrid { x, omega });
    }
    Ok((a.round() as i64, b.round() as i64))
}

/// The Grossmann-Royer operator `f ↦ e^{4πiω(t-x)} f(2x - t)`.
///
/// `x` must be a multiple of `dx/2` and `ω` a multiple of `dω/2`.
pub fn gr_operator_apply(f: &SampledSignal, x: f64, omega: f64) -> Result<SampledSignal> {
    let g = *f.grid();
    g.ensure_centered()?;
    let (a, b) = half_step_index(&g, x, omega)?;
    let n = g.n() as i64;
    let h = n / 2;
    let samples = (0..n)
        .map(|i| {
            // 2x - t_i = (a - i + h) dx ; 4πω(t_i - x) = 2π b (2(i-h) - a) / (2n)
            let src = (a - i + n).rem_euclid(n) as usize;
            let ph = PI * (b * (2 * (i - h) - a)).rem_euclid(2 * n) as f64 / n as f64;
            f[src] * Complex64::from_polar(1.0, ph)
        })
        .collect();
    SampledSignal::new(g, samples)
}

/// The Heisenberg-Weyl operator `f ↦ e^{2πiω(t - x/2)} f(t - x)` for `x` on
/// the signal grid and `ω` on its dual.
pub fn hw_operator_apply(f: &SampledSignal, x: f64, omega: f64) -> Result<SampledSignal> {
    let g = *f.grid();
    g.ensure_centered()?;
    let (a, b) = half_step_index(&g, x, omega)?;
    if a % 2 != 0 || b % 2 != 0 {
        return Err(Error::OffGrid { x, omega });
    }
    let (j, k) = (a / 2, b / 2);
    let n = g.n() as i64;
    let h = n / 2;
    let samples = (0..n)
        .map(|i| {
            // 2π k dω ((i-h) - j/2) dx = π k (2(i-h) - j) / n
            let src = (i - j).rem_euclid(n) as usize;
            let ph = PI * (k * (2 * (i - h) - j)).rem_euclid(2 * n) as f64 / n as f64;
            f[src] * Complex64::from_polar(1.0, ph)
        })
        .collect();
    SampledSignal::new(g, samples)
}

/// `R_g f(x, ω) = ∫ e^{4πiω(t-x)} f(2x - t) ḡ(t) dt` on the half-step lattice.
pub fn grossmann_royer(f: &SampledSignal, g: &SampledSignal) -> Result<TfrMatrix> {
    let grid = check_pair(f, g)?;
    let pg = PhaseGrid::half_step(&grid)?;
    let n = grid.n();
    let h = n / 2;
    let dft = CenteredDft::new(n, Sign::Inverse);
    let (fs, gs) = (f.samples(), g.samples());
    let mut values = vec![Complex64::new(0.0, 0.0); n * n];
    values.par_chunks_mut(n).enumerate().for_each(|(m, row)| {
        for (i, v) in row.iter_mut().enumerate() {
            *v = fs[(m + n + h - i) % n] * gs[i].conj();
        }
        dft.process(row);
        // e^{-4πiω'_k x'_m} = e^{-πi (k-h)(m-h) / n}
        let mm = m as i64 - h as i64;
        for (k, v) in row.iter_mut().enumerate() {
            let kk = k as i64 - h as i64;
            let ph = -PI * (kk * mm).rem_euclid(2 * n as i64) as f64 / n as f64;
            *v *= Complex64::from_polar(grid.dx(), ph);
        }
    });
    Ok(TfrMatrix::from_parts(pg, values, TfrKind::Grt))
}

/// `V_g f(x, ω) = ∫ e^{-2πitω} f(t) ḡ(t - x) dt` on the standard lattice.
pub fn stft(f: &SampledSignal, g: &SampledSignal) -> Result<TfrMatrix> {
    let grid = check_pair(f, g)?;
    let pg = PhaseGrid::standard(&grid)?;
    let n = grid.n();
    let h = n / 2;
    let dft = CenteredDft::new(n, Sign::Forward);
    let (fs, gs) = (f.samples(), g.samples());
    let mut values = vec![Complex64::new(0.0, 0.0); n * n];
    values.par_chunks_mut(n).enumerate().for_each(|(m, row)| {
        for (i, v) in row.iter_mut().enumerate() {
            *v = fs[i] * gs[(i + n + h - m) % n].conj();
        }
        dft.process(row);
        for v in row.iter_mut() {
            *v *= grid.dx();
        }
    });
    Ok(TfrMatrix::from_parts(pg, values, TfrKind::Stft))
}

/// Cross-Wigner distribution, `2 R_g f`.
pub fn cross_wigner(f: &SampledSignal, g: &SampledSignal) -> Result<TfrMatrix> {
    let r = grossmann_royer(f, g)?;
    Ok(r.scaled(Complex64::new(2.0, 0.0)).with_kind(TfrKind::Wigner))
}

/// Ambiguity function `∫ e^{-2πiωt} f(t + x/2) ḡ(t - x/2) dt` on the standard
/// lattice, obtained as `R_ǧ f(x/2, ω/2)`.
pub fn ambiguity(f: &SampledSignal, g: &SampledSignal) -> Result<TfrMatrix> {
    let r = grossmann_royer(f, &reflect(g))?;
    let pg = PhaseGrid::standard(f.grid())?;
    Ok(TfrMatrix::from_parts(pg, r.into_values(), TfrKind::Ambiguity))
}

/// `F_σ F(p, q) = ∫∫ e^{-2πi(ωp - xq)} F(x, ω) dx dω`.
///
/// Rows of the output index `p`, columns index `q`. The standard lattice maps
/// to itself; the half-step and double-step lattices map to each other.
pub fn symplectic_fourier(big_f: &TfrMatrix) -> Result<TfrMatrix> {
    let pg = *big_f.pgrid();
    let out_lattice = match pg.lattice() {
        PhaseLattice::Standard => PhaseLattice::Standard,
        PhaseLattice::HalfStep => PhaseLattice::DoubleStep,
        PhaseLattice::DoubleStep => PhaseLattice::HalfStep,
    };
    let out_pg = PhaseGrid::with_lattice(pg.signal_grid(), out_lattice)?;
    let n = pg.n();
    let scale = pg.cell_area();
    // along ω (forward) for every x row
    let fwd = CenteredDft::new(n, Sign::Forward);
    let mut a = big_f.values().to_vec();
    a.par_chunks_mut(n).for_each(|row| fwd.process(row));
    // a[m][p]; transpose so p becomes the row, then inverse along x
    let mut t = transpose(&a, n);
    let inv = CenteredDft::new(n, Sign::Inverse);
    t.par_chunks_mut(n).for_each(|row| {
        inv.process(row);
        for v in row.iter_mut() {
            *v *= scale;
        }
    });
    Ok(TfrMatrix::from_parts(out_pg, t, TfrKind::Generic))
}

pub(crate) fn transpose(a: &[Complex64], n: usize) -> Vec<Complex64> {
    let mut t = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for j in 0..n {
            t[j * n + i] = a[i * n + j];
        }
    }
    t
}

/// `∫ R_g f(x, ω) dω`, sampled on the half-step `x` axis.
pub fn time_marginal(r: &TfrMatrix) -> Result<SampledSignal> {
    r.ensure_kind(&[TfrKind::Grt], "GRT")?;
    let pg = r.pgrid();
    let dw = pg.wgrid().dx();
    let n = pg.n();
    let samples = (0..n)
        .map(|m| r.row(m).iter().sum::<Complex64>() * dw)
        .collect();
    SampledSignal::new(pg.xgrid(), samples)
}

/// `∫ R_g f(x, ω) dx`, sampled on the half-step `ω` axis.
pub fn freq_marginal(r: &TfrMatrix) -> Result<SampledSignal> {
    r.ensure_kind(&[TfrKind::Grt], "GRT")?;
    let pg = r.pgrid();
    let dx = pg.xgrid().dx();
    let n = pg.n();
    let samples = (0..n)
        .map(|k| (0..n).map(|m| r.get(m, k)).sum::<Complex64>() * dx)
        .collect();
    SampledSignal::new(pg.wgrid(), samples)
}

/// Result of [`concentration_area`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Concentration {
    /// Number of cells selected.
    pub cells: usize,
    /// Their total phase-space area.
    pub area: f64,
    /// Quadrature mass of `|R|²` they carry.
    pub mass: f64,
}

/// Smallest set of cells, chosen greedily by decreasing `|R|²`, whose
/// quadrature mass reaches `target`. `None` if the whole array falls short.
pub fn concentration_area(r: &TfrMatrix, target: f64) -> Option<Concentration> {
    let cell = r.pgrid().cell_area();
    let mut w: Vec<f64> = r.values().iter().map(|z| z.norm_sqr() * cell).collect();
    w.sort_by(|a, b| b.total_cmp(a));
    let mut mass = 0.0;
    for (i, v) in w.iter().enumerate() {
        if mass >= target {
            return Some(Concentration { cells: i, area: i as f64 * cell, mass });
        }
        mass += v;
    }
    if mass >= target {
        Some(Concentration { cells: w.len(), area: w.len() as f64 * cell, mass })
    } else {
        None
    }
}

/// The standard symplectic form `σ((x, ω), (p, q)) = ωp - xq`.
pub fn symplectic_form(z: (f64, f64), w: (f64, f64)) -> f64 {
    z.1 * w.0 - z.0 * w.1
}
