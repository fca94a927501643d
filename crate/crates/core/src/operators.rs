//! Localization operators, Weyl operators and their dense matrices.
//!
//! Localization symbols live on the standard lattice; Weyl symbols on the
//! half-step lattice. Matrices act on sample vectors, `(A f)_i = Σ_j M_ij f_j`.

use crate::dft::{CenteredDft, Sign};
use crate::error::{Error, Result};
use crate::grid::{reflect, Grid1D, PhaseGrid, PhaseLattice, SampledSignal};
use crate::hermite::hermite_ft_eigen;
use crate::modspaces::{cyclic_conv2d, stft_adjoint, Exponent};
use crate::tfr::{grossmann_royer, stft, TfrKind, TfrMatrix};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// A symbol sampled on a phase grid, row-major with rows indexing `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct Symbol2D {
    pgrid: PhaseGrid,
    values: Vec<Complex64>,
}

impl Symbol2D {
    pub fn new(pgrid: PhaseGrid, values: Vec<Complex64>) -> Result<Self> {
        let n = pgrid.n();
        if values.len() != n * n {
            return Err(Error::Length { expected: n * n, got: values.len() });
        }
        if let Some(i) = values.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::NonFinite(i));
        }
        Ok(Self { pgrid, values })
    }

    pub fn from_fn(pgrid: PhaseGrid, f: impl Fn(f64, f64) -> Complex64) -> Result<Self> {
        let (xg, wg) = (pgrid.xgrid(), pgrid.wgrid());
        let n = pgrid.n();
        let mut values = Vec::with_capacity(n * n);
        for m in 0..n {
            for k in 0..n {
                values.push(f(xg.coord(m), wg.coord(k)));
            }
        }
        Self::new(pgrid, values)
    }

    pub fn constant(pgrid: PhaseGrid, c: Complex64) -> Self {
        let n = pgrid.n();
        Self { pgrid, values: vec![c; n * n] }
    }

    /// `a(‖z‖)` in unwrapped centered coordinates.
    pub fn radial(pgrid: PhaseGrid, a: impl Fn(f64) -> f64) -> Result<Self> {
        Self::from_fn(pgrid, |x, w| Complex64::new(a(x.hypot(w)), 0.0))
    }

    pub fn pgrid(&self) -> &PhaseGrid {
        &self.pgrid
    }

    pub fn n(&self) -> usize {
        self.pgrid.n()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn get(&self, m: usize, k: usize) -> Complex64 {
        self.values[m * self.n() + k]
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_real(&self) -> bool {
        self.values.iter().all(|z| z.im == 0.0)
    }

    pub fn max_diff(&self, other: &Symbol2D) -> Result<f64> {
        self.pgrid.ensure_same(&other.pgrid)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Phase-space quadrature `Σ a b̄ · cell_area`.
    pub fn inner(&self, other: &TfrMatrix) -> Result<Complex64> {
        self.pgrid.ensure_same(other.pgrid())?;
        let s: Complex64 = self.values.iter().zip(other.values()).map(|(a, b)| a * b.conj()).sum();
        Ok(s * self.pgrid.cell_area())
    }
}

impl From<TfrMatrix> for Symbol2D {
    fn from(t: TfrMatrix) -> Self {
        Symbol2D { pgrid: *t.pgrid(), values: t.into_values() }
    }
}

impl From<Symbol2D> for TfrMatrix {
    fn from(s: Symbol2D) -> Self {
        TfrMatrix::from_parts(s.pgrid, s.values, TfrKind::Generic)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Provenance {
    Localization,
    Weyl,
    Generic,
}

/// Dense realization of an operator on a signal grid.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    grid: Grid1D,
    entries: DMatrix<Complex64>,
    provenance: Provenance,
}

impl OperatorMatrix {
    pub fn new(grid: Grid1D, entries: DMatrix<Complex64>, provenance: Provenance) -> Result<Self> {
        let n = grid.n();
        if entries.nrows() != n || entries.ncols() != n {
            return Err(Error::Length { expected: n * n, got: entries.len() });
        }
        if let Some(i) = entries.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::NonFinite(i));
        }
        Ok(Self { grid, entries, provenance })
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn n(&self) -> usize {
        self.grid.n()
    }

    pub fn apply(&self, f: &SampledSignal) -> Result<SampledSignal> {
        self.grid.ensure_same(f.grid())?;
        let v = nalgebra::DVector::from_column_slice(f.samples());
        let out = &self.entries * v;
        SampledSignal::new(self.grid, out.iter().copied().collect())
    }

    /// Largest entry of `M - M*`.
    pub fn hermitian_residual(&self) -> f64 {
        let n = self.n();
        let mut r = 0.0f64;
        for i in 0..n {
            for j in 0..=i {
                r = r.max((self.entries[(i, j)] - self.entries[(j, i)].conj()).norm());
            }
        }
        r
    }

    pub fn max_entry_diff(&self, other: &OperatorMatrix) -> Result<f64> {
        self.grid.ensure_same(&other.grid)?;
        Ok(self
            .entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}

/// Singular values, nonincreasing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SingularSpectrum {
    values: Vec<f64>,
}

impl SingularSpectrum {
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::LinAlg("singular values must be finite and nonnegative".into()));
        }
        values.sort_by(|a, b| b.total_cmp(a));
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `ℓ^p` norm of the spectrum.
    pub fn schatten(&self, p: Exponent) -> f64 {
        if self.values.is_empty() {
            return 0.0;
        }
        if p.is_inf() {
            return self.values[0];
        }
        let top = self.values[0];
        if top == 0.0 {
            return 0.0;
        }
        let p = p.value();
        let s: f64 = self.values.iter().map(|v| (v / top).powf(p)).sum();
        top * s.powf(1.0 / p)
    }
}

fn check_windows(a: &Symbol2D, phi1: &SampledSignal, phi2: &SampledSignal) -> Result<Grid1D> {
    a.pgrid().ensure_lattice(PhaseLattice::Standard)?;
    let g = *a.pgrid().signal_grid();
    g.ensure_same(phi1.grid())?;
    g.ensure_same(phi2.grid())?;
    if phi1.is_zero() || phi2.is_zero() {
        return Err(Error::ZeroWindow);
    }
    Ok(g)
}

/// `A f(t) = ∫∫ a(x, ω) R_{φ̌1} f(x/2, ω/2) · [R(x/2, ω/2) φ̌2](t) dx dω`.
pub fn localization_apply_grt(
    a: &Symbol2D,
    phi1: &SampledSignal,
    phi2: &SampledSignal,
    f: &SampledSignal,
) -> Result<SampledSignal> {
    let grid = check_windows(a, phi1, phi2)?;
    grid.ensure_same(f.grid())?;
    let r = grossmann_royer(f, &reflect(phi1))?;
    let n = grid.n();
    let h = n / 2;
    let inv = CenteredDft::new(n, Sign::Inverse);
    // rows[m][i] = Σ_k a R e^{-4πiω'x'} e^{4πiω't_i}
    let mut rows: Vec<Complex64> = a.values().iter().zip(r.values()).map(|(x, y)| x * y).collect();
    rows.par_chunks_mut(n).enumerate().for_each(|(m, row)| {
        let mm = m as i64 - h as i64;
        for (k, v) in row.iter_mut().enumerate() {
            let kk = k as i64 - h as i64;
            *v *= Complex64::from_polar(1.0, -PI * (kk * mm).rem_euclid(2 * n as i64) as f64 / n as f64);
        }
        inv.process(row);
    });
    let p2 = reflect(phi2);
    let ps = p2.samples();
    let scale = PhaseGrid::standard(&grid)?.cell_area();
    let samples = (0..n)
        .into_par_iter()
        .map(|i| {
            // φ̌2(2x'_m - t_i) = φ̌2[m - i + n/2]
            let s: Complex64 = (0..n).map(|m| rows[m * n + i] * ps[(m + n + h - i) % n]).sum();
            s * scale
        })
        .collect();
    SampledSignal::new(grid, samples)
}

/// `A f = V*_{φ2}(a · V_{φ1} f)`.
pub fn localization_apply_stft(
    a: &Symbol2D,
    phi1: &SampledSignal,
    phi2: &SampledSignal,
    f: &SampledSignal,
) -> Result<SampledSignal> {
    check_windows(a, phi1, phi2)?;
    let v = stft(f, phi1)?;
    let prod: Vec<Complex64> = v.values().iter().zip(a.values()).map(|(x, y)| x * y).collect();
    let big_f = TfrMatrix::new(*v.pgrid(), prod, TfrKind::Generic)?;
    stft_adjoint(&big_f, phi2)
}

/// Dense matrix of the localization operator with symbol `a` and windows
/// `φ1` (analysis) and `φ2` (synthesis).
pub fn localization_matrix(a: &Symbol2D, phi1: &SampledSignal, phi2: &SampledSignal) -> Result<OperatorMatrix> {
    let grid = check_windows(a, phi1, phi2)?;
    let n = grid.n();
    let h = n / 2;
    // A_m(d) = Σ_k a(m,k) e^{2πi(k - n/2)d/n}
    let mut planner = rustfft::FftPlanner::new();
    let ifft = planner.plan_fft_inverse(n);
    let mut am = a.values().to_vec();
    am.par_chunks_mut(n).for_each(|row| {
        ifft.process(row);
        for (d, v) in row.iter_mut().enumerate() {
            if d % 2 == 1 {
                *v = -*v;
            }
        }
    });
    let (p1, p2) = (phi1.samples(), phi2.samples());
    let scale = grid.dx() * grid.dx() * grid.dw();
    let rows: Vec<Vec<Complex64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut out = vec![ZERO; n];
            for m in 0..n {
                let w2 = p2[(i + n + h - m) % n];
                if w2 == ZERO {
                    continue;
                }
                let arow = &am[m * n..(m + 1) * n];
                for (j, o) in out.iter_mut().enumerate() {
                    *o += w2 * p1[(j + n + h - m) % n].conj() * arow[(i + n - j) % n];
                }
            }
            out.iter().map(|v| v * scale).collect()
        })
        .collect();
    let entries = DMatrix::from_fn(n, n, |i, j| rows[i][j]);
    OperatorMatrix::new(grid, entries, Provenance::Localization)
}

/// `S_m(j) = Σ_k σ(m,k) e^{4πiω'_k (t_j - x'_m)}`, row-major in `m`.
fn weyl_rows(sigma: &Symbol2D) -> Vec<Complex64> {
    let n = sigma.n();
    let h = n / 2;
    let inv = CenteredDft::new(n, Sign::Inverse);
    let mut rows = sigma.values().to_vec();
    rows.par_chunks_mut(n).enumerate().for_each(|(m, row)| {
        let mm = m as i64 - h as i64;
        for (k, v) in row.iter_mut().enumerate() {
            let kk = k as i64 - h as i64;
            *v *= Complex64::from_polar(1.0, -PI * (kk * mm).rem_euclid(2 * n as i64) as f64 / n as f64);
        }
        inv.process(row);
    });
    rows
}

fn weyl_prepare(sigma: &Symbol2D) -> Result<(Grid1D, f64)> {
    sigma.pgrid().ensure_lattice(PhaseLattice::HalfStep)?;
    Ok((*sigma.pgrid().signal_grid(), 2.0 * sigma.pgrid().cell_area()))
}

/// Weyl operator defined weakly by `⟨L_σ f, g⟩ = 2 ⟨σ, R_f g⟩`, with `σ` on the
/// half-step lattice.
pub fn weyl_apply(sigma: &Symbol2D, f: &SampledSignal) -> Result<SampledSignal> {
    let (grid, c) = weyl_prepare(sigma)?;
    grid.ensure_same(f.grid())?;
    let n = grid.n();
    let h = n / 2;
    let rows = weyl_rows(sigma);
    let fs = f.samples();
    let samples = (0..n)
        .into_par_iter()
        .map(|j| {
            let s: Complex64 = (0..n).map(|m| rows[m * n + j] * fs[(m + n + h - j) % n]).sum();
            s * c
        })
        .collect();
    SampledSignal::new(grid, samples)
}

pub fn weyl_matrix(sigma: &Symbol2D) -> Result<OperatorMatrix> {
    let (grid, c) = weyl_prepare(sigma)?;
    let n = grid.n();
    let h = n / 2;
    let rows = weyl_rows(sigma);
    let entries = DMatrix::from_fn(n, n, |j, i| rows[((i + j + n - h) % n) * n + j] * c);
    OperatorMatrix::new(grid, entries, Provenance::Weyl)
}

/// Weyl symbol of the localization operator with symbol `a` and windows
/// `φ1`, `φ2`: `σ = 2 (a ∗ R_{φ1} φ2)`, the convolution taken over the plane
/// (no periodic wrap) and sampled on the half-step lattice.
pub fn antiwick_to_weyl(a: &Symbol2D, phi1: &SampledSignal, phi2: &SampledSignal) -> Result<Symbol2D> {
    let grid = check_windows(a, phi1, phi2)?;
    let r = grossmann_royer(phi2, phi1)?;
    let n = grid.n();
    let big = 2 * n;
    // a sits on every other half-step node of a 2n x 2n canvas
    let mut ca = vec![ZERO; big * big];
    for m in 0..n {
        for k in 0..n {
            ca[(2 * m) * big + 2 * k] = a.get(m, k);
        }
    }
    let mut cr = vec![ZERO; big * big];
    for m in 0..n {
        for k in 0..n {
            cr[m * big + k] = r.get(m, k);
        }
    }
    let conv = cyclic_conv2d(&ca, &cr, big);
    // σ(m, k) = Σ a(m', k') R(m - 2m' + n, k - 2k' + n)
    let scale = 2.0 * PhaseGrid::standard(&grid)?.cell_area();
    let mut values = Vec::with_capacity(n * n);
    for m in 0..n {
        for k in 0..n {
            values.push(conv[(m + n) * big + k + n] * scale);
        }
    }
    Symbol2D::new(PhaseGrid::half_step(&grid)?, values)
}

/// Zero out entries below `1e-40` of the largest one. Gaussian windows leave
/// entries near the underflow limit, and the dense decompositions produce
/// NaNs when the squares of those underflow mid-reduction.
fn flush_tiny(mut a: DMatrix<Complex64>) -> DMatrix<Complex64> {
    let tiny = a.iter().map(|z| z.norm()).fold(0.0, f64::max) * 1e-40;
    for z in a.iter_mut() {
        if z.norm() < tiny {
            *z = Complex64::new(0.0, 0.0);
        }
    }
    a
}

pub fn singular_values(m: &OperatorMatrix) -> Result<SingularSpectrum> {
    let svd = flush_tiny(m.entries.clone())
        .try_svd(false, false, f64::EPSILON, 0)
        .ok_or_else(|| Error::LinAlg("SVD did not converge".into()))?;
    SingularSpectrum::new(svd.singular_values.iter().copied().collect())
}

pub fn schatten_norm(m: &OperatorMatrix, p: Exponent) -> Result<f64> {
    Ok(singular_values(m)?.schatten(p))
}

/// Eigen-structure of a localization operator with a radial symbol and equal
/// Gaussian windows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DaubechiesSpectrum {
    /// Eigenvalues, descending.
    pub eigenvalues: Vec<f64>,
    /// `|⟨v_k, h_k⟩|` for the leading eigenvectors against FT-eigen Hermite
    /// functions.
    pub hermite_overlaps: Vec<f64>,
}

/// Tolerance on `M - M*` accepted by [`daubechies_spectrum`].
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Diagonalize `localization_matrix(a, g, g)` and compare its leading
/// `overlaps` eigenvectors with Hermite functions.
pub fn daubechies_spectrum(a: &Symbol2D, g: &SampledSignal, overlaps: usize) -> Result<DaubechiesSpectrum> {
    let m = localization_matrix(a, g, g)?;
    let res = m.hermitian_residual();
    let scale = m.entries.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1.0);
    if res > HERMITIAN_TOL * scale {
        return Err(Error::NotHermitian(res));
    }
    let herm = flush_tiny((&m.entries + m.entries.adjoint()) * Complex64::new(0.5, 0.0));
    let eig = nalgebra::SymmetricEigen::new(herm);
    let mut order: Vec<usize> = (0..m.n()).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let grid = *m.grid();
    let sq = grid.dx().sqrt();
    let mut hermite_overlaps = Vec::with_capacity(overlaps);
    for (k, &idx) in order.iter().take(overlaps).enumerate() {
        let h = hermite_ft_eigen(k, &grid)?;
        let v = eig.eigenvectors.column(idx);
        let ip: Complex64 = v.iter().zip(h.samples()).map(|(a, b)| a * b.conj()).sum();
        hermite_overlaps.push(ip.norm() * sq / h.norm());
    }
    Ok(DaubechiesSpectrum { eigenvalues, hermite_overlaps })
}

/// The Gaussian window `2^{1/4} e^{-πt²}` (unit norm, Fourier invariant).
pub fn gaussian_window(grid: &Grid1D) -> SampledSignal {
    SampledSignal::from_fn(*grid, |t| Complex64::new(2f64.powf(0.25) * (-PI * t * t).exp(), 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::inner;
    use crate::testutil::{noise, noise_vec};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn setup(n: usize) -> (Grid1D, PhaseGrid, PhaseGrid) {
        let g = Grid1D::centered(n, 1.0 / (n as f64).sqrt()).unwrap();
        (g, PhaseGrid::standard(&g).unwrap(), PhaseGrid::half_step(&g).unwrap())
    }

    #[test]
    fn localization_forms_agree_and_match_matrix() {
        let (g, ps, _) = setup(32);
        let a = Symbol2D::new(ps, noise_vec(32 * 32, 1)).unwrap();
        let (p1, p2, f) = (noise(g, 2), noise(g, 3), noise(g, 4));
        let x = localization_apply_grt(&a, &p1, &p2, &f).unwrap();
        let y = localization_apply_stft(&a, &p1, &p2, &f).unwrap();
        assert!(x.max_diff(&y).unwrap() < 1e-12);
        let m = localization_matrix(&a, &p1, &p2).unwrap();
        assert!(m.apply(&f).unwrap().max_diff(&x).unwrap() < 1e-12);
    }

    #[test]
    fn unit_symbol_is_inner_product_times_identity() {
        let (g, ps, _) = setup(16);
        let w = noise(g, 5);
        let one = Symbol2D::constant(ps, c(1.0, 0.0));
        let m = localization_matrix(&one, &w, &w).unwrap();
        let nrm2 = inner(&w, &w).unwrap();
        for i in 0..16 {
            for j in 0..16 {
                let want = if i == j { nrm2 } else { c(0.0, 0.0) };
                assert!((m.entries()[(i, j)] - want).norm() < 1e-12);
            }
        }
        let zero = Symbol2D::constant(ps, c(0.0, 0.0));
        assert!(localization_apply_grt(&zero, &w, &w, &w).unwrap().is_zero());
        assert!(matches!(
            localization_matrix(&one, &SampledSignal::zeros(g), &w),
            Err(Error::ZeroWindow)
        ));
    }

    #[test]
    fn weyl_matrix_matches_apply_and_weak_form() {
        let (g, _, ph) = setup(32);
        let s = Symbol2D::new(ph, noise_vec(32 * 32, 6)).unwrap();
        let (f, h) = (noise(g, 7), noise(g, 8));
        let lf = weyl_apply(&s, &f).unwrap();
        assert!(weyl_matrix(&s).unwrap().apply(&f).unwrap().max_diff(&lf).unwrap() < 1e-12);
        let lhs = inner(&lf, &h).unwrap();
        let rhs = s.inner(&grossmann_royer(&h, &f).unwrap()).unwrap() * 2.0;
        assert!((lhs - rhs).norm() < 1e-12 * lhs.norm().max(1.0));
    }

    #[test]
    fn lattice_checks() {
        let (g, ps, ph) = setup(16);
        let w = noise(g, 1);
        assert!(weyl_apply(&Symbol2D::constant(ps, c(1.0, 0.0)), &w).is_err());
        assert!(localization_matrix(&Symbol2D::constant(ph, c(1.0, 0.0)), &w, &w).is_err());
    }

    #[test]
    fn antiwick_of_zero_and_delta() {
        let (g, ps, ph) = setup(16);
        let (p1, p2) = (noise(g, 9), noise(g, 10));
        let z = antiwick_to_weyl(&Symbol2D::constant(ps, c(0.0, 0.0)), &p1, &p2).unwrap();
        assert_eq!(z.max_abs(), 0.0);
        // a single cell at standard index (5, 11) shifts R by (2*5 - 16, 2*11 - 16) half-steps
        let cell = ps.cell_area();
        let mut v = vec![c(0.0, 0.0); 256];
        v[5 * 16 + 11] = c(1.0 / cell, 0.0);
        let s = antiwick_to_weyl(&Symbol2D::new(ps, v).unwrap(), &p1, &p2).unwrap();
        let r = grossmann_royer(&p2, &p1).unwrap();
        assert_eq!(s.pgrid(), &ph);
        for m in 0..16i64 {
            for k in 0..16i64 {
                let (rm, rk) = (m - 10 + 16, k - 22 + 16);
                let want = if (0..16).contains(&rm) && (0..16).contains(&rk) {
                    r.get(rm as usize, rk as usize) * 2.0
                } else {
                    c(0.0, 0.0)
                };
                assert!((s.get(m as usize, k as usize) - want).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn schatten_basics() {
        let (g, _, _) = setup(16);
        let f = noise(g, 11).normalized().unwrap();
        let v: Vec<Complex64> = f.samples().iter().map(|z| z * g.dx().sqrt()).collect();
        let proj = DMatrix::from_fn(16, 16, |i, j| v[i] * v[j].conj());
        let m = OperatorMatrix::new(g, proj, Provenance::Generic).unwrap();
        let sv = singular_values(&m).unwrap();
        assert!((sv.values()[0] - 1.0).abs() < 1e-12);
        assert!(sv.values()[1..].iter().all(|&s| s < 1e-12));

        let r = DMatrix::from_column_slice(16, 16, &noise_vec(256, 12));
        let m = OperatorMatrix::new(g, r, Provenance::Generic).unwrap();
        let fro: f64 = m.entries().iter().map(|z| z.norm_sqr()).sum();
        let s2 = schatten_norm(&m, Exponent::TWO).unwrap();
        assert!((s2 * s2 - fro).abs() < 1e-12 * fro);
        let s1 = schatten_norm(&m, Exponent::ONE).unwrap();
        let sinf = schatten_norm(&m, Exponent::INF).unwrap();
        assert!(s1 >= s2 && s2 >= sinf);
    }

    #[test]
    fn daubechies_gaussian_bump() {
        let n = 64;
        let (g, ps, _) = setup(n);
        let a = Symbol2D::radial(ps, |r| (-PI * r * r).exp()).unwrap();
        let sp = daubechies_spectrum(&a, &gaussian_window(&g), 6).unwrap();
        for (k, &lam) in sp.eigenvalues.iter().take(6).enumerate() {
            let want = 0.5f64.powi(k as i32 + 1);
            assert!((lam - want).abs() < 1e-6, "k={k} {lam} {want}");
        }
        assert!(sp.hermite_overlaps.iter().all(|&o| o > 1.0 - 1e-6), "{:?}", sp.hermite_overlaps);
    }
}
