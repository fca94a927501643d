//! Direct-summation oracles and fixture helpers shared by the integration
//! tests. Everything here is deliberately naive: plain loops over the
//! defining sums, no FFTs.

#![allow(dead_code)]

use rayon::prelude::*;
use std::f64::consts::PI;
use tfloc::fixtures::{FixtureRng, GaussianMixture, GaussianSpec};
use tfloc::{weight_eval, Exponent, MixedNormParams, Complex64, Grid1D, PhaseGrid, SampledSignal, Symbol2D, TfrKind, TfrMatrix};

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn cis(phase: f64) -> Complex64 {
    Complex64::from_polar(1.0, phase)
}

/// The desk-scale grid: n = 256, dx = 1/16.
pub fn desk_grid() -> Grid1D {
    Grid1D::centered(256, 1.0 / 16.0).unwrap()
}

/// Self-dual centered grid, dx = 1/√n.
pub fn self_dual(n: usize) -> Grid1D {
    Grid1D::centered(n, 1.0 / (n as f64).sqrt()).unwrap()
}

pub fn mixture(rng: &mut FixtureRng, grid: &Grid1D) -> GaussianMixture {
    GaussianMixture::random_unit(rng, 3, grid).unwrap()
}

pub fn signal(rng: &mut FixtureRng, grid: &Grid1D) -> SampledSignal {
    mixture(rng, grid).sample(grid)
}

pub fn gauss(rng: &mut FixtureRng, grid: &Grid1D) -> SampledSignal {
    GaussianSpec::random(rng).sample(grid)
}

pub fn noise_vec(rng: &mut FixtureRng, len: usize) -> Vec<Complex64> {
    (0..len).map(|_| rng.complex()).collect()
}

pub fn noise_signal(rng: &mut FixtureRng, grid: &Grid1D) -> SampledSignal {
    SampledSignal::new(*grid, noise_vec(rng, grid.n())).unwrap()
}

pub fn max_abs(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Max difference relative to the larger of the two magnitudes.
pub fn rel_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    let scale = max_abs(a).max(max_abs(b)).max(f64::MIN_POSITIVE);
    max_diff(a, b) / scale
}

/// Periodic sample lookup by coordinate.
pub fn at(f: &SampledSignal, t: f64) -> Complex64 {
    f[f.grid().index_of(t).expect("coordinate on grid")]
}

pub fn dft_direct(f: &SampledSignal) -> Vec<Complex64> {
    let g = f.grid();
    let d = g.dual();
    (0..g.n())
        .map(|k| {
            let w = d.coord(k);
            (0..g.n()).map(|i| f[i] * cis(-2.0 * PI * g.coord(i) * w)).sum::<Complex64>() * g.dx()
        })
        .collect()
}

pub fn idft_direct(big_f: &SampledSignal, target: &Grid1D) -> Vec<Complex64> {
    let d = big_f.grid();
    (0..target.n())
        .map(|i| {
            let t = target.coord(i);
            (0..d.n()).map(|k| big_f[k] * cis(2.0 * PI * t * d.coord(k))).sum::<Complex64>() * d.dx()
        })
        .collect()
}

/// `R_g f(x, ω) = ∫ e^{4πiω(t-x)} f(2x - t) ḡ(t) dt` on the half-step lattice.
pub fn grt_direct(f: &SampledSignal, g: &SampledSignal) -> Vec<Complex64> {
    let grid = f.grid();
    let pg = PhaseGrid::half_step(grid).unwrap();
    let (xg, wg) = (pg.xgrid(), pg.wgrid());
    let n = grid.n();
    let mut out = Vec::with_capacity(n * n);
    for m in 0..n {
        let x = xg.coord(m);
        for k in 0..n {
            let w = wg.coord(k);
            let s: Complex64 = (0..n)
                .map(|i| {
                    let t = grid.coord(i);
                    cis(4.0 * PI * w * (t - x)) * at(f, 2.0 * x - t) * g[i].conj()
                })
                .sum();
            out.push(s * grid.dx());
        }
    }
    out
}

/// `V_g f(x, ω) = ∫ e^{-2πitω} f(t) ḡ(t - x) dt` on the standard lattice.
pub fn stft_direct(f: &SampledSignal, g: &SampledSignal) -> Vec<Complex64> {
    let grid = f.grid();
    let d = grid.dual();
    let n = grid.n();
    let mut out = Vec::with_capacity(n * n);
    for m in 0..n {
        let x = grid.coord(m);
        for k in 0..n {
            let w = d.coord(k);
            let s: Complex64 = (0..n)
                .map(|i| {
                    let t = grid.coord(i);
                    cis(-2.0 * PI * t * w) * f[i] * at(g, t - x).conj()
                })
                .sum();
            out.push(s * grid.dx());
        }
    }
    out
}

/// Cross-Wigner `∫ e^{-2πiωτ} f(x + τ/2) ḡ(x - τ/2) dτ` on the half-step
/// lattice, summed over `s = x + τ/2` on the signal grid.
pub fn wigner_direct(f: &SampledSignal, g: &SampledSignal) -> Vec<Complex64> {
    let grid = f.grid();
    let pg = PhaseGrid::half_step(grid).unwrap();
    let (xg, wg) = (pg.xgrid(), pg.wgrid());
    let n = grid.n();
    let mut out = Vec::with_capacity(n * n);
    for m in 0..n {
        let x = xg.coord(m);
        for k in 0..n {
            let w = wg.coord(k);
            // τ = 2(s - x), dτ = 2 ds
            let s: Complex64 = (0..n)
                .map(|i| {
                    let sv = grid.coord(i);
                    cis(-4.0 * PI * w * (sv - x)) * f[i] * at(g, 2.0 * x - sv).conj()
                })
                .sum();
            out.push(s * 2.0 * grid.dx());
        }
    }
    out
}

/// Ambiguity `∫ e^{-2πiωt} f(t + x/2) ḡ(t - x/2) dt` on the standard lattice,
/// summed over `s = t + x/2`.
pub fn ambiguity_direct(f: &SampledSignal, g: &SampledSignal) -> Vec<Complex64> {
    let grid = f.grid();
    let d = grid.dual();
    let n = grid.n();
    let mut out = Vec::with_capacity(n * n);
    for m in 0..n {
        let x = grid.coord(m);
        for k in 0..n {
            let w = d.coord(k);
            let s: Complex64 = (0..n)
                .map(|i| {
                    let sv = grid.coord(i);
                    cis(-2.0 * PI * w * (sv - x / 2.0)) * f[i] * at(g, sv - x).conj()
                })
                .sum();
            out.push(s * grid.dx());
        }
    }
    out
}

/// `F_σ F(p, q) = Σ e^{-2πi(ωp - xq)} F(x, ω) dx dω`, written to the lattice
/// that `symplectic_fourier` reports.
pub fn symplectic_direct(big_f: &TfrMatrix, out_pg: &PhaseGrid) -> Vec<Complex64> {
    let pg = big_f.pgrid();
    let (xg, wg) = (pg.xgrid(), pg.wgrid());
    let (pgx, pgq) = (out_pg.xgrid(), out_pg.wgrid());
    let n = pg.n();
    (0..n * n)
        .into_par_iter()
        .map(|idx| {
            let (p, q) = (pgx.coord(idx / n), pgq.coord(idx % n));
            let mut s = c(0.0, 0.0);
            for m in 0..n {
                for k in 0..n {
                    s += cis(-2.0 * PI * (wg.coord(k) * p - xg.coord(m) * q)) * big_f.get(m, k);
                }
            }
            s * pg.cell_area()
        })
        .collect()
}

pub fn stft_adjoint_direct(big_f: &TfrMatrix, g: &SampledSignal) -> Vec<Complex64> {
    let grid = g.grid();
    let d = grid.dual();
    let n = grid.n();
    (0..n)
        .map(|i| {
            let t = grid.coord(i);
            let mut s = c(0.0, 0.0);
            for m in 0..n {
                let x = grid.coord(m);
                let gv = at(g, t - x);
                for k in 0..n {
                    s += big_f.get(m, k) * cis(2.0 * PI * t * d.coord(k)) * gv;
                }
            }
            s * grid.dx() * d.dx()
        })
        .collect()
}

pub fn convolve_direct(f: &SampledSignal, g: &SampledSignal) -> Vec<Complex64> {
    let grid = f.grid();
    (0..grid.n())
        .map(|i| {
            let t = grid.coord(i);
            (0..grid.n()).map(|j| f[j] * at(g, t - grid.coord(j))).sum::<Complex64>() * grid.dx()
        })
        .collect()
}

pub fn convolve2d_direct(a: &TfrMatrix, b: &TfrMatrix) -> Vec<Complex64> {
    let n = a.n();
    let h = n / 2;
    let mut out = Vec::with_capacity(n * n);
    for m in 0..n {
        for k in 0..n {
            let mut s = c(0.0, 0.0);
            for i in 0..n {
                for j in 0..n {
                    s += a.get(i, j) * b.get((m + n + h - i) % n, (k + n + h - j) % n);
                }
            }
            out.push(s * a.pgrid().cell_area());
        }
    }
    out
}

/// Localization operator from the STFT display, one output sample at a time:
/// `Σ_{x,ω} a · V_{φ1} f(x, ω) · e^{2πiωt} φ2(t - x) dx dω`, with `V` summed
/// directly.
pub fn localization_direct(a: &Symbol2D, p1: &SampledSignal, p2: &SampledSignal, f: &SampledSignal) -> Vec<Complex64> {
    let grid = f.grid();
    let d = grid.dual();
    let n = grid.n();
    let v = stft_direct(f, p1);
    (0..n)
        .map(|i| {
            let t = grid.coord(i);
            let mut s = c(0.0, 0.0);
            for m in 0..n {
                let x = grid.coord(m);
                let w2 = at(p2, t - x);
                for k in 0..n {
                    s += a.get(m, k) * v[m * n + k] * cis(2.0 * PI * d.coord(k) * t) * w2;
                }
            }
            s * grid.dx() * d.dx()
        })
        .collect()
}

/// Localization operator from the Grossmann-Royer display:
/// `Σ a(x, ω) R_{φ̌1} f(x/2, ω/2) e^{4πi(ω/2)(t - x/2)} φ̌2(x - t) dx dω`.
pub fn localization_grt_direct(a: &Symbol2D, p1: &SampledSignal, p2: &SampledSignal, f: &SampledSignal) -> Vec<Complex64> {
    let grid = f.grid();
    let d = grid.dual();
    let n = grid.n();
    let p1c = tfloc::reflect(p1);
    let p2c = tfloc::reflect(p2);
    let r = grt_direct(f, &p1c);
    (0..n)
        .map(|i| {
            let t = grid.coord(i);
            let mut s = c(0.0, 0.0);
            for m in 0..n {
                let x = grid.coord(m);
                let w2 = at(&p2c, x - t);
                for k in 0..n {
                    let w = d.coord(k);
                    s += a.get(m, k) * r[m * n + k] * cis(2.0 * PI * w * (t - x / 2.0)) * w2;
                }
            }
            s * grid.dx() * d.dx()
        })
        .collect()
}

/// Weyl operator as a phase-space superposition of reflections,
/// `L_σ f(t) = 2 Σ_{x,ω} σ(x, ω) e^{4πiω(t - x)} f(2x - t) dx dω` over the
/// half-step lattice of the symbol. This is the mid-point quantization after
/// the substitution `y = 2x - t`.
pub fn weyl_direct(sigma: &Symbol2D, f: &SampledSignal) -> Vec<Complex64> {
    let grid = f.grid();
    let pg = sigma.pgrid();
    let (xg, wg) = (pg.xgrid(), pg.wgrid());
    let n = grid.n();
    (0..n)
        .map(|i| {
            let t = grid.coord(i);
            let mut s = c(0.0, 0.0);
            for m in 0..n {
                let x = xg.coord(m);
                let fv = at(f, 2.0 * x - t);
                for k in 0..n {
                    s += sigma.get(m, k) * cis(4.0 * PI * wg.coord(k) * (t - x)) * fv;
                }
            }
            s * 2.0 * pg.cell_area()
        })
        .collect()
}

/// `σ(m, k) = 2 Σ a(m', k') R(m - 2m' + n, k - 2k' + n) dx dω`, zero outside.
pub fn antiwick_direct(a: &Symbol2D, r: &TfrMatrix) -> Vec<Complex64> {
    let n = a.n() as i64;
    let cell = a.pgrid().cell_area();
    let mut out = vec![c(0.0, 0.0); (n * n) as usize];
    for m in 0..n {
        for k in 0..n {
            let mut s = c(0.0, 0.0);
            for mp in 0..n {
                let ri = m - 2 * mp + n;
                if !(0..n).contains(&ri) {
                    continue;
                }
                for kp in 0..n {
                    let rk = k - 2 * kp + n;
                    if (0..n).contains(&rk) {
                        s += a.get(mp as usize, kp as usize) * r.get(ri as usize, rk as usize);
                    }
                }
            }
            out[(m * n + k) as usize] = s * 2.0 * cell;
        }
    }
    out
}

/// 2-D STFT of a symbol with the Gaussian `√2 e^{-π|z|²}`: separable direct
/// DFTs per window position. Returns `|V|` indexed `[z][ζ1][ζ2]`.
pub fn symbol_stft_abs_direct(a: &Symbol2D) -> Vec<f64> {
    let pg = a.pgrid();
    let n = pg.n();
    let (xg, wg) = (pg.xgrid(), pg.wgrid());
    let (zx, zw) = (xg.dual(), wg.dual());
    let cell = pg.cell_area();
    let e1: Vec<Complex64> = (0..n * n)
        .map(|idx| cis(-2.0 * PI * xg.coord(idx / n) * zx.coord(idx % n)))
        .collect();
    let e2: Vec<Complex64> = (0..n * n)
        .map(|idx| cis(-2.0 * PI * wg.coord(idx / n) * zw.coord(idx % n)))
        .collect();
    let blocks: Vec<Vec<f64>> = (0..n * n)
        .into_par_iter()
        .map(|z| {
            let (zx0, zw0) = (xg.coord(z / n), wg.coord(z % n));
            let mut buf = vec![c(0.0, 0.0); n * n];
            let mut tmp = vec![c(0.0, 0.0); n * n];
            for i1 in 0..n {
                for i2 in 0..n {
                    // periodic window
                    let pu = xg.coord(xg.index_of(xg.coord(i1) - zx0).unwrap());
                    let pv = wg.coord(wg.index_of(wg.coord(i2) - zw0).unwrap());
                    buf[i1 * n + i2] = a.get(i1, i2) * tfloc::modspaces::symbol_window(pu, pv);
                }
            }
            // over i2 → k2, then i1 → k1
            for i1 in 0..n {
                for k2 in 0..n {
                    tmp[i1 * n + k2] = (0..n).map(|i2| buf[i1 * n + i2] * e2[i2 * n + k2]).sum();
                }
            }
            let mut out = Vec::with_capacity(n * n);
            for k1 in 0..n {
                for k2 in 0..n {
                    let s: Complex64 = (0..n).map(|i1| tmp[i1 * n + k2] * e1[i1 * n + k1]).sum();
                    out.push((s * cell).norm());
                }
            }
            out
        })
        .collect();
    blocks.concat()
}

/// Plain-sum mixed norm of `v = symbol_stft_abs_direct(a)`: inner exponent
/// over `z`, outer over `ζ`, weight at `(‖z‖, ‖ζ‖)`.
pub fn symbol_norm_direct(a: &Symbol2D, v: &[f64], params: &MixedNormParams) -> f64 {
    let pg = a.pgrid();
    let n = pg.n();
    let (xg, wg) = (pg.xgrid(), pg.wgrid());
    let (zx, zw) = (xg.dual(), wg.dual());
    let (p, q) = (params.p, params.q);
    let mut outer = Vec::with_capacity(n * n);
    for k1 in 0..n {
        for k2 in 0..n {
            let zeta = zx.coord(k1).hypot(zw.coord(k2));
            let vals = (0..n * n).map(|z| {
                let zn = xg.coord(z / n).hypot(wg.coord(z % n));
                v[z * n * n + k1 * n + k2] * weight_eval(&params.weight, zn, zeta).unwrap()
            });
            outer.push(lp(vals, p, pg.cell_area()));
        }
    }
    lp(outer.into_iter(), q, zx.dx() * zw.dx())
}

fn lp(vals: impl Iterator<Item = f64>, p: Exponent, h: f64) -> f64 {
    if p.is_inf() {
        vals.fold(0.0, f64::max)
    } else {
        (vals.map(|v| v.powf(p.value())).sum::<f64>() * h).powf(1.0 / p.value())
    }
}

/// Singular values by one-sided (Hestenes) Jacobi rotations.
pub fn jacobi_singular_values(entries: &nalgebra::DMatrix<Complex64>) -> Vec<f64> {
    let (rows, cols) = entries.shape();
    let mut a: Vec<Vec<Complex64>> = (0..cols).map(|j| (0..rows).map(|i| entries[(i, j)]).collect()).collect();
    for _sweep in 0..60 {
        let mut off = 0.0f64;
        for p in 0..cols {
            for q in p + 1..cols {
                let alpha: f64 = a[p].iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = a[q].iter().map(|z| z.norm_sqr()).sum();
                let gamma: Complex64 = a[p].iter().zip(&a[q]).map(|(x, y)| x.conj() * y).sum();
                let g = gamma.norm();
                if g == 0.0 || g <= 1e-15 * (alpha * beta).sqrt() {
                    continue;
                }
                off = off.max(g / (alpha * beta).sqrt());
                let u = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let t = if zeta == 0.0 { 1.0 } else { t };
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = cs * t;
                for i in 0..rows {
                    let x = a[p][i];
                    let y = a[q][i] * u.conj();
                    a[p][i] = x * cs - y * sn;
                    a[q][i] = (x * sn + y * cs) * u;
                }
            }
        }
        if off < 1e-15 {
            break;
        }
    }
    let mut s: Vec<f64> = a.iter().map(|col| col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()).collect();
    s.sort_by(|x, y| y.total_cmp(x));
    s
}

pub fn tfr(pg: PhaseGrid, values: Vec<Complex64>) -> TfrMatrix {
    TfrMatrix::new(pg, values, TfrKind::Generic).unwrap()
}
