//! Weights, weighted mixed norms and modulation-space norms.

use crate::dft::{CenteredDft, Sign};
use crate::error::{Error, Result};
use crate::grid::{fourier, SampledSignal};
use crate::operators::Symbol2D;
use crate::tfr::{stft, TfrKind, TfrMatrix};
use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};
use std::f64::consts::{E, PI};
use std::fmt;

/// An exponent in `[1, ∞]`. Serialized as a number or the string `"inf"`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "ExponentRepr", into = "ExponentRepr")]
pub struct Exponent(f64);

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ExponentRepr {
    Num(f64),
    Text(String),
}

impl Exponent {
    pub const ONE: Exponent = Exponent(1.0);
    pub const TWO: Exponent = Exponent(2.0);
    pub const INF: Exponent = Exponent(f64::INFINITY);

    pub fn new(p: f64) -> Result<Self> {
        if p >= 1.0 && !p.is_nan() {
            Ok(Exponent(p))
        } else {
            Err(Error::InvalidParameter(format!("exponent {p} outside [1, inf]")))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_inf(self) -> bool {
        self.0.is_infinite()
    }

    /// `1/p`, zero for `∞`.
    pub fn recip(self) -> f64 {
        if self.is_inf() {
            0.0
        } else {
            1.0 / self.0
        }
    }

    /// The conjugate exponent `p'` with `1/p + 1/p' = 1`.
    pub fn conjugate(self) -> Exponent {
        let r = 1.0 - self.recip();
        if r == 0.0 {
            Exponent::INF
        } else {
            Exponent(1.0 / r)
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_inf() {
            write!(f, "inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl std::str::FromStr for Exponent {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "∞" => Ok(Exponent::INF),
            t => Exponent::new(
                t.parse::<f64>()
                    .map_err(|_| Error::InvalidParameter(format!("bad exponent '{s}'")))?,
            ),
        }
    }
}

impl TryFrom<ExponentRepr> for Exponent {
    type Error = Error;
    fn try_from(r: ExponentRepr) -> Result<Self> {
        match r {
            ExponentRepr::Num(p) => Exponent::new(p),
            ExponentRepr::Text(s) => s.parse(),
        }
    }
}

impl From<Exponent> for ExponentRepr {
    fn from(e: Exponent) -> Self {
        if e.is_inf() {
            ExponentRepr::Text("inf".into())
        } else {
            ExponentRepr::Num(e.0)
        }
    }
}

/// Weight functions on phase space, `m(x, ω)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum WeightSpec {
    /// `⟨x⟩^t ⟨ω⟩^s`
    PolySplit { t: f64, s: f64 },
    /// `⟨z⟩^s = (1 + x² + ω²)^{s/2}`
    PolyRadial { s: f64 },
    /// `e^{s‖z‖}`
    ExpFull { s: f64 },
    /// `e^{s|ω|}`; negative `s` gives the reciprocal weight.
    ExpFreq { s: f64 },
    /// `e^{s‖z‖^b} (1 + ‖z‖)^a log^r(e + ‖z‖)`
    Bd { a: f64, r: f64, s: f64, b: f64 },
    Const,
}

impl WeightSpec {
    pub fn validate(&self) -> Result<()> {
        let finite = |v: &[f64]| v.iter().all(|x| x.is_finite());
        let ok = match *self {
            WeightSpec::PolySplit { t, s } => finite(&[t, s]),
            WeightSpec::PolyRadial { s } | WeightSpec::ExpFull { s } | WeightSpec::ExpFreq { s } => {
                finite(&[s])
            }
            WeightSpec::Bd { a, r, s, b } => {
                finite(&[a, r, s, b]) && a >= 0.0 && r >= 0.0 && s >= 0.0 && (0.0..=1.0).contains(&b)
            }
            WeightSpec::Const => true,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!("invalid weight {self:?}")))
        }
    }

    /// `log m(x, ω)`.
    pub fn log_eval(&self, x: f64, omega: f64) -> f64 {
        let r2 = x * x + omega * omega;
        match *self {
            WeightSpec::PolySplit { t, s } => {
                0.5 * t * (1.0 + x * x).ln() + 0.5 * s * (1.0 + omega * omega).ln()
            }
            WeightSpec::PolyRadial { s } => 0.5 * s * (1.0 + r2).ln(),
            WeightSpec::ExpFull { s } => s * r2.sqrt(),
            WeightSpec::ExpFreq { s } => s * omega.abs(),
            WeightSpec::Bd { a, r, s, b } => {
                let z = r2.sqrt();
                let pow = if b == 0.0 { 1.0 } else { z.powf(b) };
                s * pow + a * (1.0 + z).ln() + r * (E + z).ln().ln()
            }
            WeightSpec::Const => 0.0,
        }
    }
}

pub fn weight_eval(w: &WeightSpec, x: f64, omega: f64) -> Result<f64> {
    w.validate()?;
    Ok(w.log_eval(x, omega).exp())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MixedNormParams {
    pub p: Exponent,
    pub q: Exponent,
    pub weight: WeightSpec,
}

impl MixedNormParams {
    pub fn new(p: Exponent, q: Exponent, weight: WeightSpec) -> Self {
        Self { p, q, weight }
    }

    pub fn unweighted(p: Exponent, q: Exponent) -> Self {
        Self { p, q, weight: WeightSpec::Const }
    }
}

/// Running `log Σ e^{v_i}` (or `max v_i` for `∞` exponents).
#[derive(Debug, Clone, Copy)]
struct LogAcc {
    max: f64,
    sum: f64,
}

impl LogAcc {
    const EMPTY: LogAcc = LogAcc { max: f64::NEG_INFINITY, sum: 0.0 };

    fn push(&mut self, v: f64) {
        if v == f64::NEG_INFINITY {
            return;
        }
        if v <= self.max {
            self.sum += (v - self.max).exp();
        } else {
            self.sum = self.sum * (self.max - v).exp() + 1.0;
            self.max = v;
        }
    }

    fn merge(&mut self, o: LogAcc) {
        if o.max == f64::NEG_INFINITY {
            return;
        }
        if o.max <= self.max {
            self.sum += o.sum * (o.max - self.max).exp();
        } else {
            self.sum = self.sum * (self.max - o.max).exp() + o.sum;
            self.max = o.max;
        }
    }

    fn log_sum(self) -> f64 {
        if self.max == f64::NEG_INFINITY {
            f64::NEG_INFINITY
        } else {
            self.max + self.sum.ln()
        }
    }
}

/// Accumulate `log((Σ e^{p v_i} h)^{1/p})`, or `max v_i` for `p = ∞`.
#[derive(Debug, Clone, Copy)]
struct LpAcc {
    p: Exponent,
    acc: LogAcc,
}

impl LpAcc {
    fn new(p: Exponent) -> Self {
        Self { p, acc: LogAcc::EMPTY }
    }

    fn push(&mut self, log_abs: f64) {
        if self.p.is_inf() {
            if log_abs > self.acc.max {
                self.acc.max = log_abs;
            }
        } else {
            self.acc.push(self.p.value() * log_abs);
        }
    }

    fn merge(&mut self, o: LpAcc) {
        if self.p.is_inf() {
            self.acc.max = self.acc.max.max(o.acc.max);
        } else {
            self.acc.merge(o.acc);
        }
    }

    fn finish(self, h: f64) -> f64 {
        if self.p.is_inf() {
            self.acc.max
        } else {
            (self.acc.log_sum() + h.ln()) / self.p.value()
        }
    }
}

/// `(Σ_ω (Σ_x |F|^p m^p dx)^{q/p} dω)^{1/q}` with sup for infinite exponents,
/// computed in log space.
pub fn mixed_norm(big_f: &TfrMatrix, params: &MixedNormParams) -> Result<f64> {
    params.weight.validate()?;
    let pg = big_f.pgrid();
    let (xg, wg) = (pg.xgrid(), pg.wgrid());
    let n = pg.n();
    let mut outer = LpAcc::new(params.q);
    for k in 0..n {
        let w = wg.coord(k);
        let mut inner = LpAcc::new(params.p);
        for m in 0..n {
            let v = big_f.get(m, k).norm();
            inner.push(v.ln() + params.weight.log_eval(xg.coord(m), w));
        }
        outer.push(inner.finish(xg.dx()));
    }
    Ok(outer.finish(wg.dx()).exp())
}

/// `‖V_g f‖_{L^{p,q}_m}`.
pub fn modulation_norm(f: &SampledSignal, g: &SampledSignal, params: &MixedNormParams) -> Result<f64> {
    if g.is_zero() {
        return Err(Error::ZeroWindow);
    }
    mixed_norm(&stft(f, g)?, params)
}

/// `(∫ |f(t)|^p ⟨t⟩^{tp} dt)^{1/p}`, sup for `p = ∞`.
pub fn weighted_lp_norm(f: &SampledSignal, p: Exponent, t: f64) -> f64 {
    let g = f.grid();
    let mut acc = LpAcc::new(p);
    for (i, z) in f.samples().iter().enumerate() {
        let x = g.coord(i);
        acc.push(z.norm().ln() + 0.5 * t * (1.0 + x * x).ln());
    }
    acc.finish(g.dx()).exp()
}

/// `V*_g F(t) = ∫∫ F(x, ω) e^{2πitω} g(t - x) dx dω` for `F` on the standard
/// lattice of `g`'s grid.
pub fn stft_adjoint(big_f: &TfrMatrix, g: &SampledSignal) -> Result<SampledSignal> {
    let grid = *g.grid();
    let pg = crate::grid::PhaseGrid::standard(&grid)?;
    big_f.pgrid().ensure_same(&pg)?;
    let n = grid.n();
    let h = n / 2;
    let inv = CenteredDft::new(n, Sign::Inverse);
    let mut rows = big_f.values().to_vec();
    rows.par_chunks_mut(n).for_each(|r| inv.process(r));
    let gs = g.samples();
    let scale = pg.cell_area();
    let samples = (0..n)
        .into_par_iter()
        .map(|i| {
            let s: Complex64 = (0..n).map(|m| rows[m * n + i] * gs[(i + n + h - m) % n]).sum();
            s * scale
        })
        .collect();
    SampledSignal::new(grid, samples)
}

/// `2 - 1/p0 - 1/p1 - 1/p2`.
pub fn young_functional(p0: Exponent, p1: Exponent, p2: Exponent) -> f64 {
    2.0 - p0.recip() - p1.recip() - p2.recip()
}

fn cyclic_conv(a: &[Complex64], b: &[Complex64], planner: &mut FftPlanner<f64>) -> Vec<Complex64> {
    let n = a.len();
    let fwd = planner.plan_fft_forward(n);
    let inv = planner.plan_fft_inverse(n);
    let mut fa = a.to_vec();
    let mut fb = b.to_vec();
    fwd.process(&mut fa);
    fwd.process(&mut fb);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x *= y / n as f64;
    }
    inv.process(&mut fa);
    fa
}

/// `(f * g)(t) = ∫ f(s) g(t - s) ds`, circular on a centered grid.
pub fn convolve(f: &SampledSignal, g: &SampledSignal) -> Result<SampledSignal> {
    f.grid().ensure_same(g.grid())?;
    f.grid().ensure_centered()?;
    let n = f.len();
    let h = n / 2;
    let c = cyclic_conv(f.samples(), g.samples(), &mut FftPlanner::new());
    let dx = f.grid().dx();
    let samples = (0..n).map(|i| c[(i + h) % n] * dx).collect();
    SampledSignal::new(*f.grid(), samples)
}

/// 2-D counterpart of [`convolve`] on a phase grid, with `dx dω` weight.
pub fn convolve2d(a: &TfrMatrix, b: &TfrMatrix) -> Result<TfrMatrix> {
    a.pgrid().ensure_same(b.pgrid())?;
    let n = a.n();
    let h = n / 2;
    let c = cyclic_conv2d(a.values(), b.values(), n);
    let scale = a.pgrid().cell_area();
    let mut values = Vec::with_capacity(n * n);
    for m in 0..n {
        for k in 0..n {
            values.push(c[((m + h) % n) * n + (k + h) % n] * scale);
        }
    }
    TfrMatrix::new(*a.pgrid(), values, TfrKind::Generic)
}

/// Unnormalized cyclic 2-D convolution of row-major `n x n` arrays.
pub(crate) fn cyclic_conv2d(a: &[Complex64], b: &[Complex64], n: usize) -> Vec<Complex64> {
    let mut planner = FftPlanner::new();
    let fwd = planner.plan_fft_forward(n);
    let inv = planner.plan_fft_inverse(n);
    let fft2 = |x: &[Complex64], plan: &std::sync::Arc<dyn rustfft::Fft<f64>>| {
        let mut y = x.to_vec();
        y.par_chunks_mut(n).for_each(|r| plan.process(r));
        let mut t = crate::tfr::transpose(&y, n);
        t.par_chunks_mut(n).for_each(|r| plan.process(r));
        t
    };
    let fa = fft2(a, &fwd);
    let fb = fft2(b, &fwd);
    let norm = (n * n) as f64;
    let prod: Vec<Complex64> = fa.iter().zip(&fb).map(|(x, y)| x * y / norm).collect();
    // prod is transposed; inverse both axes and transpose back
    let mut y = prod;
    y.par_chunks_mut(n).for_each(|r| inv.process(r));
    let mut t = crate::tfr::transpose(&y, n);
    t.par_chunks_mut(n).for_each(|r| inv.process(r));
    t
}

/// Search grid for [`gaussian_decay_estimate`]: `h = π·0.1·1.1^j ≤ 2π`.
pub fn decay_search_grid() -> Vec<f64> {
    let mut out = Vec::new();
    let mut h = 0.1 * PI;
    while h <= 2.0 * PI * (1.0 + 1e-12) {
        out.push(h);
        h *= 1.1;
    }
    out
}

/// Threshold: `|f| e^{h t²}` may exceed the peak of `|f|` by at most this factor.
pub const DECAY_BOUND_FACTOR: f64 = 10.0;
/// Samples below this fraction of the peak are treated as numerical noise.
pub const DECAY_NOISE_FLOOR: f64 = 1e-12;

fn decay_rate(f: &SampledSignal) -> f64 {
    let g = f.grid();
    let n = g.n();
    let peak = f.max_abs();
    let pts: Vec<(f64, f64)> = (n / 8..n - n / 8)
        .map(|i| (g.coord(i), f[i].norm()))
        .filter(|&(_, a)| a >= DECAY_NOISE_FLOOR * peak)
        .collect();
    let mut best = 0.0;
    for h in decay_search_grid() {
        let worst = pts
            .iter()
            .map(|&(t, a)| a.ln() + h * t * t)
            .fold(f64::NEG_INFINITY, f64::max);
        if worst <= (DECAY_BOUND_FACTOR * peak).ln() {
            best = h;
        } else {
            break;
        }
    }
    best
}

/// Largest `h` on [`decay_search_grid`] for which `|f(t)| e^{h t²}` stays
/// within [`DECAY_BOUND_FACTOR`] times the peak of `|f|`, for `f` and for its
/// Fourier transform. Only the central three quarters of the grid and samples
/// above [`DECAY_NOISE_FLOOR`] of the peak are inspected. Returns 0 when even
/// the smallest `h` fails.
pub fn gaussian_decay_estimate(f: &SampledSignal) -> Result<(f64, f64)> {
    if f.is_zero() {
        return Err(Error::ZeroSignal);
    }
    Ok((decay_rate(f), decay_rate(&fourier(f))))
}

/// Gaussian window `√2 e^{-π(x² + ω²)}` used for symbol modulation norms.
pub fn symbol_window(x: f64, omega: f64) -> f64 {
    2f64.sqrt() * (-PI * (x * x + omega * omega)).exp()
}

/// Modulation norm of a phase-space symbol `a(z)`, `z = (x, ω)`, via the 2-D
/// STFT `V_Φ a(z, ζ)` with the Gaussian [`symbol_window`]. The inner exponent
/// runs over `z`, the outer over `ζ`; the weight is evaluated at
/// `(‖z‖, ‖ζ‖)`. Cost is `O(n⁴ log n)`.
pub fn symbol_modulation_norm(a: &Symbol2D, params: &MixedNormParams) -> Result<f64> {
    params.weight.validate()?;
    let pg = a.pgrid();
    let n = pg.n();
    let h = n / 2;
    let (xg, wg) = (pg.xgrid(), pg.wgrid());
    let (zx, zw) = (xg.dual(), wg.dual());
    let win: Vec<f64> = (0..n * n)
        .map(|i| symbol_window(xg.coord(i / n), wg.coord(i % n)))
        .collect();
    let fwd = CenteredDft::new(n, Sign::Forward);
    let vals = a.values();
    let cell = pg.cell_area();
    // fixed chunking so the reduction order does not depend on the thread count
    let chunk = n.max(1);
    let partials: Vec<Vec<LpAcc>> = (0..n * n)
        .collect::<Vec<_>>()
        .par_chunks(chunk)
        .map(|zs| {
            let mut acc = vec![LpAcc::new(params.p); n * n];
            let mut buf = vec![Complex64::new(0.0, 0.0); n * n];
            for &z in zs {
                let (m1, m2) = (z / n, z % n);
                for i1 in 0..n {
                    let j1 = (i1 + n + h - m1) % n;
                    for i2 in 0..n {
                        let j2 = (i2 + n + h - m2) % n;
                        buf[i1 * n + i2] = vals[i1 * n + i2] * win[j1 * n + j2];
                    }
                }
                buf.chunks_mut(n).for_each(|r| fwd.process(r));
                let mut t = crate::tfr::transpose(&buf, n);
                t.chunks_mut(n).for_each(|r| fwd.process(r));
                // t is indexed [ζ2][ζ1]
                let znorm = xg.coord(m1).hypot(wg.coord(m2));
                for k2 in 0..n {
                    for k1 in 0..n {
                        let v = (t[k2 * n + k1] * cell).norm();
                        let zeta = zx.coord(k1).hypot(zw.coord(k2));
                        acc[k1 * n + k2].push(v.ln() + params.weight.log_eval(znorm, zeta));
                    }
                }
            }
            acc
        })
        .collect();
    let mut total = vec![LpAcc::new(params.p); n * n];
    for part in partials {
        for (t, p) in total.iter_mut().zip(part) {
            t.merge(p);
        }
    }
    let mut outer = LpAcc::new(params.q);
    for t in total {
        outer.push(t.finish(cell));
    }
    Ok(outer.finish(zx.dx() * zw.dx()).exp())
}
