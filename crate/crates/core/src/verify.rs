//! The identity suite behind `tfloc verify`: each check evaluates one
//! phase-space identity on random Gaussian-mixture fixtures and reports the
//! largest residual.

use crate::error::{Error, Result};
use crate::fixtures::{FixtureRng, GaussianMixture, GaussianSpec};
use crate::grid::{fourier, inner, modulate, reflect, translate, Grid1D, PhaseGrid, SampledSignal};
use crate::modspaces::stft_adjoint;
use crate::operators::{
    antiwick_to_weyl, localization_apply_grt, localization_apply_stft, localization_matrix, weyl_matrix,
    Symbol2D,
};
use crate::tfr::{freq_marginal, grossmann_royer, stft, symplectic_fourier, time_marginal};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct VerifyConfig {
    pub n: usize,
    pub dx: f64,
    pub tolerance: f64,
    pub seed: u64,
    /// Random fixtures per check.
    pub cases: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self { n: 256, dx: 1.0 / 16.0, tolerance: 1e-9, seed: 1, cases: 5 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub identity: String,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// Names accepted by [`run_check`], in run order.
pub const CHECKS: &[&str] = &[
    "moyal",
    "marginals",
    "covariance",
    "hat",
    "fourier_grt",
    "weyl_connection",
    "locopsame",
    "inversion",
    "symplectic_involution",
];

fn identity_text(name: &str) -> &'static str {
    match name {
        "moyal" => "<R_g1 f1, R_g2 f2> = 1/4 <f1,f2> conj<g1,g2>",
        "marginals" => "int R_g f dw = f g*/2 and int R_g f dx = F(f) F(g)*/2",
        "covariance" => "R over (T_x M_w g, T_x M_w f) = R_g f shifted by (x, w)",
        "hat" => "R_F(g) F(f)(x, w) = R_g f(-w, x)",
        "fourier_grt" => "F(R_g f)(x, w) = 1/2 R_{g reflected} f(-w/2, x/2)",
        "weyl_connection" => "A_a(p1, p2) = L_s with s = 2 a * R_p1 p2",
        "locopsame" => "GRT form of A_a(p1, p2) = STFT form",
        "inversion" => "V*_g V_psi f = <g, psi> f",
        "symplectic_involution" => "F_s F_s = identity",
        _ => "",
    }
}

struct Ctx {
    grid: Grid1D,
    rng: FixtureRng,
}

impl Ctx {
    fn mixture(&mut self) -> Result<GaussianMixture> {
        GaussianMixture::random_unit(&mut self.rng, 3, &self.grid)
    }

    fn signal(&mut self) -> Result<SampledSignal> {
        Ok(self.mixture()?.sample(&self.grid))
    }

    fn window(&mut self) -> SampledSignal {
        GaussianSpec::random(&mut self.rng).sample(&self.grid)
    }
}

fn max_abs_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Run one named check.
pub fn run_check(name: &str, cfg: &VerifyConfig) -> Result<CheckResult> {
    let grid = Grid1D::centered(cfg.n, cfg.dx)?;
    let mut ctx = Ctx { grid, rng: FixtureRng::new(cfg.seed) };
    let n = cfg.n;
    let h = n / 2;
    let mut worst = 0.0f64;
    for _ in 0..cfg.cases.max(1) {
        let r = match name {
            "moyal" => {
                let (f1, f2, g1, g2) = (ctx.signal()?, ctx.signal()?, ctx.signal()?, ctx.signal()?);
                let lhs = grossmann_royer(&f1, &g1)?.inner(&grossmann_royer(&f2, &g2)?)?;
                let rhs = 0.25 * inner(&f1, &f2)? * inner(&g1, &g2)?.conj();
                (lhs - rhs).norm() / (0.25 * f1.norm() * f2.norm() * g1.norm() * g2.norm())
            }
            "marginals" => {
                let (mf, mg) = (ctx.mixture()?, ctx.mixture()?);
                let r = grossmann_royer(&mf.sample(&grid), &mg.sample(&grid))?;
                let tm = time_marginal(&r)?;
                let want_t: Vec<_> = (0..n)
                    .map(|m| {
                        let x = tm.grid().coord(m);
                        0.5 * mf.eval(x) * mg.eval(x).conj()
                    })
                    .collect();
                let fm = freq_marginal(&r)?;
                let want_f: Vec<_> = (0..n)
                    .map(|k| {
                        let w = fm.grid().coord(k);
                        0.5 * mf.fourier_eval(w) * mg.fourier_eval(w).conj()
                    })
                    .collect();
                max_abs_diff(tm.samples(), &want_t).max(max_abs_diff(fm.samples(), &want_f))
            }
            "covariance" => {
                let (f, g) = (ctx.signal()?, ctx.signal()?);
                let j = (ctx.rng.uniform_in(-8.0, 8.0)) as i64;
                let k = (ctx.rng.uniform_in(-8.0, 8.0)) as i64;
                let shift = |s: &SampledSignal| translate(&modulate(s, k), j);
                let lhs = grossmann_royer(&shift(&f), &shift(&g))?;
                let r = grossmann_royer(&f, &g)?;
                let ni = n as i64;
                let mut res = 0.0f64;
                for m in 0..ni {
                    for q in 0..ni {
                        let src = r.get((m - 2 * j).rem_euclid(ni) as usize, (q - 2 * k).rem_euclid(ni) as usize);
                        res = res.max((lhs.get(m as usize, q as usize) - src).norm());
                    }
                }
                res
            }
            "hat" => {
                let (f, g) = (ctx.signal()?, ctx.signal()?);
                let r = grossmann_royer(&f, &g)?;
                let rh = grossmann_royer(&fourier(&f), &fourier(&g))?;
                let mut res = 0.0f64;
                for m in 0..n {
                    for k in 1..n {
                        res = res.max((rh.get(m, k) - r.get(n - k, m)).norm());
                    }
                }
                res
            }
            "fourier_grt" => {
                let (f, g) = (ctx.signal()?, ctx.signal()?);
                let big = symplectic_fourier(&grossmann_royer(&f, &g)?)?;
                let rc = grossmann_royer(&f, &reflect(&g))?;
                // F(R)(x, w) = F_s(R)(w, -x); on common points F_s(R)(p, q) = R_ǧ f(-p/2, -q/2)/2
                let mut res = 0.0f64;
                for a in 0..n {
                    for b in 0..n {
                        let (i, k) = (3 * h as i64 - 2 * a as i64, 3 * h as i64 - 2 * b as i64);
                        if (0..n as i64).contains(&i) && (0..n as i64).contains(&k) {
                            let want = 0.5 * rc.get(i as usize, k as usize);
                            res = res.max((big.get(a, b) - want).norm());
                        }
                    }
                }
                res
            }
            "weyl_connection" => {
                let (p1, p2) = (ctx.window(), ctx.window());
                let a = smooth_symbol(&mut ctx.rng, &grid)?;
                let loc = localization_matrix(&a, &p1, &p2)?;
                let weyl = weyl_matrix(&antiwick_to_weyl(&a, &p1, &p2)?)?;
                loc.max_entry_diff(&weyl)?
            }
            "locopsame" => {
                let (p1, p2, f) = (ctx.signal()?, ctx.signal()?, ctx.signal()?);
                let pg = PhaseGrid::standard(&grid)?;
                let vals = (0..n * n).map(|_| ctx.rng.complex()).collect();
                let a = Symbol2D::new(pg, vals)?;
                let x = localization_apply_grt(&a, &p1, &p2, &f)?;
                let y = localization_apply_stft(&a, &p1, &p2, &f)?;
                x.max_diff(&y)?
            }
            "inversion" => {
                let (f, psi, g) = (ctx.signal()?, ctx.signal()?, ctx.signal()?);
                let ip = inner(&g, &psi)?;
                if ip.norm() < 1e-3 {
                    return Err(Error::InvalidParameter("windows nearly orthogonal".into()));
                }
                let back = stft_adjoint(&stft(&f, &psi)?, &g)?.scaled(1.0 / ip);
                back.max_diff(&f)? / f.max_abs()
            }
            "symplectic_involution" => {
                let (f, g) = (ctx.signal()?, ctx.signal()?);
                let r = grossmann_royer(&f, &g)?;
                let twice = symplectic_fourier(&symplectic_fourier(&r)?)?;
                max_abs_diff(twice.values(), r.values())
            }
            other => return Err(Error::InvalidParameter(format!("unknown check '{other}'"))),
        };
        worst = worst.max(r);
    }
    Ok(CheckResult {
        name: name.to_string(),
        identity: identity_text(name).to_string(),
        residual: worst,
        tolerance: cfg.tolerance,
        passed: worst < cfg.tolerance,
    })
}

/// A real symbol made of three random Gaussian bumps in phase space.
pub fn smooth_symbol(rng: &mut FixtureRng, grid: &Grid1D) -> Result<Symbol2D> {
    let bumps: Vec<(f64, f64, f64, f64)> = (0..3)
        .map(|_| {
            let amp = rng.uniform_in(0.2, 1.0);
            let cx = rng.uniform_in(-1.0, 1.0);
            let cw = rng.uniform_in(-1.0, 1.0);
            let s = rng.uniform_in(0.5, 1.0);
            (amp, cx, cw, s)
        })
        .collect();
    Symbol2D::from_fn(PhaseGrid::standard(grid)?, |x, w| {
        let v: f64 = bumps
            .iter()
            .map(|&(amp, cx, cw, s)| amp * (-PI * ((x - cx).powi(2) + (w - cw).powi(2)) / (s * s)).exp())
            .sum();
        Complex64::new(v, 0.0)
    })
}

/// Run the named checks (all of [`CHECKS`] when `only` is empty).
pub fn run_all(cfg: &VerifyConfig, only: &[String]) -> Result<Vec<CheckResult>> {
    for name in only {
        if !CHECKS.contains(&name.as_str()) {
            return Err(Error::InvalidParameter(format!("unknown check '{name}'")));
        }
    }
    CHECKS
        .iter()
        .filter(|c| only.is_empty() || only.iter().any(|o| o == *c))
        .map(|c| run_check(c, cfg))
        .collect()
}

/// Fixed-width residual table.
pub fn format_table(results: &[CheckResult]) -> String {
    let mut s = format!("{:<22} {:>12} {:>10}  {:<6} {}\n", "check", "residual", "tol", "status", "identity");
    for r in results {
        s.push_str(&format!(
            "{:<22} {:>12.3e} {:>10.1e}  {:<6} {}\n",
            r.name,
            r.residual,
            r.tolerance,
            if r.passed { "ok" } else { "FAIL" },
            r.identity
        ));
    }
    s
}
