use crate::config::{Action, Emit, Form, Kind, RunConfig};
use anyhow::{bail, Context, Result};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::path::Path;
use tfloc::io::{self, GridInfo, NormReport, SpectrumReport, TfrSidecar};
use tfloc::operators::{DaubechiesSpectrum, OperatorMatrix};
use tfloc::verify::{self, CheckResult};
use tfloc::{
    ambiguity, antiwick_to_weyl, cross_wigner, daubechies_spectrum, gaussian_decay_estimate, grossmann_royer,
    localization_apply_stft, localization_matrix, modulation_norm, singular_values, stft, weyl_apply, weyl_matrix,
    Grid1D, PhaseGrid, SampledSignal, Symbol2D, TfrKind, TfrMatrix,
};

/// A computation finished but its result failed a check.
#[derive(Debug)]
pub struct NumericalFailure(pub String);

impl fmt::Display for NumericalFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for NumericalFailure {}

fn out_path(cfg: &RunConfig) -> Result<&Path> {
    match &cfg.out {
        Some(p) => Ok(p),
        None => bail!(tfloc::Error::InvalidParameter("no output path (--out)".into())),
    }
}

fn signals(cfg: &RunConfig) -> Result<(Grid1D, SampledSignal, SampledSignal)> {
    let grid = cfg.grid()?;
    grid.ensure_centered()?;
    let f = cfg.signal.build(&grid).context("building signal")?;
    let g = cfg.window.build(&grid).context("building window")?;
    Ok((grid, f, g))
}

fn compute_tfr(kind: Kind, f: &SampledSignal, g: &SampledSignal) -> tfloc::Result<TfrMatrix> {
    match kind {
        Kind::Grt => grossmann_royer(f, g),
        Kind::Stft => stft(f, g),
        Kind::Wigner => cross_wigner(f, g),
        Kind::Ambiguity => ambiguity(f, g),
    }
}

fn kind_of(k: TfrKind) -> Result<Kind> {
    Ok(match k {
        TfrKind::Grt => Kind::Grt,
        TfrKind::Stft => Kind::Stft,
        TfrKind::Wigner => Kind::Wigner,
        TfrKind::Ambiguity => Kind::Ambiguity,
        TfrKind::Generic => bail!(tfloc::Error::Format("stored representation has kind GENERIC".into())),
    })
}

fn ensure_finite(values: &[tfloc::Complex64]) -> tfloc::Result<()> {
    match values.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
        Some(i) => Err(tfloc::Error::NonFinite(i)),
        None => Ok(()),
    }
}

#[derive(Serialize)]
struct SignalDoc {
    grid: GridInfo,
    re: Vec<f64>,
    im: Vec<f64>,
}

impl SignalDoc {
    fn of(f: &SampledSignal) -> Self {
        let (re, im) = f.samples().iter().map(|z| (z.re, z.im)).unzip();
        Self { grid: f.grid().into(), re, im }
    }
}

/// A phase-space array as one JSON document: the sidecar fields plus
/// row-major values.
#[derive(Serialize)]
struct TfrDoc {
    #[serde(flatten)]
    sidecar: TfrSidecar,
    re: Vec<f64>,
    im: Vec<f64>,
}

impl TfrDoc {
    fn of(t: &TfrMatrix) -> Self {
        let (re, im) = t.values().iter().map(|z| (z.re, z.im)).unzip();
        Self { sidecar: TfrSidecar::of(t), re, im }
    }
}

fn emit_tfr(cfg: &RunConfig, t: &TfrMatrix) -> Result<()> {
    let out = out_path(cfg)?;
    ensure_finite(t.values())?;
    match cfg.emit {
        Emit::Csv => {
            io::write_tfr(out, t)?;
            let back = io::read_tfr(out)?;
            if back.pgrid() != t.pgrid() || back.kind() != t.kind() || back.values() != t.values() {
                bail!(NumericalFailure(format!("{} does not reread to the computed values", out.display())));
            }
        }
        Emit::Json => io::write_json(out, &TfrDoc::of(t))?,
    }
    println!("{} {}x{} -> {}", t.kind().name(), t.n(), t.n(), out.display());
    Ok(())
}

pub fn tfr(cfg: &RunConfig) -> Result<()> {
    let (_, f, g) = signals(cfg)?;
    out_path(cfg)?;
    let t = compute_tfr(cfg.kind, &f, &g)?;
    emit_tfr(cfg, &t)
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    print_text(&(text + "\n"))
}

/// `print!` without the panic on a closed pipe.
fn print_text(text: &str) -> Result<()> {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(tfloc::Error::Io)?;
    Ok(())
}

/// Print to stdout and, when `out` is set, also write the same JSON there.
fn report<T: Serialize>(cfg: &RunConfig, value: &T) -> Result<()> {
    if let Some(out) = &cfg.out {
        io::write_json(out, value)?;
    }
    print_json(value)
}

pub fn operator(cfg: &RunConfig) -> Result<()> {
    let (grid, f, phi1) = signals(cfg)?;
    let op = &cfg.operator;
    let phi2 = match &op.window2 {
        Some(w) => w.build(&grid).context("building window2")?,
        None => phi1.clone(),
    };
    if matches!(op.action, Action::Apply | Action::Materialize | Action::Antiwick2weyl) {
        out_path(cfg)?;
    }
    let pg = match (op.form, op.action) {
        (Form::Weyl, a) if a != Action::Antiwick2weyl => PhaseGrid::half_step(&grid)?,
        _ => PhaseGrid::standard(&grid)?,
    };
    let symbol = op.symbol.build(pg).context("building symbol")?;
    let weyl = op.form == Form::Weyl && op.action != Action::Antiwick2weyl;
    let matrix = |s: &Symbol2D| -> tfloc::Result<OperatorMatrix> {
        if weyl {
            weyl_matrix(s)
        } else {
            localization_matrix(s, &phi1, &phi2)
        }
    };
    match op.action {
        Action::Apply => {
            let out = out_path(cfg)?;
            let g = if weyl { weyl_apply(&symbol, &f)? } else { localization_apply_stft(&symbol, &phi1, &phi2, &f)? };
            ensure_finite(g.samples())?;
            match cfg.emit {
                Emit::Csv => io::write_signal_csv(out, &g)?,
                Emit::Json => io::write_json(out, &SignalDoc::of(&g))?,
            }
            println!("applied -> {}", out.display());
        }
        Action::Materialize => {
            let out = out_path(cfg)?;
            let m = matrix(&symbol)?;
            ensure_finite(m.entries().as_slice())?;
            io::write_operator_csv(out, &m)?;
            println!("{:?} {}x{} -> {}", m.provenance(), m.n(), m.n(), out.display());
        }
        Action::Spectrum => {
            let m = matrix(&symbol)?;
            let sv = singular_values(&m)?;
            let schatten: BTreeMap<String, f64> = op
                .schatten
                .iter()
                .map(|p| {
                    let key = if p.is_inf() { "inf".to_string() } else { p.value().to_string() };
                    (key, sv.schatten(*p))
                })
                .collect();
            // the Hermite comparison only makes sense for matched windows
            let eig = if !weyl && op.window2.is_none() {
                daubechies_spectrum(&symbol, &phi1, op.overlaps.min(grid.n()))?
            } else {
                DaubechiesSpectrum { eigenvalues: Vec::new(), hermite_overlaps: Vec::new() }
            };
            let rep = SpectrumReport {
                provenance: m.provenance(),
                n: m.n(),
                eigenvalues: eig.eigenvalues,
                hermite_overlaps: eig.hermite_overlaps,
                schatten,
            };
            report(cfg, &rep)?;
        }
        Action::Antiwick2weyl => {
            let sigma = antiwick_to_weyl(&symbol, &phi1, &phi2)?;
            let t = TfrMatrix::new(*sigma.pgrid(), sigma.values().to_vec(), TfrKind::Generic)?;
            emit_tfr(cfg, &t)?;
        }
    }
    Ok(())
}

pub fn modnorm(cfg: &RunConfig) -> Result<()> {
    let (grid, f, g) = signals(cfg)?;
    let params = cfg.modnorm.params();
    let value = modulation_norm(&f, &g, &params)?;
    if !value.is_finite() {
        bail!(NumericalFailure(format!("norm evaluated to {value}")));
    }
    report(cfg, &NormReport::new(&params, value, &grid))
}

#[derive(Serialize)]
struct DecayReport {
    /// Decay rate of `f`.
    time: f64,
    /// Decay rate of its Fourier transform.
    freq: f64,
    grid: GridInfo,
}

pub fn decay(cfg: &RunConfig) -> Result<()> {
    let (grid, f, _) = signals(cfg)?;
    let (time, freq) = gaussian_decay_estimate(&f)?;
    report(cfg, &DecayReport { time, freq, grid: (&grid).into() })
}

/// Recompute a stored representation from the config and compare bit for bit.
fn stored_check(cfg: &RunConfig, path: &Path) -> Result<CheckResult> {
    let stored = io::read_tfr(path).with_context(|| format!("reading {}", path.display()))?;
    let grid = cfg.grid()?;
    if !stored.pgrid().signal_grid().approx_eq(&grid) {
        bail!(tfloc::Error::GridMismatch(format!(
            "{} was computed on n = {}, dx = {}, not the configured grid",
            path.display(),
            stored.pgrid().signal_grid().n(),
            stored.pgrid().signal_grid().dx()
        )));
    }
    let (_, f, g) = signals(cfg)?;
    let fresh = compute_tfr(kind_of(stored.kind())?, &f, &g)?;
    stored.pgrid().ensure_same(fresh.pgrid())?;
    let residual = stored.max_diff(&fresh)?;
    Ok(CheckResult {
        name: "stored_tfr".into(),
        identity: format!("{} matches a fresh {} computation", path.display(), stored.kind().name()),
        residual,
        tolerance: 0.0,
        passed: stored.values() == fresh.values(),
    })
}

pub fn verify(cfg: &RunConfig) -> Result<()> {
    let mut results = Vec::new();
    if let Some(path) = &cfg.input {
        results.push(stored_check(cfg, path)?);
    }
    results.extend(verify::run_all(&cfg.verify_config(), &cfg.suite)?);
    match cfg.emit {
        Emit::Csv => print_text(&verify::format_table(&results))?,
        Emit::Json => print_json(&results)?,
    }
    if let Some(out) = &cfg.out {
        io::write_json(out, &results)?;
    }
    let failed: Vec<&str> = results.iter().filter(|r| !r.passed).map(|r| r.name.as_str()).collect();
    if !failed.is_empty() {
        bail!(NumericalFailure(format!("checks above tolerance: {}", failed.join(", "))));
    }
    Ok(())
}
