//! CSV and JSON exchange formats. Every writer goes through a temporary file
//! in the destination directory and renames it into place on success.

use crate::error::{Error, Result};
use crate::grid::{Grid1D, PhaseGrid, PhaseLattice, SampledSignal};
use crate::modspaces::{MixedNormParams, WeightSpec};
use crate::operators::{OperatorMatrix, Provenance};
use crate::tfr::{TfrKind, TfrMatrix};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

const SPACING_TOL: f64 = 1e-9;

/// Write via a sibling temporary file, renamed over `path` once `fill` succeeds.
pub fn write_atomic(path: &Path, fill: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(&dir)?;
    {
        let mut w = std::io::BufWriter::new(tmp.as_file_mut());
        fill(&mut w)?;
        w.flush()?;
    }
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

#[derive(Debug, Serialize, Deserialize)]
struct SignalRow {
    t: f64,
    re: f64,
    im: f64,
}

pub fn write_signal_csv(path: &Path, f: &SampledSignal) -> Result<()> {
    write_atomic(path, |w| {
        let mut out = csv::Writer::from_writer(w);
        for (i, z) in f.samples().iter().enumerate() {
            out.serialize(SignalRow { t: f.grid().coord(i), re: z.re, im: z.im })?;
        }
        out.flush()?;
        Ok(())
    })
}

/// Read a `t,re,im` CSV with equispaced, increasing `t`.
pub fn read_signal_csv(path: &Path) -> Result<SampledSignal> {
    let mut rdr = csv::Reader::from_path(path)?;
    let headers = rdr.headers()?.clone();
    if headers.iter().map(str::trim).collect::<Vec<_>>() != ["t", "re", "im"] {
        return Err(Error::Format(format!("expected header t,re,im, got {headers:?}")));
    }
    let rows: Vec<SignalRow> = rdr.deserialize().collect::<std::result::Result<_, _>>()?;
    if rows.len() < 2 {
        return Err(Error::Format("need at least two samples".into()));
    }
    let dx = (rows[rows.len() - 1].t - rows[0].t) / (rows.len() - 1) as f64;
    if !(dx > 0.0) {
        return Err(Error::Format("t must be strictly increasing".into()));
    }
    for (i, w) in rows.windows(2).enumerate() {
        let d = w[1].t - w[0].t;
        if (d - dx).abs() > SPACING_TOL * dx {
            return Err(Error::Format(format!("non-uniform spacing at row {}", i + 2)));
        }
    }
    let grid = Grid1D::new(rows.len(), dx, rows[0].t)?;
    SampledSignal::new(grid, rows.iter().map(|r| Complex64::new(r.re, r.im)).collect())
}

/// JSON sidecar describing a TFR CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TfrSidecar {
    pub n: usize,
    pub dx: f64,
    pub x0: f64,
    pub half_step: bool,
    pub kind: TfrKind,
    #[serde(default)]
    pub lattice: Option<PhaseLattice>,
}

impl TfrSidecar {
    pub fn of(t: &TfrMatrix) -> Self {
        let g = t.pgrid().signal_grid();
        Self {
            n: g.n(),
            dx: g.dx(),
            x0: g.x0(),
            half_step: t.pgrid().is_half_step(),
            kind: t.kind(),
            lattice: Some(t.pgrid().lattice()),
        }
    }

    pub fn pgrid(&self) -> Result<PhaseGrid> {
        let g = Grid1D::new(self.n, self.dx, self.x0)?;
        let lattice = match (self.lattice, self.half_step) {
            (Some(l), hs) => {
                if hs != (l == PhaseLattice::HalfStep) {
                    return Err(Error::Format("half_step disagrees with lattice".into()));
                }
                l
            }
            (None, true) => PhaseLattice::HalfStep,
            (None, false) => PhaseLattice::Standard,
        };
        PhaseGrid::with_lattice(&g, lattice)
    }
}

/// Path of the sidecar belonging to a TFR CSV.
pub fn sidecar_path(csv_path: &Path) -> PathBuf {
    csv_path.with_extension("json")
}

#[derive(Debug, Serialize, Deserialize)]
struct TfrRow {
    x: f64,
    omega: f64,
    re: f64,
    im: f64,
}

/// Write `x,omega,re,im` rows (row-major) plus the JSON sidecar.
pub fn write_tfr(csv_path: &Path, t: &TfrMatrix) -> Result<()> {
    let pg = t.pgrid();
    let (xg, wg) = (pg.xgrid(), pg.wgrid());
    let n = pg.n();
    write_atomic(csv_path, |w| {
        let mut out = csv::Writer::from_writer(w);
        for m in 0..n {
            for k in 0..n {
                let z = t.get(m, k);
                out.serialize(TfrRow { x: xg.coord(m), omega: wg.coord(k), re: z.re, im: z.im })?;
            }
        }
        out.flush()?;
        Ok(())
    })?;
    write_json(&sidecar_path(csv_path), &TfrSidecar::of(t))
}

/// Read a TFR CSV and its sidecar, checking every coordinate against the grid.
pub fn read_tfr(csv_path: &Path) -> Result<TfrMatrix> {
    let side: TfrSidecar = read_json(&sidecar_path(csv_path))?;
    let pg = side.pgrid()?;
    let (xg, wg) = (pg.xgrid(), pg.wgrid());
    let n = pg.n();
    let mut rdr = csv::Reader::from_path(csv_path)?;
    let mut values = Vec::with_capacity(n * n);
    for (idx, row) in rdr.deserialize::<TfrRow>().enumerate() {
        let row = row?;
        if idx >= n * n {
            return Err(Error::Format("too many rows".into()));
        }
        let (m, k) = (idx / n, idx % n);
        let (x, w) = (xg.coord(m), wg.coord(k));
        let close = |a: f64, b: f64, h: f64| (a - b).abs() <= SPACING_TOL * h.max(b.abs());
        if !close(row.x, x, xg.dx()) || !close(row.omega, w, wg.dx()) {
            return Err(Error::Format(format!(
                "row {} at ({}, {}) does not match grid point ({x}, {w})",
                idx + 2,
                row.x,
                row.omega
            )));
        }
        values.push(Complex64::new(row.re, row.im));
    }
    TfrMatrix::new(pg, values, side.kind)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    write_atomic(path, |w| {
        serde_json::to_writer_pretty(&mut *w, value)?;
        w.write_all(b"\n")?;
        Ok(())
    })
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let file = std::fs::File::open(path)?;
    Ok(serde_json::from_reader(std::io::BufReader::new(file))?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridInfo {
    pub n: usize,
    pub dx: f64,
    pub x0: f64,
}

impl From<&Grid1D> for GridInfo {
    fn from(g: &Grid1D) -> Self {
        Self { n: g.n(), dx: g.dx(), x0: g.x0() }
    }
}

/// Output of a modulation-norm computation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormReport {
    pub p: crate::modspaces::Exponent,
    pub q: crate::modspaces::Exponent,
    pub weight: WeightSpec,
    pub value: f64,
    pub grid: GridInfo,
}

impl NormReport {
    pub fn new(params: &MixedNormParams, value: f64, grid: &Grid1D) -> Self {
        Self { p: params.p, q: params.q, weight: params.weight, value, grid: grid.into() }
    }
}

/// Output of an operator spectrum computation. `schatten` maps the exponent
/// (as text, `"inf"` for ∞) to the norm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub provenance: Provenance,
    pub n: usize,
    pub eigenvalues: Vec<f64>,
    pub hermite_overlaps: Vec<f64>,
    pub schatten: BTreeMap<String, f64>,
}

#[derive(Debug, Serialize, Deserialize)]
struct MatrixRow {
    row: usize,
    col: usize,
    re: f64,
    im: f64,
}

/// Dense operator as `row,col,re,im`.
pub fn write_operator_csv(path: &Path, m: &OperatorMatrix) -> Result<()> {
    write_atomic(path, |w| {
        let mut out = csv::Writer::from_writer(w);
        let e = m.entries();
        for i in 0..m.n() {
            for j in 0..m.n() {
                let z = e[(i, j)];
                out.serialize(MatrixRow { row: i, col: j, re: z.re, im: z.im })?;
            }
        }
        out.flush()?;
        Ok(())
    })
}
