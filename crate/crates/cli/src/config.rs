//! Run configuration: a JSON file whose every field can be overridden by a
//! long-form flag. Defaults describe the desk-scale grid, n = 256 and
//! dx = 1/16, with the unit Gaussian as both signal and window.

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::path::PathBuf;
use tfloc::fixtures::FixtureSpec;
use tfloc::verify::VerifyConfig;
use tfloc::{Complex64, Exponent, Grid1D, MixedNormParams, PhaseGrid, Symbol2D, WeightSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    #[default]
    Grt,
    Stft,
    Wigner,
    Ambiguity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Emit {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Form {
    /// Anti-Wick symbol on the standard lattice.
    #[default]
    Localization,
    /// Weyl symbol on the half-step lattice.
    Weyl,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Action {
    #[default]
    Apply,
    Materialize,
    Spectrum,
    Antiwick2weyl,
}

/// Symbol source for operator commands.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SymbolSpec {
    /// `e^{-π a (x² + ω²)}`
    Gaussian { a: f64 },
    /// Indicator of the disc of the given radius.
    Disc { radius: f64 },
    Constant { value: f64 },
    /// A TFR CSV with its sidecar, on the lattice the operator form expects.
    File { path: PathBuf },
}

impl Default for SymbolSpec {
    fn default() -> Self {
        SymbolSpec::Gaussian { a: 1.0 }
    }
}

impl SymbolSpec {
    fn validate(&self) -> anyhow::Result<()> {
        match *self {
            SymbolSpec::Gaussian { a } if !(a.is_finite() && a > 0.0) => {
                anyhow::bail!(tfloc::Error::InvalidParameter(format!("gaussian symbol needs a > 0, got {a}")))
            }
            SymbolSpec::Disc { radius } if !(radius.is_finite() && radius > 0.0) => {
                anyhow::bail!(tfloc::Error::InvalidParameter(format!("disc radius must be positive, got {radius}")))
            }
            SymbolSpec::Constant { value } if !value.is_finite() => {
                anyhow::bail!(tfloc::Error::InvalidParameter("constant symbol must be finite".into()))
            }
            _ => Ok(()),
        }
    }

    pub fn build(&self, pg: PhaseGrid) -> tfloc::Result<Symbol2D> {
        match self {
            SymbolSpec::Gaussian { a } => {
                let a = *a;
                Symbol2D::radial(pg, move |r| (-PI * a * r * r).exp())
            }
            SymbolSpec::Disc { radius } => {
                let radius = *radius;
                Symbol2D::radial(pg, move |r| if r <= radius { 1.0 } else { 0.0 })
            }
            SymbolSpec::Constant { value } => Ok(Symbol2D::constant(pg, Complex64::new(*value, 0.0))),
            SymbolSpec::File { path } => {
                let t = tfloc::io::read_tfr(path)?;
                t.pgrid().ensure_same(&pg)?;
                Symbol2D::new(pg, t.into_values())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OperatorConfig {
    pub action: Action,
    pub form: Form,
    pub symbol: SymbolSpec,
    /// Synthesis window; the analysis window is `window`. Defaults to `window`.
    pub window2: Option<FixtureSpec>,
    /// Leading eigenvectors compared with Hermite functions in `spectrum`.
    pub overlaps: usize,
    pub schatten: Vec<Exponent>,
}

impl Default for OperatorConfig {
    fn default() -> Self {
        Self {
            action: Action::Apply,
            form: Form::Localization,
            symbol: SymbolSpec::default(),
            window2: None,
            overlaps: 6,
            schatten: vec![Exponent::ONE, Exponent::TWO, Exponent::INF],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ModnormConfig {
    pub p: Exponent,
    pub q: Exponent,
    pub weight: WeightSpec,
}

impl Default for ModnormConfig {
    fn default() -> Self {
        Self { p: Exponent::TWO, q: Exponent::TWO, weight: WeightSpec::Const }
    }
}

impl ModnormConfig {
    pub fn params(&self) -> MixedNormParams {
        MixedNormParams::new(self.p, self.q, self.weight)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub n: usize,
    pub dx: f64,
    /// Left end of the grid; `None` centers it.
    pub x0: Option<f64>,
    pub signal: FixtureSpec,
    pub window: FixtureSpec,
    pub kind: Kind,
    pub out: Option<PathBuf>,
    pub tolerance: f64,
    pub seed: u64,
    /// Worker threads for the library's parallel paths; results do not
    /// depend on it.
    pub threads: Option<usize>,
    pub emit: Emit,
    pub operator: OperatorConfig,
    pub modnorm: ModnormConfig,
    /// Random fixtures per verify check.
    pub cases: usize,
    /// Verify checks to run; empty means all.
    pub suite: Vec<String>,
    /// A stored TFR that `verify` recomputes from this config and compares.
    pub input: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        let v = VerifyConfig::default();
        Self {
            n: v.n,
            dx: v.dx,
            x0: None,
            signal: FixtureSpec::default(),
            window: FixtureSpec::default(),
            kind: Kind::Grt,
            out: None,
            tolerance: v.tolerance,
            seed: v.seed,
            threads: None,
            emit: Emit::Csv,
            operator: OperatorConfig::default(),
            modnorm: ModnormConfig::default(),
            cases: v.cases,
            suite: Vec::new(),
            input: None,
        }
    }
}

impl RunConfig {
    pub fn grid(&self) -> tfloc::Result<Grid1D> {
        match self.x0 {
            Some(x0) => Grid1D::new(self.n, self.dx, x0),
            None => Grid1D::centered(self.n, self.dx),
        }
    }

    /// Everything that can be checked without touching the numerics.
    pub fn validate(&self) -> anyhow::Result<()> {
        self.grid()?;
        self.signal.validate()?;
        self.window.validate()?;
        if let Some(w) = &self.operator.window2 {
            w.validate()?;
        }
        self.operator.symbol.validate()?;
        self.modnorm.weight.validate()?;
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            anyhow::bail!(tfloc::Error::InvalidParameter(format!("tolerance must be positive, got {}", self.tolerance)));
        }
        if self.threads == Some(0) {
            anyhow::bail!(tfloc::Error::InvalidParameter("threads must be at least 1".into()));
        }
        if self.cases == 0 {
            anyhow::bail!(tfloc::Error::InvalidParameter("cases must be at least 1".into()));
        }
        Ok(())
    }

    pub fn verify_config(&self) -> VerifyConfig {
        VerifyConfig { n: self.n, dx: self.dx, tolerance: self.tolerance, seed: self.seed, cases: self.cases }
    }
}
