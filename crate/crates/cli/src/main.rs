mod commands;
mod config;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use config::{Action, Emit, Form, Kind, RunConfig};
use std::path::PathBuf;
use std::process::ExitCode;

/// Time-frequency representations, modulation norms and localization
/// operators on sampled grids.
#[derive(Debug, Parser)]
#[command(name = "tfloc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

/// Flags shared by every subcommand. Each one overrides the same-named
/// field of the JSON config.
#[derive(Debug, Args)]
struct Common {
    /// JSON run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    n: Option<usize>,
    #[arg(long, global = true)]
    dx: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    x0: Option<f64>,
    #[arg(long, global = true)]
    kind: Option<Kind>,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true)]
    emit: Option<Emit>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute a representation of the signal against the window.
    Tfr,
    /// Localization or Weyl operator: apply, materialize, spectrum or antiwick2weyl.
    Operator {
        action: Option<Action>,
        #[arg(long)]
        form: Option<Form>,
        #[arg(long)]
        overlaps: Option<usize>,
    },
    /// Modulation-space norm of the signal with the window as analysis window.
    Modnorm,
    /// Gaussian decay rates of the signal and its Fourier transform.
    Decay,
    /// Run the identity suite and print the residual table.
    Verify {
        /// Run only this check; repeatable.
        #[arg(long)]
        suite: Vec<String>,
        #[arg(long)]
        cases: Option<usize>,
        /// Stored TFR CSV to recompute and compare.
        #[arg(long)]
        input: Option<PathBuf>,
    },
}

/// Failure classes, mapped onto the exit codes 1, 2 and 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Failure {
    Config = 1,
    Io = 2,
    Numerical = 3,
}

fn classify(err: &anyhow::Error) -> Failure {
    for cause in err.chain() {
        if cause.downcast_ref::<commands::NumericalFailure>().is_some() {
            return Failure::Numerical;
        }
        if let Some(e) = cause.downcast_ref::<tfloc::Error>() {
            use tfloc::Error as E;
            return match e {
                E::Io(_) => Failure::Io,
                E::NonFinite(_) | E::NotHermitian(_) | E::LinAlg(_) => Failure::Numerical,
                _ => Failure::Config,
            };
        }
        if cause.downcast_ref::<std::io::Error>().is_some() {
            return Failure::Io;
        }
    }
    Failure::Config
}

fn load(cli: &Cli) -> anyhow::Result<RunConfig> {
    let c = &cli.common;
    let mut cfg = match &c.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            serde_json::from_str(&text)
                .map_err(|e| tfloc::Error::Format(format!("{}: {e}", path.display())))?
        }
        None => RunConfig::default(),
    };
    if let Some(v) = c.n {
        cfg.n = v;
    }
    if let Some(v) = c.dx {
        cfg.dx = v;
    }
    if let Some(v) = c.x0 {
        cfg.x0 = Some(v);
    }
    if let Some(v) = c.kind {
        cfg.kind = v;
    }
    if let Some(v) = &c.out {
        cfg.out = Some(v.clone());
    }
    if let Some(v) = c.tolerance {
        cfg.tolerance = v;
    }
    if let Some(v) = c.seed {
        cfg.seed = v;
    }
    if let Some(v) = c.threads {
        cfg.threads = Some(v);
    }
    if let Some(v) = c.emit {
        cfg.emit = v;
    }
    match &cli.command {
        Command::Operator { action, form, overlaps } => {
            if let Some(v) = action {
                cfg.operator.action = *v;
            }
            if let Some(v) = form {
                cfg.operator.form = *v;
            }
            if let Some(v) = overlaps {
                cfg.operator.overlaps = *v;
            }
        }
        Command::Verify { suite, cases, input } => {
            if !suite.is_empty() {
                cfg.suite = suite.clone();
            }
            if let Some(v) = cases {
                cfg.cases = *v;
            }
            if let Some(v) = input {
                cfg.input = Some(v.clone());
            }
        }
        _ => {}
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: &Cli) -> anyhow::Result<()> {
    let cfg = load(cli)?;
    if let Some(t) = cfg.threads {
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global()?;
    }
    match cli.command {
        Command::Tfr => commands::tfr(&cfg),
        Command::Operator { .. } => commands::operator(&cfg),
        Command::Modnorm => commands::modnorm(&cfg),
        Command::Decay => commands::decay(&cfg),
        Command::Verify { .. } => commands::verify(&cfg),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(Failure::Config as u8) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(classify(&e) as u8)
        }
    }
}
