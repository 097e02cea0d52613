//! The `biq` command-line front end.
//!
//! Exit codes: 0 success (free, all checks passed), 1 negative verdict or
//! failed check, 2 input or usage error, 3 internal inconsistency.

pub mod commands;
pub mod output;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::detectors::CERT_TOL;
use crate::error::{BiqError, Result};
use crate::freeness::FreenessMode;
use commands::{cmd_catalog, cmd_fixtures, cmd_free, cmd_scan, CatalogCommand, Outcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Settings shared by every subcommand. All randomness derives from `seed`.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub seed: u64,
    pub structural_tol: f64,
    pub flat_tol: f64,
    pub points: usize,
    pub planes: usize,
    pub restarts: usize,
    pub output: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("structural tolerance", self.structural_tol), ("flatness tolerance", self.flat_tol)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(BiqError::InvalidInput(format!("{name} must be positive, got {v}")));
            }
        }
        for (name, v) in [("points", self.points), ("planes", self.planes), ("restarts", self.restarts)] {
            if v == 0 {
                return Err(BiqError::InvalidInput(format!("budget '{name}' must be at least 1")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Parser)]
#[command(name = "biq", version, about = "Freeness, curvature and classification checks for biquotients")]
pub struct Cli {
    /// Seed for every random choice; recorded in the report header.
    #[arg(long, global = true, default_value_t = 2024)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here (atomically) instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = CERT_TOL)]
    pub structural_tol: f64,
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub flat_tol: f64,
    /// Points sampled by `scan` (the first is the identity).
    #[arg(long, global = true, default_value_t = 4)]
    pub points: usize,
    /// Random planes per point.
    #[arg(long, global = true, default_value_t = 10_000)]
    pub planes: usize,
    /// Local refinements per point.
    #[arg(long, global = true, default_value_t = 8)]
    pub restarts: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact freeness check of a torus action given as weights JSON.
    Free {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = FreenessMode::Strict)]
        mode: FreenessMode,
        /// Cross-check with the root-of-unity oracle up to this order.
        #[arg(long)]
        oracle: Option<usize>,
    },
    /// Curvature scan of a free action: sampled minimum and flat certificates.
    Scan {
        action: PathBuf,
        /// Torus-invariant metric JSON; the bi-invariant metric if omitted.
        #[arg(long)]
        metric: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = FreenessMode::Strict)]
        mode: FreenessMode,
    },
    /// Run a built-in example fixture (example1..example4, or all).
    Fixtures { name: String },
    /// Classification data and parameter families.
    Catalog {
        #[command(subcommand)]
        command: CatalogCmd,
    },
}

#[derive(Debug, Subcommand)]
pub enum CatalogCmd {
    /// SU(3) circle actions with entries in [-bound, bound] and their freeness, up to equivalence.
    EnumerateEschenburg {
        #[arg(long, default_value_t = 2)]
        bound: u32,
    },
    /// Bazaikin parameter tuples with entries in [-bound, bound] and their freeness, up to equivalence.
    EnumerateBazaikin {
        #[arg(long, default_value_t = 3)]
        bound: u32,
    },
    /// Verify every implementable table row at each parameter whose group
    /// has rank at most the cap.
    VerifyTables {
        #[arg(long, default_value_t = 6)]
        n_cap: usize,
    },
    /// Exhaustive scan of 2-torus actions against the rank-two normal form.
    TwoTori {
        #[arg(long, value_parser = ["su3", "sp2"], default_value = "su3")]
        group: String,
        #[arg(long, default_value_t = 3)]
        bound: i64,
    },
}

impl Cli {
    pub fn config(&self) -> RunConfig {
        RunConfig {
            seed: self.seed,
            structural_tol: self.structural_tol,
            flat_tol: self.flat_tol,
            points: self.points,
            planes: self.planes,
            restarts: self.restarts,
            output: self.output.clone(),
            format: self.format,
        }
    }
}

pub fn exit_code(e: &BiqError) -> i32 {
    match e {
        BiqError::InvalidInput(_)
        | BiqError::Json(_)
        | BiqError::Io(_)
        | BiqError::Unsupported(..)
        | BiqError::FamilyMismatch(..)
        | BiqError::NotPositiveDefinite(_) => 2,
        _ => 3,
    }
}

fn dispatch(cli: &Cli, cfg: &RunConfig) -> Result<Outcome> {
    cfg.validate()?;
    match &cli.command {
        Command::Free { input, mode, oracle } => cmd_free(cfg, input, *mode, *oracle),
        Command::Scan { action, metric, mode } => cmd_scan(cfg, action, metric.as_deref(), *mode),
        Command::Fixtures { name } => cmd_fixtures(cfg, name),
        Command::Catalog { command } => cmd_catalog(
            cfg,
            match command {
                CatalogCmd::EnumerateEschenburg { bound } => CatalogCommand::Eschenburg(*bound),
                CatalogCmd::EnumerateBazaikin { bound } => CatalogCommand::Bazaikin(*bound),
                CatalogCmd::VerifyTables { n_cap } => CatalogCommand::VerifyTables(*n_cap),
                CatalogCmd::TwoTori { group, bound } => CatalogCommand::TwoTori {
                    sp2: group == "sp2",
                    bound: *bound,
                },
            },
        ),
    }
}

/// Runs a parsed command line, writes the report and returns the exit code.
pub fn run(cli: Cli) -> i32 {
    let cfg = cli.config();
    let result = dispatch(&cli, &cfg).and_then(|o| output::emit(&o.bytes, cfg.output.as_deref()).map(|_| o.code));
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("biq: {e}");
            exit_code(&e)
        }
    }
}
