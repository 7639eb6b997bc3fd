use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use eof_core::oracle::{Execution, OracleConfig};

use crate::family::{FamilyArgs, Grid};

#[derive(Parser, Debug)]
#[command(name = "eof", version, about = "Entanglement of formation through optimal decompositions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Closed-form EOF, with entanglement cost and distillable entanglement where known
    Eof(EofArgs),
    /// Optimal-decomposition tools
    Od {
        #[command(subcommand)]
        command: OdCommand,
    },
    /// Cost/distillable gap over a parameter grid, as CSV
    #[command(name = "gap-scan")]
    GapScan {
        #[command(subcommand)]
        kind: GapKind,
    },
    /// Brute-force convex-roof minimization
    Oracle(OracleArgs),
    /// Tensor-product composition of OD families
    Compose(ComposeArgs),
    /// Write a family or random state as a JSON state file
    State(StateArgs),
}

impl Command {
    pub fn json(&self) -> bool {
        match self {
            Command::Eof(a) => a.json,
            Command::Od { command: OdCommand::Verify(a) } => a.json,
            Command::GapScan { kind: GapKind::Lemma3(a) } => a.output.json,
            Command::GapScan { kind: GapKind::TensorMc(a) } => a.output.json,
            Command::Oracle(a) => a.json,
            Command::Compose(a) => a.json,
            Command::State(_) => false,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum OdCommand {
    /// Check reconstruction, average entanglement and oracle refutation for a family's OD
    Verify(VerifyArgs),
}

#[derive(Subcommand, Debug)]
pub enum GapKind {
    /// Gap of the rank-2 MC family over (p, theta)
    Lemma3(Lemma3Scan),
    /// Gap of uniform members of composed two-qubit MC families
    #[command(name = "tensor-mc")]
    TensorMc(TensorScan),
}

#[derive(Args, Debug, Clone, Default)]
pub struct RandomStateArgs {
    /// Use a seeded random state
    #[arg(long)]
    pub random: bool,
    /// Seed of the random state
    #[arg(long, default_value_t = 0)]
    pub state_seed: u64,
    /// Rank of the random state (default full)
    #[arg(long)]
    pub rank: Option<usize>,
    #[arg(long, default_value_t = 2)]
    pub d_a: usize,
    #[arg(long, default_value_t = 2)]
    pub d_b: usize,
}

#[derive(Args, Debug, Clone, Default)]
pub struct OracleFlags {
    /// Base seed; restart k is seeded with splitmix64(seed ^ k * 0x9E3779B97F4A7C15)
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub restarts: Option<usize>,
    /// Ensemble size N (default min(r^2, r + 4))
    #[arg(long = "n")]
    pub ensemble_size: Option<usize>,
    /// Value tolerance of the certification verdict
    #[arg(long)]
    pub tol: Option<f64>,
    /// Random decompositions sampled besides the search
    #[arg(long)]
    pub samples: Option<usize>,
    /// Sweep limit per restart
    #[arg(long)]
    pub max_iters: Option<usize>,
    /// Lift the rank and dimension guard
    #[arg(long)]
    pub force: bool,
    /// Run restarts sequentially
    #[arg(long)]
    pub serial: bool,
}

impl OracleFlags {
    pub fn config(&self, restarts: usize, tol: f64) -> OracleConfig {
        let base = OracleConfig::default();
        OracleConfig {
            ensemble_size: self.ensemble_size,
            restarts: self.restarts.unwrap_or(restarts),
            max_iters: self.max_iters.unwrap_or(base.max_iters),
            value_tolerance: self.tol.unwrap_or(tol),
            seed: self.seed,
            samples: self.samples.unwrap_or(base.samples),
            allow_large: self.force,
            execution: if self.serial { Execution::Serial } else { Execution::default() },
            ..base
        }
    }
}

#[derive(Args, Debug)]
pub struct EofArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// JSON state file instead of a family
    #[arg(long)]
    pub state: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[command(flatten)]
    pub oracle: OracleFlags,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct ScanOutput {
    /// Write the CSV here instead of standard output
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Exit with status 3 if any interior gap is <= 0
    #[arg(long)]
    pub assert_positive: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct Lemma3Scan {
    /// start:stop:count over [0, 1]
    #[arg(long)]
    pub p: Grid,
    /// start:stop:count over (0, pi/2)
    #[arg(long)]
    pub theta: Grid,
    #[command(flatten)]
    pub output: ScanOutput,
}

#[derive(Args, Debug)]
pub struct TensorScan {
    /// start:stop:count over [0, pi/2]; repeat once per factor
    #[arg(long, required = true)]
    pub theta: Vec<Grid>,
    /// Comma-separated member weights (default uniform)
    #[arg(long)]
    pub weights: Option<String>,
    #[command(flatten)]
    pub output: ScanOutput,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long)]
    pub state: Option<PathBuf>,
    #[command(flatten)]
    pub random: RandomStateArgs,
    #[command(flatten)]
    pub oracle: OracleFlags,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct ComposeArgs {
    /// Factor as name:key=value,... (e.g. mc2:theta=0.7); repeat per factor
    #[arg(long, required = true)]
    pub factor: Vec<String>,
    /// Comma-separated weights over the composed kets (default uniform)
    #[arg(long)]
    pub weights: Option<String>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct StateArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[command(flatten)]
    pub random: RandomStateArgs,
    /// Output path (default standard output)
    #[arg(long)]
    pub out: Option<PathBuf>,
}
