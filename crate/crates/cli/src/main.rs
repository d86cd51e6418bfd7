mod commands;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::manifest::{Clock, Inputs, RunManifest};

/// Out-degree reducing partitions: checkers, solvers, gadgets,
/// reductions and exact oracles.
///
/// Exit codes: 0 valid/found, 1 checked negative, 2 input error,
/// 3 unsupported regime or undecided within budget.
#[derive(Debug, Parser)]
#[command(name = "outpart", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Seed for every randomized generator.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for the exhaustive oracle.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Search budget (assignments, nodes or clauses, depending on engine).
    #[arg(long, global = true, default_value_t = 50_000_000)]
    pub budget: u64,
    /// Where to write the JSON run manifest; stderr when omitted.
    #[arg(long, global = true)]
    pub manifest: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a partition or kernel against a digraph.
    Check(CheckArgs),
    /// Construct a partition in a polynomial regime, or prove none exists.
    Solve(SolveArgs),
    /// Compile a formula or graph into a partition/kernel instance.
    Reduce(ReduceArgs),
    /// Emit a gadget as an edge list plus role map.
    Gadget(GadgetArgs),
    /// Exact search: partitions, kernels, SAT, colourings.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Generate digraphs (cycles, circulants, tournaments, random).
    Generate(GenerateArgs),
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("property").required(true)))]
pub struct CheckArgs {
    pub digraph: PathBuf,
    /// Partition file (`vertex part` lines) or kernel file (one id per line).
    pub witness: PathBuf,
    #[arg(long, group = "property")]
    pub all_reducing: bool,
    #[arg(long, group = "property")]
    pub max_reducing: bool,
    /// Part caps as `K1,K2`.
    #[arg(long, group = "property", value_name = "K1,K2")]
    pub delta: Option<String>,
    #[arg(long, group = "property")]
    pub majority: bool,
    #[arg(long, group = "property")]
    pub kernel: bool,
    #[arg(short)]
    pub k: Option<usize>,
    /// Expected number of parts.
    #[arg(short)]
    pub p: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    All,
    Max,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    pub digraph: PathBuf,
    #[arg(long, value_enum, default_value_t = Variant::All)]
    pub variant: Variant,
    #[arg(short)]
    pub k: usize,
    #[arg(short)]
    pub p: usize,
    /// Fall back to exact search outside the polynomial regimes.
    #[arg(long)]
    pub oracle: bool,
    /// Write the partition here instead of stdout.
    #[arg(short, long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReduceKind {
    /// 3-SAT to kernel, maximum out-degree 2.
    Kernel,
    /// 3-SAT to kernel in a strong 2-out-regular digraph.
    KernelStrong,
    /// 3-SAT to (Δ⁺≤k1, Δ⁺≤k2)-partition.
    Delta,
    /// Monotone NAE-(k+2)-SAT to (Δ⁺≤k, Δ⁺≤k)-partition.
    Nae,
    /// p-colourability (edge-list graph) to k-max-reducing p-partition.
    Coloring,
}

#[derive(Debug, Args)]
pub struct ReduceArgs {
    #[arg(value_enum)]
    pub kind: ReduceKind,
    /// DIMACS CNF or edge-list graph; `-` for stdin.
    #[arg(default_value = "-")]
    pub input: PathBuf,
    #[arg(long, default_value_t = 1)]
    pub k1: usize,
    #[arg(long, default_value_t = 2)]
    pub k2: usize,
    #[arg(short, default_value_t = 1)]
    pub k: usize,
    #[arg(short, default_value_t = 3)]
    pub p: usize,
    /// Output prefix: writes `PREFIX.edges` and `PREFIX.json`.
    #[arg(short, long, default_value = "artifact")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GadgetKind {
    Connector,
    Forcing,
    KernelW,
    KernelH,
    Variable,
    /// Corrected colour forcers over T_{k2}.
    Forcers,
    /// X and Z forcers exactly as printed.
    Xz,
    D2,
    Chain,
    /// Certified even-cycle-free k-out-regular seed.
    Seed,
}

#[derive(Debug, Args)]
pub struct GadgetArgs {
    #[arg(value_enum)]
    pub kind: GadgetKind,
    #[arg(short, default_value_t = 1)]
    pub i: usize,
    #[arg(short, default_value_t = 2)]
    pub p: usize,
    #[arg(short, default_value_t = 1)]
    pub k: usize,
    #[arg(long, default_value_t = 1)]
    pub k1: usize,
    #[arg(long, default_value_t = 2)]
    pub k2: usize,
    #[arg(short, default_value_t = 2)]
    pub n: usize,
    /// Output prefix; prints to stdout when omitted.
    #[arg(short, long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    Exhaustive,
    Pruned,
    Cdcl,
}

#[derive(Debug, Subcommand)]
pub enum OracleCommand {
    /// Partition with a given property (`all:K`, `max:K`, `delta:K1,K2`, `majority`).
    Partition {
        digraph: PathBuf,
        #[arg(long)]
        property: String,
        #[arg(short, default_value_t = 2)]
        p: usize,
        #[arg(long, value_enum, default_value_t = Engine::Exhaustive)]
        engine: Engine,
    },
    Kernel {
        digraph: PathBuf,
    },
    Sat {
        cnf: PathBuf,
        /// Monotone not-all-equal semantics.
        #[arg(long)]
        nae: bool,
    },
    /// Proper colouring of the underlying graph of an edge list.
    Color {
        graph: PathBuf,
        #[arg(short)]
        p: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenerateKind {
    Cycle,
    Circulant,
    Tournament,
    Random,
    OutRegular,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(value_enum)]
    pub kind: GenerateKind,
    #[arg(short)]
    pub n: usize,
    /// Circulant steps, comma separated.
    #[arg(long, default_value = "1")]
    pub steps: String,
    /// Arc probability for `random`.
    #[arg(long, default_value_t = 0.3)]
    pub density: f64,
    /// Out-degree for `out-regular`.
    #[arg(short, default_value_t = 2)]
    pub k: usize,
}

/// What a command did, for the exit code and manifest.
pub struct Outcome {
    pub code: i32,
    pub summary: String,
    pub witness: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let clock = Clock::start();
    let mut inputs = Inputs::default();
    let command = commands::name(&cli.command);
    let result = commands::run(&cli, &mut inputs);
    let outcome = match result {
        Ok(o) => o,
        Err(e) => {
            let code = commands::exit_code(&e);
            eprintln!("error: {e:#}");
            Outcome {
                code,
                summary: format!("error: {e:#}"),
                witness: None,
            }
        }
    };
    let manifest = RunManifest {
        command: command.to_string(),
        inputs: inputs.into_map(),
        parameters: serde_json::json!(std::env::args().skip(1).collect::<Vec<_>>()),
        outcome: outcome.summary,
        exit_code: outcome.code,
        witness: outcome.witness,
        wall_time_ms: clock.millis(),
    };
    let json = serde_json::to_string(&manifest).expect("manifest serializes");
    match &cli.global.manifest {
        Some(path) => {
            if let Err(e) = std::fs::write(path, json + "\n") {
                eprintln!("error: writing manifest {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => eprintln!("{json}"),
    }
    ExitCode::from(outcome.code as u8)
}
