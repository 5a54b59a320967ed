//! `sqsp`: synthesize, verify, order supports and run the scaling sweeps.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error, 3 budget exceeded.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sqsp_core::{Algorithm, CostModel};

#[derive(Parser)]
#[command(name = "sqsp", version, about = "Sparse quantum state preparation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a circuit preparing the state in STATE.
    Synth(SynthArgs),
    /// Simulate CIRCUIT and compare its output with STATE.
    Verify(VerifyArgs),
    /// Print a Hamiltonian path over a support.
    Path(PathArgs),
    /// Random sparse instances, CSV of gate counts.
    BenchSparse(BenchSparseArgs),
    /// Uniform constant-weight states through LT-QRAM, CSV of gate counts.
    BenchU1(BenchU1Args),
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgorithmArg {
    Cvo,
    Be,
    Lt,
}

impl From<AlgorithmArg> for Algorithm {
    fn from(a: AlgorithmArg) -> Self {
        match a {
            AlgorithmArg::Cvo => Algorithm::Cvo,
            AlgorithmArg::Be => Algorithm::Be,
            AlgorithmArg::Lt => Algorithm::Lt,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CostModelArg {
    High,
    Elementary,
}

impl From<CostModelArg> for CostModel {
    fn from(m: CostModelArg) -> Self {
        match m {
            CostModelArg::High => CostModel::HighLevel,
            CostModelArg::Elementary => CostModel::Elementary,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PathArg {
    Greedy,
    Optimal,
    /// Read the order from --path-file.
    Given,
    ConstantWeight,
}

#[derive(Args)]
struct SynthArgs {
    /// State file.
    state: PathBuf,
    #[arg(short, long, value_enum)]
    algorithm: AlgorithmArg,
    /// BE-QRAM batch size.
    #[arg(long)]
    k: Option<usize>,
    /// LT-QRAM path strategy.
    #[arg(long, value_enum, default_value = "greedy")]
    path: PathArg,
    /// Bit strings, one per line, for `--path given`.
    #[arg(long)]
    path_file: Option<PathBuf>,
    /// Circuit output; stdout when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "elementary")]
    cost_model: CostModelArg,
    /// Also simulate the result.
    #[arg(long)]
    verify: bool,
    /// Widest circuit --verify will simulate.
    #[arg(long, default_value_t = commands::DEFAULT_MAX_SIM_QUBITS)]
    max_sim_qubits: usize,
}

#[derive(Args)]
struct VerifyArgs {
    circuit: PathBuf,
    state: PathBuf,
    /// Widest circuit to simulate.
    #[arg(long, default_value_t = commands::DEFAULT_MAX_SIM_QUBITS)]
    max_sim_qubits: usize,
}

#[derive(Args)]
struct PathArgs {
    /// State file whose support is ordered; not used with constant-weight.
    state: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "greedy")]
    strategy: PathArg,
    /// String length for constant-weight.
    #[arg(long)]
    n: Option<usize>,
    /// Weight for constant-weight.
    #[arg(long)]
    k: Option<usize>,
    /// Largest C(n, k) to enumerate.
    #[arg(long, default_value_t = sqsp_core::bench::DEFAULT_U1_BUDGET)]
    budget: u64,
}

#[derive(Args)]
struct BenchSparseArgs {
    /// Comma-separated register sizes.
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<usize>,
    /// Support size; defaults to s = n.
    #[arg(long)]
    s: Option<usize>,
    #[arg(long, default_value_t = 5)]
    instances: usize,
    #[arg(long, value_enum, value_delimiter = ',', default_values = ["cvo", "be"])]
    algorithms: Vec<AlgorithmArg>,
    #[arg(long, value_enum, default_value = "elementary")]
    cost_model: CostModelArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    out: BenchOutput,
}

#[derive(Args)]
struct BenchU1Args {
    /// Comma-separated register sizes; k = floor(n / 2).
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<usize>,
    /// Largest C(n, k) to run.
    #[arg(long, default_value_t = sqsp_core::bench::DEFAULT_U1_BUDGET)]
    budget: u64,
    #[arg(long, value_enum, default_value = "elementary")]
    cost_model: CostModelArg,
    #[command(flatten)]
    out: BenchOutput,
}

#[derive(Args)]
struct BenchOutput {
    /// CSV output; stdout when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Record wall time instead of 0.
    #[arg(long)]
    wall_time: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Synth(a) => commands::synth(a),
        Command::Verify(a) => commands::verify(a),
        Command::Path(a) => commands::path(a),
        Command::BenchSparse(a) => commands::bench_sparse(a),
        Command::BenchU1(a) => commands::bench_u1(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
