use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use sqsp_core::bench::{self, SparseSweep};
use sqsp_core::circuit::count_gates;
use sqsp_core::hampath::{self, binomial, constant_weight_path};
use sqsp_core::sim::verify as run_verify;
use sqsp_core::synth::{self, SynthOptions};
use sqsp_core::{Algorithm, BasisString, Circuit, CostModel, PathStrategy, SparseState};

use crate::{BenchOutput, BenchSparseArgs, BenchU1Args, PathArg, PathArgs, SynthArgs, VerifyArgs};

pub const DEFAULT_MAX_SIM_QUBITS: usize = 4096;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] sqsp_core::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Input {
        path: PathBuf,
        source: sqsp_core::Error,
    },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Budget(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        let core = match self {
            CliError::Core(e) | CliError::Input { source: e, .. } => e,
            CliError::Budget(_) => return 3,
            _ => return 2,
        };
        match core {
            sqsp_core::Error::Verification(_) => 1,
            sqsp_core::Error::BudgetExceeded(_) => 3,
            _ => 2,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn read_state(path: &Path) -> Result<SparseState> {
    SparseState::parse(&read(path)?).map_err(|source| CliError::Input {
        path: path.to_owned(),
        source,
    })
}

fn read_circuit(path: &Path) -> Result<Circuit> {
    Circuit::parse(&read(path)?).map_err(|source| CliError::Input {
        path: path.to_owned(),
        source,
    })
}

fn read_order(path: &Path) -> Result<Vec<BasisString>> {
    read(path)?
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            l.parse().map_err(|source| CliError::Input {
                path: path.to_owned(),
                source,
            })
        })
        .collect()
}

/// Writes to `path`, or to stdout when `None`.
fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|source| CliError::Io {
            path: p.to_owned(),
            source,
        }),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}

fn check_sim_width(circuit: &Circuit, max: usize) -> Result<()> {
    if circuit.width() > max {
        return Err(CliError::Budget(format!(
            "circuit has {} qubits, simulation is limited to {max} (--max-sim-qubits)",
            circuit.width()
        )));
    }
    Ok(())
}

pub fn synth(args: SynthArgs) -> Result<ExitCode> {
    let state = read_state(&args.state)?;
    let algorithm = Algorithm::from(args.algorithm);
    if args.k.is_some() && algorithm != Algorithm::Be {
        return Err(CliError::Usage(
            "--k only applies to the be algorithm".into(),
        ));
    }
    if args.path_file.is_some() != (args.path == PathArg::Given) {
        return Err(CliError::Usage(
            "--path given and --path-file go together".into(),
        ));
    }
    let path = match args.path {
        PathArg::Greedy => PathStrategy::Greedy,
        PathArg::Optimal => PathStrategy::Optimal,
        PathArg::ConstantWeight => PathStrategy::ConstantWeight,
        PathArg::Given => PathStrategy::Given(read_order(args.path_file.as_deref().unwrap())?),
    };
    let opts = SynthOptions {
        algorithm,
        k: args.k,
        path,
    };
    let circuit = synth::synthesize(&state, &opts)?;
    emit(args.output.as_deref(), &circuit.to_text())?;

    let model = CostModel::from(args.cost_model);
    let counts = count_gates(&circuit, model);
    let h = counts.high_level;
    let mut summary = format!(
        "algorithm {} n {} s {} qubits {}\n\
         high-level total {} x {} cx {} ccx {} mcx {} spl {} cspl {}\n\
         {} total {} cnot {} single {}\n",
        algorithm.name(),
        state.n(),
        state.s(),
        circuit.width(),
        h.total(),
        h.x,
        h.cnot,
        h.toffoli,
        h.mcx,
        h.spl,
        h.cspl,
        model.name(),
        counts.total,
        counts.cnot,
        counts.single_qubit,
    );
    let mut code = ExitCode::SUCCESS;
    if args.verify {
        check_sim_width(&circuit, args.max_sim_qubits)?;
        let report = run_verify(&circuit, &state)?;
        summary.push_str(&report.to_string());
        if !report.passed() {
            code = ExitCode::from(1);
        }
    }
    // keep stdout clean for the circuit when it goes there
    if args.output.is_some() {
        print!("{summary}");
    } else {
        eprint!("{summary}");
    }
    Ok(code)
}

pub fn verify(args: VerifyArgs) -> Result<ExitCode> {
    let circuit = read_circuit(&args.circuit)?;
    let state = read_state(&args.state)?;
    check_sim_width(&circuit, args.max_sim_qubits)?;
    let report = run_verify(&circuit, &state)?;
    print!("{report}");
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

pub fn path(args: PathArgs) -> Result<ExitCode> {
    let out = io::stdout().lock();
    let mut out = BufWriter::new(out);
    let io_err = |source| CliError::Io {
        path: "<stdout>".into(),
        source,
    };
    if args.strategy == PathArg::ConstantWeight {
        let (Some(n), Some(k)) = (args.n, args.k) else {
            return Err(CliError::Usage("constant-weight needs --n and --k".into()));
        };
        if args.state.is_some() {
            return Err(CliError::Usage(
                "constant-weight takes --n and --k, not a state file".into(),
            ));
        }
        if k > n {
            return Err(CliError::Usage(format!("weight {k} exceeds length {n}")));
        }
        match binomial(n, k) {
            Some(c) if c <= args.budget => {}
            _ => {
                return Err(CliError::Budget(format!(
                    "C({n}, {k}) exceeds the budget of {} strings",
                    args.budget
                )))
            }
        }
        let mut count = 0u64;
        for x in constant_weight_path(n, k)? {
            writeln!(out, "{x}").map_err(io_err)?;
            count += 1;
        }
        out.flush().map_err(io_err)?;
        eprintln!("strings {count} length {}", 2 * (count - 1));
        return Ok(ExitCode::SUCCESS);
    }
    let Some(file) = args.state.as_deref() else {
        return Err(CliError::Usage("a state file is required".into()));
    };
    let support: Vec<BasisString> = read_state(file)?.support().cloned().collect();
    let result = match args.strategy {
        PathArg::Greedy => hampath::greedy_path(&support)?,
        PathArg::Optimal => hampath::optimal_path(&support)?,
        _ => {
            return Err(CliError::Usage(
                "path strategies are greedy, optimal and constant-weight".into(),
            ))
        }
    };
    for x in &result.order {
        writeln!(out, "{x}").map_err(io_err)?;
    }
    out.flush().map_err(io_err)?;
    eprintln!("strings {} length {}", result.order.len(), result.length);
    Ok(ExitCode::SUCCESS)
}

fn write_rows(rows: &[bench::BenchRow], out: &BenchOutput) -> Result<()> {
    emit(out.output.as_deref(), &bench::to_csv(rows, out.wall_time))?;
    for (n, alg, mean) in bench::summarize(rows) {
        eprintln!("n {n} {alg} mean normalized {mean:.6}");
    }
    Ok(())
}

pub fn bench_sparse(args: BenchSparseArgs) -> Result<ExitCode> {
    if args.instances == 0 {
        return Err(CliError::Usage("--instances must be at least 1".into()));
    }
    let sweep = SparseSweep {
        n_values: args.n,
        s: args.s,
        instances: args.instances,
        algorithms: args.algorithms.into_iter().map(Algorithm::from).collect(),
        model: args.cost_model.into(),
        seed: args.seed,
    };
    let rows = bench::bench_sparse(&sweep)?;
    write_rows(&rows, &args.out)?;
    Ok(ExitCode::SUCCESS)
}

pub fn bench_u1(args: BenchU1Args) -> Result<ExitCode> {
    let rows = bench::bench_u1(&args.n, args.cost_model.into(), args.budget)?;
    write_rows(&rows, &args.out)?;
    Ok(ExitCode::SUCCESS)
}
