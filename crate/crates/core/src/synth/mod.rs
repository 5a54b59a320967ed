//! State-preparation synthesizers.

pub mod be;
pub mod cvo;
pub mod lt;

use num_complex::Complex64;

use crate::bits::BasisString;
use crate::circuit::{Circuit, CostModel, Gate, GateCounter, GateCounts, GateSink, Register};
use crate::error::{Error, Result};
use crate::hampath;
use crate::state::SparseState;

/// Flag amplitudes `gamma_j = sqrt(1 - sum_{i<j} |c_i|^2)` for a load order.
///
/// Computed from suffix sums `sqrt(sum_{i>=j} |c_i|^2)`, which agree with the
/// prefix form for normalized input but are monotone by construction and end
/// exactly at `|c_s|`.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaSchedule {
    gammas: Vec<f64>,
}

impl GammaSchedule {
    pub fn new<'a>(amplitudes: impl DoubleEndedIterator<Item = &'a Complex64>) -> Self {
        let mut acc = 0.0;
        let mut gammas: Vec<f64> = amplitudes
            .rev()
            .map(|c| {
                // the last entry is |c| itself so its split gate has no remainder
                let g = if acc == 0.0 {
                    c.norm()
                } else {
                    (acc + c.norm_sqr()).sqrt()
                };
                acc += c.norm_sqr();
                g
            })
            .collect();
        gammas.reverse();
        GammaSchedule { gammas }
    }

    pub fn gammas(&self) -> &[f64] {
        &self.gammas
    }

    pub fn get(&self, j: usize) -> f64 {
        self.gammas[j]
    }

    pub fn len(&self) -> usize {
        self.gammas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gammas.is_empty()
    }
}

/// Which synthesizer to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Cvo,
    Be,
    Lt,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Cvo => "cvo",
            Algorithm::Be => "be",
            Algorithm::Lt => "lt",
        }
    }
}

impl std::str::FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cvo" => Ok(Algorithm::Cvo),
            "be" => Ok(Algorithm::Be),
            "lt" => Ok(Algorithm::Lt),
            _ => Err(Error::invalid(format!("unknown algorithm {s:?}"))),
        }
    }
}

/// How LT-QRAM orders the support.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum PathStrategy {
    #[default]
    Greedy,
    /// Exact shortest path; small supports only.
    Optimal,
    /// A caller-supplied order of the support.
    Given(Vec<BasisString>),
    /// Revolving-door order; the support must be every weight-k string.
    ConstantWeight,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SynthOptions {
    pub algorithm: Algorithm,
    /// BE-QRAM batch size override.
    pub k: Option<usize>,
    pub path: PathStrategy,
}

impl SynthOptions {
    pub fn new(algorithm: Algorithm) -> Self {
        SynthOptions {
            algorithm,
            k: None,
            path: PathStrategy::default(),
        }
    }
}

/// The LT-QRAM visiting order for `state` under `strategy`.
pub fn resolve_path(state: &SparseState, strategy: &PathStrategy) -> Result<Vec<BasisString>> {
    let support: Vec<BasisString> = state.support().cloned().collect();
    match strategy {
        PathStrategy::Greedy => Ok(hampath::greedy_path(&support)?.order),
        PathStrategy::Optimal => Ok(hampath::optimal_path(&support)?.order),
        PathStrategy::Given(order) => Ok(order.clone()),
        PathStrategy::ConstantWeight => {
            let k = support[0].hamming_weight();
            let full = hampath::binomial(state.n(), k) == Some(state.s() as u64);
            if !full || support.iter().any(|x| x.hamming_weight() != k) {
                return Err(Error::invalid(format!(
                    "constant-weight path needs the support to be all weight-{k} strings of length {}",
                    state.n()
                )));
            }
            Ok(hampath::constant_weight_path(state.n(), k)?.collect())
        }
    }
}

/// Qubits used by `algorithm` for `n` memory qubits.
pub fn circuit_width(algorithm: Algorithm, n: usize) -> usize {
    match algorithm {
        Algorithm::Cvo => n + 1,
        Algorithm::Be => n + 2,
        Algorithm::Lt => lt::width(n),
    }
}

fn emit(state: &SparseState, opts: &SynthOptions, sink: &mut impl GateSink) -> Result<()> {
    match opts.algorithm {
        Algorithm::Cvo => cvo::emit_cvo(state, sink),
        Algorithm::Be => {
            let params = be::choose_params(state.n(), state.s(), opts.k)?;
            be::emit_be(state, Some(params), sink)
        }
        Algorithm::Lt => {
            let path = resolve_path(state, &opts.path)?;
            lt::emit_lt(state, &path, sink)
        }
    }
}

/// Builds the full circuit preparing `state`.
pub fn synthesize(state: &SparseState, opts: &SynthOptions) -> Result<Circuit> {
    let mut circuit = match opts.algorithm {
        Algorithm::Cvo => cvo::empty_circuit(state.n()),
        Algorithm::Be => be::empty_circuit(state.n()),
        Algorithm::Lt => lt::empty_circuit(state.n()).0,
    };
    emit(state, opts, &mut circuit)?;
    Ok(circuit)
}

/// Gate counts of the circuit [`synthesize`] would build, without storing it.
pub fn count(state: &SparseState, opts: &SynthOptions, model: CostModel) -> Result<GateCounts> {
    let mut counter = GateCounter::new(circuit_width(opts.algorithm, state.n()));
    emit(state, opts, &mut counter)?;
    Ok(counter.counts(model))
}

/// Register layout built front to back.
pub(crate) struct LayoutBuilder {
    next: usize,
    registers: Vec<Register>,
}

impl LayoutBuilder {
    pub(crate) fn new() -> Self {
        LayoutBuilder {
            next: 0,
            registers: Vec::new(),
        }
    }

    pub(crate) fn add(&mut self, name: &str, len: usize, starts_one: bool) -> Register {
        let mut r = Register::new(name, self.next, len);
        r.starts_one = starts_one;
        self.next += len;
        self.registers.push(r.clone());
        r
    }

    pub(crate) fn circuit(self) -> Circuit {
        Circuit::new(self.next, self.registers).expect("builder produces disjoint registers")
    }
}

/// Emits `X` on each qubit, used for zero-control conjugation.
pub(crate) fn x_layer(sink: &mut impl GateSink, qubits: &[usize]) {
    for &q in qubits {
        sink.push(Gate::X(q));
    }
}
