//! Random instances and the count-only scaling sweeps, emitted as CSV.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::bits::BasisString;
use crate::circuit::{CostModel, GateCounter, GateCounts, HighLevelCounts};
use crate::error::{Error, Result};
use crate::hampath::{binomial, constant_weight_path};
use crate::sim::assert_prepares;
use crate::state::SparseState;
use crate::synth::{self, lt, Algorithm, SynthOptions};

pub const CSV_HEADER: &str =
    "n,s,algorithm,mode,gates_total,cnot,single_qubit,normalized,seed,wall_ms";

/// Instances up to this size are also simulated before their counts are reported.
pub const VERIFY_MAX_N: usize = 32;
pub const VERIFY_MAX_S: usize = 16;

/// Default cap on `C(n, k)` for the constant-weight sweep.
pub const DEFAULT_U1_BUDGET: u64 = 1_000_000;

/// Label of the analytic `C(n, k) * k` comparator rows.
pub const U1_MODEL_NAME: &str = "prior-model";

/// `s` distinct uniform strings of length `n` with normalized complex
/// Gaussian amplitudes, deterministic in `seed`.
pub fn random_sparse_state(n: usize, s: usize, seed: u64) -> Result<SparseState> {
    if s == 0 {
        return Err(Error::invalid("need at least one term"));
    }
    if n < 64 && (s as u128) > 1u128 << n {
        return Err(Error::invalid(format!(
            "cannot draw {s} distinct strings of length {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::with_capacity(s);
    let mut strings = Vec::with_capacity(s);
    let mut bits = vec![false; n];
    while strings.len() < s {
        bits.iter_mut().for_each(|b| *b = rng.random());
        let x = BasisString::from_bools(&bits);
        if seen.insert(x.clone()) {
            strings.push(x);
        }
    }
    let mut amps: Vec<Complex64> = (0..s)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    let norm = amps.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    amps.iter_mut().for_each(|c| *c /= norm);
    SparseState::new(n, strings.into_iter().zip(amps).collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    /// Support size; `C(n, k)` for constant-weight runs.
    pub s: u64,
    pub algorithm: String,
    /// Cost model name, or `model` for analytic comparator rows.
    pub mode: String,
    pub high_level: HighLevelCounts,
    pub gates_total: u64,
    pub cnot: u64,
    pub single_qubit: u64,
    pub normalized: f64,
    pub seed: u64,
    pub wall_ms: f64,
}

impl BenchRow {
    fn measured(
        n: usize,
        s: u64,
        algorithm: &str,
        model: CostModel,
        counts: GateCounts,
        scale: f64,
    ) -> Self {
        BenchRow {
            n,
            s,
            algorithm: algorithm.to_string(),
            mode: model.name().to_string(),
            high_level: counts.high_level,
            gates_total: counts.total,
            cnot: counts.cnot,
            single_qubit: counts.single_qubit,
            normalized: counts.cnot as f64 / scale,
            seed: 0,
            wall_ms: 0.0,
        }
    }

    /// One CSV line without the trailing newline. With `wall_time` off the
    /// time column is written as 0 so output is byte-reproducible.
    pub fn to_csv(&self, wall_time: bool) -> String {
        format!(
            "{},{},{},{},{},{},{},{:.6e},{},{:.3}",
            self.n,
            self.s,
            self.algorithm,
            self.mode,
            self.gates_total,
            self.cnot,
            self.single_qubit,
            self.normalized,
            self.seed,
            if wall_time { self.wall_ms } else { 0.0 }
        )
    }
}

/// Header plus one line per row, LF-terminated.
pub fn to_csv(rows: &[BenchRow], wall_time: bool) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(out, "{}", r.to_csv(wall_time));
    }
    out
}

/// Mean normalized metric per `(n, algorithm)`, in first-seen order.
pub fn summarize(rows: &[BenchRow]) -> Vec<(usize, String, f64)> {
    let mut out: Vec<(usize, String, f64, usize)> = Vec::new();
    for r in rows {
        match out
            .iter_mut()
            .find(|(n, a, _, _)| *n == r.n && *a == r.algorithm)
        {
            Some(e) => {
                e.2 += r.normalized;
                e.3 += 1;
            }
            None => out.push((r.n, r.algorithm.clone(), r.normalized, 1)),
        }
    }
    out.into_iter()
        .map(|(n, a, sum, c)| (n, a, sum / c as f64))
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SparseSweep {
    pub n_values: Vec<usize>,
    /// Support size as a function of `n`; `None` means `s = n`.
    pub s: Option<usize>,
    pub instances: usize,
    pub algorithms: Vec<Algorithm>,
    pub model: CostModel,
    pub seed: u64,
}

impl SparseSweep {
    pub fn new(n_values: Vec<usize>) -> Self {
        SparseSweep {
            n_values,
            s: None,
            instances: 5,
            algorithms: vec![Algorithm::Cvo, Algorithm::Be],
            model: CostModel::Elementary,
            seed: 0,
        }
    }
}

/// Seed of instance `i` at size `n`; recorded in each row.
pub fn instance_seed(seed: u64, n: usize, i: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ ((n as u64) << 20) ^ i as u64
}

/// Random sparse instances per `n`, each run through every algorithm. Small
/// instances are simulated first; a failed check aborts the sweep.
pub fn bench_sparse(sweep: &SparseSweep) -> Result<Vec<BenchRow>> {
    let jobs: Vec<(usize, usize)> = sweep
        .n_values
        .iter()
        .flat_map(|&n| (0..sweep.instances).map(move |i| (n, i)))
        .collect();
    let per_job: Vec<Vec<BenchRow>> = jobs
        .par_iter()
        .map(|&(n, i)| {
            let s = sweep.s.unwrap_or(n);
            let seed = instance_seed(sweep.seed, n, i);
            let state = random_sparse_state(n, s, seed)?;
            sweep
                .algorithms
                .iter()
                .map(|&alg| {
                    let opts = SynthOptions::new(alg);
                    let start = Instant::now();
                    let counts = if n <= VERIFY_MAX_N && s <= VERIFY_MAX_S {
                        let circuit = synth::synthesize(&state, &opts)?;
                        assert_prepares(&circuit, &state)?;
                        crate::circuit::count_gates(&circuit, sweep.model)
                    } else {
                        synth::count(&state, &opts, sweep.model)?
                    };
                    let mut row = BenchRow::measured(
                        n,
                        s as u64,
                        alg.name(),
                        sweep.model,
                        counts,
                        (n * s) as f64,
                    );
                    row.seed = seed;
                    row.wall_ms = start.elapsed().as_secs_f64() * 1e3;
                    Ok(row)
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    Ok(per_job.into_iter().flatten().collect())
}

/// LT-QRAM counts for the uniform superposition of all weight-`k` strings,
/// streamed along the revolving-door path without building the circuit.
pub fn count_lt_constant_weight(
    n: usize,
    k: usize,
    budget: u64,
    model: CostModel,
) -> Result<GateCounts> {
    if n == 0 {
        return Err(Error::invalid("constant-weight sweep needs n >= 1"));
    }
    let c = binomial(n, k).filter(|&c| c <= budget).ok_or_else(|| {
        Error::BudgetExceeded(format!("C({n}, {k}) exceeds the budget of {budget} terms"))
    })?;
    let a = Complex64::new(1.0 / (c as f64).sqrt(), 0.0);
    // gamma_i = sqrt(sum of the remaining |c|^2) = a * sqrt(C - i)
    let gamma = |i: u64| a.re * ((c - i) as f64).sqrt();
    let mut counter = GateCounter::new(lt::width(n));
    let mut path = constant_weight_path(n, k)?;
    let first = path.current().clone();
    let mut em = lt::LtEmitter::begin(&mut counter, &first, a, gamma(0))?;
    let mut i = 1;
    while let Some(diff) = path.step() {
        em.advance(&diff, a, gamma(i))?;
        i += 1;
    }
    em.finish();
    Ok(counter.counts(model))
}

/// Constant-weight sweep with `k = floor(n / 2)`: one LT-QRAM row and one
/// analytic comparator row per `n`.
pub fn bench_u1(n_values: &[usize], model: CostModel, budget: u64) -> Result<Vec<BenchRow>> {
    let per_n: Vec<Vec<BenchRow>> = n_values
        .par_iter()
        .map(|&n| {
            let k = n / 2;
            let start = Instant::now();
            let counts = count_lt_constant_weight(n, k, budget, model)?;
            let c = binomial(n, k).expect("checked against the budget");
            let scale = (c * k.max(1) as u64) as f64;
            let mut row = BenchRow::measured(n, c, Algorithm::Lt.name(), model, counts, scale);
            row.wall_ms = start.elapsed().as_secs_f64() * 1e3;
            let ck = c * k as u64;
            let comparator = BenchRow {
                n,
                s: c,
                algorithm: U1_MODEL_NAME.to_string(),
                mode: "model".to_string(),
                high_level: HighLevelCounts::default(),
                gates_total: ck,
                cnot: ck,
                single_qubit: 0,
                normalized: ck as f64 / scale,
                seed: 0,
                wall_ms: 0.0,
            };
            Ok(vec![row, comparator])
        })
        .collect::<Result<_>>()?;
    Ok(per_n.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_state_properties() {
        let st = random_sparse_state(4, 16, 7).unwrap();
        assert_eq!(st.s(), 16);
        let st = random_sparse_state(64, 64, 1).unwrap();
        let norm: f64 = st.terms().iter().map(|(_, c)| c.norm_sqr()).sum();
        assert!((norm - 1.0).abs() < 1e-12);
        assert_eq!(random_sparse_state(64, 64, 1).unwrap(), st);
        assert_ne!(random_sparse_state(64, 64, 2).unwrap(), st);
        assert!(random_sparse_state(3, 9, 0).is_err());
    }

    #[test]
    fn csv_layout() {
        let mut sweep = SparseSweep::new(vec![8]);
        sweep.instances = 2;
        let rows = bench_sparse(&sweep).unwrap();
        assert_eq!(rows.len(), 4);
        let csv = to_csv(&rows, false);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert!(lines[1..]
            .iter()
            .all(|l| l.split(',').count() == 10 && l.ends_with(",0.000")));
        assert_eq!(csv, to_csv(&bench_sparse(&sweep).unwrap(), false));
    }

    #[test]
    fn u1_matches_materialized_circuit() {
        let n = 6;
        let counts = count_lt_constant_weight(n, 3, 100, CostModel::Elementary).unwrap();
        let c = binomial(n, 3).unwrap() as usize;
        let a = Complex64::new(1.0 / (c as f64).sqrt(), 0.0);
        let terms = constant_weight_path(n, 3)
            .unwrap()
            .map(|x| (x, a))
            .collect();
        let st = SparseState::new(n, terms).unwrap();
        let mut opts = SynthOptions::new(Algorithm::Lt);
        opts.path = synth::PathStrategy::ConstantWeight;
        let circuit = synth::synthesize(&st, &opts).unwrap();
        assert!(assert_prepares(&circuit, &st).is_ok());
        assert_eq!(
            counts,
            crate::circuit::count_gates(&circuit, CostModel::Elementary)
        );
    }

    #[test]
    fn u1_budget() {
        assert!(matches!(
            count_lt_constant_weight(20, 10, 1000, CostModel::HighLevel),
            Err(Error::BudgetExceeded(_))
        ));
        assert!(bench_u1(&[0], CostModel::HighLevel, 100).is_err());
        let rows = bench_u1(&[1, 4], CostModel::HighLevel, 100).unwrap();
        assert_eq!(rows.len(), 4);
        assert_eq!((rows[0].s, rows[2].s), (1, 6));
        assert_eq!(rows[1].algorithm, U1_MODEL_NAME);
    }
}
