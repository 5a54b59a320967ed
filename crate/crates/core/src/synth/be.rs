//! BE-QRAM: load the support in batches of `k` strings, first eliminating the
//! ones outside a `2^k`-position window with a CNOT circuit so that each split
//! gate needs only `2^k + 1` controls.

use std::collections::HashMap;

use crate::bits::BasisString;
use crate::circuit::{reg, Circuit, Gate, GateSink};
use crate::error::{Error, Result};
use crate::state::SparseState;

use super::{x_layer, GammaSchedule, LayoutBuilder};

/// Batch size `k`, kept-window size `t = 2^k` and eliminated count `r = n - t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BatchParams {
    pub k: usize,
    pub t: usize,
    pub r: usize,
}

impl BatchParams {
    fn with_k(n: usize, k: usize) -> Self {
        let t = 1usize << k;
        BatchParams { k, t, r: n - t }
    }
}

/// Default `k = max(1, floor(log n - log log n))`, clamped so that `2^k < n`
/// (except at `n = 2`, where `k = 1` is the floor) and capped at `s`.
pub fn choose_params(n: usize, s: usize, override_k: Option<usize>) -> Result<BatchParams> {
    if n < 2 {
        return Err(Error::invalid(format!(
            "batch elimination needs n >= 2, got {n}"
        )));
    }
    if s == 0 {
        return Err(Error::invalid("sparsity must be positive"));
    }
    let k = match override_k {
        Some(k) => {
            if k == 0 || k >= usize::BITS as usize - 1 || (1usize << k) >= n {
                return Err(Error::invalid(format!(
                    "k = {k} violates 1 <= k < log2(n) for n = {n}"
                )));
            }
            k
        }
        None => {
            let logn = (n as f64).log2();
            let mut k = ((logn - logn.log2()).floor() as usize).max(1);
            while k > 1 && (1usize << k) >= n {
                k -= 1;
            }
            k
        }
    };
    Ok(BatchParams::with_k(n, k.min(s)))
}

/// Kept positions `T`, eliminated positions `R`, and for each `i` in `R` the
/// position `l(i)` in `T` sharing its pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliminationPlan {
    pub kept: Vec<usize>,
    pub removed: Vec<usize>,
    pub representative: Vec<usize>,
}

impl EliminationPlan {
    /// Pairs `(l(i), i)` for `i` in `R`, ascending in `i`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.representative
            .iter()
            .copied()
            .zip(self.removed.iter().copied())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Elimination {
    pub plan: EliminationPlan,
    /// `CNOT(l(i); i)` for every `i` in `R`.
    pub cnots: Vec<Gate>,
    /// Batch strings after the CNOT circuit; zero on `R`.
    pub eliminated: Vec<BasisString>,
}

impl Elimination {
    /// The CNOT layer as an `n`-qubit circuit.
    pub fn circuit(&self, n: usize) -> Circuit {
        let mut b = LayoutBuilder::new();
        b.add(reg::MEMORY, n, false);
        let mut c = b.circuit();
        for g in &self.cnots {
            c.push(g.clone());
        }
        c
    }
}

/// Builds the elimination for one batch of at most `k` strings over `n` bits.
///
/// Each distinct column pattern is represented by its smallest position; `T`
/// is filled up to `2^k` positions with the smallest unused indices.
pub fn plan_elimination(batch: &[BasisString], n: usize, k: usize) -> Result<Elimination> {
    if batch.is_empty() {
        return Err(Error::invalid("empty batch"));
    }
    if batch.len() > k {
        return Err(Error::invalid(format!(
            "batch of {} strings exceeds k = {k}",
            batch.len()
        )));
    }
    if k >= 64 || (1usize << k) > n {
        return Err(Error::invalid(format!("2^k exceeds n = {n} for k = {k}")));
    }
    if let Some(x) = batch.iter().find(|x| x.len() != n) {
        return Err(Error::invalid(format!(
            "string {x} does not have length {n}"
        )));
    }
    let t = 1usize << k;

    let pattern = |i: usize| {
        batch
            .iter()
            .enumerate()
            .fold(0u64, |acc, (p, x)| acc | (x.get(i) as u64) << p)
    };
    let mut first: HashMap<u64, usize> = HashMap::new();
    let mut rep_of = vec![0usize; n];
    let mut in_t = vec![false; n];
    for i in 0..n {
        let rep = *first.entry(pattern(i)).or_insert(i);
        rep_of[i] = rep;
        if rep == i {
            in_t[i] = true;
        }
    }
    let mut filled = first.len();
    for flag in in_t.iter_mut() {
        if filled == t {
            break;
        }
        if !*flag {
            *flag = true;
            filled += 1;
        }
    }

    let kept: Vec<usize> = (0..n).filter(|&i| in_t[i]).collect();
    let removed: Vec<usize> = (0..n).filter(|&i| !in_t[i]).collect();
    let representative: Vec<usize> = removed.iter().map(|&i| rep_of[i]).collect();
    let plan = EliminationPlan {
        kept,
        removed,
        representative,
    };

    let cnots = plan
        .pairs()
        .map(|(control, target)| Gate::Cnot { control, target })
        .collect();
    let eliminated = batch
        .iter()
        .map(|x| {
            let mut y = x.clone();
            for (l, i) in plan.pairs() {
                if y.get(l) {
                    y.toggle(i);
                }
            }
            y
        })
        .collect();
    Ok(Elimination {
        plan,
        cnots,
        eliminated,
    })
}

/// Layout: `M` (n), `A` (1, starts at `|0>`), `F` (1, starts at `|1>`).
pub fn empty_circuit(n: usize) -> Circuit {
    let mut b = LayoutBuilder::new();
    b.add(reg::MEMORY, n, false);
    b.add(reg::BATCH, 1, false);
    b.add(reg::FLAG, 1, true);
    b.circuit()
}

pub fn synth_be(state: &SparseState, params: Option<BatchParams>) -> Result<Circuit> {
    let mut circuit = empty_circuit(state.n());
    emit_be(state, params, &mut circuit)?;
    Ok(circuit)
}

/// Streams the BE-QRAM gates for `state` into `sink`. Batches follow input order.
pub fn emit_be(
    state: &SparseState,
    params: Option<BatchParams>,
    sink: &mut impl GateSink,
) -> Result<()> {
    let n = state.n();
    let params = match params {
        Some(p) => {
            if p.k == 0 || p.t != 1 << p.k || p.t > n || p.r != n - p.t {
                return Err(Error::invalid(format!(
                    "inconsistent batch parameters {p:?} for n = {n}"
                )));
            }
            p
        }
        None => choose_params(n, state.s(), None)?,
    };
    let (batch_q, flag) = (n, n + 1);
    let terms = state.terms();
    let gammas = GammaSchedule::new(terms.iter().map(|(_, c)| c));

    for (b, chunk) in terms.chunks(params.k).enumerate() {
        let strings: Vec<BasisString> = chunk.iter().map(|(x, _)| x.clone()).collect();
        let elim = plan_elimination(&strings, n, params.k)?;
        let removed = &elim.plan.removed;
        let kept = &elim.plan.kept;

        for g in &elim.cnots {
            sink.push(g.clone());
        }
        mark_window(sink, removed, batch_q);

        let mut controls = kept.clone();
        controls.push(batch_q);
        for (j, ((_, c), xe)) in chunk.iter().zip(&elim.eliminated).enumerate() {
            let ones: Vec<usize> = xe.ones_positions().collect();
            let zeros: Vec<usize> = kept.iter().copied().filter(|&q| !xe.get(q)).collect();
            for &q in &ones {
                sink.push(Gate::Cnot {
                    control: flag,
                    target: q,
                });
            }
            x_layer(sink, &zeros);
            sink.push(Gate::cspl(
                &controls,
                *c,
                gammas.get(b * params.k + j),
                flag,
            )?);
            x_layer(sink, &zeros);
            for &q in &ones {
                sink.push(Gate::Cnot {
                    control: flag,
                    target: q,
                });
            }
        }

        mark_window(sink, removed, batch_q);
        for g in elim.cnots.iter().rev() {
            sink.push(g.clone());
        }
    }
    Ok(())
}

/// Toggles `A` when every qubit of `R` is zero; a plain `X` when `R` is empty.
fn mark_window(sink: &mut impl GateSink, removed: &[usize], batch_q: usize) {
    x_layer(sink, removed);
    sink.push(Gate::mcx(removed, batch_q));
    x_layer(sink, removed);
}
