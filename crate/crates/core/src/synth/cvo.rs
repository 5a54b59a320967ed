//! CVO-QRAM: load one term at a time, controlling the split gate on the
//! one-positions of the current string.

use crate::circuit::{reg, Circuit, Gate, GateSink};
use crate::error::Result;
use crate::state::SparseState;

use super::{GammaSchedule, LayoutBuilder};

/// Load order: ascending Hamming weight, ties broken lexicographically.
pub fn load_order(state: &SparseState) -> Vec<usize> {
    let terms = state.terms();
    let mut order: Vec<usize> = (0..terms.len()).collect();
    order.sort_by(|&a, &b| {
        let (xa, xb) = (&terms[a].0, &terms[b].0);
        xa.hamming_weight()
            .cmp(&xb.hamming_weight())
            .then_with(|| xa.cmp(xb))
    });
    order
}

/// Layout: `M` (n qubits) then `F` (1 qubit, starts at `|1>`).
pub fn empty_circuit(n: usize) -> Circuit {
    let mut b = LayoutBuilder::new();
    b.add(reg::MEMORY, n, false);
    b.add(reg::FLAG, 1, true);
    b.circuit()
}

pub fn synth_cvo(state: &SparseState) -> Result<Circuit> {
    let mut circuit = empty_circuit(state.n());
    emit_cvo(state, &mut circuit)?;
    Ok(circuit)
}

/// Streams the CVO-QRAM gates for `state` into `sink`.
pub fn emit_cvo(state: &SparseState, sink: &mut impl GateSink) -> Result<()> {
    let n = state.n();
    let flag = n;
    let order = load_order(state);
    let terms = state.terms();
    let gammas = GammaSchedule::new(order.iter().map(|&i| &terms[i].1));

    for (j, &i) in order.iter().enumerate() {
        let (x, c) = &terms[i];
        let ones: Vec<usize> = x.ones_positions().collect();
        for &q in &ones {
            sink.push(Gate::Cnot {
                control: flag,
                target: q,
            });
        }
        sink.push(Gate::cspl(&ones, *c, gammas.get(j), flag)?);
        for &q in &ones {
            sink.push(Gate::Cnot {
                control: flag,
                target: q,
            });
        }
    }
    Ok(())
}
