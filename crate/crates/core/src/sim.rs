//! Map-based sparse statevector simulator, used as the correctness oracle for
//! every synthesized circuit.

use std::collections::HashMap;
use std::fmt;

use num_complex::Complex64;

use crate::bits::BasisString;
use crate::circuit::{reg, spl_matrix, Circuit, Gate};
use crate::error::{Error, Result};
use crate::state::SparseState;

/// Amplitudes below this magnitude are dropped after a split.
pub const PRUNE_THRESHOLD: f64 = 1e-14;

/// Componentwise tolerance for exact preparation.
pub const VERIFY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct SimState {
    width: usize,
    amplitudes: HashMap<BasisString, Complex64>,
}

impl SimState {
    /// The single basis state `bits` with amplitude 1.
    pub fn basis(bits: BasisString) -> Self {
        let width = bits.len();
        let mut amplitudes = HashMap::with_capacity(1);
        amplitudes.insert(bits, Complex64::new(1.0, 0.0));
        SimState { width, amplitudes }
    }

    pub fn from_amplitudes(
        width: usize,
        amps: impl IntoIterator<Item = (BasisString, Complex64)>,
    ) -> Result<Self> {
        let mut amplitudes = HashMap::new();
        for (x, c) in amps {
            if x.len() != width {
                return Err(Error::invalid(format!("basis state {x} has wrong width")));
            }
            if c.norm() >= PRUNE_THRESHOLD {
                *amplitudes.entry(x).or_default() += c;
            }
        }
        Ok(SimState { width, amplitudes })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn support_size(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitude(&self, x: &BasisString) -> Complex64 {
        self.amplitudes.get(x).copied().unwrap_or_default()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.values().map(|c| c.norm_sqr()).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BasisString, &Complex64)> {
        self.amplitudes.iter()
    }

    /// Entries in lexicographic order of their basis strings.
    pub fn sorted(&self) -> Vec<(BasisString, Complex64)> {
        let mut v: Vec<_> = self
            .amplitudes
            .iter()
            .map(|(k, c)| (k.clone(), *c))
            .collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }

    /// Pure gate application.
    pub fn apply(&self, gate: &Gate) -> Result<SimState> {
        let mut next = self.clone();
        next.apply_in_place(gate)?;
        Ok(next)
    }

    pub fn apply_in_place(&mut self, gate: &Gate) -> Result<()> {
        gate.validate(self.width)?;
        let controls = gate.controls();
        let target = gate.target();
        let fires = |x: &BasisString| controls.iter().all(|&c| x.get(c));
        match gate {
            Gate::Spl { alpha, beta, .. } | Gate::Cspl { alpha, beta, .. } => {
                let m = spl_matrix(*alpha, *beta)?;
                let mut next: HashMap<BasisString, Complex64> =
                    HashMap::with_capacity(self.amplitudes.len() + 1);
                for (x, c) in self.amplitudes.drain() {
                    if !fires(&x) {
                        *next.entry(x).or_default() += c;
                        continue;
                    }
                    let col = x.get(target) as usize;
                    let mut x0 = x;
                    x0.set(target, false);
                    let mut x1 = x0.clone();
                    x1.set(target, true);
                    *next.entry(x0).or_default() += m[0][col] * c;
                    *next.entry(x1).or_default() += m[1][col] * c;
                }
                next.retain(|_, c| c.norm() >= PRUNE_THRESHOLD);
                self.amplitudes = next;
            }
            _ => {
                let entries: Vec<_> = self.amplitudes.drain().collect();
                for (mut x, c) in entries {
                    if fires(&x) {
                        x.toggle(target);
                    }
                    self.amplitudes.insert(x, c);
                }
            }
        }
        Ok(())
    }
}

/// Applies every gate of `circuit` left to right.
pub fn run(circuit: &Circuit, initial: &SimState) -> Result<SimState> {
    if initial.width != circuit.width() {
        return Err(Error::invalid(format!(
            "state width {} does not match circuit width {}",
            initial.width,
            circuit.width()
        )));
    }
    let mut state = initial.clone();
    for g in circuit.gates() {
        state.apply_in_place(g)?;
    }
    Ok(state)
}

/// Runs `circuit` from the basis state its register metadata prescribes.
pub fn run_from_initial(circuit: &Circuit) -> Result<SimState> {
    run(circuit, &SimState::basis(circuit.initial_bits()))
}

/// Outcome of comparing a circuit's output with a target state.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    /// `|<target, 0_anc | output>|`.
    pub fidelity: f64,
    /// Largest componentwise deviation over all basis states.
    pub max_deviation: f64,
    /// Output basis states with a nonzero ancilla qubit.
    pub dirty_ancillas: Vec<(BasisString, Complex64)>,
    /// Basis states whose amplitude deviates beyond tolerance, with
    /// `(expected, actual)`.
    pub mismatches: Vec<(BasisString, Complex64, Complex64)>,
}

impl VerificationReport {
    pub fn ancillas_clean(&self) -> bool {
        self.dirty_ancillas.is_empty()
    }

    pub fn passed(&self) -> bool {
        self.ancillas_clean() && self.max_deviation <= VERIFY_TOLERANCE
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", if self.passed() { "PASS" } else { "FAIL" })?;
        writeln!(f, "fidelity {:.15}", self.fidelity)?;
        writeln!(f, "max_deviation {:.3e}", self.max_deviation)?;
        writeln!(
            f,
            "ancillas {}",
            if self.ancillas_clean() {
                "clean"
            } else {
                "dirty"
            }
        )?;
        for (x, c) in self.dirty_ancillas.iter().take(20) {
            writeln!(f, "  dirty {x} {:.6e}{:+.6e}i", c.re, c.im)?;
        }
        for (x, want, got) in self.mismatches.iter().take(20) {
            writeln!(
                f,
                "  mismatch {x} expected {:.6e}{:+.6e}i got {:.6e}{:+.6e}i",
                want.re, want.im, got.re, got.im
            )?;
        }
        Ok(())
    }
}

/// Runs `circuit` and compares the result with `target` on the memory
/// register, requiring every other qubit to return to zero.
pub fn verify(circuit: &Circuit, target: &SparseState) -> Result<VerificationReport> {
    let memory = circuit
        .register(reg::MEMORY)
        .ok_or_else(|| Error::invalid("circuit has no memory register M"))?;
    if memory.len() != target.n() {
        return Err(Error::invalid(format!(
            "memory register has {} qubits, target state has {}",
            memory.len(),
            target.n()
        )));
    }
    let out = run_from_initial(circuit)?;

    let embed = |x: &BasisString| {
        let mut full = BasisString::zeros(circuit.width());
        full.splice(memory.lo, x);
        full
    };
    let expected: HashMap<BasisString, Complex64> =
        target.terms().iter().map(|(x, c)| (embed(x), *c)).collect();

    let mut dirty = Vec::new();
    let mut mismatches = Vec::new();
    let mut max_dev: f64 = 0.0;
    let mut overlap = Complex64::new(0.0, 0.0);
    for (x, got) in out.sorted() {
        if !x.is_zero_outside(memory.range()) {
            max_dev = max_dev.max(got.norm());
            dirty.push((x, got));
            continue;
        }
        let want = expected.get(&x).copied().unwrap_or_default();
        overlap += want.conj() * got;
        let dev = (want - got).norm();
        max_dev = max_dev.max(dev);
        if dev > VERIFY_TOLERANCE {
            mismatches.push((x, want, got));
        }
    }
    let mut missing: Vec<_> = expected
        .iter()
        .filter(|(x, _)| out.amplitude(x) == Complex64::default())
        .collect();
    missing.sort_by(|a, b| a.0.cmp(b.0));
    for (x, want) in missing {
        max_dev = max_dev.max(want.norm());
        if want.norm() > VERIFY_TOLERANCE {
            mismatches.push((x.clone(), *want, Complex64::default()));
        }
    }
    Ok(VerificationReport {
        fidelity: overlap.norm(),
        max_deviation: max_dev,
        dirty_ancillas: dirty,
        mismatches,
    })
}

/// Like [`verify`] but turns a failed comparison into an error; returns the fidelity.
pub fn assert_prepares(circuit: &Circuit, target: &SparseState) -> Result<f64> {
    let report = verify(circuit, target)?;
    if report.passed() {
        Ok(report.fidelity)
    } else {
        Err(Error::Verification(report.to_string()))
    }
}
