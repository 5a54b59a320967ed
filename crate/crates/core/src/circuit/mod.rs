//! Gate-level circuit representation shared by every synthesizer.

mod cost;
mod decompose;
mod format;
mod spl;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub use cost::{count_gates, CostModel, GateCounter, GateCounts, HighLevelCounts};
pub use decompose::{
    decompose_mcx, decompose_toffoli, expand_elementary, mcu_without_work, Elementary,
    ElementarySink,
};
pub use spl::{spl_matrix, spl_radical, Mat2, SPL_SLACK};

/// Matrix helpers for 2x2 unitaries.
pub mod mat2 {
    pub use super::spl::{
        dagger, det, hadamard, identity, is_unitary, max_abs_diff, mul, pauli_x, phase,
        reflection_frame, ry, rz, scale, sqrt_unitary, zyz,
    };
}

/// High-level gates. Controls are always positive; zero-valued conditions are
/// written as explicit X conjugation by the synthesizers.
#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    X(usize),
    Cnot {
        control: usize,
        target: usize,
    },
    Toffoli {
        c1: usize,
        c2: usize,
        target: usize,
    },
    Mcx {
        controls: Vec<usize>,
        target: usize,
    },
    Spl {
        alpha: Complex64,
        beta: f64,
        target: usize,
    },
    Cspl {
        controls: Vec<usize>,
        alpha: Complex64,
        beta: f64,
        target: usize,
    },
}

impl Gate {
    /// Multi-controlled X, collapsed to `X`, `CNOT` or Toffoli for 0, 1 or 2 controls.
    pub fn mcx(controls: &[usize], target: usize) -> Gate {
        match *controls {
            [] => Gate::X(target),
            [control] => Gate::Cnot { control, target },
            [c1, c2] => Gate::Toffoli { c1, c2, target },
            _ => Gate::Mcx {
                controls: controls.to_vec(),
                target,
            },
        }
    }

    /// Multi-controlled split gate; no controls gives a plain `SPL`.
    pub fn cspl(controls: &[usize], alpha: Complex64, beta: f64, target: usize) -> Result<Gate> {
        spl_radical(alpha, beta)?;
        Ok(if controls.is_empty() {
            Gate::Spl {
                alpha,
                beta,
                target,
            }
        } else {
            Gate::Cspl {
                controls: controls.to_vec(),
                alpha,
                beta,
                target,
            }
        })
    }

    pub fn target(&self) -> usize {
        match *self {
            Gate::X(t) => t,
            Gate::Cnot { target, .. }
            | Gate::Toffoli { target, .. }
            | Gate::Mcx { target, .. }
            | Gate::Spl { target, .. }
            | Gate::Cspl { target, .. } => target,
        }
    }

    pub fn controls(&self) -> Vec<usize> {
        match self {
            Gate::X(_) | Gate::Spl { .. } => Vec::new(),
            Gate::Cnot { control, .. } => vec![*control],
            Gate::Toffoli { c1, c2, .. } => vec![*c1, *c2],
            Gate::Mcx { controls, .. } | Gate::Cspl { controls, .. } => controls.clone(),
        }
    }

    pub fn num_controls(&self) -> usize {
        match self {
            Gate::X(_) | Gate::Spl { .. } => 0,
            Gate::Cnot { .. } => 1,
            Gate::Toffoli { .. } => 2,
            Gate::Mcx { controls, .. } | Gate::Cspl { controls, .. } => controls.len(),
        }
    }

    /// True for the gates that only permute basis states.
    pub fn is_permutation(&self) -> bool {
        !matches!(self, Gate::Spl { .. } | Gate::Cspl { .. })
    }

    /// Same gate with the opposite orientation; permutation gates are self-inverse
    /// and the split gate is Hermitian, so every gate here is its own inverse.
    pub fn inverse(&self) -> Gate {
        self.clone()
    }

    pub fn validate(&self, width: usize) -> Result<()> {
        let target = self.target();
        let controls = self.controls();
        for &q in controls.iter().chain(std::iter::once(&target)) {
            if q >= width {
                return Err(Error::QubitOutOfRange { index: q, width });
            }
        }
        let mut seen = controls.clone();
        seen.push(target);
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid(format!("gate {self:?} repeats a qubit")));
        }
        if let Gate::Spl { alpha, beta, .. } | Gate::Cspl { alpha, beta, .. } = self {
            spl_radical(*alpha, *beta)?;
        }
        Ok(())
    }
}

/// Destination for synthesized gates: a [`Circuit`] collects them, a
/// [`GateCounter`] only tallies.
pub trait GateSink {
    fn push(&mut self, gate: Gate);
}

impl GateSink for Vec<Gate> {
    fn push(&mut self, gate: Gate) {
        Vec::push(self, gate);
    }
}

/// A named, inclusive range of qubit indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Register {
    pub name: String,
    pub lo: usize,
    pub hi: usize,
    /// Whether the register starts in `|1...1>` instead of `|0...0>`.
    pub starts_one: bool,
}

impl Register {
    pub fn new(name: &str, lo: usize, len: usize) -> Self {
        assert!(len > 0, "empty register {name}");
        Register {
            name: name.to_string(),
            lo,
            hi: lo + len - 1,
            starts_one: false,
        }
    }

    pub fn len(&self) -> usize {
        self.hi - self.lo + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn range(&self) -> std::ops::Range<usize> {
        self.lo..self.hi + 1
    }

    pub fn contains(&self, q: usize) -> bool {
        self.range().contains(&q)
    }

    /// Global index of the `i`-th qubit.
    pub fn at(&self, i: usize) -> usize {
        debug_assert!(i < self.len());
        self.lo + i
    }
}

/// Register names used by the synthesizers.
pub mod reg {
    pub const MEMORY: &str = "M";
    pub const FLAG: &str = "F";
    pub const BATCH: &str = "A";
    pub const TREE: &str = "T";
    pub const HELPER: &str = "H";
}

#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    width: usize,
    registers: Vec<Register>,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(width: usize, registers: Vec<Register>) -> Result<Self> {
        let mut sorted: Vec<&Register> = registers.iter().collect();
        sorted.sort_by_key(|r| r.lo);
        for r in &sorted {
            if r.lo > r.hi || r.hi >= width {
                return Err(Error::invalid(format!(
                    "register {} [{}, {}] outside width {width}",
                    r.name, r.lo, r.hi
                )));
            }
        }
        if sorted.windows(2).any(|w| w[0].hi >= w[1].lo) {
            return Err(Error::invalid("registers overlap"));
        }
        let mut names: Vec<&str> = registers.iter().map(|r| r.name.as_str()).collect();
        names.sort_unstable();
        if names.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("duplicate register name"));
        }
        Ok(Circuit {
            width,
            registers,
            gates: Vec::new(),
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn registers(&self) -> &[Register] {
        &self.registers
    }

    pub fn register(&self, name: &str) -> Option<&Register> {
        self.registers.iter().find(|r| r.name == name)
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Validated append.
    pub fn try_push(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.width)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn extend(&mut self, gates: impl IntoIterator<Item = Gate>) -> Result<()> {
        for g in gates {
            self.try_push(g)?;
        }
        Ok(())
    }

    /// Gates `0..len` as a new circuit with the same layout.
    pub fn prefix(&self, len: usize) -> Circuit {
        Circuit {
            width: self.width,
            registers: self.registers.clone(),
            gates: self.gates[..len].to_vec(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.gates.iter().try_for_each(|g| g.validate(self.width))
    }

    /// Initial basis state implied by the register metadata.
    pub fn initial_bits(&self) -> crate::bits::BasisString {
        let mut init = crate::bits::BasisString::zeros(self.width);
        for r in self.registers.iter().filter(|r| r.starts_one) {
            for q in r.range() {
                init.set(q, true);
            }
        }
        init
    }
}

impl GateSink for Circuit {
    /// Synthesizers only emit gates over their own layout; an invalid gate here
    /// is a bug, not an input error.
    fn push(&mut self, gate: Gate) {
        debug_assert!(gate.validate(self.width).is_ok(), "{gate:?}");
        self.gates.push(gate);
    }
}
