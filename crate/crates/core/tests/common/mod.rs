//! Dense statevector oracle for small widths, independent of the sparse simulator.

#![allow(dead_code)]

use num_complex::Complex64;
use sqsp_core::circuit::{spl_matrix, Elementary, Mat2};
use sqsp_core::sim::SimState;
use sqsp_core::{BasisString, Circuit, Gate};

pub const MAX_DENSE_WIDTH: usize = 12;

/// Amplitudes indexed so that qubit 0 is the most significant bit, matching
/// the leftmost-character convention of basis strings.
#[derive(Debug, Clone)]
pub struct Dense {
    pub width: usize,
    pub amps: Vec<Complex64>,
}

impl Dense {
    pub fn basis(width: usize, index: usize) -> Self {
        assert!(width <= MAX_DENSE_WIDTH);
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << width];
        amps[index] = Complex64::new(1.0, 0.0);
        Dense { width, amps }
    }

    pub fn from_bits(bits: &BasisString) -> Self {
        Dense::basis(bits.len(), index_of(bits))
    }

    fn mask(&self, q: usize) -> usize {
        1 << (self.width - 1 - q)
    }

    fn all_set(&self, i: usize, qs: &[usize]) -> bool {
        qs.iter().all(|&q| i & self.mask(q) != 0)
    }

    /// Applies `u` to `target` on the subspace where all `controls` are one.
    pub fn controlled(&mut self, controls: &[usize], target: usize, u: &Mat2) {
        let tm = self.mask(target);
        for i in 0..self.amps.len() {
            if i & tm != 0 || !self.all_set(i, controls) {
                continue;
            }
            let (a0, a1) = (self.amps[i], self.amps[i | tm]);
            self.amps[i] = u[0][0] * a0 + u[0][1] * a1;
            self.amps[i | tm] = u[1][0] * a0 + u[1][1] * a1;
        }
    }

    pub fn apply(&mut self, gate: &Gate) {
        let x = [[c(0.0), c(1.0)], [c(1.0), c(0.0)]];
        match gate {
            Gate::X(t) => self.controlled(&[], *t, &x),
            Gate::Cnot { control, target } => self.controlled(&[*control], *target, &x),
            Gate::Toffoli { c1, c2, target } => self.controlled(&[*c1, *c2], *target, &x),
            Gate::Mcx { controls, target } => self.controlled(controls, *target, &x),
            Gate::Spl {
                alpha,
                beta,
                target,
            } => self.controlled(&[], *target, &spl_matrix(*alpha, *beta).unwrap()),
            Gate::Cspl {
                controls,
                alpha,
                beta,
                target,
            } => self.controlled(controls, *target, &spl_matrix(*alpha, *beta).unwrap()),
        }
    }

    pub fn apply_elementary(&mut self, gate: &Elementary) {
        match gate {
            Elementary::Single { qubit, matrix, .. } => self.controlled(&[], *qubit, matrix),
            Elementary::Cnot { control, target } => {
                self.controlled(&[*control], *target, &[[c(0.0), c(1.0)], [c(1.0), c(0.0)]])
            }
        }
    }

    pub fn run(circuit: &Circuit) -> Self {
        let mut d = Dense::from_bits(&circuit.initial_bits());
        for g in circuit.gates() {
            d.apply(g);
        }
        d
    }

    /// Largest deviation from a sparse state of the same width.
    pub fn max_diff(&self, sparse: &SimState) -> f64 {
        assert_eq!(sparse.width(), self.width);
        let mut dev: f64 = 0.0;
        for (i, a) in self.amps.iter().enumerate() {
            let x = BasisString::from_u64(i as u64, self.width);
            dev = dev.max((a - sparse.amplitude(&x)).norm());
        }
        dev
    }

    pub fn max_diff_dense(&self, other: &Dense) -> f64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn index_of(bits: &BasisString) -> usize {
    (0..bits.len()).fold(0, |acc, q| acc << 1 | bits.get(q) as usize)
}

/// Column-major unitary of an elementary sequence on `width` qubits.
pub fn unitary(width: usize, gates: &[Elementary]) -> Vec<Vec<Complex64>> {
    (0..1 << width)
        .map(|col| {
            let mut d = Dense::basis(width, col);
            for g in gates {
                d.apply_elementary(g);
            }
            d.amps
        })
        .collect()
}
