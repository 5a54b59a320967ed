//! LT-QRAM: walk the support along a Hamiltonian path while an AND tree over
//! the memory register tracks equality with the current path head. Loading a
//! term then needs a split gate controlled only on the tree root.

use num_complex::Complex64;

use crate::bits::BasisString;
use crate::circuit::{reg, Circuit, Gate, GateSink};
use crate::error::{Error, Result};
use crate::state::SparseState;

use super::{GammaSchedule, LayoutBuilder};

/// Heap-ordered binary tree over the (padded) memory register.
///
/// Nodes are numbered from 1 at the root; node `v` has children `2v` and
/// `2v + 1`, and memory qubit `i` (0-based) sits at leaf `padded + i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreeLayout {
    /// Memory qubits.
    pub n: usize,
    /// `n` rounded up to a power of two.
    pub padded: usize,
    /// `2 * padded - 1` tree qubits.
    pub tree_size: usize,
    /// `log2(padded) + 1` helper qubits, one per tree level.
    pub helpers: usize,
}

impl TreeLayout {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "tree over an empty register");
        let padded = n.next_power_of_two();
        TreeLayout {
            n,
            padded,
            tree_size: 2 * padded - 1,
            helpers: padded.trailing_zeros() as usize + 1,
        }
    }

    pub fn root(&self) -> usize {
        1
    }

    pub fn leaf(&self, i: usize) -> usize {
        debug_assert!(i < self.padded);
        self.padded + i
    }

    /// Ancestor of leaf `i` at level `j` (1 = the leaf itself, `helpers` = root).
    pub fn q(&self, i: usize, j: usize) -> usize {
        debug_assert!((1..=self.helpers).contains(&j));
        self.leaf(i) >> (j - 1)
    }

    /// Sibling of `q(i, j)` for `j < helpers`.
    pub fn sib(&self, i: usize, j: usize) -> usize {
        debug_assert!((1..self.helpers).contains(&j));
        self.q(i, j) ^ 1
    }

    /// Nodes counted from the root, which has depth 1.
    pub fn depth(&self, node: usize) -> usize {
        debug_assert!(node >= 1 && node <= self.tree_size);
        node.ilog2() as usize + 1
    }

    pub fn parent(&self, node: usize) -> Option<usize> {
        (node > 1).then_some(node / 2)
    }

    /// Interior nodes ordered root first, level by level.
    pub fn interior_top_down(&self) -> std::ops::Range<usize> {
        1..self.padded
    }

    pub fn is_padding_leaf(&self, node: usize) -> bool {
        node >= self.padded + self.n
    }
}

/// Global qubit indices of the LT-QRAM registers.
#[derive(Debug, Clone, Copy)]
struct Wiring {
    tree: TreeLayout,
    tree_lo: usize,
    helper_lo: usize,
    flag: usize,
}

impl Wiring {
    fn node(&self, v: usize) -> usize {
        self.tree_lo + v - 1
    }

    fn helper(&self, k: usize) -> usize {
        self.helper_lo + k - 1
    }
}

/// Layout: `M` (n), `T` (2n' - 1), `H` (log n' + 1), `F` (1, starts at `|1>`).
pub fn empty_circuit(n: usize) -> (Circuit, TreeLayout) {
    let tree = TreeLayout::new(n);
    let mut b = LayoutBuilder::new();
    b.add(reg::MEMORY, n, false);
    b.add(reg::TREE, tree.tree_size, false);
    b.add(reg::HELPER, tree.helpers, false);
    b.add(reg::FLAG, 1, true);
    (b.circuit(), tree)
}

/// Total width of the LT-QRAM layout for `n` memory qubits.
pub fn width(n: usize) -> usize {
    let t = TreeLayout::new(n);
    n + t.tree_size + t.helpers + 1
}

/// Incremental LT-QRAM emitter: `begin` with the first path string, `advance`
/// once per further string, then `finish`.
pub struct LtEmitter<'s, S: GateSink> {
    wiring: Wiring,
    current: BasisString,
    sink: &'s mut S,
}

impl<'s, S: GateSink> LtEmitter<'s, S> {
    /// Writes the first string into `M`, fills the tree with ones and loads
    /// the first amplitude.
    pub fn begin(
        sink: &'s mut S,
        first: &BasisString,
        amplitude: Complex64,
        gamma: f64,
    ) -> Result<Self> {
        let n = first.len();
        if n == 0 {
            return Err(Error::invalid("empty bit strings"));
        }
        let tree = TreeLayout::new(n);
        let tree_lo = n;
        let helper_lo = tree_lo + tree.tree_size;
        let wiring = Wiring {
            tree,
            tree_lo,
            helper_lo,
            flag: helper_lo + tree.helpers,
        };

        for q in first.ones_positions() {
            sink.push(Gate::X(q));
        }
        for v in 1..=tree.tree_size {
            sink.push(Gate::X(wiring.node(v)));
        }
        sink.push(Gate::cspl(&[], amplitude, gamma, wiring.flag)?);
        Ok(LtEmitter {
            wiring,
            current: first.clone(),
            sink,
        })
    }

    /// Moves the flagged branch to `next` and loads its amplitude.
    pub fn advance_to(
        &mut self,
        next: &BasisString,
        amplitude: Complex64,
        gamma: f64,
    ) -> Result<()> {
        if next.len() != self.current.len() {
            return Err(Error::invalid(format!(
                "path string {next} has the wrong length"
            )));
        }
        let diff = self.current.diff_positions(next);
        self.advance(&diff, amplitude, gamma)
    }

    /// As [`advance_to`](Self::advance_to), given the ascending positions where
    /// the next string differs from the current one.
    pub fn advance(&mut self, diff: &[usize], amplitude: Complex64, gamma: f64) -> Result<()> {
        if diff.is_empty() {
            return Err(Error::invalid(format!("path repeats {}", self.current)));
        }
        let w = self.wiring;
        let tree = w.tree;
        for &j in diff {
            if j >= tree.n {
                return Err(Error::invalid(format!("bit {j} out of range")));
            }
            self.sink.push(Gate::Cnot {
                control: w.flag,
                target: j,
            });
        }
        for &j in diff {
            self.current.toggle(j);
            let arm = |sink: &mut S| {
                sink.push(Gate::X(w.flag));
                sink.push(Gate::Cnot {
                    control: w.flag,
                    target: w.helper(1),
                });
                sink.push(Gate::X(w.flag));
            };
            let rung = |k: usize| Gate::Toffoli {
                c1: w.helper(k - 1),
                c2: w.node(tree.sib(j, k - 1)),
                target: w.helper(k),
            };
            arm(self.sink);
            for k in 2..=tree.helpers {
                self.sink.push(rung(k));
            }
            for k in 1..=tree.helpers {
                self.sink.push(Gate::Cnot {
                    control: w.helper(k),
                    target: w.node(tree.q(j, k)),
                });
            }
            for k in (2..=tree.helpers).rev() {
                self.sink.push(rung(k));
            }
            arm(self.sink);
        }
        self.sink.push(Gate::cspl(
            &[w.node(tree.root())],
            amplitude,
            gamma,
            w.flag,
        )?);
        Ok(())
    }

    /// Uncomputes the tree: interior nodes root first, then the leaves against `M`.
    pub fn finish(self) {
        let w = self.wiring;
        let tree = w.tree;
        for v in tree.interior_top_down() {
            self.sink.push(Gate::Toffoli {
                c1: w.node(2 * v),
                c2: w.node(2 * v + 1),
                target: w.node(v),
            });
        }
        for i in 0..tree.padded {
            let leaf = w.node(tree.leaf(i));
            if i >= tree.n {
                self.sink.push(Gate::X(leaf));
                continue;
            }
            let flip = !self.current.get(i);
            if flip {
                self.sink.push(Gate::X(i));
            }
            self.sink.push(Gate::Cnot {
                control: i,
                target: leaf,
            });
            if flip {
                self.sink.push(Gate::X(i));
            }
        }
    }
}

/// Checks that `path` orders exactly the support of `state`, returning the
/// amplitudes in path order.
fn amplitudes_along(state: &SparseState, path: &[BasisString]) -> Result<Vec<Complex64>> {
    if path.len() != state.s() {
        return Err(Error::invalid(format!(
            "path has {} strings, support has {}",
            path.len(),
            state.s()
        )));
    }
    let index: std::collections::HashMap<&BasisString, Complex64> =
        state.terms().iter().map(|(x, c)| (x, *c)).collect();
    let mut seen = std::collections::HashSet::new();
    path.iter()
        .map(|x| {
            if !seen.insert(x) {
                return Err(Error::invalid(format!("path visits {x} twice")));
            }
            index
                .get(x)
                .copied()
                .ok_or_else(|| Error::invalid(format!("path string {x} is not in the support")))
        })
        .collect()
}

pub fn synth_lt(state: &SparseState, path: &[BasisString]) -> Result<Circuit> {
    let (mut circuit, _) = empty_circuit(state.n());
    emit_lt(state, path, &mut circuit)?;
    Ok(circuit)
}

/// Streams the LT-QRAM gates for `state` along `path` into `sink`.
pub fn emit_lt(state: &SparseState, path: &[BasisString], sink: &mut impl GateSink) -> Result<()> {
    let amps = amplitudes_along(state, path)?;
    let gammas = GammaSchedule::new(amps.iter());
    let mut em = LtEmitter::begin(sink, &path[0], amps[0], gammas.get(0))?;
    for (i, x) in path.iter().enumerate().skip(1) {
        em.advance_to(x, amps[i], gammas.get(i))?;
    }
    em.finish();
    Ok(())
}
