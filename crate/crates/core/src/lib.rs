//! Sparse quantum state preparation.
//!
//! Three synthesizers turn a sparse target state into a circuit over a small
//! gate set ([`Gate`]): CVO-QRAM loads one term per split gate, BE-QRAM
//! batches terms after compressing them with CNOTs, and LT-QRAM walks the
//! support along a Hamiltonian path using an AND tree. A hash-map simulator
//! checks the results; [`circuit::count_gates`] reports sizes under a
//! high-level or an elementary (CNOT + single-qubit) cost model.
//!
//! ```
//! use num_complex::Complex64;
//! use sqsp_core::{sim, synth, SparseState};
//!
//! let a = Complex64::new(0.5f64.sqrt(), 0.0);
//! let state = SparseState::from_pairs([("000", a), ("111", a)]).unwrap();
//! let circuit = synth::cvo::synth_cvo(&state).unwrap();
//! assert!(sim::verify(&circuit, &state).unwrap().passed());
//! ```

pub mod bench;
pub mod bits;
pub mod circuit;
pub mod error;
pub mod hampath;
pub mod sim;
pub mod state;
pub mod synth;
pub mod text;

pub use bits::BasisString;
pub use circuit::{Circuit, CostModel, Gate, GateCounts, GateSink, Register};
pub use error::{Error, Result};
pub use hampath::PathResult;
pub use sim::{SimState, VerificationReport};
pub use state::SparseState;
pub use synth::{Algorithm, PathStrategy, SynthOptions};
