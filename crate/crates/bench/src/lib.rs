//! Fixed inputs shared by the criterion benches.

use sqsp_core::bench::random_sparse_state;
use sqsp_core::{Algorithm, SparseState, SynthOptions};

/// Seed used for every benchmark instance.
pub const SEED: u64 = 0x5eed;

/// Register sizes for the `s = n` synthesis groups.
pub const SPARSE_SIZES: [usize; 3] = [64, 256, 1024];

/// Register sizes for the constant-weight group, `k = n / 2`.
pub const U1_SIZES: [usize; 3] = [8, 12, 16];

pub fn sparse_instance(n: usize) -> SparseState {
    random_sparse_state(n, n, SEED ^ n as u64).expect("s = n fits in 2^n for n >= 1")
}

/// Small instance that is also simulated in the verification group.
pub fn verifiable_instance() -> SparseState {
    random_sparse_state(24, 16, SEED).expect("valid size")
}

pub fn options() -> [SynthOptions; 3] {
    [Algorithm::Cvo, Algorithm::Be, Algorithm::Lt].map(SynthOptions::new)
}
