//! Seed derivation.
//!
//! Every random decision in the crate draws from a [`ChaCha8Rng`] keyed by the
//! user's 64-bit master seed. Independent tasks get independent ChaCha streams
//! (the 64-bit stream id of the cipher), so a replicate's output depends only
//! on the master seed and the task's label, never on scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Stream labels used by the library. Callers may use any other values.
pub mod stream {
    pub const DEGREES: u64 = 1;
    pub const MATCHING: u64 = 2;
    pub const BFS: u64 = 3;
    pub const COPY_INDEX: u64 = 4;
    pub const ROOTS: u64 = 5;
    pub const THEOREM3: u64 = 6;
    pub const THEOREM4: u64 = 7;
    pub const PVIS: u64 = 8;
    pub const BOOTSTRAP: u64 = 9;
}

/// SplitMix64 finalizer.
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Combines a parent seed with a label into a child seed.
pub fn derive(seed: u64, label: u64) -> u64 {
    mix(seed ^ mix(label.wrapping_add(0x9e37_79b9_7f4a_7c15)))
}

/// Derives a seed from a path of labels, e.g. `[stream::BFS, group, replicate]`.
pub fn derive_path(seed: u64, labels: &[u64]) -> u64 {
    labels.iter().fold(seed, |s, &l| derive(s, l))
}

/// Generator for one task: the master seed keys the cipher and the hashed
/// label path selects the stream.
pub fn task_rng(seed: u64, labels: &[u64]) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(derive_path(0, labels));
    rng
}
