//! Seed derivation. Every random decision in the crate flows from one
//! master seed through `mix`, so runs are reproducible and per-vertex
//! coins can be committed without storing them.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// splitmix64 finalizer.
#[inline]
fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Combines a seed with a stream label into a new seed.
#[inline]
pub fn mix(seed: u64, label: u64) -> u64 {
    splitmix(seed ^ splitmix(label))
}

/// Combines a seed with several labels.
pub fn mix_all(seed: u64, labels: &[u64]) -> u64 {
    labels.iter().fold(seed, |acc, &l| mix(acc, l))
}

/// The crate-wide RNG. ChaCha8 keeps derived streams independent and is
/// fast enough for the Monte Carlo tests.
pub type EstimatorRng = ChaCha8Rng;

pub fn rng_from(seed: u64) -> EstimatorRng {
    ChaCha8Rng::seed_from_u64(seed)
}
