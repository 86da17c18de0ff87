//! Seeded randomness.
//!
//! Every random draw in the crate comes from `ChaCha8Rng` seeded through
//! `SeedableRng::seed_from_u64`. Both the ChaCha8 keystream and the
//! `seed_from_u64` expansion are fixed by `rand_chacha` and platform
//! independent, so a seed pins the exact bit stream. Batch runs derive the
//! seed of item `i` as `base + i` (wrapping).

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn derive_seed(base: u64, index: u64) -> u64 {
    base.wrapping_add(index)
}
