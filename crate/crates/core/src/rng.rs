//! Seeded random streams.
//!
//! Every random quantity in the crate comes from ChaCha8 keyed by a 64-bit
//! user seed plus up to three 64-bit stream keys (for example `(n, draw)` or
//! `(restart,)`). The 256-bit ChaCha key is the little-endian concatenation
//! `seed || k0 || k1 || k2`, so distinct key tuples give independent streams
//! and results never depend on scheduling order.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Stream keyed by `seed` and up to three sub-keys (missing keys are 0).
pub fn stream(seed: u64, keys: &[u64]) -> ChaCha8Rng {
    assert!(keys.len() <= 3, "at most three stream keys");
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    for (i, k) in keys.iter().enumerate() {
        key[8 * (i + 1)..8 * (i + 2)].copy_from_slice(&k.to_le_bytes());
    }
    ChaCha8Rng::from_seed(key)
}

/// A child seed, i.e. the first word of the keyed stream.
pub fn derive_seed(seed: u64, keys: &[u64]) -> u64 {
    stream(seed, keys).next_u64()
}

/// ±1 from the top bit of the next 64-bit word.
#[inline]
pub fn sign_from_top_bit(rng: &mut impl RngCore) -> f64 {
    if rng.next_u64() >> 63 == 1 {
        -1.0
    } else {
        1.0
    }
}
