//! Deterministic randomness.
//!
//! Every stochastic routine draws from SplitMix64 (Steele, Lea & Flood) seeded
//! with a plain `u64`. Bounded integers use Lemire's multiply-shift with
//! rejection, and permutations use the descending Fisher–Yates loop below.
//! Together these fix every sampled value for a given seed.

use rand_core::{RngCore, SeedableRng};
pub use rand_xoshiro::SplitMix64;

pub fn seeded(seed: u64) -> SplitMix64 {
    SplitMix64::seed_from_u64(seed)
}

/// Uniform integer in `0..bound`. `bound` must be positive.
pub fn below(rng: &mut SplitMix64, bound: u64) -> u64 {
    assert!(bound > 0, "empty range");
    let threshold = bound.wrapping_neg() % bound;
    loop {
        let m = rng.next_u64() as u128 * bound as u128;
        if (m as u64) >= threshold {
            return (m >> 64) as u64;
        }
    }
}

/// Uniform integer in `lo..=hi`.
pub fn between(rng: &mut SplitMix64, lo: i64, hi: i64) -> i64 {
    assert!(lo <= hi);
    let span = (hi as i128 - lo as i128 + 1) as u64;
    lo + below(rng, span) as i64
}

/// In-place uniform shuffle: for `i` from `len-1` down to 1, swap `i` with
/// `below(i + 1)`.
pub fn shuffle<T>(rng: &mut SplitMix64, items: &mut [T]) {
    for i in (1..items.len()).rev() {
        let j = below(rng, i as u64 + 1) as usize;
        items.swap(i, j);
    }
}
