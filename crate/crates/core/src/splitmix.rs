//! SplitMix64 mixing primitives.
//!
//! The simulator and test utilities need a seeded generator with random
//! access (any sample index can be evaluated independently, so work can be
//! split across threads without changing the output). SplitMix64 evaluated
//! at `state = seed + (k+1) * GOLDEN` is exactly such a counter-based
//! generator. This pseudo-randomness only drives simulations and test
//! fixtures; it is not the certified output randomness.

pub(crate) const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 output finalizer.
#[inline]
pub(crate) fn mix(state: u64) -> u64 {
    let mut z = state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// The k-th output (0-based) of the SplitMix64 stream with initial state
/// `seed`, identical to advancing a sequential SplitMix64 k+1 times.
#[inline]
pub(crate) fn nth(seed: u64, k: u64) -> u64 {
    mix(seed.wrapping_add(GOLDEN.wrapping_mul(k.wrapping_add(1))))
}

/// Uniform double in [0, 1) from the top 53 bits of a word.
#[inline]
pub(crate) fn unit_f64(word: u64) -> f64 {
    (word >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Uniform double in (0, 1]; safe as a logarithm argument.
#[inline]
pub(crate) fn unit_f64_open(word: u64) -> f64 {
    ((word >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
}
