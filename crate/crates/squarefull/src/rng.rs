//! Counter-based deterministic random numbers (SplitMix64 stream).
//!
//! Sample i of a stream is a pure function of (seed, i), so Monte Carlo
//! estimates are reproducible across platforms and thread counts.

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// The i-th 64-bit output of the SplitMix64 stream seeded with `seed`.
#[inline]
pub fn splitmix64(seed: u64, i: u64) -> u64 {
    let mut z = seed.wrapping_add(i.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// The i-th sample of the stream mapped uniformly into [0, 1).
#[inline]
pub fn uniform_f64(seed: u64, i: u64) -> f64 {
    (splitmix64(seed, i) >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}
