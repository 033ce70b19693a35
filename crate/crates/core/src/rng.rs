//! Seeded randomness.
//!
//! Every random draw in the crate comes from [`ChaCha8Rng`] seeded with a
//! 64-bit value. Independent streams (graph, cascade, distortion, per-trial)
//! are obtained by mixing a base seed with a stream tag through SplitMix64.

use rand::SeedableRng;
pub use rand_chacha::ChaCha8Rng;

/// Builds the crate's generator from a 64-bit seed.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// SplitMix64 finalizer.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives the seed of sub-stream `tag` from `base`.
pub fn derive_seed(base: u64, tag: u64) -> u64 {
    splitmix64(splitmix64(base) ^ tag.wrapping_mul(0xD1B5_4A32_D192_ED03))
}
