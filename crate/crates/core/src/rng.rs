//! Counter-based randomness shared by the sensing and channel models.
//!
//! Every random draw is keyed by (seed, domain, stream words) instead of
//! consuming a shared generator stream, so draws are reproducible no matter
//! in which order — or on how many threads — they are generated.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Domain tags keep draws for different purposes statistically independent
/// even when their stream words collide.
#[derive(Debug, Clone, Copy)]
pub(crate) enum Domain {
    Lidar = 1,
    Odometry = 2,
    Channel = 3,
}

/// SplitMix64 finalizer; the standard 64-bit avalanche mix.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Collapse (seed, domain, words) into one well-mixed 64-bit generator key.
fn key(seed: u64, domain: Domain, words: &[u64]) -> u64 {
    let mut acc = splitmix64(seed ^ (domain as u64).wrapping_mul(0xa076_1d64_78bd_642f));
    for &w in words {
        acc = splitmix64(acc ^ w);
    }
    acc
}

/// A short-lived generator dedicated to one keyed draw site.
pub(crate) fn stream(seed: u64, domain: Domain, words: &[u64]) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(key(seed, domain, words))
}
