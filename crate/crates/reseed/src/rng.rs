//! Seed derivation for independent, schedule-free RNG streams.
//!
//! Every randomized routine takes an explicit `u64` seed and derives its own
//! stream from it, so results are reproducible bit-for-bit regardless of run
//! order or thread count.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

// Stream namespaces. Each (namespace, tags...) tuple owns one RNG stream.
pub(crate) const STREAM_INIT: u64 = 1;
pub(crate) const STREAM_PLANT: u64 = 2;
pub(crate) const STREAM_SBM: u64 = 3;
pub(crate) const STREAM_NOISE: u64 = 4;
pub(crate) const STREAM_COARSEN: u64 = 5;
pub(crate) const STREAM_LEVEL: u64 = 6;

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Mix a base seed with stream tags into one derived seed.
pub(crate) fn derive(base: u64, tags: &[u64]) -> u64 {
    let mut h = splitmix(base);
    for &t in tags {
        h = splitmix(h ^ t.wrapping_mul(GOLDEN));
    }
    h
}

/// RNG for the stream identified by `(base, tags...)`.
pub(crate) fn stream(base: u64, tags: &[u64]) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive(base, tags))
}
