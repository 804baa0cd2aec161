//! Deterministic random streams.
//!
//! Every sampled quantity derives from one master seed. Work is cut into fixed
//! units (a chunk of [`SHOT_CHUNK`] shots, one band sample, one circuit) and unit
//! `k` draws from a ChaCha8 generator seeded with the master seed and switched to
//! stream `k`. Results therefore do not depend on how units are scheduled across
//! threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Shots per substream when sampling measurement outcomes.
pub const SHOT_CHUNK: usize = 1 << 14;

pub fn substream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Derive an independent master seed for a labelled sub-experiment (SplitMix64 finaliser).
pub fn derive_seed(seed: u64, tag: u64) -> u64 {
    let mut z = seed ^ tag.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Split `shots` into `(stream, len)` chunks.
pub(crate) fn shot_chunks(shots: usize) -> Vec<(u64, usize)> {
    (0..shots.div_ceil(SHOT_CHUNK))
        .map(|k| (k as u64, SHOT_CHUNK.min(shots - k * SHOT_CHUNK)))
        .collect()
}
