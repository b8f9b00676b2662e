//! Seeded randomness. Every random choice in the crate goes through ChaCha8;
//! independent trials use separate streams of one master seed.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Identifier written into reports so results can be reproduced elsewhere.
pub const RNG_ALGORITHM: &str = "chacha8-stream";

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Stream `index` of the ChaCha8 generator keyed by `master`.
pub fn stream(master: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(index);
    rng
}

/// A per-trial seed: the first word of stream `index`.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    stream(master, index).next_u64()
}
