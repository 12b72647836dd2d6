//! Reproducible random streams.
//!
//! One 64-bit root seed expands into independent ChaCha8 streams indexed by
//! a 64-bit stream id. Work split into chunks draws chunk `i` from stream
//! `i`, so results do not depend on how chunks are scheduled across threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type StreamRng = ChaCha8Rng;

/// The `stream`-th independent generator derived from `seed`.
pub fn stream(seed: u64, stream: u64) -> StreamRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
