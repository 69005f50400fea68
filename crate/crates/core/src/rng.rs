//! Keyed random streams.
//!
//! Every Monte Carlo draw is addressed by `(seed, replicate, chunk)` plus its
//! position inside the chunk. The ChaCha8 block counter supplies the position;
//! the 64-bit stream id carries `(replicate, chunk)`. Worker count therefore
//! never changes which numbers a chunk sees.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Upper bound on chunks per replicate so the stream id stays injective.
pub const MAX_CHUNKS: u64 = 1 << 32;

/// Stream id for one `(replicate, chunk)` cell.
pub fn stream_key(rep: u64, chunk: u64) -> u64 {
    debug_assert!(rep < (1 << 32) && chunk < MAX_CHUNKS);
    (rep << 32) | chunk
}

/// The generator owned by a single chunk.
pub fn chunk_rng(seed: u64, rep: u64, chunk: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream_key(rep, chunk));
    rng
}

/// A uniform on the open interval (0, 1): 53 random bits, offset by half an ulp.
#[inline]
pub fn open_unit<R: RngCore + ?Sized>(rng: &mut R) -> f64 {
    ((rng.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
}
