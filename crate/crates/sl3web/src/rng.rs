//! Reproducible random streams.
//!
//! Every consumer that needs randomness asks for a stream by `(seed, index)`.
//! The seed picks a ChaCha8 key and the index picks one of its 2^64
//! independent streams, so sample `i` of a census sees the same bits no matter
//! which worker thread draws it.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The generator used throughout the crate.
pub type StreamRng = ChaCha8Rng;

/// Returns the generator for stream `index` under `seed`.
pub fn stream_rng(seed: u64, index: u64) -> StreamRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn draw(seed: u64, index: u64) -> Vec<u64> {
        let mut rng = stream_rng(seed, index);
        (0..4).map(|_| rng.gen()).collect()
    }

    #[test]
    fn streams_are_reproducible_and_distinct() {
        assert_eq!(draw(7, 3), draw(7, 3));
        assert_ne!(draw(7, 3), draw(7, 4));
        assert_ne!(draw(7, 3), draw(8, 3));
    }
}
