//! Deterministic random streams.
//!
//! Every stochastic operation draws from a ChaCha8 generator keyed by a
//! user seed and a stream number. ChaCha is counter based, so a stream is
//! fully determined by `(seed, stream)` and its output is identical on every
//! platform. Named streams are derived from a label with FNV-1a so that
//! independent parts of an experiment never share random numbers.

use rand::SeedableRng;
pub use rand_chacha::ChaCha8Rng;

/// The generator used throughout the crate.
pub type Rng = ChaCha8Rng;

/// Generator for stream `stream` of `seed`.
pub fn seeded(seed: u64, stream: u64) -> Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Generator for a named stream with a replicate index, e.g.
/// `named(seed, "prior/tracx2/songs", run)`.
pub fn named(seed: u64, label: &str, index: u64) -> Rng {
    seeded(seed, stream_id(label, index))
}

pub fn stream_id(label: &str, index: u64) -> u64 {
    const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const PRIME: u64 = 0x0000_0100_0000_01b3;
    let mut h = OFFSET;
    for b in label.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(PRIME);
    }
    h ^ index.wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::RngCore;

    // Reference vectors: first outputs of ChaCha8Rng::seed_from_u64(0) and of
    // stream 1. A change here means every stored experiment result changes.
    #[test]
    fn reference_vectors() {
        let mut rng = seeded(0, 0);
        let first: Vec<u64> = (0..3).map(|_| rng.next_u64()).collect();
        assert_eq!(first, REFERENCE_STREAM0);
        let mut rng = seeded(0, 1);
        let first: Vec<u64> = (0..3).map(|_| rng.next_u64()).collect();
        assert_eq!(first, REFERENCE_STREAM1);
    }

    const REFERENCE_STREAM0: [u64; 3] = [13080132717333068652, 8594738769458413623, 12896916468484187878];
    const REFERENCE_STREAM1: [u64; 3] = [13937087304575520531, 13615851043850391654, 10883527568275655943];

    #[test]
    fn streams_are_independent() {
        let mut a = named(7, "x", 0);
        let mut b = named(7, "x", 1);
        let mut c = named(7, "y", 0);
        let (va, vb, vc) = (a.next_u64(), b.next_u64(), c.next_u64());
        assert_ne!(va, vb);
        assert_ne!(va, vc);
    }

    #[test]
    fn named_is_repeatable() {
        let mut a = named(42, "init", 3);
        let mut b = named(42, "init", 3);
        for _ in 0..50 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }
}
