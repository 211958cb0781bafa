use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Stream roles within one trial.
pub const GUE_STREAM: u64 = 0;
pub const WORD_STREAM: u64 = 1;
/// Haar unitary `i` (zero-based) draws from stream `HAAR_STREAM_BASE + i`.
pub const HAAR_STREAM_BASE: u64 = 16;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Independent generator for one `(seed, size, trial, object)` cell. The
/// mapping is fixed, so any schedule of trials sees the same numbers.
pub fn stream_rng(seed: u64, size: usize, trial: usize, object: u64) -> ChaCha8Rng {
    let mut h = splitmix64(seed);
    for part in [size as u64, trial as u64, object] {
        h = splitmix64(h ^ part);
    }
    ChaCha8Rng::seed_from_u64(h)
}
