//! Deterministic random streams.
//!
//! Every source of randomness in a run is a `ChaCha8Rng` derived from the
//! root seed and a stream name. Streams are independent: consuming one never
//! advances another, so enabling a feature (say, VCC's VAE noise) does not
//! perturb batch sampling or augmentation in an otherwise-identical run.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Stream names used by the trainer. Kept in one place so checkpoints can
/// save and restore every stream position.
pub const STREAM_NAMES: &[&str] = &[
    "batch",
    "aug-weak",
    "aug-strong",
    "dropout",
    "mc-dropout",
    "vae-noise",
    "mixup",
    "coreset-random",
];

/// Derive the RNG for a named sub-stream of the given root seed.
pub fn stream(seed: u64, name: &str) -> ChaCha8Rng {
    let tag = fnv1a(name.as_bytes());
    let mut key = [0u8; 32];
    let mut x = seed;
    for (i, chunk) in key.chunks_exact_mut(8).enumerate() {
        x = splitmix64(x ^ tag.rotate_left(16 * i as u32));
        chunk.copy_from_slice(&x.to_le_bytes());
    }
    ChaCha8Rng::from_seed(key)
}

/// Restore a stream to a saved word position (see `ChaCha8Rng::get_word_pos`).
pub fn stream_at(seed: u64, name: &str, word_pos: u128) -> ChaCha8Rng {
    let mut rng = stream(seed, name);
    rng.set_word_pos(word_pos);
    rng
}

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100_0000_01b3);
    }
    h
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
