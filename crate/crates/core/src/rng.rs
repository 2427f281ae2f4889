//! Seeded, portable randomness with stable child-stream derivation.
//!
//! Every stochastic routine in this crate takes an explicit [`Rng`]. Replicated
//! experiments derive one child stream per replication from the master seed,
//! so results do not depend on execution order or thread count.

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// splitmix64 finalizer.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Collapse a master seed plus context words (replication index, sample size,
/// ...) into one child seed. The accumulator is rotated before each absorb,
/// so reordering `parts` or swapping a part with the master changes the
/// result.
pub fn derive_seed(master: u64, parts: &[u64]) -> u64 {
    let mut h = mix(master);
    for &p in parts {
        h = mix(h.rotate_left(31) ^ mix(p));
    }
    h
}

/// Deterministic pseudorandom stream: same seed, same stream, every platform.
#[derive(Debug, Clone)]
pub struct Rng(ChaCha8Rng);

impl Rng {
    pub fn from_seed(seed: u64) -> Self {
        Self(ChaCha8Rng::seed_from_u64(seed))
    }

    /// Child stream addressed by `parts` under `master`.
    pub fn derive(master: u64, parts: &[u64]) -> Self {
        Self::from_seed(derive_seed(master, parts))
    }

    /// Uniform draw in `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.0.gen()
    }

    /// Uniform integer in `[0, n)`.
    ///
    /// # Panics
    /// Panics if `n == 0`.
    pub fn below(&mut self, n: usize) -> usize {
        self.0.gen_range(0..n)
    }
}
