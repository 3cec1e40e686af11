//! Seeded, splittable random streams.
//!
//! Every stochastic operation in this crate takes an explicit [`SimRng`], so
//! any run is reproducible from a single `u64` seed. Independent sub-streams
//! are derived with [`SimRng::derive`]; the derivation is a pure function of
//! the parent seed and a tag, which makes parallel work (Monte-Carlo chunks,
//! per-realization training runs, per-grid-point experiments) deterministic
//! regardless of scheduling.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// SplitMix64 step; used only to mix seeds for derived streams.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A seeded random stream backed by ChaCha8.
#[derive(Debug, Clone)]
pub struct SimRng {
    seed: u64,
    rng: ChaCha8Rng,
}

impl SimRng {
    /// Stream rooted at `seed`.
    pub fn from_seed(seed: u64) -> Self {
        SimRng {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// The seed this stream was created from.
    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// An independent child stream identified by `tag`.
    ///
    /// Children depend only on `(seed, tag)`, never on how much of the
    /// parent stream has been consumed.
    pub fn derive(&self, tag: u64) -> SimRng {
        SimRng::from_seed(splitmix64(self.seed ^ splitmix64(tag.wrapping_add(1))))
    }

    /// Standard normal draw.
    pub fn normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    /// Uniform draw from `[lo, hi)`.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.gen_range(lo..hi)
    }

    /// Uniform index in `[0, n)`.
    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }
}

impl RngCore for SimRng {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.rng.fill_bytes(dest)
    }

    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> std::result::Result<(), rand::Error> {
        self.rng.try_fill_bytes(dest)
    }
}
