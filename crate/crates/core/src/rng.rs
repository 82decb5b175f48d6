//! Seedable uniform random streams.
//!
//! Every optimizer run owns exactly one [`RandomStream`]. Independent
//! replicates derive their seeds from a master seed with [`derive_seed`], so a
//! whole experiment is reproducible from one integer and the replicates can
//! run in parallel without sharing generator state.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// A deterministic stream of uniform variates backed by ChaCha8.
#[derive(Clone, Debug)]
pub struct RandomStream {
    seed: u64,
    rng: ChaCha8Rng,
}

impl RandomStream {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Next variate in `[0, 1)`.
    pub fn uniform01(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    /// Next variate in `[lo, hi)`, computed as `lo + (hi - lo) * uniform01()`.
    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> Result<f64> {
        if !lo.is_finite() || !hi.is_finite() || lo >= hi {
            return Err(Error::InvalidRange { lo, hi });
        }
        let value = lo + (hi - lo) * self.uniform01();
        // Rounding can land exactly on `hi` for very narrow intervals.
        Ok(if value >= hi { hi.next_down().max(lo) } else { value })
    }

    /// Uniform index in `0..n`. `n` must be positive.
    pub fn index(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        ((self.uniform01() * n as f64) as usize).min(n - 1)
    }

    /// Standard normal variate (Box-Muller, one draw pair per call).
    pub fn standard_normal(&mut self) -> f64 {
        let u1 = 1.0 - self.uniform01();
        let u2 = self.uniform01();
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    }
}

/// Decorrelated per-run seed for replicate `index` of an experiment.
///
/// SplitMix64 finalizer applied to the master seed and the index, so nearby
/// indices map to unrelated ChaCha keys.
pub fn derive_seed(master_seed: u64, index: u64) -> u64 {
    splitmix64(splitmix64(master_seed) ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
