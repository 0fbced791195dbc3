use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::Subspace;
use crate::radical::DEFAULT_BRUTE_CAP;

/// Settings and the seeded random stream shared by randomized operations.
#[derive(Clone, Debug)]
pub struct Ctx {
    pub seed: u64,
    pub brute_cap: u128,
    pub rng: ChaCha8Rng,
}

impl Ctx {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            brute_cap: DEFAULT_BRUTE_CAP,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn with_brute_cap(mut self, cap: u128) -> Self {
        self.brute_cap = cap;
        self
    }

    /// Uniform random vector of `s`.
    pub fn random_in(&mut self, s: &Subspace) -> Vec<u32> {
        let p = s.field().p();
        let coeffs: Vec<u32> = (0..s.dim()).map(|_| self.rng.gen_range(0..p)).collect();
        s.combine(&coeffs)
    }

    pub fn random_scalar(&mut self, p: u32) -> u32 {
        self.rng.gen_range(0..p)
    }
}

impl Default for Ctx {
    fn default() -> Self {
        Self::new(0)
    }
}
