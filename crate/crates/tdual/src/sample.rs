//! Seeded sampling of bounded-height scalars.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scalars::{int, rat, AffChar, Circle, Int, IntVec, Rat, RatVec, SkewIntMat};

pub const DEFAULT_SEED: u64 = 0x7d_2019;
pub const DEFAULT_BOUND: i64 = 7;

pub struct Sampler {
    rng: ChaCha8Rng,
    bound: i64,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed), bound: DEFAULT_BOUND }
    }
    pub fn with_bound(seed: u64, bound: i64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed), bound: bound.max(1) }
    }
    pub fn bound(&self) -> i64 {
        self.bound
    }
    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }
    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }
    pub fn coin(&mut self) -> bool {
        self.rng.gen()
    }
    pub fn small_int(&mut self) -> Int {
        let b = self.bound;
        int(self.range(-b, b))
    }
    pub fn rat(&mut self) -> Rat {
        let b = self.bound;
        let n = self.range(-b, b);
        let d = self.range(1, b);
        rat(n, d)
    }
    pub fn circle(&mut self) -> Circle {
        Circle::new(self.rat())
    }
    pub fn ratvec(&mut self, n: usize) -> RatVec {
        RatVec((0..n).map(|_| self.rat()).collect())
    }
    pub fn intvec(&mut self, n: usize) -> IntVec {
        IntVec((0..n).map(|_| self.small_int()).collect())
    }
    /// Entries bounded by 2 so products stay readable.
    pub fn skew(&mut self, n: usize) -> SkewIntMat {
        let lower: Vec<Int> = (0..n * n.saturating_sub(1) / 2).map(|_| int(self.range(-2, 2))).collect();
        SkewIntMat::from_lower(n, &lower)
    }
    pub fn affchar(&mut self, n: usize) -> AffChar {
        AffChar::new(self.circle(), self.intvec(n))
    }
}
