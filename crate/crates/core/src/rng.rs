//! Seeded randomness shared by the generator, the solver and the pickers.
//!
//! The generator is Xoshiro256++ seeded through SplitMix64
//! (`Xoshiro256PlusPlus::seed_from_u64`). Every derived draw consumes exactly
//! one 64-bit output `x`:
//!
//! * `uniform_below(k)`: Lemire's multiply-shift, `(x * k) >> 64`, redrawing
//!   while the low half of the product is below `2^64 mod k`;
//! * `bernoulli(p)`: `x < p * 2^64` (always true for `p >= 1`);
//! * `coin()`: the top bit of `x`.
//!
//! Stream `s` of seed `b` is the generator seeded with
//! `mix64(b + mix64(s))`, so a (seed, stream) pair fixes all draws.

use rand_xoshiro::rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

#[derive(Debug, Clone)]
pub struct SolverRng {
    inner: Xoshiro256PlusPlus,
}

impl SolverRng {
    pub fn new(seed: u64) -> Self {
        Self::with_stream(seed, 0)
    }

    pub fn with_stream(seed: u64, stream: u64) -> Self {
        let key = mix64(seed.wrapping_add(mix64(stream)));
        SolverRng { inner: Xoshiro256PlusPlus::seed_from_u64(key) }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform integer in `0..bound`. `bound` must be positive.
    #[inline]
    pub fn uniform_below(&mut self, bound: usize) -> usize {
        debug_assert!(bound > 0);
        let k = bound as u64;
        let mut m = self.next_u64() as u128 * k as u128;
        if (m as u64) < k {
            let threshold = k.wrapping_neg() % k;
            while (m as u64) < threshold {
                m = self.next_u64() as u128 * k as u128;
            }
        }
        (m >> 64) as usize
    }

    #[inline]
    pub fn bernoulli(&mut self, p: f64) -> bool {
        let x = self.next_u64();
        if p >= 1.0 {
            return true;
        }
        // p in [0, 1): the product is below 2^64 and the cast truncates
        x < (p * 18_446_744_073_709_551_616.0) as u64
    }

    #[inline]
    pub fn coin(&mut self) -> bool {
        self.next_u64() >> 63 == 1
    }

    /// Fisher-Yates, walking indices from the top down: for `i = len-1 .. 1`,
    /// swap `i` with `uniform_below(i + 1)`.
    #[inline]
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.uniform_below(i + 1);
            items.swap(i, j);
        }
    }
}

/// SplitMix64 finalizer, used to derive well-spread seeds from structured
/// input (base seed, instance, run index).
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
