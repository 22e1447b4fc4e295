//! Seedable, splittable deterministic randomness.
//!
//! Every randomized operation takes a `&mut WorkbenchRng` (or any [`Coins`]
//! implementation), so a run is fully determined by its seed.

use num_bigint::{BigUint, RandBigInt};
use num_integer::Integer as _;
use num_traits::{One, Zero};
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;

#[derive(Debug, Clone)]
pub struct WorkbenchRng {
    inner: ChaCha20Rng,
}

impl WorkbenchRng {
    pub fn from_seed(seed: u64) -> Self {
        Self {
            inner: ChaCha20Rng::seed_from_u64(seed),
        }
    }

    /// Derives an independent stream. The parent advances, so repeated
    /// splits yield distinct children.
    pub fn split(&mut self) -> Self {
        let mut seed = [0u8; 32];
        self.inner.fill_bytes(&mut seed);
        Self {
            inner: ChaCha20Rng::from_seed(seed),
        }
    }

    /// Uniform natural in `[lo, hi)`. Panics if the range is empty.
    pub fn range(&mut self, lo: &BigUint, hi: &BigUint) -> BigUint {
        self.inner.gen_biguint_range(lo, hi)
    }

    /// Uniform natural with at most `bits` bits.
    pub fn bits(&mut self, bits: u64) -> BigUint {
        self.inner.gen_biguint(bits)
    }

    pub fn bit(&mut self) -> bool {
        self.inner.gen()
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }
}

impl RngCore for WorkbenchRng {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.inner.fill_bytes(dest)
    }

    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> Result<(), rand::Error> {
        self.inner.try_fill_bytes(dest)
    }
}

/// A source of uniform coin flips.
///
/// Protocol rounds draw all their randomness through this trait so that the
/// same code can be run against a random generator or against an exhaustive
/// enumerator of the coin space (see `zkp::exact_distribution`).
pub trait Coins {
    /// Uniform value in `[0, bound)`; `bound >= 1`.
    fn below(&mut self, bound: u64) -> u64;

    /// Uniform natural in `[0, bound)`; `bound >= 1`.
    fn below_natural(&mut self, bound: &BigUint) -> BigUint;

    /// Uniform element of the unit group `Z_n^*`.
    fn unit_mod(&mut self, n: &BigUint) -> BigUint {
        loop {
            let r = self.below_natural(n);
            if !r.is_zero() && r.gcd(n).is_one() {
                return r;
            }
        }
    }

    fn coin(&mut self) -> bool {
        self.below(2) == 1
    }
}

impl Coins for WorkbenchRng {
    fn below(&mut self, bound: u64) -> u64 {
        assert!(bound >= 1, "empty coin range");
        self.inner.gen_range(0..bound)
    }

    fn below_natural(&mut self, bound: &BigUint) -> BigUint {
        assert!(!bound.is_zero(), "empty coin range");
        self.inner.gen_biguint_below(bound)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_stream() {
        let mut a = WorkbenchRng::from_seed(7);
        let mut b = WorkbenchRng::from_seed(7);
        for _ in 0..16 {
            assert_eq!(RngCore::next_u64(&mut a), RngCore::next_u64(&mut b));
        }
    }

    #[test]
    fn splits_are_independent_of_each_other() {
        let mut parent = WorkbenchRng::from_seed(1);
        let mut c1 = parent.split();
        let mut c2 = parent.split();
        assert_ne!(RngCore::next_u64(&mut c1), RngCore::next_u64(&mut c2));
    }

    #[test]
    fn unit_mod_is_coprime() {
        let mut rng = WorkbenchRng::from_seed(3);
        let n = BigUint::from(15u32);
        for _ in 0..100 {
            let r = rng.unit_mod(&n);
            assert!(r.gcd(&n).is_one());
            assert!(r < n);
        }
    }
}
