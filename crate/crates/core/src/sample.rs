//! Seeded random test points with bounded height.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact::GaussianRational;

pub const DEFAULT_HEIGHT: i64 = 7;

/// A deterministic source of rational points: numerators in `[-h, h]`,
/// denominators in `[1, h]`.
pub struct Sampler {
    rng: ChaCha8Rng,
    height: i64,
}

impl Sampler {
    pub fn new(seed: u64, height: i64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            height: height.max(1),
        }
    }

    pub fn rational(&mut self) -> BigRational {
        let p = self.rng.random_range(-self.height..=self.height);
        let q = self.rng.random_range(1..=self.height);
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    pub fn nonzero_rational(&mut self) -> BigRational {
        loop {
            let r = self.rational();
            if r != BigRational::from_integer(0.into()) {
                return r;
            }
        }
    }

    pub fn real(&mut self) -> GaussianRational {
        GaussianRational::real(self.rational())
    }

    pub fn real_vector(&mut self, n: usize) -> Vec<GaussianRational> {
        (0..n).map(|_| self.real()).collect()
    }

    pub fn gaussian(&mut self) -> GaussianRational {
        GaussianRational::new(self.rational(), self.rational())
    }

    pub fn gaussian_vector(&mut self, n: usize) -> Vec<GaussianRational> {
        (0..n).map(|_| self.gaussian()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_points() {
        let a: Vec<_> = {
            let mut s = Sampler::new(11, 7);
            (0..20).map(|_| s.gaussian()).collect()
        };
        let mut s = Sampler::new(11, 7);
        let b: Vec<_> = (0..20).map(|_| s.gaussian()).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn height_is_respected() {
        let mut s = Sampler::new(3, 2);
        for _ in 0..100 {
            let r = s.rational();
            assert!(r.numer().magnitude() <= &2u32.into() && r.denom() <= &BigInt::from(2));
        }
    }
}
