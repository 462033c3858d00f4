//! MinHash signatures over hashed shingles.
//!
//! Hash family: `h_i(x) = (a_i * x + b_i) mod (2^61 - 1)` with coefficients
//! drawn from a seeded ChaCha stream.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_NUM_HASHES: usize = 128;

const MERSENNE_61: u64 = (1 << 61) - 1;

#[inline]
fn mod_mersenne(x: u128) -> u64 {
    let lo = (x as u64) & MERSENNE_61;
    let hi = (x >> 61) as u64;
    let mut r = lo + (hi & MERSENNE_61) + (hi >> 61);
    while r >= MERSENNE_61 {
        r -= MERSENNE_61;
    }
    r
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature(pub Vec<u64>);

impl Signature {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Fraction of agreeing positions.
    pub fn estimate_jaccard(&self, other: &Signature) -> f64 {
        assert_eq!(self.len(), other.len(), "signatures from different hashers");
        if self.is_empty() {
            return 0.0;
        }
        let same = self.0.iter().zip(&other.0).filter(|(a, b)| a == b).count();
        same as f64 / self.len() as f64
    }
}

#[derive(Debug, Clone)]
pub struct MinHasher {
    coeffs: Vec<(u64, u64)>,
}

impl MinHasher {
    pub fn new(num_hashes: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let coeffs = (0..num_hashes)
            .map(|_| (rng.random_range(1..MERSENNE_61), rng.random_range(0..MERSENNE_61)))
            .collect();
        Self { coeffs }
    }

    pub fn num_hashes(&self) -> usize {
        self.coeffs.len()
    }

    /// Signature of a set of shingle hashes.
    pub fn signature(&self, shingles: &[u64]) -> Result<Signature> {
        if shingles.is_empty() {
            return Err(Error::EmptyText);
        }
        let mut mins = vec![u64::MAX; self.coeffs.len()];
        for &s in shingles {
            let x = (s % MERSENNE_61) as u128;
            for (m, &(a, b)) in mins.iter_mut().zip(&self.coeffs) {
                let h = mod_mersenne(a as u128 * x + b as u128);
                if h < *m {
                    *m = h;
                }
            }
        }
        Ok(Signature(mins))
    }
}

/// Convenience wrapper: one-off signature of `shingles` with `m` hash functions.
pub fn minhash_signature(shingles: &[u64], m: usize, seed: u64) -> Result<Signature> {
    MinHasher::new(m, seed).signature(shingles)
}
