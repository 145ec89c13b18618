//! Large `2ε`-separated families in the Hamming cube.
//!
//! The cube `{0,1}^n` with normalized Hamming distance contains at least
//! `exp(2(1/2 − 2ε)²n)` points pairwise `2ε` apart (`0 < ε ≤ 1/4`). We build
//! such a family greedily from fair-coin candidates, starting from the zero
//! word, restarting if a pass stalls.

use alloc::vec::Vec;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{arg, Error, Result};
use crate::math;
use crate::stream;

const MAX_BOUND: f64 = 1e6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HammingPacking {
    pub n: usize,
    pub eps: f64,
    /// Required count `⌈exp(2(1/2 − 2ε)²n)⌉`.
    pub bound: u64,
    /// Smallest bit distance `d` with `d/n ≥ 2ε`.
    pub min_distance: u32,
    /// Codewords as little-endian 64-bit words.
    pub codewords: Vec<Vec<u64>>,
}

impl HammingPacking {
    pub fn distance(a: &[u64], b: &[u64]) -> u32 {
        a.iter().zip(b).map(|(x, y)| (x ^ y).count_ones()).sum()
    }

    pub fn bit(word: &[u64], i: usize) -> bool {
        (word[i / 64] >> (i % 64)) & 1 == 1
    }

    /// Bit-exact check of count and pairwise distance.
    pub fn verify(&self) -> bool {
        let words = self.n.div_ceil(64);
        if (self.codewords.len() as u64) < self.bound {
            return false;
        }
        if self.codewords.iter().any(|c| c.len() != words) {
            return false;
        }
        let cw = &self.codewords;
        (0..cw.len()).all(|i| {
            (i + 1..cw.len()).all(|j| {
                let d = Self::distance(&cw[i], &cw[j]);
                d >= self.min_distance && d as f64 / self.n as f64 >= 2.0 * self.eps
            })
        })
    }
}

pub fn hamming_packing_bound(n: usize, eps: f64) -> f64 {
    math::ceil_snapped(math::exp(2.0 * (0.5 - 2.0 * eps) * (0.5 - 2.0 * eps) * n as f64))
}

pub fn hamming_packing(n: usize, eps: f64, seed: u64) -> Result<HammingPacking> {
    if n == 0 {
        return Err(arg("dimension must be positive"));
    }
    if !(eps > 0.0 && eps <= 0.25) {
        return Err(arg("eps must lie in (0, 1/4]"));
    }
    let bound_f = hamming_packing_bound(n, eps);
    if bound_f > MAX_BOUND {
        return Err(arg("packing bound too large to materialize"));
    }
    let bound = bound_f as u64;
    let min_distance = (0..=n as u32)
        .find(|&d| d as f64 / n as f64 >= 2.0 * eps)
        .ok_or_else(|| arg("separation exceeds the dimension"))?;
    let words = n.div_ceil(64);
    let top_mask = if n.is_multiple_of(64) { u64::MAX } else { (1u64 << (n % 64)) - 1 };
    let restarts = 50 * bound;
    let tries_per_pass = 64 * bound + 1024;
    let mut best = 0usize;
    for restart in 0..restarts {
        let mut rng = stream::rng(stream::derive(seed, restart));
        let mut codewords: Vec<Vec<u64>> = alloc::vec![alloc::vec![0u64; words]];
        let mut tries = 0;
        while (codewords.len() as u64) < bound && tries < tries_per_pass {
            tries += 1;
            let mut cand: Vec<u64> = (0..words).map(|_| rng.random::<u64>()).collect();
            cand[words - 1] &= top_mask;
            if codewords.iter().all(|c| HammingPacking::distance(c, &cand) >= min_distance) {
                codewords.push(cand);
            }
        }
        best = best.max(codewords.len());
        if codewords.len() as u64 >= bound {
            let packing = HammingPacking { n, eps, bound, min_distance, codewords };
            if !packing.verify() {
                return Err(Error::Invariant("hamming packing failed verification".into()));
            }
            return Ok(packing);
        }
    }
    Err(Error::RetryBudget { best, required: bound as usize })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degenerate_quarter() {
        let p = hamming_packing(37, 0.25, 0).unwrap();
        assert_eq!(p.bound, 1);
        assert_eq!(p.codewords, [alloc::vec![0u64]]);
    }

    #[test]
    fn single_bit() {
        let p = hamming_packing(1, 0.1, 0).unwrap();
        assert_eq!(p.bound, 2);
        assert_eq!(p.codewords.len(), 2);
        assert_eq!(HammingPacking::distance(&p.codewords[0], &p.codewords[1]), 1);
    }

    #[test]
    fn two_hundred_bits() {
        let p = hamming_packing(200, 0.21, 3).unwrap();
        assert_eq!(p.bound, 13);
        assert_eq!(p.min_distance, 84);
        assert!(p.verify());
    }

    #[test]
    fn argument_checks() {
        assert!(hamming_packing(0, 0.1, 0).is_err());
        assert!(hamming_packing(4, 0.3, 0).is_err());
        assert!(hamming_packing(4, 0.0, 0).is_err());
        assert!(hamming_packing(100_000, 0.01, 0).is_err());
        let p = hamming_packing(2, 0.2, 0).unwrap();
        assert_eq!(p.min_distance, 1);
        assert!(p.verify());
    }
}
