//! Sample-complexity bounds from covers and packings.
//!
//! With an `ε/2`-cover of size `k`, minimal empirical risk learns to accuracy
//! `ε` and confidence `1 − δ` from `⌈(32/ε)·log₂(k/δ)⌉` samples. Conversely any
//! algorithm learning to accuracy `ε` needs at least `lg M(2ε)` samples,
//! where `M(2ε)` is the `2ε`-packing number.
//!
//! The upper bound's logarithm is taken base 2; it dominates the natural
//! logarithm, so the bound stays valid under either reading.

mod family;
mod hamming;

pub use family::{
    exact_packing, greedy_cover, greedy_packing, greedy_packing_limited, verify_cover,
    verify_packing, Cover, FiniteFamily, MaskFamily, Metric, PackingResult,
};
pub use hamming::{hamming_packing, hamming_packing_bound, HammingPacking};

use crate::error::{arg, Result};
use crate::math;

/// `⌈(32/ε)·log₂(k/δ)⌉`.
pub fn bi_upper(eps: f64, delta: f64, k: u64) -> Result<u64> {
    if k == 0 {
        return Err(arg("cover size must be at least 1"));
    }
    bi_upper_log2(eps, delta, math::log2(k as f64))
}

/// [`bi_upper`] for a cover of size `2^{log2_k}`, without forming it.
pub fn bi_upper_log2(eps: f64, delta: f64, log2_k: f64) -> Result<u64> {
    if !(eps > 0.0) {
        return Err(arg("accuracy must be positive"));
    }
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(arg("confidence parameter must lie in (0, 1]"));
    }
    if !(log2_k >= 0.0) {
        return Err(arg("cover size must be at least 1"));
    }
    let bits = log2_k - math::log2(delta);
    Ok(math::ceil_snapped((32.0 / eps) * bits).max(0.0) as u64)
}

/// `⌈log₂ s⌉` for `s ≥ 1`.
pub fn ceil_log2(s: u64) -> u64 {
    if s <= 1 {
        0
    } else {
        (u64::BITS - (s - 1).leading_zeros()) as u64
    }
}

/// `⌈lg |P|⌉` for a greedy `2ε`-packing `P`: a lower bound on the number of
/// samples any algorithm learning to accuracy `ε` needs.
pub fn bi_lower<M: Metric>(eps: f64, family: &M) -> Result<u64> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(arg("accuracy must lie in (0, 1)"));
    }
    let packing = greedy_packing(family, 2.0 * eps)?;
    Ok(ceil_log2(packing.selected.len() as u64))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn upper_examples() {
        assert_eq!(bi_upper(0.2, 0.1, 1).unwrap(), 532);
        assert_eq!(bi_upper(0.2, 1.0, 1).unwrap(), 0);
        assert!(bi_upper(0.2, 0.1, 0).is_err());
        assert!(bi_upper(0.2, 0.0, 4).is_err());
        for k in [1u64, 3, 10, 1000] {
            let a = bi_upper(0.3, 0.05, k).unwrap();
            let b = bi_upper(0.3, 0.05, 2 * k).unwrap();
            let step = math::ceil(32.0 / 0.3) as u64;
            assert!(b - a == step || b - a == step - 1, "{a} {b}");
        }
    }

    #[test]
    fn upper_from_log() {
        assert_eq!(bi_upper_log2(0.2, 0.1, 25.0).unwrap(), 4532);
        assert_eq!(bi_upper_log2(0.2, 1.0, 25.0).unwrap(), 4000);
    }

    #[test]
    fn log2_ceiling() {
        assert_eq!(ceil_log2(1), 0);
        assert_eq!(ceil_log2(2), 1);
        assert_eq!(ceil_log2(3), 2);
        assert_eq!(ceil_log2(512), 9);
        assert_eq!(ceil_log2(513), 10);
    }

    #[test]
    fn lower_examples() {
        let one = MaskFamily::all_labelings(&[1.0]).unwrap().restrict(&[0]).unwrap();
        assert_eq!(bi_lower(0.3, &one).unwrap(), 0);

        let ten = MaskFamily::all_labelings(&[0.1; 10]).unwrap();
        let bound = bi_lower(0.1, &ten).unwrap();
        let packing = greedy_packing(&ten, 0.2).unwrap();
        let volume_bound = math::exp(2.0 * 0.3f64.powi(2) * 10.0);
        assert!(packing.selected.len() as f64 >= volume_bound);
        assert_eq!(bound, ceil_log2(packing.selected.len() as u64));

        let mut prev = u64::MAX;
        for i in 1..20 {
            let b = bi_lower(0.025 * i as f64, &ten).unwrap();
            assert!(b <= prev);
            prev = b;
        }
    }
}
