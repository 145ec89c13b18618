//! The middle-thirds Cantor set: level intervals, exact ternary arithmetic on
//! doubles, and the distribution function of its Haar measure.

use alloc::vec::Vec;

/// Ternary levels handled exactly: `3^47 · 2^53 < 2^128`.
pub const MAX_EXACT_LEVEL: u32 = 47;

const CDF_LEVEL: u32 = 40;
const SNAP_LEVEL: u32 = 20;

/// A closed level-`level` interval `[left/3^level, (left+1)/3^level]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LevelInterval {
    pub level: u32,
    pub left: u64,
}

impl LevelInterval {
    pub fn lo(&self) -> f64 {
        self.left as f64 / pow3(self.level) as f64
    }

    pub fn hi(&self) -> f64 {
        (self.left + 1) as f64 / pow3(self.level) as f64
    }

    /// Haar mass `2^{-level}`.
    pub fn mass(&self) -> f64 {
        libm::ldexp(1.0, -(self.level as i32))
    }
}

pub fn pow3(level: u32) -> u128 {
    3u128.pow(level)
}

/// Numerator (over `3^level`) of the left end of the `index`-th level
/// interval: the binary digits of `index` become ternary digits 0/2.
pub fn level_left(level: u32, index: u64) -> u64 {
    let mut left = 0u64;
    for bit in (0..level).rev() {
        left = left * 3 + 2 * ((index >> bit) & 1);
    }
    left
}

/// The `2^level` closed intervals of the level-`level` construction stage,
/// in increasing order.
pub fn level_intervals(level: u32) -> Vec<LevelInterval> {
    assert!(level < 40, "level {level} too deep to list");
    (0..1u64 << level)
        .map(|i| LevelInterval { level, left: level_left(level, i) })
        .collect()
}

/// Exact `(floor(x·3^level), x·3^level is an integer)` for `x ∈ [0, 1)`.
pub fn scaled_floor(x: f64, level: u32) -> (u128, bool) {
    debug_assert!((0.0..1.0).contains(&x));
    debug_assert!(level <= MAX_EXACT_LEVEL);
    if x == 0.0 {
        return (0, true);
    }
    let bits = x.to_bits();
    let biased = ((bits >> 52) & 0x7ff) as u32;
    let frac = bits & ((1u64 << 52) - 1);
    let (mantissa, shift) = if biased == 0 {
        (frac, 1074u32)
    } else {
        (frac | (1u64 << 52), 1075 - biased)
    };
    let product = mantissa as u128 * pow3(level);
    if shift >= 128 {
        (0, product == 0)
    } else {
        (product >> shift, product & ((1u128 << shift) - 1) == 0)
    }
}

/// Ternary digits of `numer` written with exactly `level` digits, most
/// significant first.
fn ternary_digits(mut numer: u128, level: u32) -> Vec<u8> {
    let mut digits = alloc::vec![0u8; level as usize];
    for slot in digits.iter_mut().rev() {
        *slot = (numer % 3) as u8;
        numer /= 3;
    }
    digits
}

fn cdf_from_digits(digits: &[u8]) -> f64 {
    let mut acc = 0.0;
    let mut weight = 0.5;
    for &d in digits {
        match d {
            1 => return acc + weight,
            2 => acc += weight,
            _ => {}
        }
        weight *= 0.5;
    }
    acc
}

/// If `x` lies within a few ulps of a ternary rational of small level,
/// returns that rational as `(numer, level)`.
fn snap_ternary(x: f64) -> Option<(u128, u32)> {
    for level in 1..=SNAP_LEVEL {
        let t = x * pow3(level) as f64;
        let a = libm::round(t);
        if libm::fabs(t - a) <= 4.0 * f64::EPSILON * t.max(1.0) {
            return Some((a as u128, level));
        }
    }
    None
}

/// Distribution function of the Haar measure on the Cantor set.
///
/// Doubles within a few ulps of a ternary rational `a/3^ℓ` (ℓ ≤ 20) are read
/// as that rational, so `cdf(1.0 / 3.0)` is exactly `0.5`; otherwise the
/// value is exact for the double itself up to `2^{-40}`.
pub fn cdf(x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    if let Some((numer, level)) = snap_ternary(x) {
        return cdf_from_digits(&ternary_digits(numer, level));
    }
    let (numer, _) = scaled_floor(x, CDF_LEVEL);
    cdf_from_digits(&ternary_digits(numer, CDF_LEVEL))
}

/// Haar mass of `[lo, hi]` (endpoints carry no mass).
pub fn interval_mass(lo: f64, hi: f64) -> f64 {
    if hi <= lo {
        return 0.0;
    }
    (cdf(hi) - cdf(lo)).max(0.0)
}

/// First `count` ternary digits of `x ∈ [0, 1)`, exact for the double.
pub fn digits(x: f64, count: u32) -> Vec<u8> {
    let (numer, _) = scaled_floor(x, count);
    ternary_digits(numer, count)
}
