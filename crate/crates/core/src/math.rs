//! Float helpers over `libm` plus a few integer utilities.

use alloc::vec::Vec;

pub const PI: f64 = core::f64::consts::PI;
pub const FRAC_PI_2: f64 = core::f64::consts::FRAC_PI_2;
pub const TAU: f64 = core::f64::consts::TAU;

#[inline]
pub fn cos(x: f64) -> f64 {
    libm::cos(x)
}

#[inline]
pub fn atan(x: f64) -> f64 {
    libm::atan(x)
}

#[inline]
pub fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[inline]
pub fn log2(x: f64) -> f64 {
    libm::log2(x)
}

#[inline]
pub fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[inline]
pub fn floor(x: f64) -> f64 {
    libm::floor(x)
}

#[inline]
pub fn ceil(x: f64) -> f64 {
    libm::ceil(x)
}

#[inline]
pub fn round(x: f64) -> f64 {
    libm::round(x)
}

#[inline]
pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub fn pow(x: f64, y: f64) -> f64 {
    libm::pow(x, y)
}

#[inline]
pub fn fabs(x: f64) -> f64 {
    libm::fabs(x)
}

/// Ceiling that treats values within `1e-9` (relative) of an integer as that
/// integer, so `25.000000000000004` becomes 25 rather than 26.
pub fn ceil_snapped(x: f64) -> f64 {
    let r = round(x);
    if fabs(x - r) <= 1e-9 * fabs(r).max(1.0) {
        r
    } else {
        ceil(x)
    }
}

/// Largest `k` with `k² < n`, in exact integer arithmetic.
pub fn max_strictly_below_sqrt(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut k = sqrt(n as f64) as u64;
    while k > 0 && (k as u128) * (k as u128) >= n as u128 {
        k -= 1;
    }
    while ((k + 1) as u128) * ((k + 1) as u128) < n as u128 {
        k += 1;
    }
    k
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// The first `count` primes.
pub fn primes(count: usize) -> Vec<u64> {
    if count == 0 {
        return Vec::new();
    }
    // p_n < n (ln n + ln ln n) for n ≥ 6
    let n = count as f64;
    let mut limit = if count < 6 { 15 } else { (n * (ln(n) + ln(ln(n)))) as usize + 1 };
    loop {
        let mut sieve = alloc::vec![true; limit + 1];
        sieve[0] = false;
        if limit >= 1 {
            sieve[1] = false;
        }
        let mut i = 2;
        while i * i <= limit {
            if sieve[i] {
                let mut j = i * i;
                while j <= limit {
                    sieve[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        let found: Vec<u64> = sieve
            .iter()
            .enumerate()
            .filter(|(_, &p)| p)
            .map(|(i, _)| i as u64)
            .take(count)
            .collect();
        if found.len() == count {
            return found;
        }
        limit *= 2;
    }
}

/// Wilson score interval for `successes` out of `trials` at z = 1.96.
pub fn wilson_interval(successes: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let z = 1.959_963_984_540_054;
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = z * sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

/// Median of a slice (average of the middle pair for even lengths).
pub fn median(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut v: Vec<f64> = values.to_vec();
    v.sort_by(|a, b| a.total_cmp(b));
    let m = v.len() / 2;
    Some(if v.len() % 2 == 1 { v[m] } else { 0.5 * (v[m - 1] + v[m]) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strict_sqrt_bound() {
        assert_eq!(max_strictly_below_sqrt(1), 0);
        assert_eq!(max_strictly_below_sqrt(4), 1);
        assert_eq!(max_strictly_below_sqrt(5), 2);
        assert_eq!(max_strictly_below_sqrt(9), 2);
        assert_eq!(max_strictly_below_sqrt(10), 3);
        assert_eq!(max_strictly_below_sqrt(2501), 50);
        for n in 1..5000u64 {
            let k = max_strictly_below_sqrt(n);
            assert!(k * k < n && (k + 1) * (k + 1) >= n);
        }
    }

    #[test]
    fn first_primes() {
        assert_eq!(primes(6), [2, 3, 5, 7, 11, 13]);
        let p = primes(1000);
        assert_eq!(p[999], 7919);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(9, 2), 36);
        assert_eq!(binomial(64, 7), 621_216_192);
        assert_eq!(binomial(3, 5), 0);
    }

    #[test]
    fn snapped_ceiling() {
        assert_eq!(ceil_snapped(25.000000000000004), 25.0);
        assert_eq!(ceil_snapped(25.1), 26.0);
        assert_eq!(ceil_snapped(24.9999999999), 25.0);
    }

    #[test]
    fn wilson_contains_point_estimate() {
        let (lo, hi) = wilson_interval(40, 400);
        assert!(lo < 0.1 && 0.1 < hi);
        assert_eq!(wilson_interval(0, 0), (0.0, 1.0));
    }
}
