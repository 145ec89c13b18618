//! Unions of order-`n` intervals `[i/n, (i+1)/n]`.

use alloc::vec::Vec;

use super::{Concept, IntervalUnion};
use crate::error::{arg, Error, Result};
use crate::math;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrderIntervalClass {
    n: u64,
}

#[inline]
fn cell(i: u64, n: u64) -> (f64, f64) {
    (i as f64 / n as f64, (i + 1) as f64 / n as f64)
}

impl OrderIntervalClass {
    pub const DEFAULT_CAP: u128 = 10_000_000;

    pub fn new(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(arg("order must be at least 1"));
        }
        Ok(OrderIntervalClass { n })
    }

    pub fn order(&self) -> u64 {
        self.n
    }

    /// Largest number of intervals a member may use (`k² < n`).
    pub fn max_intervals(&self) -> u64 {
        math::max_strictly_below_sqrt(self.n)
    }

    /// `Σ_{k² < n} C(n, k)`.
    pub fn count(&self) -> u128 {
        (0..=self.max_intervals().min(self.n)).map(|k| math::binomial(self.n, k)).sum()
    }

    /// The union of the given cells (indices `< n`, strictly increasing).
    pub fn union_of(&self, cells: &[u64]) -> Result<Concept> {
        if cells.windows(2).any(|w| w[0] >= w[1]) || cells.iter().any(|&c| c >= self.n) {
            return Err(arg("cells must be strictly increasing and below the order"));
        }
        Ok(Concept::Intervals(IntervalUnion {
            intervals: cells.iter().map(|&c| cell(c, self.n)).collect(),
        }))
    }

    /// Streams every member, smallest unions first, each size in
    /// lexicographic order of cell indices.
    pub fn enumerate(&self, cap: u128) -> Result<OrderClassIter> {
        let count = self.count();
        if count > cap {
            return Err(Error::EnumerationCap { count, cap });
        }
        Ok(OrderClassIter { n: self.n, k_max: self.max_intervals().min(self.n), combo: Some(Vec::new()) })
    }

    /// Structural membership: fewer than `√n` distinct order-`n` cells.
    pub fn contains(&self, concept: &Concept) -> bool {
        let Concept::Intervals(u) = concept else {
            return false;
        };
        let k = u.intervals().len() as u64;
        if (k as u128) * (k as u128) >= self.n as u128 {
            return false;
        }
        let mut prev: Option<u64> = None;
        for &(lo, hi) in u.intervals() {
            let i = math::round(lo * self.n as f64);
            if i < 0.0 || i >= self.n as f64 {
                return false;
            }
            let i = i as u64;
            if cell(i, self.n) != (lo, hi) || prev.is_some_and(|p| p >= i) {
                return false;
            }
            prev = Some(i);
        }
        true
    }
}

#[derive(Debug, Clone)]
pub struct OrderClassIter {
    n: u64,
    k_max: u64,
    combo: Option<Vec<u64>>,
}

impl OrderClassIter {
    fn advance(&mut self) {
        let Some(combo) = self.combo.as_mut() else { return };
        let k = combo.len();
        let n = self.n as usize;
        // rightmost position that can still move
        let mut i = k;
        while i > 0 {
            i -= 1;
            if (combo[i] as usize) < n - k + i {
                combo[i] += 1;
                for j in i + 1..k {
                    combo[j] = combo[j - 1] + 1;
                }
                return;
            }
        }
        let next = k as u64 + 1;
        self.combo = (next <= self.k_max).then(|| (0..next).collect());
    }
}

impl Iterator for OrderClassIter {
    type Item = Concept;

    fn next(&mut self) -> Option<Concept> {
        let combo = self.combo.as_ref()?;
        let item = Concept::Intervals(IntervalUnion {
            intervals: combo.iter().map(|&c| cell(c, self.n)).collect(),
        });
        self.advance();
        Some(item)
    }
}

/// The smallest order `n > k²` with `1/n` below every half-gap between
/// neighbouring points, and the union of the order-`n` cells covering them.
///
/// A point on a grid boundary takes the cell whose left end it is.
pub fn isolate_points(points: &[f64]) -> Result<(u64, Concept)> {
    let mut pts = points.to_vec();
    pts.sort_by(f64::total_cmp);
    if pts.iter().any(|p| !(0.0..=1.0).contains(p)) {
        return Err(arg("points must lie in [0, 1]"));
    }
    if pts.windows(2).any(|w| w[0] == w[1]) {
        return Err(arg("points must be pairwise distinct"));
    }
    let k = pts.len() as u64;
    if k == 0 {
        return Ok((1, Concept::Intervals(IntervalUnion::empty())));
    }
    let half_gap = pts
        .windows(2)
        .map(|w| 0.5 * (w[1] - w[0]))
        .fold(f64::INFINITY, f64::min);
    let fits = |n: u64| 1.0 / (n as f64) < half_gap;
    let floor_n = k * k + 1;
    let mut n = if half_gap.is_finite() { floor_n.max((1.0 / half_gap) as u64) } else { floor_n };
    while n > floor_n && fits(n - 1) {
        n -= 1;
    }
    while !fits(n) {
        n += 1;
    }
    let nf = n as f64;
    let mut cells: Vec<u64> = Vec::with_capacity(pts.len());
    for &p in &pts {
        let mut i = (math::floor(p * nf) as u64).min(n - 1);
        while i > 0 && (i as f64) / nf > p {
            i -= 1;
        }
        while i + 1 < n && ((i + 1) as f64) / nf < p {
            i += 1;
        }
        cells.push(i);
    }
    cells.dedup();
    let class = OrderIntervalClass::new(n)?;
    let concept = class.union_of(&cells)?;
    if !pts.iter().all(|&p| concept.member(p)) {
        return Err(Error::Invariant("isolating union misses a point".into()));
    }
    Ok((n, concept))
}
