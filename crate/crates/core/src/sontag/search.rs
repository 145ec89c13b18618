//! Exact sweep over weight space for a prescribed labeling.
//!
//! Each point `x` with label `l` contributes the periodic arc family
//! `{w : [cos(wx) ≥ 0] = l}`. The sweep keeps a position and repeatedly asks
//! every point for the arc containing it or, failing that, the start of its
//! next arc; the position jumps to the latest such start. When every point
//! contains the position the intersection is non-empty there, and the
//! position is the least feasible weight.

use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::arcs::boundary;
use super::{net_output, SontagParams};
use crate::error::{arg, Result};
use crate::exec::TrialRunner;
use crate::math;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchConfig {
    /// Lower end of the weight range searched.
    pub w_min: f64,
    /// Maximum number of arc lookups before giving up.
    pub budget: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { w_min: 0.0, budget: 100_000_000 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    Found,
    Infeasible,
    BudgetExceeded,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShatterOutcome {
    pub labels: Vec<u8>,
    pub witness_w: Option<f64>,
    pub status: SearchStatus,
    pub range_searched: [f64; 2],
    #[serde(skip)]
    pub breakpoints: u64,
}

/// A sweep position: `value`, or infinitesimally to its right.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Pos {
    value: f64,
    after: bool,
}

impl Pos {
    fn later(self, other: Pos) -> Pos {
        if other.value > self.value || (other.value == self.value && other.after && !self.after) {
            other
        } else {
            self
        }
    }
}

enum Located {
    /// Inside an arc ending at `(end, closed)`.
    Inside(f64, bool),
    /// Outside; the next arc starts at this position.
    Outside(Pos),
}

/// Arc lookup for one point. Boundaries `b_m = (2m+1)(π/2)/|x|` split the
/// weight axis into segments `s_m = (b_{m−1}, b_m)`; even segments (closed)
/// carry label 1, odd ones (open) label 0.
fn locate(a: f64, label: bool, pos: Pos) -> Located {
    if a == 0.0 {
        return if label {
            Located::Inside(f64::INFINITY, true)
        } else {
            Located::Outside(Pos { value: f64::INFINITY, after: false })
        };
    }
    let b = |m: u64| boundary(2 * m + 1, a);
    let v = pos.value;
    let mut m = math::floor((v / (math::FRAC_PI_2 / a) + 1.0) / 2.0).max(0.0) as u64;
    while m > 0 && v < b(m - 1) {
        m -= 1;
    }
    while v >= b(m) {
        m += 1;
    }
    // v ∈ [b_{m−1}, b_m)
    let on_boundary = m > 0 && v == b(m - 1) && !pos.after;
    if on_boundary {
        if label {
            let end = if m.is_multiple_of(2) { b(m) } else { v };
            return Located::Inside(end, true);
        }
        let start = if m % 2 == 1 { v } else { b(m) };
        return Located::Outside(Pos { value: start, after: true });
    }
    let segment_label = m.is_multiple_of(2);
    if segment_label == label {
        Located::Inside(b(m), label)
    } else {
        Located::Outside(Pos { value: b(m), after: !label })
    }
}

/// Ulp steps tried above a closed left end before falling back to the
/// midpoint of the piece.
const NUDGES: usize = 4;

fn verifies(points: &[f64], labels: &[bool], params: &SontagParams) -> bool {
    points.iter().zip(labels).all(|(&x, &l)| net_output(x, params) == l)
}

/// Least weight in `[cfg.w_min, w_max]` realizing `labels` on `points`.
///
/// An open infimum is replaced by the midpoint of the feasible piece it
/// bounds. Every returned witness has been re-checked with
/// [`net_output`](super::net_output).
pub fn shatter_search(
    points: &[f64],
    labels: &[bool],
    w_max: f64,
    alpha: f64,
    cfg: &SearchConfig,
) -> Result<ShatterOutcome> {
    if points.len() != labels.len() {
        return Err(arg("points and labels differ in length"));
    }
    let mut sorted: Vec<f64> = points.to_vec();
    sorted.sort_by(f64::total_cmp);
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(arg("points must be pairwise distinct"));
    }
    if !(w_max >= cfg.w_min) || cfg.w_min < 0.0 {
        return Err(arg("weight range must satisfy 0 <= w_min <= w_max"));
    }
    SontagParams::new(cfg.w_min, alpha)?;
    let mags: Vec<f64> = points.iter().map(|x| math::fabs(*x)).collect();
    let label_bytes = labels.iter().map(|&l| l as u8).collect();
    let outcome = |status, witness_w, hi: f64, breakpoints| ShatterOutcome {
        labels: label_bytes,
        witness_w,
        status,
        range_searched: [cfg.w_min, hi.min(w_max)],
        breakpoints,
    };

    let mut pos = Pos { value: cfg.w_min, after: false };
    let mut breakpoints: u64 = 0;
    loop {
        if pos.value > w_max || (pos.value == w_max && pos.after) {
            return Ok(outcome(SearchStatus::Infeasible, None, w_max, breakpoints));
        }
        if breakpoints >= cfg.budget {
            return Ok(outcome(SearchStatus::BudgetExceeded, None, pos.value, breakpoints));
        }
        let mut next = pos;
        let mut end = (f64::INFINITY, true);
        let mut inside_all = true;
        for (&a, &l) in mags.iter().zip(labels) {
            match locate(a, l, pos) {
                Located::Inside(e, closed) => {
                    if e < end.0 || (e == end.0 && !closed) {
                        end = (e, closed);
                    }
                }
                Located::Outside(start) => {
                    inside_all = false;
                    next = next.later(start);
                }
            }
        }
        breakpoints += mags.len() as u64;
        if !inside_all {
            pos = next;
            continue;
        }
        let hi = end.0.min(w_max);
        let midpoint = 0.5 * (pos.value + hi);
        let mut candidates = [None; NUDGES + 2];
        if !pos.after {
            let mut w = pos.value;
            for slot in candidates.iter_mut().take(NUDGES + 1) {
                if w < hi || w == pos.value {
                    *slot = Some(w);
                }
                w = w.next_up();
            }
        }
        candidates[NUDGES + 1] = (hi > pos.value).then_some(midpoint);
        for w in candidates.into_iter().flatten() {
            let params = SontagParams::new(w, alpha)?;
            if verifies(points, labels, &params) {
                return Ok(outcome(SearchStatus::Found, Some(w), w, breakpoints));
            }
        }
        // rounding defeated both candidates; skip this piece
        pos = Pos { value: end.0, after: true };
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Census {
    pub realized: u64,
    pub total: u64,
    pub budget_exceeded: u64,
    pub outcomes: Vec<ShatterOutcome>,
}

impl Census {
    pub fn shattered(&self) -> bool {
        self.realized == self.total
    }
}

/// Runs [`shatter_search`] for all `2^n` labelings; labeling `m` gives point
/// `i` the label `(m >> i) & 1`. Outcomes are in labeling order.
pub fn shatter_census<R: TrialRunner>(
    points: &[f64],
    w_max: f64,
    alpha: f64,
    cfg: &SearchConfig,
    runner: &R,
) -> Result<Census> {
    let n = points.len();
    if n > 24 {
        return Err(arg("census enumerates at most 24 points"));
    }
    let total = 1u64 << n;
    let outcomes = runner
        .map(total, |mask| {
            let labels: Vec<bool> = (0..n).map(|i| (mask >> i) & 1 == 1).collect();
            shatter_search(points, &labels, w_max, alpha, cfg)
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let realized = outcomes.iter().filter(|o| o.status == SearchStatus::Found).count() as u64;
    let budget_exceeded = outcomes
        .iter()
        .filter(|o| o.status == SearchStatus::BudgetExceeded)
        .count() as u64;
    Ok(Census { realized, total, budget_exceeded, outcomes })
}

/// `ln 2, ln 3, ln 5, …`: logarithms of the first `n` primes, rationally
/// independent by unique factorization (up to double rounding).
pub fn rationally_independent_points(n: usize) -> Vec<f64> {
    math::primes(n).into_iter().map(|p| math::ln(p as f64)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::Sequential;
    use crate::math::PI;
    use crate::sontag::feasible_weights;
    use alloc::vec;

    fn search(points: &[f64], labels: &[bool], w_max: f64) -> ShatterOutcome {
        shatter_search(points, labels, w_max, 100.0, &SearchConfig::default()).unwrap()
    }

    #[test]
    fn single_point_label_one() {
        let o = search(&[1.0], &[true], 10.0);
        assert_eq!(o.status, SearchStatus::Found);
        assert_eq!(o.witness_w, Some(0.0));
    }

    #[test]
    fn two_points_one_zero() {
        let o = search(&[1.0, 2.0], &[true, false], 10.0);
        let w = o.witness_w.unwrap();
        assert!(w > PI / 4.0 && w <= PI / 2.0, "{w}");
        // open infimum at π/4 → midpoint of (π/4, π/2]
        assert!((w - 3.0 * PI / 8.0).abs() < 1e-12);
    }

    #[test]
    fn zero_point_label_zero_is_infeasible() {
        let o = search(&[0.0, 1.0], &[false, true], 100.0);
        assert_eq!(o.status, SearchStatus::Infeasible);
        assert_eq!(o.witness_w, None);
    }

    fn feasible_set(points: &[f64], labels: &[bool], w_max: f64) -> crate::sontag::ArcSet {
        let mut set = feasible_weights(points[0], labels[0], w_max);
        for i in 1..points.len() {
            set = set.intersection(&feasible_weights(points[i], labels[i], w_max));
        }
        set
    }

    #[test]
    fn least_witness_matches_arc_sets() {
        let points = [0.7, 1.3, 2.9];
        for mask in 0..8u32 {
            let labels: Vec<bool> = (0..3).map(|i| (mask >> i) & 1 == 1).collect();
            let o = search(&points, &labels, 200.0);
            let first = feasible_set(&points, &labels, 200.0).arcs()[0];
            let w = o.witness_w.unwrap();
            if first.lo_closed {
                assert!(w >= first.lo && w - first.lo <= 8.0 * f64::EPSILON * first.lo.max(1.0), "{w} {first:?}");
            } else {
                assert_eq!(w, 0.5 * (first.lo + first.hi));
            }
        }
    }

    #[test]
    fn log_primes() {
        assert_eq!(rationally_independent_points(1), vec![core::f64::consts::LN_2]);
        let p = rationally_independent_points(3);
        assert_eq!(p, vec![math::ln(2.0), math::ln(3.0), math::ln(5.0)]);
    }

    #[test]
    fn census_small() {
        let c = shatter_census(&[1.0], 10.0, 100.0, &SearchConfig::default(), &Sequential).unwrap();
        assert_eq!((c.realized, c.total), (2, 2));
        let c = shatter_census(&[1.0, 2.0], 100.0, 100.0, &SearchConfig::default(), &Sequential).unwrap();
        assert_eq!(c.realized, 4);
        let w = c.outcomes[2].witness_w.unwrap();
        assert!(math::cos(w) < 0.0 && math::cos(2.0 * w) >= 0.0);
    }

    #[test]
    fn census_log_prime_triple_against_grid_scan() {
        let points = rationally_independent_points(3);
        let c = shatter_census(&points, 1e4, 100.0, &SearchConfig::default(), &Sequential).unwrap();
        assert_eq!(c.realized, 8);
        for (mask, o) in c.outcomes.iter().enumerate() {
            let labels: Vec<bool> = (0..3).map(|i| (mask >> i) & 1 == 1).collect();
            let w = o.witness_w.unwrap();
            let params = SontagParams::new(w, 100.0).unwrap();
            assert!(points.iter().zip(&labels).all(|(&x, &l)| net_output(x, &params) == l));
            // a dense scan finds nothing clearly below the infimum
            let inf = feasible_set(&points, &labels, 1e4).arcs()[0].lo;
            assert!(w >= inf);
            let mut k = 0u64;
            loop {
                let v = k as f64 * 1e-4;
                if v >= inf - 1e-9 {
                    break;
                }
                let p = SontagParams::new(v, 100.0).unwrap();
                assert!(!points.iter().zip(&labels).all(|(&x, &l)| net_output(x, &p) == l), "grid hit {v} < {inf}");
                k += 1;
            }
        }
    }

    #[test]
    fn budget_is_reported() {
        let points = rationally_independent_points(12);
        let labels = vec![false; 12];
        let cfg = SearchConfig { w_min: 0.0, budget: 50 };
        let o = shatter_search(&points, &labels, 1e9, 100.0, &cfg).unwrap();
        assert_eq!(o.status, SearchStatus::BudgetExceeded);
        assert!(o.range_searched[1] < 1e9);
    }

    #[test]
    fn census_shrinks_with_range() {
        let points = rationally_independent_points(4);
        let mut last = u64::MAX;
        for w_max in [1e3, 1e2, 3e1, 1e1, 3.0, 1.0] {
            let c = shatter_census(&points, w_max, 100.0, &SearchConfig::default(), &Sequential).unwrap();
            assert!(c.realized <= last);
            last = c.realized;
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(shatter_search(&[1.0, 1.0], &[true, true], 1.0, 100.0, &SearchConfig::default()).is_err());
        assert!(shatter_search(&[1.0], &[true, false], 1.0, 100.0, &SearchConfig::default()).is_err());
    }
}
