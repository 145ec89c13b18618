//! Can unions of fewer than `√N` order-`N` intervals contain a chosen set of
//! level-`n` Cantor intervals while missing all the others?
//!
//! Every cell whose interior meets the interior of a chosen interval is
//! forced into any covering union, and those cells already cover it. So the
//! question reduces to the forced set: it must avoid the excluded intervals
//! and use fewer than `√N` cells. All comparisons are exact integer
//! cross-multiplications of `i/N` against `a/3^n`.

use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::{Concept, OrderIntervalClass};
use crate::error::{arg, Result};
use crate::math;
use crate::measures::cantor::{level_left, pow3};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CantorShatterConfig {
    pub max_level: u32,
    pub max_order: u64,
}

impl Default for CantorShatterConfig {
    fn default() -> Self {
        CantorShatterConfig { max_level: 4, max_order: 1 << 20 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExhaustionCertificate {
    /// Cells every candidate union must contain.
    pub forced_cells: u64,
    /// Largest admissible union size, `max{k : k² < N}`.
    pub allowed: u64,
    /// A forced cell touching an excluded interval (1-based index).
    pub conflict: Option<(u64, usize)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CantorShatterStatus {
    Feasible { witness: Concept, cells: Vec<u64> },
    Infeasible { certificate: ExhaustionCertificate },
    Unchecked { reason: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CantorShatterReport {
    pub level: u32,
    pub order: u64,
    /// 1-based indices of the chosen level intervals.
    pub selected: Vec<usize>,
    #[serde(flatten)]
    pub status: CantorShatterStatus,
}

impl CantorShatterReport {
    pub fn is_feasible(&self) -> bool {
        matches!(self.status, CantorShatterStatus::Feasible { .. })
    }
}

/// Closed cell `[c/N, (c+1)/N]` meets closed `[a/3^n, (a+1)/3^n]`.
fn cell_meets(c: u64, order: u64, a: u64, level: u32) -> bool {
    let (p, n) = (pow3(level), order as u128);
    (c as u128) * p <= (a as u128 + 1) * n && (a as u128) * n <= (c as u128 + 1) * p
}

/// Cells whose interior meets the interior of `[a/3^n, (a+1)/3^n]`.
fn forced_cells(order: u64, a: u64, level: u32) -> core::ops::Range<u64> {
    let (p, n) = (pow3(level), order as u128);
    let first = (a as u128 * n) / p;
    let last_exclusive = ((a as u128 + 1) * n).div_ceil(p);
    first as u64..last_exclusive as u64
}

pub fn cantor_shatter_search(
    level: u32,
    order: u64,
    selected: &[usize],
    cfg: &CantorShatterConfig,
) -> Result<CantorShatterReport> {
    if order == 0 {
        return Err(arg("order must be at least 1"));
    }
    let total = 1usize << level.min(30);
    let mut chosen: Vec<usize> = selected.to_vec();
    chosen.sort_unstable();
    chosen.dedup();
    if chosen.iter().any(|&j| j == 0 || j > total) {
        return Err(arg("selected indices must be in 1..=2^level"));
    }
    let report = |status| CantorShatterReport { level, order, selected: chosen.clone(), status };
    if level > cfg.max_level || order > cfg.max_order {
        return Ok(report(CantorShatterStatus::Unchecked {
            reason: alloc::format!(
                "level {level} / order {order} beyond caps {} / {}",
                cfg.max_level,
                cfg.max_order
            ),
        }));
    }
    let allowed = math::max_strictly_below_sqrt(order);
    let mut cells: Vec<u64> = Vec::new();
    for &j in &chosen {
        cells.extend(forced_cells(order, level_left(level, (j - 1) as u64), level));
    }
    cells.sort_unstable();
    cells.dedup();
    let conflict = cells.iter().find_map(|&c| {
        (1..=total)
            .filter(|k| chosen.binary_search(k).is_err())
            .find(|&k| cell_meets(c, order, level_left(level, (k - 1) as u64), level))
            .map(|k| (c, k))
    });
    let count = cells.len() as u64;
    if conflict.is_some() || count > allowed {
        return Ok(report(CantorShatterStatus::Infeasible {
            certificate: ExhaustionCertificate { forced_cells: count, allowed, conflict },
        }));
    }
    let witness = OrderIntervalClass::new(order)?.union_of(&cells)?;
    Ok(report(CantorShatterStatus::Feasible { witness, cells }))
}

/// Checks a witness directly: fewer than `√N` cells, every chosen interval
/// inside one contiguous run of cells, every other interval touching none.
pub fn verify_cantor_witness(level: u32, order: u64, selected: &[usize], cells: &[u64]) -> bool {
    let count = cells.len() as u128;
    if count * count >= order as u128 || cells.iter().any(|&c| c >= order) {
        return false;
    }
    let mut runs: Vec<(u64, u64)> = Vec::new();
    let mut sorted = cells.to_vec();
    sorted.sort_unstable();
    for c in sorted {
        match runs.last_mut() {
            Some(r) if r.1 + 1 == c => r.1 = c,
            _ => runs.push((c, c)),
        }
    }
    let (p, n) = (pow3(level), order as u128);
    for j in 1..=(1usize << level) {
        let a = level_left(level, (j - 1) as u64) as u128;
        if selected.contains(&j) {
            // [a/3^n, (a+1)/3^n] ⊆ [s/N, (e+1)/N]
            let inside = runs
                .iter()
                .any(|&(s, e)| (s as u128) * p <= a * n && (a + 1) * n <= (e as u128 + 1) * p);
            if !inside {
                return false;
            }
        } else if cells.iter().any(|&c| cell_meets(c, order, a as u64, level)) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn left_third_at_order_five() {
        let r = cantor_shatter_search(1, 5, &[1], &CantorShatterConfig::default()).unwrap();
        match &r.status {
            CantorShatterStatus::Feasible { witness, cells } => {
                assert_eq!(cells, &[0, 1]);
                assert_eq!(*witness, Concept::intervals(vec![(0.0, 0.2), (0.2, 0.4)]).unwrap());
                assert!(verify_cantor_witness(1, 5, &[1], cells));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn empty_selection_always_feasible() {
        for n in 1..40 {
            let r = cantor_shatter_search(1, n, &[], &CantorShatterConfig::default()).unwrap();
            assert!(r.is_feasible());
        }
    }

    #[test]
    fn both_level_one_intervals_never_fit() {
        for n in 1..=64 {
            let r = cantor_shatter_search(1, n, &[1, 2], &CantorShatterConfig::default()).unwrap();
            let CantorShatterStatus::Infeasible { certificate } = &r.status else { panic!("N = {n}") };
            assert!(certificate.forced_cells > certificate.allowed);
        }
    }

    #[test]
    fn caps_give_unchecked() {
        let r = cantor_shatter_search(5, 10, &[1], &CantorShatterConfig::default()).unwrap();
        assert!(matches!(r.status, CantorShatterStatus::Unchecked { .. }));
        assert!(cantor_shatter_search(1, 10, &[3], &CantorShatterConfig::default()).is_err());
    }

    #[test]
    fn verifier_rejects_bad_witnesses() {
        // misses part of [0, 1/3]
        assert!(!verify_cantor_witness(1, 5, &[1], &[0]));
        // [0, 1/9] at order 50 needs cells 0..=5; cell 11 touches [2/9, 1/3]
        assert!(verify_cantor_witness(2, 50, &[1], &[0, 1, 2, 3, 4, 5]));
        assert!(!verify_cantor_witness(2, 50, &[1], &[0, 1, 2, 3, 4, 5, 11]));
        // too many cells
        assert!(!verify_cantor_witness(1, 9, &[1], &[0, 1, 2]));
    }
}
