//! Finite unions of intervals, compared up to null sets.
//!
//! A [`Region`] is what a concept looks like to a non-atomic measure:
//! endpoints carry no mass, so intervals are normalized to sorted,
//! non-touching `[lo, hi]` pairs with `lo < hi`.

use alloc::vec::Vec;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Region {
    pieces: Vec<(f64, f64)>,
}

impl Region {
    pub fn empty() -> Self {
        Region { pieces: Vec::new() }
    }

    pub fn interval(lo: f64, hi: f64) -> Self {
        Self::from_pieces(alloc::vec![(lo, hi)])
    }

    /// Sorts, drops degenerate pieces and merges overlapping or touching ones.
    pub fn from_pieces(mut raw: Vec<(f64, f64)>) -> Self {
        raw.retain(|&(lo, hi)| lo < hi);
        raw.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut pieces: Vec<(f64, f64)> = Vec::with_capacity(raw.len());
        for (lo, hi) in raw {
            match pieces.last_mut() {
                Some(last) if lo <= last.1 => last.1 = last.1.max(hi),
                _ => pieces.push((lo, hi)),
            }
        }
        Region { pieces }
    }

    pub fn pieces(&self) -> &[(f64, f64)] {
        &self.pieces
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn length(&self) -> f64 {
        self.pieces.iter().map(|&(lo, hi)| hi - lo).sum()
    }

    pub fn clip(&self, lo: f64, hi: f64) -> Region {
        Region::from_pieces(
            self.pieces
                .iter()
                .map(|&(a, b)| (a.max(lo), b.min(hi)))
                .collect(),
        )
    }

    pub fn union(&self, other: &Region) -> Region {
        self.combine(other, |a, b| a || b)
    }

    pub fn intersection(&self, other: &Region) -> Region {
        self.combine(other, |a, b| a && b)
    }

    pub fn symmetric_difference(&self, other: &Region) -> Region {
        self.combine(other, |a, b| a != b)
    }

    pub fn complement_within(&self, lo: f64, hi: f64) -> Region {
        Region::interval(lo, hi).combine(self, |a, b| a && !b)
    }

    // Sweep over the merged boundary list, tracking membership in each side.
    fn combine(&self, other: &Region, keep: impl Fn(bool, bool) -> bool) -> Region {
        let mut events: Vec<(f64, u8)> = Vec::with_capacity(2 * (self.pieces.len() + other.pieces.len()));
        for &(lo, hi) in &self.pieces {
            events.push((lo, 0));
            events.push((hi, 0));
        }
        for &(lo, hi) in &other.pieces {
            events.push((lo, 1));
            events.push((hi, 1));
        }
        events.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut inside = [false, false];
        let mut out = Vec::new();
        let mut open: Option<f64> = None;
        let mut i = 0;
        while i < events.len() {
            let x = events[i].0;
            while i < events.len() && events[i].0 == x {
                let side = events[i].1 as usize;
                inside[side] = !inside[side];
                i += 1;
            }
            let now = keep(inside[0], inside[1]);
            match (open, now) {
                (None, true) => open = Some(x),
                (Some(start), false) => {
                    out.push((start, x));
                    open = None;
                }
                _ => {}
            }
        }
        Region::from_pieces(out)
    }
}
