//! Sets of weights, as finite unions of arcs with explicit endpoint
//! closedness.

use alloc::vec::Vec;

use crate::math;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightArc {
    pub lo: f64,
    pub hi: f64,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl WeightArc {
    pub fn closed(lo: f64, hi: f64) -> Self {
        WeightArc { lo, hi, lo_closed: true, hi_closed: true }
    }

    pub fn open(lo: f64, hi: f64) -> Self {
        WeightArc { lo, hi, lo_closed: false, hi_closed: false }
    }

    pub fn is_empty(&self) -> bool {
        !(self.lo < self.hi || (self.lo == self.hi && self.lo_closed && self.hi_closed))
    }

    pub fn contains(&self, w: f64) -> bool {
        (self.lo < w || (self.lo == w && self.lo_closed)) && (w < self.hi || (w == self.hi && self.hi_closed))
    }

    pub fn length(&self) -> f64 {
        (self.hi - self.lo).max(0.0)
    }
}

/// A sorted union of disjoint, non-adjacent arcs inside `[0, w_max]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ArcSet {
    arcs: Vec<WeightArc>,
    w_max: f64,
}

/// `j·(π/2)/a` for odd `j`: the zeros of `w ↦ cos(w·a)`.
#[inline]
pub(crate) fn boundary(j: u64, a: f64) -> f64 {
    (j as f64 * math::FRAC_PI_2) / a
}

impl ArcSet {
    pub fn new(arcs: Vec<WeightArc>, w_max: f64) -> Self {
        let mut clipped: Vec<WeightArc> = arcs
            .into_iter()
            .map(|mut a| {
                if a.lo < 0.0 {
                    a.lo = 0.0;
                    a.lo_closed = true;
                }
                if a.hi > w_max {
                    a.hi = w_max;
                    a.hi_closed = true;
                }
                a
            })
            .filter(|a| !a.is_empty())
            .collect();
        clipped.sort_by(|a, b| a.lo.total_cmp(&b.lo).then((!a.lo_closed).cmp(&!b.lo_closed)));
        let mut arcs: Vec<WeightArc> = Vec::with_capacity(clipped.len());
        for a in clipped {
            match arcs.last_mut() {
                Some(last) if a.lo < last.hi || (a.lo == last.hi && (a.lo_closed || last.hi_closed)) => {
                    if a.hi > last.hi {
                        last.hi = a.hi;
                        last.hi_closed = a.hi_closed;
                    } else if a.hi == last.hi {
                        last.hi_closed |= a.hi_closed;
                    }
                }
                _ => arcs.push(a),
            }
        }
        ArcSet { arcs, w_max }
    }

    pub fn full(w_max: f64) -> Self {
        Self::new(alloc::vec![WeightArc::closed(0.0, w_max)], w_max)
    }

    pub fn empty(w_max: f64) -> Self {
        ArcSet { arcs: Vec::new(), w_max }
    }

    pub fn arcs(&self) -> &[WeightArc] {
        &self.arcs
    }

    pub fn w_max(&self) -> f64 {
        self.w_max
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn contains(&self, w: f64) -> bool {
        let i = self.arcs.partition_point(|a| a.hi < w);
        self.arcs[i..].iter().take(2).any(|a| a.contains(w))
    }

    pub fn length(&self) -> f64 {
        self.arcs.iter().map(WeightArc::length).sum()
    }

    pub fn complement(&self) -> ArcSet {
        let mut gaps = Vec::with_capacity(self.arcs.len() + 1);
        let (mut from, mut from_closed) = (0.0, true);
        for a in &self.arcs {
            gaps.push(WeightArc { lo: from, hi: a.lo, lo_closed: from_closed, hi_closed: !a.lo_closed });
            from = a.hi;
            from_closed = !a.hi_closed;
        }
        gaps.push(WeightArc { lo: from, hi: self.w_max, lo_closed: from_closed, hi_closed: true });
        ArcSet::new(gaps, self.w_max)
    }

    pub fn intersection(&self, other: &ArcSet) -> ArcSet {
        let w_max = self.w_max.min(other.w_max);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < self.arcs.len() && j < other.arcs.len() {
            let (a, b) = (self.arcs[i], other.arcs[j]);
            let (lo, lo_closed) = if a.lo > b.lo {
                (a.lo, a.lo_closed)
            } else if b.lo > a.lo {
                (b.lo, b.lo_closed)
            } else {
                (a.lo, a.lo_closed && b.lo_closed)
            };
            let (hi, hi_closed) = if a.hi < b.hi {
                (a.hi, a.hi_closed)
            } else if b.hi < a.hi {
                (b.hi, b.hi_closed)
            } else {
                (a.hi, a.hi_closed && b.hi_closed)
            };
            out.push(WeightArc { lo, hi, lo_closed, hi_closed });
            // advance whichever arc ends first
            let a_first = a.hi < b.hi || (a.hi == b.hi && !a.hi_closed && b.hi_closed);
            let b_first = b.hi < a.hi || (a.hi == b.hi && !b.hi_closed && a.hi_closed);
            match (a_first, b_first) {
                (true, _) => i += 1,
                (_, true) => j += 1,
                _ => {
                    i += 1;
                    j += 1;
                }
            }
        }
        ArcSet::new(out, w_max)
    }
}

/// Weights `w ∈ [0, w_max]` for which the network labels `x` with `label`.
///
/// Label 1 is the closed set `{w : cos(wx) ≥ 0}`, label 0 its open
/// complement. `x = 0` with label 0 gives the empty set.
pub fn feasible_weights(x: f64, label: bool, w_max: f64) -> ArcSet {
    let a = math::fabs(x);
    if a == 0.0 {
        return if label { ArcSet::full(w_max) } else { ArcSet::empty(w_max) };
    }
    let mut arcs = Vec::new();
    let mut k: u64 = 0;
    loop {
        let arc = if label {
            let lo = if k == 0 { 0.0 } else { boundary(4 * k - 1, a) };
            WeightArc::closed(lo, boundary(4 * k + 1, a))
        } else {
            WeightArc::open(boundary(4 * k + 1, a), boundary(4 * k + 3, a))
        };
        if arc.lo > w_max {
            break;
        }
        arcs.push(arc);
        k += 1;
    }
    ArcSet::new(arcs, w_max)
}
