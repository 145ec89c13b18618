//! Concepts (binary functions on the real line) and concept classes.

mod cantor_shatter;
mod order;

pub use cantor_shatter::{
    cantor_shatter_search, verify_cantor_witness, CantorShatterConfig, CantorShatterReport,
    CantorShatterStatus, ExhaustionCertificate,
};
pub use order::{isolate_points, OrderClassIter, OrderIntervalClass};

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::math;
use crate::measures::cantor::{level_left, scaled_floor, MAX_EXACT_LEVEL};
use crate::measures::{Estimate, Indicator, IntegrationConfig, Measure};
use crate::region::Region;
use crate::sontag::{net_output, SontagParams};

/// Sorted closed intervals; neighbours may share an endpoint but not overlap.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawIntervals")]
pub struct IntervalUnion {
    intervals: Vec<(f64, f64)>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawIntervals {
    intervals: Vec<(f64, f64)>,
}

impl TryFrom<RawIntervals> for IntervalUnion {
    type Error = Error;
    fn try_from(raw: RawIntervals) -> Result<Self> {
        IntervalUnion::new(raw.intervals)
    }
}

impl IntervalUnion {
    pub fn new(intervals: Vec<(f64, f64)>) -> Result<Self> {
        if intervals.iter().any(|&(lo, hi)| lo.is_nan() || hi.is_nan() || lo > hi) {
            return Err(Error::InvalidConcept("interval with lo > hi or NaN endpoint".into()));
        }
        if intervals.windows(2).any(|w| w[0].1 > w[1].0) {
            return Err(Error::InvalidConcept("intervals must be sorted and non-overlapping".into()));
        }
        Ok(IntervalUnion { intervals })
    }

    pub fn empty() -> Self {
        IntervalUnion { intervals: Vec::new() }
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn contains(&self, x: f64) -> bool {
        let i = self.intervals.partition_point(|&(_, hi)| hi < x);
        self.intervals.get(i).is_some_and(|&(lo, hi)| lo <= x && x <= hi)
    }
}

/// Labels of the atoms of an atomic measure, with a default for every other
/// point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "RawLabels", try_from = "RawLabels")]
pub struct AtomLabeling {
    locations: Arc<[f64]>,
    bits: Vec<bool>,
    default: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLabels {
    locations: Vec<f64>,
    bits: Vec<u8>,
    #[serde(default)]
    default: u8,
}

impl From<AtomLabeling> for RawLabels {
    fn from(l: AtomLabeling) -> Self {
        RawLabels {
            locations: l.locations.to_vec(),
            bits: l.bits.iter().map(|&b| b as u8).collect(),
            default: l.default as u8,
        }
    }
}

impl TryFrom<RawLabels> for AtomLabeling {
    type Error = Error;
    fn try_from(raw: RawLabels) -> Result<Self> {
        if raw.bits.iter().chain([&raw.default]).any(|&b| b > 1) {
            return Err(Error::InvalidConcept("bits must be 0 or 1".into()));
        }
        AtomLabeling::new(raw.locations, raw.bits.into_iter().map(|b| b == 1).collect(), raw.default == 1)
    }
}

impl AtomLabeling {
    pub fn new(locations: Vec<f64>, bits: Vec<bool>, default: bool) -> Result<Self> {
        Self::over(locations.into(), bits, default)
    }

    /// Shares an existing location table (strictly increasing).
    pub fn over(locations: Arc<[f64]>, bits: Vec<bool>, default: bool) -> Result<Self> {
        if locations.len() != bits.len() {
            return Err(Error::InvalidConcept(format!(
                "{} bits for {} atoms",
                bits.len(),
                locations.len()
            )));
        }
        if locations.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidConcept("atom locations must be strictly increasing".into()));
        }
        Ok(AtomLabeling { locations, bits, default })
    }

    pub fn locations(&self) -> &Arc<[f64]> {
        &self.locations
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn default_bit(&self) -> bool {
        self.default
    }

    pub fn label(&self, x: f64) -> bool {
        match self.locations.binary_search_by(|l| l.total_cmp(&x)) {
            Ok(i) => self.bits[i],
            Err(_) => self.default,
        }
    }
}

/// A finite union of removed middle thirds. `(level, index)` names the open
/// middle third of the `index`-th interval of construction stage
/// `level − 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawThirds")]
pub struct MiddleThirdUnion {
    thirds: Vec<(u32, u64)>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawThirds {
    thirds: Vec<(u32, u64)>,
}

impl TryFrom<RawThirds> for MiddleThirdUnion {
    type Error = Error;
    fn try_from(raw: RawThirds) -> Result<Self> {
        MiddleThirdUnion::new(raw.thirds)
    }
}

impl MiddleThirdUnion {
    pub const MAX_LEVEL: u32 = 40;

    pub fn new(mut thirds: Vec<(u32, u64)>) -> Result<Self> {
        for &(level, index) in &thirds {
            if level == 0 || level > Self::MAX_LEVEL || index >= 1u64 << (level - 1) {
                return Err(Error::InvalidConcept(format!("no middle third ({level}, {index})")));
            }
        }
        thirds.sort_unstable();
        thirds.dedup();
        Ok(MiddleThirdUnion { thirds })
    }

    pub fn thirds(&self) -> &[(u32, u64)] {
        &self.thirds
    }

    /// Numerator over `3^level` of the third's left end.
    fn left(level: u32, index: u64) -> u64 {
        3 * level_left(level - 1, index) + 1
    }

    /// Ternary-digit test, exact for the double `x`.
    pub fn contains(&self, x: f64) -> bool {
        const { assert!(Self::MAX_LEVEL <= MAX_EXACT_LEVEL) };
        if !(0.0..1.0).contains(&x) {
            return false;
        }
        let mut cached: Option<(u32, u128, bool)> = None;
        for &(level, index) in &self.thirds {
            let (q, exact) = match cached {
                Some((l, q, e)) if l == level => (q, e),
                _ => {
                    let (q, e) = scaled_floor(x, level);
                    cached = Some((level, q, e));
                    (q, e)
                }
            };
            if !exact && q == Self::left(level, index) as u128 {
                return true;
            }
        }
        false
    }

    fn region(&self) -> Region {
        Region::from_pieces(
            self.thirds
                .iter()
                .map(|&(level, index)| {
                    let scale = math::pow(3.0, level as f64);
                    let a = Self::left(level, index) as f64;
                    (a / scale, (a + 1.0) / scale)
                })
                .collect(),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Concept {
    Sontag(SontagParams),
    Intervals(IntervalUnion),
    AtomLabels(AtomLabeling),
    MiddleThirds(MiddleThirdUnion),
}

impl Concept {
    pub fn member(&self, x: f64) -> bool {
        match self {
            Concept::Sontag(p) => net_output(x, p),
            Concept::Intervals(u) => u.contains(x),
            Concept::AtomLabels(l) => l.label(x),
            Concept::MiddleThirds(m) => m.contains(x),
        }
    }

    pub fn sontag(w: f64) -> Result<Self> {
        Ok(Concept::Sontag(SontagParams::with_weight(w)?))
    }

    pub fn intervals(intervals: Vec<(f64, f64)>) -> Result<Self> {
        Ok(Concept::Intervals(IntervalUnion::new(intervals)?))
    }

    /// The concept as a union of intervals inside `[lo, hi]`, up to finitely
    /// many points. `None` when that takes more than `max_pieces` intervals.
    pub fn region_within(&self, lo: f64, hi: f64, max_pieces: usize) -> Option<Region> {
        let region = match self {
            Concept::Sontag(p) => {
                let w = p.w();
                if w == 0.0 {
                    return Some(Region::interval(lo, hi));
                }
                let pieces = w * (hi - lo) / math::TAU + 2.0;
                if pieces > max_pieces as f64 {
                    return None;
                }
                let k_lo = math::floor(w * lo / math::TAU) as i64 - 1;
                let k_hi = math::ceil(w * hi / math::TAU) as i64 + 1;
                Region::from_pieces(
                    (k_lo..=k_hi)
                        .map(|k| {
                            (
                                ((4 * k - 1) as f64 * math::FRAC_PI_2) / w,
                                ((4 * k + 1) as f64 * math::FRAC_PI_2) / w,
                            )
                        })
                        .collect(),
                )
            }
            Concept::Intervals(u) => {
                if u.intervals.len() > max_pieces {
                    return None;
                }
                Region::from_pieces(u.intervals.clone())
            }
            Concept::AtomLabels(l) => {
                if l.default {
                    Region::interval(lo, hi)
                } else {
                    Region::empty()
                }
            }
            Concept::MiddleThirds(m) => {
                if m.thirds.len() > max_pieces {
                    return None;
                }
                m.region()
            }
        };
        Some(region.clip(lo, hi))
    }
}

/// `L¹(μ)` distance: the measure of the symmetric difference.
pub fn l1_distance(a: &Concept, b: &Concept, measure: &Measure) -> f64 {
    l1_distance_with(a, b, measure, &IntegrationConfig::default()).value
}

pub fn l1_distance_with(a: &Concept, b: &Concept, measure: &Measure, cfg: &IntegrationConfig) -> Estimate {
    if a == b {
        return Estimate { value: 0.0, method: crate::measures::IntegrationMethod::Exact, warning: None };
    }
    measure.integrate(Indicator::Xor(a, b), cfg)
}

/// A concept class, either listed or described by its parameter space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConceptClass {
    Finite { members: Vec<Concept> },
    /// Sontag network outputs for `w ∈ [w_min, w_max]`.
    Sontag { w_min: f64, w_max: f64, alpha: f64 },
    /// `∪_n 𝒞_n`: unions of fewer than `√n` order-`n` intervals.
    OrderIntervals,
}

impl ConceptClass {
    pub fn finite(&self) -> Option<&[Concept]> {
        match self {
            ConceptClass::Finite { members } => Some(members),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::AtomicMeasure;
    use alloc::vec;
    use rand::Rng;

    #[test]
    fn membership_examples() {
        let u = Concept::intervals(vec![(0.0, 0.2), (0.4, 0.6)]).unwrap();
        assert!(u.member(0.5));
        assert!(!u.member(0.3));
        let l = Concept::AtomLabels(AtomLabeling::new(vec![1.0, 2.0, 3.0], vec![true, false, true], true).unwrap());
        assert!(!l.member(2.0));
        assert!(l.member(1.0));
        assert!(l.member(2.5));
        let s = Concept::sontag(0.0).unwrap();
        let mut rng = crate::stream::rng(2);
        for _ in 0..100 {
            assert!(s.member(rng.random_range(-1e6..1e6)));
        }
    }

    #[test]
    fn interval_validation() {
        assert!(IntervalUnion::new(vec![(0.0, 0.5), (0.4, 0.6)]).is_err());
        assert!(IntervalUnion::new(vec![(0.5, 0.4)]).is_err());
        assert!(IntervalUnion::new(vec![(0.0, 0.2), (0.2, 0.4)]).is_ok());
    }

    #[test]
    fn middle_thirds_membership() {
        let m = MiddleThirdUnion::new(vec![(1, 0), (2, 1)]).unwrap();
        assert!(m.contains(0.5));
        assert!(!m.contains(1.0 / 3.0));
        // the double nearest 2/3 lies just below it, inside the open third
        assert!(m.contains(2.0 / 3.0));
        assert!(!m.contains(0.7));
        // second-stage third of [2/3, 1] is (7/9, 8/9)
        assert!(m.contains(0.8));
        assert!(!m.contains(0.15));
        assert!(!m.contains(7.0 / 9.0 - 1e-9));
        assert!(MiddleThirdUnion::new(vec![(2, 2)]).is_err());
        assert!(MiddleThirdUnion::new(vec![(0, 0)]).is_err());
    }

    #[test]
    fn middle_thirds_carry_no_cantor_mass() {
        let m = Concept::MiddleThirds(MiddleThirdUnion::new(vec![(1, 0), (2, 0), (3, 3)]).unwrap());
        assert_eq!(Measure::cantor().expect_indicator(&m), 0.0);
        let lebesgue = Measure::uniform(0.0, 1.0).unwrap().expect_indicator(&m);
        assert!((lebesgue - (1.0 / 3.0 + 1.0 / 9.0 + 1.0 / 27.0)).abs() < 1e-15);
    }

    #[test]
    fn l1_examples() {
        let u = Measure::uniform(0.0, math::TAU).unwrap();
        let a = Concept::sontag(2.0).unwrap();
        let b = Concept::sontag(4.0).unwrap();
        assert_eq!(l1_distance(&a, &a, &u), 0.0);
        assert!((l1_distance(&a, &b, &u) - 0.5).abs() < 1e-9);
        let atoms = vec![1.0, 2.0];
        let m: Measure = AtomicMeasure::from_pairs(&[(1.0, 0.8), (2.0, 0.2)]).unwrap().into();
        let x = Concept::AtomLabels(AtomLabeling::new(atoms.clone(), vec![true, false], false).unwrap());
        let y = Concept::AtomLabels(AtomLabeling::new(atoms, vec![false, false], false).unwrap());
        assert_eq!(l1_distance(&x, &y, &m), 0.8);
    }

    #[test]
    fn l1_on_cantor_regions() {
        let a = Concept::intervals(vec![(0.0, 1.0 / 3.0)]).unwrap();
        let b = Concept::intervals(vec![(0.0, 1.0 / 9.0)]).unwrap();
        assert_eq!(l1_distance(&a, &b, &Measure::cantor()), 0.25);
    }

    #[test]
    fn sontag_region_matches_membership() {
        let c = Concept::sontag(7.3).unwrap();
        let r = c.region_within(-3.0, 5.0, 1000).unwrap();
        let mut rng = crate::stream::rng(8);
        for _ in 0..10_000 {
            let x: f64 = rng.random_range(-3.0..5.0);
            let inside = r.pieces().iter().any(|&(lo, hi)| lo <= x && x <= hi);
            assert_eq!(inside, c.member(x), "{x}");
        }
        assert!(c.region_within(0.0, 1e9, 1000).is_none());
    }
}
