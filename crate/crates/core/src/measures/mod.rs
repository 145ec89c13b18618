//! Probability measures on the real line.
//!
//! Atomic measures get exact expectations. Uniform and Cantor measures
//! integrate concepts exactly through their interval-union [`Region`]s and
//! fall back to a grid (uniform) or Monte Carlo (Cantor) only when a region
//! would have too many pieces.

pub mod cantor;

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::concepts::Concept;
use crate::error::{Error, Result};
use crate::math;
use crate::region::Region;
use crate::stream;

const MASS_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub location: f64,
    pub mass: f64,
}

/// A finite purely atomic probability measure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "RawAtomic", try_from = "RawAtomic")]
pub struct AtomicMeasure {
    atoms: Vec<Atom>,
    cumulative: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAtomic {
    atoms: Vec<(f64, f64)>,
}

impl From<AtomicMeasure> for RawAtomic {
    fn from(m: AtomicMeasure) -> Self {
        RawAtomic { atoms: m.atoms.iter().map(|a| (a.location, a.mass)).collect() }
    }
}

impl TryFrom<RawAtomic> for AtomicMeasure {
    type Error = Error;
    fn try_from(raw: RawAtomic) -> Result<Self> {
        AtomicMeasure::from_pairs(&raw.atoms)
    }
}

impl AtomicMeasure {
    /// Atoms are sorted by location; locations must be distinct and the
    /// masses positive with total 1 (within `1e-12`).
    pub fn new(mut atoms: Vec<Atom>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::InvalidMeasure("no atoms".into()));
        }
        for a in &atoms {
            if !a.location.is_finite() {
                return Err(Error::InvalidMeasure(format!("non-finite location {}", a.location)));
            }
            if !(a.mass > 0.0 && a.mass <= 1.0 + MASS_TOLERANCE) {
                return Err(Error::InvalidMeasure(format!("atom mass {} outside (0,1]", a.mass)));
            }
        }
        atoms.sort_by(|a, b| a.location.total_cmp(&b.location));
        if let Some(w) = atoms.windows(2).find(|w| w[0].location == w[1].location) {
            return Err(Error::InvalidMeasure(format!("duplicate location {}", w[0].location)));
        }
        let mut cumulative = Vec::with_capacity(atoms.len());
        let mut total = 0.0;
        for a in &atoms {
            total += a.mass;
            cumulative.push(total);
        }
        if (total - 1.0).abs() > MASS_TOLERANCE {
            return Err(Error::InvalidMeasure(format!("total mass {total} differs from 1")));
        }
        Ok(AtomicMeasure { atoms, cumulative })
    }

    pub fn from_pairs(pairs: &[(f64, f64)]) -> Result<Self> {
        Self::new(pairs.iter().map(|&(location, mass)| Atom { location, mass }).collect())
    }

    /// `count` atoms of equal mass at the given locations.
    pub fn uniform_on(locations: &[f64]) -> Result<Self> {
        let m = 1.0 / locations.len() as f64;
        Self::new(locations.iter().map(|&location| Atom { location, mass: m }).collect())
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn locations(&self) -> Vec<f64> {
        self.atoms.iter().map(|a| a.location).collect()
    }

    pub fn total_mass(&self) -> f64 {
        *self.cumulative.last().unwrap_or(&0.0)
    }

    /// Index of the atom at exactly `x`.
    pub fn index_of(&self, x: f64) -> Option<usize> {
        self.atoms
            .binary_search_by(|a| a.location.total_cmp(&x))
            .ok()
    }

    /// Atom index for a uniform variate `u ∈ [0, 1)`.
    #[inline]
    pub fn index_for(&self, u: f64) -> usize {
        let target = u * self.total_mass();
        self.cumulative
            .partition_point(|&c| c <= target)
            .min(self.atoms.len() - 1)
    }

    pub fn sample_indices<R: Rng>(&self, rng: &mut R, n: usize) -> Vec<usize> {
        (0..n).map(|_| self.index_for(rng.random::<f64>())).collect()
    }

    fn mass_where(&self, pred: impl Fn(f64) -> bool) -> f64 {
        self.atoms.iter().filter(|a| pred(a.location)).map(|a| a.mass).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawUniform")]
pub struct UniformMeasure {
    a: f64,
    b: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawUniform {
    a: f64,
    b: f64,
}

impl TryFrom<RawUniform> for UniformMeasure {
    type Error = Error;
    fn try_from(raw: RawUniform) -> Result<Self> {
        UniformMeasure::new(raw.a, raw.b)
    }
}

impl UniformMeasure {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && b - a > 0.0) {
            return Err(Error::InvalidMeasure(format!("uniform endpoints [{a}, {b}]")));
        }
        Ok(UniformMeasure { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn width(&self) -> f64 {
        self.b - self.a
    }
}

/// Haar measure on the Cantor set, sampled through `depth` random ternary
/// digits in `{0, 2}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawCantor")]
pub struct CantorMeasure {
    depth: u32,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCantor {
    #[serde(default = "default_cantor_depth")]
    depth: u32,
}

fn default_cantor_depth() -> u32 {
    CantorMeasure::DEFAULT_DEPTH
}

impl TryFrom<RawCantor> for CantorMeasure {
    type Error = Error;
    fn try_from(raw: RawCantor) -> Result<Self> {
        CantorMeasure::new(raw.depth)
    }
}

impl Default for CantorMeasure {
    fn default() -> Self {
        CantorMeasure { depth: Self::DEFAULT_DEPTH }
    }
}

impl CantorMeasure {
    pub const DEFAULT_DEPTH: u32 = 40;

    pub fn new(depth: u32) -> Result<Self> {
        if !(1..=64).contains(&depth) {
            return Err(Error::InvalidMeasure(format!("cantor depth {depth} outside 1..=64")));
        }
        Ok(CantorMeasure { depth })
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    fn draw<R: Rng>(&self, rng: &mut R) -> f64 {
        let bits: u64 = rng.random();
        let mut x = 0.0;
        for i in (0..self.depth).rev() {
            x = (x + 2.0 * ((bits >> i) & 1) as f64) / 3.0;
        }
        x
    }
}

/// Image of a base measure under a piecewise-constant map: cell
/// `[cuts[i], cuts[i+1])` goes to `targets[i]`, the last cell is closed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPushforward")]
pub struct Pushforward {
    base: Box<Measure>,
    cuts: Vec<f64>,
    targets: Vec<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPushforward {
    base: Box<Measure>,
    cuts: Vec<f64>,
    targets: Vec<f64>,
}

impl TryFrom<RawPushforward> for Pushforward {
    type Error = Error;
    fn try_from(raw: RawPushforward) -> Result<Self> {
        Pushforward::new(*raw.base, raw.cuts, raw.targets)
    }
}

impl Pushforward {
    pub fn new(base: Measure, cuts: Vec<f64>, targets: Vec<f64>) -> Result<Self> {
        if targets.is_empty() || cuts.len() != targets.len() + 1 {
            return Err(Error::InvalidMeasure(format!(
                "partition needs len(cuts) = len(targets) + 1, got {} and {}",
                cuts.len(),
                targets.len()
            )));
        }
        if cuts.windows(2).any(|w| !(w[0] < w[1])) || cuts.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidMeasure("partition cuts must be finite and strictly increasing".into()));
        }
        Ok(Pushforward { base: Box::new(base), cuts, targets })
    }

    pub fn base(&self) -> &Measure {
        &self.base
    }

    pub fn map(&self, x: f64) -> Result<f64> {
        let last = self.cuts.len() - 1;
        if !(x >= self.cuts[0] && x <= self.cuts[last]) {
            return Err(Error::MapNotTotal(x));
        }
        let cell = self.cuts.partition_point(|&c| c <= x).saturating_sub(1).min(last - 1);
        Ok(self.targets[cell])
    }

    fn cell_masses(&self) -> Vec<f64> {
        let last = self.targets.len() - 1;
        (0..self.targets.len())
            .map(|i| self.base.interval_mass(self.cuts[i], self.cuts[i + 1], i == last))
            .collect()
    }

    /// Collapses the image into an atomic measure, merging equal targets.
    pub fn to_atomic(&self) -> Result<AtomicMeasure> {
        let mut pairs: Vec<(f64, f64)> = Vec::new();
        for (t, m) in self.targets.iter().zip(self.cell_masses()) {
            if m <= 0.0 {
                continue;
            }
            match pairs.iter_mut().find(|p| p.0 == *t) {
                Some(p) => p.1 += m,
                None => pairs.push((*t, m)),
            }
        }
        AtomicMeasure::from_pairs(&pairs)
    }
}

/// `base ⊗ Uniform[lift]`. One-dimensional queries see the base marginal:
/// a concept `C` is read as the cylinder `C × [a, b]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductLift {
    pub base: Box<Measure>,
    pub lift: UniformMeasure,
}

impl ProductLift {
    pub fn sample_pairs(&self, seed: u64, n: usize) -> Result<Vec<(f64, f64)>> {
        let xs = self.base.sample(stream::derive(seed, 0), n)?;
        let mut rng = stream::rng(stream::derive(seed, 1));
        Ok(xs
            .into_iter()
            .map(|x| (x, self.lift.a + self.lift.width() * rng.random::<f64>()))
            .collect())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Measure {
    Atomic(AtomicMeasure),
    Uniform(UniformMeasure),
    Cantor(CantorMeasure),
    Pushforward(Pushforward),
    Product(ProductLift),
}

impl From<AtomicMeasure> for Measure {
    fn from(m: AtomicMeasure) -> Self {
        Measure::Atomic(m)
    }
}

impl From<UniformMeasure> for Measure {
    fn from(m: UniformMeasure) -> Self {
        Measure::Uniform(m)
    }
}

impl From<CantorMeasure> for Measure {
    fn from(m: CantorMeasure) -> Self {
        Measure::Cantor(m)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrationConfig {
    /// Largest interval-union a concept may expand to before falling back.
    pub max_pieces: usize,
    pub grid_cells: usize,
    /// Grids coarser than this carry a [`IntegrationWarning::CoarseGrid`].
    pub min_cells: usize,
    pub mc_samples: usize,
    pub mc_seed: u64,
}

impl Default for IntegrationConfig {
    fn default() -> Self {
        IntegrationConfig {
            max_pieces: 1 << 20,
            grid_cells: 1 << 20,
            min_cells: 1 << 12,
            mc_samples: 200_000,
            mc_seed: 0x5eed,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IntegrationMethod {
    Exact,
    Grid { cells: usize },
    MonteCarlo { samples: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IntegrationWarning {
    CoarseGrid { cells: usize, minimum: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    pub method: IntegrationMethod,
    pub warning: Option<IntegrationWarning>,
}

impl Estimate {
    fn exact(value: f64) -> Self {
        Estimate { value, method: IntegrationMethod::Exact, warning: None }
    }
}

/// The indicator being integrated: one concept, or the symmetric difference
/// of two.
#[derive(Debug, Clone, Copy)]
pub(crate) enum Indicator<'a> {
    One(&'a Concept),
    Xor(&'a Concept, &'a Concept),
}

impl Indicator<'_> {
    fn member(&self, x: f64) -> bool {
        match self {
            Indicator::One(c) => c.member(x),
            Indicator::Xor(a, b) => a.member(x) != b.member(x),
        }
    }

    fn region(&self, lo: f64, hi: f64, max_pieces: usize) -> Option<Region> {
        match self {
            Indicator::One(c) => c.region_within(lo, hi, max_pieces),
            Indicator::Xor(a, b) => {
                let ra = a.region_within(lo, hi, max_pieces)?;
                let rb = b.region_within(lo, hi, max_pieces)?;
                Some(ra.symmetric_difference(&rb))
            }
        }
    }
}

/// `|{s ∈ [0, t] : cos s ≥ 0}|`, extended as an odd function.
pub fn cos_nonneg_length(t: f64) -> f64 {
    if t < 0.0 {
        return -cos_nonneg_length(-t);
    }
    let periods = math::floor(t / math::TAU);
    let r = t - periods * math::TAU;
    let partial = r.min(math::FRAC_PI_2) + (r - 3.0 * math::FRAC_PI_2).max(0.0);
    periods * math::PI + partial
}

impl Measure {
    pub fn uniform(a: f64, b: f64) -> Result<Self> {
        Ok(Measure::Uniform(UniformMeasure::new(a, b)?))
    }

    pub fn cantor() -> Self {
        Measure::Cantor(CantorMeasure::default())
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Measure::Atomic(_) => "atomic",
            Measure::Uniform(_) => "uniform",
            Measure::Cantor(_) => "cantor",
            Measure::Pushforward(_) => "pushforward",
            Measure::Product(_) => "product",
        }
    }

    pub fn as_atomic(&self) -> Option<&AtomicMeasure> {
        match self {
            Measure::Atomic(m) => Some(m),
            _ => None,
        }
    }

    /// `n` i.i.d. draws, reproducible for a fixed seed. Product lifts return
    /// the base coordinate; see [`ProductLift::sample_pairs`].
    pub fn sample(&self, seed: u64, n: usize) -> Result<Vec<f64>> {
        let mut rng = stream::rng(seed);
        self.sample_with(&mut rng, n)
    }

    pub fn sample_with<R: Rng>(&self, rng: &mut R, n: usize) -> Result<Vec<f64>> {
        Ok(match self {
            Measure::Atomic(m) => (0..n)
                .map(|_| m.atoms[m.index_for(rng.random::<f64>())].location)
                .collect(),
            Measure::Uniform(u) => (0..n).map(|_| u.a + u.width() * rng.random::<f64>()).collect(),
            Measure::Cantor(c) => (0..n).map(|_| c.draw(rng)).collect(),
            Measure::Pushforward(p) => {
                let xs = p.base.sample_with(rng, n)?;
                xs.into_iter().map(|x| p.map(x)).collect::<Result<Vec<_>>>()?
            }
            Measure::Product(p) => p.base.sample_with(rng, n)?,
        })
    }

    /// Mass of `[lo, hi]`, or of `[lo, hi)` when `hi_closed` is false.
    pub fn interval_mass(&self, lo: f64, hi: f64, hi_closed: bool) -> f64 {
        let inside = |x: f64| x >= lo && (x < hi || (hi_closed && x == hi));
        match self {
            Measure::Atomic(m) => m.mass_where(inside),
            Measure::Uniform(u) => ((hi.min(u.b) - lo.max(u.a)).max(0.0)) / u.width(),
            Measure::Cantor(_) => cantor::interval_mass(lo.max(0.0), hi.min(1.0)),
            Measure::Pushforward(p) => p
                .targets
                .iter()
                .zip(p.cell_masses())
                .filter(|(t, _)| inside(**t))
                .map(|(_, m)| m)
                .sum(),
            Measure::Product(p) => p.base.interval_mass(lo, hi, hi_closed),
        }
    }

    /// `E_μ[1_C]` with default integration settings.
    pub fn expect_indicator(&self, concept: &Concept) -> f64 {
        self.expect_indicator_with(concept, &IntegrationConfig::default()).value
    }

    pub fn expect_indicator_with(&self, concept: &Concept, cfg: &IntegrationConfig) -> Estimate {
        if let (Measure::Uniform(u), Concept::Sontag(p)) = (self, concept) {
            let w = p.w();
            let len = if w == 0.0 {
                u.width()
            } else {
                (cos_nonneg_length(w * u.b) - cos_nonneg_length(w * u.a)) / w
            };
            return Estimate::exact((len / u.width()).clamp(0.0, 1.0));
        }
        self.integrate(Indicator::One(concept), cfg)
    }

    pub(crate) fn integrate(&self, ind: Indicator<'_>, cfg: &IntegrationConfig) -> Estimate {
        match self {
            Measure::Atomic(m) => Estimate::exact(m.mass_where(|x| ind.member(x))),
            Measure::Uniform(u) => match ind.region(u.a, u.b, cfg.max_pieces) {
                Some(r) => Estimate::exact((r.length() / u.width()).clamp(0.0, 1.0)),
                None => {
                    let cells = cfg.grid_cells.max(1);
                    let h = u.width() / cells as f64;
                    let hits = (0..cells)
                        .filter(|&i| ind.member(u.a + (i as f64 + 0.5) * h))
                        .count();
                    let warning = (cells < cfg.min_cells)
                        .then_some(IntegrationWarning::CoarseGrid { cells, minimum: cfg.min_cells });
                    Estimate {
                        value: hits as f64 / cells as f64,
                        method: IntegrationMethod::Grid { cells },
                        warning,
                    }
                }
            },
            Measure::Cantor(c) => match ind.region(0.0, 1.0, cfg.max_pieces) {
                Some(r) => Estimate::exact(
                    r.pieces()
                        .iter()
                        .map(|&(lo, hi)| cantor::interval_mass(lo, hi))
                        .sum::<f64>()
                        .clamp(0.0, 1.0),
                ),
                None => {
                    let mut rng = stream::rng(cfg.mc_seed);
                    let hits = (0..cfg.mc_samples).filter(|_| ind.member(c.draw(&mut rng))).count();
                    Estimate {
                        value: hits as f64 / cfg.mc_samples.max(1) as f64,
                        method: IntegrationMethod::MonteCarlo { samples: cfg.mc_samples },
                        warning: None,
                    }
                }
            },
            Measure::Pushforward(p) => Estimate::exact(
                p.targets
                    .iter()
                    .zip(p.cell_masses())
                    .filter(|(t, _)| ind.member(**t))
                    .map(|(_, m)| m)
                    .sum(),
            ),
            Measure::Product(p) => p.base.integrate(ind, cfg),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Measure::Atomic(m) => format!("atomic({} atoms)", m.len()),
            Measure::Uniform(u) => format!("uniform[{}, {}]", u.a, u.b),
            Measure::Cantor(c) => format!("cantor(depth {})", c.depth),
            Measure::Pushforward(p) => format!("pushforward({} cells of {})", p.targets.len(), p.base.describe()),
            Measure::Product(p) => format!("{} x uniform[{}, {}]", p.base.describe(), p.lift.a, p.lift.b),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::concepts::{AtomLabeling, IntervalUnion};
    use crate::sontag::SontagParams;
    use alloc::vec;

    fn intervals(v: &[(f64, f64)]) -> Concept {
        Concept::Intervals(IntervalUnion::new(v.to_vec()).unwrap())
    }

    #[test]
    fn single_atom_sampling() {
        let m: Measure = AtomicMeasure::from_pairs(&[(0.0, 1.0)]).unwrap().into();
        assert_eq!(m.sample(99, 5).unwrap(), vec![0.0; 5]);
        assert!(m.sample(99, 0).unwrap().is_empty());
    }

    #[test]
    fn atomic_validation() {
        assert!(AtomicMeasure::from_pairs(&[]).is_err());
        assert!(AtomicMeasure::from_pairs(&[(0.0, 0.5), (0.0, 0.5)]).is_err());
        assert!(AtomicMeasure::from_pairs(&[(0.0, 0.5), (1.0, 0.4)]).is_err());
        assert!(AtomicMeasure::from_pairs(&[(0.0, -0.5), (1.0, 1.5)]).is_err());
        let m = AtomicMeasure::from_pairs(&[(2.0, 0.2), (1.0, 0.8)]).unwrap();
        assert_eq!(m.locations(), vec![1.0, 2.0]);
    }

    #[test]
    fn cantor_depth_one_sampling() {
        let m = Measure::Cantor(CantorMeasure::new(1).unwrap());
        let xs = m.sample(3, 1000).unwrap();
        assert!(xs.iter().all(|&x| x == 0.0 || x == 2.0 / 3.0));
        let zeros = xs.iter().filter(|&&x| x == 0.0).count() as f64 / 1000.0;
        assert!((zeros - 0.5).abs() <= 0.05, "{zeros}");
    }

    #[test]
    fn cantor_samples_have_no_digit_one() {
        let m = Measure::Cantor(CantorMeasure::new(20).unwrap());
        // a depth-20 sample is a/3^20 up to rounding of the double
        for x in m.sample(11, 500).unwrap() {
            let mut a = math::round(x * 3f64.powi(20)) as u64;
            for _ in 0..20 {
                assert_ne!(a % 3, 1, "{x}");
                a /= 3;
            }
        }
    }

    #[test]
    fn uniform_mean() {
        let m = Measure::uniform(0.0, math::TAU).unwrap();
        let xs = m.sample(5, 100_000).unwrap();
        let mean = xs.iter().sum::<f64>() / xs.len() as f64;
        assert!((mean - math::PI).abs() <= 0.02, "{mean}");
    }

    #[test]
    fn reproducible_samples() {
        for m in [Measure::uniform(0.0, 1.0).unwrap(), Measure::cantor()] {
            assert_eq!(m.sample(17, 50).unwrap(), m.sample(17, 50).unwrap());
            assert_ne!(m.sample(17, 50).unwrap(), m.sample(18, 50).unwrap());
        }
    }

    #[test]
    fn atomic_expectation() {
        let m: Measure = AtomicMeasure::from_pairs(&[(1.0, 0.8), (2.0, 0.2)]).unwrap().into();
        let c = intervals(&[(f64::NEG_INFINITY, 1.5)]);
        assert_eq!(m.expect_indicator(&c), 0.8);
    }

    #[test]
    fn uniform_sontag_half() {
        let m = Measure::uniform(0.0, math::TAU).unwrap();
        let c = Concept::Sontag(SontagParams::new(2.0, 100.0).unwrap());
        assert!((m.expect_indicator(&c) - 0.5).abs() < 1e-12);
        // the region path agrees with the closed form
        let est = m.integrate(Indicator::One(&c), &IntegrationConfig::default());
        assert!((est.value - 0.5).abs() < 1e-12);
        assert_eq!(est.method, IntegrationMethod::Exact);
    }

    #[test]
    fn cantor_left_half() {
        let c = intervals(&[(0.0, 1.0 / 3.0)]);
        assert_eq!(Measure::cantor().expect_indicator(&c), 0.5);
    }

    #[test]
    fn grid_fallback_warns_when_coarse() {
        let m = Measure::uniform(0.0, math::TAU).unwrap();
        let c = Concept::Sontag(SontagParams::new(2.0, 100.0).unwrap());
        let cfg = IntegrationConfig { max_pieces: 1, grid_cells: 100, min_cells: 1000, ..Default::default() };
        let est = m.integrate(Indicator::One(&c), &cfg);
        assert_eq!(est.method, IntegrationMethod::Grid { cells: 100 });
        assert!(est.warning.is_some());
        assert!((est.value - 0.5).abs() < 0.05);
        let fine = IntegrationConfig { max_pieces: 1, ..Default::default() };
        let est = m.integrate(Indicator::One(&c), &fine);
        assert!(est.warning.is_none());
        assert!((est.value - 0.5).abs() < 1e-5);
    }

    #[test]
    fn cantor_monte_carlo_fallback() {
        let c = intervals(&[(0.0, 1.0 / 3.0)]);
        let cfg = IntegrationConfig { max_pieces: 0, ..Default::default() };
        let est = Measure::cantor().integrate(Indicator::One(&c), &cfg);
        assert!(matches!(est.method, IntegrationMethod::MonteCarlo { .. }));
        assert!((est.value - 0.5).abs() < 0.01);
    }

    #[test]
    fn pushforward_threshold_partition() {
        let base = Measure::uniform(0.0, 1.0).unwrap();
        let p = Pushforward::new(base, vec![0.0, 0.8, 1.0], vec![10.0, 20.0]).unwrap();
        let atomic = p.to_atomic().unwrap();
        assert!((atomic.atoms()[0].mass - 0.8).abs() < 1e-12);
        let pm = Measure::Pushforward(p);
        let target: Measure = AtomicMeasure::from_pairs(&[(10.0, 0.8), (20.0, 0.2)]).unwrap().into();
        for loc in [10.0, 20.0] {
            let c = intervals(&[(loc, loc)]);
            assert!((pm.expect_indicator(&c) - target.expect_indicator(&c)).abs() < 1e-12);
        }
        let xs = pm.sample(1, 1000).unwrap();
        assert!(xs.iter().all(|&x| x == 10.0 || x == 20.0));
    }

    #[test]
    fn pushforward_identity_map_on_atoms() {
        let base: Measure = AtomicMeasure::from_pairs(&[(0.1, 0.25), (0.4, 0.25), (0.7, 0.5)]).unwrap().into();
        let p = Measure::Pushforward(
            Pushforward::new(base.clone(), vec![0.0, 0.3, 0.6, 1.0], vec![0.1, 0.4, 0.7]).unwrap(),
        );
        let mut rng = stream::rng(4);
        for _ in 0..10 {
            let a: f64 = rng.random();
            let b: f64 = rng.random();
            let c = intervals(&[(a.min(b), a.max(b))]);
            assert_eq!(p.expect_indicator(&c), base.expect_indicator(&c));
        }
    }

    #[test]
    fn pushforward_of_cantor_level_one() {
        let p = Pushforward::new(Measure::cantor(), vec![0.0, 0.5, 1.0], vec![0.0, 1.0]).unwrap();
        let atomic = p.to_atomic().unwrap();
        assert_eq!(atomic.len(), 2);
        assert!(atomic.atoms().iter().all(|a| (a.mass - 0.5).abs() < 1e-12));
    }

    #[test]
    fn pushforward_not_total() {
        let p = Pushforward::new(Measure::uniform(0.0, 2.0).unwrap(), vec![0.0, 1.0], vec![5.0]).unwrap();
        let err = Measure::Pushforward(p).sample(2, 100).unwrap_err();
        assert!(matches!(err, Error::MapNotTotal(_)));
    }

    #[test]
    fn product_lift_marginal() {
        let base: Measure = AtomicMeasure::from_pairs(&[(1.0, 0.8), (2.0, 0.2)]).unwrap().into();
        let prod = Measure::Product(ProductLift { base: Box::new(base.clone()), lift: UniformMeasure::new(0.0, 1.0).unwrap() });
        let c = Concept::AtomLabels(AtomLabeling::new(vec![1.0, 2.0], vec![true, false], false).unwrap());
        assert_eq!(prod.expect_indicator(&c), base.expect_indicator(&c));
        if let Measure::Product(p) = &prod {
            let pairs = p.sample_pairs(3, 100).unwrap();
            assert!(pairs.iter().all(|&(x, t)| (x == 1.0 || x == 2.0) && (0.0..1.0).contains(&t)));
        }
    }

    #[test]
    fn cos_nonneg_length_values() {
        assert_eq!(cos_nonneg_length(0.0), 0.0);
        assert!((cos_nonneg_length(math::TAU) - math::PI).abs() < 1e-15);
        assert!((cos_nonneg_length(math::FRAC_PI_2) - math::FRAC_PI_2).abs() < 1e-15);
        assert!((cos_nonneg_length(math::PI) - math::FRAC_PI_2).abs() < 1e-15);
    }
}
