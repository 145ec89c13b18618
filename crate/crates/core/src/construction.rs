//! Purely atomic measures with a prescribed sample-complexity profile.
//!
//! Given accuracies `ε_1 = 1/5 > ε_2 > …` and a rate `f`, level `k` is a
//! set `F_k` of `f_k − f_{k−1}` atoms (`f_k = ⌈f(1/ε_k)⌉`) sharing mass
//! `m_k = 5(ε_k − ε_{k+1})`. The class of all labelings then needs on the
//! order of `f_k` samples at accuracy `ε_k`. Levels beyond `K` are collapsed
//! into a single residual atom of mass `5ε_{K+1}`.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::bounds::{bi_lower, bi_upper_log2, MaskFamily};
use crate::concepts::{AtomLabeling, Concept, ConceptClass};
use crate::error::{Error, Result};
use crate::exec::TrialRunner;
use crate::math;
use crate::measures::{Atom, AtomicMeasure, Measure};
use crate::sontag::{shatter_census, Census, SearchConfig, DEFAULT_ALPHA};

/// Constant of the packing lower bound: `2(1/2 − 0.42)²`.
pub const PACKING_CONSTANT: f64 = 0.0128;

/// Largest level union for which the profile also runs a packing bound on
/// the explicit family of labelings.
pub const PACKING_ATOMS: usize = 20;

/// A non-decreasing rate function on `[0, ∞)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RateFunction {
    /// `coefficient · x^exponent`.
    Poly {
        #[serde(default = "one")]
        coefficient: f64,
        exponent: f64,
    },
    /// `coefficient · base^x`.
    Exp {
        #[serde(default = "one")]
        coefficient: f64,
        base: f64,
    },
    /// Linear interpolation through explicit `(x, f(x))` pairs.
    Table { points: Vec<(f64, f64)> },
}

fn one() -> f64 {
    1.0
}

impl RateFunction {
    pub fn poly(exponent: f64) -> Self {
        RateFunction::Poly { coefficient: 1.0, exponent }
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        match self {
            RateFunction::Poly { coefficient, exponent } => Ok(coefficient * math::pow(x, *exponent)),
            RateFunction::Exp { coefficient, base } => Ok(coefficient * math::pow(*base, x)),
            RateFunction::Table { points } => {
                let tol = |a: f64| 1e-9 * a.abs().max(1.0);
                let first = points.first().ok_or_else(|| Error::InvalidSchedule("empty rate table".into()))?;
                let last = points[points.len() - 1];
                if x < first.0 - tol(first.0) || x > last.0 + tol(last.0) {
                    return Err(Error::InvalidSchedule(format!("rate table does not cover x = {x}")));
                }
                if let Some(&(_, y)) = points.iter().find(|p| (p.0 - x).abs() <= tol(p.0)) {
                    return Ok(y);
                }
                let i = points.partition_point(|p| p.0 < x);
                let (x0, y0) = points[i - 1];
                let (x1, y1) = points[i];
                Ok(y0 + (y1 - y0) * (x - x0) / (x1 - x0))
            }
        }
    }

    fn validate_shape(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidSchedule(msg.into()));
        match self {
            RateFunction::Poly { coefficient, exponent } => {
                if !(*coefficient > 0.0 && *exponent >= 1.0) || !coefficient.is_finite() || !exponent.is_finite() {
                    return bad("polynomial rate needs coefficient > 0 and exponent >= 1");
                }
            }
            RateFunction::Exp { coefficient, base } => {
                if !(*coefficient > 0.0 && *base > 1.0) || !coefficient.is_finite() || !base.is_finite() {
                    return bad("exponential rate needs coefficient > 0 and base > 1");
                }
            }
            RateFunction::Table { points } => {
                if points.len() < 2 {
                    return bad("rate table needs at least two points");
                }
                if points.iter().any(|p| !p.0.is_finite() || !p.1.is_finite() || p.0 < 0.0) {
                    return bad("rate table entries must be finite with x >= 0");
                }
                if points.windows(2).any(|w| !(w[1].0 > w[0].0) || w[1].1 < w[0].1) {
                    return bad("rate table must be increasing in x and non-decreasing in f");
                }
            }
        }
        Ok(())
    }
}

/// Accuracies `eps[0] = ε_1 = 1/5 > ε_2 > … > ε_{K+1}` and a rate `f`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSchedule", into = "RawSchedule")]
pub struct ComplexitySchedule {
    eps: Vec<f64>,
    f: RateFunction,
    depth: usize,
    level_values: Vec<u64>,
    linear_constant: f64,
}

#[derive(Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSchedule {
    eps: Vec<f64>,
    f: RateFunction,
    #[serde(rename = "K")]
    depth: usize,
}

impl TryFrom<RawSchedule> for ComplexitySchedule {
    type Error = Error;
    fn try_from(raw: RawSchedule) -> Result<Self> {
        ComplexitySchedule::new(raw.eps, raw.f, raw.depth)
    }
}

impl From<ComplexitySchedule> for RawSchedule {
    fn from(s: ComplexitySchedule) -> Self {
        RawSchedule { eps: s.eps, f: s.f, depth: s.depth }
    }
}

const GRID_POINTS: usize = 64;

impl ComplexitySchedule {
    /// `eps` must hold at least `depth + 1` entries; only the first
    /// `depth + 1` are used.
    pub fn new(mut eps: Vec<f64>, f: RateFunction, depth: usize) -> Result<Self> {
        if eps.len() < depth + 1 {
            return Err(Error::InvalidSchedule(format!("K = {depth} needs {} accuracies", depth + 1)));
        }
        eps.truncate(depth + 1);
        if eps[0] != 0.2 {
            return Err(Error::InvalidSchedule("the first accuracy must be 1/5".into()));
        }
        if eps.iter().any(|e| !(*e > 0.0)) || eps.windows(2).any(|w| !(w[1] < w[0])) {
            return Err(Error::InvalidSchedule("accuracies must be positive and strictly decreasing".into()));
        }
        f.validate_shape()?;

        // f is checked on a geometric grid spanning the schedule, plus every 1/ε_k
        let top = 1.0 / eps[eps.len() - 1];
        let mut grid: Vec<f64> = (0..GRID_POINTS)
            .map(|i| math::pow(top, i as f64 / (GRID_POINTS - 1) as f64))
            .collect();
        grid.extend(eps.iter().map(|e| 1.0 / e));
        grid.sort_by(f64::total_cmp);
        if let RateFunction::Table { points } = &f {
            let lo = points[0].0;
            grid.retain(|&x| x >= lo);
        }
        let values = grid.iter().map(|&x| f.eval(x)).collect::<Result<Vec<_>>>()?;
        if values.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::InvalidSchedule("rate must be finite and non-negative".into()));
        }
        if values.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::InvalidSchedule("rate must be non-decreasing".into()));
        }
        let linear_constant = grid
            .iter()
            .zip(&values)
            .map(|(x, v)| v / x)
            .fold(f64::INFINITY, f64::min);
        if !(linear_constant > 0.0) {
            return Err(Error::InvalidSchedule("rate must grow at least linearly".into()));
        }

        let mut level_values = Vec::with_capacity(depth);
        for e in &eps[..depth] {
            let v = math::ceil_snapped(f.eval(1.0 / e)?);
            if v > (u32::MAX as f64) {
                return Err(Error::InvalidSchedule(format!("f(1/{e}) = {v} is too large to materialize")));
            }
            level_values.push(v as u64);
        }
        if level_values.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::InvalidSchedule("rounded rate values must be non-decreasing".into()));
        }
        Ok(ComplexitySchedule { eps, f, depth, level_values, linear_constant })
    }

    /// `ε_k = 5^{-k}` for `k = 1, …, K + 1`.
    pub fn geometric(f: RateFunction, depth: usize) -> Result<Self> {
        let eps = (1..=depth as i32 + 1).map(|k| 1.0 / math::pow(5.0, k as f64)).collect();
        Self::new(eps, f, depth)
    }

    /// Default instance: `ε_k = 5^{-k}`, `f(x) = x²`, `K = 2`.
    pub fn default_instance() -> Self {
        Self::geometric(RateFunction::poly(2.0), 2).expect("valid default schedule")
    }

    /// `ε_1, …, ε_{K+1}`.
    pub fn eps(&self) -> &[f64] {
        &self.eps
    }

    pub fn rate(&self) -> &RateFunction {
        &self.f
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// `f_k = ⌈f(1/ε_k)⌉` for `k = 1, …, K`.
    pub fn level_values(&self) -> &[u64] {
        &self.level_values
    }

    /// `min f(x)/x` over the validation grid.
    pub fn linear_constant(&self) -> f64 {
        self.linear_constant
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Level {
    /// 1-based level index.
    pub k: usize,
    pub eps: f64,
    pub f_value: u64,
    pub atoms: Vec<f64>,
    pub mass: f64,
}

impl Level {
    pub fn atom_mass(&self) -> f64 {
        if self.atoms.is_empty() {
            0.0
        } else {
            self.mass / self.atoms.len() as f64
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConstructionWarning {
    /// Level `k` has no atoms; its mass went to the residual atom.
    EmptyLevel { k: usize, mass: f64 },
}

#[derive(Debug, Clone, Serialize)]
pub struct ConstructedInstance {
    pub schedule: ComplexitySchedule,
    pub levels: Vec<Level>,
    pub residual: Atom,
    pub warnings: Vec<ConstructionWarning>,
    #[serde(skip)]
    measure: AtomicMeasure,
}

/// Builds the truncated measure. Atoms sit at `ln 2, ln 3, ln 5, …` in level
/// order; the residual atom takes the next prime.
pub fn build_measure(schedule: &ComplexitySchedule) -> Result<ConstructedInstance> {
    let depth = schedule.depth();
    let eps = schedule.eps();
    let f = schedule.level_values();
    let total_atoms = f.last().copied().unwrap_or(0) as usize + 1;
    let mut locations = math::primes(total_atoms).into_iter().map(|p| math::ln(p as f64));

    let mut levels = Vec::with_capacity(depth);
    let mut warnings = Vec::new();
    let mut residual_mass = 5.0 * eps[depth];
    for k in 1..=depth {
        let count = (f[k - 1] - if k > 1 { f[k - 2] } else { 0 }) as usize;
        let mass = 5.0 * (eps[k - 1] - eps[k]);
        let atoms: Vec<f64> = locations.by_ref().take(count).collect();
        if atoms.is_empty() {
            warnings.push(ConstructionWarning::EmptyLevel { k, mass });
            residual_mass += mass;
        }
        levels.push(Level { k, eps: eps[k - 1], f_value: f[k - 1], atoms, mass });
    }
    let residual = Atom { location: locations.next().expect("one location left"), mass: residual_mass };

    let mut atoms: Vec<Atom> = levels
        .iter()
        .flat_map(|l| {
            let m = l.atom_mass();
            l.atoms.iter().map(move |&location| Atom { location, mass: m })
        })
        .collect();
    atoms.push(residual);
    let total: f64 = atoms.iter().map(|a| a.mass).sum();
    if (total - 1.0).abs() > 1e-12 {
        return Err(Error::Invariant(format!("constructed mass {total} differs from 1")));
    }
    let measure = AtomicMeasure::new(atoms)?;
    Ok(ConstructedInstance { schedule: schedule.clone(), levels, residual, warnings, measure })
}

impl ConstructedInstance {
    pub fn measure(&self) -> &AtomicMeasure {
        &self.measure
    }

    /// Atoms of levels `1..=k`, in level order.
    pub fn level_union(&self, k: usize) -> Vec<f64> {
        self.levels.iter().take(k).flat_map(|l| l.atoms.iter().copied()).collect()
    }

    /// Masses matching [`level_union`](Self::level_union).
    pub fn level_union_masses(&self, k: usize) -> Vec<f64> {
        self.levels
            .iter()
            .take(k)
            .flat_map(|l| core::iter::repeat_n(l.atom_mass(), l.atoms.len()))
            .collect()
    }

    /// Mass outside levels `1..=k`: `Σ_{i>k} m_i` plus the residual atom.
    pub fn tail_mass(&self, k: usize) -> f64 {
        let placed: f64 = self.levels.iter().skip(k).filter(|l| !l.atoms.is_empty()).map(|l| l.mass).sum();
        placed + self.residual.mass
    }

    /// Every atom except the residual one.
    pub fn universe(&self) -> Vec<f64> {
        self.level_union(self.levels.len())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileRow {
    pub k: usize,
    pub eps: f64,
    pub f_value: u64,
    /// `log₂` of the size of the `ε_k`-net formed by all labelings of the
    /// first `k` levels.
    pub log2_cover_size: f64,
    pub lower_bound: u64,
    /// Packing bound on the explicit family, when it is small enough.
    pub packing_lower_bound: Option<u64>,
    pub upper_bound: u64,
    /// `(8/ε²)(f_k + log₂(1/δ))`, an alternative upper-bound reading kept
    /// for comparison only.
    pub alternative_upper: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexityProfile {
    pub delta: f64,
    pub rows: Vec<ProfileRow>,
}

/// Upper bounds from the `2^{f_k}`-element net and lower bounds from the
/// packing constant, per level.
pub fn theoretical_profile(instance: &ConstructedInstance, delta: f64) -> Result<ComplexityProfile> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(crate::error::arg("delta must lie in (0, 1)"));
    }
    let mut rows: Vec<ProfileRow> = Vec::with_capacity(instance.levels.len());
    for level in &instance.levels {
        let f_k = level.f_value as f64;
        let eps = level.eps;
        let upper = bi_upper_log2(eps, delta, f_k)?;
        let mut lower = math::ceil_snapped(PACKING_CONSTANT * f_k) as u64;
        let packing_lower_bound = if level.f_value as usize <= PACKING_ATOMS {
            let family = MaskFamily::all_labelings(&instance.level_union_masses(level.k))?;
            let b = bi_lower(eps, &family)?;
            lower = lower.max(b);
            Some(b)
        } else {
            None
        };
        // n(ε) is non-increasing in ε, so a bound at ε_{k−1} carries over
        if let Some(prev) = rows.last() {
            lower = lower.max(prev.lower_bound);
        }
        if lower > upper {
            return Err(Error::Invariant(format!("lower bound {lower} exceeds upper bound {upper} at level {}", level.k)));
        }
        rows.push(ProfileRow {
            k: level.k,
            eps,
            f_value: level.f_value,
            log2_cover_size: f_k,
            lower_bound: lower,
            packing_lower_bound,
            upper_bound: upper,
            alternative_upper: 8.0 / (eps * eps) * (f_k - math::log2(delta)),
        });
    }
    Ok(ComplexityProfile { delta, rows })
}

/// All labelings of the first `k` levels, default 0 elsewhere.
#[derive(Debug, Clone)]
pub struct ShatteringSubfamily {
    locations: Arc<[f64]>,
    masses: Vec<f64>,
}

pub const MATERIALIZE_ATOMS: usize = 24;

pub fn shattering_subfamily(instance: &ConstructedInstance, k: usize) -> Result<ShatteringSubfamily> {
    if k > instance.levels.len() {
        return Err(crate::error::arg("level index exceeds the truncation depth"));
    }
    Ok(ShatteringSubfamily {
        locations: instance.level_union(k).into(),
        masses: instance.level_union_masses(k),
    })
}

impl ShatteringSubfamily {
    pub fn atoms(&self) -> &[f64] {
        &self.locations
    }

    /// `log₂` of the number of members.
    pub fn log2_len(&self) -> usize {
        self.locations.len()
    }

    /// Member `index`: atom `i` is labeled `(index >> i) & 1`.
    pub fn member(&self, index: u64) -> AtomLabeling {
        let bits = (0..self.locations.len()).map(|i| i < 64 && (index >> i) & 1 == 1).collect();
        AtomLabeling::over(self.locations.clone(), bits, false).expect("bits match locations")
    }

    /// The member agreeing with `concept` on every level atom.
    pub fn nearest(&self, concept: &Concept) -> AtomLabeling {
        let bits = self.locations.iter().map(|&x| concept.member(x)).collect();
        AtomLabeling::over(self.locations.clone(), bits, false).expect("bits match locations")
    }

    pub fn to_mask_family(&self) -> Result<MaskFamily> {
        if self.locations.len() > MATERIALIZE_ATOMS {
            return Err(Error::EnumerationCap {
                count: 1u128 << self.locations.len().min(127),
                cap: 1u128 << MATERIALIZE_ATOMS,
            });
        }
        MaskFamily::all_labelings(&self.masses)
    }

    pub fn materialize(&self) -> Result<ConceptClass> {
        let family = self.to_mask_family()?;
        let count = 1u64 << self.locations.len();
        let members = (0..count).map(|i| Concept::AtomLabels(self.member(family.mask(i as usize)))).collect();
        Ok(ConceptClass::Finite { members })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SontagInstanceConfig {
    pub w_max: f64,
    pub alpha: f64,
    pub search: SearchConfig,
}

impl Default for SontagInstanceConfig {
    fn default() -> Self {
        SontagInstanceConfig { w_max: 1e6, alpha: DEFAULT_ALPHA, search: SearchConfig::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum LevelCensus {
    Done { k: usize, atoms: usize, census: Census },
    /// More atoms than a census can enumerate.
    Skipped { k: usize, atoms: usize },
}

#[derive(Debug, Clone)]
pub struct SontagInstance {
    pub measure: Measure,
    pub class: ConceptClass,
    pub censuses: Vec<LevelCensus>,
}

impl SontagInstance {
    pub fn budget_exceeded(&self) -> bool {
        self.censuses
            .iter()
            .any(|c| matches!(c, LevelCensus::Done { census, .. } if census.budget_exceeded > 0))
    }
}

/// Pairs the instance measure with the Sontag weight family and runs a
/// shattering census on each level union (the residual atom alone when
/// `K = 0`).
pub fn sontag_instance<R: TrialRunner>(
    instance: &ConstructedInstance,
    cfg: &SontagInstanceConfig,
    runner: &R,
) -> Result<SontagInstance> {
    let unions: Vec<(usize, Vec<f64>)> = if instance.levels.is_empty() {
        alloc::vec![(0, alloc::vec![instance.residual.location])]
    } else {
        (1..=instance.levels.len()).map(|k| (k, instance.level_union(k))).collect()
    };
    let mut censuses = Vec::with_capacity(unions.len());
    for (k, points) in unions {
        let atoms = points.len();
        if atoms > MATERIALIZE_ATOMS {
            censuses.push(LevelCensus::Skipped { k, atoms });
            continue;
        }
        let census = shatter_census(&points, cfg.w_max, cfg.alpha, &cfg.search, runner)?;
        censuses.push(LevelCensus::Done { k, atoms, census });
    }
    Ok(SontagInstance {
        measure: Measure::Atomic(instance.measure().clone()),
        class: ConceptClass::Sontag { w_min: cfg.search.w_min, w_max: cfg.w_max, alpha: cfg.alpha },
        censuses,
    })
}

/// Human-readable one-line summary of an instance.
pub fn summary(instance: &ConstructedInstance) -> String {
    let sizes: Vec<usize> = instance.levels.iter().map(|l| l.atoms.len()).collect();
    let masses: Vec<f64> = instance.levels.iter().map(|l| l.mass).collect();
    format!("levels {sizes:?}, masses {masses:?}, residual {}", instance.residual.mass)
}
