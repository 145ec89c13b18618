//! Per-command experiment configs. Every field has a default; unknown keys
//! are rejected.

use std::path::Path;

use fixdist_core::concepts::{AtomLabeling, Concept, ConceptClass};
use fixdist_core::construction::ComplexitySchedule;
use fixdist_core::learner::GcMode;
use fixdist_core::math;
use fixdist_core::sontag::DEFAULT_ALPHA;
use fixdist_core::Measure;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{LabError, LabResult};

/// Reads a config file, or the defaults when `path` is `None`.
pub fn load<C: DeserializeOwned + Default>(path: Option<&Path>) -> LabResult<C> {
    match path {
        None => Ok(C::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| LabError::Config(format!("cannot read {}: {e}", p.display())))?;
            Ok(serde_json::from_str(&text)?)
        }
    }
}

fn config_err(msg: impl Into<String>) -> LabError {
    LabError::Config(msg.into())
}

fn uniform_circle() -> Measure {
    Measure::uniform(0.0, math::TAU).expect("valid interval")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ConstructConfig {
    pub schedule: ComplexitySchedule,
    pub delta: f64,
    /// Also run a shattering census on each level union.
    pub census: bool,
    pub w_max: f64,
    pub alpha: f64,
    pub budget: u64,
}

impl Default for ConstructConfig {
    fn default() -> Self {
        ConstructConfig {
            schedule: ComplexitySchedule::default_instance(),
            delta: 0.1,
            census: false,
            w_max: 1e6,
            alpha: DEFAULT_ALPHA,
            budget: 100_000_000,
        }
    }
}

impl ConstructConfig {
    pub fn validate(&self) -> LabResult<()> {
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(config_err("delta must lie in (0, 1)"));
        }
        if !(self.w_max > 0.0) {
            return Err(config_err("w_max must be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ComplexityConfig {
    pub schedule: ComplexitySchedule,
    pub delta: f64,
    /// Accuracies to estimate at; empty means every level accuracy `ε_k`.
    pub eps: Vec<f64>,
    pub trials: u64,
    pub n_cap: u64,
    pub seed: u64,
}

impl Default for ComplexityConfig {
    fn default() -> Self {
        ComplexityConfig {
            schedule: ComplexitySchedule::default_instance(),
            delta: 0.1,
            eps: Vec::new(),
            trials: 400,
            n_cap: 1 << 22,
            seed: 20_240_601,
        }
    }
}

impl ComplexityConfig {
    pub fn validate(&self) -> LabResult<()> {
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(config_err("delta must lie in (0, 1)"));
        }
        if self.eps.iter().any(|e| !(*e > 0.0)) {
            return Err(config_err("accuracies must be positive"));
        }
        if self.trials < 100 {
            return Err(config_err("at least 100 trials are required"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ShatterConfig {
    /// Explicit points; when empty, the logarithms of the first
    /// `log_primes` primes.
    pub points: Vec<f64>,
    pub log_primes: usize,
    /// A single labeling to search for; when absent, every labeling.
    pub labels: Option<Vec<u8>>,
    pub w_min: f64,
    pub w_max: f64,
    pub alpha: f64,
    pub budget: u64,
}

impl Default for ShatterConfig {
    fn default() -> Self {
        ShatterConfig {
            points: Vec::new(),
            log_primes: 5,
            labels: None,
            w_min: 0.0,
            w_max: 1e6,
            alpha: DEFAULT_ALPHA,
            budget: 100_000_000,
        }
    }
}

impl ShatterConfig {
    pub fn resolved_points(&self) -> Vec<f64> {
        if self.points.is_empty() {
            fixdist_core::sontag::rationally_independent_points(self.log_primes)
        } else {
            self.points.clone()
        }
    }

    pub fn validate(&self) -> LabResult<()> {
        let n = self.resolved_points().len();
        if n == 0 {
            return Err(config_err("no points to shatter"));
        }
        match &self.labels {
            Some(l) if l.len() != n => Err(config_err("labels and points differ in length")),
            Some(l) if l.iter().any(|&b| b > 1) => Err(config_err("labels must be 0 or 1")),
            None if n > 24 => Err(config_err("a census enumerates at most 24 points")),
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DistancesConfig {
    /// Concepts to compare; when empty, Sontag concepts with `weights`.
    pub concepts: Vec<Concept>,
    pub weights: Vec<f64>,
    pub measure: Measure,
}

impl Default for DistancesConfig {
    fn default() -> Self {
        DistancesConfig {
            concepts: Vec::new(),
            weights: (1..=6).map(|k| f64::from(1u32 << k)).collect(),
            measure: uniform_circle(),
        }
    }
}

impl DistancesConfig {
    /// Concepts with a display label each.
    pub fn resolved(&self) -> LabResult<Vec<(String, Concept)>> {
        if !self.concepts.is_empty() {
            return Ok(self.concepts.iter().enumerate().map(|(i, c)| (format!("c{i}"), c.clone())).collect());
        }
        self.weights
            .iter()
            .map(|&w| Ok((format!("w={w}"), Concept::sontag(w)?)))
            .collect()
    }

    pub fn validate(&self) -> LabResult<()> {
        if self.resolved()?.is_empty() {
            return Err(config_err("no concepts to compare"));
        }
        Ok(())
    }
}

/// Concept classes as written in configs.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ClassSpec {
    Sontag { w_min: f64, w_max: f64, alpha: f64 },
    OrderIntervals,
    Finite { members: Vec<Concept> },
    /// Every labeling of the atoms of an atomic measure (at most 16 atoms).
    AllLabelings,
}

impl ClassSpec {
    pub fn resolve(&self, measure: &Measure) -> LabResult<ConceptClass> {
        Ok(match self {
            ClassSpec::Sontag { w_min, w_max, alpha } => {
                ConceptClass::Sontag { w_min: *w_min, w_max: *w_max, alpha: *alpha }
            }
            ClassSpec::OrderIntervals => ConceptClass::OrderIntervals,
            ClassSpec::Finite { members } => ConceptClass::Finite { members: members.clone() },
            ClassSpec::AllLabelings => {
                let atomic = measure
                    .as_atomic()
                    .ok_or_else(|| config_err("all_labelings needs an atomic measure"))?;
                let k = atomic.len();
                if k > 16 {
                    return Err(config_err("all_labelings supports at most 16 atoms"));
                }
                let locations = atomic.locations();
                let members = (0..1u32 << k)
                    .map(|m| {
                        let bits = (0..k).map(|i| (m >> i) & 1 == 1).collect();
                        AtomLabeling::new(locations.clone(), bits, false).map(Concept::AtomLabels)
                    })
                    .collect::<fixdist_core::Result<Vec<_>>>()?;
                ConceptClass::Finite { members }
            }
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GcConfigFile {
    pub class: ClassSpec,
    pub measure: Measure,
    pub mode: GcMode,
    pub ns: Vec<usize>,
    pub trials: u64,
    pub seed: u64,
    pub w_floor: f64,
    pub budget: u64,
}

impl Default for GcConfigFile {
    fn default() -> Self {
        GcConfigFile {
            class: ClassSpec::Sontag { w_min: 0.0, w_max: 1e12, alpha: DEFAULT_ALPHA },
            measure: uniform_circle(),
            mode: GcMode::Adversarial,
            ns: vec![4, 8, 16],
            trials: 500,
            seed: 20_240_602,
            w_floor: 10.0,
            budget: 100_000_000,
        }
    }
}

impl GcConfigFile {
    pub fn validate(&self) -> LabResult<()> {
        if self.ns.is_empty() || self.ns.contains(&0) {
            return Err(config_err("sample sizes must be positive"));
        }
        if self.trials == 0 {
            return Err(config_err("need at least one trial"));
        }
        self.class.resolve(&self.measure)?;
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HammingSpec {
    pub n: usize,
    pub eps: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    /// Atom masses; the family is every labeling of the atoms.
    pub masses: Vec<f64>,
    pub radius: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PackingConfig {
    pub hamming: Vec<HammingSpec>,
    pub families: Vec<FamilySpec>,
    pub seed: u64,
}

impl Default for PackingConfig {
    fn default() -> Self {
        PackingConfig {
            hamming: [50, 100, 200].into_iter().map(|n| HammingSpec { n, eps: 0.21 }).collect(),
            families: vec![FamilySpec { masses: vec![0.1; 10], radius: 0.2 }],
            seed: 20_240_603,
        }
    }
}

impl PackingConfig {
    pub fn validate(&self) -> LabResult<()> {
        for h in &self.hamming {
            if h.n == 0 || !(h.eps > 0.0 && h.eps <= 0.25) {
                return Err(config_err("hamming entries need n >= 1 and eps in (0, 1/4]"));
            }
        }
        for f in &self.families {
            if f.masses.is_empty() || f.masses.len() > 20 || f.masses.iter().any(|m| !(*m > 0.0)) {
                return Err(config_err("families need 1 to 20 positive masses"));
            }
            if !(f.radius > 0.0) {
                return Err(config_err("packing radius must be positive"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SelectionSpec {
    pub level: u32,
    /// 1-based indices of the chosen level intervals.
    pub selected: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CantorConfig {
    /// Levels whose intervals are listed.
    pub layout_levels: u32,
    /// Selections to map; when empty, every non-empty selection at levels
    /// 1 and 2.
    pub selections: Vec<SelectionSpec>,
    pub max_order: u64,
}

impl Default for CantorConfig {
    fn default() -> Self {
        CantorConfig { layout_levels: 4, selections: Vec::new(), max_order: 64 }
    }
}

impl CantorConfig {
    pub fn resolved_selections(&self) -> Vec<SelectionSpec> {
        if !self.selections.is_empty() {
            return self.selections.clone();
        }
        let mut out = Vec::new();
        for level in 1..=2u32 {
            let total = 1usize << level;
            for mask in 1u32..(1 << total) {
                let selected = (0..total).filter(|i| mask & (1 << i) != 0).map(|i| i + 1).collect();
                out.push(SelectionSpec { level, selected });
            }
        }
        out
    }

    pub fn validate(&self) -> LabResult<()> {
        if self.layout_levels > 12 {
            return Err(config_err("layout_levels is limited to 12"));
        }
        if self.max_order == 0 {
            return Err(config_err("max_order must be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FiguresConfig {
    pub alpha: f64,
    pub w: f64,
    /// Samples cover `[-x_max, x_max]`.
    pub x_max: f64,
    /// Odd, so that `x = 0` is a sample.
    pub samples: usize,
    pub cantor_levels: u32,
}

impl Default for FiguresConfig {
    fn default() -> Self {
        FiguresConfig { alpha: DEFAULT_ALPHA, w: 5.0, x_max: 10.0, samples: 4001, cantor_levels: 4 }
    }
}

impl FiguresConfig {
    pub fn validate(&self) -> LabResult<()> {
        fixdist_core::SontagParams::new(self.w, self.alpha)?;
        if self.samples < 3 || self.samples.is_multiple_of(2) {
            return Err(config_err("samples must be odd and at least 3"));
        }
        if !(self.x_max > 0.0) {
            return Err(config_err("x_max must be positive"));
        }
        if self.cantor_levels > 12 {
            return Err(config_err("cantor_levels is limited to 12"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_round_trip() {
        let text = serde_json::to_string(&GcConfigFile::default()).unwrap();
        let back: GcConfigFile = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(serde_json::from_str::<ShatterConfig>(r#"{"bogus": 1}"#).is_err());
        assert!(serde_json::from_str::<ShatterConfig>(r#"{"log_primes": 3}"#).is_ok());
        assert!(serde_json::from_str::<PackingConfig>(r#"{"hamming": [{"n": 4, "eps": 0.2, "x": 1}]}"#).is_err());
    }

    #[test]
    fn partial_configs_fill_defaults() {
        let c: ComplexityConfig = serde_json::from_str(r#"{"trials": 150}"#).unwrap();
        assert_eq!(c.trials, 150);
        assert_eq!(c.delta, 0.1);
    }

    #[test]
    fn validation() {
        let c = ShatterConfig { labels: Some(vec![1, 0]), ..ShatterConfig::default() };
        assert!(c.validate().is_err());
        let f = FiguresConfig { samples: 10, ..FiguresConfig::default() };
        assert!(f.validate().is_err());
        let g = GcConfigFile { class: ClassSpec::AllLabelings, ..GcConfigFile::default() };
        assert!(g.validate().is_err());
    }
}
