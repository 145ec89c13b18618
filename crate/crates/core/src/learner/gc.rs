use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::concepts::{isolate_points, Concept, ConceptClass};
use crate::error::{Error, Result};
use crate::exec::TrialRunner;
use crate::math;
use crate::measures::{IntegrationConfig, Measure};
use crate::sontag::{shatter_search, SearchConfig, SearchStatus, SontagParams};
use crate::stream;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GcMode {
    /// Supremum over an explicitly listed class.
    Census,
    /// A concept fitted to the all-ones labeling of each sample.
    Adversarial,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GcConfig {
    pub mode: GcMode,
    pub n: usize,
    pub trials: u64,
    pub seed: u64,
    /// Adversarial Sontag witnesses are searched at weights of at least
    /// this much, which rules out the constant concept at `w = 0`.
    pub w_floor: f64,
    pub search_budget: u64,
    pub integration: IntegrationConfig,
}

impl GcConfig {
    pub fn new(mode: GcMode, n: usize, trials: u64, seed: u64) -> Self {
        GcConfig {
            mode,
            n,
            trials,
            seed,
            w_floor: 10.0,
            search_budget: SearchConfig::default().budget,
            integration: IntegrationConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GcStats {
    pub mode: GcMode,
    pub n: usize,
    pub trials: u64,
    /// Per-trial deviations of the trials that were not flagged, in trial
    /// order.
    pub deviations: Vec<f64>,
    pub mean: f64,
    pub median: f64,
    pub max: f64,
    /// Trials where no adversarial witness was found.
    pub flagged: u64,
}

/// Distinct points with multiplicities.
fn histogram(mut xs: Vec<f64>) -> Vec<(f64, u64)> {
    xs.sort_by(f64::total_cmp);
    let mut out: Vec<(f64, u64)> = Vec::new();
    for x in xs {
        match out.last_mut() {
            Some((y, c)) if *y == x => *c += 1,
            _ => out.push((x, 1)),
        }
    }
    out
}

fn census_trial(members: &[Concept], truth: &[f64], sample: Vec<f64>) -> f64 {
    let n = sample.len() as f64;
    let hist = histogram(sample);
    members
        .iter()
        .zip(truth)
        .map(|(c, &t)| {
            let hits: u64 = hist.iter().filter(|(x, _)| c.member(*x)).map(|(_, k)| k).sum();
            math::fabs(t - hits as f64 / n)
        })
        .fold(0.0, f64::max)
}

fn adversarial_trial(class: &ConceptClass, measure: &Measure, cfg: &GcConfig, sample: Vec<f64>) -> Result<Option<f64>> {
    let points: Vec<f64> = histogram(sample).into_iter().map(|(x, _)| x).collect();
    let concept = match class {
        ConceptClass::Sontag { w_min, w_max, alpha } => {
            let search = SearchConfig { w_min: w_min.max(cfg.w_floor), budget: cfg.search_budget };
            if search.w_min > *w_max {
                return Ok(None);
            }
            let labels = alloc::vec![true; points.len()];
            let outcome = shatter_search(&points, &labels, *w_max, *alpha, &search)?;
            match (outcome.status, outcome.witness_w) {
                (SearchStatus::Found, Some(w)) => Concept::Sontag(SontagParams::new(w, *alpha)?),
                _ => return Ok(None),
            }
        }
        ConceptClass::OrderIntervals => isolate_points(&points)?.1,
        ConceptClass::Finite { .. } => {
            return Err(Error::Unsupported("adversarial mode needs the Sontag or order-interval class".into()))
        }
    };
    if !points.iter().all(|&x| concept.member(x)) {
        return Err(Error::Invariant("adversarial concept misses a sample point".into()));
    }
    let value = measure.expect_indicator_with(&concept, &cfg.integration).value;
    Ok(Some(math::fabs(1.0 - value)))
}

/// Deviation between true and empirical means over a class, per trial.
///
/// Census mode computes `max_c |E_μ c − E_{μ_n} c|` over a listed class.
/// Adversarial mode fits a class member to the all-ones labeling of the
/// sample, whose empirical mean is therefore 1, and reports `|1 − E_μ c|`.
pub fn gc_deviation<R: TrialRunner>(
    class: &ConceptClass,
    measure: &Measure,
    cfg: &GcConfig,
    runner: &R,
) -> Result<GcStats> {
    if cfg.n == 0 || cfg.trials == 0 {
        return Err(crate::error::arg("need n >= 1 and at least one trial"));
    }
    let results: Vec<Result<Option<f64>>> = match cfg.mode {
        GcMode::Census => {
            let members = class
                .finite()
                .ok_or_else(|| Error::Unsupported("census mode needs a listed class".into()))?;
            let truth: Vec<f64> = members
                .iter()
                .map(|c| measure.expect_indicator_with(c, &cfg.integration).value)
                .collect();
            runner.map(cfg.trials, |t| {
                let sample = measure.sample(stream::derive(cfg.seed, t), cfg.n)?;
                Ok(Some(census_trial(members, &truth, sample)))
            })
        }
        GcMode::Adversarial => runner.map(cfg.trials, |t| {
            let sample = measure.sample(stream::derive(cfg.seed, t), cfg.n)?;
            adversarial_trial(class, measure, cfg, sample)
        }),
    };
    let mut deviations = Vec::with_capacity(results.len());
    let mut flagged = 0;
    for r in results {
        match r? {
            Some(d) => deviations.push(d),
            None => flagged += 1,
        }
    }
    let (mean, median, max) = if deviations.is_empty() {
        (f64::NAN, f64::NAN, f64::NAN)
    } else {
        (
            deviations.iter().sum::<f64>() / deviations.len() as f64,
            math::median(&deviations).expect("non-empty"),
            deviations.iter().copied().fold(0.0, f64::max),
        )
    };
    Ok(GcStats { mode: cfg.mode, n: cfg.n, trials: cfg.trials, deviations, mean, median, max, flagged })
}
