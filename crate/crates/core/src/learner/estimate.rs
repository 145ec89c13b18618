use alloc::vec::Vec;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{Hypothesis, LabeledSample};
use crate::concepts::{AtomLabeling, Concept};
use crate::construction::ConstructedInstance;
use crate::error::{arg, Error, Result};
use crate::exec::TrialRunner;
use crate::math;
use crate::measures::AtomicMeasure;
use crate::stream;

/// An atomic universe together with the atoms whose target label is drawn
/// at random; the remaining atoms are always labeled 0.
#[derive(Debug, Clone)]
pub struct LearningProblem {
    measure: AtomicMeasure,
    random: Vec<bool>,
}

impl LearningProblem {
    /// Every atom gets a random target label.
    pub fn free(measure: AtomicMeasure) -> Self {
        let random = alloc::vec![true; measure.len()];
        LearningProblem { measure, random }
    }

    /// Level atoms are random, the residual atom is fixed to 0.
    pub fn from_instance(instance: &ConstructedInstance) -> Self {
        let measure = instance.measure().clone();
        let random = measure
            .atoms()
            .iter()
            .map(|a| a.location != instance.residual.location)
            .collect();
        LearningProblem { measure, random }
    }

    pub fn measure(&self) -> &AtomicMeasure {
        &self.measure
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EstimateConfig {
    pub trials: u64,
    /// Largest sample size probed.
    pub n_cap: u64,
    pub seed: u64,
}

impl Default for EstimateConfig {
    fn default() -> Self {
        EstimateConfig { trials: 400, n_cap: 1 << 22, seed: 0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Probe {
    pub n: u64,
    pub failures: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EstimateStatus {
    Converged,
    /// The failure rate stayed above δ up to `n_cap`.
    CapReached,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexityEstimate {
    pub eps: f64,
    pub delta: f64,
    pub n_hat: Option<u64>,
    pub trials: u64,
    pub failures_at_n_hat: u64,
    pub failure_rate_at_n_hat: f64,
    /// Wilson 95% interval for the failure probability at `n_hat` (at the
    /// cap when not converged).
    pub confidence_interval: (f64, f64),
    pub seed: u64,
    pub status: EstimateStatus,
    /// Sample sizes probed, in probing order.
    pub probes: Vec<Probe>,
}

/// Smallest `n ≤ cap` at which one episode's hypothesis has error at most
/// `eps`, or `None`.
///
/// The episode draws its target first and then a single stream of points,
/// so the sample of size `n` is a prefix of the sample of size `n + 1`.
/// With consistent labels the per-atom vote recovers the target on every
/// seen atom, so the error only falls as `n` grows.
fn episode(problem: &LearningProblem, eps: f64, cap: u64, seed: u64) -> Result<Option<u64>> {
    let mu = &problem.measure;
    let mut rng = stream::rng(seed);
    let target: Vec<bool> = problem.random.iter().map(|&r| r && rng.random::<bool>()).collect();
    let masses: Vec<f64> = mu.atoms().iter().map(|a| a.mass).collect();
    let exact_error = |votes: &[i64]| -> f64 {
        (0..masses.len())
            .filter(|&i| (votes[i] > 0) != target[i])
            .map(|i| masses[i])
            .sum()
    };

    let mut votes = alloc::vec![0i64; masses.len()];
    let mut remaining: f64 = (0..masses.len()).filter(|&i| target[i]).map(|i| masses[i]).sum();
    let mut n = 0u64;
    loop {
        // the running sum only triggers an exact recount near the threshold
        if remaining <= eps + 1e-9 && exact_error(&votes) <= eps {
            check_episode(problem, &target, &votes, exact_error(&votes))?;
            return Ok(Some(n));
        }
        if n >= cap {
            return Ok(None);
        }
        let i = mu.index_for(rng.random::<f64>());
        if votes[i] == 0 && target[i] {
            remaining -= masses[i];
        }
        votes[i] += if target[i] { 1 } else { -1 };
        n += 1;
    }
}

/// Rebuilds the episode's hypothesis through the public learner and checks
/// zero empirical risk and the error accounting.
fn check_episode(problem: &LearningProblem, target: &[bool], votes: &[i64], error: f64) -> Result<()> {
    let mu = &problem.measure;
    let locations = mu.locations();
    let mut points = Vec::new();
    let mut labels = Vec::new();
    for (i, &v) in votes.iter().enumerate() {
        let seen = v.unsigned_abs().min(1);
        for _ in 0..seen {
            points.push(locations[i]);
            labels.push(target[i]);
        }
    }
    let sample = LabeledSample::new(points, labels)?;
    let h: Hypothesis = super::erm_learn(&sample, mu)?;
    let target_concept = Concept::AtomLabels(AtomLabeling::new(locations, target.to_vec(), false)?);
    if h.empirical_risk(&sample) != 0.0 {
        return Err(Error::Invariant("minimal-risk hypothesis misfits a consistent sample".into()));
    }
    let direct = super::true_error(&h, &target_concept, mu);
    if (direct - error).abs() > 1e-12 {
        return Err(Error::Invariant("episode error disagrees with the learner".into()));
    }
    Ok(())
}

/// Smallest sample size at which minimal-risk learning fails (error above
/// `eps`) in at most a `delta` fraction of `cfg.trials` random episodes.
///
/// Targets are uniform over labelings of the problem's random atoms. Sizes
/// are probed by doubling and then bisection; because every episode's error
/// is non-increasing along its sample stream, the result is the exact
/// smallest such size for the drawn episodes.
pub fn estimate_sample_complexity<R: TrialRunner>(
    problem: &LearningProblem,
    eps: f64,
    delta: f64,
    cfg: &EstimateConfig,
    runner: &R,
) -> Result<ComplexityEstimate> {
    if !(eps > 0.0) {
        return Err(arg("eps must be positive"));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(arg("delta must lie in (0, 1)"));
    }
    if cfg.trials < 100 {
        return Err(arg("at least 100 trials are required"));
    }
    let firsts = runner
        .map(cfg.trials, |t| episode(problem, eps, cfg.n_cap, stream::derive(cfg.seed, t)))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let failures = |n: u64| firsts.iter().filter(|f| f.is_none_or(|s| s > n)).count() as u64;
    let accept = |f: u64| f as f64 / cfg.trials as f64 <= delta;

    let mut probes = Vec::new();
    let mut probe = |n: u64| {
        let f = failures(n);
        probes.push(Probe { n, failures: f });
        f
    };

    let mut lo: Option<u64> = None;
    let mut hi = 0u64;
    loop {
        if accept(probe(hi)) {
            break;
        }
        if hi >= cfg.n_cap {
            let f = failures(cfg.n_cap);
            return Ok(ComplexityEstimate {
                eps,
                delta,
                n_hat: None,
                trials: cfg.trials,
                failures_at_n_hat: f,
                failure_rate_at_n_hat: f as f64 / cfg.trials as f64,
                confidence_interval: math::wilson_interval(f, cfg.trials),
                seed: cfg.seed,
                status: EstimateStatus::CapReached,
                probes,
            });
        }
        lo = Some(hi);
        hi = if hi == 0 { 1 } else { (2 * hi).min(cfg.n_cap) };
    }
    if let Some(mut lo) = lo {
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if accept(probe(mid)) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
    }
    let f = failures(hi);
    Ok(ComplexityEstimate {
        eps,
        delta,
        n_hat: Some(hi),
        trials: cfg.trials,
        failures_at_n_hat: f,
        failure_rate_at_n_hat: f as f64 / cfg.trials as f64,
        confidence_interval: math::wilson_interval(f, cfg.trials),
        seed: cfg.seed,
        status: EstimateStatus::Converged,
        probes,
    })
}
