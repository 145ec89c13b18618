use fixdist_core::construction::{build_measure, theoretical_profile, ComplexityProfile};
use fixdist_core::learner::{
    estimate_sample_complexity, ComplexityEstimate, EstimateConfig, EstimateStatus, LearningProblem,
};
use serde::Serialize;

use super::{report, Context, RunReport};
use crate::config::ComplexityConfig;
use crate::error::LabResult;
use crate::output::{finish, real, OutputDir};

#[derive(Serialize)]
struct Summary {
    /// The episode protocol is this tool's own: uniform random targets over
    /// the level atoms, residual atom fixed to 0, per-atom vote learner.
    protocol: &'static str,
    profile: ComplexityProfile,
    estimates: Vec<ComplexityEstimate>,
}

pub const PROTOCOL: &str = "uniform random target labeling of level atoms (residual atom labeled 0); \
per-atom majority-vote learner; failure = exact error > eps; smallest n with failure frequency <= delta";

pub fn run_complexity(cfg: &ComplexityConfig, ctx: &Context) -> LabResult<RunReport> {
    cfg.validate()?;
    let instance = build_measure(&cfg.schedule)?;
    let profile = theoretical_profile(&instance, cfg.delta)?;
    let problem = LearningProblem::from_instance(&instance);
    let eps_grid: Vec<f64> = if cfg.eps.is_empty() {
        instance.levels.iter().map(|l| l.eps).collect()
    } else {
        cfg.eps.clone()
    };
    let est_cfg = EstimateConfig { trials: cfg.trials, n_cap: cfg.n_cap, seed: cfg.seed };
    let mut estimates = Vec::with_capacity(eps_grid.len());
    let mut rows = Vec::new();
    let mut exhausted = Vec::new();
    for &eps in &eps_grid {
        let e = estimate_sample_complexity(&problem, eps, cfg.delta, &est_cfg, &ctx.runner)?;
        if e.status == EstimateStatus::CapReached {
            exhausted.push(format!("eps {eps}: failure rate above delta at n_cap {}", cfg.n_cap));
        }
        let n_hat = e.n_hat.map(|n| n.to_string()).unwrap_or_default();
        for p in &e.probes {
            let (lo, hi) = fixdist_core::math::wilson_interval(p.failures, e.trials);
            rows.push(vec![
                real(eps),
                real(cfg.delta),
                p.n.to_string(),
                p.failures.to_string(),
                e.trials.to_string(),
                n_hat.clone(),
                real(lo),
                real(hi),
                cfg.seed.to_string(),
            ]);
        }
        estimates.push(e);
    }
    let mut out = OutputDir::create(&ctx.out)?;
    out.csv(
        "complexity.csv",
        &["eps", "delta", "n_probed", "failures", "trials", "n_hat", "ci_lo", "ci_hi", "seed"],
        &rows,
    )?;
    out.json("complexity.json", &Summary { protocol: PROTOCOL, profile, estimates })?;
    finish(&mut out, "complexity", cfg, Some(cfg.seed))?;
    report(&out, exhausted, ctx.strict)
}
