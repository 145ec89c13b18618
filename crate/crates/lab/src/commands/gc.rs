use fixdist_core::learner::{gc_deviation, GcConfig, GcStats};

use super::{report, Context, RunReport};
use crate::config::GcConfigFile;
use crate::error::LabResult;
use crate::output::{finish, real, OutputDir};

pub fn run_gc(cfg: &GcConfigFile, ctx: &Context) -> LabResult<RunReport> {
    cfg.validate()?;
    let class = cfg.class.resolve(&cfg.measure)?;
    let mut stats: Vec<GcStats> = Vec::with_capacity(cfg.ns.len());
    let mut exhausted = Vec::new();
    for &n in &cfg.ns {
        let mut g = GcConfig::new(cfg.mode, n, cfg.trials, cfg.seed);
        g.w_floor = cfg.w_floor;
        g.search_budget = cfg.budget;
        let s = gc_deviation(&class, &cfg.measure, &g, &ctx.runner)?;
        if s.flagged > 0 {
            exhausted.push(format!("n = {n}: {} trials without a witness", s.flagged));
        }
        stats.push(s);
    }
    let summary: Vec<Vec<String>> = stats
        .iter()
        .map(|s| {
            vec![
                s.n.to_string(),
                serde_json::to_value(s.mode).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default(),
                s.trials.to_string(),
                s.flagged.to_string(),
                real(s.mean),
                real(s.median),
                real(s.max),
                cfg.seed.to_string(),
            ]
        })
        .collect();
    let trials: Vec<Vec<String>> = stats
        .iter()
        .flat_map(|s| s.deviations.iter().enumerate().map(move |(i, d)| vec![s.n.to_string(), i.to_string(), real(*d)]))
        .collect();
    let mut out = OutputDir::create(&ctx.out)?;
    out.csv("gc.csv", &["n", "mode", "trials", "flagged", "mean", "median", "max", "seed"], &summary)?;
    out.csv("gc_trials.csv", &["n", "trial", "deviation"], &trials)?;
    finish(&mut out, "gc", cfg, Some(cfg.seed))?;
    report(&out, exhausted, ctx.strict)
}
