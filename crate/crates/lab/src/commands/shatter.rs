use fixdist_core::sontag::{shatter_census, shatter_search, SearchConfig, SearchStatus, ShatterOutcome};
use serde::Serialize;

use super::{report, Context, RunReport};
use crate::config::ShatterConfig;
use crate::error::LabResult;
use crate::output::{finish, OutputDir};

#[derive(Serialize)]
struct ShatterOut {
    points: Vec<f64>,
    w_max: f64,
    alpha: f64,
    realized: u64,
    total: u64,
    budget_exceeded: u64,
    outcomes: Vec<ShatterOutcome>,
}

pub fn run_shatter(cfg: &ShatterConfig, ctx: &Context) -> LabResult<RunReport> {
    cfg.validate()?;
    let points = cfg.resolved_points();
    let search = SearchConfig { w_min: cfg.w_min, budget: cfg.budget };
    let outcomes = match &cfg.labels {
        Some(labels) => {
            let labels: Vec<bool> = labels.iter().map(|&b| b == 1).collect();
            vec![shatter_search(&points, &labels, cfg.w_max, cfg.alpha, &search)?]
        }
        None => shatter_census(&points, cfg.w_max, cfg.alpha, &search, &ctx.runner)?.outcomes,
    };
    let count = |s: SearchStatus| outcomes.iter().filter(|o| o.status == s).count() as u64;
    let budget_exceeded = count(SearchStatus::BudgetExceeded);
    let value = ShatterOut {
        points,
        w_max: cfg.w_max,
        alpha: cfg.alpha,
        realized: count(SearchStatus::Found),
        total: outcomes.len() as u64,
        budget_exceeded,
        outcomes,
    };
    let mut exhausted = Vec::new();
    if budget_exceeded > 0 {
        exhausted.push(format!("{budget_exceeded} labelings hit the breakpoint budget"));
    }
    let mut out = OutputDir::create(&ctx.out)?;
    out.json("shatter.json", &value)?;
    finish(&mut out, "shatter", cfg, None)?;
    report(&out, exhausted, ctx.strict)
}
