use fixdist_core::concepts::{cantor_shatter_search, CantorShatterConfig, CantorShatterReport, CantorShatterStatus};
use fixdist_core::measures::cantor::level_intervals;
use serde::Serialize;

use super::{report, Context, RunReport};
use crate::config::CantorConfig;
use crate::error::{LabError, LabResult};
use crate::output::{finish, real, OutputDir};

#[derive(Serialize)]
struct CantorOut {
    reports: Vec<CantorShatterReport>,
}

fn selection_label(selected: &[usize]) -> String {
    selected.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

pub fn run_cantor(cfg: &CantorConfig, ctx: &Context) -> LabResult<RunReport> {
    cfg.validate()?;
    let mut layout = Vec::new();
    for level in 0..=cfg.layout_levels {
        for (i, iv) in level_intervals(level).iter().enumerate() {
            layout.push(vec![level.to_string(), (i + 1).to_string(), real(iv.lo()), real(iv.hi()), real(iv.mass())]);
        }
    }
    let search_cfg = CantorShatterConfig { max_order: cfg.max_order.max(1), ..CantorShatterConfig::default() };
    let mut reports = Vec::new();
    let mut map = Vec::new();
    let mut exhausted = Vec::new();
    for sel in cfg.resolved_selections() {
        for order in 1..=cfg.max_order {
            let r = cantor_shatter_search(sel.level, order, &sel.selected, &search_cfg)?;
            let (status, forced, allowed) = match &r.status {
                CantorShatterStatus::Feasible { cells, .. } => {
                    if !fixdist_core::concepts::verify_cantor_witness(sel.level, order, &r.selected, cells) {
                        return Err(LabError::Invariant("cantor witness failed verification".into()));
                    }
                    ("feasible", cells.len() as u64, fixdist_core::math::max_strictly_below_sqrt(order))
                }
                CantorShatterStatus::Infeasible { certificate } => {
                    ("infeasible", certificate.forced_cells, certificate.allowed)
                }
                CantorShatterStatus::Unchecked { reason } => {
                    exhausted.push(reason.clone());
                    ("unchecked", 0, 0)
                }
            };
            map.push(vec![
                sel.level.to_string(),
                selection_label(&r.selected),
                order.to_string(),
                status.to_string(),
                forced.to_string(),
                allowed.to_string(),
            ]);
            reports.push(r);
        }
    }
    let mut out = OutputDir::create(&ctx.out)?;
    out.csv("cantor_layout.csv", &["level", "index", "lo", "hi", "mass"], &layout)?;
    out.csv("cantor_map.csv", &["level", "selected", "order", "status", "forced_cells", "allowed"], &map)?;
    out.json("cantor.json", &CantorOut { reports })?;
    finish(&mut out, "cantor", cfg, None)?;
    report(&out, exhausted, ctx.strict)
}
