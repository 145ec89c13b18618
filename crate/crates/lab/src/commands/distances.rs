use fixdist_core::concepts::l1_distance_with;
use fixdist_core::exec::TrialRunner;
use fixdist_core::measures::{IntegrationConfig, IntegrationMethod, IntegrationWarning};
use serde::Serialize;

use super::{report, Context, RunReport};
use crate::config::DistancesConfig;
use crate::error::LabResult;
use crate::output::{finish, real, OutputDir};

#[derive(Serialize)]
struct PairNote {
    i: usize,
    j: usize,
    method: IntegrationMethod,
    warning: Option<IntegrationWarning>,
}

#[derive(Serialize)]
struct DistancesOut {
    labels: Vec<String>,
    measure: String,
    /// Pairs not integrated exactly.
    approximate: Vec<PairNote>,
}

pub fn run_distances(cfg: &DistancesConfig, ctx: &Context) -> LabResult<RunReport> {
    cfg.validate()?;
    let concepts = cfg.resolved()?;
    let n = concepts.len();
    let icfg = IntegrationConfig::default();
    let rows = ctx.runner.map(n as u64, |i| {
        let i = i as usize;
        (0..n)
            .map(|j| {
                if i == j {
                    None
                } else {
                    Some(l1_distance_with(&concepts[i].1, &concepts[j].1, &cfg.measure, &icfg))
                }
            })
            .collect::<Vec<_>>()
    });
    let mut csv_rows = Vec::with_capacity(n);
    let mut approximate = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let mut r = vec![concepts[i].0.clone()];
        for (j, est) in row.iter().enumerate() {
            match est {
                None => r.push(real(0.0)),
                Some(e) => {
                    r.push(real(e.value));
                    if i < j && (e.method != IntegrationMethod::Exact || e.warning.is_some()) {
                        approximate.push(PairNote { i, j, method: e.method, warning: e.warning });
                    }
                }
            }
        }
        csv_rows.push(r);
    }
    let labels: Vec<String> = concepts.iter().map(|c| c.0.clone()).collect();
    let mut header = vec!["concept"];
    header.extend(labels.iter().map(String::as_str));
    let mut out = OutputDir::create(&ctx.out)?;
    out.csv("distances.csv", &header, &csv_rows)?;
    out.json("distances.json", &DistancesOut { labels: labels.clone(), measure: cfg.measure.describe(), approximate })?;
    finish(&mut out, "distances", cfg, None)?;
    report(&out, Vec::new(), ctx.strict)
}
