use fixdist_core::construction::{
    build_measure, sontag_instance, theoretical_profile, ComplexityProfile, ConstructionWarning, LevelCensus,
    SontagInstanceConfig,
};
use fixdist_core::sontag::SearchConfig;
use serde::Serialize;

use super::{report, Context, RunReport};
use crate::config::ConstructConfig;
use crate::error::LabResult;
use crate::output::{finish, OutputDir};

#[derive(Serialize)]
struct LevelOut {
    k: usize,
    eps: f64,
    f_value: u64,
    atom_count: usize,
    mass: f64,
    atom_mass: f64,
    atoms: Vec<f64>,
}

#[derive(Serialize)]
struct CensusOut {
    k: usize,
    atoms: usize,
    realized: Option<u64>,
    total: Option<u64>,
    budget_exceeded: Option<u64>,
}

#[derive(Serialize)]
struct ConstructOut {
    levels: Vec<LevelOut>,
    residual_location: f64,
    residual_mass: f64,
    total_mass: f64,
    warnings: Vec<ConstructionWarning>,
    linear_constant: f64,
    profile: ComplexityProfile,
    censuses: Vec<CensusOut>,
}

pub fn run_construct(cfg: &ConstructConfig, ctx: &Context) -> LabResult<RunReport> {
    cfg.validate()?;
    let instance = build_measure(&cfg.schedule)?;
    let profile = theoretical_profile(&instance, cfg.delta)?;
    let mut exhausted = Vec::new();
    let censuses = if cfg.census {
        let sc = SontagInstanceConfig {
            w_max: cfg.w_max,
            alpha: cfg.alpha,
            search: SearchConfig { w_min: 0.0, budget: cfg.budget },
        };
        let si = sontag_instance(&instance, &sc, &ctx.runner)?;
        si.censuses
            .iter()
            .map(|c| match c {
                LevelCensus::Done { k, atoms, census } => {
                    if census.budget_exceeded > 0 {
                        exhausted.push(format!("census of level union {k}: {} searches", census.budget_exceeded));
                    }
                    CensusOut {
                        k: *k,
                        atoms: *atoms,
                        realized: Some(census.realized),
                        total: Some(census.total),
                        budget_exceeded: Some(census.budget_exceeded),
                    }
                }
                LevelCensus::Skipped { k, atoms } => {
                    CensusOut { k: *k, atoms: *atoms, realized: None, total: None, budget_exceeded: None }
                }
            })
            .collect()
    } else {
        Vec::new()
    };
    let out_value = ConstructOut {
        levels: instance
            .levels
            .iter()
            .map(|l| LevelOut {
                k: l.k,
                eps: l.eps,
                f_value: l.f_value,
                atom_count: l.atoms.len(),
                mass: l.mass,
                atom_mass: l.atom_mass(),
                atoms: l.atoms.clone(),
            })
            .collect(),
        residual_location: instance.residual.location,
        residual_mass: instance.residual.mass,
        total_mass: instance.measure().total_mass(),
        warnings: instance.warnings.clone(),
        linear_constant: cfg.schedule.linear_constant(),
        profile,
        censuses,
    };
    let mut out = OutputDir::create(&ctx.out)?;
    out.json("construct.json", &out_value)?;
    finish(&mut out, "construct", cfg, None)?;
    report(&out, exhausted, ctx.strict)
}
