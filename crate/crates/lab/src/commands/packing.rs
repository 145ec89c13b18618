use fixdist_core::bounds::{
    bi_lower, exact_packing, greedy_packing, hamming_packing, HammingPacking, MaskFamily, PackingResult,
};
use fixdist_core::stream;
use serde::Serialize;

use super::{report, Context, RunReport};
use crate::config::PackingConfig;
use crate::error::{LabError, LabResult};
use crate::output::{finish, OutputDir};

#[derive(Serialize)]
struct HammingOut {
    n: usize,
    eps: f64,
    bound: u64,
    min_distance: u32,
    count: usize,
    verified: bool,
    /// Codewords as bit strings, bit 0 first.
    codewords: Vec<String>,
}

#[derive(Serialize)]
struct FamilyOut {
    masses: Vec<f64>,
    radius: f64,
    members: usize,
    greedy: PackingResult,
    /// Present when the family has at most 24 members.
    exact: Option<PackingResult>,
    /// `⌈lg⌉` of the greedy packing at `radius`, read as `2ε`.
    lower_bound_samples: u64,
}

#[derive(Serialize)]
struct PackingOut {
    hamming: Vec<HammingOut>,
    families: Vec<FamilyOut>,
}

fn bits(word: &[u64], n: usize) -> String {
    (0..n).map(|i| if HammingPacking::bit(word, i) { '1' } else { '0' }).collect()
}

pub fn run_packing(cfg: &PackingConfig, ctx: &Context) -> LabResult<RunReport> {
    cfg.validate()?;
    let mut hamming = Vec::new();
    for (i, h) in cfg.hamming.iter().enumerate() {
        let p = hamming_packing(h.n, h.eps, stream::derive(cfg.seed, i as u64))?;
        let verified = p.verify();
        if !verified {
            return Err(LabError::Invariant(format!("hamming packing n = {} failed verification", h.n)));
        }
        hamming.push(HammingOut {
            n: p.n,
            eps: p.eps,
            bound: p.bound,
            min_distance: p.min_distance,
            count: p.codewords.len(),
            verified,
            codewords: p.codewords.iter().map(|c| bits(c, p.n)).collect(),
        });
    }
    let mut families = Vec::new();
    for f in &cfg.families {
        let family = MaskFamily::all_labelings(&f.masses)?;
        let members = 1usize << f.masses.len();
        let greedy = greedy_packing(&family, f.radius)?;
        let exact = if members <= 24 { Some(exact_packing(&family, f.radius)?) } else { None };
        let lower_bound_samples = if f.radius < 2.0 { bi_lower(f.radius / 2.0, &family)? } else { 0 };
        families.push(FamilyOut { masses: f.masses.clone(), radius: f.radius, members, greedy, exact, lower_bound_samples });
    }
    let mut out = OutputDir::create(&ctx.out)?;
    out.json("packing.json", &PackingOut { hamming, families })?;
    finish(&mut out, "packing", cfg, Some(cfg.seed))?;
    report(&out, Vec::new(), ctx.strict)
}
