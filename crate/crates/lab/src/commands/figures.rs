use fixdist_core::measures::cantor::level_intervals;
use fixdist_core::sontag::{net_output, phi, rho};
use fixdist_core::SontagParams;

use super::{report, Context, RunReport};
use crate::config::FiguresConfig;
use crate::error::LabResult;
use crate::output::{finish, real, OutputDir};

/// Samples of `φ`, `ρ` and the network output on a symmetric grid, and the
/// Cantor construction layout, for external plotting.
pub fn run_figures(cfg: &FiguresConfig, ctx: &Context) -> LabResult<RunReport> {
    cfg.validate()?;
    let params = SontagParams::new(cfg.w, cfg.alpha)?;
    let half = (cfg.samples / 2) as i64;
    let xs: Vec<f64> = (-half..=half).map(|i| cfg.x_max * i as f64 / half as f64).collect();
    let phi_rows: Vec<Vec<String>> = xs.iter().map(|&x| vec![real(x), real(phi(x, cfg.alpha))]).collect();
    let rho_rows: Vec<Vec<String>> = xs
        .iter()
        .map(|&x| {
            vec![
                real(x),
                real(rho(x, cfg.w, cfg.alpha)),
                u8::from(net_output(x, &params)).to_string(),
            ]
        })
        .collect();
    let mut cantor_rows = Vec::new();
    for level in 0..=cfg.cantor_levels {
        for (i, iv) in level_intervals(level).iter().enumerate() {
            cantor_rows.push(vec![level.to_string(), (i + 1).to_string(), real(iv.lo()), real(iv.hi())]);
        }
    }
    let mut out = OutputDir::create(&ctx.out)?;
    out.csv("figure_phi.csv", &["x", "phi"], &phi_rows)?;
    out.csv("figure_rho.csv", &["x", "rho", "output"], &rho_rows)?;
    out.csv("figure_cantor.csv", &["level", "index", "lo", "hi"], &cantor_rows)?;
    finish(&mut out, "figures", cfg, None)?;
    report(&out, Vec::new(), ctx.strict)
}
