use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fixdist::commands::{self, Context, RunReport};
use fixdist::config::{self, load};
use fixdist::{LabResult, Rayon};

#[derive(Parser)]
#[command(name = "fixdist", version, about = "Fixed-distribution learning experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// JSON config; defaults are used for missing keys or a missing file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Overrides the config's seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    /// Exit with status 3 when a search budget is exhausted.
    #[arg(long, global = true)]
    strict: bool,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Build the atomic measure for a schedule and its bound profile.
    Construct,
    /// Estimate sample complexity at each level accuracy.
    Complexity,
    /// Search weights realizing labelings of points.
    Shatter,
    /// Pairwise L1 distances of a concept family.
    Distances,
    /// Deviation between true and empirical means.
    Gc,
    /// Hamming-cube and labeling-family packings.
    Packing,
    /// Cantor layout and interval-union feasibility map.
    Cantor,
    /// Plot data for the activation, the hidden response and Cantor levels.
    Figures,
}

fn run(cli: &Cli) -> LabResult<RunReport> {
    let ctx = Context { out: cli.out.clone(), strict: cli.strict, runner: Rayon::new(cli.threads)? };
    let path = cli.config.as_deref();
    match cli.command {
        Command::Construct => commands::run_construct(&load(path)?, &ctx),
        Command::Complexity => {
            let mut c: config::ComplexityConfig = load(path)?;
            c.seed = cli.seed.unwrap_or(c.seed);
            commands::run_complexity(&c, &ctx)
        }
        Command::Shatter => commands::run_shatter(&load(path)?, &ctx),
        Command::Distances => commands::run_distances(&load(path)?, &ctx),
        Command::Gc => {
            let mut c: config::GcConfigFile = load(path)?;
            c.seed = cli.seed.unwrap_or(c.seed);
            commands::run_gc(&c, &ctx)
        }
        Command::Packing => {
            let mut c: config::PackingConfig = load(path)?;
            c.seed = cli.seed.unwrap_or(c.seed);
            commands::run_packing(&c, &ctx)
        }
        Command::Cantor => commands::run_cantor(&load(path)?, &ctx),
        Command::Figures => commands::run_figures(&load(path)?, &ctx),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            for note in &report.exhausted {
                eprintln!("warning: budget exhausted: {note}");
            }
            println!("wrote {} to {}", report.files.join(", "), cli.out.display());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
