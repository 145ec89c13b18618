//! Subcommand implementations. Each validates its config, computes, writes
//! its outputs and the manifest, and reports whether a search budget ran
//! out.

mod cantor;
mod complexity;
mod construct;
mod distances;
mod figures;
mod gc;
mod packing;
mod shatter;

use std::path::PathBuf;

pub use cantor::run_cantor;
pub use complexity::run_complexity;
pub use construct::run_construct;
pub use distances::run_distances;
pub use figures::run_figures;
pub use gc::run_gc;
pub use packing::run_packing;
pub use shatter::run_shatter;

use crate::error::{LabError, LabResult};
use crate::runner::Rayon;

#[derive(Debug)]
pub struct Context {
    pub out: PathBuf,
    pub strict: bool,
    pub runner: Rayon,
}

/// What a finished run reports back.
#[derive(Debug, Default)]
pub struct RunReport {
    pub files: Vec<String>,
    /// Descriptions of searches or estimates that hit their budget.
    pub exhausted: Vec<String>,
}

impl RunReport {
    /// In strict mode an exhausted budget is an error (after outputs are
    /// written).
    pub fn into_result(self, strict: bool) -> LabResult<RunReport> {
        if strict && !self.exhausted.is_empty() {
            return Err(LabError::Budget(self.exhausted.join("; ")));
        }
        Ok(self)
    }
}

fn report(out: &crate::output::OutputDir, exhausted: Vec<String>, strict: bool) -> LabResult<RunReport> {
    RunReport { files: out.files().iter().map(|f| f.file.clone()).collect(), exhausted }.into_result(strict)
}
