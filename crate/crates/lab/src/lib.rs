//! Experiment driver for `fixdist-core`.
//!
//! Each subcommand reads a JSON config (unknown keys are rejected), runs on
//! a rayon pool and writes CSV/JSON results plus a `manifest.json` into an
//! output directory. Outputs depend only on the resolved config, so
//! re-running `config.json` from an output directory reproduces them byte
//! for byte.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod runner;

pub use error::{LabError, LabResult};
pub use runner::Rayon;
