//! Fixed-distribution PAC learning laboratory.
//!
//! Probability measures on the real line, concept classes and their
//! `L¹(μ)` geometry, Sontag's binary-output sigmoidal network with an exact
//! weight-search sweep, Benedek–Itai covering/packing bounds, the
//! arbitrary-rate measure construction, and a minimal-empirical-risk learner
//! with Monte-Carlo sample-complexity and Glivenko–Cantelli estimators.
//!
//! The crate is `no_std` and only needs `alloc`. IO, file formats and thread
//! pools live in the `fixdist` companion crate; everything here that runs
//! many independent trials goes through [`exec::TrialRunner`] so a caller can
//! supply a parallel executor without changing results.
#![cfg_attr(not(test), no_std)]
#![deny(unsafe_code)]
#![warn(missing_debug_implementations)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod bounds;
pub mod concepts;
pub mod construction;
pub mod error;
pub mod exec;
pub mod learner;
pub mod math;
pub mod measures;
pub mod region;
pub mod sontag;
pub mod stream;

pub use concepts::Concept;
pub use error::{Error, Result};
pub use measures::{AtomicMeasure, Measure};
pub use sontag::SontagParams;

/// Crate version, recorded in run manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
