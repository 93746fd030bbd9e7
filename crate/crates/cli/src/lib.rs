//! Front end for the pairgeom library: run configuration, verification
//! suites, enumeration listings, closures and experiments.

pub mod commands;
pub mod config;
pub mod report;
pub mod rng;
pub mod suites;

pub use config::{CliError, RunConfig};
pub use report::{Check, SuiteReport};
