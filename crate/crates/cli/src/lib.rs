//! Command-line front end of `bjorling-core`: curve specifications, run
//! configuration, JSON reports and OBJ meshes.

pub mod config;
pub mod curve;
pub mod error;
pub mod mesh;
pub mod report;
pub mod run;

pub use config::{Cli, Command, RunConfig};
pub use error::{CliError, CliResult};
pub use report::{Check, Report, Section};
pub use run::{execute, Outcome};
