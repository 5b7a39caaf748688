//! Experiment harness and command-line front end for `npoint-core`.
//!
//! Configurations are JSON (see `docs/config.md`), results are CSV or JSON
//! tables headed by the SHA-256 of the resolved configuration, and all
//! concurrent work merges in a fixed order so output does not depend on
//! the number of workers.

pub mod cli;
pub mod commands;
pub mod config;
pub mod error;
pub mod experiments;
pub mod output;
pub mod parallel;

pub use error::CliError;
pub use npoint_core as core;
