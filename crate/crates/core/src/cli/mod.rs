//! Configuration files, subcommands and their output files.

pub mod checks;
pub mod config;
pub mod engine;
pub mod run;
pub mod units;
