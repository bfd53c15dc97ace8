//! Command-line front end: definition files, reports and subcommands.

pub mod commands;
pub mod format;
pub mod report;
