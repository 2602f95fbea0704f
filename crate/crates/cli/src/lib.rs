//! Instance files, reports and the `hnf` command set.

pub mod commands;
pub mod instance;
pub mod output;
