//! File formats and subcommands for the `sparks` tool.

pub mod commands;
pub mod format;
