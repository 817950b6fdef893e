//! `agcb`: command-line surface over the two-point AG-code bound engines.
//!
//! Commands: `selftest`, `table build`, `bounds`, `reproduce`, `audit`.
//! Exit codes: 0 pass, 1 mismatch/violation, 2 usage. Identical
//! configuration produces byte-identical output, independent of the worker
//! pool size.

pub mod commands;
pub mod goldens;

pub use commands::{
    cmd_audit, cmd_bounds, cmd_reproduce, cmd_selftest, cmd_table_build, improvement_sweep,
    parse_divisor, CliError, Format, Report, RunConfig, CACHE_ENV,
};
