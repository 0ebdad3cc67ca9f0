//! Library side of the `addcomb` command-line tool: report envelope, JSON
//! input formats, seeded samplers, subcommand runners, and the named
//! verification sweeps the acceptance tests drive.

pub mod commands;
pub mod inputs;
pub mod report;
pub mod sampling;
pub mod sweeps;
