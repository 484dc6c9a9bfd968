//! Everything behind the `bohr-hardy` binary: series files, run reports,
//! subcommand implementations and the verification suites.

pub mod commands;
pub mod io;
pub mod report;
pub mod verify;

pub use io::{parse_series_file, parse_series_str, save_series_file, to_json_string, AnySeries};
pub use report::{Check, Relation, RunReport};
pub use verify::{run_verify, VerifyOptions, SUITES};
