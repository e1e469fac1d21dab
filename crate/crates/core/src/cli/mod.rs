//! The `maxplus` command line: argument parsing, file formats and JSON reports.
//!
//! Exit codes: 0 success, 1 a check failed or a computation errored, 2 bad input.

pub mod args;
pub mod io;
pub mod json;
pub mod report;
mod run;

pub use args::Cli;
pub use report::{ErrorEntry, Report};
pub use run::{main_with_args, run};
