//! Configuration, reports, CSV files and the run drivers behind the CLI.

pub mod config;
pub mod output;
pub mod report;
pub mod run;

pub use config::{parse_config, ProblemConfig};
pub use report::{RunReport, VerifyReport};
pub use run::{
    run_check, run_solve, run_verify, selftest, write_solve_outputs, RunOptions, SelfTestCase,
    SolveOutcome,
};
