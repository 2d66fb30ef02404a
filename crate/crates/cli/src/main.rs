use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fdwave_core::io::{
    parse_config, run_check, run_solve, run_verify, selftest, write_solve_outputs, ProblemConfig,
    RunOptions, SolveOutcome,
};
use fdwave_core::Error;

const SOLVED: u8 = 0;
const FAILURE: u8 = 1;
const INFEASIBLE: u8 = 2;
const INVALID: u8 = 3;
const NUMERICAL: u8 = 4;
const REJECTED: u8 = 5;

#[derive(Parser)]
#[command(
    name = "fdwave",
    version,
    about = "Multi-term time-fractional diffusion-wave problems with multi-point nonlocal conditions"
)]
struct Cli {
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true, env = "FDWAVE_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a problem and write solution.csv, points.csv and report.json.
    Solve {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
        /// Record wall-clock time in the report.
        #[arg(long)]
        timing: bool,
    },
    /// Evaluate the non-resonance conditions without solving.
    Check {
        #[arg(long)]
        config: PathBuf,
        /// Write the report here instead of standard output.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Re-run the residual oracles on a stored solution.
    Verify {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        solution: PathBuf,
    },
    /// Run the closed-form self-test cases.
    Selftest,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::ResonantInfeasible(_) => INFEASIBLE,
        Error::Parse(_)
        | Error::Validation(_)
        | Error::InvalidInput(_)
        | Error::MalformedSolution { .. }
        | Error::NotOnGrid(_) => INVALID,
        e if e.is_numerical() => NUMERICAL,
        _ => FAILURE,
    }
}

fn load(path: &Path) -> Result<ProblemConfig, Error> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_config(&text)
}

fn solve(config: &Path, out_dir: &Path, timing: bool) -> Result<u8, Error> {
    let cfg = load(config)?;
    let outcome = run_solve(&cfg, &RunOptions { timing })?;
    write_solve_outputs(&outcome, out_dir)?;
    match &outcome {
        SolveOutcome::Solved { report, .. } => {
            if let Some(r) = &report.residuals {
                eprintln!(
                    "solved {} modes on {} nodes: max scaled residual {:.3e}, nonlocal residual {:.3e}",
                    report.truncation, report.time_nodes, r.max_scaled_mode_residual, r.nonlocal_residual
                );
            }
            if !report.free_coefficient_modes.is_empty() {
                eprintln!(
                    "free coefficients on resonant modes {:?}",
                    report.free_coefficient_modes
                );
            }
            Ok(SOLVED)
        }
        SolveOutcome::Infeasible { report } => {
            if let Some(inf) = &report.infeasible {
                eprintln!(
                    "no solution: resonant modes {:?} carry forcing; {}",
                    inf.modes, inf.condition
                );
            }
            Ok(INFEASIBLE)
        }
    }
}

fn check(config: &Path, report_path: Option<&Path>) -> Result<u8, Error> {
    let report = run_check(&load(config)?)?;
    let json = report.to_json()?;
    match report_path {
        Some(p) => fs::write(p, json).map_err(|source| Error::Io {
            path: p.to_path_buf(),
            source,
        })?,
        None => print!("{json}"),
    }
    Ok(if report.infeasible.is_some() {
        INFEASIBLE
    } else {
        SOLVED
    })
}

fn verify(config: &Path, solution: &Path) -> Result<u8, Error> {
    let report = run_verify(&load(config)?, solution)?;
    print!("{}", report.to_json()?);
    Ok(if report.passed { SOLVED } else { REJECTED })
}

fn run_selftest() -> u8 {
    let cases = selftest();
    for c in &cases {
        println!("{c}");
    }
    let failed = cases.iter().filter(|c| !c.passed).count();
    println!("{} of {} cases passed", cases.len() - failed, cases.len());
    if failed == 0 {
        SOLVED
    } else {
        FAILURE
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: cannot configure {n} threads: {e}");
            return ExitCode::from(FAILURE);
        }
    }
    let result = match &cli.command {
        Command::Solve {
            config,
            out_dir,
            timing,
        } => solve(config, out_dir, *timing),
        Command::Check { config, report } => check(config, report.as_deref()),
        Command::Verify { config, solution } => verify(config, solution),
        Command::Selftest => Ok(run_selftest()),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
