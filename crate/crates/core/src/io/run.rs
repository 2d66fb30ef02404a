//! Orchestration of `solve`, `check`, `verify` and `selftest` runs.

use std::path::Path;
use std::time::Instant;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::assembly::{assemble_solution, nonlocal_condition_residual, SolutionGrid};
use crate::catalog::{Operator, OperatorSpec};
use crate::error::{Error, Result};
use crate::fractional::{
    Classification, Fundamental, ModeProblem, ModeRegime, ModeSolution, ModeSolver,
    MultiTermOrders, NonresonanceReport,
};
use crate::grid::TimeGrid;
use crate::io::config::ProblemConfig;
use crate::io::output::{emit_csv, emit_points, emit_text, imag_path, read_csv};
use crate::io::report::{
    Infeasibility, ModeEntry, ResidualSummary, RunReport, ShortcutFlag, VerifyReport,
    SOLVABILITY_CONDITION,
};
use crate::oracle::{caputo_derivative, interior_max, residual_check, rl_integral};
use crate::special::{ml_multivariate, ml_two_param, MLIndex, SeriesControl};

/// Largest accepted `max_t |residual| / (1 + max_t |f_ξ|)`.
pub const RESIDUAL_GATE: f64 = 5e-4;
/// Largest accepted nonlocal residual relative to `1 + max |u|`.
pub const NONLOCAL_GATE: f64 = 1e-8;
/// Grid steps a mode's time scale `λ^{−1/α}` must span for the oracle to resolve it.
pub const RESOLUTION_STEPS: f64 = 20.0;

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RunOptions {
    /// Record wall-clock time in the report (breaks byte-identical output).
    pub timing: bool,
}

#[derive(Debug, Clone)]
pub enum SolveOutcome {
    Solved {
        solution: SolutionGrid,
        report: RunReport,
    },
    /// A resonant mode carries nonzero forcing; no solution exists.
    Infeasible { report: RunReport },
}

impl SolveOutcome {
    pub fn report(&self) -> &RunReport {
        match self {
            SolveOutcome::Solved { report, .. } | SolveOutcome::Infeasible { report } => report,
        }
    }
}

struct Setup {
    op: Operator,
    fundamental: Fundamental,
    grid: TimeGrid,
    lambdas: Vec<f64>,
    forcing: Vec<Vec<f64>>,
}

fn setup(cfg: &ProblemConfig) -> Result<Setup> {
    cfg.validate()?;
    let n = cfg.discretization.modes;
    let op = Operator::new(&cfg.operator, n)?;
    let mut fundamental = Fundamental::new(&cfg.orders, cfg.series)?;
    let grid = TimeGrid::containing(
        cfg.horizon(),
        &cfg.nonlocal.times(),
        cfg.discretization.time_nodes,
    )?;
    let lambdas: Vec<f64> = op.eigenvalues().into_iter().take(n).collect();
    if let Some(&top) = lambdas.iter().max_by(|a, b| a.total_cmp(b)) {
        fundamental.prepare(top, grid.horizon());
    }
    let forcing = cfg.mode_forcing(&op, grid.nodes())?;
    Ok(Setup {
        op,
        fundamental,
        grid,
        lambdas,
        forcing,
    })
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

fn base_report(cfg: &ProblemConfig, s: &Setup, check: &NonresonanceReport) -> Result<RunReport> {
    let modes = check
        .modes
        .iter()
        .enumerate()
        .map(|(xi, m)| -> Result<ModeEntry> {
            Ok(ModeEntry {
                index: xi,
                label: s.op.mode(xi)?.label,
                eigenvalue: m.lambda,
                theta_at_points: m.theta_at_points.clone(),
                denominator: m.denominator,
                sum_abs_mu_theta: m.sum_abs_mu_theta,
                envelope_bound: m.envelope_bound,
                classification: m.classification,
                regime: None,
                free_coefficient: None,
                forcing_max: max_abs(&s.forcing[xi]),
                residual: None,
            })
        })
        .collect::<Result<_>>()?;
    let sum_abs_mu = cfg.nonlocal.sum_abs_mu();
    Ok(RunReport {
        operator: cfg.operator.clone(),
        orders: cfg.orders.clone(),
        nonlocal: cfg.nonlocal.clone(),
        truncation: cfg.discretization.modes,
        time_nodes: s.grid.len(),
        horizon: s.grid.horizon(),
        modes,
        shortcut: ShortcutFlag {
            applicable: check.shortcut.is_some(),
            sum_abs_mu,
            holds: check.shortcut.map(|c| c.holds),
        },
        envelope: check.envelope,
        resonant_modes: check.resonant_modes.clone(),
        near_resonant_modes: check.near_resonant_modes.clone(),
        free_coefficient_modes: Vec::new(),
        infeasible: None,
        residuals: None,
        timing_seconds: None,
    })
}

/// Non-resonance diagnostics without solving; flags infeasible resonant modes.
pub fn run_check(cfg: &ProblemConfig) -> Result<RunReport> {
    let s = setup(cfg)?;
    let solver = ModeSolver::new(&s.fundamental, &cfg.nonlocal, &s.grid, cfg.tolerances)?;
    let check = solver.check_nonresonance(&s.lambdas)?;
    let mut report = base_report(cfg, &s, &check)?;
    let blocked: Vec<usize> = check
        .resonant_modes
        .iter()
        .copied()
        .filter(|&xi| max_abs(&s.forcing[xi]) > cfg.tolerances.forcing_zero)
        .collect();
    if !blocked.is_empty() {
        report.infeasible = Some(Infeasibility {
            modes: blocked,
            condition: SOLVABILITY_CONDITION.to_string(),
        });
    }
    Ok(report)
}

/// Solve every retained mode, assemble `u(t, x)` and check the result.
pub fn run_solve(cfg: &ProblemConfig, opts: &RunOptions) -> Result<SolveOutcome> {
    let start = Instant::now();
    let s = setup(cfg)?;
    let solver = ModeSolver::new(&s.fundamental, &cfg.nonlocal, &s.grid, cfg.tolerances)?;
    let check = solver.check_nonresonance(&s.lambdas)?;
    let mut report = base_report(cfg, &s, &check)?;
    let solutions: Vec<ModeSolution> = (0..s.lambdas.len())
        .into_par_iter()
        .map(|xi| {
            let problem = ModeProblem {
                index: xi,
                lambda: s.lambdas[xi],
                forcing: s.forcing[xi].clone(),
            };
            if check.modes[xi].classification == Classification::Resonant {
                solver.solve_mode_resonant(&problem, cfg.resonant_coefficient(xi))
            } else {
                solver.solve_mode(&problem)
            }
        })
        .collect::<Result<_>>()?;
    for (entry, sol) in report.modes.iter_mut().zip(&solutions) {
        entry.set_regime(&sol.regime);
    }
    report.free_coefficient_modes = solutions
        .iter()
        .filter(|m| matches!(m.regime, ModeRegime::ResonantFamily { .. }))
        .map(|m| m.index)
        .collect();
    let infeasible: Vec<usize> = solutions
        .iter()
        .filter(|m| m.regime == ModeRegime::ResonantInfeasible)
        .map(|m| m.index)
        .collect();
    if !infeasible.is_empty() {
        report.infeasible = Some(Infeasibility {
            modes: infeasible,
            condition: SOLVABILITY_CONDITION.to_string(),
        });
        if opts.timing {
            report.timing_seconds = Some(start.elapsed().as_secs_f64());
        }
        return Ok(SolveOutcome::Infeasible { report });
    }
    let residuals: Vec<f64> = solutions
        .par_iter()
        .map(|m| {
            let f = &s.forcing[m.index];
            Ok(
                residual_check(&m.samples, &cfg.orders, s.lambdas[m.index], f, &s.grid)?
                    / (1.0 + max_abs(f)),
            )
        })
        .collect::<Result<_>>()?;
    for (entry, r) in report.modes.iter_mut().zip(&residuals) {
        entry.residual = Some(*r);
    }
    let points = cfg
        .operator
        .output_points(cfg.discretization.space_points, cfg.discretization.extent);
    let solution = assemble_solution(
        &s.op,
        &solutions,
        &points,
        cfg.discretization.modes,
        &s.grid,
    )?;
    let nonlocal = nonlocal_condition_residual(&solution, &cfg.nonlocal)?;
    let h = s.grid.step();
    let unresolved_modes: Vec<usize> = (0..residuals.len())
        .filter(|&xi| !resolved(&s.fundamental, s.lambdas[xi], h))
        .collect();
    let (worst_mode, worst) = residuals
        .iter()
        .enumerate()
        .filter(|(xi, _)| !unresolved_modes.contains(xi))
        .fold(
            (0, 0.0f64),
            |acc, (i, &r)| if r > acc.1 { (i, r) } else { acc },
        );
    report.residuals = Some(ResidualSummary {
        max_scaled_mode_residual: worst,
        worst_mode,
        unresolved_modes,
        nonlocal_residual: nonlocal,
        nonlocal_scaled: nonlocal / (1.0 + solution.max_abs()),
    });
    if opts.timing {
        report.timing_seconds = Some(start.elapsed().as_secs_f64());
    }
    Ok(SolveOutcome::Solved { solution, report })
}

/// Write `solution.csv` (plus `solution_imag.csv` for complex operators),
/// `points.csv` and `report.json` into `dir`.
pub fn write_solve_outputs(outcome: &SolveOutcome, dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    if let SolveOutcome::Solved { solution, .. } = outcome {
        emit_csv(solution, &dir.join("solution.csv"))?;
        emit_points(&solution.points, &dir.join("points.csv"))?;
    }
    emit_text(&outcome.report().to_json()?, &dir.join("report.json"))
}

/// Whether a mode's intrinsic time scale is resolved by the grid.
fn resolved(fundamental: &Fundamental, lambda: f64, step: f64) -> bool {
    let rate = lambda.abs() / fundamental.leading_coefficient().abs();
    rate == 0.0 || rate.powf(-1.0 / fundamental.alpha()) >= RESOLUTION_STEPS * step
}

/// Project a stored solution back onto the modes and re-run the oracles.
pub fn run_verify(cfg: &ProblemConfig, solution: &Path) -> Result<VerifyReport> {
    let s = setup(cfg)?;
    let malformed = |message: String| Error::MalformedSolution {
        path: solution.to_path_buf(),
        message,
    };
    let stored = read_csv(solution)?;
    let imag = if s.op.is_real() {
        None
    } else {
        Some(read_csv(&imag_path(solution))?)
    };
    let points = cfg
        .operator
        .output_points(cfg.discretization.space_points, cfg.discretization.extent);
    if stored.width != points.len() {
        return Err(malformed(format!(
            "{} columns, the configuration produces {} points",
            stored.width,
            points.len()
        )));
    }
    let h = s.grid.step();
    if stored.times.len() != s.grid.len()
        || stored
            .times
            .iter()
            .zip(s.grid.nodes())
            .any(|(a, b)| (a - b).abs() > 1e-9 * h)
    {
        return Err(malformed(format!(
            "time column does not match the {}-node grid of the configuration",
            s.grid.len()
        )));
    }
    if let Some(im) = &imag {
        if im.width != stored.width || im.times != stored.times {
            return Err(malformed(
                "imaginary part does not match the real part".into(),
            ));
        }
    }
    let n = cfg.discretization.modes;
    let width = points.len();
    let rows = if imag.is_some() { 2 * width } else { width };
    if rows < n {
        return Err(Error::invalid(format!(
            "{rows} stored values per time cannot determine {n} mode coefficients"
        )));
    }
    let table: Vec<Complex64> = (0..n)
        .flat_map(|xi| points.iter().map(move |&p| (xi, p)))
        .map(|(xi, p)| s.op.eigenfunction(xi, p))
        .collect::<Result<_>>()?;
    let a = DMatrix::from_fn(rows, n, |r, xi| {
        let e = table[xi * width + r % width];
        if r < width {
            e.re
        } else {
            e.im
        }
    });
    let nt = stored.times.len();
    let b = DMatrix::from_fn(rows, nt, |r, k| {
        if r < width {
            stored.values[k * width + r]
        } else {
            imag.as_ref()
                .map_or(0.0, |im| im.values[k * width + r - width])
        }
    });
    let svd = a.clone().svd(true, true);
    let coeffs = svd
        .solve(&b, 1e-12)
        .map_err(|e| Error::invalid(e.to_string()))?;
    let fit = &a * &coeffs - &b;
    let projection_residual = fit.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let u_max = b.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mode_residuals: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|xi| {
            let samples: Vec<f64> = coeffs.row(xi).iter().copied().collect();
            let f = &s.forcing[xi];
            Ok(
                residual_check(&samples, &cfg.orders, s.lambdas[xi], f, &s.grid)?
                    / (1.0 + max_abs(f)),
            )
        })
        .collect::<Result<_>>()?;
    let unresolved_modes: Vec<usize> = (0..n)
        .filter(|&xi| !resolved(&s.fundamental, s.lambdas[xi], h))
        .collect();
    let max_scaled_mode_residual = mode_residuals
        .iter()
        .enumerate()
        .filter(|(xi, _)| !unresolved_modes.contains(xi))
        .fold(0.0f64, |m, (_, &r)| m.max(r));
    let grid = SolutionGrid {
        times: stored.times.clone(),
        points,
        values: stored.values.clone(),
        imag: imag.map(|im| im.values),
        truncation: n,
        diagnostics: Vec::new(),
    };
    let nonlocal_residual = nonlocal_condition_residual(&grid, &cfg.nonlocal)?;
    let nonlocal_gate = NONLOCAL_GATE * (1.0 + u_max);
    let passed = max_scaled_mode_residual <= RESIDUAL_GATE
        && nonlocal_residual <= nonlocal_gate
        && projection_residual <= 1e-8 * (1.0 + u_max);
    Ok(VerifyReport {
        truncation: n,
        time_nodes: nt,
        projection_residual,
        mode_residuals,
        unresolved_modes,
        max_scaled_mode_residual,
        residual_gate: RESIDUAL_GATE,
        nonlocal_residual,
        nonlocal_gate,
        passed,
    })
}

/// One closed-form check of the self-test suite.
#[derive(Debug, Clone, PartialEq)]
pub struct SelfTestCase {
    pub name: &'static str,
    pub passed: bool,
    pub error: f64,
    pub tolerance: f64,
}

impl std::fmt::Display for SelfTestCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(
            f,
            "{tag} {:<36} error {:.3e} tolerance {:.1e}",
            self.name, self.error, self.tolerance
        )
    }
}

fn case(name: &'static str, tolerance: f64, error: Result<f64>) -> SelfTestCase {
    let error = error.unwrap_or(f64::INFINITY);
    SelfTestCase {
        name,
        passed: error <= tolerance,
        error,
        tolerance,
    }
}

fn max_deviation(values: impl Iterator<Item = Result<(f64, f64)>>) -> Result<f64> {
    let mut m = 0.0f64;
    for v in values {
        let (a, b) = v?;
        m = m.max((a - b).abs());
    }
    Ok(m)
}

/// Closed-form cases of the property suite.
pub fn selftest() -> Vec<SelfTestCase> {
    let ctl = SeriesControl::default();
    let mut out = Vec::new();
    out.push(case(
        "mittag_leffler_exponential",
        1e-10,
        max_deviation((0..100).map(|i| {
            let z = -20.0 + 25.0 * i as f64 / 99.0;
            Ok((ml_two_param(1.0, 1.0, z, &ctl)?, z.exp()))
        })),
    ));
    out.push(case(
        "mittag_leffler_cosine",
        1e-10,
        max_deviation((0..100).map(|i| {
            let x = 10.0 * i as f64 / 99.0;
            Ok((ml_two_param(2.0, 1.0, -x * x, &ctl)?, x.cos()))
        })),
    ));
    out.push(case(
        "multivariate_one_variable",
        1e-12,
        max_deviation((0..125).map(|i| {
            let alpha = 0.5 + 0.35 * (i % 5) as f64;
            let beta = 0.5 + 0.6 * ((i / 5) % 5) as f64;
            let z = -2.0 + 1.0 * (i / 25) as f64;
            let idx = MLIndex::new(vec![alpha], beta)?;
            Ok((
                ml_multivariate(&idx, &[z], &ctl)?,
                ml_two_param(alpha, beta, z, &ctl)?,
            ))
        })),
    ));
    out.push(case(
        "heat_limit_theta",
        1e-6,
        classical_limit(1.0, 3.0, |l, t| (-l * t).exp()),
    ));
    out.push(case(
        "wave_limit_theta",
        1e-8,
        classical_limit(2.0, 4.0, |l, t| (l.sqrt() * t).cos()),
    ));
    out.push(case("caputo_power_rule", 1e-4, caputo_power_rule()));
    out.push(case("riemann_liouville_semigroup", 1e-6, rl_semigroup()));
    out.push(case(
        "involution_eigenvalues",
        0.0,
        involution_eigenvalues(),
    ));
    out.push(case("landau_eigenvalues", 0.0, landau_eigenvalues()));
    out.push(case(
        "dirichlet_gram_matrix",
        1e-5,
        gram_deviation(&OperatorSpec::DirichletLaplacian {
            length: std::f64::consts::PI,
        }),
    ));
    out.push(case(
        "harmonic_oscillator_gram_matrix",
        1e-5,
        gram_deviation(&OperatorSpec::HarmonicOscillator),
    ));
    out
}

fn classical_limit(alpha: f64, lambda: f64, exact: impl Fn(f64, f64) -> f64) -> Result<f64> {
    let f = Fundamental::new(&MultiTermOrders::single(alpha)?, SeriesControl::default())?;
    max_deviation((0..=100).map(|i| {
        let t = 2.0 * i as f64 / 100.0;
        Ok((f.theta(lambda, t)?, exact(lambda, t)))
    }))
}

fn caputo_power_rule() -> Result<f64> {
    let grid = TimeGrid::uniform(1.0, 2048)?;
    let u: Vec<f64> = grid.nodes().to_vec();
    let d = caputo_derivative(&u, 0.5, &grid)?;
    let g = crate::special::gamma(1.5)?;
    let err: Vec<f64> = d
        .iter()
        .zip(grid.nodes())
        .map(|(d, t)| d - t.sqrt() / g)
        .collect();
    Ok(interior_max(&err))
}

fn rl_semigroup() -> Result<f64> {
    let grid = TimeGrid::uniform(1.0, 2048)?;
    let f: Vec<f64> = grid
        .nodes()
        .iter()
        .map(|t| (2.0 * t).sin() + t * t)
        .collect();
    let once = rl_integral(&rl_integral(&f, 0.3, &grid)?, 0.5, &grid)?;
    let direct = rl_integral(&f, 0.8, &grid)?;
    Ok(once
        .iter()
        .zip(&direct)
        .fold(0.0f64, |m, (a, b)| m.max((a - b).abs())))
}

fn involution_eigenvalues() -> Result<f64> {
    let eps = 0.3;
    let op = Operator::new(&OperatorSpec::Involution { epsilon: eps }, 16)?;
    let mut worst = 0.0f64;
    for m in op.modes() {
        if let crate::catalog::ModeLabel::Involution { n } = m.label {
            let exact = if n % 2 == 0 {
                let k = (n / 2) as f64;
                4.0 * (1.0 + eps) * (k * k)
            } else {
                let k = n as f64;
                (1.0 - eps) * (k * k)
            };
            worst = worst.max((m.eigenvalue - exact).abs());
        }
    }
    Ok(worst)
}

fn landau_eigenvalues() -> Result<f64> {
    let field = 1.5;
    let op = Operator::new(
        &OperatorSpec::Landau {
            field,
            per_level: 4,
        },
        16,
    )?;
    let mut worst = 0.0f64;
    for m in op.modes() {
        let level = match m.label {
            crate::catalog::ModeLabel::LandauFirst { level, .. }
            | crate::catalog::ModeLabel::LandauSecond { level, .. } => level,
            _ => continue,
        };
        worst = worst.max((m.eigenvalue - (2.0 * level as f64 + 1.0) * field).abs());
    }
    Ok(worst)
}

fn gram_deviation(spec: &OperatorSpec) -> Result<f64> {
    let op = Operator::new(spec, 16)?;
    let g = op.gram_matrix(16)?;
    let mut worst = 0.0f64;
    for (i, row) in g.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((v - target).norm());
        }
    }
    Ok(worst)
}
