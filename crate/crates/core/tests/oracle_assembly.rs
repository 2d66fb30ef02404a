use std::f64::consts::PI;

use fdwave_core::assembly::{assemble_solution, nonlocal_condition_residual, sobolev_norm};
use fdwave_core::catalog::{Operator, OperatorSpec, Point};
use fdwave_core::fractional::{
    Fundamental, ModeProblem, ModeSolver, MultiTermOrders, NonlocalData, NonlocalPoint, Tolerances,
};
use fdwave_core::grid::TimeGrid;
use fdwave_core::oracle::{
    caputo_derivative, caputo_derivative_with, interior_max, rl_integral, rl_integral_corrected,
    CaputoOptions,
};
use fdwave_core::special::{gamma, SeriesControl};
use num_complex::Complex64;

fn max_gap(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .fold(0.0f64, |m, (x, y)| m.max((x - y).abs()))
}

#[test]
fn rl_integral_power_rules() {
    let grid = TimeGrid::uniform(2.0, 1025).unwrap();
    for alpha in [0.3, 0.5, 1.0, 1.7] {
        let ones = vec![1.0; grid.len()];
        let exact: Vec<f64> = grid
            .nodes()
            .iter()
            .map(|t| t.powf(alpha) / gamma(alpha + 1.0).unwrap())
            .collect();
        assert!(
            max_gap(&rl_integral(&ones, alpha, &grid).unwrap(), &exact) < 1e-12,
            "alpha {alpha}"
        );
    }
    let line: Vec<f64> = grid.nodes().to_vec();
    let exact: Vec<f64> = grid
        .nodes()
        .iter()
        .map(|t| t.powf(1.5) / gamma(2.5).unwrap())
        .collect();
    assert!(max_gap(&rl_integral(&line, 0.5, &grid).unwrap(), &exact) < 1e-12);
}

#[test]
fn rl_integrals_compose() {
    let grid = TimeGrid::uniform(1.5, 2049).unwrap();
    let f: Vec<f64> = grid
        .nodes()
        .iter()
        .map(|t| (3.0 * t).cos() + t * t * t)
        .collect();
    for (a, b) in [(0.3f64, 0.5), (0.5, 0.5), (0.8, 1.1), (1.0, 0.25)] {
        // I^a f behaves like f(0) t^a + f'(0) t^{a+1} near the origin.
        let powers: Vec<f64> = [a, a + 1.0]
            .into_iter()
            .filter(|&p| p < 2.0 && (p - p.round()).abs() > 0.05)
            .collect();
        let twice =
            rl_integral_corrected(&rl_integral(&f, a, &grid).unwrap(), b, &grid, &powers).unwrap();
        let once = rl_integral(&f, a + b, &grid).unwrap();
        assert!(
            max_gap(&twice, &once) < 1e-6,
            "({a}, {b}): {}",
            max_gap(&twice, &once)
        );
    }
    let g: Vec<f64> = grid
        .nodes()
        .iter()
        .map(|t| (3.0 * t).sin() + t * t)
        .collect();
    let twice = rl_integral(&rl_integral(&g, 0.3, &grid).unwrap(), 0.5, &grid).unwrap();
    assert!(max_gap(&twice, &rl_integral(&g, 0.8, &grid).unwrap()) < 1e-5);
}

#[test]
fn caputo_inverts_rl_integral() {
    let grid = TimeGrid::uniform(1.0, 2049).unwrap();
    let f: Vec<f64> = grid
        .nodes()
        .iter()
        .map(|t| (2.0 * t).sin() + t * t)
        .collect();
    for alpha in [0.2, 0.5, 0.9] {
        let u = rl_integral(&f, alpha, &grid).unwrap();
        let opts = CaputoOptions {
            initial_slope: None,
            singular_exponents: vec![1.0 + alpha],
        };
        let back = caputo_derivative_with(&u, alpha, &grid, &opts).unwrap();
        let err: Vec<f64> = back.iter().zip(&f).map(|(a, b)| a - b).collect();
        assert!(
            interior_max(&err) < 1e-5,
            "alpha {alpha}: {}",
            interior_max(&err)
        );
        let plain = caputo_derivative(&u, alpha, &grid).unwrap();
        let err: Vec<f64> = plain.iter().zip(&f).map(|(a, b)| a - b).collect();
        assert!(
            interior_max(&err) < 5e-5,
            "alpha {alpha}: {}",
            interior_max(&err)
        );
    }
}

#[test]
fn caputo_power_rule() {
    let grid = TimeGrid::uniform(1.0, 2048).unwrap();
    let d = caputo_derivative(grid.nodes(), 0.5, &grid).unwrap();
    let err: Vec<f64> = d
        .iter()
        .zip(grid.nodes())
        .map(|(d, t)| d - t.sqrt() / gamma(1.5).unwrap())
        .collect();
    assert!(interior_max(&err) < 1e-4);
    let c = vec![2.5; grid.len()];
    assert!(interior_max(&caputo_derivative(&c, 0.7, &grid).unwrap()) < 1e-12);
}

#[test]
fn sobolev_norm_examples() {
    let c = [Complex64::new(1.0, 2.0), Complex64::new(-2.0, 0.0)];
    assert!((sobolev_norm(&c, &[1.0, 9.0], 0.0).unwrap() - 3.0).abs() < 1e-15);
    assert_eq!(
        sobolev_norm(&[Complex64::new(0.0, 0.0); 3], &[1.0, 2.0, 3.0], 1.5).unwrap(),
        0.0
    );
    let single = [Complex64::new(0.0, -3.0)];
    assert!((sobolev_norm(&single, &[4.0], 2.0).unwrap() - 12.0).abs() < 1e-14);
}

fn solve_all(
    op: &Operator,
    orders: &MultiTermOrders,
    nl: &NonlocalData,
    grid: &TimeGrid,
    forcing: impl Fn(usize, f64) -> f64,
) -> Vec<fdwave_core::fractional::ModeSolution> {
    let f = Fundamental::new(orders, SeriesControl::default()).unwrap();
    let solver = ModeSolver::new(&f, nl, grid, Tolerances::default()).unwrap();
    (0..op.len())
        .map(|xi| {
            let lambda = op.eigenvalue(xi).unwrap();
            let forcing = grid.nodes().iter().map(|&t| forcing(xi, t)).collect();
            solver
                .solve_mode(&ModeProblem {
                    index: xi,
                    lambda,
                    forcing,
                })
                .unwrap()
        })
        .collect()
}

#[test]
fn heat_without_weights_relaxes_to_steady_state() {
    let op = Operator::new(&OperatorSpec::DirichletLaplacian { length: PI }, 3).unwrap();
    let nl = NonlocalData::new(vec![NonlocalPoint { mu: 0.0, time: 1.0 }]).unwrap();
    let grid = TimeGrid::uniform(1.0, 1025).unwrap();
    let modes = solve_all(
        &op,
        &MultiTermOrders::single(1.0).unwrap(),
        &nl,
        &grid,
        |xi, _| if xi == 0 { 1.0 } else { 0.0 },
    );
    let pts = [Point::Line(0.4), Point::Line(1.9)];
    let sol = assemble_solution(&op, &modes, &pts, 3, &grid).unwrap();
    let e1 = |x: f64| (2.0 / PI).sqrt() * x.sin();
    for (i, &t) in grid.nodes().iter().enumerate() {
        for (j, p) in pts.iter().enumerate() {
            let Point::Line(x) = *p else { unreachable!() };
            assert!((sol.value(i, j) - (1.0 - (-t).exp()) * e1(x)).abs() < 1e-9);
        }
    }
}

#[test]
fn parseval_on_the_quadrature_grid() {
    for spec in [
        OperatorSpec::Involution { epsilon: 0.2 },
        OperatorSpec::HarmonicOscillator,
        OperatorSpec::Bessel { nu: 1.5 },
    ] {
        let op = Operator::new(&spec, 24).unwrap();
        let nl = NonlocalData::new(vec![NonlocalPoint { mu: 0.5, time: 1.0 }]).unwrap();
        let grid = TimeGrid::uniform(1.0, 65).unwrap();
        let modes = solve_all(
            &op,
            &MultiTermOrders::single(0.8).unwrap(),
            &nl,
            &grid,
            |xi, t| (t + 1.0) / (1.0 + xi as f64),
        );
        let quad = op.quadrature();
        let sol = assemble_solution(&op, &modes, &quad.nodes, 24, &grid).unwrap();
        for i in [10, 40, 64] {
            let direct: f64 = sol
                .row(i)
                .iter()
                .zip(&quad.weights)
                .map(|(u, w)| w * u * u)
                .sum::<f64>()
                .sqrt();
            let coeffs: Vec<Complex64> = modes
                .iter()
                .map(|m| Complex64::new(m.samples[i], 0.0))
                .collect();
            let spectral = sobolev_norm(&coeffs, &op.eigenvalues(), 0.0).unwrap();
            assert!(
                (direct - spectral).abs() <= 1e-5 * spectral,
                "{spec:?} row {i}: {direct} vs {spectral}"
            );
        }
        assert!(nonlocal_condition_residual(&sol, &nl).unwrap() < 1e-8 * (1.0 + sol.max_abs()));
    }
}

#[test]
fn truncation_changes_shrink() {
    let op = Operator::new(&OperatorSpec::DirichletLaplacian { length: PI }, 128).unwrap();
    let nl = NonlocalData::new(vec![NonlocalPoint { mu: 0.6, time: 1.0 }]).unwrap();
    let grid = TimeGrid::uniform(1.0, 129).unwrap();
    let lambdas = op.eigenvalues();
    let modes = solve_all(
        &op,
        &MultiTermOrders::single(1.5).unwrap(),
        &nl,
        &grid,
        |xi, t| (1.0 + t) / (lambdas[xi] * lambdas[xi]),
    );
    let pts: Vec<Point> = (1..40).map(|j| Point::Line(PI * j as f64 / 40.0)).collect();
    let assembled = |n: usize| assemble_solution(&op, &modes, &pts, n, &grid).unwrap();
    let mut previous = f64::INFINITY;
    for n in [8, 16, 32, 64] {
        let change = max_gap(&assembled(2 * n).values, &assembled(n).values);
        assert!(change < previous, "N={n}: {change} after {previous}");
        previous = change;
    }
}
