use fdwave_core::io::output::read_csv;
use fdwave_core::io::run::RESIDUAL_GATE;
use fdwave_core::io::{
    parse_config, run_check, run_solve, run_verify, selftest, write_solve_outputs, RunOptions,
    SolveOutcome,
};
use fdwave_core::Error;

const HEAT: &str = r#"
[operator]
kind = "dirichlet_laplacian"
length = 3.141592653589793

[orders]
alpha = 1.0

[nonlocal]
points = [{ mu = 0.5, time = 0.5 }, { mu = 0.3, time = 1.0 }]

[[forcing]]
time = { kind = "sin", frequency = 2.0 }
space = { kind = "mode", index = 0 }

[[forcing]]
time = { kind = "polynomial", coefficients = [1.0, 0.5] }
space = { kind = "mode", index = 2 }

[discretization]
modes = 6
time_nodes = 2048
space_points = 17
"#;

fn solved(
    text: &str,
) -> (
    fdwave_core::assembly::SolutionGrid,
    fdwave_core::io::RunReport,
) {
    match run_solve(&parse_config(text).unwrap(), &RunOptions::default()).unwrap() {
        SolveOutcome::Solved { solution, report } => (solution, report),
        SolveOutcome::Infeasible { report } => panic!("infeasible: {:?}", report.infeasible),
    }
}

#[test]
fn heat_run_passes_its_own_checks() {
    let (solution, report) = solved(HEAT);
    assert_eq!(solution.shape().1, 17);
    assert!(solution.shape().0 >= 2048);
    assert_eq!(report.modes.len(), 6);
    assert_eq!(report.shortcut.holds, Some(true));
    let r = report.residuals.unwrap();
    assert!(r.max_scaled_mode_residual < RESIDUAL_GATE, "{r:?}");
    assert!(r.nonlocal_scaled < 1e-8, "{r:?}");
    assert!(report
        .modes
        .iter()
        .all(|m| m.regime.as_deref() == Some("regular")));
}

#[test]
fn verify_accepts_written_solution_and_rejects_a_corrupted_one() {
    let cfg = parse_config(HEAT).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let outcome = run_solve(&cfg, &RunOptions::default()).unwrap();
    write_solve_outputs(&outcome, dir.path()).unwrap();
    for name in ["solution.csv", "points.csv", "report.json"] {
        assert!(dir.path().join(name).exists(), "{name}");
    }
    let path = dir.path().join("solution.csv");
    let good = run_verify(&cfg, &path).unwrap();
    assert!(good.passed, "{good:?}");

    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines: Vec<String> = text.lines().map(str::to_string).collect();
    let mut fields: Vec<String> = lines[1].split(',').map(str::to_string).collect();
    let v: f64 = fields[5].parse().unwrap();
    fields[5] = format!("{:.16e}", v + 0.05);
    lines[1] = fields.join(",");
    std::fs::write(&path, lines.join("\n") + "\n").unwrap();
    let bad = run_verify(&cfg, &path).unwrap();
    assert!(!bad.passed, "{bad:?}");
}

#[test]
fn verify_rejects_a_grid_of_the_wrong_shape() {
    let cfg = parse_config(HEAT).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("u.csv");
    std::fs::write(&path, "t,x1\n0.0,1.0\n1.0,2.0\n").unwrap();
    assert!(matches!(
        run_verify(&cfg, &path),
        Err(Error::MalformedSolution { .. })
    ));
}

#[test]
fn zero_forcing_gives_zero_solution() {
    let text = HEAT.split("[[forcing]]").next().unwrap().to_string()
        + "[discretization]\nmodes = 3\ntime_nodes = 64\nspace_points = 5\n";
    let (solution, _) = solved(&text);
    assert!(solution.values.iter().all(|&v| v == 0.0));
    let dir = tempfile::tempdir().unwrap();
    let cfg = parse_config(&text).unwrap();
    write_solve_outputs(
        &run_solve(&cfg, &RunOptions::default()).unwrap(),
        dir.path(),
    )
    .unwrap();
    let stored = read_csv(&dir.path().join("solution.csv")).unwrap();
    assert_eq!(stored.width, 5);
    assert!(stored.values.iter().all(|&v| v == 0.0));
}

#[test]
fn landau_writes_an_imaginary_part() {
    let text = r#"
[operator]
kind = "landau"
field = 1.0
per_level = 2

[orders]
alpha = 1.5

[nonlocal]
points = [{ mu = 0.4, time = 1.0 }]

[[forcing]]
time = { kind = "cos", frequency = 1.0 }
space = { kind = "mode", index = 1 }

[discretization]
modes = 4
time_nodes = 256
space_points = 5
extent = 2.0
"#;
    let cfg = parse_config(text).unwrap();
    let dir = tempfile::tempdir().unwrap();
    write_solve_outputs(
        &run_solve(&cfg, &RunOptions::default()).unwrap(),
        dir.path(),
    )
    .unwrap();
    assert!(dir.path().join("solution_imag.csv").exists());
    let points = std::fs::read_to_string(dir.path().join("points.csv")).unwrap();
    assert_eq!(points.lines().next(), Some("column,x,y"));
    assert_eq!(points.lines().count(), 26);
    let report = run_verify(&cfg, &dir.path().join("solution.csv")).unwrap();
    assert!(report.projection_residual < 1e-10, "{report:?}");
    assert!(
        report.nonlocal_residual <= report.nonlocal_gate,
        "{report:?}"
    );
}

#[test]
fn check_reports_without_solving() {
    let report = run_check(&parse_config(HEAT).unwrap()).unwrap();
    assert!(report.residuals.is_none());
    assert!(report.infeasible.is_none());
    assert!(report.modes.iter().all(|m| m.regime.is_none()));
    let json = report.to_json().unwrap();
    assert!(json.contains("\"classification\": \"NonResonant\""));
}

#[test]
fn selftest_cases_pass() {
    let cases = selftest();
    assert!(cases.len() >= 10);
    for c in &cases {
        assert!(c.passed, "{c}");
    }
}

#[test]
fn validation_lists_the_offending_field() {
    let err = parse_config(&HEAT.replace("alpha = 1.0", "alpha = 2.5")).unwrap_err();
    let Error::Validation(v) = err else {
        panic!("{err}")
    };
    assert!(v.iter().any(|v| v.to_string().contains("orders.alpha")));
}
