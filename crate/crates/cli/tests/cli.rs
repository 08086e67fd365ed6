use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use proptest::prelude::*;
use serde_json::Value;
use sp4_cli::config::{Mode, ScenarioConfig};
use sp4_cli::{emit_plot_data, read_plot_data, run, CliError, RunOptions, Table};
use sp4_core::hamiltonian::ScalarProfile;
use sp4_core::lr_ode::{closed_form_trajectory, ClosedFormParams};
use sp4_core::TimeGrid;
use tempfile::TempDir;

fn scenarios() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios")
}

fn sp4lr(args: &[&str], seed: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_sp4lr"));
    cmd.args(args).env_remove("SP4_SEED");
    if let Some(s) = seed {
        cmd.env("SP4_SEED", s);
    }
    cmd.output().expect("binary runs")
}

fn run_config(config: &Path, out: &Path) -> Output {
    sp4lr(
        &[
            "run",
            "--config",
            config.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
        ],
        None,
    )
}

fn write_json(dir: &Path, name: &str, v: &Value) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, serde_json::to_string_pretty(v).unwrap()).unwrap();
    p
}

fn report(dir: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(dir.join("report.json")).unwrap()).unwrap()
}

fn check_names(r: &Value) -> Vec<String> {
    r["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap().to_string())
        .collect()
}

fn example(mode: Mode) -> Value {
    ScenarioConfig::example(mode).to_value()
}

#[test]
fn every_bundled_scenario_passes() {
    let tmp = TempDir::new().unwrap();
    for mode in Mode::ALL {
        let out = tmp.path().join(mode.name());
        let o = run_config(&scenarios().join(format!("{}.json", mode.name())), &out);
        assert_eq!(
            o.status.code(),
            Some(0),
            "{}: {}",
            mode.name(),
            String::from_utf8_lossy(&o.stdout)
        );
        let r = report(&out);
        assert_eq!(r["passed"], Value::Bool(true));
        for a in r["artifacts"].as_array().unwrap() {
            assert!(out.join(a.as_str().unwrap()).is_file());
        }
    }
}

#[test]
fn algebra_check_runs_all_commutators_jacobi_and_symplectic() {
    let tmp = TempDir::new().unwrap();
    let o = run_config(&scenarios().join("algebra-check.json"), tmp.path());
    assert_eq!(o.status.code(), Some(0));
    let names = check_names(&report(tmp.path()));
    assert_eq!(
        names
            .iter()
            .filter(|n| n.starts_with("commutator["))
            .count(),
        45
    );
    assert!(names.contains(&"jacobi".into()) && names.contains(&"symplectic".into()));
}

#[test]
fn closed_form_alpha_three_passes_involution_det_and_lr() {
    let tmp = TempDir::new().unwrap();
    let mut cfg = example(Mode::LrClosedForm);
    assert_eq!(cfg["params"]["alpha"], 3.0);
    assert_eq!(cfg["grid"]["steps"], 5000);
    cfg["grid"]["t1"] = 5.0.into();
    let o = run_config(&write_json(tmp.path(), "s.json", &cfg), tmp.path());
    assert_eq!(o.status.code(), Some(0));
    let r = report(tmp.path());
    for name in [
        "involution_constraints",
        "invariant_det",
        "invariant_squared",
        "lr_residual",
    ] {
        let c = r["checks"]
            .as_array()
            .unwrap()
            .iter()
            .find(|c| c["name"] == name)
            .unwrap();
        assert_eq!(c["status"], "pass", "{name}");
    }
}

#[test]
fn point_transform_example_passes_lr_hermiticity_tdde_and_pde() {
    let tmp = TempDir::new().unwrap();
    let o = run_config(&scenarios().join("point-transform.json"), tmp.path());
    assert_eq!(o.status.code(), Some(0));
    let r = report(tmp.path());
    let sys = &r["scenario"]["params"]["system"];
    assert_eq!(
        (
            sys["alpha"].as_f64(),
            sys["beta"].as_f64(),
            sys["Lambda"].as_f64()
        ),
        (Some(2.0), Some(1.0), Some(0.5))
    );
    let names = check_names(&r);
    for n in [
        "lr_residual_gamma_h0",
        "hermitian_invariant_imag_leak",
        "tdde_residual",
        "pde_b0x",
        "pde_b0y",
        "pde_v0",
    ] {
        assert!(names.contains(&n.to_string()), "{n}");
    }
}

#[test]
fn failing_check_exits_two() {
    let tmp = TempDir::new().unwrap();
    let mut cfg = example(Mode::LrClosedForm);
    cfg["grid"]["steps"] = 20.into();
    let o = run_config(&write_json(tmp.path(), "coarse.json", &cfg), tmp.path());
    assert_eq!(o.status.code(), Some(2));
    let r = report(tmp.path());
    assert_eq!(r["passed"], Value::Bool(false));
    assert!(String::from_utf8_lossy(&o.stdout).contains("FAIL lr_residual"));
}

#[test]
fn config_errors_exit_one_with_a_diagnostic() {
    let tmp = TempDir::new().unwrap();
    let bad_syntax = tmp.path().join("syntax.json");
    std::fs::write(
        &bad_syntax,
        "{\n  \"mode\": \"lr-closed-form\",\n  \"grid\": {\"t0\": 0, \"t1\": 5, \"steps\": 10,}\n}",
    )
    .unwrap();
    let o = run_config(&bad_syntax, tmp.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(
        String::from_utf8_lossy(&o.stderr).contains("line 3"),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );

    let mut typo = example(Mode::LrClosedForm);
    typo["params"]["alpah"] = 2.0.into();
    let o = run_config(&write_json(tmp.path(), "typo.json", &typo), tmp.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("alpah"));

    let mut coarse = example(Mode::RegimeMap);
    coarse["grid"]["steps"] = 3.into();
    let o = run_config(&write_json(tmp.path(), "coarse.json", &coarse), tmp.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("grid.steps"));

    let mut tol = example(Mode::AlgebraCheck);
    tol["tolerances"]["proj_tol"] = (-1.0).into();
    assert_eq!(
        run_config(&write_json(tmp.path(), "tol.json", &tol), tmp.path())
            .status
            .code(),
        Some(1)
    );

    let mut mode = example(Mode::AlgebraCheck);
    mode["mode"] = "lr-magic".into();
    assert_eq!(
        run_config(&write_json(tmp.path(), "mode.json", &mode), tmp.path())
            .status
            .code(),
        Some(1)
    );

    assert_eq!(
        run_config(&tmp.path().join("missing.json"), tmp.path())
            .status
            .code(),
        Some(1)
    );
    assert_eq!(sp4lr(&["run"], None).status.code(), Some(1));
}

#[test]
fn domain_errors_exit_one() {
    let tmp = TempDir::new().unwrap();
    let mut alpha = example(Mode::LrClosedForm);
    alpha["params"]["alpha"] = (-1.0).into();
    assert_eq!(
        run_config(&write_json(tmp.path(), "alpha.json", &alpha), tmp.path())
            .status
            .code(),
        Some(1)
    );

    // Coupling beyond the arctanh domain of the static Dyson map.
    let mut broken = example(Mode::PointTransform);
    broken["params"]["system"]["alpha"] = 1.0.into();
    broken["params"]["system"]["beta"] = 1.5.into();
    broken["params"]["system"]["Lambda"] = 2.0.into();
    let o = run_config(&write_json(tmp.path(), "broken.json", &broken), tmp.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("arctanh"));

    let mut profile = example(Mode::RegimeMap);
    profile["params"]["system"]["lambda"] =
        serde_json::json!({"kind": "tabulated", "t": [0.0, 1.0], "values": [0.0, 1.0]});
    assert_eq!(
        run_config(
            &write_json(tmp.path(), "profile.json", &profile),
            tmp.path()
        )
        .status
        .code(),
        Some(1)
    );
}

#[test]
fn identical_runs_give_identical_reports_except_wall_time() {
    let tmp = TempDir::new().unwrap();
    let (a, b) = (tmp.path().join("a"), tmp.path().join("b"));
    for out in [&a, &b] {
        assert_eq!(
            run_config(&scenarios().join("point-transform.json"), out)
                .status
                .code(),
            Some(0)
        );
    }
    let strip = |dir: &Path| {
        let text = std::fs::read_to_string(dir.join("report.json")).unwrap();
        text.lines()
            .filter(|l| !l.contains("\"wall_time_s\""))
            .collect::<Vec<_>>()
            .join("\n")
    };
    assert_eq!(strip(&a), strip(&b));
    for f in ["ep_state.csv", "invariant.csv", "hermitian_invariant.csv"] {
        assert_eq!(
            std::fs::read(a.join(f)).unwrap(),
            std::fs::read(b.join(f)).unwrap(),
            "{f}"
        );
    }
}

#[test]
fn seed_comes_from_the_environment() {
    let tmp = TempDir::new().unwrap();
    let cfg = scenarios().join("algebra-check.json");
    let out = tmp.path().to_str().unwrap();
    let o = sp4lr(
        &["run", "--config", cfg.to_str().unwrap(), "--out", out],
        Some("42"),
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(report(tmp.path())["seed"], 42);
    let o = sp4lr(
        &["run", "--config", cfg.to_str().unwrap(), "--out", out],
        Some("not-a-number"),
    );
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn out_flag_overrides_output_dir() {
    let tmp = TempDir::new().unwrap();
    let mut cfg = example(Mode::RegimeMap);
    cfg["output_dir"] = tmp.path().join("from_config").to_str().unwrap().into();
    let path = write_json(tmp.path(), "s.json", &cfg);
    assert_eq!(
        run_config(&path, &tmp.path().join("from_flag"))
            .status
            .code(),
        Some(0)
    );
    assert!(tmp.path().join("from_flag/report.json").is_file());
    assert!(!tmp.path().join("from_config").exists());
    let o = sp4lr(&["run", "--config", path.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(0));
    assert!(tmp.path().join("from_config/eigenvalues.csv").is_file());
}

#[test]
fn describe_prints_loadable_examples_for_every_mode() {
    let o = sp4lr(&["run", "--describe"], None);
    assert_eq!(o.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    for mode in Mode::ALL {
        let text = doc["modes"][mode.name()].to_string();
        let cfg = ScenarioConfig::from_json(&text).unwrap();
        assert_eq!(cfg, ScenarioConfig::example(mode));
    }
}

#[test]
fn defaults_fill_in_missing_fields() {
    let cfg = ScenarioConfig::from_json(
        r#"{"mode": "lr-closed-form", "params": {"alpha": 2}, "grid": {"t0": 0, "t1": 1, "steps": 10}}"#,
    )
    .unwrap();
    assert_eq!(cfg.hbar, 1.0);
    assert_eq!(cfg.tolerances, sp4_core::Tolerances::default());
    assert_eq!(cfg.output_dir, None);
}

#[test]
fn report_status_matches_residual_against_tolerance() {
    let tmp = TempDir::new().unwrap();
    for mode in Mode::ALL {
        let mut cfg = ScenarioConfig::example(mode);
        cfg.grid.steps = cfg.grid.steps.min(400);
        let r = run(
            &cfg,
            &RunOptions {
                out_dir: Some(tmp.path().join(mode.name())),
                seed: 7,
            },
        )
        .unwrap();
        for c in &r.checks {
            assert_eq!(c.passed(), c.residual <= c.tolerance, "{}", c.name);
        }
        let parsed: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(parsed["checks"].as_array().unwrap().len(), r.checks.len());
    }
}

#[test]
fn empty_trajectory_is_an_error_and_writes_nothing() {
    let tmp = TempDir::new().unwrap();
    let path = tmp.path().join("empty.csv");
    let err = emit_plot_data(&Table::new(["t", "x"]), &path).unwrap_err();
    assert!(matches!(err, CliError::PlotData(_)));
    assert!(!path.exists());
}

#[test]
fn non_increasing_time_is_rejected() {
    let tmp = TempDir::new().unwrap();
    let path = tmp.path().join("t.csv");
    let mut table = Table::new(["t", "x"]);
    table.push(vec![0.0, 1.0]);
    table.push(vec![0.0, 2.0]);
    assert!(emit_plot_data(&table, &path).is_err());
    assert!(!path.exists());
}

#[test]
fn coefficient_trajectory_has_time_and_ten_complex_pairs() {
    let tmp = TempDir::new().unwrap();
    let mut cfg = ScenarioConfig::example(Mode::LrClosedForm);
    cfg.grid.steps = 200;
    run(
        &cfg,
        &RunOptions {
            out_dir: Some(tmp.path().to_path_buf()),
            seed: 1,
        },
    )
    .unwrap();
    let table = read_plot_data(&tmp.path().join("trajectory.csv")).unwrap();
    let mut expected = vec!["t".to_string()];
    for k in 1..=10 {
        expected.push(format!("re_c{k}"));
        expected.push(format!("im_c{k}"));
    }
    assert_eq!(table.header[..21], expected[..]);
    assert_eq!(table.header[21..], ["inv_sq_err", "det_err", "lr_residual"]);

    // Coefficient columns re-parse to exactly the values the library computes.
    let grid = TimeGrid::uniform(0.0, 5.0, 201).unwrap();
    let traj = closed_form_trajectory(
        &ClosedFormParams::new(3.0, ScalarProfile::constant(1.0)),
        &grid,
    )
    .unwrap();
    assert_eq!(table.rows.len(), traj.len());
    for ((row, c), t) in table.rows.iter().zip(&traj).zip(grid.points()) {
        assert_eq!(row[0].to_bits(), t.to_bits());
        for k in 0..10 {
            assert_eq!(row[1 + 2 * k].to_bits(), c.0[k].re.to_bits());
            assert_eq!(row[2 + 2 * k].to_bits(), c.0[k].im.to_bits());
        }
    }
    assert!(table.rows.windows(2).all(|w| w[1][0] > w[0][0]));
}

fn finite_f64() -> impl Strategy<Value = f64> {
    prop_oneof![
        any::<f64>().prop_filter("finite", |v| v.is_finite()),
        Just(f64::MIN_POSITIVE),
        Just(-0.0),
        Just(f64::MAX),
        Just(5e-324),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn csv_round_trip_is_bit_exact(values in prop::collection::vec(prop::collection::vec(finite_f64(), 3), 1..20)) {
        let tmp = TempDir::new().unwrap();
        let path = tmp.path().join("rt.csv");
        let mut table = Table::new(["t", "a", "b", "c"]);
        for (k, v) in values.iter().enumerate() {
            let mut row = vec![k as f64 * 0.1];
            row.extend(v);
            table.push(row);
        }
        emit_plot_data(&table, &path).unwrap();
        let back = read_plot_data(&path).unwrap();
        prop_assert_eq!(&back.header, &table.header);
        for (x, y) in back.rows.iter().flatten().zip(table.rows.iter().flatten()) {
            prop_assert_eq!(x.to_bits(), y.to_bits());
        }
    }
}
