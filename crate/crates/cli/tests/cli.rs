//! End-to-end checks of the command-line interface and its exit codes.

use std::path::Path;
use std::process::Command;

fn penalfr() -> Command {
    Command::new(env!("CARGO_BIN_EXE_penalfr"))
}

fn write(path: &Path, text: &str) {
    std::fs::write(path, text).unwrap();
}

#[test]
fn advect_run_writes_solution_and_echoes_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    write(
        &cfg,
        r#"
mode = "advect"

[advect]
dt = 1e-4
t_final = 0.05

[advect.penalization]
eta = 1e-3
"#,
    );
    let out = dir.path().join("out");
    let status = penalfr()
        .args(["advect", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    assert!(out.join("solution.csv").exists());
    let echoed = std::fs::read_to_string(out.join("config.resolved.toml")).unwrap();
    // Defaults resolved into the echo.
    assert!(echoed.contains("n_elements = 40"), "{echoed}");
    assert!(echoed.contains("order = 3"), "{echoed}");
}

#[test]
fn config_errors_exit_with_code_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    write(&cfg, "mode = \"advect\"\n[advect]\nnot_a_key = 1\n");
    let status = penalfr()
        .args(["advect", "--config"])
        .arg(&cfg)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn numerical_failures_exit_with_code_3() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("unstable.toml");
    // eta far below the stability limit of this dt: blows up quickly.
    write(
        &cfg,
        r#"
mode = "advect"

[advect]
dt = 1e-3
t_final = 1.0

[advect.penalization]
eta = 1e-5
"#,
    );
    let status = penalfr()
        .args(["advect", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(dir.path().join("out"))
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(3));
}

#[test]
fn eigen_semi_writes_mode_table() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("eigen.toml");
    write(
        &cfg,
        r#"
mode = "eigen_semi"

[eigen]
n_wavenumbers = 8

[eigen.penalization]
eta = 1e-3
"#,
    );
    let out = dir.path().join("out");
    let status = penalfr()
        .args(["eigen", "semi", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(out.join("modes_semi.csv")).unwrap();
    let header = text.lines().next().unwrap();
    assert_eq!(header, "k_nondim,mode_id,class,dispersion,dissipation");
    assert!(text.contains("physical"));
}

#[test]
fn repro_list_prints_known_ids() {
    let output = penalfr().args(["repro", "list"]).output().unwrap();
    assert!(output.status.success());
    let text = String::from_utf8_lossy(&output.stdout);
    for id in ["fig3", "fig7", "table1"] {
        assert!(text.contains(id), "{text}");
    }
}

#[test]
fn unknown_repro_id_fails() {
    let status = penalfr().args(["repro", "fig99"]).status().unwrap();
    assert!(!status.success());
}
