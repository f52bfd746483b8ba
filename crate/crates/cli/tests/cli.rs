use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn qchaos(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qchaos")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn error_category(out: &Output) -> String {
    let text = String::from_utf8(out.stderr.clone()).unwrap();
    let value: serde_json::Value = serde_json::from_str(text.trim()).unwrap();
    value["error"]["category"].as_str().unwrap().to_owned()
}

#[test]
fn build_reports_matrix_summary() {
    let out = qchaos(&["build", "-L", "4", "-J", "0.5", "--basis", "quasiparticle"]);
    assert!(out.status.success());
    let summary: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(summary["dim"], 16);
    assert_eq!(summary["basis"], "quasiparticle");
    assert_eq!(summary["hermiticity_defect"], 0.0);
}

#[test]
fn diag_writes_sorted_spectrum_with_bands() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("spectrum.csv");
    let out = qchaos(&["diag", "-L", "6", "-o", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("index,eigenvalue,band"));
    let rows: Vec<Vec<String>> = lines.map(|l| l.split(',').map(str::to_owned).collect()).collect();
    assert_eq!(rows.len(), 64);
    let levels: Vec<f64> = rows.iter().map(|r| r[1].parse().unwrap()).collect();
    assert!(levels.windows(2).all(|w| w[0] <= w[1]));
    assert_eq!(rows.last().unwrap()[2], "6");
}

#[test]
fn theory_emits_named_fields() {
    let out = qchaos(&["theory", "-L", "12", "--omega", "100"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["N_cb"], 924);
    assert_eq!(report["J_cr"], 0.04);
    assert_eq!(report["status"], "derived");
    assert!(report["brute_force"]["delta_E_cb"].as_f64().unwrap() > 1.8);

    let power = qchaos(&["theory", "-L", "8", "--power", "4"]);
    let report: serde_json::Value = serde_json::from_str(&stdout(&power)).unwrap();
    assert_eq!(report["status"], "not_derived");
    assert!(report["J_cr"].is_null());
}

#[test]
fn profile_is_normalized() {
    let out = qchaos(&["profile", "-L", "6", "-J", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,w"));
    let total: f64 = lines
        .map(|l| l.split(',').nth(1).unwrap().parse::<f64>().unwrap())
        .sum();
    assert!((total - 1.0).abs() < 1e-9);
}

fn write_plan(dir: &Path) -> std::path::PathBuf {
    let plan = dir.join("plan.toml");
    fs::write(
        &plan,
        r#"
[system]
L = 6
Omega = 100.0

[system.coupling]
kind = "random_nn"
J = 0.0
seed = 3

[sweep]
basis = "quasiparticle"
ensemble_size = 3
seed_base = 11
outputs = ["npc", "bands", "eigenstate_profiles", "theory"]

[sweep.j_grid]
kind = "explicit"
values = [0.0, 0.04, 4.0]
"#,
    )
    .unwrap();
    plan
}

#[test]
fn sweep_writes_reproducible_files() {
    let dir = tempfile::tempdir().unwrap();
    let plan = write_plan(dir.path());
    let first = dir.path().join("a");
    let second = dir.path().join("b");
    for (stem, threads) in [(&first, "1"), (&second, "2")] {
        let out = qchaos(&[
            "sweep",
            plan.to_str().unwrap(),
            "-o",
            stem.to_str().unwrap(),
            "--threads",
            threads,
        ]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(stdout(&out).lines().count(), 4);
    }
    for suffix in [".csv", ".bands.csv", ".profiles.csv", ".theory.json"] {
        let a = fs::read(format!("{}{suffix}", first.display())).unwrap();
        let b = fs::read(format!("{}{suffix}", second.display())).unwrap();
        assert_eq!(a, b, "{suffix} differs between runs");
    }
    let csv = fs::read_to_string(format!("{}.csv", first.display())).unwrap();
    let header = csv.lines().next().unwrap();
    assert_eq!(
        header,
        "J,J_over_J_cr,mean_npc,npc_over_reference,ks_poisson,ks_wigner,band_count,central_band_size,overlap_flag,ensemble_stderr"
    );
    let first_row: Vec<&str> = csv.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(first_row[2].parse::<f64>().unwrap(), 1.0);
}

#[test]
fn errors_carry_category_and_exit_code() {
    let out = qchaos(&["build", "-L", "20"]);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(error_category(&out), "capacity");

    let out = qchaos(&["theory", "--omega", "-1"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_category(&out), "config");

    let out = qchaos(&["profile", "-L", "4", "--state", "99"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(error_category(&out), "contract");

    let out = qchaos(&["sweep", "/nonexistent/plan.toml"]);
    assert_eq!(out.status.code(), Some(6));
    assert_eq!(error_category(&out), "io");
}

#[test]
fn usage_errors_are_config_errors() {
    let out = qchaos(&["diag", "--basis", "x"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_category(&out), "config");
    assert!(qchaos(&["--help"]).status.success());
}
