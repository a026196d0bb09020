use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn ckd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ckd"))
        .args(args)
        .env_remove("CKD_TOL")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn solve_json(args: &[&str]) -> Value {
    let mut full = vec!["solve", "--json"];
    full.extend_from_slice(args);
    let o = ckd(&full);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn spherical_right_isosceles() {
    let r = solve_json(&[
        "--labels",
        "1,1,1",
        "--a",
        "0.5",
        "--b",
        "0.5",
        "--C",
        "1.5707963",
    ]);
    let c = r["c"].as_f64().unwrap();
    // cos c = cos a cos b
    assert!((c.abs() - 0.5f64.cos().powi(2).acos()).abs() < 1e-6, "{c}");
    assert!((c.abs() - 0.6917).abs() < 1e-4);
    assert!(r["residual"].as_f64().unwrap() < 1e-12);
}

#[test]
fn zero_inputs_give_the_zero_record() {
    let r = solve_json(&["--labels", "1,1,1"]);
    for (k, v) in r.as_object().unwrap() {
        if !k.starts_with("eta") && !k.starts_with("kappa") {
            assert_eq!(v.as_f64(), Some(0.0), "{k}");
        }
    }
}

#[test]
fn record_carries_every_field() {
    let r = solve_json(&[
        "--labels", "1,0,1", "--a", "0.5", "--b", "0.3", "--C", "1", "--psi-c", "0.2",
    ]);
    let keys = [
        "eta", "kappa1", "kappa2", "a", "b", "c", "phi_a", "phi_b", "phi_c", "A", "B", "C",
        "psi_A", "psi_B", "psi_C", "omega", "Omega", "S", "s", "gamma", "Gamma", "residual",
    ];
    let obj = r.as_object().unwrap();
    assert_eq!(obj.len(), keys.len());
    for k in keys {
        assert!(obj[k].is_f64(), "{k}");
    }
    // flat curvature: ω vanishes identically
    assert!(r["omega"].as_f64().unwrap().abs() < 1e-12);
}

#[test]
fn six_input_solve_agrees_with_completed_phases() {
    let sas = solve_json(&[
        "--labels", "1,1,-1", "--a", "0.3", "--b", "0.7", "--C", "0.4", "--psi-c", "0.3",
    ]);
    let f = |k: &str| sas[k].as_f64().unwrap().to_string();
    let full = solve_json(&[
        "--labels",
        "1,1,-1",
        "--a",
        "0.3",
        "--b",
        "0.7",
        "--C",
        "0.4",
        "--psi-c",
        "0.3",
        "--phi-a",
        &f("phi_a"),
        "--phi-b",
        &f("phi_b"),
    ]);
    for k in ["c", "A", "B", "phi_c", "psi_A", "psi_B"] {
        let (x, y) = (sas[k].as_f64().unwrap(), full[k].as_f64().unwrap());
        assert!((x - y).abs() < 1e-9, "{k}: {x} vs {y}");
    }
}

#[test]
fn one_lateral_phase_alone_is_a_usage_error() {
    let o = ckd(&["solve", "--labels", "1,1,1", "--a", "0.4", "--phi-a", "0.1"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn solver_errors_map_to_exit_codes() {
    // a nonzero side with the other zero leaves the completion ratio 0/0
    let o = ckd(&["solve", "--labels", "1,1,1", "--a", "0.5"]);
    assert_eq!(code(&o), 2, "{}", String::from_utf8_lossy(&o.stderr));
    // wide included angle in a space with indefinite angular metric
    let o = ckd(&[
        "solve", "--labels", "1,1,-1", "--a", "1.0", "--b", "1.1", "--C", "2.5", "--psi-c", "0.3",
    ]);
    assert_eq!(code(&o), 3, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn verify_accepts_a_solved_record_and_rejects_a_perturbed_one() {
    let dir = tempfile::tempdir().unwrap();
    let mut r = solve_json(&[
        "--labels", "1,1,1", "--a", "0.5", "--b", "0.7", "--C", "0.9", "--psi-c", "0.3",
    ]);
    let good = write(dir.path(), "good.json", &r.to_string());
    let o = ckd(&["verify", &good]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));

    let omega = r["omega"].as_f64().unwrap();
    r["omega"] = Value::from(omega + 0.01);
    let bad = write(dir.path(), "bad.json", &r.to_string());
    let o = ckd(&["verify", "--json", &bad]);
    assert_eq!(code(&o), 4);
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["t0ij"]["pass"], Value::Bool(false));
    assert_eq!(report["omega_def"]["pass"], Value::Bool(false));
    assert_eq!(report["basic_identity"]["pass"], Value::Bool(true));
}

#[test]
fn verify_rejects_unparseable_input() {
    let dir = tempfile::tempdir().unwrap();
    let empty = write(dir.path(), "empty.json", "");
    assert_eq!(code(&ckd(&["verify", &empty])), 1);
    let partial = write(dir.path(), "partial.json", r#"{"eta": 1.0}"#);
    assert_eq!(code(&ckd(&["verify", &partial])), 1);
    assert_eq!(code(&ckd(&["verify", "/nonexistent/record.json"])), 1);
}

#[test]
fn tolerance_comes_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let r = solve_json(&[
        "--labels", "-1,1,1", "--a", "0.3", "--b", "0.7", "--C", "0.4", "--psi-c", "0.3",
    ]);
    let path = write(dir.path(), "r.json", &r.to_string());
    let strict = Command::new(env!("CARGO_BIN_EXE_ckd"))
        .args(["verify", &path])
        .env("CKD_TOL", "1e-30")
        .output()
        .unwrap();
    assert_eq!(code(&strict), 4);
    assert_eq!(code(&ckd(&["verify", &path])), 0);
}

#[test]
fn sweep_csv_is_deterministic() {
    let args = ["sweep", "--count", "5", "--seed", "11", "--csv"];
    let (x, y) = (ckd(&args), ckd(&args));
    assert_eq!(code(&x), 0);
    assert_eq!(x.stdout, y.stdout);
    let text = stdout(&x);
    let mut rows = text.lines();
    assert_eq!(
        rows.next(),
        Some("labels,law-id,max-residual,pass-count,fail-count")
    );
    assert!(rows.any(|l| l.starts_with("\"-1,-1,-1\",basic_identity,")));
    let other = ckd(&["sweep", "--count", "5", "--seed", "12", "--csv"]);
    assert_ne!(x.stdout, other.stdout);
}

#[test]
fn sweep_single_split_complex_de_sitter() {
    let o = ckd(&["sweep", "--labels=-1,-1,-1", "--count", "30", "--json"]);
    assert_eq!(code(&o), 0);
    let rows: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["solved"], Value::from(30));
    let laws = rows[0]["laws"].as_array().unwrap();
    for id in [
        "sr_cos",
        "sr_dualcos",
        "bt_cos",
        "bt_dualcos",
        "t3iJ",
        "t4ij",
    ] {
        let l = laws.iter().find(|l| l["law_id"] == id).unwrap();
        assert_eq!(l["fail_count"], Value::from(0), "{id}");
        assert_eq!(l["pass_count"], Value::from(30), "{id}");
    }
}

#[test]
fn contract_reports_first_order_convergence() {
    let o = ckd(&[
        "contract", "--labels", "1,1,1", "--param", "kappa1", "--json",
    ]);
    assert_eq!(code(&o), 0);
    let t: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let ratio = &t["phase_ratio"];
    assert_eq!(ratio["name"], "omega_over_2kappa1");
    assert!(ratio["extrapolation_error"].as_f64().unwrap() < 1e-6);
    for row in t["rows"].as_array().unwrap() {
        let dev: Vec<f64> = row["deviations"]
            .as_array()
            .unwrap()
            .iter()
            .map(|d| d.as_f64().unwrap())
            .collect();
        assert!(dev.windows(2).all(|w| w[1] <= w[0].max(1e-11)), "{row}");
    }
}

#[test]
fn contract_needs_a_nonzero_parameter() {
    let o = ckd(&["contract", "--labels", "1,0,1", "--param", "kappa1"]);
    assert_eq!(code(&o), 1);
    let o = ckd(&["contract", "--labels", "1,1,1", "--param", "kappa3"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn algebra_check_passes_and_catches_a_corrupted_constant() {
    let o = ckd(&["algebra-check"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert_eq!(
        stdout(&o).lines().filter(|l| l.contains("exact")).count(),
        27 * 8
    );
    let o = ckd(&["algebra-check", "--labels", "1,1,1", "--corrupt", "0"]);
    assert_eq!(code(&o), 4);
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn normalize_replaces_labels_by_signs() {
    let o = ckd(&[
        "algebra-check",
        "--labels",
        "2,-0.5,0",
        "--normalize",
        "--json",
    ]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["labels"]["eta"], Value::from(1.0));
    assert_eq!(v[0]["labels"]["kappa1"], Value::from(-1.0));
    // raw labels stay raw, and the comparison is no longer rational
    let o = ckd(&["algebra-check", "--labels", "2,-0.5,0", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["labels"]["eta"], Value::from(2.0));
}

#[test]
fn laws_lists_the_registry() {
    let o = ckd(&["laws", "--json"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let ids: Vec<&str> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|l| l["id"].as_str().unwrap())
        .collect();
    for id in [
        "basic_identity",
        "t0ij",
        "gramm_gamma",
        "loop_point",
        "compat",
        "zero_eta_zero",
    ] {
        assert!(ids.contains(&id), "{id}");
    }
}

#[test]
fn bad_flags_exit_one_and_help_exits_zero() {
    assert_eq!(code(&ckd(&["solve", "--labels", "1,1"])), 1);
    assert_eq!(code(&ckd(&["frobnicate"])), 1);
    assert_eq!(code(&ckd(&["sweep", "--count", "0"])), 1);
    assert_eq!(code(&ckd(&["--help"])), 0);
    assert_eq!(code(&ckd(&["--version"])), 0);
}
