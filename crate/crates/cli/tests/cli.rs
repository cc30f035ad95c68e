//! End-to-end runs of the `pscoh` binary.

use std::process::{Command, Output};

use serde_json::Value;

fn pscoh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pscoh")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn dims(v: &Value) -> Vec<u64> {
    v.as_array().expect("array").iter().map(|x| x.as_u64().expect("integer")).collect()
}

#[test]
fn betti_numbers_of_builtin_complexes() {
    for (name, expected) in [("circle", vec![1, 1]), ("sphere", vec![1, 0, 1]), ("torus", vec![1, 2, 1])] {
        let out = pscoh(&["betti", "--complex", &format!("builtin:{name}")]);
        assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
        let v = json(&out);
        assert_eq!(dims(&v["report"]["whitney"]), expected);
        assert_eq!(dims(&v["report"]["simplicial"]), expected);
        assert_eq!(v["ok"], true);
    }
}

#[test]
fn betti_reads_complex_files_and_prints_tables() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("square.json");
    std::fs::write(&path, r#"{"maximal_simplices": [[0,1],[1,2],[2,3],[0,3]]}"#).unwrap();
    let out = pscoh(&["betti", "--complex", path.to_str().unwrap(), "--text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("whitney     1 1"), "{text}");
    assert!(text.contains("verdict     ok"));
}

#[test]
fn chevalley_eilenberg_cohomology() {
    let out = pscoh(&["ce", "--liealg", "builtin:abelian2"]);
    assert_eq!(dims(&json(&out)["report"]["cohomology"]), vec![1, 2, 1]);
    let out = pscoh(&["ce", "--liealg", "builtin:sl2"]);
    let v = json(&out);
    assert_eq!(dims(&v["report"]["cohomology"]), vec![1, 0, 0, 1]);
    assert_eq!(v["report"]["degrees"][3]["representatives"][0][0], "1");
}

#[test]
fn jacobi_violation_is_reported_with_indices() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        r#"{"dim": 3, "brackets": [{"i": 0, "j": 1, "coeffs": {"2": "1"}}, {"i": 1, "j": 2, "coeffs": {"1": "1"}}]}"#,
    )
    .unwrap();
    let out = pscoh(&["ce", "--liealg", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("Jacobi fails for (e_0, e_1, e_2)"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn input_errors_exit_with_code_two() {
    let dir = tempfile::tempdir().unwrap();
    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, "{\"maximal_simplices\": [[0, 1],\n  [1, }").unwrap();
    let out = pscoh(&["betti", "--complex", broken.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 2 column"), "{}", stderr(&out));

    let out = pscoh(&["betti", "--complex", "builtin:klein"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("available: circle"));

    let out = pscoh(&["betti", "--complex", "builtin:circle", "--max-simplices", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("size limit"));

    let out = pscoh(&["algebroid-cohomology", "--complex", "builtin:circle"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--liealg is required"));

    let out = pscoh(&["betti", "--complex", "builtin:circle", "--model", "smooth"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn algebroid_cohomology_matches_prediction() {
    let out = pscoh(&["algebroid-cohomology", "--complex", "builtin:circle", "--liealg", "builtin:abelian1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(dims(&v["report"]["computed"]), vec![1, 2, 1]);
    assert_eq!(dims(&v["report"]["predicted"]), vec![1, 2, 1]);
    assert_eq!(v["options"]["model"], "whitney");

    let out = pscoh(&["algebroid-cohomology", "--complex", "builtin:point", "--liealg", "builtin:solvable2"]);
    assert_eq!(dims(&json(&out)["report"]["computed"]), vec![1, 1, 0]);
}

#[test]
fn pr_model_with_spurious_top_classes_fails_the_verdict() {
    let out = pscoh(&[
        "algebroid-cohomology",
        "--complex",
        "builtin:circle",
        "--liealg",
        "builtin:abelian1",
        "--model",
        "pr",
        "--poly-degree",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["ok"], false);
    assert_eq!(v["options"]["model"], "P_1");
}

#[test]
fn verify_suites_pass_on_the_circle() {
    for suite in ["kunneth", "mv", "cartan", "subdivision"] {
        let out = pscoh(&["verify", suite, "--complex", "builtin:circle", "--liealg", "builtin:sl2", "--cases", "30"]);
        assert_eq!(out.status.code(), Some(0), "{suite}: {}", String::from_utf8_lossy(&out.stdout));
        let v = json(&out);
        assert_eq!(v["report"]["suite"], suite);
        assert!(v["report"]["properties"].as_array().unwrap().iter().all(|p| p["passed"] == p["cases"]));
    }
}

#[test]
fn bracket_sign_experiment_names_the_standard_convention() {
    let out = pscoh(&["verify", "bracket-sign", "--complex", "builtin:solid_simplex", "--liealg", "builtin:sl2", "--cases", "40"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["report"]["details"]["selected"], "standard");
    assert_eq!(v["report"]["details"]["conventions"]["paper"]["failed"][0], "cartan_equals_tensor_differential");
}

#[test]
fn minus_sign_fails_the_cartan_suite_with_a_counterexample() {
    let args = ["verify", "cartan", "--complex", "builtin:solid_simplex", "--liealg", "builtin:sl2", "--cases", "40"];
    let out = pscoh(&[&args[..], &["--bracket-sign", "paper"]].concat());
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert!(v["report"]["properties"][0]["counterexample"].as_str().unwrap().contains("cartan"));
    let out = pscoh(&[&args[..], &["--bracket-sign", "auto"]].concat());
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn reports_are_deterministic_and_written_to_out() {
    let args = ["verify", "kunneth", "--complex", "builtin:circle", "--liealg", "builtin:solvable2", "--cases", "25", "--seed", "11"];
    let a = pscoh(&args);
    let b = pscoh(&args);
    assert_eq!(a.stdout, b.stdout);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let c = pscoh(&[&args[..], &["--out", path.to_str().unwrap()]].concat());
    assert_eq!(c.status.code(), Some(0));
    assert!(c.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), a.stdout);
    let other_seed = pscoh(&[&args[..8], &["--seed", "12"]].concat());
    assert_ne!(other_seed.stdout, a.stdout);
}

#[test]
fn config_file_supplies_defaults_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.toml");
    std::fs::write(&path, "complex = \"builtin:sphere\"\nliealg = \"builtin:abelian1\"\nmodel = \"pr\"\n").unwrap();
    let cfg = path.to_str().unwrap();
    let out = pscoh(&["algebroid-cohomology", "--config", cfg, "--model", "whitney"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["inputs"]["complex"], "builtin:sphere");
    assert_eq!(dims(&v["report"]["computed"]), vec![1, 1, 1, 1]);

    std::fs::write(&path, "colour = \"blue\"\n").unwrap();
    let out = pscoh(&["betti", "--config", cfg, "--complex", "builtin:circle"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_all_runs_every_suite_in_name_order() {
    let out = pscoh(&["verify", "all", "--complex", "builtin:circle", "--liealg", "builtin:abelian1", "--cases", "10"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let v = json(&out);
    let names: Vec<&str> = v["report"]["suites"].as_array().unwrap().iter().map(|s| s["suite"].as_str().unwrap()).collect();
    assert_eq!(names, ["bracket-sign", "cartan", "kunneth", "mv", "star", "structural", "subdivision"]);
}

#[test]
fn list_names_the_builtins() {
    let out = pscoh(&["list", "--text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("builtin:torus"));
    assert!(text.contains("builtin:sl2"));
}
