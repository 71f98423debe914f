use std::process::{Command, Output};

use serde_json::Value;

fn rootform(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rootform")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn check<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == name)
        .unwrap_or_else(|| panic!("no check {name}"))
}

#[test]
fn roots_json_and_csv() {
    let out = rootform(&["roots", "--type", "A2"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v.as_array().unwrap().len(), 6);
    assert!(v.as_array().unwrap().contains(&serde_json::json!([1, 1])));
    let out = rootform(&["roots", "--type", "G2", "--emit", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 13);
    assert_eq!(text.lines().next().unwrap(), "c1,c2");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["verify", "all", "--type", "H3"],
        vec!["roots", "--type", "A0"],
        vec!["irrep", "--type", "A2", "--weight", "1"],
        vec!["irrep", "--type", "A2", "--weight", "-1,0"],
        vec!["irrep", "--type", "A2", "--weight", "9,9", "--cap", "10"],
        vec!["verify", "nonsense", "--type", "A2"],
        vec!["chevgroup", "verify", "--type", "A2", "--field", "F17"],
        vec!["peterweyl", "schur", "--j1", "1/3", "--j2", "1"],
        vec!["roots"],
        vec!["no-such-command"],
    ] {
        let out = rootform(&args);
        assert_eq!(code(&out), 2, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn mutated_gamma_fixture_fails_with_jacobi_witness() {
    let out = rootform(&["verify", "all", "--type", "A2", "--mutate-gamma"]);
    assert_eq!(code(&out), 1);
    let r = json(&out);
    assert_eq!(r["passed"], false);
    let j = check(&r, "jacobi");
    assert_eq!(j["passed"], false);
    assert!(j["witness"].as_str().unwrap().starts_with('('));
    assert!(r["data"]["fixture"]["mutated_gamma"].is_array());
    // A1 has no structure constant to flip
    assert_eq!(code(&rootform(&["verify", "all", "--type", "A1", "--mutate-gamma"])), 2);
}

#[test]
fn verify_all_g2_passes_and_is_deterministic() {
    let a = rootform(&["verify", "all", "--type", "G2", "--seed", "7"]);
    assert_eq!(code(&a), 0, "{}", String::from_utf8_lossy(&a.stdout));
    let b = Command::new(env!("CARGO_BIN_EXE_rootform"))
        .args(["verify", "all", "--type", "G2", "--seed", "7"])
        .env("ROOTFORM_THREADS", "3")
        .output()
        .unwrap();
    assert_eq!(a.stdout, b.stdout);
    let r = json(&a);
    assert_eq!(r["schema"], 1);
    assert_eq!(r["config"]["type"], "G2");
    for suite in ["liealg", "chevgroup", "compact", "hwmodules", "peterweyl"] {
        assert!(r["checks"].as_array().unwrap().iter().any(|c| c["suite"] == suite), "{suite}");
    }
    assert_eq!(r["data"]["fundamental_group_order"], 1);
    let c = rootform(&["verify", "all", "--type", "G2", "--seed", "8"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn verify_csv() {
    let out = rootform(&["verify", "liealg", "--type", "B2", "--emit", "csv"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("suite,name,cases,failures,passed"));
    assert!(text.contains("liealg,jacobi,"));
}

#[test]
fn config_file_and_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "type = \"A2\"\nseed = 3\nfield = \"F5\"\n").unwrap();
    let out = rootform(&["chevgroup", "verify", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let r = json(&out);
    assert_eq!(r["config"]["seed"], 3);
    assert!(r["checks"].as_array().unwrap().iter().all(|c| c["suite"] != "chevgroup_rational"));
    let out = rootform(&["chevgroup", "verify", "--config", cfg.to_str().unwrap(), "--seed", "4", "--field", "rational"]);
    let r = json(&out);
    assert_eq!(r["config"]["seed"], 4);
    assert!(r["checks"].as_array().unwrap().iter().any(|c| c["suite"] == "chevgroup_rational"));
    std::fs::write(&cfg, "colour = 1\n").unwrap();
    assert_eq!(code(&rootform(&["roots", "--config", cfg.to_str().unwrap()])), 2);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = rootform(&["peterweyl", "lattice", "--type", "A3", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r["data"]["lattice"]["fundamental_group_order"], 4);
    assert_eq!(r["data"]["a3_remark"]["lambda_over_2pi_i"], "1/2");
    assert_eq!(check(&r, "a3_remark")["passed"], true);
}

#[test]
fn rootcat_and_liealg_tables() {
    let v = json(&rootform(&["rootcat", "--type", "B2"]));
    assert_eq!(v["objects"].as_array().unwrap().len(), 8);
    assert_eq!(v["shift"][0], 4);
    assert_eq!(v["a_matrix"][0][0], 2);
    let g = json(&rootform(&["liealg", "--type", "A2", "--emit", "gamma"]));
    let table = g["gamma"].as_object().unwrap();
    assert!(!table.is_empty());
    assert!(table.values().all(|e| e["gamma"].as_i64().unwrap().abs() == 1));
    let k = json(&rootform(&["liealg", "--type", "G2", "--emit", "killing"]));
    assert_eq!(k["equal"], true);
    assert_eq!(k["basis"].as_array().unwrap().len(), 14);
}

#[test]
fn compact_exp_and_verify() {
    let v = json(&rootform(&["compact", "exp", "--type", "A2", "--gen", "beta", "--obj", "0", "--t", "0"]));
    let m = v["matrix"].as_array().unwrap();
    assert_eq!(m.len(), 8);
    for (r, row) in m.iter().enumerate() {
        for (c, x) in row.as_array().unwrap().iter().enumerate() {
            assert_eq!(x.as_f64().unwrap(), if r == c { 1.0 } else { 0.0 });
        }
    }
    let v = json(&rootform(&["compact", "exp", "--type", "A1", "--gen", "xi", "--obj", "1", "--t", "-0.7"]));
    assert_eq!(v["obj_name"].as_str().unwrap().is_empty(), false);
    assert_eq!(code(&rootform(&["compact", "exp", "--type", "A1", "--gen", "xi", "--obj", "9", "--t", "1"])), 2);
    let out = rootform(&["compact", "verify", "--type", "B2", "--seed", "1"]);
    assert_eq!(code(&out), 0);
    let r = json(&out);
    let e = check(&r, "closed_form_exponentials");
    assert!(e["worst"].as_f64().unwrap() <= e["tolerance"].as_f64().unwrap());
    // an absurd tolerance makes the numeric checks fail
    let out = rootform(&["compact", "verify", "--type", "A1", "--exp-tol", "0"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn irrep_tables() {
    let v = json(&rootform(&["irrep", "--type", "G2", "--weight", "0,1", "--emit", "dims"]));
    assert_eq!(v["dim"], v["weyl_dim"]);
    let v = json(&rootform(&["irrep", "--type", "A2", "--weight", "1,0", "--emit", "dims"]));
    assert_eq!(v["dim"], 3);
    let v = json(&rootform(&["irrep", "--type", "A1", "--weight", "2", "--emit", "gram"]));
    assert_eq!(v["gram"], serde_json::json!([["1", "0", "0"], ["0", "2", "0"], ["0", "0", "4"]]));
    let v = json(&rootform(&["irrep", "--type", "A1", "--weight", "1", "--emit", "actions"]));
    assert_eq!(v["E"][0], serde_json::json!([["0", "1"], ["0", "0"]]));
}

#[test]
fn schur_command() {
    let out = rootform(&["peterweyl", "schur", "--j1", "1/2", "--j2", "1/2", "--grid", "64"]);
    assert_eq!(code(&out), 0);
    let r = json(&out);
    let first = &r["data"]["schur"]["cases"][0];
    assert!((first["value"][0].as_f64().unwrap() - 0.5).abs() < 1e-6);
    let out = rootform(&["peterweyl", "schur", "--j1", "0.5", "--j2", "1", "--grid", "32"]);
    assert_eq!(code(&out), 0);
    // the midpoint rule in θ cannot reach the volume tolerance at 64 points
    let out = rootform(&["peterweyl", "schur", "--j1", "1/2", "--j2", "1/2", "--rule", "midpoint"]);
    assert_eq!(code(&out), 1);
    assert_eq!(check(&json(&out), "haar_volume")["passed"], false);
}

#[test]
fn plancherel_and_qplus() {
    let out = rootform(&["peterweyl", "plancherel", "--type", "B2", "--trunc", "0,0;1,0;0,1;1,1"]);
    assert_eq!(code(&out), 0);
    let r = json(&out);
    assert_eq!(r["data"]["blocks"].as_array().unwrap().len(), 4);
    assert_eq!(check(&r, "parseval_isometry")["failures"], 0);
    let v = json(&rootform(&["peterweyl", "qplus", "--type", "A1", "--bound", "4"]));
    let ws: Vec<&Value> = v["q_plus"].as_array().unwrap().iter().map(|e| &e["weight"]).collect();
    assert_eq!(ws, vec![&serde_json::json!([0]), &serde_json::json!([2]), &serde_json::json!([4])]);
    assert_eq!(code(&rootform(&["peterweyl", "qplus", "--type", "A1", "--bound", "-1"])), 2);
}
