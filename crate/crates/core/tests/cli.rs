use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kye-witness"))
        .args(args)
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
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
fn build_writes_displayed_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.json");
    let out = run(&["build", "--s", "2r2", "--t", "2r2", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["dims"], serde_json::json!([2, 2, 2]));
    assert_eq!(doc["matrix"][3][3], serde_json::json!([2.8284271247461903, 0.0]));
    assert_eq!(doc["matrix"][2][5], serde_json::json!([-1.0, 0.0]));
    let golden: Value = serde_json::from_str(include_str!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/fixtures/witness_2r2.json"
    )))
    .unwrap();
    assert_eq!(doc["matrix"], golden["matrix"]);
}

#[test]
fn build_records_variety_flag() {
    let out = run(&["build", "--s", "2", "--t", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["meta"]["on_variety"], true);
    let out = run(&["build", "--s", "2", "--t", "2"]);
    assert_eq!(json(&out)["meta"]["on_variety"], false);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["build", "--s", "0", "--t", "1"][..],
        &["build", "--s", "abc"],
        &["verify", "--restarts", "0"],
        &["detect", "bogus"],
        &["detect", "rho-lambda:2"],
        &["spanning", "--families", "all"],
        &["frobnicate"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn verify_passes_on_the_curve() {
    let out = run(&["verify", "--s", "2r2", "--t", "2r2", "--seed", "7", "--json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let report = json(&out);
    assert!(report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["status"] == "PASS"));
    assert!((check(&report, "witness_not_psd")["value"].as_f64().unwrap() + 1.0).abs() < 1e-9);
    assert_eq!(
        check(&report, "spanning_ranks")["details"]["ranks"],
        serde_json::json!([8, 8, 8, 8, 8, 8, 8, 8])
    );
    assert_eq!(report["seed"], 7);
    assert_eq!(report["elapsed_ms"], 0);

    let other = run(&["verify", "--s", "2", "--t", "4", "--restarts", "16"]);
    assert_eq!(other.status.code(), Some(0));
}

#[test]
fn verify_reports_are_byte_identical() {
    let args = ["verify", "--seed", "7", "--json"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.stdout, b.stdout);
    let text = ["verify", "--seed", "11", "--restarts", "8"];
    assert_eq!(run(&text).stdout, run(&text).stdout);
}

#[test]
fn verify_off_the_curve_warns_and_skips() {
    let out = run(&["verify", "--s", "1", "--t", "1", "--restarts", "8", "--json"]);
    let report = json(&out);
    assert_eq!(report["warnings"].as_array().unwrap().len(), 1);
    let names: Vec<&str> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(!names.contains(&"seesaw_block_positive"));
    assert!(names.contains(&"witness_not_psd"));
    let text = run(&["verify", "--s", "1", "--t", "1", "--restarts", "8"]);
    assert!(String::from_utf8_lossy(&text.stdout).contains("WARN"));
}

#[test]
fn detect_verdicts() {
    let x = json(&run(&["detect", "xstate", "--s", "2r2", "--t", "2r2", "--json"]));
    assert_eq!(x["result"]["verdict"], "PPT_ENTANGLED_DETECTED");
    let value = x["result"]["pairing"].as_f64().unwrap();
    assert!((value - (8.0 / 2f64.sqrt() - 8.0)).abs() < 1e-10);

    let out = run(&["detect", "rho-lambda:0.5", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["result"]["verdict"], "SEPARABLE_CERTIFIED");
    assert!(r["result"]["pairing"].as_f64().unwrap().abs() < 1e-10);

    let p = json(&run(&["detect", "perturbed:0.1", "--json"]));
    assert_eq!(p["result"]["verdict"], "PPT_ENTANGLED_DETECTED");
    assert!(p["result"]["pairing"].as_f64().unwrap() < 0.0);
    let minima = p["result"]["ppt"]["min_eigenvalues"].as_object().unwrap();
    assert_eq!(minima.len(), 8);
    assert!(minima.values().all(|v| v.as_f64().unwrap() > 0.0));
}

#[test]
fn detect_reads_state_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rho.json");
    let mut m = vec![vec![[0.0, 0.0]; 8]; 8];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = [0.125, 0.0];
    }
    let doc = serde_json::json!({ "dims": [2, 2, 2], "matrix": m, "meta": {} });
    std::fs::write(&path, doc.to_string()).unwrap();
    let spec = format!("file:{}", path.display());
    let r = json(&run(&["detect", &spec, "--json"]));
    assert_eq!(r["result"]["verdict"], "INCONCLUSIVE");
    let expected = 2.0 * 2.0 * 2f64.sqrt() / 8.0;
    assert!((r["result"]["pairing"].as_f64().unwrap() - expected).abs() < 1e-12);

    assert_eq!(run(&["detect", "file:/nonexistent.json"]).status.code(), Some(2));
}

#[test]
fn spanning_families() {
    let d = json(&run(&["spanning", "--json"]));
    assert_eq!(check(&d, "spanning_ranks")["details"]["full_spanning"], true);
    let pv1 = json(&run(&["spanning", "--families", "pv1", "--json"]));
    assert_eq!(check(&pv1, "pv1_span")["value"], 6.0);
    assert_eq!(
        check(&pv1, "pv1_span")["details"]["complement"]
            .as_array()
            .unwrap()
            .len(),
        2
    );
    let ten = json(&run(&["spanning", "--families", "canonical-ten", "--json"]));
    assert_eq!(
        check(&ten, "spanning_ranks")["details"]["ranks"],
        serde_json::json!([8, 8, 8, 8, 8, 8, 8, 8])
    );
    assert_eq!(check(&ten, "spanning_ranks")["details"]["samples"], 10);
}

#[test]
fn out_flag_saves_json_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&["spanning", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let saved: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(saved["command"], "spanning");
    assert!(saved["tool_version"].is_string());
}

#[test]
fn full_report_lists_each_criterion_once() {
    let out = run(&["report", "--json"]);
    let r = json(&out);
    let names: Vec<String> = r["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(names.len(), 12);
    for (i, name) in names.iter().enumerate() {
        assert!(name.starts_with(&format!("c{:02}_", i + 1)), "{name}");
    }
    // the strict "< -1" cut criterion cannot hold; everything else does
    let failed: Vec<&String> = names
        .iter()
        .zip(r["checks"].as_array().unwrap())
        .filter(|(_, c)| c["status"] != "PASS")
        .map(|(n, _)| n)
        .collect();
    assert_eq!(failed, vec!["c08_biseparable_detection"]);
    assert_eq!(out.status.code(), Some(1));
}
