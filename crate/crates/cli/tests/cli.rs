//! Process-level tests of the binary: exit codes, JSON output shape, and
//! the offline fetch/batch path.

use std::process::Command;

fn avfq() -> Command {
    Command::new(env!("CARGO_BIN_EXE_avfq"))
}

#[test]
fn analyze_succeeds_with_json() {
    let out = avfq()
        .args([
            "analyze", "--q", "3", "--poly", "9,-3,4,-1,1", "--json",
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["label"], "2.3.ab_e");
    assert_eq!(v["point_count"], "10");
    assert_eq!(v["cyclic"]["verdict"], true);
    assert_eq!(v["rich"]["verdict"], true);
    assert_eq!(v["conductor_index"], "9");
    assert!(v["cyclic"]["methods_agree"].as_bool().unwrap());
}

#[test]
fn invalid_weil_polynomial_exits_2() {
    // x^2 - 3x + 2 has the root 1, off the circle.
    let out = avfq()
        .args(["analyze", "--q", "2", "--poly", "2,-3,1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    // Non-prime-power q.
    let out = avfq()
        .args(["analyze", "--q", "6", "--poly", "6,1,1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    // Garbage coefficients.
    let out = avfq()
        .args(["analyze", "--q", "2", "--poly", "a,b"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn enumerate_lists_elliptic_classes() {
    let out = avfq()
        .args(["enumerate", "--q", "4", "--json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 7);
}

#[test]
fn table1_builtin_rejects_higher_genus() {
    let out = avfq()
        .args(["table1", "--g", "2", "--q", "2", "--source", "builtin"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn offline_fetch_and_batch_roundtrip() {
    let out = avfq()
        .args(["fetch", "--g", "2", "--q", "4", "--offline"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let records: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(records
        .as_array()
        .unwrap()
        .iter()
        .any(|r| r["label"] == "2.4.c_b"));
    // Missing fixture in offline mode: failure exit 1.
    let out = avfq()
        .args(["fetch", "--g", "5", "--q", "7", "--offline"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));

    // Batch over a small inline file.
    let dir = std::env::temp_dir().join("avfq-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("batch.json");
    std::fs::write(
        &input,
        r#"[{"label": "a", "q": 2, "poly": [2, 1, 1]},
           {"label": "b", "q": 3, "poly": [3, 0, 1]}]"#,
    )
    .unwrap();
    let outfile = dir.join("reports.json");
    let out = avfq()
        .args([
            "batch",
            "--input",
            input.to_str().unwrap(),
            "--jobs",
            "2",
            "--output",
            outfile.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let reports: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&outfile).unwrap()).unwrap();
    let arr = reports.as_array().unwrap();
    assert_eq!(arr.len(), 2);
    assert_eq!(arr[0]["label"], "a");
    assert_eq!(arr[1]["label"], "b");
    assert_eq!(arr[0]["cyclic"]["verdict"], true);
    assert_eq!(arr[1]["rich"]["verdict"], true);
}
