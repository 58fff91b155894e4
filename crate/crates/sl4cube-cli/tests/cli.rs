use serde_json::Value;
use std::process::{Command, Output};

fn sl4cube(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sl4cube"))
        .args(args)
        .output()
        .expect("spawn sl4cube")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json report")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn all_suites_to_three_pass() {
    let out = sl4cube(&[
        "verify", "--n-max", "3", "--suite", "all", "--output", "json",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let doc = json(&out);
    assert_eq!(doc["config"]["n_max"], 3);
    let checks = doc["checks"].as_array().unwrap();
    assert!(checks.len() > 100);
    for c in checks {
        assert_ne!(c["status"], "fail");
        assert!(c.get("witness").is_none());
    }
}

#[test]
fn degenerate_n_zero() {
    let out = sl4cube(&["verify", "--n-min", "0", "--n-max", "0", "--output", "json"]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    let ids: Vec<&str> = doc["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["id"].as_str().unwrap())
        .collect();
    assert!(ids.contains(&"cube.idempotents.N0"));
    assert!(ids.contains(&"poly.normalization.N0"));
}

#[test]
fn faults_fail_with_witness() {
    for (fault, suite) in [
        ("corrupt-generator", "sl4"),
        ("corrupt-calp-sign", "special"),
        ("corrupt-krawtchouk", "special"),
    ] {
        let out = sl4cube(&[
            "verify", "--n-max", "2", "--suite", suite, "--fault", fault, "--output", "json",
        ]);
        assert_eq!(code(&out), 1, "{fault}");
        let doc = json(&out);
        let failed: Vec<&Value> = doc["checks"]
            .as_array()
            .unwrap()
            .iter()
            .filter(|c| c["status"] == "fail")
            .collect();
        assert!(!failed.is_empty(), "{fault}");
        assert!(failed.iter().all(|c| c["witness"].is_string()));
    }
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["verify", "--n-min", "3", "--n-max", "2"][..],
        &["verify", "--n-max", "2", "--oracle-n-max", "3"],
        &["verify", "--suite", "nonsense"],
        &["verify", "--bogus"],
        &["table", "--kind", "dims"],
    ] {
        assert_eq!(code(&sl4cube(args)), 2, "{args:?}");
    }
    assert_eq!(code(&sl4cube(&["--help"])), 0);
}

#[test]
fn env_overrides_and_flags_win() {
    let run = |env_n: &str, extra: &[&str]| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_sl4cube"));
        cmd.args(["verify", "--suite", "sl4", "--output", "json"])
            .args(extra);
        cmd.env("SL4CUBE_N_MAX", env_n).env("SL4CUBE_SEED", "7");
        json(&cmd.output().unwrap())
    };
    let doc = run("1", &[]);
    assert_eq!(doc["config"]["n_max"], 1);
    assert_eq!(doc["config"]["seed"], 7);
    let doc = run("1", &["--n-max", "2", "--seed", "9"]);
    assert_eq!(doc["config"]["n_max"], 2);
    assert_eq!(doc["config"]["seed"], 9);
}

#[test]
fn reports_are_deterministic() {
    for fmt in ["json", "csv", "text"] {
        let args = [
            "verify",
            "--n-max",
            "3",
            "--suite",
            "poly,tensor",
            "--seed",
            "42",
            "--output",
            fmt,
        ];
        let a = sl4cube(&args);
        let b = sl4cube(&args);
        assert_eq!(code(&a), 0);
        assert_eq!(a.stdout, b.stdout, "{fmt}");
    }
}

#[test]
fn oracles_skip_above_cap() {
    let out = sl4cube(&[
        "verify",
        "--n-max",
        "2",
        "--oracle-n-max",
        "1",
        "--suite",
        "tensor",
        "--output",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    let status = |id: &str| {
        doc["checks"]
            .as_array()
            .unwrap()
            .iter()
            .find(|c| c["id"] == id)
            .unwrap()["status"]
            .clone()
    };
    assert_eq!(status("tensor.orbits.N1"), "pass");
    assert_eq!(status("tensor.orbits.N2"), "skipped");
}

#[test]
fn nonzero_basepoint_passes() {
    let a = sl4cube(&[
        "verify",
        "--n-max",
        "3",
        "--suite",
        "cube,correspond",
        "--basepoint",
        "5",
    ]);
    assert_eq!(code(&a), 0);
}

fn csv_rows(bytes: &[u8]) -> Vec<Vec<String>> {
    csv::Reader::from_reader(bytes)
        .records()
        .map(|r| r.unwrap().iter().map(str::to_string).collect())
        .collect()
}

#[test]
fn tables() {
    let dims = sl4cube(&["table", "--kind", "dims", "--n", "5"]);
    assert_eq!(code(&dims), 0);
    let col: Vec<String> = csv_rows(&dims.stdout)
        .into_iter()
        .map(|r| r[1].clone())
        .collect();
    assert_eq!(col, ["1", "4", "10", "20", "35", "56"]);

    let tr = sl4cube(&["table", "--kind", "transition", "--n", "1"]);
    assert_eq!(csv_rows(&tr.stdout).len(), 16);
    assert!(
        String::from_utf8_lossy(&tr.stdout).starts_with("N,s,t,u,S,T,U,P_value_num,P_value_den\n")
    );

    let path = std::env::temp_dir().join(format!("sl4cube-wedderburn-{}.csv", std::process::id()));
    let w = sl4cube(&[
        "table",
        "--kind",
        "wedderburn",
        "--n",
        "4",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&w), 0);
    let rows = csv_rows(&std::fs::read(&path).unwrap());
    std::fs::remove_file(&path).ok();
    assert_eq!(rows, [["0", "12", "25"], ["1", "4", "9"], ["2", "0", "1"]]);

    let k = sl4cube(&["table", "--kind", "krawtchouk", "--n", "1"]);
    // f_0 = 1, f_1 = η, f_2 = η² − 1
    let rows = csv_rows(&k.stdout);
    let f2: Vec<&str> = rows
        .iter()
        .filter(|r| r[1] == "2")
        .map(|r| r[3].as_str())
        .collect();
    assert_eq!(f2, ["-1", "0", "1"]);
}

#[test]
fn table_io_error_surfaces() {
    let out = sl4cube(&[
        "table",
        "--kind",
        "dims",
        "--n",
        "1",
        "--out",
        "/nonexistent-dir/x.csv",
    ]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("nonexistent-dir"));
}
