use std::path::Path;
use std::process::{Command, Output};

use wsc::{parse_wsc, verify_weak};

fn wsc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wsc")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> &str {
    std::str::from_utf8(&o.stdout).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn construct_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let code = dir.path().join("code.wsc");
    let log = dir.path().join("log.json");
    let o = wsc(&[
        "construct",
        "--t",
        "3",
        "--d",
        "1",
        "--l",
        "16",
        "--f",
        "2",
        "--n",
        "48",
        "--seed",
        "7",
        "-o",
        path(&code),
        "--log",
        path(&log),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let (m, params) = parse_wsc(&std::fs::read_to_string(&code).unwrap()).unwrap();
    assert_eq!((params.t, params.d), (3, 1));
    assert!(verify_weak(&m, 3, 1, None).unwrap().ok);
    let log: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&log).unwrap()).unwrap();
    assert_eq!(log["final_n"].as_u64().unwrap() as usize, m.size());
    assert_eq!(log["config"]["family"], "weak");

    let v = wsc(&["verify", path(&code)]);
    assert_eq!(v.status.code(), Some(0));
    assert!(stdout(&v).starts_with("ok: "));
}

#[test]
fn round_trip_smoke_grid() {
    let dir = tempfile::tempdir().unwrap();
    for (t, d, seed) in [(2, 1, 1), (2, 3, 2), (3, 2, 3), (4, 1, 4)] {
        let code = dir.path().join(format!("c{seed}.wsc"));
        let (t, d, seed) = (t.to_string(), d.to_string(), seed.to_string());
        let o = wsc(&["construct", "--t", &t, "--d", &d, "--l", "20", "--n", "30", "--seed", &seed, "-o", path(&code)]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(wsc(&["verify", path(&code)]).status.code(), Some(0));
    }
}

#[test]
fn identity_fails_with_a_pair() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("id.wsc");
    std::fs::write(&file, "4 4 3 3\n1000\n0100\n0010\n0001\n").unwrap();
    let o = wsc(&["verify", "--t", "3", "--d", "3", path(&file), "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["ok"], false);
    assert_eq!(report["violations"][0]["subset"], serde_json::json!([0, 1]));
    assert_eq!(report["violations"][0]["weight_one_rows"], 2);
}

#[test]
fn bounds_table_rows_ordered() {
    let o = wsc(&["bounds", "--t-max", "8", "--d", "1", "--l", "64", "--f", "2", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let mut r = csv::Reader::from_reader(o.stdout.as_slice());
    let rows: Vec<csv::StringRecord> = r.records().map(|x| x.unwrap()).collect();
    assert_eq!(rows.len(), 7);
    for row in rows {
        let v: Vec<f64> = (2..5).map(|i| row[i].parse().unwrap()).collect();
        assert!(v[0] < v[1] && v[1] < v[2], "{row:?}");
    }
}

#[test]
fn cff_construct_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let code = dir.path().join("cff.wsc");
    let o = wsc(&[
        "construct",
        "--kind",
        "cff",
        "--w",
        "1",
        "--r",
        "2",
        "--l",
        "16",
        "--n",
        "16",
        "--seed",
        "3",
        "-o",
        path(&code),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = wsc(&["verify", path(&code), "--mode", "cff", "--w", "1", "--r", "2"]);
    assert_eq!(v.status.code(), Some(0), "{}", stdout(&v));
}

#[test]
fn oracle_and_errors() {
    let o = wsc(&["oracle", "--l", "2", "--t", "2", "--d", "1"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["max_size"], 4);
    assert_eq!(wsc(&["oracle", "--l", "5", "--t", "2"]).status.code(), Some(2));
    assert_eq!(wsc(&["construct", "--t", "2", "--l", "300"]).status.code(), Some(3));
    assert_eq!(wsc(&["construct", "--l", "10"]).status.code(), Some(2));
    let bad = wsc(&["verify", "/nonexistent/file.wsc"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(bad.stdout.is_empty());
}

#[test]
fn committed_configs_run() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../experiments");
    let sweep = dir.join("sweep.conf");
    let o = wsc(&["--config", path(&sweep)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.starts_with("l,n_target,"));
    assert!(text.lines().skip(1).all(|line| line.contains(",true,")), "{text}");
}
