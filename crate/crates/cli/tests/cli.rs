use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const CBRT2: &str = r#"{"kind":"nthroot","radicand":2,"degree":3}"#;

fn khinchin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_khinchin"))
        .args(args)
        .env_remove("KHINCHIN_LOG_BASE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn csv_body(text: &str) -> Vec<&str> {
    text.lines().filter(|l| !l.starts_with('#')).collect()
}

#[test]
fn expand_json() {
    let o = khinchin(&["expand", "--number", CBRT2, "--terms", "10", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["rows"][0]["b0"], 1);
    assert_eq!(v["rows"][0]["coeffs"], serde_json::json!([3, 1, 5, 1, 1, 4, 1, 1, 8]));
    assert_eq!(v["meta"]["numbers"][0]["radicand"], 2);
    assert_eq!(v["meta"]["tool_version"], env!("CARGO_PKG_VERSION"));
}

#[test]
fn kc_of_one() {
    let o = khinchin(&["kc", "--maxn", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1.0");
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        vec!["expand", "--number", CBRT2, "--terms", "0"],
        vec!["expand", "--number", CBRT2, "--no-such-flag"],
        vec!["expand", "--number", "{\"kind\":\"circle\"}"],
        vec!["expand"],
        vec!["kc"],
        vec!["reproduce", "--table", "8"],
    ] {
        let o = khinchin(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"), "{args:?}");
    }
}

#[test]
fn rational_number_exits_two() {
    let o = khinchin(&["expand", "--number", r#"{"kind":"nthroot","radicand":9,"degree":2}"#]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn help_exits_zero() {
    assert_eq!(khinchin(&["--help"]).status.code(), Some(0));
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(&cfg, format!(r#"{{"numbers":[{CBRT2}],"terms":5,"format":"json"}}"#)).unwrap();
    let cfg = cfg.to_str().unwrap();

    let o = khinchin(&["expand", "--config", cfg]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["rows"][0]["coeffs"].as_array().unwrap().len(), 4);

    let o = khinchin(&["expand", "--config", cfg, "--terms", "8", "--format", "csv"]);
    let text = stdout(&o);
    let body = csv_body(&text);
    assert_eq!(body[0], "number,index,coefficient");
    assert_eq!(body.len(), 1 + 8);
}

#[test]
fn csv_reruns_are_identical() {
    let args = ["analyze", "--number", CBRT2, "--terms", "300"];
    let (a, b) = (khinchin(&args), khinchin(&args));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(!text.contains('\r'));
    let body = csv_body(&text);
    assert_eq!(
        body[0],
        "number,n,kld_gk,kld_trunc,chi2,p,gmean,amean,k_of_a,k_argmax,bailey_c"
    );
    assert!(body[1].starts_with("2^(1/3),300,"));
}

#[test]
fn log_base_from_environment() {
    let run = |base: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_khinchin"));
        c.args(["rn", "--number", CBRT2, "--range", "1", "100", "--format", "json"]);
        match base {
            Some(b) => c.env("KHINCHIN_LOG_BASE", b),
            None => c.env_remove("KHINCHIN_LOG_BASE"),
        };
        let o = c.output().unwrap();
        assert_eq!(o.status.code(), Some(0));
        serde_json::from_slice::<Value>(&o.stdout).unwrap()
    };
    let e = run(None);
    let two = run(Some("2"));
    assert_eq!(e["meta"]["log_base"], "e");
    assert_eq!(two["meta"]["log_base"], "2");
    let r = |v: &Value| v["rows"][0]["r_n"].as_f64().unwrap();
    assert!((r(&two) / r(&e) - std::f64::consts::LN_2).abs() < 1e-12);

    let mut c = Command::new(env!("CARGO_BIN_EXE_khinchin"));
    let o = c.args(["rn", "--number", CBRT2]).env("KHINCHIN_LOG_BASE", "10").output().unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn speed_rows_sum_to_count() {
    let o = khinchin(&["speed", "--number", CBRT2, "--terms", "300", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    for metric in ["khinchin", "newspeed"] {
        let total: u64 = v["rows"]
            .as_array()
            .unwrap()
            .iter()
            .filter(|r| r["metric"] == metric)
            .map(|r| r["count"].as_u64().unwrap())
            .sum();
        assert_eq!(total, 300, "{metric}");
    }
}

#[test]
fn random_baseline_records_seeds() {
    let o = khinchin(&["random", "--seed", "3", "--seed", "4", "--digits", "200", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["meta"]["seeds"], serde_json::json!([3, 4]));
    assert_eq!(v["rows"].as_array().unwrap().len(), 2);
    assert_eq!(v["rows"][0]["number"], "random(seed=3,digits=200)");
}

fn read(dir: &Path, name: &str) -> String {
    std::fs::read_to_string(dir.join(name)).unwrap()
}

#[test]
fn reproduce_writes_table_and_diff() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("tables");
    let o = khinchin(&["reproduce", "--table", "6", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let table = read(&out, "table6.csv");
    let diff = read(&out, "table6_diff.csv");
    assert_eq!(csv_body(&table)[0], "row,column,computed");
    assert_eq!(csv_body(&diff)[0], "row,column,computed,reference,diff");
    assert!(diff.contains("# command: reproduce --table 6"));
    let v: Value = serde_json::from_str(&read(&out, "table6.json")).unwrap();
    let k = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["row"] == "3^(1/3)" && r["column"] == "k")
        .expect("cbrt 3 row");
    assert!(k["diff"].as_f64().unwrap().abs() < 0.01);
}
