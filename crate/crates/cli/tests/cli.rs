use std::process::{Command, Output};

use serde_json::Value;

fn ratekit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ratekit"))
        .args(args)
        .env_remove("RATEKIT_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const BESSEL_1_1: f64 = 0.279_731_763_633_044_85;

#[test]
fn eval_matches_bessel_reference() {
    for method in ["auto", "quadrature", "contour", "series"] {
        let o = ratekit(&[
            "--format",
            "json",
            "eval",
            "--variant",
            "i1",
            "--alpha",
            "1",
            "--a",
            "1",
            "--b",
            "1",
            "--delta",
            "1",
            "--rho",
            "1",
            "--method",
            method,
        ]);
        assert_eq!(
            o.status.code(),
            Some(0),
            "{method}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        let value = v["cases"][0]["value"].as_f64().unwrap();
        assert!((value - BESSEL_1_1).abs() < 1e-9 * BESSEL_1_1, "{method}: {value}");
        assert_eq!(v["command"], "eval");
        assert_eq!(v["summary"]["failed"], 0);
    }
}

#[test]
fn verify_ode_for_the_two_channel_case() {
    let o = ratekit(&[
        "verify",
        "ode",
        "--variant",
        "i1",
        "--m",
        "2",
        "--alpha",
        "1",
        "--rho",
        "0.5",
        "--seed",
        "7",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.lines().filter(|l| l.starts_with("PASS")).count() >= 8);
    assert!(text.trim_end().ends_with("0 failed"));
}

#[test]
fn table_csv_is_decreasing_in_b() {
    let o = ratekit(&[
        "table",
        "--variant",
        "i2beta",
        "--beta",
        "0.5",
        "--alpha",
        "1",
        "--a",
        "1",
        "--delta",
        "1",
        "--rho",
        "1",
        "--b-grid",
        "0.1:10:25",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let col = |name: &str| header.iter().position(|h| *h == name).unwrap();
    let rows: Vec<Vec<String>> = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    assert_eq!(rows.len(), 25);
    let values: Vec<f64> = rows.iter().map(|r| r[col("value")].parse().unwrap()).collect();
    assert!(values.windows(2).all(|w| w[1] < w[0]), "{values:?}");
    assert_eq!(rows[0][col("b")], "0.10000000000000001");
    assert_eq!(rows[24][col("b")], "10");
}

#[test]
fn log_grid_and_beta_grid() {
    let o = ratekit(&[
        "table",
        "--variant",
        "i1",
        "--b-grid",
        "0.01:100:5",
        "--log-grid",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let bs: Vec<f64> = stdout(&o)
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(3).unwrap().parse().unwrap())
        .collect();
    let want = [0.01, 0.1, 1.0, 10.0, 100.0];
    for (b, w) in bs.iter().zip(want) {
        assert!((b - w).abs() < 1e-12 * w, "{bs:?}");
    }
    let o = ratekit(&[
        "table",
        "--variant",
        "i1beta",
        "--beta",
        "1.2",
        "--beta-grid",
        "1.4:1.05:4",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let values: Vec<f64> = v["cases"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["value"].as_f64().unwrap())
        .collect();
    // heavier tail, larger integral
    assert!(values.windows(2).all(|w| w[1] < w[0]), "{values:?}");
}

#[test]
fn json_and_csv_carry_identical_numbers() {
    let args = [
        "table",
        "--variant",
        "i1",
        "--alpha",
        "1.7",
        "--delta",
        "2",
        "--rho",
        "0.5",
        "--b-grid",
        "0.3:4:9",
    ];
    let j = ratekit(&[&args[..], &["--format", "json"]].concat());
    let c = ratekit(&[&args[..], &["--format", "csv"]].concat());
    let v: Value = serde_json::from_str(&stdout(&j)).unwrap();
    let from_json: Vec<f64> = v["cases"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["value"].as_f64().unwrap())
        .collect();
    let text = stdout(&c);
    let from_csv: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(8).unwrap().parse().unwrap())
        .collect();
    assert_eq!(from_json.len(), 9);
    for (x, y) in from_json.iter().zip(&from_csv) {
        assert_eq!(x.to_bits(), y.to_bits());
    }
}

#[test]
fn output_is_byte_identical_across_runs_and_threads() {
    let args = ["--format", "json", "verify", "limit", "--seed", "3"];
    let a = ratekit(&args);
    let b = ratekit(&[&["--threads", "1"][..], &args[..]].concat());
    let c = Command::new(env!("CARGO_BIN_EXE_ratekit"))
        .args(args)
        .env("RATEKIT_THREADS", "3")
        .output()
        .unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn exit_codes() {
    // bad flags
    assert_eq!(
        ratekit(&["eval", "--variant", "i1", "--alpha", "x"]).status.code(),
        Some(2)
    );
    assert_eq!(ratekit(&["eval", "--variant", "i7"]).status.code(), Some(2));
    assert_eq!(
        ratekit(&["eval", "--variant", "i1", "--a", "-1"]).status.code(),
        Some(2)
    );
    assert_eq!(ratekit(&["eval", "--variant", "i1beta"]).status.code(), Some(2));
    assert_eq!(
        ratekit(&["eval", "--variant", "i1beta", "--alpha", "2", "--beta", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        ratekit(&["eval", "--variant", "i1", "--m", "2", "--delta", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        ratekit(&["table", "--variant", "i1", "--b-grid", "1:2"]).status.code(),
        Some(2)
    );
    assert_eq!(ratekit(&["--threads", "0", "verify", "limit"]).status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_ratekit"))
        .args(["verify", "limit"])
        .env("RATEKIT_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    // a check that cannot succeed: i2 has no G-equation
    let o = ratekit(&["verify", "ode", "--variant", "i2", "--cutoff", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
    // series cancellation beyond double-double precision
    let o = ratekit(&["eval", "--variant", "i1", "--b", "1e4", "--method", "series"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(!o.stderr.is_empty() && o.stdout.is_empty());
}

#[test]
fn beta_grid_without_base_beta() {
    let o = ratekit(&[
        "table",
        "--variant",
        "i2beta",
        "--beta-grid",
        "0.2:0.8:3",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let betas: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').nth(6).unwrap()).collect();
    assert_eq!(betas, ["0.20000000000000001", "0.5", "0.80000000000000004"]);
}
