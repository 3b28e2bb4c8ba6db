use std::process::{Command, Output};

use serde_json::Value;

fn modalt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modalt"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn enumerate_examples() {
    let o = modalt(&["enumerate", "--n", "5", "--k", "3", "--r", "1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "12345\n15342\n42315\n45312\n");

    let o = modalt(&["enumerate", "--n", "5", "--k", "3", "--r", "2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "");

    assert_eq!(
        code(&modalt(&["enumerate", "--n", "5", "--k", "3", "--r", "4"])),
        2
    );
}

#[test]
fn enumerate_formats_and_budget() {
    let o = modalt(&["enumerate", "--n", "5", "--k", "3", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 4);
    assert_eq!(v[1], serde_json::json!([1, 5, 3, 4, 2]));

    let o = modalt(&[
        "enumerate",
        "--n",
        "3",
        "--k",
        "1",
        "--derangement",
        "--format",
        "csv",
    ]);
    assert_eq!(
        stdout(&o),
        "perm,exc,inv,sgn,des\n231,2,2,1,1\n312,1,2,1,1\n"
    );

    let o = modalt(&["enumerate", "--n", "9", "--k", "1", "--budget", "1000"]);
    assert_eq!(code(&o), 3);
    assert!(o.stdout.is_empty());
}

#[test]
fn poly_verify_json() {
    let o = modalt(&[
        "poly", "--which", "sgnmpe", "--n", "6", "--k", "3", "--r", "2", "--verify",
    ]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["equal"], Value::Bool(true));
    let want = serde_json::json!({"var": "t", "coeffs": [0, 0, 1, -3, 3, -1]});
    for key in ["closed", "brute", "matrix"] {
        assert_eq!(v[key], want, "{key}");
    }
}

#[test]
fn poly_single_and_descents() {
    let o = modalt(&[
        "poly", "--which", "mpe", "--n", "5", "--k", "3", "--format", "text",
    ]);
    assert_eq!(stdout(&o), "1 + 2*t + t^2\n");

    let o = modalt(&[
        "poly", "--which", "sgndes", "--n", "3", "--verify", "--format", "text",
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("matrix: n/a"));

    // unsigned r = 1 derangements have no closed form; brute and matrix still agree
    let o = modalt(&[
        "poly", "--which", "mpde", "--n", "6", "--k", "2", "--verify",
    ]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["closed"], Value::Null);
    assert_eq!(v["equal"], Value::Bool(true));

    assert_eq!(code(&modalt(&["poly", "--which", "mpe", "--n", "5"])), 2);
}

#[test]
fn verify_sweeps_pass() {
    for which in ["sgnmpe", "mpe", "sgnmpde", "mpde"] {
        let o = modalt(&["verify", "--n", "1..8", "--k", "1..4", "--which", which]);
        assert_eq!(code(&o), 0, "{which}: {}", stdout(&o));
        let out = stdout(&o);
        assert_eq!(out.lines().filter(|l| l.starts_with("PASS")).count(), 80);
        assert!(out.ends_with("summary: 80 PASS, 0 FAIL, 0 SKIP\n"));
    }
}

#[test]
fn verify_includes_forced_zero_derangements() {
    let o = modalt(&[
        "verify", "--n", "3", "--k", "2", "--r", "1", "--which", "sgnmpde",
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("PASS n=3 k=2 r=1 sgnmpde  0  [brute=matrix=closed]"));
}

#[test]
fn verify_gamma_outside_hypothesis_reports_findings() {
    let o = modalt(&["verify", "--n", "5", "--k", "3", "--which", "gamma"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("even: gamma (1,-2), center 1, not gamma-positive"));
    let o = modalt(&[
        "verify", "--n", "5", "--k", "2", "--r", "1", "--which", "gamma",
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("even: not palindromic; odd: not palindromic"));
}

#[test]
fn verify_gamma_under_hypothesis() {
    let o = modalt(&[
        "verify", "--n", "10", "--k", "2", "--r", "1", "--which", "gamma",
    ]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    // the r >= 2 halves sit at (n+k+2-2r)/2 rather than the stated (n+1-r)/2
    let o = modalt(&[
        "verify", "--n", "10", "--k", "2", "--r", "2", "--which", "gamma",
    ]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("center 5"));
}

#[test]
fn verify_budget_skip_and_usage() {
    let o = modalt(&[
        "verify",
        "--n",
        "9",
        "--k",
        "1",
        "--which",
        "sgnmpe",
        "--oracles",
        "brute,closed",
        "--budget",
        "10",
    ]);
    assert_eq!(code(&o), 3);
    assert!(stdout(&o).starts_with("SKIP"));
    assert_eq!(
        code(&modalt(&["verify", "--which", "mpe", "--oracles", "brute"])),
        2
    );
    assert_eq!(
        code(&modalt(&["verify", "--which", "mpe", "--n", "8..1"])),
        2
    );
    assert_eq!(
        code(&modalt(&["verify", "--which", "mpe", "--budget", "0"])),
        2
    );
}

#[test]
fn verify_is_independent_of_jobs() {
    let args = |jobs: &'static str| {
        vec![
            "verify", "--n", "1..7", "--k", "1..3", "--which", "mpe", "--format", "json", "--jobs",
            jobs,
        ]
    };
    let one = modalt(&args("1"));
    let four = modalt(&args("4"));
    assert_eq!(one.stdout, four.stdout);
    let v: Value = serde_json::from_str(&stdout(&one)).unwrap();
    assert_eq!(v["summary"]["fail"], 0);
}

#[test]
fn table_csv_rows() {
    let o = modalt(&["table", "--n", "3..6", "--k", "3", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.starts_with("n,k,r,count,mpe,sgn_mpe,sgn_mpde,gamma\n"));
    assert!(out.contains("\n5,3,1,4,\"1,2,1\",\"1,-2,1\",,\"1,0\"\n"));
    assert_eq!(out.lines().count(), 1 + 4 * 3);

    let o = modalt(&["table", "--n", "2", "--k", "5"]);
    assert!(stdout(&o).contains("\n2,5,1,1,1,1,,1\n"));
}

#[test]
fn table_json_schema() {
    let o = modalt(&["table", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 8 * 10);
    for row in rows {
        for key in ["mpe", "sgn_mpe", "sgn_mpde"] {
            assert_eq!(row[key]["var"], "t");
            assert!(row[key]["coeffs"].is_array());
        }
        assert!(row["gamma"].is_array() || row["gamma"] == "n/a");
    }
    assert!(stdout(&o).contains(r#"{"var":"t","coeffs":[1,-2,1]}"#));
}

#[test]
fn table_output_file_meta_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.csv");
    let p = path.to_str().unwrap();
    for _ in 0..2 {
        assert_eq!(
            code(&modalt(&[
                "table", "--n", "1..6", "--k", "1..3", "--output", p
            ])),
            0
        );
    }
    let first = std::fs::read(&path).unwrap();
    let again = modalt(&["table", "--n", "1..6", "--k", "1..3"]);
    assert_eq!(first, again.stdout);

    let o = modalt(&["table", "--n", "2", "--k", "5", "--meta"]);
    assert!(stdout(&o).starts_with("# modalt "));

    let bad = dir.path().join("missing").join("t.csv");
    assert_eq!(
        code(&modalt(&["table", "--output", bad.to_str().unwrap()])),
        4
    );
}

#[test]
fn gamma_coefficients_and_families() {
    let o = modalt(&["gamma", "--coeffs", "1,11,36,11,1"]);
    assert_eq!(
        stdout(&o),
        "{\"palindromic\":true,\"center\":\"2\",\"gamma\":[1,7,16],\"gamma_positive\":true}\n"
    );
    let o = modalt(&["gamma", "--coeffs", "1,-2,1"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["gamma_positive"], false);
    let o = modalt(&["gamma", "--coeffs", "0,1,1,1"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["center"], "2");
    let o = modalt(&["gamma", "--coeffs", "0,1"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["center"], "1");
    let o = modalt(&["gamma", "--coeffs", "1,2"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["palindromic"], false);

    let o = modalt(&["gamma", "--n", "5", "--k", "1", "--parity", "odd"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["gamma"], serde_json::json!([15, 0]));
    assert_eq!(code(&modalt(&["gamma", "--coeffs", "1,x"])), 2);
}

#[test]
fn gamma_certify() {
    let o = modalt(&["gamma", "--certify", "--n", "5", "--k", "1"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 2);
    assert_eq!(
        v["rows"][0]["gamma"]["gammas"],
        serde_json::json!([1, 7, 16])
    );

    assert_eq!(
        code(&modalt(&["gamma", "--certify", "--n", "8", "--k", "2"])),
        2
    );
    let o = modalt(&[
        "gamma",
        "--certify",
        "--n",
        "3",
        "--k",
        "1",
        "--force",
        "--format",
        "text",
    ]);
    assert!(stdout(&o).starts_with("n=3 k=1 (outside the hypothesis, forced)"));
}

#[test]
fn matrix_show_and_engines() {
    let o = modalt(&["matrix", "--kind", "a", "--n", "2"]);
    assert_eq!(stdout(&o), "1  t\n1  1\n");
    let o = modalt(&["matrix", "--kind", "a", "--n", "4", "--op", "permanent"]);
    assert_eq!(stdout(&o), "{\"var\":\"t\",\"coeffs\":[1,11,11,1]}\n");
    let o = modalt(&[
        "matrix", "--kind", "b", "--n", "3", "--op", "det", "--format", "text",
    ]);
    assert_eq!(stdout(&o), "t - 2*t^2 + t^3\n");

    let plain = modalt(&[
        "matrix", "--kind", "m", "--n", "6", "--k", "3", "--r", "2", "--op", "det",
    ]);
    let relabeled = modalt(&[
        "matrix",
        "--kind",
        "m",
        "--n",
        "6",
        "--k",
        "3",
        "--r",
        "2",
        "--op",
        "det",
        "--relabel",
    ]);
    assert_eq!(plain.stdout, relabeled.stdout);

    assert_eq!(
        code(&modalt(&[
            "matrix",
            "--kind",
            "a",
            "--n",
            "13",
            "--op",
            "permanent"
        ])),
        3
    );
    assert_eq!(code(&modalt(&["matrix", "--kind", "m", "--n", "5"])), 2);
    assert_eq!(
        code(&modalt(&["matrix", "--kind", "a", "--n", "3", "--relabel"])),
        2
    );
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&modalt(&[])), 2);
    assert_eq!(code(&modalt(&["poly", "--n", "3"])), 2);
    assert_eq!(code(&modalt(&["table", "--n", "x"])), 2);
    assert_eq!(code(&modalt(&["table", "--n", "0..3"])), 2);
}
