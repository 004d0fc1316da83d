//! End-to-end tests of the installed binary: flags, output shapes, exit
//! codes, and report determinism.

use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cmcurves"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn predict_superspecial_json() {
    let out = run(&["predict", "--field", "cyclotomic:5", "--prime", "19"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["class"]["class"], "Supersingular");
    assert_eq!(v["class"]["superspecial"], true);
    assert_eq!(v["maximal_count_formula"], 438);

    let out = run(&["predict", "--field", "composite:7:3", "--prime", "13"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["class"]["class"], "Ordinary");
}

#[test]
fn count_outputs_integer() {
    let out = run(&["count", "--curve", "cl:3", "--prime", "2", "--ext", "1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "3");

    let out = run(&["count", "--curve", "chebyshev:5", "--prime", "19", "--ext", "2"]);
    assert_eq!(stdout(&out).trim(), "438");
}

#[test]
fn lpoly_json_has_coefficients_and_charpoly() {
    let out = run(&["lpoly", "--curve", "cl:5", "--prime", "19"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["charpoly"], serde_json::json!([361, 0, 38, 0, 1]));
    assert_eq!(v["observation"]["class"], "Supersingular");
}

#[test]
fn verify_jsonl_is_deterministic_across_thread_counts() {
    let strip = |text: &str| -> Vec<String> {
        text.lines()
            .map(|l| {
                let mut v: serde_json::Value = serde_json::from_str(l).unwrap();
                v.as_object_mut().unwrap().remove("wall_time_ms");
                serde_json::to_string(&v).unwrap()
            })
            .collect()
    };
    fn args(threads: &str) -> Vec<&str> {
        vec![
            "verify", "--curve", "cl:5", "--curve", "gk-x", "--prime-min", "3",
            "--prime-max", "23", "--threads", threads,
        ]
    }
    let one = run(&args("1"));
    let four = run(&args("4"));
    assert!(one.status.success());
    assert_eq!(strip(&stdout(&one)), strip(&stdout(&four)));
    // Records arrive in (family, p) grid order.
    let keys: Vec<(String, u64)> = stdout(&one)
        .lines()
        .map(|l| {
            let v: serde_json::Value = serde_json::from_str(l).unwrap();
            (v["family"].as_str().unwrap().to_string(), v["p"].as_u64().unwrap())
        })
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn verify_csv_header_and_out_file() {
    let dir = std::env::temp_dir().join(format!("cmcurves-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.csv");
    let out = run(&[
        "verify", "--curve", "cl:5", "--prime-min", "17", "--prime-max", "19",
        "--format", "csv", "--out", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("family,p,verdict,class_pred,class_obs,n2,maximal"));
    assert_eq!(lines.next(), Some("cl:5,17,match,supersingular,supersingular,290,false"));
    assert_eq!(lines.next(), Some("cl:5,19,match,superspecial,supersingular,438,true"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn fact51_and_scan_maximal_jsonl() {
    let out = run(&["fact51", "--prime-min", "4", "--prime-max", "5"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["p"], 5);
    assert_eq!(v["verdict"], "Match");

    let out = run(&["scan-maximal", "--curve", "cl:5", "--prime-min", "19", "--prime-max", "19"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["n2"], 438);
    assert_eq!(v["is_maximal"], true);
}

#[test]
fn exit_code_2_on_config_errors() {
    // Inverted prime range.
    let out = run(&["verify", "--curve", "cl:5", "--prime-min", "50", "--prime-max", "3"]);
    assert_eq!(out.status.code(), Some(2));
    // Missing required --curve (clap usage error).
    let out = run(&["verify", "--prime-min", "3", "--prime-max", "50"]);
    assert_eq!(out.status.code(), Some(2));
    // Unknown family.
    let out = run(&["verify", "--curve", "nope:1", "--prime-min", "3", "--prime-max", "5"]);
    assert_eq!(out.status.code(), Some(2));
    // Bad field spec.
    let out = run(&["predict", "--field", "cyclotomic:2", "--prime", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exit_code_3_on_io_error() {
    let out = run(&[
        "verify", "--curve", "cl:5", "--prime-min", "3", "--prime-max", "5",
        "--out", "/nonexistent-dir/report.jsonl",
    ]);
    assert_eq!(out.status.code(), Some(3));
}
