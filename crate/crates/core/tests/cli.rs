use std::process::{Command, Output};

use serde_json::Value;

fn vacuum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vacuum"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let out = vacuum(args);
    let v = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{args:?}: {e}\n{}", String::from_utf8_lossy(&out.stderr)));
    (out.status.code().unwrap(), v)
}

fn validator() -> jsonschema::Validator {
    let schema: Value =
        serde_json::from_str(include_str!("../schemas/report.schema.json")).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

fn assert_valid(v: &Value) {
    let errors: Vec<String> = validator().iter_errors(v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "schema violations: {errors:?}\n{v:#}");
}

#[test]
fn simple_check_examples() {
    let (code, v) = json(&["simple-check", "A1", "--level", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["simple"], false);
    assert_eq!(v["admissible"], true);
    assert_eq!(v["degrees"][1]["kernel_dim"], 1);
    assert_valid(&v);

    let (code, v) = json(&[
        "simple-check",
        "--algebra",
        "A1",
        "--level",
        "-3/2",
        "--delta-max",
        "4",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["simple"], true);
    assert!(v["degrees"]
        .as_array()
        .unwrap()
        .iter()
        .all(|d| d["kernel_dim"] == 0));
    assert_valid(&v);

    let (code, v) = json(&["simple-check", "A1", "--level", "-2"]);
    assert_eq!(code, 0);
    assert_eq!(v["critical"], true);
    assert_eq!(v["simple"], false);
    assert!(v["verdict"].as_str().unwrap().contains("critical"));
    assert_valid(&v);
}

#[test]
fn find_singular_example() {
    let (code, v) = json(&["find-singular", "A1", "--level", "0", "--delta-max", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["degrees"][0]["kernel_dim"], 1);
    assert_eq!(v["degrees"][0]["vectors"][0]["vector"], "e[1](-1) * 1");
    assert_eq!(v["degrees"][1]["kernel_dim"], 0);
    assert_eq!(v["nonvanishing"], true);
    assert_valid(&v);
}

#[test]
fn critical_and_slodowy_examples() {
    let (code, v) = json(&["critical", "A1"]);
    assert_eq!(code, 0);
    assert_eq!(v["level"], "-2");
    assert_eq!(v["translated"]["zhu_image"], "0");
    assert_valid(&v);

    let (code, v) = json(&["slodowy", "A2", "--nilpotent", "regular"]);
    assert_eq!(code, 0);
    assert_eq!(v["certificate"]["pass"], true);
    assert_eq!(v["certificate"]["rank"], 8);
    assert_valid(&v);

    let (code, v) = json(&["slodowy", "C2", "--nilpotent", "minimal"]);
    assert_eq!(code, 0);
    assert_eq!(v["certificate"]["rank"], 10);
    assert_valid(&v);

    let (code, v) = json(&["slodowy", "A2", "--nilpotent", "f[1](-1) + f[2](-1)"]);
    assert_eq!(code, 0);
    assert_eq!(v["contraction_exponents"], serde_json::json!([4, 6]));
}

#[test]
fn selftest_is_byte_deterministic_and_embeds_seed() {
    let a = vacuum(&["selftest", "--seed", "7"]);
    let b = vacuum(&["selftest", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["seed"], 7);
    assert_valid(&v);
    for fmt in ["csv", "text"] {
        let x = vacuum(&["selftest", "--seed", "7", "--format", fmt]);
        let y = vacuum(&["selftest", "--seed", "7", "--format", fmt]);
        assert_eq!(x.stdout, y.stdout, "{fmt}");
    }
}

#[test]
fn config_errors_exit_two() {
    let cases: [&[&str]; 7] = [
        &["find-singular", "A1"],
        &["find-singular", "A1", "--level", "1/0"],
        &["find-singular", "A1", "--level", "x"],
        &["find-singular", "Z9", "--level", "1"],
        &["find-singular", "A1", "--algebra", "A2", "--level", "1"],
        &["critical", "A1", "--level", "1"],
        &["slodowy", "A2", "--nilpotent", "h[1](-1)"],
    ];
    for args in cases {
        let out = vacuum(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error: "));
    }
    let out = vacuum(&["find-singular", "A1", "--level", "1/x"]);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 1, column 3"), "{err}");
    let out = vacuum(&["find-singular", "A1", "--level", "0", "--delta-max", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn csv_and_text_formats() {
    let out = vacuum(&[
        "find-singular",
        "A1",
        "--level",
        "1",
        "--delta-max",
        "3",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let mut r = csv::Reader::from_reader(out.stdout.as_slice());
    let headers = r.headers().unwrap().clone();
    assert_eq!(
        headers.iter().collect::<Vec<_>>(),
        [
            "seed",
            "delta",
            "kernel_dim",
            "min_depth",
            "zhu_nonzero",
            "vector",
            "zhu_image"
        ]
    );
    let rows: Vec<csv::StringRecord> = r.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 3);
    assert_eq!(&rows[1][5], "e[1](-1)^2 * 1");

    let out = vacuum(&["critical", "A1", "--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().last() == Some("PASS"));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = vacuum(&["slodowy", "A1", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["certificate"]["rank"], 3);
}

#[test]
fn schema_rejects_malformed_reports() {
    let (_, mut v) = json(&["find-singular", "A1", "--level", "0", "--delta-max", "1"]);
    v["degrees"][0]["kernel_dim"] = Value::from(-1);
    assert!(!validator().is_valid(&v));
    let (_, mut v) = json(&["selftest"]);
    v.as_object_mut().unwrap().remove("seed");
    assert!(!validator().is_valid(&v));
}
