use std::process::{Command, Output};

use fsdouble::cli::{parse_group_spec, parse_group_text};
use fsdouble::Error;
use serde_json::Value;

fn fsdouble(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fsdouble"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = fsdouble(&all);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn exit_codes() {
    assert_eq!(fsdouble(&["check", "r3", "sym:4"]).status.code(), Some(0));
    assert_eq!(fsdouble(&["check", "formula", "q8"]).status.code(), Some(1));
    assert_eq!(fsdouble(&["check", "r2", "q8"]).status.code(), Some(1));
    assert_eq!(
        fsdouble(&["check", "inversion", "cyc:3"]).status.code(),
        Some(1)
    );
    assert_eq!(fsdouble(&["info", "foo:3"]).status.code(), Some(2));
    assert_eq!(fsdouble(&["chartab", "sym:0"]).status.code(), Some(2));
    assert_eq!(
        fsdouble(&["--cap", "10", "chartab", "sym:5"]).status.code(),
        Some(2)
    );
    assert_eq!(
        fsdouble(&["chartab", "file:/definitely/not/here"])
            .status
            .code(),
        Some(2)
    );
    let err = fsdouble(&["info", "foo:3"]);
    assert!(String::from_utf8_lossy(&err.stderr).contains("foo:3"));
}

#[test]
fn info_for_holomorph() {
    let v = json(&["info", "hol-c8"]);
    assert_eq!(v["order"], 32);
    assert_eq!(v["rational"], true);
    let text = stdout(&fsdouble(&["info", "hol-c8"]));
    assert!(text.contains("order: 32"));
}

#[test]
fn human_and_json_agree() {
    let v = json(&["double", "q8"]);
    let text = stdout(&fsdouble(&["double", "q8"]));
    let s = &v["summary"];
    assert_eq!(s["t_squared"], 4);
    assert_eq!(s["degree_sum"], 36);
    assert!(text.contains(&format!("t^2 = {}", s["t_squared"])));
    assert!(text.contains(&format!("degree sum = {}", s["degree_sum"])));

    let v = json(&["indicators", "q8"]);
    let nus: Vec<i64> = v["irreducibles"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x["nu"].as_i64().unwrap())
        .collect();
    assert_eq!(nus, [1, 1, 1, 1, -1]);
    let text = stdout(&fsdouble(&["indicators", "q8"]));
    assert!(text.contains(&format!("t = {}", v["t"])));
}

#[test]
fn chartab_json_schema() {
    let v = json(&["chartab", "sym:3"]);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["order"], 6);
    assert_eq!(v["classes"].as_array().unwrap().len(), 3);
    let degrees: Vec<i64> = v["irreducibles"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x["degree"].as_i64().unwrap())
        .collect();
    assert_eq!(degrees, [1, 1, 2]);
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("fsdouble-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("table.json");
    let p = path.to_str().unwrap();
    let out = fsdouble(&["--json", "--out", p, "chartab", "sym:3"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["group"], "sym:3");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn group_files() {
    let dir = std::env::temp_dir().join(format!("fsdouble-files-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("s3.txt");
    std::fs::write(
        &good,
        "# the symmetric group on 3 points\n3\n(1,2)\n\n(1,2,3)  # rotation\n",
    )
    .unwrap();
    let spec = format!("file:{}", good.display());
    let v = json(&["info", &spec]);
    assert_eq!(v["order"], 6);

    let bad = dir.join("bad.txt");
    std::fs::write(&bad, "3\n(1,4)\n").unwrap();
    let out = fsdouble(&["info", &format!("file:{}", bad.display())]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains(":2:"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn parse_text_errors_carry_line_numbers() {
    let g = parse_group_text("4\n(1,2,3,4)\n", "inline").unwrap();
    assert_eq!(g.order(), 4);
    for text in ["", "x\n", "3\n(1,2\n", "2\n(1,2,3)\n"] {
        assert!(parse_group_text(text, "inline").is_err(), "{text:?}");
    }
}

#[test]
fn group_specs() {
    assert_eq!(parse_group_spec("sym:4").unwrap().order(), 24);
    assert_eq!(parse_group_spec("weyl-f4").unwrap().order(), 1152);
    assert_eq!(parse_group_spec("sym:3×cyc:2").unwrap().order(), 12);
    assert_eq!(parse_group_spec("q8 * dih:3").unwrap().order(), 48);
    assert!(matches!(
        parse_group_spec("sym"),
        Err(Error::UnknownSpec(_))
    ));
    assert!(matches!(
        parse_group_spec("sym:x"),
        Err(Error::UnknownSpec(_))
    ));
    assert!(matches!(
        parse_group_spec("q8:2"),
        Err(Error::UnknownSpec(_))
    ));
}

#[test]
fn verify_paper_exit_status() {
    let out = fsdouble(&["verify-paper", "sym:4", "q8", "hol-c8"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("all checks passed"));
}

#[test]
fn dc_check() {
    let out = fsdouble(&["check", "dc", "sym:3"]);
    assert_eq!(out.status.code(), Some(0));
    let out = fsdouble(&["check", "dc", "q8"]);
    assert_eq!(out.status.code(), Some(1));
}
