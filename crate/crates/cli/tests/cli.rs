use std::process::{Command, Output};

fn rperm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rperm"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn count_prints_the_class_size() {
    let o = rperm(&["count", "4", "123,132,213"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "5\n");
}

#[test]
fn count_json_schema() {
    let o = rperm(&["--json", "count", "4", "123,132,213"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["cmd"], "count");
    assert_eq!(v["params"], "123,132,213");
    assert_eq!(v["n"], 4);
    assert_eq!(v["value"], "5");
}

#[test]
fn count_accepts_families_and_long_patterns() {
    assert_eq!(stdout(&rperm(&["count", "5", "E^1(123)"])), "70\n");
    assert_eq!(stdout(&rperm(&["count", "6", "tau:5,2,1"])), stdout(&rperm(&["count", "6", "132,213,2341"])));
    assert_eq!(rperm(&["count", "3", "[10;9;8;1;2;3;4;5;6;7]"]).status.code(), Some(0));
}

#[test]
fn enum_lists_in_order() {
    let o = rperm(&["enum", "3", "123,132,213"]);
    assert_eq!(stdout(&o), "231\n312\n321\n");
}

#[test]
fn verify_reports_fibonacci_values() {
    let o = rperm(&["--json", "verify", "SS-Eq1", "--nmax", "9"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<serde_json::Value> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    let values: Vec<&str> = rows.iter().map(|r| r["oracle"].as_str().unwrap()).collect();
    assert_eq!(values, ["1", "2", "3", "5", "8", "13", "21", "34", "55"]);
    for row in &rows {
        assert_eq!(row["ok"], true);
        assert_eq!(row["oracle"], row["closed"]);
        assert_eq!(row["closed"], row["gf"]);
    }
    let text = stdout(&rperm(&["verify", "SS-Eq1", "--nmax", "9", "--quiet"]));
    assert_eq!(text, "PASS SS-Eq1 (n = 1..9)\n");
}

#[test]
fn verify_all_small() {
    let o = rperm(&["--quiet", "verify", "all", "--nmax", "12", "--oracle-max", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().all(|l| l.starts_with("PASS ")), "{text}");
    assert!(text.lines().count() > 100);
}

#[test]
fn bijection_roundtrip_counts_objects() {
    let o = rperm(&["bij", "T54", "--roundtrip", "--n", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "pass, 20 objects checked (T54, n = 6)\n");
}

#[test]
fn bijection_apply_and_invert() {
    let o = rperm(&["--quiet", "bij", "T47", "--b", "3", "--apply", "3,1,1,5"]);
    assert_eq!(stdout(&o), "[3,1,1,5] <-> 879653214\n");
    let o = rperm(&["--quiet", "bij", "T44", "--b", "3", "--invert", "986743512"]);
    assert_eq!(stdout(&o), "[1,1,2,3,2] <-> 986743512\n");
    let o = rperm(&["bij", "F", "--apply", "1,2"]);
    assert_eq!(stdout(&o), "[1,2] <-> 312\n+---+-------+\n| 3 | 1   2 |\n+---+-------+\n");
}

#[test]
fn exit_codes() {
    assert_eq!(rperm(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(rperm(&["count", "4", "12x"]).status.code(), Some(1));
    assert_eq!(rperm(&["verify", "no-such-id"]).status.code(), Some(1));
    assert_eq!(rperm(&["bij", "T44", "--apply", "1"]).status.code(), Some(1));
    let rejected = rperm(&["bij", "T54", "--invert", "1432"]);
    assert_eq!(rejected.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&rejected.stderr).contains("contains"));
    assert_eq!(rperm(&["bij", "T44", "--b", "2", "--apply", "3"]).status.code(), Some(3));
    assert_eq!(rperm(&["--help"]).status.code(), Some(0));
}

#[test]
fn gf_and_family() {
    let o = rperm(&["gf", "gamma:0,2,2", "--order", "6"]);
    let text = stdout(&o);
    assert!(text.contains("coefficients: 1, 1, 2, 4, 8, 15, 26"), "{text}");
    let o = rperm(&["--json", "family", "omega:4"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["patterns"][0], "4213");
    assert_eq!(rperm(&["gf", "123,132"]).status.code(), Some(1));
}
