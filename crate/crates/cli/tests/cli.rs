use std::process::{Command, Output};

fn bcgraded(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bcgraded")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn bracket_both_modes_agree() {
    let o = bcgraded(&["bracket", "--series", "d", "--n", "2", "f[1,2;1,0]", "f[2,1;-1,0]", "--mode", "both"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "f[1,1;0,0] - f[2,2;0,0] + 2*c[0]");

    let o = bcgraded(&["bracket", "f[1,2;1,0]", "f[2,1;-1,0]", "--mode", "both", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["diff"], "");
    assert_eq!(v["closed_text"], "f[1,1;0,0] - f[2,2;0,0] + 2*c[0]");
}

#[test]
fn bracket_canonicalizes_inputs() {
    let o = bcgraded(&["bracket", "g[2,1;1,2]", "cy"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "0");
}

#[test]
fn act_on_vacuum() {
    let o = bcgraded(&["act", "--series", "b", "--n", "1", "e0[0,1]", "--state", "vacuum", "--q", "generic"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "-(1/2)*(q+1)/(q-1) * |0>");
}

#[test]
fn verify_reports_json() {
    let o = bcgraded(&["verify", "--suite", "theta-sum", "--q", "generic"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["suite"], "theta-sum");
    assert_eq!(v["failed"], 0);
    assert!(v["checked"].as_u64().unwrap() > 0);
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "--suite", "jacobi", "--trials", "50", "--seed", "7"];
    let strip = |o: Output| {
        let mut v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        v.as_object_mut().unwrap().remove("elapsed_ms");
        v
    };
    assert_eq!(strip(bcgraded(&args)), strip(bcgraded(&args)));
}

#[test]
fn failures_exit_with_one() {
    let o = bcgraded(&["verify", "--suite", "jacobi", "--trials", "300", "--mutation", "flip-central-sign"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["failed"].as_u64().unwrap() > 0);
    assert!(!v["failures"].as_array().unwrap().is_empty());
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["verify", "--suite", "no-such-suite"][..],
        &["act", "--series", "d", "e0[0,1]"],
        &["bracket", "f[1,2;0,0"],
        &["bracket", "--n", "2", "f[3,1;0,0]", "f[1,1;0,0]"],
        &["table", "--q", "root:0"],
        &["verify", "--suite", "props-1.2", "--series", "c"],
        &["--frobnicate"],
    ] {
        let o = bcgraded(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn table_lists_brackets() {
    let o = bcgraded(&["table", "--series", "d", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("[f[1,2;0,0], f[2,1;0,0]] = f[1,1;0,0] - f[2,2;0,0]"), "{text}");

    let o = bcgraded(&["table", "--series", "b", "--n", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(!v.as_array().unwrap().is_empty());
}

#[test]
fn negative_exponent_ranges() {
    let o = bcgraded(&["table", "--series", "c", "--n", "1", "--exponents", "-1:1"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("[f[1,1;-1,-1], "));
    let o = bcgraded(&["verify", "--suite", "grading", "--exponents", "-1:0", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS grading"));
}
