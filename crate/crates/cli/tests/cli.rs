use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cleansdim"))
        .args(args)
        .env_remove("CLEANSDIM_ORACLE_BOUND")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn line<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines()
        .find_map(|l| l.strip_prefix(key))
        .unwrap_or_else(|| panic!("no `{key}` in\n{text}"))
}

#[test]
fn ring_info_z6() {
    let o = run(&["ring-info", "Z6"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert_eq!(line(&s, "order: "), "6");
    assert_eq!(line(&s, "idempotents (4): "), "0, 1, 3, 4");
    assert_eq!(line(&s, "units (2): "), "1, 5");
    assert_eq!(line(&s, "local factors n: "), "2");
}

#[test]
fn ring_info_local_catalog_entry() {
    let o = run(&["ring-info", "local8/Z4x_2x_x2m2", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["inventory"]["order"], 8);
    assert_eq!(v["inventory"]["is_local"], true);
    assert_eq!(v["inventory"]["units"], 4);
    assert_eq!(v["inventory"]["non_involutory_units"], 2);
}

#[test]
fn errors_exit_two() {
    let o = run(&["ring-info", "Z1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("order-1"));

    let o = run(&["ring-info", "Z2 x (Z3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("column"));
}

#[test]
fn sdim_values() {
    let s = stdout(&run(&["sdim", "Z5"]));
    assert_eq!(line(&s, "sdim: "), "6");
    assert_eq!(line(&s, "method: "), "both-agree");
    let s = stdout(&run(&["sdim", "Z2 x Z2 x Z2"]));
    assert_eq!(line(&s, "sdim: "), "7");
}

#[test]
fn sdim_cl2_of_idempotent_free_ring_is_disconnected() {
    let o = run(&["sdim", "Z3", "--variant", "cl2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("disconnected"));
}

#[test]
fn oracle_bound_flag_and_env() {
    assert_eq!(
        run(&["sdim", "Z5", "--oracle-bound", "3"]).status.code(),
        Some(2)
    );
    let s = stdout(&run(&["sdim", "Z5", "--oracle-bound", "4"]));
    assert_eq!(line(&s, "method: "), "srg");
    let o = Command::new(env!("CARGO_BIN_EXE_cleansdim"))
        .args(["sdim", "Z5"])
        .env("CLEANSDIM_ORACLE_BOUND", "5")
        .output()
        .unwrap();
    assert_eq!(line(&stdout(&o), "method: "), "srg");
}

#[test]
fn export_z2_dot() {
    let s = stdout(&run(&["export", "Z2", "--which", "cl", "--format", "dot"]));
    assert_eq!(s.matches("[label=").count(), 2);
    assert_eq!(s.matches(" -- ").count(), 1);
    assert!(s.contains("\"(0,1)\"") && s.contains("\"(1,1)\""));
}

#[test]
fn export_field_srg_and_json_file() {
    let s = stdout(&run(&[
        "export", "Z5", "--which", "cl-srg", "--format", "dot",
    ]));
    // 2K4: 8 vertices, 2 * 6 edges
    assert_eq!(s.matches("[label=").count(), 8);
    assert_eq!(s.matches(" -- ").count(), 12);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    let o = run(&[
        "export",
        "Z2 x Z3",
        "--which",
        "cl2",
        "--format",
        "json",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["vertices"].as_array().unwrap().len(), 6);

    let again = dir.path().join("g2.json");
    run(&[
        "export",
        "Z2 x Z3",
        "--which",
        "cl2",
        "--format",
        "json",
        "-o",
        again.to_str().unwrap(),
    ]);
    assert_eq!(
        std::fs::read(&path).unwrap(),
        std::fs::read(&again).unwrap()
    );
}

#[test]
fn export_srg_of_disconnected_fails() {
    let o = run(&["export", "Z3", "--which", "cl2-srg"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_suites_exit_zero() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&[
        "verify",
        "--suite",
        "table1",
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(!s.contains("MISMATCH"), "{s}");
    let csv = std::fs::read_to_string(dir.path().join("report.csv")).unwrap();
    assert!(csv.starts_with("ring,claim_id,predicted,computed,status\n"));
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("report.json")).unwrap())
            .unwrap();
    assert_eq!(json.as_array().unwrap().len(), 13);

    let o = run(&["verify", "--suite", "products-small", "--jobs", "2"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("(registered)") && !s.contains("UNREGISTERED"));
}

#[test]
fn verify_single_ring() {
    let o = run(&["verify", "--ring", "Z2 x GF(4)"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("summary: 1 rings"));
}

#[test]
fn verify_unknown_suite_is_error() {
    assert_eq!(run(&["verify", "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn graph_and_srg_text() {
    let s = stdout(&run(&["graph", "Z2 x Z3", "--variant", "cl2"]));
    assert_eq!(line(&s, "vertices: "), "6");
    assert_eq!(line(&s, "diameter: "), "3");
    let s = stdout(&run(&["srg", "Z5"]));
    assert!(line(&s, "structure: ").starts_with("MATCH"));
}

#[test]
fn catalog_lists_everything() {
    let s = stdout(&run(&["catalog"]));
    assert_eq!(s.lines().filter(|l| l.starts_with("local")).count(), 13);
    assert_eq!(s.lines().filter(|l| l.starts_with("product")).count(), 19);
}

#[test]
fn unregistered_mismatch_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.json");
    std::fs::write(&empty, "[]").unwrap();
    let o = run(&[
        "verify",
        "--ring",
        "Z2 x Z3",
        "--registry",
        empty.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("MISMATCH sdim_cl_product (UNREGISTERED): predicted 3, computed 4"));
    assert!(run(&["verify", "--ring", "Z2 x Z3"]).status.success());
}
