use std::process::{Command, Output};

fn rearr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rearr"))
        .args(args)
        .current_dir(concat!(env!("CARGO_MANIFEST_DIR"), "/../.."))
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn validate_airplane_file() {
    let o = rearr(&["validate", "--system", "data/systems/airplane.rs.txt"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("expanding: yes\n"));
    assert!(stdout(&o).contains("extreme base vertices: lt rt\n"));
}

#[test]
fn validate_rejects_non_expanding() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("flat.rs.txt");
    std::fs::write(&path, "system flat\nbase\n  vertex a b\n  edge t a b c\nreplacement c\n  vertex vi vt\n  init vi\n  term vt\n  edge 1 vi vt c\n").unwrap();
    let o = rearr(&["validate", "--system", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("expanding: no\n"));
    let o = rearr(&["expand", "--system", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn syntax_errors_report_lines() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.rs.txt");
    std::fs::write(&path, "system bad\nbase\n  vertex a\n  edge t a z c\n").unwrap();
    let o = rearr(&["validate", "--system", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 4"));
}

#[test]
fn order_of_swap() {
    let o = rearr(&["order", "--system", "circle_T", "--element", "data/elements/circle_T_r.gpd"]);
    assert_eq!(stdout(&o), "periodic, order 2\n");
    let o = rearr(&["order", "--system", "circle_T", "--element", "data/elements/circle_T_x.gpd"]);
    assert_eq!(stdout(&o), "non-periodic, infinite order\n");
}

#[test]
fn compose_with_inverse_is_identity() {
    let o = rearr(&[
        "compose",
        "--system",
        "circle_T",
        "--left",
        "data/elements/circle_T_x.gpd",
        "--right",
        "data/elements/circle_T_x_inv.gpd",
    ]);
    assert_eq!(stdout(&o), "domain\n  t\nrange\n  t\nsigma\n  t -> t\n");
}

#[test]
fn json_wraps_result() {
    let o =
        rearr(&["wandering", "--system", "circle_T", "--element", "data/elements/circle_T_x.gpd", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["command"], "wandering");
    assert_eq!(v["result"]["data"]["f"], "t.2.1");
    assert_eq!(v["result"]["passed"], true);
}

#[test]
fn witness_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("w.gpd");
    let o = rearr(&[
        "witness",
        "--system",
        "circle_T",
        "--cells",
        "t.1",
        "--target",
        "t.2",
        "--budget",
        "2",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.contains("t.1 -> t.2\n") && text.ends_with("verified: yes\n"));
    let o = rearr(&["witness", "--system", "circle_T", "--cells", "t.1", "--target", "t.2.2.2", "--budget", "1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn nig_demo_and_sabotage() {
    let base =
        ["nig-demo", "--system", "circle_T", "--point", "t:(1.2)", "--elements", "data/elements/circle_T_xr.elements"];
    let o = rearr(&base);
    assert!(stdout(&o).ends_with("passed: yes\n"));
    let mut bad = base.to_vec();
    bad.push("--sabotage");
    let o = rearr(&bad);
    let s = stdout(&o);
    assert!(s.contains("first failure: g1 -> ") && s.ends_with("passed: no\n"));
}

#[test]
fn canonical_and_minimality() {
    let o = rearr(&["canonical", "--system", "cantor_V", "--element", "data/elements/cantor_V_x.gpd"]);
    assert!(stdout(&o).contains("violations: 0\n"));
    let o = rearr(&["minimality", "--system", "circle_T", "--elements", "data/elements/circle_T_xr.elements"]);
    assert!(stdout(&o).ends_with("full: yes\n"));
}

#[test]
fn dot_outputs() {
    let o = rearr(&["dot", "--system", "circle_T", "--element", "data/elements/circle_T_x.gpd"]);
    assert!(stdout(&o).starts_with("digraph diagram {"));
    let o = rearr(&["dot", "--system", "circle_T", "--depth", "2"]);
    assert!(stdout(&o).starts_with("digraph expansion {"));
}

#[test]
fn enumerate_lists_elements() {
    let o = rearr(&["enumerate", "--system", "circle_T", "--budget", "2"]);
    assert!(stdout(&o).starts_with("# 10 elements\n"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(rearr(&["order", "--system", "circle_T", "--bogus", "1"]).status.code(), Some(2));
    assert_eq!(rearr(&["order", "--system", "circle_T"]).status.code(), Some(2));
    assert_eq!(rearr(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn domain_errors_exit_1() {
    let o = rearr(&["order", "--system", "circle_T", "--element", "data/elements/missing.gpd"]);
    assert_eq!(o.status.code(), Some(1));
    let o = rearr(&["witness", "--system", "circle_T", "--cells", "t", "--target", "t.1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!o.stderr.is_empty());
}
