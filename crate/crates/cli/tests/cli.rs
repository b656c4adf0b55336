use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn coxtop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coxtop")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = coxtop(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.push("--json");
    serde_json::from_str(&stdout(&a)).unwrap()
}

fn path(name: &str) -> String {
    data(name).to_string_lossy().into_owned()
}

#[test]
fn vcd_of_triangle_group() {
    assert_eq!(stdout(&["vcd", &path("triangle333.cox")]), "2\n");
    assert_eq!(json(&["vcd", &path("triangle333.cox")])["vcd"], 2);
}

#[test]
fn growth_of_free_product() {
    assert_eq!(stdout(&["growth", &path("freeprod3.cox"), "--T", "s", "--N", "5"]), "[0,1,2,4,8,16]\n");
}

#[test]
fn fano_decomposition_witness() {
    let w = json(&["verify-decomposition", &path("fano.bld")]);
    let det = w["determinant"].as_i64().unwrap();
    assert_eq!(det.abs(), 1);
    assert_eq!(w["base_rank"], 21);
    assert_eq!(w["pass"], true);
}

#[test]
fn every_spherical_subset_of_the_product() {
    let ws = json(&["verify-decomposition", &path("fano_x_a1.bld"), "--every"]);
    let ws = ws.as_array().unwrap();
    assert_eq!(ws.len(), 8);
    assert!(ws.iter().all(|w| w["pass"] == true));
}

#[test]
fn matrix_with_chamber_file() {
    let direct = json(&["decompose", &path("fano.bld")]);
    let split = json(&["decompose", &path("a2.cox"), "--chamber-file", &path("fano.bld")]);
    assert_eq!(direct, split);
}

#[test]
fn heawood_realization() {
    let r = json(&["realize", &path("fano.bld")]);
    assert_eq!(r["cross_check"]["pass"], true);
    let text = stdout(&["realize", &path("fano.bld")]);
    assert!(text.contains("H^1 = Z^8"), "{text}");
}

#[test]
fn building_generator_matches_data_files() {
    assert_eq!(stdout(&["building", "plane", "--q", "2"]), std::fs::read_to_string(data("fano.bld")).unwrap());
    assert_eq!(stdout(&["building", "digon", "3", "3"]), std::fs::read_to_string(data("digon33.bld")).unwrap());
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("nerve.json");
    let t = target.to_string_lossy().into_owned();
    let out = coxtop(&["nerve", &path("square.cox"), "--json", "--out", &t]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
    assert_eq!(v, json(&["nerve", &path("square.cox")]));
}

#[test]
fn bad_input_exits_one_with_line() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.cox");
    std::fs::write(&f, "gens s t\ns t 3\ns q 4\n").unwrap();
    let out = coxtop(&["vcd", &f.to_string_lossy()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3"), "{err}");

    let missing = coxtop(&["vcd", "/nonexistent/file.cox"]);
    assert_eq!(missing.status.code(), Some(1));
}

#[test]
fn non_building_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("thin.bld");
    // a chamber with a singleton panel
    std::fs::write(&f, "gens s\nchambers 3\npanel s: {0,1} {2}\n").unwrap();
    let out = coxtop(&["verify-building", &f.to_string_lossy()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn infinite_type_needs_a_chamber_file() {
    let out = coxtop(&["decompose", &path("triangle333.cox")]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn duality_reports() {
    let free = json(&["duality", &path("freeprod3.cox")]);
    assert_eq!(free["is_duality"], true);
    assert_eq!(free["dimension"], 1);
    let mixed = json(&["duality", &path("mixed.cox")]);
    assert_eq!(mixed["is_duality"], false);
    assert!(!mixed["offending"].as_array().unwrap().is_empty());
}

#[test]
fn hc_schema() {
    let r = json(&["hc", &path("freeprod3.cox")]);
    let degrees = r["degrees"].as_array().unwrap();
    assert_eq!(degrees.len(), 1);
    assert_eq!(degrees[0]["degree"], 1);
    assert_eq!(degrees[0]["total"]["free_rank"], "omega");
    let c = degrees[0]["contributions"].as_array().unwrap();
    assert!(c.iter().all(|c| c.get("T").is_some() && c.get("local").is_some() && c.get("multiplicity").is_some()));
}

#[test]
fn coxeter_complex_is_a_sphere() {
    let text = stdout(&["coxeter-complex", &path("a3.cox")]);
    assert_eq!(text, "f-vector [14, 36, 24]\nH^0 = Z, H^2 = Z\n");
}

#[test]
fn torsion_in_the_quotient_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("twisted.bld");
    // every pair of generators fuses all four chambers into one residue
    std::fs::write(
        &f,
        "gens a b c\na b 3\nb c 3\nchambers 4\npanel a: {0,1} {2,3}\npanel b: {0,2} {1,3}\npanel c: {0,3} {1,2}\n",
    )
    .unwrap();
    let f = f.to_string_lossy().into_owned();
    let out = coxtop(&["verify-decomposition", &f]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("torsion"));
    let out = coxtop(&["verify-building", &f]);
    assert_eq!(out.status.code(), Some(1));
}
