use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use sqc_core::gen::{gen_gadget, GadgetKind};
use sqc_core::graph::named::{cycle, petersen};
use sqc_core::Graph;
use tempfile::TempDir;

fn sqc(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sqc"))
        .args(args)
        .current_dir(dir)
        .env_remove("SQC_SEED")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn setup() -> TempDir {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("c5.edges"), cycle(5).to_edge_list()).unwrap();
    fs::write(dir.path().join("petersen.edges"), petersen().to_edge_list()).unwrap();
    dir
}

#[test]
fn mad_of_five_cycle() {
    let dir = setup();
    let out = sqc(&["mad", "c5.edges"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["mad"], "2/1");
    assert_eq!(v["witness"], serde_json::json!([0, 1, 2, 3, 4]));
}

#[test]
fn color_then_verify_round_trip() {
    let dir = setup();
    let p = dir.path();
    let gen = sqc(&["gen", "sparse", "--n", "50", "--delta", "17", "--seed", "4", "--output", "g.edges"], p);
    assert_eq!(gen.status.code(), Some(0), "{}", String::from_utf8_lossy(&gen.stderr));
    let lists = sqc(&["gen", "lists", "g.edges", "--size", "19", "--universe", "51", "--output", "L.json"], p);
    assert_eq!(lists.status.code(), Some(0));
    let col = sqc(&["color", "--k", "17", "--lists", "L.json", "g.edges", "--output", "col.json"], p);
    assert_eq!(col.status.code(), Some(0), "{}", String::from_utf8_lossy(&col.stderr));
    assert!(json(&col)["trace"]["steps"].is_array());
    let ver = sqc(&["verify", "--mode", "2distance", "--lists", "L.json", "g.edges", "col.json"], p);
    assert_eq!(ver.status.code(), Some(0));
    assert_eq!(json(&ver)["valid"], true);
}

#[test]
fn injective_color_verifies() {
    let dir = setup();
    let p = dir.path();
    let col = sqc(&["color", "--mode", "injective", "c5.edges", "--output", "col.json"], p);
    assert_eq!(col.status.code(), Some(0));
    let ver = sqc(&["verify", "--mode", "injective", "c5.edges", "col.json"], p);
    assert_eq!(ver.status.code(), Some(0));
}

#[test]
fn clash_fails_verification() {
    let dir = setup();
    fs::write(dir.path().join("bad.json"), "[1, 1, 2, 3, 4]").unwrap();
    let out = sqc(&["verify", "--mode", "2distance", "c5.edges", "bad.json"], dir.path());
    assert_eq!(out.status.code(), Some(4));
    let v = json(&out);
    assert_eq!(v["valid"], false);
    assert_eq!(v["violations"].as_array().unwrap().len(), 1);
}

#[test]
fn exit_codes() {
    let dir = setup();
    let p = dir.path();
    assert_eq!(sqc(&["mad", "missing.edges"], p).status.code(), Some(1));
    fs::write(p.join("junk.edges"), "p 2 1\ne 0 x\n").unwrap();
    assert_eq!(sqc(&["mad", "junk.edges"], p).status.code(), Some(1));
    assert_eq!(sqc(&["color", "--k", "16", "c5.edges"], p).status.code(), Some(2));
    let out = sqc(&["color", "petersen.edges"], p);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["vertices"].as_array().unwrap().len(), 10);
    assert_eq!(sqc(&["oracle", "c5.edges"], p).status.code(), Some(0));
    fs::write(p.join("big.edges"), cycle(15).to_edge_list()).unwrap();
    assert_eq!(sqc(&["oracle", "big.edges"], p).status.code(), Some(2));
}

#[test]
fn gadget_files_round_trip() {
    let dir = setup();
    let out = sqc(&["gen", "gadget", "c7", "--k", "18", "--output", "c7.edges"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let want = gen_gadget(GadgetKind::C7, 18).unwrap();
    let text = fs::read_to_string(dir.path().join("c7.edges")).unwrap();
    assert_eq!(Graph::parse_edge_list(&text).unwrap(), want.graph);
    let roles: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("c7.roles.json")).unwrap()).unwrap();
    assert_eq!(roles, serde_json::to_value(&want.roles).unwrap());
    let det = sqc(&["detect", "--kind", "C7", "--k", "18", "c7.edges"], dir.path());
    assert!(!json(&det)["matches"].as_array().unwrap().is_empty());
}

#[test]
fn env_seed_overrides_flag() {
    let dir = setup();
    let p = dir.path();
    let run = |seed: &str, env: Option<&str>, out: &str| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_sqc"));
        cmd.args(["gen", "sparse", "--n", "40", "--delta", "17", "--seed", seed, "--output", out]).current_dir(p);
        match env {
            Some(s) => cmd.env("SQC_SEED", s),
            None => cmd.env_remove("SQC_SEED"),
        };
        assert!(cmd.output().unwrap().status.success());
        fs::read_to_string(p.join(out)).unwrap()
    };
    assert_eq!(run("1", Some("9"), "a.edges"), run("9", None, "b.edges"));
}

#[test]
fn reports_are_deterministic_across_jobs() {
    let dir = setup();
    let p = dir.path();
    let gen = sqc(&["gen", "sparse", "--n", "40", "--delta", "17", "--count", "4", "--jobs", "3", "--output", "corpus"], p);
    assert_eq!(gen.status.code(), Some(0));
    let files: Vec<String> = (0..4).map(|i| format!("corpus/sparse_{i}.edges")).collect();
    let mut args = vec!["discharge"];
    args.extend(files.iter().map(String::as_str));
    let one = sqc(&args, p);
    args.extend(["--jobs", "4"]);
    let four = sqc(&args, p);
    assert_eq!(one.stdout, four.stdout);
    let v = json(&one);
    assert_eq!(v.as_array().unwrap().len(), 4);
}

#[test]
fn detect_any_reports_first_match() {
    let dir = setup();
    let out = sqc(&["detect", "--any", "c5.edges"], dir.path());
    let v = json(&out);
    let m = &v["matches"].as_array().unwrap()[0];
    assert_eq!(m["kind"], "C2");
}
