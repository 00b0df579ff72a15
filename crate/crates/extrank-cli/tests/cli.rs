use std::fs;
use std::process::{Command, Output};

use tempfile::TempDir;

const F4: &str = "arg(a). arg(b). arg(c). arg(d). arg(e). arg(f). arg(g).
att(a,b). att(b,c). att(c,d). att(d,c). att(c,e). att(c,f). att(d,f). att(f,g). att(g,f). att(e,e).
";
const F5: &str = "arg(h). arg(i). arg(j). att(h,i). att(i,j).";

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_extrank"))
        .args(args)
        .env_remove("EXTRANK_CAP")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn stable_extensions_of_f4() {
    let dir = TempDir::new().unwrap();
    let f4 = write(&dir, "f4.apx", F4);
    let out = run(&["extensions", &f4, "--semantics", "st"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "{a,c,g}\n");
}

#[test]
fn r_ad_compare_is_incomparable() {
    let dir = TempDir::new().unwrap();
    let f4 = write(&dir, "f4.apx", F4);
    let out = run(&["compare", &f4, "--spec", "r-ad", "--left", "b,g", "--right", "a,f"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "incomparable\n");
}

#[test]
fn empty_set_syntax() {
    let dir = TempDir::new().unwrap();
    let f4 = write(&dir, "f4.apx", F4);
    let out = run(&["compare", &f4, "--spec", "r-pr", "--left", "d", "--right", "{}", "--explain"]);
    assert_eq!(stdout(&out), "better (maxi)\n");
}

#[test]
fn missing_file_exits_2() {
    let out = run(&["compare", "missing.apx", "--spec", "r-ad", "--left", "a", "--right", "b"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn parse_and_usage_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.apx", "att(a,b).");
    assert_eq!(run(&["extensions", &bad, "--semantics", "co"]).status.code(), Some(2));
    let f5 = write(&dir, "f5.apx", F5);
    assert_eq!(run(&["max", &f5, "--spec", "r-xyz"]).status.code(), Some(2));
    assert_eq!(run(&["compare", &f5, "--spec", "r-ad", "--left", "z", "--right", "h"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn cap_exceeded_exits_3() {
    let dir = TempDir::new().unwrap();
    let f4 = write(&dir, "f4.apx", F4);
    assert_eq!(run(&["--cap", "3", "extensions", &f4, "--semantics", "co"]).status.code(), Some(3));
    let out = Command::new(env!("CARGO_BIN_EXE_extrank"))
        .args(["max", &f4, "--spec", "ld-pr"])
        .env("EXTRANK_CAP", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn max_lists_most_plausible_sets() {
    let dir = TempDir::new().unwrap();
    let f4 = write(&dir, "f4.apx", F4);
    let out = run(&["max", &f4, "--spec", "r-sst"]);
    assert_eq!(stdout(&out), "{a,c,g}\n");
}

#[test]
fn rank_writes_dot_and_json() {
    let dir = TempDir::new().unwrap();
    let f5 = write(&dir, "f5.apx", F5);
    let dot = dir.path().join("r.dot");
    let json = dir.path().join("r.json");
    let out = run(&[
        "rank",
        &f5,
        "--spec",
        "r-co",
        "--dot",
        dot.to_str().unwrap(),
        "--json",
        json.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("*0: {h,j}\n"));
    let dot_text = fs::read_to_string(&dot).unwrap();
    assert!(dot_text.starts_with("digraph ranking {"));
    assert_eq!(dot_text.matches(" -> ").count(), 10);
    let report = extrank::report::RankingReport::from_json(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(report.spec, "r-co");
    assert_eq!(report.classes.len(), 8);
}

#[test]
fn gradual_prints_order_and_values() {
    let dir = TempDir::new().unwrap();
    let f4 = write(&dir, "f4.apx", F4);
    let out = run(&["gradual", &f4, "--method", "cat"]);
    let text = stdout(&out);
    assert_eq!(text.lines().next(), Some("a > g > d > e > b > c > f"));
    assert!(text.contains("a 1.000000000"));
}

#[test]
fn principle_violation_exits_1() {
    let dir = TempDir::new().unwrap();
    let f5 = write(&dir, "f5.apx", F5);
    let out = run(&["principles", &f5, "--spec", "r-ad", "--principle", "strong-reinstatement"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("violated"));
    let out = run(&["principles", &f5, "--spec", "r-co", "--principle", "generalisation:co", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("\"status\": \"no-violation-found\""));
}

#[test]
fn fuzz_is_seeded() {
    let args = ["--seed", "7", "fuzz", "--spec", "r-ad", "--principle", "strong-reinstatement", "--trials", "50"];
    let first = run(&args);
    assert_eq!(first.status.code(), Some(1));
    assert_eq!(stdout(&run(&args)), stdout(&first));
    let holds = run(&["fuzz", "--spec", "r-co", "--principle", "composition", "--trials", "20"]);
    assert_eq!(holds.status.code(), Some(0));
}
