use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

const GUNDERSEN_PAIRS: &str =
    r#"[["0","0"],["1","1"],["-1/8","-1/8"],["inf","inf"],{"a":"-1/2","b":"1/4","cm":true}]"#;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_pairshare"));
    c.env_remove("PAIRSHARE_OUT_DIR");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("pairshare-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn share_args() -> Vec<&'static str> {
    vec![
        "share",
        "--q",
        "(w+1)/(w-1)^2",
        "--qt",
        "(w+1)^2/(8*(w-1))",
        "--pairs",
        GUNDERSEN_PAIRS,
    ]
}

#[test]
fn verified_share_exits_zero() {
    let out = run(&share_args());
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["feasible"], true);
    assert_eq!(v["pairs"][4]["verdict"], "shared-CM");
}

#[test]
fn falsified_curve_exits_one() {
    let out = run(&["check-curve", "--q", "t", "--qt", "t^2", "--k", "x-y"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["verified"], false);
}

#[test]
fn syntax_error_exits_two_with_position() {
    let out = run(&["implicitize", "--q", "t^", "--qt", "t"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["error"]["kind"], "syntax");
    assert!(v["error"]["position"].is_u64());
}

#[test]
fn reducible_field_is_rejected() {
    let out = run(&["--field", "t^2-1", "implicitize", "--q", "t", "--qt", "t^2"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["kind"], "reducible-minpoly");
}

#[test]
fn implicitize_conic() {
    let out = run(&["implicitize", "--q", "8/(4+6*t+t^2)", "--qt", "8*t/(4+6*t+t^2)"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["curve"], "4*x^2+6*x*y+y^2-8*x");
}

#[test]
fn output_is_deterministic() {
    let args = ["nevanlinna", "--q", "(w+1)/(w-1)^2", "--r-grid", "10,20,40"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let s = ["--seed", "5", "search", "--plant", "--profile",
        r#"{"m":9,"n":9,"s":2,"t":2,"lambda":3,"kappa":4,"surviving_y":[9,9,2,9],"surviving_x":[9,9,9,3]}"#];
    let c = run(&s);
    let d = run(&s);
    assert_eq!(c.stdout, d.stdout);
    assert_eq!(c.status.code(), Some(0), "{}", String::from_utf8_lossy(&c.stdout));
}

#[test]
fn tsv_output() {
    let out = run(&["--format", "tsv", "nevanlinna", "--q", "w", "--r-grid", "10"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("r\t"));
    let row: Vec<&str> = lines.next().unwrap().split('\t').collect();
    let m: f64 = row[1].parse().unwrap();
    assert!((m - 10.0 / std::f64::consts::PI).abs() < 1e-6);
}

#[test]
fn out_file_is_written_atomically() {
    let dir = scratch("out");
    let path = dir.join("nested").join("cert.json");
    let mut args = share_args();
    let p = path.to_string_lossy().into_owned();
    args.extend(["--out", &p]);
    let out = run(&args);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["feasible"], true);
    let leftovers: Vec<_> = std::fs::read_dir(path.parent().unwrap())
        .unwrap()
        .filter_map(|e| e.ok())
        .filter(|e| e.file_name().to_string_lossy().ends_with(".tmp"))
        .collect();
    assert!(leftovers.is_empty());
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn out_dir_from_environment() {
    let dir = scratch("env");
    let out = bin().args(share_args()).env("PAIRSHARE_OUT_DIR", &dir).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(dir.join("share.json").exists());
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn config_file_and_overrides() {
    let dir = scratch("cfg");
    let cfg = dir.join("job.json");
    std::fs::write(
        &cfg,
        r#"{"subcommand":"implicitize","inputs":{"q":"8/(4+2*t+t^2)","qt":"8*t/(4+2*t+t^2)"}}"#,
    )
    .unwrap();
    let c = cfg.to_string_lossy().into_owned();
    let out = run(&["--config", &c, "implicitize"]);
    assert_eq!(json(&out)["curve"], "4*x^2+2*x*y+y^2-8*x");
    let out = run(&["--config", &c, "implicitize", "--q", "8/(4+6*t+t^2)", "--qt", "8*t/(4+6*t+t^2)"]);
    assert_eq!(json(&out)["curve"], "4*x^2+6*x*y+y^2-8*x");
    std::fs::write(&cfg, r#"{"subcommand":"implicitize","bogus":1}"#).unwrap();
    assert_eq!(run(&["--config", &c, "implicitize"]).status.code(), Some(2));
    let out = run(&["--config", &c, "share"]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn branches_of_a_cusp() {
    let out = run(&["branches", "--k", "y^2-x^3", "--at", "0,0"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("3/2"), "{text}");
}
