use std::io::Write;
use std::process::{Command, Output};

fn hgtqft(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hgtqft")).args(args).output().unwrap()
}

fn write_tmp(name: &str, text: &str) -> std::path::PathBuf {
    let p = std::env::temp_dir().join(format!("hgtqft-{}-{name}", std::process::id()));
    std::fs::File::create(&p).unwrap().write_all(text.as_bytes()).unwrap();
    p
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn hopf_link_invariant() {
    let link = r#"{"components":[{"label":"0"},{"label":"0"}],"events":[
        {"kind":"cup","pos":0,"component":0,"left_up":true},{"kind":"cup","pos":2,"component":1,"left_up":true},
        {"kind":"cross","pos":1,"over":"left"},{"kind":"cross","pos":1,"over":"left"},{"kind":"cap","pos":2},{"kind":"cap","pos":0}]}"#;
    let p = write_tmp("hopf.json", link);
    let a = hgtqft(&["invariant", p.to_str().unwrap()]);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    let v = json(&a);
    assert_eq!(v["value"]["exact"], "1");
    assert_eq!(v["linking_matrix"], serde_json::json!([[0, -1], [-1, 0]]));
    assert_eq!(hgtqft(&["invariant", p.to_str().unwrap()]).stdout, a.stdout);
}

#[test]
fn identity_word_and_generator() {
    let p = write_tmp("id.txt", "(id ((0 0)))");
    let o = hgtqft(&["eval", p.to_str().unwrap()]);
    assert!(o.status.success());
    let m = &json(&o)["matrix"];
    assert_eq!(m["rows"], 27);
    assert_eq!(m["entries"].as_array().unwrap().len(), 27);

    let o = hgtqft(&["rep", "S", "--labels", "1/2,0"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(json(&o)["matrix"]["target"], "((3/2 0))");
}

#[test]
fn exit_codes() {
    assert_eq!(hgtqft(&["check", "--r", "4"]).status.code(), Some(2));
    assert_eq!(hgtqft(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(hgtqft(&["rep", "S", "--labels", "0"]).status.code(), Some(2));

    let bad = r#"{"components":[{"label":"1/2"},{"label":"0"}],"events":[
        {"kind":"cup","pos":0,"component":0,"left_up":true},{"kind":"cup","pos":2,"component":1,"left_up":true},
        {"kind":"cross","pos":1,"over":"left"},{"kind":"cross","pos":1,"over":"left"},{"kind":"cap","pos":2},{"kind":"cap","pos":0}]}"#;
    let p = write_tmp("bad.json", bad);
    let o = hgtqft(&["invariant", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("component"));

    let p = write_tmp("typo.txt", "(compose (gen S 1/2 0) (gen eta 0))");
    assert_eq!(hgtqft(&["eval", p.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn check_subset_passes() {
    let o = hgtqft(&["check", "--labels", "0,1/2", "--seed", "3"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(json(&o)["passed"], true);
}
