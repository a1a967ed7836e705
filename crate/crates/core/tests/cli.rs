//! The `salab` binary: outputs on the shipped examples and the exit-code
//! contract.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn salab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_salab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn example(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "examples", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn results(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    v["results"].clone()
}

fn write(dir: &tempfile::TempDir, name: &str, text: &[u8]) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn shipped_examples() {
    assert_eq!(results(&salab(&["pd", &example("s7.ideal")])), json!({"pd": 2}));
    assert_eq!(results(&salab(&["nu", "--tuple", &example("sum_squares_5.ideal")]))["nu"], json!(5));
    assert_eq!(
        results(&salab(&["regseq", &example("xy_xz.ideal")])),
        json!({"regular": false, "codim": 1})
    );
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(salab(&["pd", &example("s7.ideal")]).status.code(), Some(0));

    // domain error: strength of a cubic
    let cubic = write(&dir, "cubic.ideal", b"ring QQ[x,y]\nx^3 + y^3\n");
    assert_eq!(salab(&["strength", &cubic]).status.code(), Some(1));

    // parse errors, with line:column on stderr
    let bad = write(&dir, "bad.ideal", b"ring QQ[x]\nx^^2\n");
    let out = salab(&["pd", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("2:3"));
    let f2 = write(&dir, "f2.ideal", b"ring F2[x]\nx\n");
    assert_eq!(salab(&["pd", &f2]).status.code(), Some(2));
    let empty = write(&dir, "empty.ideal", b"ring QQ[x]\n# nothing\n");
    assert_eq!(salab(&["pd", &empty]).status.code(), Some(2));
    let latin1 = write(&dir, "latin1.ideal", b"ring QQ[x]\nx\xe9\n");
    assert_eq!(salab(&["pd", &latin1]).status.code(), Some(2));

    // resource cap
    let out = salab(&["enumerate-hf", "--field", "F3", "--n", "4", "--degrees", "2,2"]);
    assert_eq!(out.status.code(), Some(3));
    let out = salab(&["enumerate-hf", "--samples", "20", "--cap", "10"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn reports_are_byte_identical_and_written_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("out.json");
    let a = salab(&["resolve", &example("s7.ideal"), "--json", out_path.to_str().unwrap()]);
    let b = salab(&["resolve", &example("s7.ideal")]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(std::fs::read(&out_path).unwrap(), a.stdout);
    let with_timings: Value = serde_json::from_slice(&salab(&["pd", &example("s7.ideal"), "--timings"]).stdout).unwrap();
    assert!(with_timings["timings"].is_object());
}

#[test]
fn grids_do_not_depend_on_thread_count() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_salab"))
            .args(["explore-threshold", "--field", "F3", "--n", "3", "--degrees", "2,2", "--samples", "300", "--seed", "5"])
            .env("SALAB_THREADS", threads)
            .output()
            .unwrap()
    };
    let one = run("1");
    assert!(one.status.success());
    assert_eq!(one.stdout, run("4").stdout);
}

#[test]
fn reproduce_paper_detects_sabotage() {
    let ok = salab(&["reproduce-paper"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(ok.stdout, salab(&["reproduce-paper"]).stdout);

    let bad = salab(&["reproduce-paper", "--perturb-syzygies"]);
    assert_eq!(bad.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&bad.stdout).unwrap();
    let items = v["results"]["items"].as_array().unwrap();
    assert_eq!(items[0]["pass"], json!(false));
    assert!(items[1..].iter().all(|i| i["pass"] == json!(true)));
}
