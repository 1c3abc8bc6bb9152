use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_specialcheck"))
        .args(args)
        .env_remove("SPECIALCHECK_FIXTURES")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn rightangled_catalog_to_nine_vertices() {
    let o = run(&["poly", "enumerate", "--rightangled", "--vmax", "9", "--jobs", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("count: 3"), "{text}");
    assert_eq!(text.lines().filter(|l| l.contains(" V=")).count(), 3);
}

#[test]
fn tabulated_breakpoint_passes() {
    let o = run(&["tiling", "breakpoint", "--spec", "t01.json", "--face", "P4.F3", "--beta", "(3/11)*(4+3*sqrt3)"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("verdict: pass"));
}

#[test]
fn bad_corner_fails_link_condition_with_witness() {
    let o = run(&["squares", "npc", "badcorner.json"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("verdict: fail"));
    assert!(text.contains("witness_length: 3"), "{text}");
}

#[test]
fn whitehead_quotient_and_relations() {
    assert_eq!(run(&["complex", "quotient", "whitehead.json"]).status.code(), Some(0));
    assert_eq!(run(&["surfaces", "relations", "whitehead.json"]).status.code(), Some(0));
    assert_eq!(run(&["aug", "build", "tetra.json"]).status.code(), Some(0));
}

#[test]
fn bad_inputs_exit_two() {
    assert_eq!(run(&["squares", "npc", "does-not-exist.json"]).status.code(), Some(2));
    assert_eq!(run(&["poly", "aut", "--shape", "dodecahedron"]).status.code(), Some(2));
    assert_eq!(run(&["poly", "enumerate", "--vmax", "8"]).status.code(), Some(2));

    let dir = std::env::temp_dir().join(format!("specialcheck-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let junk = dir.join("junk.json");
    std::fs::write(&junk, "{ not json").unwrap();
    let o = run(&["complex", "build", junk.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn json_output_is_deterministic() {
    let args = ["--format", "json", "hyperplanes", "pathologies", "whitehead.json"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["command"], "specialcheck --format json hyperplanes pathologies whitehead.json");
    assert!(v["input_digest"].as_str().unwrap().starts_with("sha256:"));
    assert!(v["verdict"] == "pass" || v["verdict"] == "fail");
}

#[test]
fn fixture_directory_is_searched() {
    let dir = std::env::temp_dir().join(format!("specialcheck-fx-{}", std::process::id()));
    std::fs::create_dir_all(dir.join("squares")).unwrap();
    std::fs::write(dir.join("squares").join("mine.json"), specialcheck::fixtures::SINGLE_SQUARE_JSON).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_specialcheck"))
        .args(["squares", "bipartite", "mine.json"])
        .env("SPECIALCHECK_FIXTURES", &dir)
        .output()
        .unwrap();
    std::fs::remove_dir_all(&dir).ok();
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}
