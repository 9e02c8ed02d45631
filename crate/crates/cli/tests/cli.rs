use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn corpus(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(name).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chaincert"))
        .args(args)
        .env("CHAINCERT_COLOR", "0")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("chaincert-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    dir.join(name)
}

fn write(path: &Path, text: &str) -> String {
    std::fs::write(path, text).expect("writable");
    path.to_string_lossy().into_owned()
}

#[test]
fn homology_of_the_hollow_triangle() {
    let o = run(&["homology", &corpus("circle.json"), "--ring", "Z", "--dim", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("command: homology\n"));
    assert!(out.contains("H_1 = Z^1\n"));
    assert!(out.ends_with("verdict: PASS\n"));
}

#[test]
fn ring_flag_overrides_the_file() {
    let out = stdout(&run(&["homology", &corpus("projective_plane.json"), "--ring", "Zmod:2"]));
    assert!(out.contains("ring: Zmod:2"));
    assert!(out.contains("H_2 = Z/2^1"));
    let out = stdout(&run(&["homology", &corpus("projective_plane.json"), "--ring", "Q"]));
    assert!(out.contains("H_1 = 0\n"));
}

#[test]
fn circle_in_itself_is_not_uv1() {
    let o = run(&["check-uvn", &corpus("circle_uvn.json"), "--n", "1"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("H_1: NONTRIVIAL"));
    assert!(out.contains("witness cycle:"));
    let o = run(&["check-uvn", &corpus("circle_uvn.json"), "--n", "0"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn extension_writes_a_certificate_that_verifies() {
    let cert = scratch("edge.cert.json");
    let c = cert.to_string_lossy().into_owned();
    let o = run(&["extend-realization", &corpus("edge_triangle.json"), "--certificate", &c]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains(&format!("certificate: {c}\n")));
    let v = run(&["verify-certificate", &c]);
    assert_eq!(v.status.code(), Some(0), "{}", stdout(&v));

    // a value off by a sign breaks the morphism law
    let text = std::fs::read_to_string(&cert).expect("certificate");
    let mut doc: serde_json::Value = serde_json::from_str(&text).expect("json");
    let values = doc["result"]["phi"]["values"].as_array_mut().expect("values");
    let edge = values.iter_mut().find(|v| v["simplex"].as_array().is_some_and(|s| s.len() == 2)).expect("edge value");
    edge["chain"][0][0] = serde_json::Value::String("-1".into());
    let bad = write(&scratch("edge.bad.json"), &serde_json::to_string(&doc).expect("json"));
    let v = run(&["verify-certificate", &bad]);
    assert_eq!(v.status.code(), Some(1));
    assert!(stdout(&v).contains("FAIL"));
}

#[test]
fn obstructions_exit_with_one() {
    let o = run(&["build-homotopy", &corpus("circle_homotopy.json")]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("obstruction level: 1"));
    assert!(out.ends_with("verdict: FAIL\n"));
    let o = run(&["build-homotopy", &corpus("triangle_homotopy.json")]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn other_constructions_succeed() {
    for (cmd, file) in [("dugundji-extend", "path_dugundji.json"), ("nerve-factorize", "path_nerve.json"), ("lift", "gen_prism_7.json")] {
        let cert = scratch(&format!("{file}.cert"));
        let c = cert.to_string_lossy().into_owned();
        let o = run(&[cmd, &corpus(file), "--certificate", &c]);
        assert_eq!(o.status.code(), Some(0), "{cmd}: {}", stdout(&o));
        let v = run(&["verify-certificate", &c]);
        assert_eq!(v.status.code(), Some(0), "{cmd}: {}", stdout(&v));
    }
}

#[test]
fn lcn_and_approximate_lcn() {
    let disk = r#"{"ring": "Z",
        "complexes": {"D": {"simplices": [["a", "b", "c"]]}},
        "covers": {"whole": {"complex": "D", "members": [{"name": "D", "vertices": ["a", "b", "c"]}]}},
        "towers": {"t": {"levels": ["whole", "whole", "whole"]}}}"#;
    let path = write(&scratch("disk.json"), disk);
    assert_eq!(run(&["check-lcn", &path]).status.code(), Some(0));
    let circle = disk.replace(r#"[["a", "b", "c"]]"#, r#"[["a", "b"], ["b", "c"], ["a", "c"]]"#);
    let path = write(&scratch("circle.json"), &circle);
    let o = run(&["check-lcn", &path]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("NONTRIVIAL"));

    let triple = r#"{"ring": "Z",
        "complexes": {
            "V": {"simplices": [["a", "b"], ["b", "c"], ["a", "c"]]},
            "W": {"simplices": [["a", "b"], ["b", "c"], ["a", "c"]]},
            "U": {"simplices": [["a", "b", "c"]]}},
        "command_args": {"v": "V", "w": "W", "u": "U", "n": 1}}"#;
    let path = write(&scratch("triple.json"), triple);
    assert_eq!(run(&["check-alcn", &path]).status.code(), Some(0));
    let hollow = triple.replace(r#""U": {"simplices": [["a", "b", "c"]]}"#, r#""U": {"simplices": [["a", "b"], ["b", "c"], ["a", "c"]]}"#);
    let path = write(&scratch("hollow.json"), &hollow);
    let o = run(&["check-alcn", &path]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("NO COMPANION"));
}

#[test]
fn bad_input_exits_with_two() {
    let unknown = write(&scratch("unknown.json"), r#"{"ring": "Z", "bogus": 1}"#);
    let o = run(&["homology", &unknown]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("unknown field `bogus`"));
    let truncated = write(&scratch("truncated.json"), "{");
    assert_eq!(run(&["homology", &truncated]).status.code(), Some(2));
    let bad_ring = write(&scratch("ring.json"), r#"{"ring": "Zmod:1", "complexes": {"P": {"simplices": [["a"]]}}}"#);
    let o = run(&["homology", &bad_ring]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("error: ring"));
    let dangling = write(
        &scratch("dangling.json"),
        r#"{"ring": "Z", "complexes": {"P": {"simplices": [["a"]]}},
            "maps": {"f": {"source": "P", "target": "Q", "assignment": {"a": "a"}}}}"#,
    );
    let o = run(&["homology", &dangling]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("maps.f"));
    assert_eq!(run(&["homology", "/no/such/file.json"]).status.code(), Some(2));
}

#[test]
fn generator_is_seeded() {
    let a = stdout(&run(&["gen-instance", "--family", "realization", "--seed", "3"]));
    let b = stdout(&run(&["gen-instance", "--family", "realization", "--seed", "3"]));
    let c = stdout(&run(&["gen-instance", "--family", "realization", "--seed", "4"]));
    assert_eq!(a, b);
    assert_ne!(a, c);
    let path = write(&scratch("gen.json"), &a);
    assert_eq!(run(&["extend-realization", &path]).status.code(), Some(0));
}

#[test]
fn timestamps_are_opt_in() {
    let plain = stdout(&run(&["homology", &corpus("circle.json")]));
    assert!(plain.starts_with("command:"));
    let stamped = stdout(&run(&["homology", &corpus("circle.json"), "--timestamps"]));
    assert!(stamped.starts_with("timestamp: "));
    assert!(stamped.ends_with(&plain));
}
