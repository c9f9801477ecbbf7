use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_omegalat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.push("--json");
    let o = run(&all);
    let v = serde_json::from_str(&stdout(&o)).expect("valid JSON");
    (v, o.status.code().unwrap())
}

#[test]
fn catalan_sizes() {
    let (v, code) = json(&["dyck", "4"]);
    assert_eq!((v["size"].as_u64(), code), (Some(14), 0));
    let (v, _) = json(&["tamari", "1"]);
    assert_eq!(v["size"], 1);
    let (v, code) = json(&["catalan", "typeA", "3"]);
    assert_eq!(v["size"], 14);
    assert_eq!(v["isomorphic_to_tamari"], true);
    assert_eq!(code, 0);
    assert!(stdout(&run(&["typeA", "3"])).contains("≅ tamari 4: yes"));
}

#[test]
fn omega_counts() {
    for (spec, want) in [("int:1", 2), ("int:3", 14), ("int:4", 42)] {
        let (v, code) = json(&["omega", spec]);
        assert_eq!(v["size"], want, "{spec}");
        assert_eq!(code, 0);
    }
    let (v, _) = json(&["omega", "int:3", "--op"]);
    assert_eq!(v["size"], 14);
}

#[test]
fn verify_targets() {
    assert_eq!(run(&["verify", "example"]).status.code(), Some(0));
    assert_eq!(run(&["verify", "thm1", "--n", "2"]).status.code(), Some(0));
    let (v, code) = json(&["verify", "thm1", "--n", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["mapping"].as_array().unwrap().len(), 14);
    assert_eq!(run(&["verify", "prop-main"]).status.code(), Some(0));
    assert_eq!(
        run(&["verify", "lemma-omega", "--algebra", "int:2"])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn congruences_of_tamari_match_the_dual_dyck_lattice() {
    let (v, code) = json(&["verify", "thm2", "--n", "3"]);
    assert_eq!(v["congruences"], 5);
    assert_eq!(v["isomorphic_to_dual"], true);
    assert_eq!(v["forcing_matches"], true);
    // only the dual is isomorphic, so the literal claim fails
    assert_eq!(v["isomorphic"], false);
    assert_eq!(code, 1);
    assert_eq!(run(&["verify", "thm2", "--n", "2"]).status.code(), Some(0));
}

#[test]
fn tors_counts() {
    let (v, code) = json(&["tors", "example"]);
    assert_eq!((v["torsion_pairs"].as_u64(), code), (Some(6), 0));
    let (v, _) = json(&["tors", "int:2"]);
    assert_eq!(v["torsion_pairs"], 14);
    let (v, _) = json(&["tors", "An:3"]);
    assert_eq!(v["torsion_pairs"], 14);
    let (v, _) = json(&["tors", "int:2", "--field", "3"]);
    assert_eq!(v["torsion_pairs"], 14);
    assert_eq!(v["field"], 3);
}

#[test]
fn tors_json_round_trips() {
    let (v, _) = json(&["tors", "example"]);
    let lat: omegalat::lattice::LatticeJson =
        serde_json::from_value(v["torsion_lattice"]["lattice"].clone()).unwrap();
    let l = omegalat::FinLattice::from_json(&lat).unwrap();
    assert_eq!(l.to_json(), lat);
    assert_eq!(l.len(), 6);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["dyck", "0"]).status.code(), Some(2));
    assert_eq!(run(&["omega", "int:x"]).status.code(), Some(2));
    assert_eq!(run(&["tors", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        run(&["tors", "int:2", "--field", "4"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["tors", "int:2", "--cap", "5"]).status.code(), Some(3));
}

#[test]
fn parse_error_names_the_location() {
    let dir = std::env::temp_dir().join(format!("omegalat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(&path, "{\"elements\": [\"a\",\n \"b\"], \"leq\": [[0, }").unwrap();
    let o = run(&["omega", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn json_poset_and_dot_output() {
    let dir = std::env::temp_dir().join(format!("omegalat-cli-dot-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let poset = dir.join("v.json");
    std::fs::write(
        &poset,
        r#"{"elements": ["a", "b", "c"], "leq": [[0, 2], [1, 2]]}"#,
    )
    .unwrap();
    let dot = dir.join("omega.dot");
    let o = run(&[
        "omega",
        poset.to_str().unwrap(),
        "--dot",
        dot.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("5 elements"));
    assert!(std::fs::read_to_string(&dot)
        .unwrap()
        .starts_with("digraph"));
}
