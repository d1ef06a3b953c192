use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn sample(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../dsl/samples")
        .join(name)
}

fn grothkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grothkit"))
        .args(args)
        .env_remove("GROTHKIT_BUDGET")
        .stdin(Stdio::null())
        .output()
        .expect("binary runs")
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_grothkit"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.push("--json");
    let out = grothkit(&all);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout));
    });
    (out.status.code().unwrap(), v)
}

fn path(name: &str) -> String {
    sample(name).display().to_string()
}

#[test]
fn report_has_the_documented_fields() {
    let (code, v) = json(&["validate", "-i", &path("fibred.cat")]);
    assert_eq!(code, 0);
    for key in [
        "command",
        "inputs",
        "verdict",
        "witnesses",
        "counterexamples",
        "budget",
    ] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["command"], "validate");
    assert!(v["budget"]["limit"].as_u64().unwrap() > 0);
}

#[test]
fn broken_associativity_is_refuted() {
    let (code, v) = json(&["validate", "-i", &path("broken_assoc.cat")]);
    assert_eq!(code, 1);
    assert_eq!(
        v["counterexamples"][0]["law"]["report"]["violations"][0]["law"],
        "associativity"
    );
}

#[test]
fn broken_cleavage_is_refuted() {
    let (code, v) = json(&[
        "check-opfib",
        "-i",
        &path("broken_cleavage.cat"),
        "--cleavage",
        "bad",
    ]);
    assert_eq!(code, 1);
    assert_eq!(v["counterexamples"][0]["law"], "not_cartesian");
    let (code, _) = json(&[
        "check-opfib",
        "-i",
        &path("broken_cleavage.cat"),
        "--cleavage",
        "good",
    ]);
    assert_eq!(code, 0);
}

#[test]
fn square_that_drops_chosen_lifts_is_refuted() {
    let args = [
        "check-cleavage",
        "-i",
        &path("non_cleavage_preserving.cat"),
        "--top",
        "H",
        "--bottom",
        "idA",
        "--from",
        "good",
        "--to",
        "good",
    ];
    let (code, v) = json(&args);
    assert_eq!(code, 1);
    assert_eq!(v["counterexamples"][0]["failure"], "lift");
}

#[test]
fn non_discrete_fibre_is_refuted() {
    let (code, v) = json(&[
        "check-discrete",
        "-i",
        &path("non_discrete.cat"),
        "--functor",
        "P",
    ]);
    assert_eq!(code, 1);
    assert_eq!(v["counterexamples"][0]["lifts"], 2);
}

#[test]
fn syntax_and_reference_errors_exit_two() {
    let out = with_stdin(&["validate"], "category X { objects: a b\n");
    assert_eq!(out.status.code(), Some(2));
    let out = with_stdin(&["validate"], "functor F : A -> A {\n}\n");
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stdout).contains("reference error"));
}

#[test]
fn unknown_entity_and_bad_flags_exit_two() {
    assert_eq!(
        grothkit(&["groth", "-i", &path("fibred.cat")])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        grothkit(&["iso", "--left", "nope", "-i", &path("delta_one.cat")])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(grothkit(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(
        grothkit(&["validate", "-i", "/nonexistent/file.cat"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn groth_document_reparses() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("total.cat");
    let o = out.display().to_string();
    let r = grothkit(&["groth", "-i", &path("semidirect.cat"), "-o", &o]);
    assert_eq!(r.status.code(), Some(0));
    let first = std::fs::read_to_string(&out).unwrap();
    let r = grothkit(&["validate", "-i", &o]);
    assert_eq!(
        r.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&r.stdout)
    );
    let again = dir.path().join("again.cat");
    let r = grothkit(&["build", "-i", &o, "-o", &again.display().to_string()]);
    assert_eq!(r.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&again).unwrap(), first);
}

#[test]
fn document_goes_to_stdout_and_report_to_stderr() {
    let r = grothkit(&["build", "-i", &path("walking_arrow.cat")]);
    assert_eq!(r.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&r.stdout);
    assert!(stdout.starts_with("category arrow {"), "{stdout}");
    assert!(String::from_utf8_lossy(&r.stderr).starts_with("build: pass"));
}

#[test]
fn iso_finds_the_semidirect_presentation() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("s3.cat");
    let mut text = std::fs::read_to_string(sample("semidirect.cat")).unwrap();
    text.push_str("\ncategory S = groth(action)\ncategory T = groth(action)\n");
    std::fs::write(&f, text).unwrap();
    let (code, v) = json(&[
        "iso",
        "-i",
        &f.display().to_string(),
        "--left",
        "S",
        "--right",
        "T",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["witnesses"][0]["flavor"], "category-iso");
}

#[test]
fn tiny_budget_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("b.cat");
    std::fs::write(&f, "category A = chain(4)\ncategory B = opposite(A)\n").unwrap();
    let p = f.display().to_string();
    let (code, v) = json(&["iso", "-i", &p, "--budget", "1"]);
    assert_eq!(code, 3);
    assert_eq!(v["verdict"], "budget_exceeded");
    let out = Command::new(env!("CARGO_BIN_EXE_grothkit"))
        .args(["iso", "-i", &p])
        .env("GROTHKIT_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let (code, _) = json(&["iso", "-i", &p]);
    assert_eq!(code, 0);
}

#[test]
fn dot_output_is_a_digraph() {
    let r = grothkit(&["validate", "--dot", "-i", &path("walking_arrow.cat")]);
    assert_eq!(r.status.code(), Some(0));
    let s = String::from_utf8_lossy(&r.stdout);
    assert!(s.starts_with("digraph \"arrow\" {"), "{s}");
    assert!(s.contains("\"a\" -> \"b\" [label=\"f\"];"), "{s}");
}

#[test]
fn indexed_commands_on_a_constructed_opfibration() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("ix.cat");
    let mut text = std::fs::read_to_string(sample("arrow_example.cat")).unwrap();
    text.push_str(
        "\ncategory G = groth(F)\ncategory W = walking_arrow()\ndiagram Z = constant(G, W)\n\
         opfib phi = groth(Z, F)\ndiagmor one = identity(F)\ncocone s = inc(F)\n",
    );
    std::fs::write(&f, text).unwrap();
    let p = f.display().to_string();
    for args in [
        vec!["indexed", "groth", "--diagram", "Z"],
        vec!["indexed", "fibres"],
        vec!["indexed", "roundtrip"],
        vec!["indexed", "roundtrip", "--diagram", "Z"],
        vec!["indexed", "pseudonat"],
        vec!["indexed", "dualize"],
        vec!["indexed", "dualize", "--diagram", "Z"],
        vec!["pullback", "--diagmor", "one", "--opfib", "phi"],
        vec!["cocone-factorize"],
        vec!["check-opfib", "--opfib", "phi"],
        vec!["factorize", "--diagram", "F"],
    ] {
        let mut all = args.clone();
        all.extend(["-i", &p]);
        let (code, v) = json(&all);
        assert_eq!(code, 0, "{args:?}: {v}");
    }
    // constant W fibres are not discrete, and the report says so on both sides
    let (code, v) = json(&["indexed", "discrete", "-i", &p]);
    assert_eq!(code, 0);
    assert_eq!(v["witnesses"][0]["discrete"], false);
    assert_eq!(v["witnesses"][0]["set_valued"], false);
}

#[test]
fn base_change_and_pullback_on_the_fibred_sample() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bc.cat");
    let mut text = std::fs::read_to_string(sample("delta_b.cat")).unwrap();
    text.push_str("\ncategory T = terminal()\nfunctor h = constant(T, A, b)\n");
    std::fs::write(&f, text).unwrap();
    let (code, v) = json(&[
        "base-change",
        "-i",
        &f.display().to_string(),
        "--functor",
        "h",
    ]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["witnesses"][1]["cleavage_preserving"], true);

    let mut text = std::fs::read_to_string(sample("fibred.cat")).unwrap();
    text.push_str("\ncategory T = terminal()\nfunctor pick_b = constant(T, A, b)\n");
    std::fs::write(&f, text).unwrap();
    let (code, v) = json(&[
        "pullback",
        "-i",
        &f.display().to_string(),
        "--functor",
        "pick_b",
        "--cleavage",
        "good",
    ]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["witnesses"][0]["total"]["objects"], 2);
}

#[test]
fn ungroth_recovers_fibres() {
    let (code, v) = json(&["ungroth", "-i", &path("fibred.cat"), "--cleavage", "good"]);
    assert_eq!(code, 0);
    assert_eq!(v["witnesses"][1]["size"]["objects"], 2);
    let (code, _) = json(&[
        "ungroth",
        "-i",
        &path("broken_cleavage.cat"),
        "--cleavage",
        "bad",
    ]);
    assert_eq!(code, 1);
}

#[test]
fn examples_list_print_and_write() {
    let (code, v) = json(&["examples"]);
    assert_eq!(code, 0);
    let names: Vec<&str> = v["witnesses"][0]["examples"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap())
        .collect();
    assert!(names.contains(&"semidirect") && names.contains(&"stock_semidirect"));
    let r = grothkit(&["examples", "--name", "walking_arrow"]);
    assert!(String::from_utf8_lossy(&r.stdout).contains("category arrow {"));
    assert_eq!(
        grothkit(&["examples", "--name", "nope"]).status.code(),
        Some(2)
    );

    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().join("out");
    let r = grothkit(&[
        "examples",
        "--random",
        "3",
        "--seed",
        "5",
        "-o",
        &d.display().to_string(),
    ]);
    assert_eq!(r.status.code(), Some(0));
    let a = std::fs::read_to_string(d.join("random_2.cat")).unwrap();
    let r = grothkit(&[
        "examples", "--random", "3", "--seed", "5", "--name", "random_2",
    ]);
    assert_eq!(String::from_utf8_lossy(&r.stdout), a);
    for entry in std::fs::read_dir(&d).unwrap() {
        let p = entry.unwrap().path();
        let name = p.file_name().unwrap().to_string_lossy().to_string();
        let code = grothkit(&["validate", "-i", &p.display().to_string()])
            .status
            .code();
        let expected = if name.starts_with("broken") { 1 } else { 0 };
        assert_eq!(code, Some(expected), "{name}");
    }
}

#[test]
fn groth_of_delta_one_is_iso_to_its_base() {
    let dir = tempfile::tempdir().unwrap();
    let total = dir.path().join("total.cat").display().to_string();
    let r = grothkit(&[
        "groth",
        "-i",
        &path("delta_one.cat"),
        "--diagram",
        "delta_one",
        "-o",
        &total,
    ]);
    assert_eq!(r.status.code(), Some(0));
    let (code, v) = json(&[
        "iso",
        "-i",
        &path("delta_one.cat"),
        "-i",
        &total,
        "--left",
        "total",
        "--right",
        "square",
    ]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["inputs"].as_array().unwrap().len(), 2);
}

#[test]
fn identity_opfibration_round_trips() {
    let (code, v) = json(&["indexed", "roundtrip", "-i", &path("identity_opfib.cat")]);
    assert_eq!(code, 0);
    assert_eq!(v["witnesses"][0]["flavor"], "diagram-iso");
}
