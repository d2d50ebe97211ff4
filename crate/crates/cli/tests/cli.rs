use std::process::Command;

use serde_json::Value;

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn hst(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_hst"))
        .args(args)
        .env_remove("HST_VERTEX_BUDGET")
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn schema_errors(kind: &str, doc: &Value) -> Vec<String> {
    let path = format!("{}/schemas/{kind}.schema.json", env!("CARGO_MANIFEST_DIR"));
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let compiled = jsonschema::JSONSchema::compile(&schema).expect("schema compiles");
    // Bound to a local so the error iterator is dropped before `compiled`.
    let errors = match compiled.validate(doc) {
        Ok(()) => Vec::new(),
        Err(errs) => errs.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
    };
    errors
}

fn json_of(kind: &str, args: &[&str]) -> Value {
    let run = hst(args);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let doc: Value = serde_json::from_str(&run.stdout).unwrap();
    let errors = schema_errors(kind, &doc);
    assert!(errors.is_empty(), "{kind} report breaks its schema: {errors:?}");
    doc
}

#[test]
fn integers_have_two_ends() {
    let run = hst(&["ends", &fixture("z.scn")]);
    assert_eq!(run.code, 0);
    assert!(run.stdout.contains("2 ends (stable)"), "{}", run.stdout);
}

#[test]
fn surface_halfspace_by_group_name() {
    let run = hst(&["ends", &fixture("surface_genus2.scn"), "--side", "A"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    assert!(run.stdout.contains("1 unbounded component (stable)"), "{}", run.stdout);
}

#[test]
fn artificial_halfspace_is_multi_ended() {
    let run = hst(&["ends", &fixture("example71.scn"), "--side", "left"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    assert!(run.stdout.contains("≥2 unbounded components (stable)"), "{}", run.stdout);
}

#[test]
fn one_ended_splittings_need_no_chop() {
    for f in ["surface_genus2.scn", "bs12.scn"] {
        let run = hst(&["chop", &fixture(f)]);
        assert_eq!(run.code, 0, "{f}: {}", run.stderr);
        assert!(run.stdout.contains("no chop needed"), "{f}: {}", run.stdout);
    }
}

#[test]
fn free_splitting_stops_with_capability_code() {
    let run = hst(&["chop", &fixture("f2free.scn")]);
    assert_eq!(run.code, 2, "{}", run.stdout);
    assert!(run.stdout.contains("already trivial"), "{}", run.stdout);
}

#[test]
fn path_pocset_cubes_to_a_path() {
    let run = hst(&["cube", &fixture("path_tree.pocset.json")]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    assert!(run.stdout.contains("4 vertices, 3 edges, dimension 1, shape: path"), "{}", run.stdout);
    let doc = json_of("cube", &["cube", &fixture("path_tree.pocset.json"), "--json"]);
    assert_eq!(doc["vertices"].as_array().unwrap().len(), 4);
}

#[test]
fn complete_graph_mincut() {
    let doc = json_of("mincut", &["mincut", &fixture("k4.graph"), "a", "d", "--json"]);
    assert_eq!(doc["size"], 3);
    assert_eq!(doc["side"], serde_json::json!(["a"]));
}

#[test]
fn pattern_checks_cite_their_conclusions() {
    let central = hst(&["check", &fixture("example83.scn")]);
    assert_eq!(central.code, 0, "{}", central.stderr);
    assert!(central.stdout.contains("central stable letter pattern: matched"));
    assert!(central.stdout.contains("[cited:"));
    let double = hst(&["check", &fixture("example84.scn")]);
    assert!(double.stdout.contains("double pattern: matched"));
    assert!(double.stdout.contains("[cited:"));
    let surface = hst(&["check", &fixture("surface_genus2.scn")]);
    assert!(surface.stdout.contains("no pattern matched"));
    assert!(!surface.stdout.contains("[cited:"));
    for f in ["example83.scn", "example84.scn", "surface_genus2.scn"] {
        json_of("check", &["check", &fixture(f), "--json"]);
    }
}

#[test]
fn exit_codes_follow_error_classes() {
    // The central-stable fixture declares an edge group the engines cannot
    // decide membership in.
    let cap = hst(&["ends", &fixture("example83.scn")]);
    assert_eq!(cap.code, 2, "{}", cap.stderr);
    let budget = hst(&["ends", &fixture("surface_genus2.scn"), "--budget", "50"]);
    assert_eq!(budget.code, 3, "{}", budget.stderr);
    let missing = hst(&["ends", &fixture("nope.scn")]);
    assert_eq!(missing.code, 1);
    let usage = hst(&["ends"]);
    assert_eq!(usage.code, 1);
    let radii = hst(&["ends", &fixture("z.scn"), "-r", "3", "-R", "3"]);
    assert_eq!(radii.code, 1);
}

#[test]
fn parse_errors_name_the_line() {
    let dir = std::env::temp_dir().join(format!("hst-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.scn");
    std::fs::write(&path, "hst-scenario 1\nname = bad\n[groups]\nA = free(a)\n\n[splitting]\nkind = amalgam\nleft = A\nright = B\n").unwrap();
    let run = hst(&["ends", path.to_str().unwrap()]);
    assert_eq!(run.code, 1);
    assert!(run.stderr.contains("line 6") || run.stderr.contains("line 9"), "{}", run.stderr);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn json_reports_are_deterministic_and_valid() {
    for (kind, args) in [
        ("ends", vec!["ends", "surface_genus2.scn", "--side", "right", "--json"]),
        ("ends", vec!["ends", "bs12.scn", "--json"]),
        ("chop", vec!["chop", "surface_genus2.scn", "--json"]),
        ("chop", vec!["chop", "bs12.scn", "--json"]),
    ] {
        let args: Vec<String> =
            args.iter().map(|a| if a.ends_with(".scn") { fixture(a) } else { a.to_string() }).collect();
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let first = hst(&args);
        let second = hst(&args);
        assert_eq!(first.stdout, second.stdout, "{args:?}");
        json_of(kind, &args);
    }
}

#[test]
fn chop_writes_dot_when_asked() {
    let dir = std::env::temp_dir().join(format!("hst-cli-dot-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("out.dot");
    let run = hst(&["chop", &fixture("bs12.scn"), "--dot", path.to_str().unwrap()]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    // Nothing is chopped, so there is no tree to draw.
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn chopped_report_matches_schema() {
    let s = hst_cli::load_scenario(&fixture("example71.scn")).unwrap();
    let flags = hst_cli::ProbeFlags { dot: true, ..Default::default() };
    let out = hst_cli::chop(&s, &flags).unwrap();
    let errors = schema_errors("chop", &out.json);
    assert!(errors.is_empty(), "{errors:?}");
    assert!(out.dot.unwrap().contains("graph cube"));
}
