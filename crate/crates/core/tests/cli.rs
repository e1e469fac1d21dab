//! The `maxplus` binary end to end: exit codes, report shape, file formats.

use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_maxplus"))
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

/// Runs the binary and returns (exit code, parsed report).
fn run(args: &[&str]) -> (i32, Value) {
    let out = bin().args(args).output().expect("binary runs");
    let code = out.status.code().expect("exit code");
    let report = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}\nstderr: {}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    });
    (code, report)
}

fn validator() -> jsonschema::Validator {
    let schema: Value = serde_json::from_str(include_str!("../data/report.schema.json")).unwrap();
    jsonschema::validator_for(&schema).expect("schema compiles")
}

fn assert_valid(report: &Value) {
    let v = validator();
    let errors: Vec<String> = v.iter_errors(report).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}\n{report:#}");
}

const EX2: &str = "# example 2 truncated at 3\n0 0 0\n0 1 -1\n1 0 -1\n1 2 -1\n2 1 -1\n2 3 -1\n3 2 -1\n";

#[test]
fn spectra_example_two() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "ex2.edges", EX2);
    let (code, r) = run(&["--mode", "integer", "spectra", "--graph", g.to_str().unwrap(), "--pi", "basepoint:0"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["rho"], 0.0);
    assert_eq!(r["results"]["recurrent"], serde_json::json!(["0"]));
    assert_eq!(r["status"], "ok");
    assert_valid(&r);
}

#[test]
fn star_of_single_node() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "empty.edges", "");
    let (code, r) = run(&["star", "--graph", g.to_str().unwrap(), "--nodes", "a"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["star"], serde_json::json!([[0.0]]));
    assert_eq!(r["results"]["plus"], serde_json::json!([[null]]));
    assert_valid(&r);
}

#[test]
fn node_override_gives_empty_kernel() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "empty.edges", "# nothing\n");
    let (code, r) = run(&["star", "--graph", g.to_str().unwrap(), "--nodes", "a,b"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["nodes"], serde_json::json!(["a", "b"]));
    assert_eq!(r["results"]["plus"], serde_json::json!([[null, null], [null, null]]));
}

#[test]
fn parse_errors_exit_two_with_location() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "bad.edges", "a b 1\nx y z\n");
    let (code, r) = run(&["star", "--graph", g.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(r["error"]["kind"], "input");
    assert!(r["error"]["message"].as_str().unwrap().starts_with("line 2, column 5"));
    assert_valid(&r);

    let (code, r) = run(&["star", "--graph", dir.path().join("missing").to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_valid(&r);

    let f = write(dir.path(), "frac.edges", "a b 0.5\n");
    let (code, _) = run(&["--mode", "integer", "star", "--graph", f.to_str().unwrap()]);
    assert_eq!(code, 2);
}

#[test]
fn duplicate_edges_warn_and_keep_the_last() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "dup.edges", "a b -1\na b -2\n");
    let (code, r) = run(&["star", "--graph", g.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["star"][0][1], -2.0);
    assert_eq!(r["warnings"].as_array().unwrap().len(), 1);
}

#[test]
fn bad_arguments_exit_two() {
    let out = bin().args(["spectra"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().args(["--help"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn martin_and_decompose() {
    let dir = TempDir::new().unwrap();
    // two recurrence classes {a} and {c}, both reached from the transient basepoint o
    let g = write(dir.path(), "k.edges", "o a -1\no c -1\na a 0\nc c 0\n");
    let (code, r) = run(&["--mode", "integer", "martin", "--graph", g.to_str().unwrap(), "--pi", "basepoint:o"]);
    assert_eq!(code, 0, "{r:#}");
    assert_eq!(r["results"]["nodes"], serde_json::json!(["a", "c", "o"]));
    assert_eq!(r["results"]["minimal"], serde_json::json!(["a", "c"]));
    assert_eq!(r["results"]["K"], serde_json::json!([[1.0, null, null], [null, 1.0, null], [0.0, 0.0, 0.0]]));
    assert_valid(&r);

    // K_{·a} ⊕ K_{·c} is harmonic, splits over both minimal points and is not extremal
    let v = write(dir.path(), "u.vec", "a 1\nc 1\no 0\n");
    let (code, r) = run(&["--mode", "integer", "decompose", "--graph", g.to_str().unwrap(), "--pi", "basepoint:o", "--vector", v.to_str().unwrap()]);
    assert_eq!(code, 0, "{r:#}");
    assert_eq!(r["results"]["harmonic"], true);
    assert_eq!(
        r["results"]["measure"],
        serde_json::json!([{"node": "a", "density": 0.0}, {"node": "c", "density": 0.0}])
    );
    assert_eq!(r["results"]["extremality"]["extremal"], false);
    assert_valid(&r);

    let bad = write(dir.path(), "bad.vec", "zz 0\n");
    let (code, r) = run(&["decompose", "--graph", g.to_str().unwrap(), "--pi", "basepoint:o", "--vector", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_valid(&r);

    let (code, r) = run(&["martin", "--graph", g.to_str().unwrap(), "--pi", "basepoint:nowhere"]);
    assert_eq!(code, 2);
    assert_valid(&r);
}

#[test]
fn martin_rejects_rows_that_are_not_superharmonic() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "k.edges", "a b 0\nb a -1\n");
    let pi = write(dir.path(), "pi.vec", "a 0\nb 5\n");
    let (code, r) = run(&["martin", "--graph", g.to_str().unwrap(), "--pi", &format!("explicit:{}", pi.display())]);
    assert_eq!(code, 1);
    assert_eq!(r["error"]["kind"], "module");
    assert_valid(&r);
}

#[test]
fn boundary_subcommand() {
    let (code, r) = run(&["--mode", "integer", "boundary", "--rule", "z", "--targets", "k", "--window", "3"]);
    assert_eq!(code, 0);
    let values: Vec<f64> = r["results"]["estimate"]["values"].as_array().unwrap().iter().map(|v| v.as_f64().unwrap()).collect();
    let labels = r["results"]["estimate"]["labels"].as_array().unwrap();
    for (l, v) in labels.iter().zip(&values) {
        let i: f64 = l.as_str().unwrap().parse().unwrap();
        assert_eq!(*v, i);
    }
    assert_valid(&r);

    let (code, r) = run(&["boundary", "--rule", "tripod", "--targets", "(k,1)", "--probe", "(k,1)"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["h_flat"]["value"], -2.0);

    let (code, r) = run(&["--mode", "integer", "boundary", "--rule", "z", "--lambda", "-1.5"]);
    assert_eq!(code, 1);
    assert_valid(&r);

    let (code, r) = run(&["--mode", "integer", "boundary", "--rule", "nontight", "--lambda", "0"]);
    assert_eq!(code, 1);
    assert!(r["error"]["message"].as_str().unwrap().contains("fails at 0"), "{r:#}");

    let (code, _) = run(&["boundary", "--rule", "moebius"]);
    assert_eq!(code, 2);
    let (code, _) = run(&["boundary", "--rule", "z2", "--targets", "k"]);
    assert_eq!(code, 2);
}

#[test]
fn rule_files() {
    let dir = TempDir::new().unwrap();
    let rule = r#"{"name": "line", "dim": 1, "basepoint": [0], "symmetric": true,
        "offsets": [{"offset": [1], "weight": -1}, {"offset": [-1], "weight": -1}]}"#;
    let f = write(dir.path(), "line.json", rule);
    let (code, r) = run(&["--mode", "integer", "boundary", "--rule", &format!("file:{}", f.display()), "--targets", "-k"]);
    assert_eq!(code, 0, "{r:#}");
    assert_valid(&r);
}

#[test]
fn busemann_subcommand() {
    let (code, r) = run(&["busemann", "--norm", "linf", "--dim", "2", "enumerate", "--h", "0.5", "--extent", "3"]);
    assert_eq!(code, 0, "{r:#}");
    assert_eq!(r["results"]["count"], 8);
    assert_valid(&r);

    let (code, r) = run(&["busemann", "--norm", "linf", "--dim", "2", "ray", "--X", "1,-2", "--y", "1,1"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["formula"], "min((x1 - 1), (x2 + 2)) + 1");
    assert_valid(&r);

    let (code, r) = run(&["busemann", "--norm", "l1", "--dim", "2", "ray", "--X", "1,-2", "--y", "1,1"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["formula"], "x1 + x2");
    assert_valid(&r);

    let (code, _) = run(&["busemann", "--norm", "l2", "--dim", "2", "ray", "--y", "0,1"]);
    assert_eq!(code, 0);
    let (code, _) = run(&["busemann", "--norm", "l2", "--dim", "2", "enumerate"]);
    assert_eq!(code, 2);
    let (code, _) = run(&["busemann", "--norm", "linf", "--dim", "2", "ray", "--y", "0,0"]);
    assert_eq!(code, 2);
}

#[test]
fn laxoleinik_subcommand() {
    for check in ["eigen", "asymptotics", "characterization"] {
        let (code, r) = run(&["laxoleinik", "--p", "3", "--lambda", "1", "--s", "0.5", "--check", check]);
        assert_eq!(code, 0, "{check}: {r:#}");
        assert_valid(&r);
    }
    let (code, _) = run(&["laxoleinik", "--p", "0.5"]);
    assert_eq!(code, 2);
}

#[test]
fn fixtures_subcommand_and_out_file() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("report.json");
    let status = bin().args(["fixtures", "--suite", "paper", "--out", out.to_str().unwrap()]).status().unwrap();
    assert_eq!(status.code(), Some(0));
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(r["results"]["pass"], true);
    assert_valid(&r);
    let (code, _) = run(&["fixtures", "--suite", "other"]);
    assert_eq!(code, 2);
}

#[test]
fn output_is_stable_apart_from_timing() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "ex2.edges", EX2);
    let strip = |mut r: Value| {
        r["timing_ms"] = Value::Null;
        serde_json::to_string(&r).unwrap()
    };
    let (_, a) = run(&["martin", "--graph", g.to_str().unwrap(), "--pi", "basepoint:0"]);
    let (_, b) = run(&["martin", "--graph", g.to_str().unwrap(), "--pi", "basepoint:0"]);
    assert_eq!(strip(a), strip(b));
}
