use std::path::Path;
use std::process::{Command, Output};

use helly::certify::Configuration;
use helly::colorful::{generate_instance, InstanceParams};
use helly::exactgeom::{Constant, ExactNumber, Point, SymbolicBasis};
use helly::format::{encode_certificate, encode_descriptor, encode_instance, to_text, versioned, CertificateFile, Metadata};
use helly::pointsets::SetDescriptor;
use serde_json::Value;

fn helly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_helly")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn write_cert(dir: &Path, name: &str, configuration: Configuration, claimed_bound: usize) -> String {
    let file = CertificateFile { configuration, claimed_bound, metadata: Metadata::default() };
    let path = dir.join(name);
    std::fs::write(&path, to_text(&encode_certificate(&file))).unwrap();
    path.display().to_string()
}

fn unit_square() -> Configuration {
    let pts = [[0, 0], [1, 0], [0, 1], [1, 1]].iter().map(|p| Point::integer(p)).collect();
    Configuration::vertex_polytope(SetDescriptor::integer_lattice(2), pts)
}

/// Six points of a ℚ-module in ℝ³ whose core is a segment with a vertex that
/// needs π² in its coordinates.
fn degenerate_module_configuration() -> Configuration {
    let b = SymbolicBasis::new(vec![("pi".into(), Constant::Pi)]).unwrap();
    let pi = ExactNumber::element(&b, "pi").unwrap();
    let rows = [[3, 1, 0], [0, 0, 2], [3, 2, 1], [0, 3, 2], [3, 3, 0], [0, 2, 1]];
    let r: Vec<Point> = rows
        .iter()
        .enumerate()
        .map(|(k, p)| {
            let coords = p
                .iter()
                .enumerate()
                .map(|(c, &x)| {
                    let x = ExactNumber::integer(x).lift(&b).unwrap();
                    if k == 4 && c == 1 { x.add(&pi) } else { x }
                })
                .collect();
            Point::new(coords).unwrap()
        })
        .collect();
    Configuration::hoffman(SetDescriptor::QModule { generators: r.clone() }, r)
}

#[test]
fn check_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let ok = write_cert(dir.path(), "ok.json", unit_square(), 4);
    let o = helly(&["check", &ok]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["verdict"], "valid");

    let wrong = write_cert(dir.path(), "wrong.json", unit_square(), 5);
    let o = helly(&["check", &wrong]);
    assert_eq!(code(&o), 2);
    assert_eq!(stdout_json(&o)["code"], "bound-mismatch");

    let open = write_cert(dir.path(), "open.json", degenerate_module_configuration(), 6);
    let o = helly(&["check", &open]);
    assert_eq!(code(&o), 3, "{}", String::from_utf8_lossy(&o.stdout));
    assert_eq!(stdout_json(&o)["code"], "density-unknown");

    let o = helly(&["check", &dir.path().join("missing.json").display().to_string()]);
    assert_eq!(code(&o), 1);
}

#[test]
fn search_output_checks() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c.json").display().to_string();
    let o = helly(&["search", "--set", "Z^2-2Z^2", "--window", "-3:4,-3:4", "--threads", "2", "--out", &out]);
    assert_eq!(code(&o), 0);
    let summary = stdout_json(&o);
    assert_eq!(summary["best_size"], 6);
    assert_eq!(summary["exhausted"], true);
    assert!(summary["certificate"]["metadata"].get("timestamp").is_none());
    let file: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(file["version"], 1);
    assert!(file["metadata"]["timestamp"].is_u64());
    assert_eq!(code(&helly(&["check", &out])), 0);
}

#[test]
fn search_is_reproducible() {
    let args = ["search", "--set", "P^2", "--window", "0:30,0:30"];
    let a = helly(&args);
    let b = helly(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn search_time_limit_and_size_hint() {
    let o = helly(&["search", "--set", "P^2", "--window", "0:97,0:97", "--time-limit", "0"]);
    assert_eq!(code(&o), 4);
    assert_eq!(stdout_json(&o)["exhausted"], false);
    let o = helly(&["search", "--set", "P^2", "--window", "0:97,0:97", "--max-size", "5"]);
    assert_eq!(code(&o), 0);
    assert!(stdout_json(&o)["best_size"].as_u64().unwrap() >= 5);
}

#[test]
fn search_rejects_bad_input() {
    assert_eq!(code(&helly(&["search", "--set", "Z^2", "--window", "0:4"])), 1);
    assert_eq!(code(&helly(&["search", "--set", "Z^2"])), 1);
    assert_eq!(code(&helly(&["--help"])), 0);
    assert_eq!(code(&helly(&["search", "--set", "nowhere", "--window", "0:4,0:4"])), 1);
    assert_eq!(code(&helly(&["search", "--set", "Z^2", "--window", "0:4,0:4", "--time-limit", "-1"])), 1);
}

#[test]
fn all_maxima() {
    let o = helly(&["search", "--set", "Z^2", "--window", "0:1,0:2", "--all-maxima"]);
    let maxima = stdout_json(&o)["maxima"].as_array().unwrap().len();
    // two unit squares and two slanted unit parallelograms
    assert_eq!(maxima, 4);
}

#[test]
fn bound_report() {
    let o = helly(&["bound", "--set", "Z^3"]);
    assert_eq!(code(&o), 0);
    let r = stdout_json(&o);
    assert_eq!(r["version"], 1);
    assert_eq!(r["upper"]["value"], 8);
    assert_eq!(r["lower"]["value"], 8);

    let o = helly(&["bound", "--set", "Z^2xR^2"]);
    assert_eq!(stdout_json(&o)["upper"]["value"], 12);

    let o = helly(&["bound", "--set", "Z^2-2Z^2-3Z^2-5Z^2-7Z^2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout_json(&o)["upper"].is_null());
    let o = helly(&["bound", "--set", "Z^2-2Z^2-3Z^2-5Z^2-7Z^2", "--ramsey", "4=51"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["upper"]["value"], 200);
}

#[test]
fn bound_reads_descriptor_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.json");
    std::fs::write(&path, to_text(&versioned(encode_descriptor(&SetDescriptor::PrimeGrid { d: 3 })))).unwrap();
    let o = helly(&["bound", "--set", &path.display().to_string()]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["lower"]["value"], 28);

    std::fs::write(&path, to_text(&encode_descriptor(&SetDescriptor::PrimeGrid { d: 3 }))).unwrap();
    assert_eq!(code(&helly(&["bound", "--set", &path.display().to_string()])), 1);
}

#[test]
fn ramsey_entries() {
    let o = helly(&["ramsey", "2"]);
    assert_eq!(stdout_json(&o)["value"], 6);
    assert_eq!(stdout_json(&o)["provenance"], "verified-exhaustively");
    assert_eq!(code(&helly(&["ramsey", "4"])), 1);
    let o = helly(&["ramsey", "4", "--override", "4=51"]);
    assert_eq!(stdout_json(&o)["provenance"], "user-override");
}

#[test]
fn oracle_agreement() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pts.json");
    let points = [[0, 0], [2, 0], [3, 2], [1, 3], [-1, 2]].iter().map(|p| Point::integer(p)).collect();
    std::fs::write(&path, to_text(&versioned(encode_descriptor(&SetDescriptor::ExplicitFinite { points })))).unwrap();
    let o = helly(&["oracle", "--set", &path.display().to_string()]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["agree"], true);
    assert_eq!(v["vertex"], 5);
    assert_eq!(code(&helly(&["oracle", "--set", &path.display().to_string(), "--budget", "3"])), 1);
}

#[test]
fn colorful_trials_are_deterministic() {
    let args = ["colorful", "--trials", "12", "--seed", "5"];
    let a = helly(&args);
    let b = helly(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let v = stdout_json(&a);
    assert_eq!(v["colors"], 4);
    let seeds: Vec<u64> = v["trials"].as_array().unwrap().iter().map(|t| t["seed"].as_u64().unwrap()).collect();
    assert_eq!(seeds, (5..17).collect::<Vec<_>>());
    assert_eq!(v["summary"]["counterexamples"], 0);
}

#[test]
fn colorful_reloads_instances() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("inst.json");
    let inst = generate_instance(2, &InstanceParams::new(2, 4)).unwrap();
    std::fs::write(&path, to_text(&encode_instance(&inst))).unwrap();
    let o = helly(&["colorful", "--instance", &path.display().to_string()]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["outcome"], "conclusion-holds");
}

#[test]
fn render_planar_only() {
    let dir = tempfile::tempdir().unwrap();
    let cert = write_cert(dir.path(), "sq.json", unit_square(), 4);
    let svg = dir.path().join("sq.svg");
    let o = helly(&["render", &cert, "--out", &svg.display().to_string()]);
    assert_eq!(code(&o), 0);
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<svg") && text.contains("data-scale=\"40\"") && text.contains("<polygon"));

    let cube = [[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]].iter().map(|p| Point::integer(p)).collect();
    let cert3 = write_cert(dir.path(), "c3.json", Configuration::vertex_polytope(SetDescriptor::integer_lattice(3), cube), 4);
    let o = helly(&["render", &cert3, "--out", &dir.path().join("c3.svg").display().to_string()]);
    assert_eq!(code(&o), 1);
}

#[test]
fn precision_cap_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_helly"))
        .args(["ramsey", "1"])
        .env("HELLY_PRECISION_CAP", "not-a-number")
        .output()
        .unwrap();
    assert_ne!(code(&o), 0);
    let o = Command::new(env!("CARGO_BIN_EXE_helly"))
        .args(["ramsey", "1"])
        .env("HELLY_PRECISION_CAP", "256")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
}
