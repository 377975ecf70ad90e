use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use crystal_rigidity::colored_graph::parse_graph;
use crystal_rigidity::sparsity::{is_g11_independent, is_laman_sparse};

const LAMAN: &str = "gamma 3\nvertices 1\ne 0 0 0 0 1\ne 0 0 1 0 0\ne 0 0 1 0 1\n";
const NOT_LAMAN: &str = "gamma 3\nvertices 1\ne 0 0 1 0 0\ne 0 0 0 1 0\ne 0 0 0 0 1\n";
const FLEXIBLE: &str = "gamma 3\nvertices 1\ne 0 0 1 0 0\ne 0 0 0 1 0\ne 0 0 1 1 0\n";
const GAMMA22: &str = "gamma 3\nvertices 1\ne 0 0 0 0 1\ne 0 0 1 0 0\ne 0 0 1 0 1\ne 0 0 0 1 0\n";

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_crystal-rigidity"));
    cmd.env_remove("CR_SEED");
    cmd
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn run(args: &[&str], path: &Path) -> Output {
    bin().args(args).arg(path).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn edges_after(text: &str, label: &str) -> Vec<usize> {
    let line = text.lines().find(|l| l.starts_with(label)).unwrap_or_else(|| panic!("no {label} in {text}"));
    line[label.len()..].split_whitespace().map(|e| e.parse().unwrap()).collect()
}

#[test]
fn check_laman_example() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["check", "--family", "laman"], &write(dir.path(), "g", LAMAN));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "LAMAN\n");
}

#[test]
fn check_prints_a_valid_circuit() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["check"], &write(dir.path(), "g", NOT_LAMAN));
    assert_eq!(out.status.code(), Some(1));
    let circuit = edges_after(&stdout(&out), "circuit ");
    let g = parse_graph(NOT_LAMAN).unwrap();
    assert!(!is_laman_sparse(&g.subgraph(&circuit)));
    for i in 0..circuit.len() {
        let mut smaller = circuit.clone();
        smaller.remove(i);
        assert!(is_laman_sparse(&g.subgraph(&smaller)));
    }
}

#[test]
fn check_22_partition_is_independent() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["check", "--family", "22"], &write(dir.path(), "g", GAMMA22));
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let g = parse_graph(GAMMA22).unwrap();
    let (x, y) = (edges_after(&text, "partition x "), edges_after(&text, "partition y "));
    assert_eq!(x.len() + y.len(), g.m());
    assert!(is_g11_independent(&g, &x) && is_g11_independent(&g, &y));
}

#[test]
fn missing_and_malformed_files_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["check"], &dir.path().join("absent"));
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["check"], &write(dir.path(), "bad", "gamma 5\nvertices 1\n"));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
}

#[test]
fn realize_laman_example() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["realize", "--seed", "3"], &write(dir.path(), "g", LAMAN));
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("faithful\npoint 0 "));
    assert!(text.contains("lattice v1 "));
}

#[test]
fn realize_gamma22_collapses() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["realize"], &write(dir.path(), "g", GAMMA22));
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("collapsed (kernel dim 0)"));
}

#[test]
fn rank_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["rank"], &write(dir.path(), "f", FLEXIBLE));
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FLEXIBLE"));

    let out = run(&["rank"], &write(dir.path(), "l", LAMAN));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "rank 3\nedges 3\nlaman count 3\nMINIMALLY-RIGID\n");

    let out = run(&["rank"], &write(dir.path(), "o", GAMMA22));
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("OVERBRACED"));
}

#[test]
fn render_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "g", LAMAN);
    let svg = dir.path().join("a.svg");
    let out = bin().args(["render", "--radius", "2", "--out"]).arg(&svg).arg(&input).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&svg).unwrap();
    let doc = roxmltree::Document::parse(&text).unwrap();
    assert!(doc.descendants().filter(|n| n.has_tag_name("circle")).count() >= 3 * 25);

    let out = bin().args(["render", "--radius", "0", "--out"]).arg(&svg).arg(&input).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(roxmltree::Document::parse(&text).unwrap().descendants().filter(|n| n.has_tag_name("circle")).count(), 3);
}

#[test]
fn render_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "g", NOT_LAMAN);
    let draw = |name: &str| {
        let svg = dir.path().join(name);
        let out = bin().args(["render", "--seed", "9", "--out"]).arg(&svg).arg(&input).output().unwrap();
        assert_eq!(out.status.code(), Some(0));
        std::fs::read_to_string(svg).unwrap()
    };
    assert_eq!(draw("a.svg"), draw("b.svg"));
}

#[test]
fn render_collapsed_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("c.svg");
    let out = bin().args(["render", "--out"]).arg(&svg).arg(write(dir.path(), "g", GAMMA22)).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(!svg.exists());
}

#[test]
fn gen_is_deterministic_and_validated() {
    let once = bin().args(["gen", "4", "3", "7", "2", "--seed", "11"]).output().unwrap();
    let twice = bin().args(["gen", "4", "3", "7", "2", "--seed", "11"]).output().unwrap();
    assert_eq!(once.status.code(), Some(0));
    assert_eq!(once.stdout, twice.stdout);
    let g = parse_graph(&stdout(&once)).unwrap();
    assert_eq!((g.k(), g.n, g.m()), (4, 3, 7));

    let from_env = bin().args(["gen", "4", "3", "7", "2"]).env("CR_SEED", "11").output().unwrap();
    assert_eq!(from_env.stdout, once.stdout);

    assert_eq!(bin().args(["gen", "5", "1", "1", "1"]).output().unwrap().status.code(), Some(2));
    assert_eq!(bin().args(["gen", "2", "0", "1", "1"]).output().unwrap().status.code(), Some(2));
}

#[test]
fn json_payloads_parse() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["--json", "check"], &write(dir.path(), "g", NOT_LAMAN));
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["decision"], false);
    assert_eq!(value["certificate"]["circuit"].as_array().unwrap().len(), 2);

    let out = run(&["--json", "realize"], &write(dir.path(), "l", LAMAN));
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["faithful"], true);
    assert_eq!(value["realization"]["points"].as_array().unwrap().len(), 1);
}

#[test]
fn selftest_small_passes() {
    let out = bin().args(["selftest", "small"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).lines().all(|l| l.starts_with("PASS")));
}
