//! End-to-end tests of the `rmoore` binary: output formats, exit codes, and
//! catalog side effects.

use std::path::Path;
use std::process::{Command, Output};

use rmoore::catalog::Catalog;
use rmoore::lp::solution_text;
use rmoore::model::assignment_from_graph;
use rmoore::moore::moore_tree;
use rmoore::MixedGraph;

fn rmoore(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rmoore"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn bound_prints_known_orders() {
    let dir = tempfile::tempdir().unwrap();
    for (r, z, m) in [(1, 1, 6), (5, 1, 38), (0, 1, 3), (3, 3, 40)] {
        let out = rmoore(dir.path(), &["bound", &r.to_string(), &z.to_string(), "2"]);
        assert!(out.status.success());
        assert!(
            stdout(&out).contains(&format!("M({r},{z},2) = {m}")),
            "unexpected output: {}",
            stdout(&out)
        );
    }
}

#[test]
fn bound_rejects_bad_parameters_with_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = rmoore(dir.path(), &["bound", "0", "0", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = rmoore(dir.path(), &["bound", "1", "1", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_arguments_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = rmoore(dir.path(), &["bound", "one", "1", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = rmoore(dir.path(), &["no-such-subcommand"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn model_writes_lp_file_with_all_variables() {
    let dir = tempfile::tempdir().unwrap();
    let out = rmoore(dir.path(), &["model", "1", "1", "--out", "m.lp"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("variables: 1620"));
    let text = std::fs::read_to_string(dir.path().join("m.lp")).unwrap();
    assert!(text.starts_with("Minimize\n"));
    assert!(text.trim_end().ends_with("End"));
    // All model variables plus const_one appear in the Binary section.
    let binary = text.split("Binary\n").nth(1).unwrap();
    let names = binary.split("End").next().unwrap().split_whitespace().count();
    assert_eq!(names, 1621);

    let out = rmoore(dir.path(), &["model", "0", "0", "--out", "m2.lp"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn solve_exact_catalogs_a_verified_graph() {
    let dir = tempfile::tempdir().unwrap();
    let out = rmoore(dir.path(), &["solve", "1", "1", "--method", "exact", "--out", "best.mrg"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(report["best_status"], 50);
    assert_eq!(report["proved_optimal"], true);
    assert_eq!(report["method"], "exact");

    // The --out copy is canonical.
    let (g, r, z) = MixedGraph::read_file(&dir.path().join("best.mrg")).unwrap();
    assert_eq!((r, z), (1, 1));
    assert_eq!((g.edge_count(), g.arc_count()), (3, 6));

    // The catalog entry re-verifies.
    let catalog = Catalog::open(dir.path().join("catalog")).unwrap();
    let entries = catalog.entries().unwrap();
    assert_eq!(entries.len(), 1);
    assert_eq!(entries[0].status, 50);
    assert!(catalog.reverify(&entries[0]).unwrap());
}

#[test]
fn solve_infeasible_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let out = rmoore(dir.path(), &["solve", "1", "0", "--method", "exact"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_reports_classification_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();

    // A bare Moore tree is neither Moore nor radial Moore: exit 4.
    let tree = moore_tree(1, 1).unwrap();
    tree.graph.write_file(&dir.path().join("tree.mrg"), 1, 1).unwrap();
    let out = rmoore(dir.path(), &["verify", "tree.mrg", "1", "1"]);
    assert_eq!(out.status.code(), Some(4));
    let report: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(report["classification"], "NEITHER");

    // A solved optimum verifies cleanly: exit 0.
    rmoore(dir.path(), &["solve", "1", "1", "--out", "best.mrg"]);
    let out = rmoore(dir.path(), &["verify", "best.mrg", "1", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(report["classification"], "RADIAL_MOORE");
    assert_eq!(report["status"], 50);
    assert_eq!(report["norm1"], 2);

    // Malformed files are a parse failure: exit 5.
    std::fs::write(dir.path().join("bad.mrg"), "p mrg nope\n").unwrap();
    let out = rmoore(dir.path(), &["verify", "bad.mrg", "1", "1"]);
    assert_eq!(out.status.code(), Some(5));
    let out = rmoore(dir.path(), &["verify", "missing.mrg", "1", "1"]);
    assert_eq!(out.status.code(), Some(5));
}

#[test]
fn import_solution_paths() {
    let dir = tempfile::tempdir().unwrap();

    // Happy path: a full assignment of the solved (1,1) optimum.
    let solve = rmoore(dir.path(), &["solve", "1", "1", "--out", "best.mrg"]);
    assert!(solve.status.success());
    let (best, _, _) = MixedGraph::read_file(&dir.path().join("best.mrg")).unwrap();
    std::fs::write(dir.path().join("best.sol"), solution_text(&assignment_from_graph(&best)))
        .unwrap();
    let out = rmoore(dir.path(), &["import-solution", "best.sol", "1", "1"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(report["status"], 50);
    let catalog = Catalog::open(dir.path().join("catalog")).unwrap();
    let entries = catalog.entries().unwrap();
    assert_eq!(entries.last().unwrap().method, "external");

    // The Moore-tree-only assignment reconstructs an unverifiable graph.
    let tree = moore_tree(1, 1).unwrap();
    std::fs::write(dir.path().join("tree.sol"), solution_text(&assignment_from_graph(&tree.graph)))
        .unwrap();
    let out = rmoore(dir.path(), &["import-solution", "tree.sol", "1", "1"]);
    assert_eq!(out.status.code(), Some(4));

    // Non-binary values are a parse failure.
    std::fs::write(dir.path().join("frac.sol"), "x_0_1 0.5\n").unwrap();
    let out = rmoore(dir.path(), &["import-solution", "frac.sol", "1", "1"]);
    assert_eq!(out.status.code(), Some(5));
}

#[test]
fn table_reports_row_results() {
    let dir = tempfile::tempdir().unwrap();
    let out = rmoore(dir.path(), &["table", "--max-n", "6", "--time-limit", "60"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("(1,1)"), "table output: {text}");
    assert!(text.contains("match"), "table output: {text}");
    assert!(!text.contains("(2,1)"), "max-n filter must drop larger rows");
}
