//! Round-trip a solver solution file: solve (1,1) exactly, render the
//! indicator assignment as a solution file, parse it back against the model,
//! and verify the reconstructed graph.
//!
//!     cargo run --example import_solution

use rmoore::lp::{parse_solution, solution_text};
use rmoore::model::{assignment_from_graph, assignment_to_graph, build_model};
use rmoore::{solve_exact, verify, SolveOptions};

fn main() {
    let report = solve_exact(1, 1, &SolveOptions::default()).expect("(1,1) is feasible");
    let best = report.best_graph.unwrap();

    let model = build_model(1, 1).expect("model builds");
    let assignment = assignment_from_graph(&best);
    assert_eq!(
        model.objective_value(&assignment).unwrap(),
        report.best_status.unwrap() as i64,
        "model objective must reproduce the graph status"
    );

    let path = std::env::temp_dir().join("rm_1_1_2.sol");
    std::fs::write(&path, solution_text(&assignment)).expect("write solution file");
    eprintln!("wrote {}", path.display());

    let text = std::fs::read_to_string(&path).expect("read solution file");
    let parsed = parse_solution(&text, &model).expect("valid solution");
    let reconstructed = assignment_to_graph(&model, &parsed).expect("well-formed graph");
    assert_eq!(reconstructed, best, "round-trip must reproduce the graph");

    let verification = verify(&reconstructed, 1, 1);
    println!("{}", serde_json::to_string_pretty(&verification).unwrap());
}
