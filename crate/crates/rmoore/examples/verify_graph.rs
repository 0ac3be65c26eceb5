//! Verify a graph file against the radial-Moore definition.
//!
//! With no arguments, solves (1,1) exactly, writes the optimum to a
//! temporary file, and verifies that; pass a path and `(r, z)` to check
//! your own graph.
//!
//!     cargo run --example verify_graph -- [file.mrg r z]

use rmoore::{solve_exact, verify, MixedGraph, SolveOptions};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (graph, r, z) = if let Some(path) = args.first() {
        let r: usize = args.get(1).expect("r").parse().expect("r");
        let z: usize = args.get(2).expect("z").parse().expect("z");
        let (g, _, _) = MixedGraph::read_file(path.as_ref()).expect("readable graph file");
        (g, r, z)
    } else {
        let report = solve_exact(1, 1, &SolveOptions::default()).expect("(1,1) is feasible");
        let g = report.best_graph.unwrap();
        let path = std::env::temp_dir().join("rm_1_1_2_best.mrg");
        g.write_file(&path, 1, 1).expect("write graph");
        eprintln!("wrote and re-reading {}", path.display());
        let (g, r, z) = MixedGraph::read_file(&path).expect("read back");
        (g, r, z)
    };

    let report = verify(&graph, r, z);
    println!("{}", serde_json::to_string_pretty(&report).unwrap());
}
