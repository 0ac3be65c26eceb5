//! Run the exact branch-and-bound on a small parameter pair.
//!
//!     cargo run --example exact_search -- [r] [z] [time_limit_s] [threads] [target] [nosym]

use std::time::Duration;

use rmoore::{solve_exact, verify, SolveOptions};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let r: usize = args.first().map_or(1, |s| s.parse().expect("r"));
    let z: usize = args.get(1).map_or(1, |s| s.parse().expect("z"));
    let secs: u64 = args.get(2).map_or(60, |s| s.parse().expect("time limit"));
    let threads: usize = args.get(3).map_or(1, |s| s.parse().expect("threads"));
    let target: Option<u64> = args.get(4).map(|s| s.parse().expect("target"));

    let opts = SolveOptions {
        time_limit: Duration::from_secs(secs),
        threads,
        target_status: target,
        symmetry_breaking: args.get(5).map_or(true, |s| s != "nosym"),
        ..Default::default()
    };
    match solve_exact(r, z, &opts) {
        Ok(report) => {
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
            if let Some(g) = &report.best_graph {
                let v = verify(g, r, z);
                println!(
                    "classification: {:?}, status {:?}, norm1 {:?}, central {}",
                    v.classification, v.status, v.norm1, v.central_count
                );
                print!("{}", g.to_text(r, z));
            }
        }
        Err(e) => {
            eprintln!("search failed: {e}");
            std::process::exit(3);
        }
    }
}
