//! Run the swap heuristic with the default configuration.
//!
//!     cargo run --example heuristic_search -- [r] [z] [seed] [threads]

use rmoore::{solve_heuristic, verify, HeuristicConfig};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let r: usize = args.first().map_or(2, |s| s.parse().expect("r"));
    let z: usize = args.get(1).map_or(2, |s| s.parse().expect("z"));
    let seed: u64 = args.get(2).map_or(0, |s| s.parse().expect("seed"));
    let threads: usize = args.get(3).map_or(1, |s| s.parse().expect("threads"));

    let mut config = HeuristicConfig::for_params(r, z).expect("valid parameters");
    config.seed = seed;
    config.threads = threads;

    match solve_heuristic(r, z, &config) {
        Ok(report) => {
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
            match &report.best_graph {
                Some(g) => {
                    let v = verify(g, r, z);
                    println!(
                        "classification: {:?}, status {:?}, norm1 {:?}, radius {:?}, diameter {:?}",
                        v.classification, v.status, v.norm1, v.radius, v.diameter
                    );
                }
                None => println!("no feasible graph found"),
            }
        }
        Err(e) => {
            eprintln!("search failed: {e}");
            std::process::exit(3);
        }
    }
}
