//! Print Moore bounds, layer counts, and Moore status constants for the
//! small parameter pairs, alongside the best-known results.
//!
//!     cargo run --example moore_bounds

use rmoore::moore::moore_profile;
use rmoore::reference::BEST_KNOWN;

fn main() {
    println!(
        "{:<7} {:>4} {:>12} {:>10} {:>12} {:>11}",
        "(r,z)", "M", "layers", "s/vertex", "Moore total", "best known"
    );
    for row in &BEST_KNOWN {
        let p = moore_profile(row.r, row.z, 2).unwrap();
        let layers: Vec<String> = p.layer_counts.iter().map(u64::to_string).collect();
        println!(
            "({},{})  {:>4} {:>12} {:>10} {:>12} {:>11}",
            row.r,
            row.z,
            p.m,
            layers.join("+"),
            p.s_per_vertex,
            p.s_total,
            row.min_status,
        );
    }
}
