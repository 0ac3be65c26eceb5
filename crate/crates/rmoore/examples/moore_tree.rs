//! Build the canonical Moore tree for `(r, z)` and print it in the graph
//! text format, together with its vertex orbits.
//!
//!     cargo run --example moore_tree -- [r] [z]

use rmoore::exact::symmetry_orbits;
use rmoore::moore_tree;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let r: usize = args.first().map_or(2, |s| s.parse().expect("r"));
    let z: usize = args.get(1).map_or(1, |s| s.parse().expect("z"));

    let tree = moore_tree(r, z).expect("valid parameters");
    print!("{}", tree.graph.to_text(r, z));
    eprintln!(
        "{} vertices, {} edges, {} arcs",
        tree.n(),
        tree.graph.edge_count(),
        tree.graph.arc_count()
    );
    eprintln!("interchangeable vertex groups: {:?}", symmetry_orbits(&tree));
}
