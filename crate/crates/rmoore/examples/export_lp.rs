//! Build the full IP model for `(r, z)` and export it as an .lp file any
//! MILP solver can read.
//!
//!     cargo run --example export_lp -- [r] [z] [out.lp]

use rmoore::lp::write_lp;
use rmoore::model::{build_model, model_stats};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let r: usize = args.first().map_or(1, |s| s.parse().expect("r"));
    let z: usize = args.get(1).map_or(1, |s| s.parse().expect("z"));
    let default_out = format!("rm_{r}_{z}_2.lp");
    let out = args.get(2).map_or(default_out.as_str(), String::as_str);

    let model = build_model(r, z).expect("valid parameters within the dimension cap");
    let stats = model_stats(&model);
    eprintln!("n = {}", model.n);
    eprintln!("binary variables: {}", stats.var_count);
    for (family, count) in &stats.rows_by_family {
        eprintln!("constraint family {family}: {count} rows");
    }
    let doc = write_lp(&model);
    std::fs::write(out, doc.to_text()).expect("write LP file");
    eprintln!("wrote {out}");
}
