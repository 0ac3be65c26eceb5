//! Command-line front end: Moore bounds, LP export, built-in searches,
//! verification, catalog maintenance, and reference-table comparison.

use std::path::PathBuf;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};

use rmoore::catalog::Catalog;
use rmoore::error::Error;
use rmoore::lp::{parse_solution, write_lp};
use rmoore::model::{assignment_to_graph, build_model};
use rmoore::moore::moore_profile;
use rmoore::reference;
use rmoore::verify::Classification;
use rmoore::{
    moore_bound, solve_exact, solve_heuristic, verify, HeuristicConfig, MixedGraph, SearchReport,
    SolveOptions,
};

#[derive(Parser)]
#[command(name = "rmoore", version, about = "Search for mixed radial Moore graphs of radius 2 with minimum status")]
struct Cli {
    /// Catalog directory for solved graphs.
    #[arg(long, global = true, default_value = "catalog")]
    catalog: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Exact,
    Heuristic,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Moore bound and its layer counts.
    Bound { r: usize, z: usize, k: usize },
    /// Build the binary IP model and write it as an .lp file.
    Model {
        r: usize,
        z: usize,
        /// Output path for the LP file.
        #[arg(long)]
        out: PathBuf,
    },
    /// Search for a minimum-status radial Moore graph and catalog the result.
    Solve {
        r: usize,
        z: usize,
        /// Defaults to exact for orders up to 12, heuristic above.
        #[arg(long, value_enum)]
        method: Option<Method>,
        /// Time limit in seconds.
        #[arg(long, default_value_t = 300)]
        time_limit: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Also write the graph to this path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify a stored graph file against the radial-Moore definition.
    Verify { path: PathBuf, r: usize, z: usize },
    /// Re-run the built-in reference rows and report matches and mismatches.
    Table {
        /// Only rows with order at most this value.
        #[arg(long)]
        max_n: Option<u64>,
        /// Time limit per row in seconds.
        #[arg(long, default_value_t = 300)]
        time_limit: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Import a solver solution file, verify it, and catalog the graph.
    ImportSolution { path: PathBuf, r: usize, z: usize },
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidParams(_) | Error::ModelTooLarge { .. } | Error::DegreeParity { .. } => 2,
        Error::Infeasible => 3,
        _ => 5,
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(exit_code(&e));
        }
    }
}

fn run(cli: Cli) -> Result<i32, Error> {
    match cli.command {
        Command::Bound { r, z, k } => {
            let profile = moore_profile(r, z, k)?;
            println!("M({r},{z},{k}) = {}", profile.m);
            let layers: Vec<String> = profile.layer_counts.iter().map(u64::to_string).collect();
            println!("layers: {}", layers.join(" "));
            println!("per-vertex status: {}", profile.s_per_vertex);
            println!("total status: {}", profile.s_total);
            Ok(0)
        }
        Command::Model { r, z, out } => {
            let model = build_model(r, z)?;
            let doc = write_lp(&model);
            std::fs::write(&out, doc.to_text())?;
            let stats = model.stats();
            println!("n = {}", model.n);
            println!("variables: {} (+1 objective constant)", stats.var_count);
            for (family, count) in &stats.rows_by_family {
                println!("rows ({family}): {count}");
            }
            println!("fixings: {} zero, {} tree", stats.loop_fixings, stats.tree_fixings);
            println!("wrote {}", out.display());
            Ok(0)
        }
        Command::Solve { r, z, method, time_limit, seed, threads, out } => {
            let n = moore_bound(r, z, 2)?;
            let method = method.unwrap_or(if n <= 12 { Method::Exact } else { Method::Heuristic });
            let report = match method {
                Method::Exact => {
                    let opts = SolveOptions {
                        time_limit: Duration::from_secs(time_limit),
                        threads,
                        seed,
                        ..Default::default()
                    };
                    solve_exact(r, z, &opts)?
                }
                Method::Heuristic => {
                    let mut config = HeuristicConfig::for_params(r, z)?;
                    config.seed = seed;
                    config.threads = threads;
                    config.time_limit = Duration::from_secs(time_limit);
                    solve_heuristic(r, z, &config)?
                }
            };
            println!("{}", serde_json::to_string(&report).map_err(|e| Error::Parse(e.to_string()))?);
            finish_solve(&cli.catalog, r, z, &report, out.as_deref())
        }
        Command::Verify { path, r, z } => {
            let (g, _, _) = MixedGraph::read_file(&path)?;
            let report = verify(&g, r, z);
            println!("{}", serde_json::to_string(&report).map_err(|e| Error::Parse(e.to_string()))?);
            Ok(if report.classification == Classification::Neither { 4 } else { 0 })
        }
        Command::Table { max_n, time_limit, seed, threads } => {
            run_table(&cli.catalog, max_n, time_limit, seed, threads)
        }
        Command::ImportSolution { path, r, z } => {
            let text = std::fs::read_to_string(&path)?;
            let model = build_model(r, z)?;
            let assignment = parse_solution(&text, &model)?;
            let g = assignment_to_graph(&model, &assignment)?;
            let report = verify(&g, r, z);
            println!("{}", serde_json::to_string(&report).map_err(|e| Error::Parse(e.to_string()))?);
            if report.classification == Classification::Neither {
                eprintln!("not cataloged: graph is neither Moore nor radial Moore");
                return Ok(4);
            }
            let catalog = Catalog::open(&cli.catalog)?;
            let entry = catalog.add(&g, r, z, "external", false)?;
            eprintln!("cataloged as {}", entry.graph_file);
            Ok(0)
        }
    }
}

/// Writes the solved graph (catalog plus optional `--out`) and reports
/// verification failures through the exit code.
fn finish_solve(
    catalog_dir: &std::path::Path,
    r: usize,
    z: usize,
    report: &SearchReport,
    out: Option<&std::path::Path>,
) -> Result<i32, Error> {
    let Some(g) = &report.best_graph else {
        eprintln!("no feasible graph found within the budget");
        return Ok(4);
    };
    let verification = verify(g, r, z);
    if verification.classification == Classification::Neither {
        eprintln!("solver produced an unverifiable graph; run flagged as failed");
        return Ok(4);
    }
    if let Some(path) = out {
        g.write_file(path, r, z)?;
        eprintln!("graph written to {}", path.display());
    }
    let catalog = Catalog::open(catalog_dir)?;
    let entry = catalog.add(g, r, z, &report.method, report.proved_optimal)?;
    eprintln!("cataloged as {}", entry.graph_file);
    Ok(0)
}

fn run_table(
    catalog_dir: &std::path::Path,
    max_n: Option<u64>,
    time_limit: u64,
    seed: u64,
    threads: usize,
) -> Result<i32, Error> {
    println!(
        "{:<7} {:>3} {:>6} {:>5} {:>7} {:>9} {:>8}  {}",
        "(r,z)", "n", "edges", "arcs", "found", "reference", "optimal", "result"
    );
    for row in &reference::BEST_KNOWN {
        if max_n.is_some_and(|cap| row.order > cap) {
            continue;
        }
        debug_assert_eq!(moore_bound(row.r, row.z, 2)?, row.order);

        let outcome = if row.order <= 12 {
            let opts = SolveOptions {
                time_limit: Duration::from_secs(time_limit),
                threads,
                seed,
                target_status: Some(row.min_status),
                ..Default::default()
            };
            solve_exact(row.r, row.z, &opts)
        } else {
            let mut config = HeuristicConfig::for_params(row.r, row.z)?;
            config.seed = seed;
            config.threads = threads;
            config.time_limit = Duration::from_secs(time_limit);
            solve_heuristic(row.r, row.z, &config)
        };
        let report = match outcome {
            Ok(rep) => Some(rep),
            Err(Error::Infeasible) => None,
            Err(e) => return Err(e),
        };

        let (found, verdict) = match &report {
            Some(rep) => match rep.best_status {
                Some(status) if status == row.min_status => (status.to_string(), "match"),
                Some(status) if status < row.min_status => {
                    (status.to_string(), "improves the reference")
                }
                Some(status) if !row.optimal => {
                    (status.to_string(), "above reference (reference not optimal)")
                }
                Some(status) => (status.to_string(), "MISMATCH"),
                None => ("-".to_string(), "no graph within budget"),
            },
            None => ("-".to_string(), "infeasible"),
        };

        print!(
            "({},{})  {:>3} {:>6} {:>5} {:>7} {:>9} {:>8}  {}",
            row.r,
            row.z,
            row.order,
            row.edges,
            row.arcs,
            found,
            row.min_status,
            if row.optimal { "Y" } else { "N" },
            verdict
        );
        if let Some(note) = reference::annotation(row) {
            print!("  [{note}]");
        }
        println!();

        if let Some(rep) = &report {
            if let Some(g) = &rep.best_graph {
                let catalog = Catalog::open(catalog_dir)?;
                catalog.add(g, row.r, row.z, &rep.method, rep.proved_optimal)?;
            }
        }
    }
    Ok(0)
}
