//! Command-line front end for the `fullhom` library.
//!
//! Exit status is a trichotomy so shell pipelines can tell outcomes apart:
//! 0 when the command succeeds or the checked property holds, 1 when a
//! partition is absent or a verification finds violations, 2 when the
//! invocation or an input file is unusable. Standard output carries only
//! the machine-readable payload; diagnostics and timings go to standard
//! error.
//!
//! Vertices are numbered from 0, matching row order in the digraph format.
//! Parts of a partition are numbered from 1, matching the usual naming
//! V_1, ..., V_m of the matrix rows.

use std::fs;
use std::num::NonZeroUsize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use fullhom::{
    enumerate_minimal_obstructions, enumerate_triples, extremal_census, find_full_homomorphism,
    removable_vertex, solve_mpartition, twin_type, verify_bound, verify_removable_vertices,
    verify_triple_intersections, Digraph, PatternMatrix, TwinClassification, VerificationReport,
};

#[derive(Parser)]
#[command(
    name = "fullhom",
    version,
    about = "Matrix partitions, full homomorphisms, and minimal obstruction catalogs for loopless digraphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find a matrix partition; prints 1-based parts per vertex, or NONE.
    Partition(PairInput),
    /// Find a full homomorphism onto the matrix template; prints 1-based
    /// image vertices, or NONE.
    Hom(PairInput),
    /// Classify every vertex pair: false-twins, true-twins, mixed-twins, or
    /// not-twins with the least distinguishing vertex.
    Twins(DigraphInput),
    /// Print the least vertex whose deletion keeps the digraph
    /// point-determining, or NONE.
    Removable(DigraphInput),
    /// Print the triples of a point-determining digraph, one "red green
    /// green" line each.
    Triples(DigraphInput),
    /// Catalog the minimal obstructions of a matrix up to a ceiling order,
    /// as a JSON document.
    Obstructions(ObstructionArgs),
    /// Exhaustively verify structural properties at small orders.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Count the minimal obstructions of the extremal order (k+1)(l+1).
    Census(CensusArgs),
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Check that every point-determining digraph up to an order has a
    /// removable vertex and that red-free deletions stay point-determining.
    Sumner(SweepArgs),
    /// Check the triple intersection rule on every point-determining
    /// digraph up to an order.
    Triples(SweepArgs),
    /// Search for minimal obstructions above the (k+1)(l+1) bound.
    Bound(BoundArgs),
}

#[derive(Args)]
struct PairInput {
    /// Digraph file: an order line, then one 0/1 row per vertex.
    #[arg(long, value_name = "FILE")]
    digraph: PathBuf,
    /// Matrix file: a size line, then one 0/1 row per part.
    #[arg(long, value_name = "FILE")]
    matrix: PathBuf,
}

#[derive(Args)]
struct DigraphInput {
    /// Digraph file: an order line, then one 0/1 row per vertex.
    #[arg(long, value_name = "FILE")]
    digraph: PathBuf,
}

#[derive(Args)]
struct ObstructionArgs {
    /// Matrix file: a size line, then one 0/1 row per part.
    #[arg(long, value_name = "FILE")]
    matrix: PathBuf,
    /// Largest digraph order to search.
    #[arg(long, value_name = "N")]
    ceiling: usize,
    /// Worker threads (default: one per processor).
    #[arg(long, value_name = "J")]
    jobs: Option<NonZeroUsize>,
    /// Also write the JSON document to this file.
    #[arg(long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Largest digraph order to sweep.
    #[arg(long, value_name = "N")]
    max_n: usize,
    /// Worker threads (default: one per processor).
    #[arg(long, value_name = "J")]
    jobs: Option<NonZeroUsize>,
}

#[derive(Args)]
struct BoundArgs {
    /// Matrix file: a size line, then one 0/1 row per part.
    #[arg(long, value_name = "FILE")]
    matrix: PathBuf,
    /// Largest digraph order to search (default: one above the bound).
    #[arg(long, value_name = "N")]
    ceiling: Option<usize>,
    /// Worker threads (default: one per processor).
    #[arg(long, value_name = "J")]
    jobs: Option<NonZeroUsize>,
}

#[derive(Args)]
struct CensusArgs {
    /// Matrix file: a size line, then one 0/1 row per part.
    #[arg(long, value_name = "FILE")]
    matrix: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("fullhom: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::Partition(input) => {
            let (d, m) = read_pair(&input)?;
            Ok(print_assignment(
                solve_mpartition(&d, &m).map(|p| p.into_vec()),
            ))
        }
        Command::Hom(input) => {
            let (d, m) = read_pair(&input)?;
            Ok(print_assignment(find_full_homomorphism(&d, &m)))
        }
        Command::Twins(input) => {
            let d = read_digraph(&input.digraph)?;
            for u in 0..d.order() {
                for v in u + 1..d.order() {
                    let verdict = twin_type(&d, u, v).expect("pair is distinct and in range");
                    match verdict {
                        TwinClassification::NotTwins { witness } => {
                            println!("{u} {v} not-twins {witness}");
                        }
                        TwinClassification::FalseTwins => println!("{u} {v} false-twins"),
                        TwinClassification::TrueTwins => println!("{u} {v} true-twins"),
                        TwinClassification::MixedTwins => println!("{u} {v} mixed-twins"),
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Removable(input) => {
            let d = read_digraph(&input.digraph)?;
            match removable_vertex(&d) {
                Ok(v) => {
                    println!("{v}");
                    Ok(ExitCode::SUCCESS)
                }
                Err(reason) => {
                    eprintln!("fullhom: {reason}");
                    println!("NONE");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Triples(input) => {
            let d = read_digraph(&input.digraph)?;
            match enumerate_triples(&d) {
                Ok(triples) => {
                    for t in triples {
                        println!("{} {} {}", t.red, t.green.0, t.green.1);
                    }
                    Ok(ExitCode::SUCCESS)
                }
                Err(reason) => {
                    eprintln!("fullhom: {reason}");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Obstructions(args) => {
            let m = read_matrix(&args.matrix)?;
            let start = Instant::now();
            let catalog = with_jobs(args.jobs, || {
                enumerate_minimal_obstructions(&m, args.ceiling)
            })?;
            eprintln!(
                "fullhom: examined {} digraphs, found {} obstructions in {:?}",
                catalog.examined(),
                catalog.total(),
                start.elapsed()
            );
            let json = catalog.to_document().to_json();
            print!("{json}");
            if let Some(path) = &args.output {
                fs::write(path, &json)
                    .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify(VerifyCommand::Sumner(args)) => {
            let report = with_jobs(args.jobs, || verify_removable_vertices(args.max_n))?;
            Ok(print_report(&report))
        }
        Command::Verify(VerifyCommand::Triples(args)) => {
            let report = with_jobs(args.jobs, || verify_triple_intersections(args.max_n))?;
            Ok(print_report(&report))
        }
        Command::Verify(VerifyCommand::Bound(args)) => {
            let m = read_matrix(&args.matrix)?;
            let ceiling = args.ceiling.unwrap_or(m.bound() + 1);
            let report =
                with_jobs(args.jobs, || verify_bound(&m, ceiling))?.map_err(|e| e.to_string())?;
            Ok(print_report(&report))
        }
        Command::Census(args) => {
            let m = read_matrix(&args.matrix)?;
            println!("{}", extremal_census(&m));
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// Runs `work` on a dedicated pool when a thread count is given; otherwise
/// the library uses one worker per processor.
fn with_jobs<T: Send>(
    jobs: Option<NonZeroUsize>,
    work: impl FnOnce() -> T + Send,
) -> Result<T, String> {
    match jobs {
        None => Ok(work()),
        Some(j) => Ok(rayon::ThreadPoolBuilder::new()
            .num_threads(j.get())
            .build()
            .map_err(|e| format!("cannot build worker pool: {e}"))?
            .install(work)),
    }
}

fn print_assignment(assignment: Option<Vec<usize>>) -> ExitCode {
    match assignment {
        Some(parts) => {
            let line: Vec<String> = parts.iter().map(|p| (p + 1).to_string()).collect();
            println!("{}", line.join(" "));
            ExitCode::SUCCESS
        }
        None => {
            println!("NONE");
            ExitCode::from(1)
        }
    }
}

fn print_report(report: &VerificationReport) -> ExitCode {
    print!("{report}");
    eprintln!(
        "fullhom: checked {} instances in {:?}",
        report.instances, report.wall_time
    );
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn read_pair(input: &PairInput) -> Result<(Digraph, PatternMatrix), String> {
    Ok((read_digraph(&input.digraph)?, read_matrix(&input.matrix)?))
}

fn read_digraph(path: &Path) -> Result<Digraph, String> {
    read_text(path)?
        .parse()
        .map_err(|e| format!("{}: {e}", path.display()))
}

fn read_matrix(path: &Path) -> Result<PatternMatrix, String> {
    read_text(path)?
        .parse()
        .map_err(|e| format!("{}: {e}", path.display()))
}

fn read_text(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}
