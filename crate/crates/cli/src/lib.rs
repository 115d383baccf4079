//! Command-line front end for `treeaug-core`.
//!
//! Exit codes: 0 success, 1 invalid or infeasible input, 2 a solver's
//! precondition is unmet, 3 a result failed its acyclicity certificate.

pub mod bench;
pub mod solve;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::json;
use treeaug_core::format::{check_solution, DecompositionDoc, InstanceDoc, SolutionDoc};
use treeaug_core::gen::{
    grid_instance, random_instance, random_planar_bfs, reduce_set_cover, search_tightness_family, two_arm_instance,
    with_random_weights, SetCoverInstance,
};
use treeaug_core::{Error, Instance};

use crate::solve::{solve_certified, Algo, SolveParams};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_UNCERTIFIED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "treeaug", version, about = "Acyclic tree augmentation solvers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check an instance file.
    Validate { instance: PathBuf },
    /// Solve an instance and print a JSON report.
    Solve(SolveArgs),
    /// Recompute a solution's feasibility, value and covered set.
    Verify { instance: PathBuf, solution: PathBuf },
    /// Write a generated instance.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Run a solver-by-generator matrix and write a markdown table.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    pub instance: PathBuf,
    #[arg(long, value_enum)]
    pub algo: Algo,
    /// Slice parameter for `ptas`.
    #[arg(long, default_value_t = treeaug_core::ptas::DEFAULT_D)]
    pub d: usize,
    /// Largest decomposition width the DP accepts.
    #[arg(long, default_value_t = treeaug_core::twdp::DEFAULT_WIDTH_CAP)]
    pub width_cap: usize,
    /// Tree decomposition file for `twdp`.
    #[arg(long)]
    pub td: Option<PathBuf>,
    /// Make `ptas` fail on instances without an embedding.
    #[arg(long)]
    pub embedding_required: bool,
    /// Edge limit for `exact`.
    #[arg(long, default_value_t = treeaug_core::oracle::DEFAULT_EDGE_LIMIT)]
    pub edge_limit: usize,
    /// Where to write the solution file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OutArg {
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum GenCommand {
    /// Gadget of the set-cover reduction; the threshold goes to `meta`.
    Setcover {
        #[arg(long)]
        elements: usize,
        /// Sets as 1-based element lists, e.g. "1,2;2,3".
        #[arg(long)]
        sets: String,
        #[arg(long)]
        budget: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Random arborescence plus random edges.
    Random {
        #[arg(long)]
        nodes: usize,
        #[arg(long, default_value_t = 0.3)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        weighted: bool,
        #[command(flatten)]
        out: OutArg,
    },
    /// Grid with a BFS tree and an embedding. With `--keep` or `--diag`,
    /// non-tree grid edges survive with probability `keep` and diagonals
    /// are added with probability `diag`.
    Grid {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[arg(long)]
        keep: Option<f64>,
        #[arg(long)]
        diag: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        weighted: bool,
        #[command(flatten)]
        out: OutArg,
    },
    /// Two root paths with random cross and back edges.
    Twoarm {
        #[arg(long)]
        left: usize,
        #[arg(long)]
        right: usize,
        #[arg(long, default_value_t = 6)]
        cross: usize,
        #[arg(long, default_value_t = 0.1)]
        p_back: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        weighted: bool,
        #[command(flatten)]
        out: OutArg,
    },
    /// Worst instance found for the ½-approximation.
    Tight {
        #[arg(long, default_value_t = 8)]
        max_nodes: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// One of half, weighted, twoarm, twdp, ptas, all.
    #[arg(long)]
    pub suite: String,
    #[arg(long, default_value_t = 10)]
    pub seeds: u64,
    #[arg(long)]
    pub out: PathBuf,
}

/// Failure of a command with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_INVALID,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure {
            code: exit_code(&e),
            message: e.to_string(),
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidInstance(_)
        | Error::Infeasible
        | Error::OrientationLength { .. }
        | Error::InvalidDecomposition(_)
        | Error::InvalidSetCover(_)
        | Error::Format(_) => EXIT_INVALID,
        Error::TooLarge { .. }
        | Error::TooManyStates { .. }
        | Error::WidthOverCap { .. }
        | Error::NotTwoArm(_)
        | Error::NotBfsTree(_)
        | Error::Embedding(_)
        | Error::SliceParameter(_)
        | Error::WeightOverflow => EXIT_PRECONDITION,
        Error::Uncertified(_) => EXIT_UNCERTIFIED,
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::invalid(format!("cannot read {}: {e}", path.display())))
}

fn write_to(path: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::invalid(format!("cannot write {}: {e}", p.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| Failure::invalid(format!("cannot write output: {e}"))),
    }
}

pub fn load_instance(path: &Path) -> Result<Instance, Failure> {
    let doc = InstanceDoc::from_json(&read(path)?)?;
    Ok(doc.to_instance()?)
}

/// Runs a parsed command and returns its exit code. Reports go to `stdout`,
/// diagnostics to `stderr`.
pub fn run(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    match dispatch(cli.command, stdout) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cmd: Command, stdout: &mut dyn Write) -> Result<(), Failure> {
    match cmd {
        Command::Validate { instance } => {
            let doc = InstanceDoc::from_json(&read(&instance)?)?;
            let violations = doc.validate();
            if violations.is_empty() {
                writeln!(stdout, "ok").ok();
                Ok(())
            } else {
                let lines: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
                Err(Failure::invalid(lines.join("\n")))
            }
        }
        Command::Solve(args) => cmd_solve(args, stdout),
        Command::Verify { instance, solution } => {
            let inst = load_instance(&instance)?;
            let doc = SolutionDoc::from_json(&read(&solution)?)?;
            let report = check_solution(&inst, &doc).map_err(|e| Failure::invalid(e.to_string()))?;
            writeln!(stdout, "ok: value {}", report.value).ok();
            Ok(())
        }
        Command::Gen(g) => cmd_gen(g, stdout),
        Command::Bench(args) => {
            let rows = bench::run_suite(&args.suite, args.seeds).map_err(Failure::invalid)?;
            let table = bench::render(&rows);
            write_to(Some(&args.out), &table, stdout)?;
            let failed = rows.iter().filter(|r| r.value.is_err()).count();
            writeln!(stdout, "{} rows written to {} ({failed} failed cells)", rows.len(), args.out.display()).ok();
            Ok(())
        }
    }
}

fn cmd_solve(args: SolveArgs, stdout: &mut dyn Write) -> Result<(), Failure> {
    let inst = load_instance(&args.instance)?;
    let td = match &args.td {
        Some(p) => Some(DecompositionDoc::from_json(&read(p)?)?.to_decomposition(&inst)?),
        None => None,
    };
    let params = SolveParams {
        algo: args.algo,
        d: args.d,
        width_cap: args.width_cap,
        td,
        embedding_required: args.embedding_required,
        edge_limit: args.edge_limit,
    };
    let (o, cov, report) = solve_certified(&inst, &params)?;
    if let Some(out) = &args.out {
        write_to(Some(out), &SolutionDoc::new(&inst, &o, &cov).to_json(), stdout)?;
    }
    let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
    text.push('\n');
    write_to(None, &text, stdout)
}

fn parse_sets(text: &str) -> Result<Vec<Vec<usize>>, Failure> {
    text.split(';')
        .map(|s| {
            s.split(',')
                .filter(|x| !x.trim().is_empty())
                .map(|x| match x.trim().parse::<usize>() {
                    Ok(i) if i >= 1 => Ok(i - 1),
                    _ => Err(Failure::invalid(format!("bad element {x:?} in --sets"))),
                })
                .collect()
        })
        .collect()
}

fn maybe_weighted(inst: Instance, weighted: bool, seed: u64) -> Instance {
    if weighted {
        with_random_weights(&inst, seed)
    } else {
        inst
    }
}

fn cmd_gen(g: GenCommand, stdout: &mut dyn Write) -> Result<(), Failure> {
    let (doc, out) = match g {
        GenCommand::Setcover {
            elements,
            sets,
            budget,
            out,
        } => {
            let sc = SetCoverInstance::new(elements, parse_sets(&sets)?, budget)?;
            let (inst, threshold) = reduce_set_cover(&sc);
            let mut doc = InstanceDoc::from_instance(&inst);
            doc.meta.insert("threshold".into(), json!(threshold));
            doc.meta.insert("budget".into(), json!(budget));
            doc.meta.insert(
                "sets".into(),
                json!(sc.sets.iter().map(|s| s.iter().map(|x| x + 1).collect::<Vec<_>>()).collect::<Vec<_>>()),
            );
            (doc, out)
        }
        GenCommand::Random {
            nodes,
            p,
            seed,
            weighted,
            out,
        } => {
            if nodes == 0 || !(0.0..=1.0).contains(&p) {
                return Err(Failure::invalid("need --nodes ≥ 1 and 0 ≤ p ≤ 1"));
            }
            let inst = maybe_weighted(random_instance(nodes, p, seed), weighted, seed);
            (InstanceDoc::from_instance(&inst), out)
        }
        GenCommand::Grid {
            rows,
            cols,
            keep,
            diag,
            seed,
            weighted,
            out,
        } => {
            if rows == 0 || cols == 0 {
                return Err(Failure::invalid("need --rows ≥ 1 and --cols ≥ 1"));
            }
            let inst = if keep.is_some() || diag.is_some() {
                random_planar_bfs(rows, cols, keep.unwrap_or(1.0), diag.unwrap_or(0.0), seed)
            } else {
                grid_instance(rows, cols)
            };
            (InstanceDoc::from_instance(&maybe_weighted(inst, weighted, seed)), out)
        }
        GenCommand::Twoarm {
            left,
            right,
            cross,
            p_back,
            seed,
            weighted,
            out,
        } => {
            let inst = maybe_weighted(two_arm_instance(left, right, cross, p_back, seed), weighted, seed);
            (InstanceDoc::from_instance(&inst), out)
        }
        GenCommand::Tight { max_nodes, seed, out } => {
            if max_nodes == 0 || max_nodes > 12 {
                return Err(Failure::invalid("--max-nodes must be between 1 and 12"));
            }
            let t = search_tightness_family(max_nodes, seed);
            let mut doc = InstanceDoc::from_instance(&t.instance);
            doc.meta.insert("optimum".into(), json!(t.optimum.to_string()));
            doc.meta.insert("canonical".into(), json!(t.canonical.to_string()));
            doc.meta.insert("ratio".into(), json!(t.ratio().to_string()));
            (doc, out)
        }
    };
    write_to(out.out.as_deref(), &doc.to_json(), stdout)
}
