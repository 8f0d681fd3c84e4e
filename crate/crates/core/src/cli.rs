//! Command-line front end.

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bc_enum;
use crate::bipoly::BiPoly;
use crate::error::{Error, Result};
use crate::experiments;
use crate::oracle::{Family, Oracle};
use crate::subtree_enum::{self, Anchors};
use crate::tree::Tree;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "maxdeg-subtrees",
    version,
    about = "Count subtrees and BC-subtrees of bounded maximum degree in trees"
)]
pub struct Invocation {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Subtrees with maximum degree at most k
    Subtrees(CountArgs),
    /// BC-subtrees (all leaves pairwise at even distance) with maximum degree at most k
    Bc(CountArgs),
    /// Brute-force reference count (trees with at most 14 vertices)
    Oracle {
        #[command(flatten)]
        count: CountArgs,
        #[arg(long, value_enum, default_value_t = FamilyArg::Subtree)]
        family: FamilyArg,
    },
    /// Print a uniformly random labeled tree as an edge list
    RandomTree {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Ratio of degree-bounded counts to unconstrained counts on random trees
    Ratio {
        /// One or more tree sizes, comma separated
        #[arg(long, value_delimiter = ',', default_value = "30,40,50")]
        n: Vec<usize>,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 8)]
        kmax: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = FamilyArg::Subtree)]
        family: FamilyArg,
        /// Per-sample CSV; the means go next to it as <stem>_mean.csv.
        /// Without it the per-sample CSV goes to standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct CountArgs {
    /// Maximum degree bound
    #[arg(long)]
    pub k: usize,
    /// One anchor `L` or two anchors `L1,L2` that every counted subtree must contain
    #[arg(long, value_delimiter = ',', num_args = 1)]
    pub contains: Vec<String>,
    /// Print the generating function instead of the count
    #[arg(long)]
    pub genfun: bool,
    /// Print the generating function as JSON
    #[arg(long)]
    pub json: bool,
    /// Count only subtrees whose maximum degree is exactly k
    #[arg(long)]
    pub exact_degree: bool,
    /// Edge-list file; standard input when omitted
    pub file: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Subtree,
    Bc,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Subtree => Family::Subtree,
            FamilyArg::Bc => Family::Bc,
        }
    }
}

enum Failure {
    Usage(String),
    Data(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Data(e)
    }
}

/// Runs one invocation and returns the process exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let inv = match Invocation::try_parse_from(args) {
        Ok(inv) => inv,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(stderr, "{text}");
            } else {
                let _ = write!(stdout, "{text}");
            }
            return code;
        }
    };
    match execute(inv, stdin, stdout) {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Data(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_DATA
        }
    }
}

fn execute(inv: Invocation, stdin: &mut dyn Read, stdout: &mut dyn Write) -> Result<(), Failure> {
    match inv.command {
        Command::Subtrees(args) => count_command(&args, Engine::Fast(Family::Subtree), stdin, stdout),
        Command::Bc(args) => count_command(&args, Engine::Fast(Family::Bc), stdin, stdout),
        Command::Oracle { count, family } => {
            count_command(&count, Engine::Oracle(family.into()), stdin, stdout)
        }
        Command::RandomTree { n, seed } => {
            let t = Tree::random(n, seed)?;
            emit(stdout, &t.render())
        }
        Command::Ratio {
            n,
            samples,
            kmax,
            seed,
            family,
            out,
        } => {
            let mut records = Vec::new();
            for size in n {
                records.extend(experiments::ratio_sweep(size, samples, kmax, seed, family.into())?);
            }
            match out {
                Some(path) => {
                    experiments::emit_csv(&records, &path)?;
                    Ok(())
                }
                None => emit(stdout, &experiments::records_csv(&records)),
            }
        }
    }
}

#[derive(Clone, Copy)]
enum Engine {
    Fast(Family),
    Oracle(Family),
}

fn emit(stdout: &mut dyn Write, text: &str) -> Result<(), Failure> {
    let text = text.trim_end_matches('\n');
    writeln!(stdout, "{text}").map_err(|e| Failure::Data(e.into()))
}

fn read_tree(file: &Option<PathBuf>, stdin: &mut dyn Read) -> Result<Tree> {
    let text = match file {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?,
        None => {
            let mut s = String::new();
            stdin.read_to_string(&mut s)?;
            s
        }
    };
    Tree::parse_edge_list(&text)
}

fn count_command(
    args: &CountArgs,
    engine: Engine,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
) -> Result<(), Failure> {
    if args.contains.len() > 2 || args.contains.iter().any(String::is_empty) {
        return Err(Failure::Usage(
            "--contains takes one label or two comma-separated labels".to_string(),
        ));
    }
    let t = read_tree(&args.file, stdin)?;
    let labels: Vec<&str> = args.contains.iter().map(String::as_str).collect();
    let anchors = Anchors::from_labels(&labels)?;
    let poly = compute(&t, args.k, anchors, args.exact_degree, engine)?;
    let text = if args.json {
        poly.to_json().to_string()
    } else if args.genfun {
        poly.to_string()
    } else {
        poly.eval_counts().to_string()
    };
    emit(stdout, &text)
}

/// Smallest `k` each mode accepts.
fn min_k(family: Family, anchors: Anchors<'_>, exact: bool) -> usize {
    match (family, exact) {
        (Family::Subtree, true) => 1,
        (Family::Subtree, false) => matches!(anchors, Anchors::Two(..)) as usize,
        (Family::Bc, true) => 3,
        (Family::Bc, false) => 2,
    }
}

fn compute(t: &Tree, k: usize, anchors: Anchors<'_>, exact: bool, engine: Engine) -> Result<BiPoly> {
    match engine {
        Engine::Fast(Family::Subtree) if exact => subtree_enum::count_exact_degree(t, k, anchors),
        Engine::Fast(Family::Subtree) => subtree_enum::count_with_anchors(t, k, anchors),
        Engine::Fast(Family::Bc) if exact => bc_enum::count_bc_exact_degree(t, k, anchors),
        Engine::Fast(Family::Bc) => bc_enum::count_bc_with_anchors(t, k, anchors),
        Engine::Oracle(family) => {
            for l in anchors.labels() {
                t.index_of(l)?;
            }
            let min = min_k(family, anchors, exact);
            if k < min {
                return Err(Error::KTooSmall { k, min });
            }
            let oracle = Oracle::default();
            let upper = oracle.count(t, k, family, anchors)?;
            if !exact {
                return Ok(upper);
            }
            let lower = match (family, k) {
                (Family::Subtree, 1) if matches!(anchors, Anchors::Two(..)) => BiPoly::zero(),
                _ => oracle.count(t, k - 1, family, anchors)?,
            };
            upper.subtract_nonneg(&lower)
        }
    }
}
