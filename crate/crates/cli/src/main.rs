//! `catena`: compute, compare, generate and verify matroid invariants.
//!
//! Exit status: 0 for pass / equal, 1 for fail / unequal, 2 for errors
//! (with the reason on standard error).

mod commands;
mod format;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "catena", version, about = "Matroid invariants workbench")]
pub struct Cli {
    /// Worker threads for flag and permutation enumeration (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Where to write the report or generated file(s); standard output if absent.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, Default, clap::Args)]
pub struct Route {
    /// Enumerate permutations even for large ground sets (up to 20 elements).
    #[arg(long, conflicts_with = "force_catenary")]
    pub force_bruteforce: bool,

    /// Derive G from catenary data even for small ground sets.
    #[arg(long)]
    pub force_catenary: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print one invariant of a matroid file.
    Compute {
        path: PathBuf,
        #[arg(long, value_enum)]
        what: What,
        #[command(flatten)]
        route: Route,
    },
    /// Compare an invariant of two matroid files.
    Compare {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum)]
        mode: Mode,
        #[command(flatten)]
        route: Route,
    },
    /// Write matroid files for a construction.
    Generate {
        #[command(subcommand)]
        kind: Generate,
    },
    /// Run a property check on one or more files.
    Verify {
        #[arg(value_enum)]
        kind: VerifyKind,
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        #[command(flatten)]
        route: Route,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum What {
    Tutte,
    Ginv,
    Catenary,
    Config,
    Chains,
    Iota,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Ginv,
    Catenary,
    Config,
    Tutte,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VerifyKind {
    /// The cyclic-flat axioms for every family in the files.
    Axioms,
    /// The inclusion-exclusion identity for the sets g(F).
    Lemma31,
    /// Chain-partition comparison of two matroids, grouping chains by labels.
    Chains,
    /// The hypotheses of the paving-pair construction.
    PavingHypotheses,
    /// Cyclic flats and G-invariant of the dual.
    Duality,
}

#[derive(Subcommand, Debug)]
pub enum Generate {
    /// Every element replaced by a class of t + 1 parallel elements.
    Parallel {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        t: usize,
    },
    /// Lines A_1..A_m with planes on them; --assign is 1-based.
    Example1 {
        #[arg(long)]
        m: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        assign: Vec<usize>,
    },
    /// Two rank-3 paving matroids with two lines each, blown up by blocks.
    Example3 {
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        block: usize,
        /// Seven-element blocks with ranks 5, 8, 10 (42 elements).
        #[arg(long, conflicts_with_all = ["m", "n", "block"])]
        printed: bool,
    },
    /// Two rank-4 paving matroids on twelve elements, blown up by blocks.
    Example4 {
        #[arg(long, default_value_t = 2)]
        block: usize,
    },
    /// Realize both lattices of a lattice-extension spec file.
    LatticeExtension {
        #[arg(long)]
        input: PathBuf,
    },
    /// The dual of a matroid file (each matroid of a pair file).
    Dual {
        #[arg(long)]
        input: PathBuf,
    },
}

/// Pass/fail (or equal/unequal) outcome of a successful command.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let start = Instant::now();
    let result = commands::run(&cli);
    eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    match result {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
