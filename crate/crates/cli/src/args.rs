use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use twinword::Epsilon;

#[derive(Debug, Parser)]
#[command(name = "twinword", version, about = "Twins and k-tuplets of scattered subwords")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Report wall-clock times; without it every elapsed_ms is 0 so output is reproducible.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct Input {
    /// Word file: one word per line, '#' lines ignored.
    #[arg(long, conflicts_with = "word", required_unless_present = "word")]
    pub input: Option<PathBuf>,
    /// A word given inline.
    #[arg(long)]
    pub word: Option<String>,
    /// Alphabet size (default: inferred from the characters used).
    #[arg(long)]
    pub ell: Option<u32>,
}

#[derive(Debug, Args)]
pub struct EpsilonArgs {
    /// Tolerance as "p/q" or a decimal.
    #[arg(long, default_value = "1/10")]
    pub epsilon: Epsilon,
    /// Derive epsilon from the word length with constant C (default 1).
    #[arg(long, num_args = 0..=1, default_missing_value = "1", value_name = "C")]
    pub auto_epsilon: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TwinMethod {
    /// Regularize, then extract from every regular factor.
    Pipeline,
    /// Block construction on a word that is already regular.
    Regular,
    /// Consecutive triples.
    Greedy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TupletMethod {
    Pipeline,
    Regular,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute an ε-regular partition and its trace.
    Regularize {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "1/10")]
        epsilon: Epsilon,
        /// Initial number of factors (default ⌈1/ε⌉).
        #[arg(long)]
        t0: Option<usize>,
    },
    /// Extract twins from a binary word.
    Twins {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        eps: EpsilonArgs,
        #[arg(long, value_enum, default_value_t = TwinMethod::Pipeline)]
        method: TwinMethod,
    },
    /// Extract k-tuplets.
    Ktuplets {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        eps: EpsilonArgs,
        #[arg(short = 'k', long, default_value_t = 2)]
        k: usize,
        #[arg(long, value_enum, default_value_t = TupletMethod::Pipeline)]
        method: TupletMethod,
    },
    /// Exact f(S,k) for a word, or a table of f(n,k,ℓ).
    Exact(ExactArgs),
    /// Generate words.
    Construct {
        #[command(subcommand)]
        kind: Construct,
    },
    /// Root of the first-moment α-equation.
    Alpha {
        #[arg(short = 'k', long)]
        k: usize,
        #[arg(long)]
        ell: u32,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// First-moment upper bound on f(n,k,ℓ).
    Bound {
        #[arg(long)]
        n: usize,
        #[arg(short = 'k', long)]
        k: usize,
        #[arg(long)]
        ell: u32,
    },
}

#[derive(Debug, Args)]
pub struct ExactArgs {
    /// Word to solve (character encoding).
    #[arg(long, conflicts_with_all = ["table", "input"], required_unless_present_any = ["table", "input"])]
    pub word: Option<String>,
    /// Word file to solve, one result per word.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Tabulate f(n,k,ℓ) over --n.
    #[arg(long, requires = "n")]
    pub table: bool,
    /// Range of lengths, "a..b" (inclusive) or a single length.
    #[arg(long, value_parser = parse_range)]
    pub n: Option<(usize, usize)>,
    #[arg(short = 'k', long, default_value_t = 2)]
    pub k: usize,
    #[arg(long)]
    pub ell: Option<u32>,
    /// Time budget in seconds, per word or per table cell.
    #[arg(long)]
    pub budget: Option<f64>,
    /// Exit with status 3 if any result is an interval.
    #[arg(long)]
    pub require_exact: bool,
}

#[derive(Debug, Subcommand)]
pub enum Construct {
    /// The word S_K…S_0 with |S_i| = 3^i.
    Block {
        #[arg(long)]
        levels: u32,
    },
    /// Uniform random word from a seeded ChaCha8 stream.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        ell: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("bad length {t:?}: {e}"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
        None => {
            let v = parse(s)?;
            (v, v)
        }
    };
    if a == 0 || a > b {
        return Err(format!("empty or invalid range {s:?}"));
    }
    Ok((a, b))
}
