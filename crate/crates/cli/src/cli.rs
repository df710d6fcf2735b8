use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "lfree", version, about = "Sumset-free sets: detection, search, constructions")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads (1 gives the sequential search order).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Find a sumset with the given signature inside a set.
    Detect {
        #[arg(long)]
        set: PathBuf,
        #[arg(long)]
        signature: String,
    },
    /// List every canonical decomposition inside a set.
    Enumerate {
        #[arg(long)]
        set: PathBuf,
        #[arg(long)]
        signature: String,
        #[arg(long, env = "LFREE_BUDGET", default_value_t = 1_000_000)]
        max_decompositions: usize,
    },
    /// Exact maximum size of a free subset.
    Search {
        #[command(flatten)]
        ambient: AmbientArgs,
        #[arg(long)]
        signature: String,
        #[arg(long, env = "LFREE_BUDGET", default_value_t = 50_000_000)]
        max_nodes: u64,
        /// Allow ambients above the default size guard.
        #[arg(long)]
        allow_large: bool,
        /// Also report F(m) for every m ≤ n (intervals only).
        #[arg(long)]
        profile: bool,
    },
    /// Closed-form bounds, or the overlap inequality when --a/--b/--x are given.
    Bounds {
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        signature: Option<String>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        a: Option<Vec<i64>>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        b: Option<Vec<i64>>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        x: Option<Vec<i64>>,
        #[arg(long)]
        r: Option<usize>,
    },
    /// Explicit and randomized constructions.
    #[command(subcommand)]
    Construct(Construct),
    /// Cayley sum hypergraphs.
    #[command(subcommand)]
    Hypergraph(Hyper),
    /// Infinite-sequence experiments.
    #[command(subcommand)]
    Sequence(Sequence),
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct AmbientArgs {
    /// Interval [1, N].
    #[arg(long)]
    pub n: Option<u64>,
    /// Product of cyclic groups, e.g. 4,4,4.
    #[arg(long, value_delimiter = ',')]
    pub moduli: Option<Vec<u64>>,
}

#[derive(Subcommand, Debug)]
pub enum Construct {
    /// A 3-AP-free subset of [1, n].
    Behrend {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        save: Option<PathBuf>,
    },
    /// Random sampling from a Behrend set followed by deletion of obstruction maxima.
    Random {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        signature: String,
        #[arg(long)]
        seed: u64,
        /// Retry with seeds seed+1, … until the sample is typical.
        #[arg(long, default_value_t = 1)]
        attempts: u32,
        #[arg(long)]
        save: Option<PathBuf>,
    },
    /// The (2,2,2)-free set in Z_{p−1}³.
    Zp3 {
        #[arg(long)]
        p: u64,
        /// Map the set into the integers.
        #[arg(long)]
        embed: bool,
        #[arg(long)]
        save: Option<PathBuf>,
    },
    /// Mixed-radix image of a product-group set.
    Embed {
        #[arg(long)]
        set: PathBuf,
        #[arg(long)]
        save: Option<PathBuf>,
    },
    /// (2,2,2)-free subset of [0, n) from the largest admissible prime.
    L222 {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        save: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum Hyper {
    /// Edges: r-subsets of distinct elements summing into the set.
    Build {
        #[arg(long)]
        set: PathBuf,
        #[arg(long)]
        r: usize,
        #[arg(long, env = "LFREE_BUDGET", default_value_t = 50_000_000)]
        max_subsets: u64,
        #[arg(long)]
        save: Option<PathBuf>,
    },
    /// Look for a complete r-partite subhypergraph with the signature's class sizes.
    Check {
        #[arg(long)]
        hypergraph: PathBuf,
        #[arg(long)]
        signature: String,
    },
    /// Translate of the set giving the most edges.
    BestTranslate {
        #[arg(long)]
        set: PathBuf,
        #[arg(long)]
        r: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum Sequence {
    /// Greedy free sequence up to a limit.
    Greedy {
        #[arg(long)]
        signature: String,
        #[arg(long)]
        limit: u64,
        /// Points for the liminf statistic.
        #[arg(long, value_delimiter = ',')]
        at: Vec<u64>,
        #[arg(long)]
        save: Option<PathBuf>,
    },
    /// Random construction over dyadic blocks.
    Dyadic {
        #[arg(long)]
        signature: String,
        #[arg(long)]
        epsilon: f64,
        #[arg(long, default_value_t = 1)]
        m_min: u32,
        #[arg(long, default_value_t = 8)]
        m_max: u32,
        #[arg(long)]
        seed: u64,
        #[arg(long, env = "LFREE_BUDGET", default_value_t = 10_000_000)]
        max_decompositions: u64,
        #[arg(long, value_delimiter = ',')]
        at: Vec<u64>,
        #[arg(long)]
        save: Option<PathBuf>,
    },
    /// Counting function and liminf statistic of a stored sequence.
    Stats {
        #[arg(long)]
        set: PathBuf,
        #[arg(long)]
        signature: String,
        #[arg(long, value_delimiter = ',', required = true)]
        at: Vec<u64>,
    },
}
