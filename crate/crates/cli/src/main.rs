mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use verbal_core::group::DEFAULT_INDEX_CAP;
use verbal_core::words::DEFAULT_TUPLE_BUDGET;

#[derive(Parser, Debug)]
#[command(name = "verbal", version, about = "Word maps, twisted commutator equations and coset witnesses in finite groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Seed for every randomized step; sub-seeds are derived from it by label.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Maximum number of tuples a word-map enumeration may visit.
    #[arg(long, global = true, env = "VERBAL_BUDGET_TUPLES", default_value_t = DEFAULT_TUPLE_BUDGET)]
    pub budget_tuples: u64,

    /// Largest group order that may be indexed densely.
    #[arg(long, global = true, env = "VERBAL_BUDGET_INDEX", default_value_t = DEFAULT_INDEX_CAP)]
    pub budget_index: usize,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Strategy {
    Exhaustive,
    Conjugacy,
    Random,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CaseArg {
    Auto,
    A,
    B,
    Brute,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Acceptance,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exact width of a word on an indexed group.
    Width {
        #[arg(long)]
        group: String,
        #[arg(long)]
        word: String,
        #[arg(long, value_enum, default_value_t = Strategy::Conjugacy)]
        strategy: Strategy,
        /// Samples for the random strategy.
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
    },
    /// The set of values of a word.
    Values {
        #[arg(long)]
        group: String,
        #[arg(long)]
        word: String,
        #[arg(long, value_enum, default_value_t = Strategy::Conjugacy)]
        strategy: Strategy,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
    },
    /// Whether a word is silly, from its exponent sums.
    Silly {
        #[arg(long)]
        word: String,
    },
    /// Solves a twisted commutator system read from JSON.
    Solve {
        #[arg(long)]
        group: String,
        /// Path to the system, or the JSON text itself.
        #[arg(long)]
        system: String,
        #[arg(long, default_value_t = verbal_core::equations::DEFAULT_RETRIES)]
        retries: usize,
    },
    /// The twisted class of an automorphism.
    Twisted {
        #[arg(long)]
        group: String,
        /// Automorphism components such as `inner:(0 1 2)` or `diag:2*field:1`.
        #[arg(long)]
        aut: String,
    },
    /// Searches a coset witness in PSL(2,q)^m.
    CosetWitness {
        #[arg(long)]
        word: String,
        #[arg(long)]
        q: u32,
        #[arg(long, default_value_t = 1)]
        m: usize,
        /// JSON array of twist descriptors, or a path to one. Random twists when absent.
        #[arg(long)]
        twists: Option<String>,
        #[arg(long = "case", value_enum, default_value_t = CaseArg::Auto)]
        case: CaseArg,
    },
    /// Builds a wreath-type group and certifies a width lower bound.
    Construct {
        #[arg(long)]
        fiber: String,
        #[arg(long)]
        top: String,
        #[arg(long)]
        word: String,
        /// Comma-separated top elements generating the coset stabilizer.
        #[arg(long)]
        tuple: String,
        /// Number of values in the certified products.
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        /// Random full products to test against kappa; 0 skips the test.
        #[arg(long, default_value_t = 0)]
        refute_trials: u64,
    },
    /// Runs a named check suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Run only these criteria.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(code) => code,
        Err(e) => {
            let (code, msg) = report::classify(&e);
            eprintln!("{msg}");
            ExitCode::from(code)
        }
    }
}
