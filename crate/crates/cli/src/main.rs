use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lrc::bounds::BoundParams;
use lrc::code::SearchOptions;
use lrc::construct::CheckMode;
use lrc_cli::{
    cmd_bounds, cmd_construct, cmd_repair, cmd_sweep, cmd_verify, parse_strategy, CliResult, ConstructArgs, Method,
    Outcome, SweepArgs,
};

#[derive(Parser)]
#[command(name = "lrc", version, about = "Construct, verify and repair locally repairable codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Vandermonde,
    Greedy,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckArg {
    Structured,
    Naive,
}

#[derive(clap::Args)]
struct SearchArgs {
    /// Distance oracle: auto, codeword-enum, column-subsets or verify (both)
    #[arg(long, default_value = "auto")]
    strategy: String,
    /// Vector reductions allowed per subset search
    #[arg(long, default_value_t = 500_000_000)]
    search_budget: u64,
}

impl SearchArgs {
    fn options(&self) -> CliResult<SearchOptions> {
        Ok(SearchOptions {
            strategy: parse_strategy(&self.strategy)?,
            subset_budget: self.search_budget,
            ..Default::default()
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build a parity-check matrix
    Construct {
        #[arg(long, value_enum)]
        method: MethodArg,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        r: usize,
        /// Scan greedy candidates in a seeded random order
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value = "structured")]
        check_mode: CheckArg,
        #[arg(long, short)]
        output: Option<PathBuf>,
        /// Print the greedy trace on stderr
        #[arg(long)]
        trace: bool,
    },
    /// Compute n, k, d, locality and optimality of a matrix file
    Verify {
        file: PathBuf,
        /// Expected locality; a mismatch is an error
        #[arg(long)]
        r: Option<usize>,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Evaluate every applicable bound
    Bounds {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        d: u64,
        #[arg(long)]
        r: u64,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        k: Option<u64>,
    },
    /// Greedy length frontier as CSV
    Sweep {
        /// Comma-separated field orders
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<u64>,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        r: usize,
        /// Length increment (default r+1)
        #[arg(long)]
        n_step: Option<usize>,
        /// Maximum lengths attempted per field
        #[arg(long, default_value_t = 64)]
        budget: usize,
        /// Skip distance and locality verification of each code
        #[arg(long)]
        no_verify: bool,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Repair the single erased symbol ("?") of a word
    Repair {
        file: PathBuf,
        /// Symbols separated by spaces or commas, e.g. "1 ? 1"
        word: String,
        #[command(flatten)]
        search: SearchArgs,
    },
}

fn run(cli: Cli) -> CliResult<Outcome> {
    match cli.command {
        Command::Construct { method, q, n, d, r, seed, check_mode, output, trace } => cmd_construct(&ConstructArgs {
            method: match method {
                MethodArg::Vandermonde => Method::Vandermonde,
                MethodArg::Greedy => Method::Greedy,
            },
            q,
            n,
            d,
            r,
            seed,
            check_mode: match check_mode {
                CheckArg::Structured => CheckMode::Structured,
                CheckArg::Naive => CheckMode::Naive,
            },
            output,
            trace,
        }),
        Command::Verify { file, r, search } => cmd_verify(&file, r, &search.options()?),
        Command::Bounds { q, d, r, n, k } => cmd_bounds(BoundParams { q, d, r, n, k }),
        Command::Sweep { q, d, r, n_step, budget, no_verify, search } => cmd_sweep(&SweepArgs {
            qs: q,
            d,
            r,
            n_step: n_step.unwrap_or(r + 1),
            budget,
            verify: !no_verify,
            opts: search.options()?,
        }),
        Command::Repair { file, word, search } => cmd_repair(&file, &word, &search.options()?),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{}", out.stdout);
            eprint!("{}", out.stderr);
            ExitCode::from(out.status.code())
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.status().code())
        }
    }
}
