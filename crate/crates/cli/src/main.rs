//! `gmn-shuffle`: batch front end for the `gmn-shuffle` library.

mod commands;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gmn_shuffle::group::DEFAULT_ORDER_CAP;
use gmn_shuffle::hecke::DEFAULT_HECKE_MAX_N;
use gmn_shuffle::Error;

#[derive(Parser, Debug)]
#[command(name = "gmn-shuffle", version, about = "Shuffles of polygonal cards: the groups G(m,1,n) and H(2,1,n)")]
pub struct Cli {
    /// Worker threads for parallel sections.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,

    /// Largest group order (or Hecke dimension) that may be materialized.
    #[arg(long, global = true, env = "GMN_SHUFFLE_CAP", default_value_t = DEFAULT_ORDER_CAP)]
    pub cap: u128,

    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Dot,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Group order, element list, normal forms, Schreier graph.
    #[command(subcommand)]
    Group(GroupCommand),
    /// Eigenvalues and multiplicities of the 1-shuffle.
    Spectrum(GroupArgs),
    /// Exact checks of the shuffle identities.
    Identities(GroupArgs),
    /// Total variation decay of the top-to-random walk.
    Mixing(MixingArgs),
    /// Numeric test of the conjectured Hecke shuffle spectrum.
    Hecke(HeckeArgs),
}

#[derive(Args, Debug, Clone, Copy)]
pub struct GroupArgs {
    /// Number of sides of each card.
    #[arg(long)]
    pub m: usize,
    /// Number of cards.
    #[arg(long)]
    pub n: usize,
}

#[derive(Subcommand, Debug)]
pub enum GroupCommand {
    /// Print m^n·n!.
    Order(GroupArgs),
    /// List every element with its normal form.
    Enumerate(GroupArgs),
    /// Normal form of a word such as `t s1 t^-1`.
    NormalForm {
        #[command(flatten)]
        group: GroupArgs,
        word: String,
    },
    /// Schreier coset graph (DOT by default).
    Schreier(GroupArgs),
}

#[derive(Args, Debug)]
pub struct MixingArgs {
    #[arg(long, default_value_t = 2)]
    pub m: usize,
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    /// Number of steps k.
    #[arg(long, default_value_t = 40)]
    pub steps: usize,
    /// Also run Monte-Carlo walks of `steps` steps.
    #[arg(long)]
    pub simulate: bool,
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Where to write the summary JSON (stderr when absent).
    #[arg(long)]
    pub summary: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct HeckeArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub q: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub p: f64,
    /// Largest n accepted.
    #[arg(long, default_value_t = DEFAULT_HECKE_MAX_N)]
    pub max_n: usize,
    /// At q = p = 1, run the exact comparison with the group algebra.
    #[arg(long)]
    pub allow_classical: bool,
}

/// What a command produced, and whether its checks passed.
pub struct Outcome {
    pub text: String,
    pub passed: bool,
}

pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_CAP: u8 = 3;

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::CapExceeded { .. } => EXIT_CAP,
        Error::RewriteBudget { .. } | Error::UnsoundRule { .. } | Error::RouteMismatch(_) => {
            EXIT_CHECK_FAILED
        }
        _ => EXIT_USAGE,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    if cli.threads == 0 {
        eprintln!("error: --threads must be at least 1");
        return ExitCode::from(EXIT_USAGE);
    }
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build() {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match pool.install(|| commands::run(&cli)) {
        Ok(outcome) => {
            let written = match &cli.output {
                Some(path) => fs::write(path, &outcome.text),
                None => io::stdout().write_all(outcome.text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(EXIT_USAGE);
            }
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_CHECK_FAILED)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
