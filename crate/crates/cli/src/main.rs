use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod error;
mod render;

/// Nonevasiveness certificates for order complexes of finite lattices.
#[derive(Debug, Parser)]
#[command(name = "nonevade", version)]
struct Cli {
    /// Machine-readable JSON on stdout; errors as JSON on stderr.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Instance {
    /// Lattice file (text or JSON).
    file: PathBuf,
    /// Element x of the proper part.
    #[arg(short = 'x', long = "element")]
    x: String,
}

#[derive(Debug, Args, Default)]
struct CapFlags {
    /// Vertex cap for brute-force nonevasiveness.
    #[arg(long)]
    cap_nonevasive: Option<usize>,
    /// Face cap for the collapse search.
    #[arg(long)]
    cap_collapse: Option<usize>,
    /// Ground-set cap for exhaustive games.
    #[arg(long)]
    cap_game: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check that a file describes a lattice.
    Validate { file: PathBuf },
    /// List the complements of x.
    Complements(Instance),
    /// Certify that Δ(L̄ ∖ Co(x)) is nonevasive.
    Certify {
        #[command(flatten)]
        instance: Instance,
        /// Write the certificate JSON here.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a certificate against Δ(L̄ ∖ Co(x)).
    Verify {
        #[command(flatten)]
        instance: Instance,
        #[arg(long)]
        cert: PathBuf,
    },
    /// Extract an elementary collapse sequence.
    Collapse {
        #[command(flatten)]
        instance: Instance,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compile a chain-query strategy.
    Strategy {
        #[command(flatten)]
        instance: Instance,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Play the chain-query game.
    Game {
        #[command(flatten)]
        instance: Instance,
        /// Play every hidden subset.
        #[arg(long, conflicts_with = "hidden", required_unless_present = "hidden")]
        exhaustive: bool,
        /// Play one hidden set, comma separated.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        hidden: Option<Vec<String>>,
        #[command(flatten)]
        caps: CapFlags,
    },
    /// Möbius function μ(0̂, 1̂) and reduced Euler characteristic of Δ(L̄).
    Mobius { file: PathBuf },
    /// Brute-force nonevasiveness and collapsibility of Δ(L̄ ∖ Co(x)).
    Oracle {
        #[command(flatten)]
        instance: Instance,
        #[command(flatten)]
        caps: CapFlags,
    },
    /// Generate a lattice from a family.
    Gen {
        /// chain, boolean, divisor, partition, product, diamond, pentagon or random.
        family: String,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: Option<u64>,
        /// Relation probability for `random`.
        #[arg(long, default_value_t = 0.3)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Cross-check every criterion over the reference corpus.
    Suite {
        #[arg(long)]
        seed: Option<u64>,
        /// Number of random lattices in the corpus.
        #[arg(long)]
        random_count: Option<usize>,
        #[command(flatten)]
        caps: CapFlags,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() && std::env::args().any(|a| a == "--json") => {
            let message = e.render().to_string();
            error::CliError::usage(message.trim_end()).report(true);
            return ExitCode::from(error::USAGE);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { error::USAGE } else { 0 });
        }
    };
    let json = cli.json;
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            e.report(json);
            ExitCode::from(e.code)
        }
    }
}
