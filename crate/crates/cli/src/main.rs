//! `clusterkit`: seeds, mutation, quivers and rooted cluster morphisms from
//! the command line.
//!
//! Exit status: 0 on success, 1 when the mathematical verdict is negative
//! (not a morphism, not ideal, ...), 2 on usage or input errors.

mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use clusterkit::Var;

#[derive(Parser)]
#[command(name = "clusterkit", version, about = "Exact computations with rooted cluster algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

/// Enumeration budgets; `CLUSTERKIT_MAX_SEEDS` overrides the default seed
/// budget, an explicit flag overrides both.
#[derive(clap::Args, Clone, Copy)]
struct Budget {
    #[arg(long)]
    max_depth: Option<usize>,
    #[arg(long)]
    max_seeds: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Checks that the matrix is skew-symmetrizable and prints the least symmetrizer.
    Validate { seed: PathBuf },
    /// Mutates at one variable or along a sequence.
    Mutate {
        seed: PathBuf,
        #[arg(long, conflicts_with = "seq", required_unless_present = "seq")]
        at: Option<Var>,
        #[arg(long, value_delimiter = ',')]
        seq: Option<Vec<Var>>,
    },
    /// Enumerates the cluster variables of the mutation class.
    Variables {
        seed: PathBuf,
        #[command(flatten)]
        budget: Budget,
    },
    /// Enumerates the exchange graph.
    ExchangeGraph {
        seed: PathBuf,
        #[command(flatten)]
        budget: Budget,
        /// Same as `--format dot`.
        #[arg(long)]
        dot: bool,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Splits a seed into indecomposable components.
    Decompose {
        seed: PathBuf,
        /// Writes one file per component and the identification instead.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Glues two seeds along pairs of frozen variables `a:b`.
    Glue {
        first: PathBuf,
        second: PathBuf,
        #[arg(long = "pair")]
        pairs: Vec<String>,
    },
    /// Freezes the given exchangeable variables.
    Freeze {
        seed: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        at: Vec<Var>,
    },
    /// Builds the specialization sending each `var=int` to the integer.
    Specialize {
        seed: PathBuf,
        #[arg(long = "drop")]
        drops: Vec<String>,
    },
    /// Prints the ice valued quiver of a seed.
    Quiver {
        seed: PathBuf,
        #[arg(long)]
        dot: bool,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Checks CM1, CM2 and CM3 up to the given depth.
    CheckMorphism {
        morphism: PathBuf,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Prints the image seed of a morphism.
    ImageSeed { morphism: PathBuf },
    /// Decides whether a morphism is ideal, when the membership test can tell.
    IdealCheck {
        morphism: PathBuf,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long)]
        degree_bound: Option<usize>,
    },
    /// Analyses an injective morphism against the freezing of its target.
    AnalyzeInjection { morphism: PathBuf },
    /// Lists the complete pairs for one freezing, or for all of them.
    CompletePairs {
        seed: PathBuf,
        #[arg(long, value_delimiter = ',', conflicts_with = "all")]
        freeze: Option<Vec<Var>>,
        #[arg(long)]
        all: bool,
        /// Allows more than 2^10 freezings with `--all`.
        #[arg(long)]
        force: bool,
    },
    /// Runs the HTTP server.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: std::net::IpAddr,
    },
}

fn format_of(dot: bool, format: Option<Format>) -> Format {
    if dot {
        Format::Dot
    } else {
        format.unwrap_or(Format::Json)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let rendered = e.kind().to_string();
            let first = e.to_string();
            let line = first.lines().next().unwrap_or(&rendered).trim_start_matches("error: ");
            eprintln!("clusterkit: {line}");
            return ExitCode::from(2);
        }
    };
    match commands::run(cli.command) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(outcome.output.as_bytes());
            let _ = stdout.flush();
            if outcome.negative {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("clusterkit: {}", e.replace('\n', " "));
            ExitCode::from(2)
        }
    }
}
