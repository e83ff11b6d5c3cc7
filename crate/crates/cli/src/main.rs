//! `listcolor` — compute certified thresholds, exact small-graph solvers,
//! and constructive partial list colorings from the partition scheme.
//!
//! Exit codes: 0 all checks passed, 1 a check failed, 2 usage or input
//! error, 3 node budget exceeded.

mod commands;
mod error;
mod input;
mod report;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::commands::Mode;
use crate::error::CliError;
use crate::input::{GraphArgs, ListArgs};
use crate::report::{Format, Report};

#[derive(Parser)]
#[command(
    name = "listcolor",
    version,
    about = "Partial list colorings: certified thresholds, exact solvers, and the partition scheme"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Certified threshold q for one parameter pair (s, t).
    Q {
        /// Choosability parameter (list size the graph is known to handle).
        #[arg(long)]
        s: u32,
        /// Actual list size, 0 < t < s.
        #[arg(long)]
        t: u32,
        /// Root bracket width tolerance.
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Scan the normalized threshold q/(t/s) over all 0 < t < s <= s-max.
    Ratio {
        #[arg(long = "s-max", default_value_t = 200)]
        s_max: u32,
    },
    /// Partial list coloring number lambda_t: the worst case over t-list
    /// assignments of the best partial coloring (exhaustive; small graphs).
    Lambda {
        /// List size t.
        #[arg(long)]
        t: u32,
        #[command(flatten)]
        graph: GraphArgs,
        /// Palette size cap for the enumeration (default n*t, complete).
        #[arg(long = "palette-cap")]
        palette_cap: Option<u32>,
        /// Search-node budget (default 100000000 or LISTCOLOR_NODE_BUDGET).
        #[arg(long)]
        budget: Option<u64>,
    },
    /// List chromatic number chi_ell (exhaustive; small graphs).
    ChiEll {
        #[command(flatten)]
        graph: GraphArgs,
        /// Search-node budget (default 100000000 or LISTCOLOR_NODE_BUDGET).
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Decide whether the graph is s-choosable (exhaustive; small graphs).
    Choosable {
        /// List size s.
        #[arg(long)]
        s: u32,
        #[command(flatten)]
        graph: GraphArgs,
        /// Palette size cap for the enumeration (default n*s, complete).
        #[arg(long = "palette-cap")]
        palette_cap: Option<u32>,
        /// Search-node budget (default 100000000 or LISTCOLOR_NODE_BUDGET).
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Color an instance with the partition scheme (derandomized or Monte
    /// Carlo); guarantees ceil(q*n - 1e-6) colored vertices in derand mode.
    Color {
        /// Choosability parameter s (the graph must be s-choosable for the
        /// guarantee to apply).
        #[arg(long)]
        s: u32,
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        lists: ListArgs,
        #[arg(long, value_enum, default_value_t = Mode::Derand)]
        mode: Mode,
        /// Trials for --mode mc.
        #[arg(long, default_value_t = 1000)]
        trials: u32,
        /// Seed for random lists and for Monte Carlo sampling.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the derandomized coloring as JSON to this file.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Re-run the full battery of analytic and combinatorial checks.
    VerifyPaper {
        /// Smaller grids and fewer repetitions.
        #[arg(long)]
        quick: bool,
        /// Negative control: offset every root by EPS before certification.
        #[arg(long = "perturb-q", hide = true, value_name = "EPS")]
        perturb_q: Option<f64>,
    },
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Q { s, t, tol } => commands::cmd_q(*s, *t, *tol),
        Command::Ratio { s_max } => commands::cmd_ratio(*s_max),
        Command::Lambda {
            t,
            graph,
            palette_cap,
            budget,
        } => commands::cmd_lambda(graph, *t, *palette_cap, *budget),
        Command::ChiEll { graph, budget } => commands::cmd_chi_ell(graph, *budget),
        Command::Choosable {
            s,
            graph,
            palette_cap,
            budget,
        } => commands::cmd_choosable(graph, *s, *palette_cap, *budget),
        Command::Color {
            s,
            graph,
            lists,
            mode,
            trials,
            seed,
            out,
        } => commands::cmd_color(graph, lists, *s, *mode, *trials, *seed, out.as_ref()),
        Command::VerifyPaper { quick, perturb_q } => verify::cmd_verify_paper(*quick, *perturb_q),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            print!("{}", report.render(cli.format));
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
