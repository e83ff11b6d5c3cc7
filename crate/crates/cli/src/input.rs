//! Shared input plumbing: graph sources (DIMACS file or built-in family),
//! list sources (JSON file or seeded random lists), and the node-budget
//! resolution order (flag, then environment, then default).

use std::path::{Path, PathBuf};

use clap::Args;
use listcolor::coloring::ListAssignment;
use listcolor::exact::Budget;
use listcolor::graph::{generate, parse_dimacs, Graph, GraphFamily};

use crate::error::{CliError, Result};

pub const BUDGET_ENV_VAR: &str = "LISTCOLOR_NODE_BUDGET";

#[derive(Debug, Args)]
pub struct GraphArgs {
    /// DIMACS graph file (`p edge N M` + `e U V` lines).
    #[arg(long, value_name = "FILE")]
    pub graph: Option<PathBuf>,

    /// Built-in family: complete, cycle, complete-bipartite, petersen.
    #[arg(long, value_name = "NAME", conflicts_with = "graph")]
    pub family: Option<String>,

    /// Family size: a number for complete/cycle, "A,B" for
    /// complete-bipartite; petersen takes none.
    #[arg(long, value_name = "K", requires = "family")]
    pub n: Option<String>,
}

#[derive(Debug, Args)]
pub struct ListArgs {
    /// JSON list-assignment file ({"t": ..., "lists": {"1": [..], ...}}).
    #[arg(long, value_name = "FILE")]
    pub lists: Option<PathBuf>,

    /// Instead of a file: draw a uniform random list of this size for every
    /// vertex.
    #[arg(long = "random-lists", value_name = "T", conflicts_with = "lists")]
    pub random_lists: Option<u32>,

    /// Palette size for --random-lists (default 2*T).
    #[arg(long, value_name = "P", requires = "random_lists")]
    pub palette: Option<u32>,
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|err| CliError::usage(format!("cannot read {}: {err}", path.display())))
}

/// Load the graph and a short label describing where it came from.
/// DIMACS warnings (e.g. a declared edge count that does not match) go to
/// stderr; they do not affect the exit code.
pub fn load_graph(args: &GraphArgs) -> Result<(Graph, String)> {
    match (&args.graph, &args.family) {
        (Some(path), None) => {
            let text = read_file(path)?;
            let (graph, warnings) = parse_dimacs(&text)?;
            for warning in warnings {
                eprintln!("warning: {}: {warning}", path.display());
            }
            Ok((graph, path.display().to_string()))
        }
        (None, Some(name)) => {
            let family = parse_family(name, args.n.as_deref())?;
            let label = family_label(family);
            let graph = generate(family)?;
            Ok((graph, label))
        }
        _ => Err(CliError::usage(
            "provide exactly one graph source: --graph FILE or --family NAME [--n K]",
        )),
    }
}

fn parse_count(text: &str, what: &str) -> Result<u32> {
    text.trim()
        .parse::<u32>()
        .map_err(|_| CliError::usage(format!("{what} must be a positive integer, got {text:?}")))
}

fn parse_family(name: &str, n: Option<&str>) -> Result<GraphFamily> {
    let need_n = |what: &str| {
        n.ok_or_else(|| CliError::usage(format!("--family {what} needs --n")))
    };
    match name.to_ascii_lowercase().as_str() {
        "complete" => Ok(GraphFamily::Complete(parse_count(need_n("complete")?, "--n")?)),
        "cycle" => Ok(GraphFamily::Cycle(parse_count(need_n("cycle")?, "--n")?)),
        "complete-bipartite" | "complete_bipartite" => {
            let spec = need_n("complete-bipartite")?;
            let (a, b) = spec.split_once(',').ok_or_else(|| {
                CliError::usage(format!(
                    "--family complete-bipartite needs --n A,B, got {spec:?}"
                ))
            })?;
            Ok(GraphFamily::CompleteBipartite(
                parse_count(a, "--n side A")?,
                parse_count(b, "--n side B")?,
            ))
        }
        "petersen" => {
            if n.is_some() {
                return Err(CliError::usage("--family petersen takes no --n"));
            }
            Ok(GraphFamily::Petersen)
        }
        other => Err(CliError::usage(format!(
            "unknown family {other:?}; choose complete, cycle, complete-bipartite, or petersen"
        ))),
    }
}

fn family_label(family: GraphFamily) -> String {
    match family {
        GraphFamily::Complete(n) => format!("complete({n})"),
        GraphFamily::Cycle(n) => format!("cycle({n})"),
        GraphFamily::CompleteBipartite(a, b) => format!("complete-bipartite({a},{b})"),
        GraphFamily::Petersen => "petersen".to_string(),
    }
}

/// Load the list assignment and a short label.  `seed` feeds the random
/// source when --random-lists is chosen.
pub fn load_lists(g: &Graph, args: &ListArgs, seed: u64) -> Result<(ListAssignment, String)> {
    match (&args.lists, args.random_lists) {
        (Some(path), None) => {
            let text = read_file(path)?;
            let lists = ListAssignment::from_json(&text)?;
            Ok((lists, path.display().to_string()))
        }
        (None, Some(t)) => {
            let palette = args.palette.unwrap_or(2 * t);
            let lists = ListAssignment::random_uniform(g, t, palette, seed)?;
            Ok((
                lists,
                format!("random(t={t}, palette={palette}, seed={seed})"),
            ))
        }
        _ => Err(CliError::usage(
            "provide exactly one list source: --lists FILE or --random-lists T [--palette P]",
        )),
    }
}

/// Budget resolution: explicit flag, then the environment variable, then the
/// library default.
pub fn resolve_budget(flag: Option<u64>) -> Result<Budget> {
    if let Some(limit) = flag {
        return Ok(Budget::new(limit));
    }
    match std::env::var(BUDGET_ENV_VAR) {
        Ok(text) => {
            let limit = text.trim().parse::<u64>().map_err(|_| {
                CliError::usage(format!(
                    "{BUDGET_ENV_VAR} must be a nonnegative integer, got {text:?}"
                ))
            })?;
            Ok(Budget::new(limit))
        }
        Err(std::env::VarError::NotPresent) => Ok(Budget::new(Budget::DEFAULT_LIMIT)),
        Err(err) => Err(CliError::usage(format!("cannot read {BUDGET_ENV_VAR}: {err}"))),
    }
}
