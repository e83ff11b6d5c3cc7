//! One function per subcommand, each producing a [`Report`].

use std::cmp::Ordering;
use std::path::{Path, PathBuf};

use listcolor::analytic::{
    check_lemma_bounds, compute_q, exact_f_sign, poly_coeffs, ratio_scan, BoundParams,
};
use listcolor::coloring::validate_partial;
use listcolor::exact::{chi_ell, find_list_coloring, is_s_choosable, lambda_t, Budget};
use listcolor::scheme::{derandomize, monte_carlo};

use crate::error::{CliError, Result};
use crate::input::{load_graph, load_lists, GraphArgs, ListArgs};
use crate::report::{Check, Grid, Report};

fn json_number(x: f64) -> serde_json::Value {
    serde_json::Number::from_f64(x).map_or(serde_json::Value::Null, serde_json::Value::Number)
}

fn embedded_json(text: &str) -> serde_json::Value {
    serde_json::from_str(text).expect("library JSON output is well-formed")
}

/// `q`: the certified root for one parameter pair, with the lemma bounds.
pub fn cmd_q(s: u32, t: u32, tol: f64) -> Result<Report> {
    let params = BoundParams::new(s, t)?;
    let bounds = check_lemma_bounds(params)?;
    let q = compute_q(params, tol)?;

    let mut report = Report::new("q");
    report.push("s", s);
    report.push("t", t);
    report.push("u", params.u());
    report.push("q", json_number(q.q));
    report.push("bracket_lo", json_number(q.bracket_lo));
    report.push("bracket_hi", json_number(q.bracket_hi));
    report.push("bracket_width", json_number(q.bracket_hi - q.bracket_lo));
    report.push("residual", json_number(q.residual));
    report.push("lemma_lower", json_number(bounds.lower));
    report.push("lemma_upper", json_number(bounds.upper));
    if t > 1 {
        let poly = poly_coeffs(params)?;
        report.push("polynomial", poly.to_string());
        let coeffs: Vec<serde_json::Value> = poly
            .coeffs()
            .iter()
            .map(|c| serde_json::Value::String(c.to_string()))
            .collect();
        report.json_extra.push((
            "polynomial_coeffs_ascending".into(),
            serde_json::Value::Array(coeffs),
        ));
    }

    // Re-certify the reported bracket through the public exact-sign route.
    let lo_sign = exact_f_sign(params, q.bracket_lo)?;
    let hi_sign = exact_f_sign(params, q.bracket_hi)?;
    report.checks.push(Check::new(
        "root bracket exactly certified",
        "sign f(lo) >= 0 >= sign f(hi)",
        format!("sign f(lo) = {lo_sign:?}, sign f(hi) = {hi_sign:?}"),
        lo_sign != Ordering::Less && hi_sign != Ordering::Greater,
    ));
    report.checks.push(Check::new(
        "strict lower bound (6/7)(t/s) < q",
        format!("q > {:.12}", bounds.lower),
        format!("q = {:.12}, exact verdict {}", q.q, bounds.lower_ok),
        bounds.lower_ok,
    ));
    report.checks.push(Check::new(
        "upper bound q <= t/s",
        format!("q <= {:.12}", bounds.upper),
        format!("q = {:.12}, exact verdict {}", q.q, bounds.upper_ok),
        bounds.upper_ok,
    ));
    Ok(report)
}

/// `ratio`: the normalized-root scan with the limit curve.
pub fn cmd_ratio(s_max: u32) -> Result<Report> {
    let scan = ratio_scan(s_max)?;

    let mut report = Report::new("ratio");
    report.push("s_max", s_max);
    report.push("entries", scan.grid.len());
    report.push("grid_min", json_number(scan.grid_min));
    report.push("grid_argmin_s", scan.grid_argmin.0);
    report.push("grid_argmin_t", scan.grid_argmin.1);
    report.push("limit_min", json_number(scan.limit_min));
    report.push("limit_argmin_v", json_number(scan.limit_argmin_v));

    let rows: Vec<Vec<String>> = scan
        .grid
        .iter()
        .map(|e| {
            vec![
                e.s.to_string(),
                e.t.to_string(),
                format!("{:.15}", e.q),
                format!("{:.15}", e.ratio),
            ]
        })
        .collect();
    report.grid = Some(Grid {
        key: "grid",
        header: vec!["s", "t", "q", "ratio"],
        rows,
    });

    // The reported q is a bracket midpoint; at t = 1 the true ratio is
    // exactly 1, so allow s * (bracket width) / 2 of numeric headroom.
    let lower = 6.0 / 7.0;
    let in_range = scan
        .grid
        .iter()
        .find(|e| !(e.ratio > lower && e.ratio <= 1.0 + 1e-9));
    report.checks.push(Check::new(
        "all ratios within (6/7, 1]",
        "q / (t/s) in (6/7, 1] for every pair",
        match in_range {
            None => format!("all {} entries in range", scan.grid.len()),
            Some(e) => format!("(s,t) = ({},{}) has ratio {}", e.s, e.t, e.ratio),
        },
        in_range.is_none(),
    ));
    report.checks.push(Check::new(
        "grid minimum above 6/7",
        format!("grid_min > {lower:.12}"),
        format!("grid_min = {:.12}", scan.grid_min),
        scan.grid_min > lower,
    ));
    Ok(report)
}

fn graph_preamble(report: &mut Report, label: &str, g: &listcolor::graph::Graph) {
    report.push("graph", label);
    report.push("n", g.n());
    report.push("edges", g.edge_count());
}

fn budget_postamble(report: &mut Report, budget: &Budget) {
    report.push("budget_limit", budget.limit());
    report.push("budget_used", budget.used());
}

/// `lambda`: the partial list coloring number for one t.
pub fn cmd_lambda(
    graph_args: &GraphArgs,
    t: u32,
    palette_cap: Option<u32>,
    budget_flag: Option<u64>,
) -> Result<Report> {
    let (g, label) = load_graph(graph_args)?;
    let mut budget = crate::input::resolve_budget(budget_flag)?;
    let result = lambda_t(&g, t, palette_cap, &mut budget)?;

    let mut report = Report::new("lambda");
    graph_preamble(&mut report, &label, &g);
    report.push("t", t);
    report.push("palette_cap", palette_cap.unwrap_or(g.n() * t));
    report.push("lambda", result.value);
    budget_postamble(&mut report, &budget);
    report.json_extra.push((
        "witness_assignment".into(),
        embedded_json(&result.witness_assignment.to_json()),
    ));
    report.json_extra.push((
        "witness_coloring".into(),
        embedded_json(&result.witness_coloring.to_json()),
    ));

    // The witness must actually attain the reported value.
    let validation = validate_partial(&g, &result.witness_assignment, &result.witness_coloring);
    report.checks.push(Check::new(
        "witness coloring valid and attains lambda",
        format!("valid partial coloring with {} vertices", result.value),
        format!(
            "valid = {}, colored = {}",
            validation.ok, validation.colored_count
        ),
        validation.ok && validation.colored_count == result.value,
    ));
    Ok(report)
}

/// `chi-ell`: list chromatic number with the ordinary chromatic number.
pub fn cmd_chi_ell(graph_args: &GraphArgs, budget_flag: Option<u64>) -> Result<Report> {
    let (g, label) = load_graph(graph_args)?;
    let mut budget = crate::input::resolve_budget(budget_flag)?;
    let result = chi_ell(&g, &mut budget)?;

    let mut report = Report::new("chi-ell");
    graph_preamble(&mut report, &label, &g);
    report.push("chi_ell", result.chi_ell);
    report.push("chi", result.chi);
    budget_postamble(&mut report, &budget);
    if let Some(bad) = &result.bad_assignment {
        report.json_extra.push((
            "bad_assignment_below_threshold".into(),
            embedded_json(&bad.to_json()),
        ));
        report.checks.push(Check::new(
            "witness below threshold certified uncolorable",
            format!("some {}-assignment admits no full coloring", result.chi_ell - 1),
            "witness re-checked with the exhaustive solver",
            find_list_coloring(&g, bad).is_none(),
        ));
    }
    Ok(report)
}

/// `choosable`: decide s-choosability.  The verdict is data, not a check:
/// "not choosable" still exits 0.
pub fn cmd_choosable(
    graph_args: &GraphArgs,
    s: u32,
    palette_cap: Option<u32>,
    budget_flag: Option<u64>,
) -> Result<Report> {
    let (g, label) = load_graph(graph_args)?;
    let mut budget = crate::input::resolve_budget(budget_flag)?;
    let verdict = is_s_choosable(&g, s, palette_cap, &mut budget)?;

    let mut report = Report::new("choosable");
    graph_preamble(&mut report, &label, &g);
    report.push("s", s);
    report.push("palette_cap", palette_cap.unwrap_or(g.n() * s));
    report.push("choosable", verdict.ok);
    budget_postamble(&mut report, &budget);
    if let Some(bad) = &verdict.bad {
        report
            .json_extra
            .push(("bad_assignment".into(), embedded_json(&bad.to_json())));
        report.checks.push(Check::new(
            "bad assignment certified uncolorable",
            "the reported assignment admits no full coloring",
            "witness re-checked with the exhaustive solver",
            find_list_coloring(&g, bad).is_none(),
        ));
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Mode {
    /// Deterministic conditional-expectations coloring with a guaranteed floor.
    Derand,
    /// Seeded Monte Carlo sampling of the random partition.
    Mc,
}

/// `color`: run the partition scheme on a concrete instance.
#[allow(clippy::too_many_arguments)]
pub fn cmd_color(
    graph_args: &GraphArgs,
    list_args: &ListArgs,
    s: u32,
    mode: Mode,
    trials: u32,
    seed: u64,
    out: Option<&PathBuf>,
) -> Result<Report> {
    let (g, graph_label) = load_graph(graph_args)?;
    let (lists, lists_label) = load_lists(&g, list_args, seed)?;

    let mut report = Report::new("color");
    graph_preamble(&mut report, &graph_label, &g);
    report.push("lists", lists_label);
    report.push("s", s);

    match mode {
        Mode::Derand => {
            let outcome = derandomize(&g, &lists, s)?;
            report.push("mode", "derand");
            report.push("q", json_number(outcome.q_used));
            report.push("expected_count", json_number(outcome.expected_count));
            report.push("guaranteed_floor", outcome.guaranteed_floor);
            report.push("colored_count", outcome.colored_count);
            report.push("min_step_delta", json_number(outcome.min_step_delta));
            report
                .json_extra
                .push(("coloring".into(), embedded_json(&outcome.coloring.to_json())));

            let validation = validate_partial(&g, &lists, &outcome.coloring);
            report.checks.push(Check::new(
                "output is a proper partial list coloring",
                "no violations",
                format!("violations = {:?}", validation.violations),
                validation.ok,
            ));
            report.checks.push(Check::new(
                "guaranteed floor met",
                format!("colored_count >= {}", outcome.guaranteed_floor),
                format!("colored_count = {}", outcome.colored_count),
                outcome.colored_count >= outcome.guaranteed_floor,
            ));
            report.checks.push(Check::new(
                "conditional expectation never decreased",
                "min step delta >= -1e-12",
                format!("min step delta = {:e}", outcome.min_step_delta),
                outcome.min_step_delta >= -1e-12,
            ));

            if let Some(path) = out {
                write_coloring(path, &outcome.coloring.to_json())?;
                report.push("out", path.display().to_string());
            }
        }
        Mode::Mc => {
            if out.is_some() {
                return Err(CliError::usage(
                    "--out stores the deterministic coloring; it needs --mode derand",
                ));
            }
            let stats = monte_carlo(&g, &lists, s, trials, seed)?;
            report.push("mode", "mc");
            report.push("trials", stats.trials);
            report.push("q", json_number(stats.q));
            report.push("mean_fraction", json_number(stats.mean_fraction));
            report.push("stddev", json_number(stats.stddev));
            report.push("min_fraction", json_number(stats.min_fraction));
            report.push("max_fraction", json_number(stats.max_fraction));

            // Per-vertex success probability is >= q, so the sample mean may
            // fall below q only by sampling error.
            let sem = stats.stddev / f64::from(stats.trials).sqrt();
            report.checks.push(Check::new(
                "mean colored fraction is at least q (4 sigma)",
                format!("mean >= {:.6} - {:.6}", stats.q, 4.0 * sem),
                format!("mean = {:.6}", stats.mean_fraction),
                stats.mean_fraction >= stats.q - 4.0 * sem - 1e-9,
            ));
        }
    }
    Ok(report)
}

fn write_coloring(path: &Path, json: &str) -> Result<()> {
    std::fs::write(path, json)
        .map_err(|err| CliError::usage(format!("cannot write {}: {err}", path.display())))
}
