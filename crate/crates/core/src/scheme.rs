//! The random partition scheme behind the lower bound, and its
//! derandomization.
//!
//! Fix a graph `G` with uniform `t`-lists and an `s > t` such that `G` is
//! `s`-choosable, and put `u = s - t`.  Let `R` be the union of all lists.
//!
//! 1. Pick `u` fresh colors `pi_1 < ... < pi_u` outside `R` and augment
//!    every list with all of them; the augmented lists have size `s`, so a
//!    proper total coloring `phi` exists.  Let `I_i = phi^{-1}(pi_i)` (each
//!    one an independent set) and let `H` be the subgraph induced by the
//!    remaining vertices, which `phi` colors from their own lists.
//! 2. Partition `R` randomly into classes `R_0, R_1, ..., R_u`: each color
//!    independently goes to `R_0` with probability `q` and to each `R_i`
//!    with probability `(1-q)/u`.  Keep an `H`-vertex's color if it landed
//!    in `R_0`; recolor an `I_i`-vertex with the smallest color of
//!    `list(v) ∩ R_i` if any.  The result is a proper partial coloring.
//! 3. A vertex of `H` survives with probability `q`; a vertex of `I_i`
//!    survives with probability `1 - prod_{c in list} P(c not in R_i)
//!    = 1 - [1 - (1-q)/u]^t >= q` exactly when `f_{s,t}(q) >= 0`.  At the
//!    root `q = q_{s,t}` the expected number of colored vertices is
//!    `q*n + |I|*f(q) ≈ q*n`, so some outcome colors at least `ceil(q*n)`
//!    vertices.
//!
//! [`derandomize`] finds such an outcome deterministically by the method of
//! conditional expectations: colors are decided one at a time, each into the
//! class that maximizes the conditional expectation, which never decreases.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analytic::{compute_q, BoundParams, DEFAULT_Q_TOL};
use crate::coloring::{ListAssignment, PartialColoring};
use crate::error::{Error, Result};
use crate::exact::find_list_coloring;
use crate::graph::Graph;

/// Everything fixed by step 1 of the scheme: the fresh colors, the total
/// coloring of the augmented lists, the independent sets, and the core.
#[derive(Debug, Clone)]
pub struct SchemeState {
    s: u32,
    t: u32,
    color_union: BTreeSet<u32>,
    pi_colors: Vec<u32>,
    phi: BTreeMap<u32, u32>,
    independent_sets: Vec<BTreeSet<u32>>,
    /// `branch_of[v] = i` iff `v` is in `I_i` (1-based); vertices of `H`
    /// are absent.
    branch_of: BTreeMap<u32, usize>,
    core: BTreeSet<u32>,
}

impl SchemeState {
    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn u(&self) -> u32 {
        self.s - self.t
    }

    /// `R`: the union of the original lists.
    pub fn color_union(&self) -> &BTreeSet<u32> {
        &self.color_union
    }

    /// The fresh colors `pi_1 < ... < pi_u`, disjoint from `R`.
    pub fn pi_colors(&self) -> &[u32] {
        &self.pi_colors
    }

    /// The proper total coloring of the augmented lists.
    pub fn phi(&self, v: u32) -> Option<u32> {
        self.phi.get(&v).copied()
    }

    /// `I_i` for `i` in `1..=u`.
    pub fn independent_set(&self, i: usize) -> Option<&BTreeSet<u32>> {
        (1..=self.independent_sets.len())
            .contains(&i)
            .then(|| &self.independent_sets[i - 1])
    }

    /// Vertices that `phi` colors from their own lists (the subgraph `H`).
    pub fn core(&self) -> &BTreeSet<u32> {
        &self.core
    }

    /// Which `I_i` the vertex belongs to, if any.
    pub fn branch_of(&self, v: u32) -> Option<usize> {
        self.branch_of.get(&v).copied()
    }
}

/// Step 1 of the scheme.  Needs uniform `t`-lists covering every vertex and
/// `s > t`; fails with a scheme-inapplicability error if the augmented lists
/// admit no proper total coloring (i.e. `g` is demonstrably not
/// `s`-choosable).
pub fn build_scheme(g: &Graph, lists: &ListAssignment, s: u32) -> Result<SchemeState> {
    if g.n() == 0 {
        return Err(Error::InvalidParams(
            "the scheme needs at least one vertex".into(),
        ));
    }
    let Some(t) = lists.uniform_size() else {
        return Err(Error::InvalidParams(
            "the scheme needs uniform list sizes (and at least one list)".into(),
        ));
    };
    for v in g.vertices() {
        if lists.get(v).is_none() {
            return Err(Error::InvalidParams(format!(
                "vertex {v} has no list; the scheme needs a t-list on every vertex"
            )));
        }
    }
    BoundParams::new(s, t)?; // validates s > t >= 1
    let u = s - t;
    let color_union = lists.color_union();
    let max_color = color_union.iter().next_back().copied().unwrap_or(0);
    let pi_colors: Vec<u32> = (1..=u).map(|i| max_color + i).collect();

    let augmented_lists: BTreeMap<u32, BTreeSet<u32>> = lists
        .iter()
        .map(|(v, list)| {
            let mut aug = list.clone();
            aug.extend(pi_colors.iter().copied());
            (v, aug)
        })
        .collect();
    let augmented = ListAssignment::new(augmented_lists)?;
    let Some(phi_coloring) = find_list_coloring(g, &augmented) else {
        return Err(Error::SchemeInapplicable(format!(
            "the augmented {s}-lists admit no proper total coloring, \
             so the graph is not {s}-choosable"
        )));
    };

    let phi: BTreeMap<u32, u32> = phi_coloring.colored().collect();
    let mut independent_sets = vec![BTreeSet::new(); u as usize];
    let mut branch_of = BTreeMap::new();
    let mut core = BTreeSet::new();
    for (&v, &c) in &phi {
        match pi_colors.iter().position(|&p| p == c) {
            Some(idx) => {
                independent_sets[idx].insert(v);
                branch_of.insert(v, idx + 1);
            }
            None => {
                core.insert(v);
            }
        }
    }
    for (idx, set) in independent_sets.iter().enumerate() {
        debug_assert!(
            set.iter()
                .all(|&a| set.iter().all(|&b| b <= a || !g.has_edge(a, b))),
            "phi is proper, so I_{} must be independent",
            idx + 1
        );
    }
    Ok(SchemeState {
        s,
        t,
        color_union,
        pi_colors,
        phi,
        independent_sets,
        branch_of,
        core,
    })
}

/// A partition of `R` into classes `R_0, ..., R_u`, stored as a class index
/// for every color.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    class_of: BTreeMap<u32, usize>,
    num_classes: usize,
}

impl Partition {
    pub fn new(class_of: BTreeMap<u32, usize>, num_classes: usize) -> Result<Self> {
        if num_classes == 0 {
            return Err(Error::InvalidParams("a partition needs classes".into()));
        }
        for (&color, &class) in &class_of {
            if class >= num_classes {
                return Err(Error::InvalidParams(format!(
                    "color {color} assigned to class {class}, but only {num_classes} classes exist"
                )));
            }
        }
        Ok(Partition {
            class_of,
            num_classes,
        })
    }

    /// Class index of `color` (0 = keep, `i >= 1` = recolor branch `i`).
    pub fn class_of(&self, color: u32) -> Option<usize> {
        self.class_of.get(&color).copied()
    }

    /// Number of classes, `u + 1`.
    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    /// The colors in class `i`, ascending.
    pub fn class(&self, i: usize) -> BTreeSet<u32> {
        self.class_of
            .iter()
            .filter(|&(_, &class)| class == i)
            .map(|(&color, _)| color)
            .collect()
    }

    pub fn colors(&self) -> impl Iterator<Item = u32> + '_ {
        self.class_of.keys().copied()
    }
}

/// Step 2, randomized: each color of `R` goes to `R_0` with probability `q`
/// and to each of `R_1, ..., R_u` with probability `(1-q)/u`, independently,
/// colors drawn in ascending order from a seeded generator.
pub fn random_partition(state: &SchemeState, q: f64, seed: u64) -> Result<Partition> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::Domain(format!(
            "partition probability q must lie strictly inside (0, 1), got {q}"
        )));
    }
    let u = state.u() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut class_of = BTreeMap::new();
    for &color in state.color_union() {
        let x: f64 = rng.gen();
        let class = if x < q {
            0
        } else {
            // The slice [q, 1) is split evenly into u class intervals.
            let idx = 1 + (((x - q) / (1.0 - q)) * u as f64) as usize;
            idx.min(u)
        };
        class_of.insert(color, class);
    }
    Partition::new(class_of, u + 1)
}

/// Step 2, deterministic readout: the partial coloring induced by a
/// partition.  An `H`-vertex keeps `phi(v)` iff that color is in `R_0`; an
/// `I_i`-vertex takes the smallest color of `list(v) ∩ R_i`, if any.
pub fn color_from_partition(
    g: &Graph,
    lists: &ListAssignment,
    state: &SchemeState,
    partition: &Partition,
) -> PartialColoring {
    let mut pc = PartialColoring::empty();
    for v in g.vertices() {
        let assigned = match state.branch_of(v) {
            None => {
                // H-vertex: phi(v) is one of v's own list colors.
                let c = state.phi(v).expect("phi is total");
                (partition.class_of(c) == Some(0)).then_some(c)
            }
            Some(branch) => lists
                .get(v)
                .and_then(|list| {
                    list.iter()
                        .find(|&&c| partition.class_of(c) == Some(branch))
                })
                .copied(),
        };
        match assigned {
            Some(c) => pc.set(v, c),
            None => pc.set_uncolored(v),
        }
    }
    pc
}

/// Aggregate statistics over seeded Monte Carlo trials of the scheme.
#[derive(Debug, Clone, Copy)]
pub struct MonteCarloStats {
    pub trials: u32,
    /// The root `q_{s,t}` used as the partition probability.
    pub q: f64,
    /// Mean colored fraction over the trials.
    pub mean_fraction: f64,
    /// Sample standard deviation of the per-trial colored fraction.
    pub stddev: f64,
    pub min_fraction: f64,
    pub max_fraction: f64,
}

/// Run `trials` independent random partitions (trial `k` uses seed
/// `seed + k`) and aggregate the colored fractions.  The per-vertex success
/// probability is at least `q`, so the mean tracks `q` from above.
pub fn monte_carlo(
    g: &Graph,
    lists: &ListAssignment,
    s: u32,
    trials: u32,
    seed: u64,
) -> Result<MonteCarloStats> {
    if trials == 0 {
        return Err(Error::InvalidParams(
            "monte_carlo needs at least one trial".into(),
        ));
    }
    let state = build_scheme(g, lists, s)?;
    let params = BoundParams::new(s, state.t())?;
    let q = compute_q(params, DEFAULT_Q_TOL)?.q;
    let n = f64::from(g.n());
    let mut fractions = Vec::with_capacity(trials as usize);
    for k in 0..trials {
        let partition = random_partition(&state, q, seed.wrapping_add(u64::from(k)))?;
        let coloring = color_from_partition(g, lists, &state, &partition);
        fractions.push(coloring.colored_count() as f64 / n);
    }
    let mean = fractions.iter().sum::<f64>() / fractions.len() as f64;
    let variance = if fractions.len() < 2 {
        0.0
    } else {
        fractions.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (fractions.len() - 1) as f64
    };
    Ok(MonteCarloStats {
        trials,
        q,
        mean_fraction: mean,
        stddev: variance.sqrt(),
        min_fraction: fractions.iter().copied().fold(f64::INFINITY, f64::min),
        max_fraction: fractions.iter().copied().fold(0.0, f64::max),
    })
}

/// The outcome of one deterministic (or one sampled) run of the scheme.
#[derive(Debug, Clone)]
pub struct SchemeOutcome {
    pub coloring: PartialColoring,
    pub colored_count: usize,
    /// The expectation `q*n + |I|*f(q)` the derandomization starts from.
    pub expected_count: f64,
    /// The partition probability used, `q_{s,t}`.
    pub q_used: f64,
    /// Smallest conditional-expectation increment accepted across all color
    /// decisions; the method guarantees it is nonnegative up to rounding.
    pub min_step_delta: f64,
    /// `ceil(q*n - 1e-6)`, the count the outcome is guaranteed to reach.
    pub guaranteed_floor: usize,
}

/// Derandomize the scheme by conditional expectations.
///
/// Colors of `R` are decided in ascending order.  With `m = 1 - (1-q)/u`,
/// the conditional expectation given the decisions so far is
///
/// * for an `H`-vertex: 1 if `phi(v)` was sent to `R_0`, 0 if sent
///   elsewhere, `q` while undecided;
/// * for an `I_i`-vertex: 1 if some list color was already sent to `R_i`,
///   else `1 - m^(number of undecided list colors)`.
///
/// Each color goes to the class maximizing the new total (ties: `R_0`, then
/// the lowest class index).  The conditional expectation never decreases, so
/// the final integer count is at least the initial expectation, i.e. at
/// least `ceil(q*n - 1e-6)`.
pub fn derandomize(g: &Graph, lists: &ListAssignment, s: u32) -> Result<SchemeOutcome> {
    let state = build_scheme(g, lists, s)?;
    let params = BoundParams::new(s, state.t())?;
    let q = compute_q(params, DEFAULT_Q_TOL)?.q;
    let u = state.u() as usize;
    let m = 1.0 - (1.0 - q) / u as f64;

    // H-vertices, grouped by their phi color.
    let mut h_undecided: BTreeMap<u32, usize> = BTreeMap::new();
    for &v in state.core() {
        let c = state.phi(v).expect("phi is total");
        *h_undecided.entry(c).or_insert(0) += 1;
    }

    // I-vertex bookkeeping: which branch it wants, how many of its list
    // colors are undecided, and whether one already landed in its branch.
    struct IVertex {
        branch: usize,
        undecided: i32,
        hit: bool,
    }
    let mut ivertices: BTreeMap<u32, IVertex> = BTreeMap::new();
    let mut touching: BTreeMap<u32, Vec<u32>> = BTreeMap::new(); // color -> I-vertices listing it
    for (&v, &branch) in &state.branch_of {
        let list = lists.get(v).expect("build_scheme checked coverage");
        ivertices.insert(
            v,
            IVertex {
                branch,
                undecided: list.len() as i32,
                hit: false,
            },
        );
        for &c in list {
            touching.entry(c).or_default().push(v);
        }
    }

    let t = state.t();
    let expected_count = q * state.core().len() as f64
        + ivertices.len() as f64 * (1.0 - m.powi(t as i32));

    let mut expectation = expected_count;
    let mut min_step_delta = f64::INFINITY;
    let mut class_of: BTreeMap<u32, usize> = BTreeMap::new();

    let colors: Vec<u32> = state.color_union().iter().copied().collect();
    for &color in &colors {
        let h_count = h_undecided.get(&color).copied().unwrap_or(0) as f64;
        let empty = Vec::new();
        let listeners = touching.get(&color).unwrap_or(&empty);

        // Delta of the conditional expectation if `color` goes to class k.
        let mut best_class = 0;
        let mut best_delta = f64::NEG_INFINITY;
        for k in 0..=u {
            let mut delta = if k == 0 { h_count * (1.0 - q) } else { -h_count * q };
            for v in listeners {
                let iv = &ivertices[v];
                if iv.hit {
                    continue; // already locked at 1
                }
                let survival = m.powi(iv.undecided - 1);
                if k == iv.branch {
                    delta += survival * m; // from 1 - m^undecided up to 1
                } else {
                    delta -= survival * (1.0 - m); // one fewer chance
                }
            }
            if delta > best_delta {
                best_delta = delta;
                best_class = k; // first strict max: ties go to R_0, then low k
            }
        }

        assert!(
            best_delta >= -1e-9,
            "conditional expectation must not decrease (delta = {best_delta})"
        );
        expectation += best_delta;
        min_step_delta = min_step_delta.min(best_delta);
        class_of.insert(color, best_class);

        // Apply the decision to the bookkeeping.
        h_undecided.remove(&color);
        for v in listeners {
            let iv = ivertices.get_mut(v).expect("listener exists");
            if iv.hit {
                continue;
            }
            iv.undecided -= 1;
            if best_class == iv.branch {
                iv.hit = true;
            }
        }
    }

    let partition = Partition::new(class_of, u + 1)?;
    let coloring = color_from_partition(g, lists, &state, &partition);
    let colored_count = coloring.colored_count();
    debug_assert!(
        (expectation - colored_count as f64).abs() < 1e-6,
        "fully decided expectation {expectation} must equal the colored count {colored_count}"
    );

    let guaranteed_floor = (q * f64::from(g.n()) - 1e-6).ceil() as usize;
    assert!(
        colored_count >= guaranteed_floor,
        "derandomization colored {colored_count} < guaranteed {guaranteed_floor}"
    );
    if colors.is_empty() {
        min_step_delta = 0.0;
    }
    Ok(SchemeOutcome {
        coloring,
        colored_count,
        expected_count,
        q_used: q,
        min_step_delta,
        guaranteed_floor,
    })
}
