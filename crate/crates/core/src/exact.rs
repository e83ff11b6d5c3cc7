//! Exhaustive solvers for small instances.
//!
//! Everything here is exact and deterministic: backtracking search for list
//! colorings, branch and bound for maximum partial colorings, and
//! choosability / `lambda_t` computations that enumerate list assignments up
//! to color renaming.  The enumerating searches charge an explicit node
//! budget and report a resource error when it runs out, so "unknown" is
//! never silently turned into an answer.
//!
//! # Canonical enumeration
//!
//! Two list assignments that differ only by renaming colors behave
//! identically, so assignments are enumerated in *canonical* form, a
//! restricted-growth discipline over vertex indices: vertex 1 always
//! receives `{1, ..., t}`, and each later vertex picks some subset of the
//! colors seen so far, topped up with the next unused color indices.  Any
//! assignment whose lists use `k` distinct colors is color-renamable to a
//! canonical one, and `n` lists of size `t` can mention at most `n * t`
//! distinct colors, which is why the default palette cap of `n * t` loses
//! nothing.  Candidates at each vertex are generated in lexicographic order
//! (as sorted `t`-tuples), so "first witness found" is a deterministic,
//! order-independent notion.

use std::collections::{BTreeMap, BTreeSet};

use crate::coloring::{ListAssignment, PartialColoring};
use crate::error::{Error, Result};
use crate::graph::{degeneracy_bound, Graph};

/// Search-node budget shared by the solvers in this module.  One unit is
/// charged per backtracking node and per enumerated candidate list.
#[derive(Debug, Clone)]
pub struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    /// Default node limit: enough for every bundled verification instance,
    /// small enough to stop runaway inputs within minutes.
    pub const DEFAULT_LIMIT: u64 = 100_000_000;

    pub fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    /// A budget that will not run out in practice.
    pub fn unbounded() -> Self {
        Budget::new(u64::MAX)
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    fn charge(&mut self, amount: u64) -> Result<()> {
        self.used = self.used.saturating_add(amount);
        if self.used > self.limit {
            Err(Error::BudgetExceeded {
                explored: self.used,
                limit: self.limit,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(Self::DEFAULT_LIMIT)
    }
}

/// Lists indexed by vertex (entry 0 unused); vertices beyond the slice hold
/// the empty list.
type ListSlice = [BTreeSet<u32>];

fn lists_as_vec(g: &Graph, lists: &ListAssignment) -> Vec<BTreeSet<u32>> {
    let mut out = vec![BTreeSet::new(); g.n() as usize + 1];
    for (v, list) in lists.iter() {
        if g.contains_vertex(v) {
            out[v as usize] = list.clone();
        }
    }
    out
}

fn list_of(lists: &ListSlice, v: u32) -> Option<&BTreeSet<u32>> {
    lists.get(v as usize)
}

/// Deterministic backtracking for a *total* coloring of vertices `1..=upto`
/// from their lists: vertices in index order, colors in ascending order.
/// Returns the first solution in that order, as a vector indexed by vertex.
fn solve_total(
    g: &Graph,
    lists: &ListSlice,
    upto: u32,
    budget: &mut Budget,
) -> Result<Option<Vec<u32>>> {
    fn extend(
        g: &Graph,
        lists: &ListSlice,
        upto: u32,
        v: u32,
        colors: &mut Vec<u32>,
        budget: &mut Budget,
    ) -> Result<bool> {
        if v > upto {
            return Ok(true);
        }
        let Some(list) = list_of(lists, v) else {
            return Ok(false);
        };
        for &c in list {
            budget.charge(1)?;
            let conflict = g.neighbors(v).any(|w| w < v && colors[w as usize] == c);
            if conflict {
                continue;
            }
            colors[v as usize] = c;
            if extend(g, lists, upto, v + 1, colors, budget)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    let mut colors = vec![0; upto as usize + 1];
    Ok(extend(g, lists, upto, 1, &mut colors, budget)?.then_some(colors))
}

/// Deterministic branch and bound for a maximum partial coloring: vertices
/// in index order; at each vertex the candidates are its legal colors in
/// ascending order, then "leave uncolored" last.  Prunes when
/// `colored so far + vertices left <= best`, so the returned coloring is the
/// lexicographically first maximizer in candidate order.
fn solve_max_partial(
    g: &Graph,
    lists: &ListSlice,
    budget: &mut Budget,
) -> Result<(usize, Vec<Option<u32>>)> {
    struct State<'a> {
        g: &'a Graph,
        lists: &'a ListSlice,
        n: u32,
        best_count: usize,
        best: Vec<Option<u32>>,
        current: Vec<Option<u32>>,
    }

    fn descend(st: &mut State, v: u32, colored: usize, budget: &mut Budget) -> Result<()> {
        if v > st.n {
            if colored > st.best_count {
                st.best_count = colored;
                st.best = st.current.clone();
            }
            return Ok(());
        }
        if colored + (st.n - v + 1) as usize <= st.best_count {
            return Ok(()); // cannot strictly improve
        }
        if let Some(list) = list_of(st.lists, v) {
            for &c in list {
                budget.charge(1)?;
                let conflict = st
                    .g
                    .neighbors(v)
                    .any(|w| w < v && st.current[w as usize] == Some(c));
                if conflict {
                    continue;
                }
                st.current[v as usize] = Some(c);
                descend(st, v + 1, colored + 1, budget)?;
                st.current[v as usize] = None;
            }
        }
        budget.charge(1)?; // the "uncolored" branch
        descend(st, v + 1, colored, budget)
    }

    let n = g.n();
    let mut st = State {
        g,
        lists,
        n,
        best_count: 0,
        best: vec![None; n as usize + 1],
        current: vec![None; n as usize + 1],
    };
    descend(&mut st, 1, 0, budget)?;
    Ok((st.best_count, st.best))
}

fn coloring_from_vec(n: u32, colors: &[Option<u32>]) -> PartialColoring {
    let mut pc = PartialColoring::empty();
    for v in 1..=n {
        match colors.get(v as usize).copied().flatten() {
            Some(c) => pc.set(v, c),
            None => pc.set_uncolored(v),
        }
    }
    pc
}

/// Find a proper coloring of *all* vertices of `g` from their lists, or
/// report that none exists.  Deterministic: vertices in index order, colors
/// ascending, first solution returned.  Intended for small instances — this
/// entry point does not bound its search.
pub fn find_list_coloring(g: &Graph, lists: &ListAssignment) -> Option<PartialColoring> {
    let slice = lists_as_vec(g, lists);
    let solved = solve_total(g, &slice, g.n(), &mut Budget::unbounded())
        .expect("unbounded budget cannot be exceeded")?;
    let mut pc = PartialColoring::empty();
    for v in g.vertices() {
        pc.set(v, solved[v as usize]);
    }
    Some(pc)
}

/// Maximum number of vertices of `g` properly colorable from their lists,
/// with a coloring attaining it.  Deterministic tie-breaking as described at
/// [`solve_max_partial`].
pub fn max_partial_colorable(g: &Graph, lists: &ListAssignment) -> (usize, PartialColoring) {
    let slice = lists_as_vec(g, lists);
    let (count, colors) = solve_max_partial(g, &slice, &mut Budget::unbounded())
        .expect("unbounded budget cannot be exceeded");
    (count, coloring_from_vec(g.n(), &colors))
}

/// What the prefix visitor wants done with the subtree below the current
/// canonical prefix.
enum StepAction {
    Descend,
    Prune,
    Abort,
}

/// Candidate lists for the next vertex given that colors `1..=max_used` have
/// appeared so far: every size-`t` set formed by an increasing choice of old
/// colors topped up with the forced block of fresh colors, in lexicographic
/// order, subject to the palette cap.
fn canonical_candidates(max_used: u32, t: u32, cap: u32) -> Vec<Vec<u32>> {
    fn rec(start: u32, remaining: u32, max_used: u32, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if remaining == 0 {
            out.push(cur.clone());
            return;
        }
        for c in start..=max_used {
            // Keep room: after taking old color c we can always finish with
            // fresh colors, checked at the fresh step below.
            cur.push(c);
            rec(c + 1, remaining - 1, max_used, cap, cur, out);
            cur.pop();
        }
        if max_used + remaining <= cap {
            for i in 1..=remaining {
                cur.push(max_used + i);
            }
            out.push(cur.clone());
            for _ in 0..remaining {
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(1, t, max_used, cap, &mut Vec::with_capacity(t as usize), &mut out);
    out
}

/// Drive `visit` over canonical list assignments, prefix by prefix.
/// `visit` sees lists for vertices `1..=depth` (slice entry 0 is a dummy)
/// and decides whether to extend, skip the subtree, or abort the whole
/// enumeration.  Returns whether the enumeration was aborted.
fn enumerate_canonical<F>(
    n: u32,
    t: u32,
    cap: u32,
    budget: &mut Budget,
    visit: &mut F,
) -> Result<bool>
where
    F: FnMut(&ListSlice, &mut Budget) -> Result<StepAction>,
{
    fn rec<F>(
        n: u32,
        t: u32,
        cap: u32,
        max_used: u32,
        lists: &mut Vec<BTreeSet<u32>>,
        budget: &mut Budget,
        visit: &mut F,
    ) -> Result<bool>
    where
        F: FnMut(&ListSlice, &mut Budget) -> Result<StepAction>,
    {
        let depth = lists.len() as u32; // vertex being assigned now
        for candidate in canonical_candidates(max_used, t, cap) {
            budget.charge(1)?;
            let new_max = max_used.max(*candidate.last().expect("t >= 1"));
            lists.push(candidate.into_iter().collect());
            let action = visit(lists, budget)?;
            let aborted = match action {
                StepAction::Abort => true,
                StepAction::Prune => false,
                StepAction::Descend if depth < n => {
                    rec(n, t, cap, new_max, lists, budget, visit)?
                }
                StepAction::Descend => false, // full assignment visited
            };
            lists.pop();
            if aborted {
                return Ok(true);
            }
        }
        Ok(false)
    }

    if n == 0 {
        return Ok(false);
    }
    let mut lists = Vec::with_capacity(n as usize + 1);
    lists.push(BTreeSet::new()); // dummy vertex 0
    rec(n, t, cap, 0, &mut lists, budget, visit)
}

fn assignment_from_slice(lists: &ListSlice) -> ListAssignment {
    let map: BTreeMap<u32, BTreeSet<u32>> = lists
        .iter()
        .enumerate()
        .skip(1)
        .map(|(v, l)| (v as u32, l.clone()))
        .collect();
    ListAssignment::new(map).expect("canonical lists are nonempty")
}

/// Extend a canonical prefix to all `n` vertices with the lexicographically
/// first candidate, which is always `{1, ..., t}` (vertex 1 already
/// introduced colors `1..=t`).
fn extend_lex_first(lists: &ListSlice, n: u32, t: u32) -> ListAssignment {
    let mut full: Vec<BTreeSet<u32>> = lists.to_vec();
    let first: BTreeSet<u32> = (1..=t).collect();
    while full.len() <= n as usize {
        full.push(first.clone());
    }
    assignment_from_slice(&full)
}

/// Choosability verdict, with a certified bad assignment on failure.
#[derive(Debug, Clone)]
pub struct Choosability {
    pub ok: bool,
    /// The lexicographically first canonical `s`-assignment admitting no
    /// proper total coloring, when `ok` is false.
    pub bad: Option<ListAssignment>,
}

/// Decide whether `g` is `s`-choosable: does every assignment of `s`-lists
/// admit a proper total coloring?  Enumerates canonical assignments over a
/// palette of `palette_cap` colors (default `n * s`, which is complete — see
/// the module notes) and prunes by prefix uncolorability: if the lists of
/// the first `k` vertices already cannot color those `k` vertices, no
/// extension can color everything.
pub fn is_s_choosable(
    g: &Graph,
    s: u32,
    palette_cap: Option<u32>,
    budget: &mut Budget,
) -> Result<Choosability> {
    if s == 0 {
        return Err(Error::InvalidParams("list size s must be positive".into()));
    }
    let n = g.n();
    if n == 0 {
        return Ok(Choosability { ok: true, bad: None });
    }
    let cap = palette_cap.unwrap_or(n * s);
    if cap < s {
        return Err(Error::InvalidParams(format!(
            "palette cap {cap} cannot accommodate a single list of size {s}"
        )));
    }
    let mut bad = None;
    let aborted = enumerate_canonical(n, s, cap, budget, &mut |lists, budget| {
        let depth = lists.len() as u32 - 1;
        if solve_total(g, lists, depth, budget)?.is_some() {
            Ok(StepAction::Descend)
        } else {
            bad = Some(extend_lex_first(lists, n, s));
            Ok(StepAction::Abort)
        }
    })?;
    Ok(Choosability { ok: !aborted, bad })
}

/// The list chromatic number together with the ordinary chromatic number
/// and, when `chi_ell >= 2`, a bad assignment witnessing `chi_ell - 1`.
#[derive(Debug, Clone)]
pub struct ChiResult {
    pub chi_ell: u32,
    pub chi: u32,
    pub bad_assignment: Option<ListAssignment>,
}

/// Smallest `k` such that `g` is properly `k`-colorable, by backtracking
/// over uniform `{1..k}` lists.
pub fn chromatic_number(g: &Graph, budget: &mut Budget) -> Result<u32> {
    let n = g.n();
    for k in 1..=n {
        let lists = vec![(1..=k).collect::<BTreeSet<u32>>(); n as usize + 1];
        if solve_total(g, &lists, n, budget)?.is_some() {
            return Ok(k);
        }
    }
    Ok(0) // only for the empty graph
}

/// Compute `chi_ell(g)` by testing `s`-choosability for ascending `s`.
///
/// Two exact shortcuts keep this tractable: enumeration stops as soon as
/// `s` reaches `degeneracy_bound(g)`, because greedy coloring along the
/// reverse elimination order colors any such lists; and each failing level
/// records its bad assignment, so the witness reported is the one for
/// `chi_ell - 1`.
pub fn chi_ell(g: &Graph, budget: &mut Budget) -> Result<ChiResult> {
    let n = g.n();
    if n == 0 {
        return Ok(ChiResult {
            chi_ell: 0,
            chi: 0,
            bad_assignment: None,
        });
    }
    let chi = chromatic_number(g, budget)?;
    let greedy_bound = degeneracy_bound(g);
    let mut bad_assignment = None;
    for s in 1..=n {
        if s >= greedy_bound {
            return Ok(ChiResult {
                chi_ell: s,
                chi,
                bad_assignment,
            });
        }
        let verdict = is_s_choosable(g, s, None, budget)?;
        if verdict.ok {
            return Ok(ChiResult {
                chi_ell: s,
                chi,
                bad_assignment,
            });
        }
        bad_assignment = verdict.bad;
    }
    unreachable!("every graph is n-choosable and degeneracy_bound <= n");
}

/// `lambda_t(g)`: the minimum over `t`-list assignments of the maximum
/// number of simultaneously colorable vertices, with witnesses.
#[derive(Debug, Clone)]
pub struct LambdaResult {
    pub value: usize,
    /// Lexicographically first canonical assignment attaining the minimum.
    pub witness_assignment: ListAssignment,
    /// A maximum partial coloring for that assignment.
    pub witness_coloring: PartialColoring,
}

/// Compute `lambda_t` by canonical enumeration (palette cap defaults to
/// `n * t`).  Sound pruning: the maximum partial coloring for a prefix
/// (vertices beyond it holding empty lists) is a lower bound for every
/// extension, so subtrees that cannot go below the incumbent are skipped —
/// which leaves the lexicographically first minimizer as the witness.
pub fn lambda_t(
    g: &Graph,
    t: u32,
    palette_cap: Option<u32>,
    budget: &mut Budget,
) -> Result<LambdaResult> {
    if t == 0 {
        return Err(Error::InvalidParams("list size t must be positive".into()));
    }
    let n = g.n();
    if n == 0 {
        return Ok(LambdaResult {
            value: 0,
            witness_assignment: ListAssignment::new(BTreeMap::new())?,
            witness_coloring: PartialColoring::empty(),
        });
    }
    let cap = palette_cap.unwrap_or(n * t);
    if cap < t {
        return Err(Error::InvalidParams(format!(
            "palette cap {cap} cannot accommodate a single list of size {t}"
        )));
    }
    let mut best: Option<(usize, ListAssignment, PartialColoring)> = None;
    enumerate_canonical(n, t, cap, budget, &mut |lists, budget| {
        let depth = lists.len() as u32 - 1;
        let incumbent = best.as_ref().map_or(usize::MAX, |(v, _, _)| *v);
        if depth < n {
            let (prefix_max, _) = solve_max_partial(g, lists, budget)?;
            // Every extension colors at least as much as the prefix alone.
            if prefix_max >= incumbent {
                return Ok(StepAction::Prune);
            }
            return Ok(StepAction::Descend);
        }
        let (count, colors) = solve_max_partial(g, lists, budget)?;
        if count < incumbent {
            best = Some((
                count,
                assignment_from_slice(lists),
                coloring_from_vec(n, &colors),
            ));
        }
        Ok(StepAction::Descend)
    })?;
    let (value, witness_assignment, witness_coloring) =
        best.expect("enumeration visits at least one assignment");
    Ok(LambdaResult {
        value,
        witness_assignment,
        witness_coloring,
    })
}
