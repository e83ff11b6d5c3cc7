//! List assignments and partial colorings, with JSON I/O and a validator
//! that reports violations instead of throwing on the first one.
//!
//! JSON formats:
//!
//! ```json
//! {"t": 2, "lists": {"1": [1, 2], "2": [2, 3]}}
//! {"colors": {"1": 2, "3": null}}
//! ```
//!
//! In a coloring, `null` (or simply omitting the vertex) means uncolored.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A color list for every vertex that has one.  Colors are positive
/// integers; vertices without an entry implicitly have the empty list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ListAssignment {
    lists: BTreeMap<u32, BTreeSet<u32>>,
    uniform_size: Option<u32>,
}

#[derive(Serialize, Deserialize)]
struct ListsDto {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    t: Option<u32>,
    lists: BTreeMap<u32, Vec<u32>>,
}

impl ListAssignment {
    /// Wrap validated lists: no empty list, no color 0.  Whether all lists
    /// share one size is detected here and exposed by [`Self::uniform_size`].
    pub fn new(lists: BTreeMap<u32, BTreeSet<u32>>) -> Result<Self> {
        for (&v, list) in &lists {
            if v == 0 {
                return Err(Error::InvalidParams("vertex ids start at 1".into()));
            }
            if list.is_empty() {
                return Err(Error::InvalidParams(format!(
                    "vertex {v} has an empty list; omit the vertex instead"
                )));
            }
            if list.contains(&0) {
                return Err(Error::InvalidParams(format!(
                    "vertex {v} lists color 0; colors start at 1"
                )));
            }
        }
        let uniform_size = detect_uniform(&lists);
        Ok(ListAssignment {
            lists,
            uniform_size,
        })
    }

    /// The same list on every vertex of `g`.
    pub fn uniform(g: &Graph, list: BTreeSet<u32>) -> Result<Self> {
        Self::new(g.vertices().map(|v| (v, list.clone())).collect())
    }

    /// Seeded uniform-random `t`-lists from the palette `{1, ..., palette}`
    /// for every vertex of `g`.
    pub fn random_uniform(g: &Graph, t: u32, palette: u32, seed: u64) -> Result<Self> {
        if t == 0 {
            return Err(Error::InvalidParams("list size t must be positive".into()));
        }
        if palette < t {
            return Err(Error::InvalidParams(format!(
                "palette of {palette} colors cannot fill lists of size {t}"
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lists = g
            .vertices()
            .map(|v| {
                let picks = rand::seq::index::sample(&mut rng, palette as usize, t as usize);
                (v, picks.iter().map(|i| i as u32 + 1).collect())
            })
            .collect();
        Self::new(lists)
    }

    /// The list of `v`, if `v` has one.
    pub fn get(&self, v: u32) -> Option<&BTreeSet<u32>> {
        self.lists.get(&v)
    }

    /// `Some(t)` iff every list has exactly `t` colors (and there is at
    /// least one list).
    pub fn uniform_size(&self) -> Option<u32> {
        self.uniform_size
    }

    /// Vertices that have lists, ascending.
    pub fn vertices(&self) -> impl Iterator<Item = u32> + '_ {
        self.lists.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    /// The union of all lists — the color set the partition scheme splits.
    pub fn color_union(&self) -> BTreeSet<u32> {
        self.lists.values().flatten().copied().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &BTreeSet<u32>)> {
        self.lists.iter().map(|(&v, l)| (v, l))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let dto: ListsDto =
            serde_json::from_str(text).map_err(|e| Error::JsonInput(e.to_string()))?;
        let mut lists = BTreeMap::new();
        for (v, raw) in dto.lists {
            let mut list = BTreeSet::new();
            for c in raw {
                if !list.insert(c) {
                    return Err(Error::JsonInput(format!(
                        "duplicate color {c} in the list for vertex {v}"
                    )));
                }
            }
            if let Some(t) = dto.t {
                if list.len() != t as usize {
                    return Err(Error::JsonInput(format!(
                        "list for vertex {v} has {} colors but t = {t}",
                        list.len()
                    )));
                }
            }
            lists.insert(v, list);
        }
        Self::new(lists)
    }

    pub fn to_json(&self) -> String {
        let dto = ListsDto {
            t: self.uniform_size,
            lists: self
                .lists
                .iter()
                .map(|(&v, l)| (v, l.iter().copied().collect()))
                .collect(),
        };
        serde_json::to_string_pretty(&dto).expect("lists serialize cleanly")
    }
}

fn detect_uniform(lists: &BTreeMap<u32, BTreeSet<u32>>) -> Option<u32> {
    let mut sizes = lists.values().map(|l| l.len() as u32);
    let first = sizes.next()?;
    sizes.all(|s| s == first).then_some(first)
}

/// A partial coloring: every mentioned vertex is either colored or
/// explicitly uncolored (`None`, JSON `null`); unmentioned vertices are
/// uncolored too.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PartialColoring {
    colors: BTreeMap<u32, Option<u32>>,
}

#[derive(Serialize, Deserialize)]
struct ColoringDto {
    colors: BTreeMap<u32, Option<u32>>,
}

impl PartialColoring {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Color vertex `v` with `c` (a positive color).
    pub fn set(&mut self, v: u32, c: u32) {
        assert!(v >= 1, "vertex ids start at 1");
        assert!(c >= 1, "colors start at 1");
        self.colors.insert(v, Some(c));
    }

    /// Mark `v` explicitly uncolored.
    pub fn set_uncolored(&mut self, v: u32) {
        assert!(v >= 1, "vertex ids start at 1");
        self.colors.insert(v, None);
    }

    /// The color of `v`, or `None` if `v` is uncolored or unmentioned.
    pub fn color_of(&self, v: u32) -> Option<u32> {
        self.colors.get(&v).copied().flatten()
    }

    /// Colored vertices with their colors, ascending by vertex.
    pub fn colored(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.colors
            .iter()
            .filter_map(|(&v, &c)| c.map(|c| (v, c)))
    }

    /// All mentioned vertices (colored or explicitly uncolored).
    pub fn mentioned(&self) -> impl Iterator<Item = u32> + '_ {
        self.colors.keys().copied()
    }

    pub fn colored_count(&self) -> usize {
        self.colors.values().filter(|c| c.is_some()).count()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let dto: ColoringDto =
            serde_json::from_str(text).map_err(|e| Error::JsonInput(e.to_string()))?;
        for (&v, &c) in &dto.colors {
            if v == 0 {
                return Err(Error::JsonInput("vertex ids start at 1".into()));
            }
            if c == Some(0) {
                return Err(Error::JsonInput(format!(
                    "vertex {v} is colored 0; colors start at 1"
                )));
            }
        }
        Ok(PartialColoring { colors: dto.colors })
    }

    pub fn to_json(&self) -> String {
        let dto = ColoringDto {
            colors: self.colors.clone(),
        };
        serde_json::to_string_pretty(&dto).expect("colorings serialize cleanly")
    }
}

/// One way a partial coloring can be improper for `(g, lists)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    /// Both endpoints of an edge carry the same color.
    EdgeConflict { a: u32, b: u32, color: u32 },
    /// A vertex is colored outside its list (a missing list counts as empty).
    ColorNotInList { v: u32, color: u32 },
    /// The coloring mentions a vertex the graph does not have.
    UnknownVertex { v: u32 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::EdgeConflict { a, b, color } => {
                write!(f, "edge ({a}, {b}) has both endpoints colored {color}")
            }
            Violation::ColorNotInList { v, color } => {
                write!(f, "vertex {v} is colored {color}, which is not in its list")
            }
            Violation::UnknownVertex { v } => {
                write!(f, "vertex {v} is not in the graph")
            }
        }
    }
}

/// Validator verdict: the number of properly mentioned colored vertices and
/// every violation found (never just the first).
#[derive(Debug, Clone)]
pub struct Validation {
    /// Colored vertices that exist in the graph (whether or not violating).
    pub colored_count: usize,
    pub violations: Vec<Violation>,
    pub ok: bool,
}

/// Check `coloring` against `(g, lists)`: list membership for every colored
/// vertex, properness on every edge, and vertex-range sanity.
pub fn validate_partial(
    g: &Graph,
    lists: &ListAssignment,
    coloring: &PartialColoring,
) -> Validation {
    let mut violations = Vec::new();
    let mut colored_count = 0;
    for v in coloring.mentioned() {
        if !g.contains_vertex(v) {
            violations.push(Violation::UnknownVertex { v });
        }
    }
    for (v, c) in coloring.colored() {
        if !g.contains_vertex(v) {
            continue; // already reported above
        }
        colored_count += 1;
        if !lists.get(v).is_some_and(|list| list.contains(&c)) {
            violations.push(Violation::ColorNotInList { v, color: c });
        }
        for b in g.neighbors(v) {
            if b > v && coloring.color_of(b) == Some(c) {
                violations.push(Violation::EdgeConflict { a: v, b, color: c });
            }
        }
    }
    let ok = violations.is_empty();
    Validation {
        colored_count,
        violations,
        ok,
    }
}
