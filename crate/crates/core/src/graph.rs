//! Simple undirected graphs on vertices `1..=n`, DIMACS I/O, standard
//! families, and the degeneracy bound.
//!
//! Graphs here are small verification subjects, not big-data structures:
//! adjacency is kept in ordered sets so every traversal is deterministic.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// A simple undirected graph with vertices `1..=n`.  Loops are rejected and
/// duplicate edges collapse to one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    /// `adj[v]` for `v` in `1..=n`; index 0 is unused.
    adj: Vec<BTreeSet<u32>>,
    edge_count: usize,
}

impl Graph {
    /// Build a graph from an edge list.  Endpoints must lie in `1..=n` and
    /// differ; duplicate edges (in either orientation) collapse silently.
    pub fn from_edges(n: u32, edges: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let mut adj = vec![BTreeSet::new(); n as usize + 1];
        let mut edge_count = 0;
        for (a, b) in edges {
            if a == b {
                return Err(Error::InvalidParams(format!(
                    "loop at vertex {a}: graphs here are simple"
                )));
            }
            for v in [a, b] {
                if v == 0 || v > n {
                    return Err(Error::InvalidParams(format!(
                        "edge ({a}, {b}) mentions vertex {v}, outside 1..={n}"
                    )));
                }
            }
            if adj[a as usize].insert(b) {
                adj[b as usize].insert(a);
                edge_count += 1;
            }
        }
        Ok(Graph { adj, edge_count })
    }

    /// Number of vertices.
    pub fn n(&self) -> u32 {
        (self.adj.len() - 1) as u32
    }

    /// Number of (distinct) edges.
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn contains_vertex(&self, v: u32) -> bool {
        v >= 1 && v <= self.n()
    }

    /// Vertices in ascending order.
    pub fn vertices(&self) -> impl Iterator<Item = u32> {
        1..=self.n()
    }

    /// Neighbors of `v` in ascending order.  Panics if `v` is not a vertex.
    pub fn neighbors(&self, v: u32) -> impl Iterator<Item = u32> + '_ {
        assert!(self.contains_vertex(v), "vertex {v} out of range");
        self.adj[v as usize].iter().copied()
    }

    pub fn degree(&self, v: u32) -> usize {
        assert!(self.contains_vertex(v), "vertex {v} out of range");
        self.adj[v as usize].len()
    }

    pub fn has_edge(&self, a: u32, b: u32) -> bool {
        self.contains_vertex(a) && self.contains_vertex(b) && self.adj[a as usize].contains(&b)
    }

    /// Edges as pairs `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.vertices().flat_map(move |a| {
            self.adj[a as usize]
                .iter()
                .copied()
                .filter(move |&b| a < b)
                .map(move |b| (a, b))
        })
    }
}

/// Parse a DIMACS coloring instance (`p edge N M` followed by `e U V` lines).
///
/// * comment lines start with `c`; blank lines are skipped;
/// * exactly one problem line must precede all edge lines;
/// * loops and out-of-range endpoints are errors (with their line number);
/// * duplicate edges collapse; if the resulting edge count differs from the
///   declared `M`, that is reported as a warning string, not an error.
pub fn parse_dimacs(input: &str) -> Result<(Graph, Vec<String>)> {
    let mut header: Option<(u32, usize)> = None;
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in input.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let mut fields = raw.split_whitespace();
        let Some(tag) = fields.next() else { continue };
        match tag {
            "c" => continue,
            "p" => {
                if header.is_some() {
                    return Err(Error::DimacsParse {
                        line,
                        msg: "duplicate problem line".into(),
                    });
                }
                let kind = fields.next().unwrap_or("");
                if kind != "edge" && kind != "col" {
                    return Err(Error::DimacsParse {
                        line,
                        msg: format!("expected 'p edge N M', got format {kind:?}"),
                    });
                }
                let n = parse_field(fields.next(), line, "vertex count")?;
                let m = parse_field(fields.next(), line, "edge count")?;
                if fields.next().is_some() {
                    return Err(Error::DimacsParse {
                        line,
                        msg: "trailing fields after 'p edge N M'".into(),
                    });
                }
                header = Some((n, m as usize));
            }
            "e" => {
                let Some((n, _)) = header else {
                    return Err(Error::DimacsParse {
                        line,
                        msg: "edge line before the problem line".into(),
                    });
                };
                let a: u32 = parse_field(fields.next(), line, "edge endpoint")?;
                let b: u32 = parse_field(fields.next(), line, "edge endpoint")?;
                if fields.next().is_some() {
                    return Err(Error::DimacsParse {
                        line,
                        msg: "trailing fields after 'e U V'".into(),
                    });
                }
                if a == b {
                    return Err(Error::DimacsParse {
                        line,
                        msg: format!("loop at vertex {a}"),
                    });
                }
                if a == 0 || a > n || b == 0 || b > n {
                    return Err(Error::DimacsParse {
                        line,
                        msg: format!("edge ({a}, {b}) outside 1..={n}"),
                    });
                }
                edges.push((a, b));
            }
            other => {
                return Err(Error::DimacsParse {
                    line,
                    msg: format!("unrecognized line type {other:?}"),
                });
            }
        }
    }
    let Some((n, declared)) = header else {
        return Err(Error::DimacsParse {
            line: last_line.max(1),
            msg: "missing problem line".into(),
        });
    };
    let graph = Graph::from_edges(n, edges).map_err(|e| Error::DimacsParse {
        line: last_line,
        msg: e.to_string(),
    })?;
    let mut warnings = Vec::new();
    if graph.edge_count() != declared {
        warnings.push(format!(
            "problem line declares {declared} edges, but {} distinct edges were read",
            graph.edge_count()
        ));
    }
    Ok((graph, warnings))
}

fn parse_field(field: Option<&str>, line: usize, what: &str) -> Result<u32> {
    let field = field.ok_or_else(|| Error::DimacsParse {
        line,
        msg: format!("missing {what}"),
    })?;
    field.parse().map_err(|_| Error::DimacsParse {
        line,
        msg: format!("invalid {what}: {field:?}"),
    })
}

/// Serialize to DIMACS; [`parse_dimacs`] of the output reproduces the graph.
pub fn to_dimacs(g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p edge {} {}", g.n(), g.edge_count());
    for (a, b) in g.edges() {
        let _ = writeln!(out, "e {a} {b}");
    }
    out
}

/// Standard graph families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFamily {
    /// `K_n`, `n >= 1`.
    Complete(u32),
    /// `C_n`, `n >= 3`.
    Cycle(u32),
    /// `K_{a,b}` with sides `1..=a` and `a+1..=a+b`; `a, b >= 1`.
    CompleteBipartite(u32, u32),
    /// The Petersen graph as the Kneser graph K(5, 2): vertices are the ten
    /// 2-subsets of {1..5} in lexicographic order, adjacent iff disjoint.
    Petersen,
}

/// Construct a member of a standard family.
pub fn generate(family: GraphFamily) -> Result<Graph> {
    match family {
        GraphFamily::Complete(n) => {
            if n < 1 {
                return Err(Error::InvalidParams("complete graph needs n >= 1".into()));
            }
            Graph::from_edges(n, (1..=n).flat_map(|a| (a + 1..=n).map(move |b| (a, b))))
        }
        GraphFamily::Cycle(n) => {
            if n < 3 {
                return Err(Error::InvalidParams(format!(
                    "cycle needs n >= 3, got {n}"
                )));
            }
            Graph::from_edges(n, (1..=n).map(|a| (a, if a == n { 1 } else { a + 1 })))
        }
        GraphFamily::CompleteBipartite(a, b) => {
            if a < 1 || b < 1 {
                return Err(Error::InvalidParams(format!(
                    "complete bipartite graph needs both sides nonempty, got ({a}, {b})"
                )));
            }
            Graph::from_edges(
                a + b,
                (1..=a).flat_map(move |x| (a + 1..=a + b).map(move |y| (x, y))),
            )
        }
        GraphFamily::Petersen => {
            let pairs: Vec<(u32, u32)> = (1..=5u32)
                .flat_map(|x| (x + 1..=5).map(move |y| (x, y)))
                .collect();
            let disjoint =
                |p: (u32, u32), q: (u32, u32)| p.0 != q.0 && p.0 != q.1 && p.1 != q.0 && p.1 != q.1;
            let mut edges = Vec::new();
            for i in 0..pairs.len() {
                for j in i + 1..pairs.len() {
                    if disjoint(pairs[i], pairs[j]) {
                        edges.push((i as u32 + 1, j as u32 + 1));
                    }
                }
            }
            Graph::from_edges(10, edges)
        }
    }
}

/// Greedy elimination: repeatedly remove a minimum-degree vertex (lowest
/// index on ties).  Returns the degeneracy `d` (the largest degree seen at
/// removal time) and the removal order.
///
/// Coloring greedily in *reverse* removal order always succeeds with lists
/// of size `d + 1`: when a vertex is colored, at most `d` of its neighbors
/// are already colored.
pub fn degeneracy_order(g: &Graph) -> (u32, Vec<u32>) {
    let n = g.n() as usize;
    let mut alive = vec![true; n + 1];
    let mut deg: Vec<usize> = std::iter::once(0)
        .chain((1..=n).map(|v| g.degree(v as u32)))
        .collect();
    let mut order = Vec::with_capacity(n);
    let mut d = 0;
    for _ in 0..n {
        let v = (1..=n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| deg[v])
            .expect("an alive vertex remains");
        d = d.max(deg[v]);
        alive[v] = false;
        order.push(v as u32);
        for w in g.neighbors(v as u32) {
            if alive[w as usize] {
                deg[w as usize] -= 1;
            }
        }
    }
    (d as u32, order)
}

/// `degeneracy + 1`: an upper bound for the list chromatic number, hence a
/// valid `s` for the partition scheme whenever `s >= degeneracy_bound(g)`.
pub fn degeneracy_bound(g: &Graph) -> u32 {
    degeneracy_order(g).0 + 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: u32) -> Graph {
        generate(GraphFamily::Cycle(n)).unwrap()
    }

    #[test]
    fn from_edges_collapses_duplicates() {
        let g = Graph::from_edges(3, [(1, 2), (2, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert!(g.has_edge(1, 2) && g.has_edge(2, 1));
        assert!(!g.has_edge(1, 3));
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(1, 2), (2, 3)]);
    }

    #[test]
    fn from_edges_rejects_loops_and_strays() {
        assert!(Graph::from_edges(3, [(1, 1)]).is_err());
        assert!(Graph::from_edges(3, [(0, 2)]).is_err());
        assert!(Graph::from_edges(3, [(1, 4)]).is_err());
    }

    #[test]
    fn family_shapes() {
        let k4 = generate(GraphFamily::Complete(4)).unwrap();
        assert_eq!((k4.n(), k4.edge_count()), (4, 6));
        let c5 = cycle(5);
        assert_eq!((c5.n(), c5.edge_count()), (5, 5));
        assert!(c5.vertices().all(|v| c5.degree(v) == 2));
        let k33 = generate(GraphFamily::CompleteBipartite(3, 3)).unwrap();
        assert_eq!((k33.n(), k33.edge_count()), (6, 9));
        assert!(!k33.has_edge(1, 2) && k33.has_edge(1, 4));
    }

    #[test]
    fn family_validation() {
        assert!(generate(GraphFamily::Cycle(2)).is_err());
        assert!(generate(GraphFamily::Complete(0)).is_err());
        assert!(generate(GraphFamily::CompleteBipartite(0, 3)).is_err());
    }

    #[test]
    fn petersen_shape() {
        let p = generate(GraphFamily::Petersen).unwrap();
        assert_eq!((p.n(), p.edge_count()), (10, 15));
        assert!(p.vertices().all(|v| p.degree(v) == 3));
        // {1,2} (vertex 1) is disjoint from {3,4}, {3,5}, {4,5} (vertices 8, 9, 10)
        assert_eq!(p.neighbors(1).collect::<Vec<_>>(), vec![8, 9, 10]);
        // Girth 5: no triangles, no 4-cycles through vertex 1.
        for a in p.vertices() {
            for b in p.neighbors(a) {
                for c in p.neighbors(b) {
                    assert!(c == a || !p.has_edge(c, a), "triangle {a}-{b}-{c}");
                }
            }
        }
    }

    #[test]
    fn dimacs_round_trip() {
        for g in [
            cycle(5),
            generate(GraphFamily::Complete(4)).unwrap(),
            generate(GraphFamily::Petersen).unwrap(),
        ] {
            let (parsed, warnings) = parse_dimacs(&to_dimacs(&g)).unwrap();
            assert_eq!(parsed, g);
            assert!(warnings.is_empty());
        }
    }

    #[test]
    fn dimacs_accepts_comments_and_blanks() {
        let text = "c a small path\n\np edge 3 2\nc middle comment\ne 1 2\ne 2 3\n";
        let (g, warnings) = parse_dimacs(text).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(1, 2), (2, 3)]);
        assert!(warnings.is_empty());
    }

    #[test]
    fn dimacs_edge_count_mismatch_is_warning() {
        let (g, warnings) = parse_dimacs("p edge 3 3\ne 1 2\ne 2 1\n").unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(warnings.len(), 1);
        assert!(warnings[0].contains("declares 3"));
    }

    #[test]
    fn dimacs_errors_carry_line_numbers() {
        let cases = [
            ("p edge 3 1\ne 2 2\n", 2, "loop"),
            ("p edge 3 1\ne 1 4\n", 2, "outside"),
            ("e 1 2\np edge 3 1\n", 1, "before the problem line"),
            ("p edge 3 1\np edge 3 1\n", 2, "duplicate problem"),
            ("p edge 3 1\nx 1 2\n", 2, "unrecognized"),
            ("p edge three 1\n", 1, "invalid vertex count"),
            ("c nothing here\n", 1, "missing problem line"),
        ];
        for (text, line, needle) in cases {
            match parse_dimacs(text) {
                Err(Error::DimacsParse { line: l, msg }) => {
                    assert_eq!(l, line, "wrong line for {text:?}");
                    assert!(msg.contains(needle), "msg {msg:?} lacks {needle:?}");
                }
                other => panic!("expected parse error for {text:?}, got {other:?}"),
            }
        }
    }

    #[test]
    fn degeneracy_samples() {
        assert_eq!(degeneracy_bound(&cycle(5)), 3);
        assert_eq!(degeneracy_bound(&generate(GraphFamily::Complete(4)).unwrap()), 4);
        assert_eq!(degeneracy_bound(&generate(GraphFamily::Petersen).unwrap()), 4);
        // A path is 1-degenerate.
        let path = Graph::from_edges(4, [(1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(degeneracy_bound(&path), 2);
        let (d, order) = degeneracy_order(&path);
        assert_eq!(d, 1);
        assert_eq!(order.len(), 4);
    }
}
