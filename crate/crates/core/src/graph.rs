//! Zero-divisor graphs and recognition of the two target families.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::table::MulTable;

/// Simple undirected graph on vertices `1..=vertex_count`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    vertex_count: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl SimpleGraph {
    pub fn new(vertex_count: usize) -> Self {
        SimpleGraph {
            vertex_count,
            edges: BTreeSet::new(),
        }
    }

    pub fn from_edges(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = SimpleGraph::new(vertex_count);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Adds `{u, v}`; loops and out-of-range endpoints are rejected,
    /// duplicates are ignored.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u == v {
            return Err(Error::usage(format!("loop at vertex {u}")));
        }
        if u == 0 || v == 0 || u > self.vertex_count || v > self.vertex_count {
            return Err(Error::usage(format!(
                "edge ({u}, {v}) outside 1..={}",
                self.vertex_count
            )));
        }
        self.edges.insert((u.min(v), u.max(v)));
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    fn is_clique(&self, vertices: impl Iterator<Item = usize> + Clone) -> bool {
        let vs: Vec<usize> = vertices.collect();
        vs.iter()
            .enumerate()
            .all(|(i, &u)| vs[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    /// Graphviz rendering with vertices in id order. When `pendant` is given
    /// that vertex is labeled `x1` and the rest `a1, a2, ..` in id order;
    /// otherwise all vertices are `a1..an`.
    pub fn to_dot(&self, name: &str, pendant: Option<usize>) -> String {
        let mut out = String::new();
        writeln!(out, "graph {name} {{").unwrap();
        let mut next_a = 1;
        for v in 1..=self.vertex_count {
            let label = if Some(v) == pendant {
                "x1".to_string()
            } else {
                let l = format!("a{next_a}");
                next_a += 1;
                l
            };
            writeln!(out, "  v{v} [label=\"{label}\"];").unwrap();
        }
        for (u, v) in &self.edges {
            writeln!(out, "  v{u} -- v{v};").unwrap();
        }
        out.push_str("}\n");
        out
    }
}

/// The two graph families under study.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TargetGraph {
    /// Complete graph on `n` vertices.
    CompleteK { n: usize },
    /// `K_n` together with one end vertex attached to a clique vertex.
    CompletePlusEnd { n: usize },
}

impl TargetGraph {
    pub fn validate(self) -> Result<Self> {
        match self {
            TargetGraph::CompleteK { n } if n < 1 => Err(Error::usage("K_n needs n >= 1")),
            TargetGraph::CompletePlusEnd { n } if n < 2 => {
                Err(Error::usage("K_n plus an end vertex needs n >= 2"))
            }
            t => Ok(t),
        }
    }

    pub fn n(self) -> usize {
        match self {
            TargetGraph::CompleteK { n } | TargetGraph::CompletePlusEnd { n } => n,
        }
    }

    /// Number of nonzero elements of a realizing semigroup.
    pub fn element_count(self) -> usize {
        match self {
            TargetGraph::CompleteK { n } => n,
            TargetGraph::CompletePlusEnd { n } => n + 1,
        }
    }

    /// Index of the end vertex `x_1` in the standard layout.
    pub fn pendant_index(self) -> Option<usize> {
        match self {
            TargetGraph::CompleteK { .. } => None,
            TargetGraph::CompletePlusEnd { n } => Some(n + 1),
        }
    }

    /// Short identifier used in file names and reports (`kn4`, `kn1_4`).
    pub fn slug(self) -> String {
        match self {
            TargetGraph::CompleteK { n } => format!("kn{n}"),
            TargetGraph::CompletePlusEnd { n } => format!("kn1_{n}"),
        }
    }

    /// The graph itself, in the standard layout: clique on `1..=n`, end
    /// vertex `n + 1` attached to `1`.
    pub fn graph(self) -> SimpleGraph {
        let n = self.n();
        let mut g = SimpleGraph::new(self.element_count());
        for u in 1..=n {
            for v in u + 1..=n {
                g.edges.insert((u, v));
            }
        }
        if let Some(x) = self.pendant_index() {
            g.edges.insert((1, x));
        }
        g
    }

    /// Name of element `i` in the standard layout.
    pub fn element_name(self, i: usize) -> String {
        if i == 0 {
            "0".into()
        } else if Some(i) == self.pendant_index() {
            "x1".into()
        } else {
            format!("a{i}")
        }
    }
}

impl fmt::Display for TargetGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TargetGraph::CompleteK { n } => write!(f, "K_{n}"),
            TargetGraph::CompletePlusEnd { n } => write!(f, "K_{n}+1"),
        }
    }
}

/// Result of recognizing a graph as one of the target families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Recognition {
    pub target: TargetGraph,
    /// `(pendant, neighbor)` for the pendant family.
    pub pendant: Option<(usize, usize)>,
}

/// The zero-divisor graph: vertices `1..=m`, `u -- v` iff `u != v` and `uv = 0`.
pub fn build_zd_graph(t: &MulTable) -> SimpleGraph {
    let m = t.m();
    let mut g = SimpleGraph::new(m);
    for u in 1..=m {
        for v in u + 1..=m {
            if t.product(u, v) == 0 {
                g.edges.insert((u, v));
            }
        }
    }
    g
}

/// Recognize `K_n`, or `K_n` plus one end vertex.
///
/// `K_2` is reported as `CompleteK { n: 2 }`. The path on three vertices is
/// `K_2` plus an end vertex; either endpoint qualifies and the highest id is
/// reported as the pendant, matching the standard layout where `x_1` comes
/// last. For `n >= 3` the pendant is unique.
pub fn recognize_target(g: &SimpleGraph) -> Option<Recognition> {
    let v = g.vertex_count();
    if v == 0 {
        return None;
    }
    if g.edge_count() == v * (v - 1) / 2 {
        return Some(Recognition {
            target: TargetGraph::CompleteK { n: v },
            pendant: None,
        });
    }
    let n = v - 1;
    if n < 2 || g.edge_count() != n * (n - 1) / 2 + 1 {
        return None;
    }
    let mut degree = vec![0usize; v + 1];
    for (a, b) in g.edges() {
        degree[a] += 1;
        degree[b] += 1;
    }
    for p in (1..=v).rev().filter(|&p| degree[p] == 1) {
        let q = g
            .edges()
            .find_map(|(a, b)| match (a == p, b == p) {
                (true, _) => Some(b),
                (_, true) => Some(a),
                _ => None,
            })
            .expect("degree-1 vertex has an edge");
        if g.is_clique((1..=v).filter(|&x| x != p)) {
            return Some(Recognition {
                target: TargetGraph::CompletePlusEnd { n },
                pendant: Some((p, q)),
            });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> SimpleGraph {
        let mut g = SimpleGraph::new(n);
        for u in 1..=n {
            for v in u + 1..=n {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    #[test]
    fn null_table_graph_is_complete() {
        let t = MulTable::zero(3);
        let g = build_zd_graph(&t);
        assert_eq!(g, complete(3));
        assert_eq!(
            recognize_target(&g).unwrap().target,
            TargetGraph::CompleteK { n: 3 }
        );
    }

    #[test]
    fn single_nilpotent_graph() {
        let g = build_zd_graph(&MulTable::zero(1));
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 0);
        assert_eq!(
            recognize_target(&g).unwrap().target,
            TargetGraph::CompleteK { n: 1 }
        );
    }

    #[test]
    fn pendant_table_graph() {
        // K_3+1: a1 x1 = 0, a2 x1 = a3 x1 = a1, x1^2 = a1.
        let mut t = MulTable::zero(4);
        t.set(2, 4, 1).unwrap();
        t.set(3, 4, 1).unwrap();
        t.set(4, 4, 1).unwrap();
        let g = build_zd_graph(&t);
        let mut expect = complete(4);
        expect.edges.remove(&(2, 4));
        expect.edges.remove(&(3, 4));
        assert_eq!(g, expect);
        let r = recognize_target(&g).unwrap();
        assert_eq!(r.target, TargetGraph::CompletePlusEnd { n: 3 });
        assert_eq!(r.pendant, Some((4, 1)));
    }

    #[test]
    fn triangle_plus_pendant_anywhere() {
        let g = SimpleGraph::from_edges(4, &[(1, 2), (1, 3), (2, 3), (3, 4)]).unwrap();
        let r = recognize_target(&g).unwrap();
        assert_eq!(r.target, TargetGraph::CompletePlusEnd { n: 3 });
        assert_eq!(r.pendant, Some((4, 3)));
        let g = SimpleGraph::from_edges(4, &[(2, 3), (2, 4), (3, 4), (1, 2)]).unwrap();
        assert_eq!(recognize_target(&g).unwrap().pendant, Some((1, 2)));
    }

    #[test]
    fn path_on_three_vertices_is_k2_plus_end() {
        let g = SimpleGraph::from_edges(3, &[(1, 2), (2, 3)]).unwrap();
        let r = recognize_target(&g).unwrap();
        assert_eq!(r.target, TargetGraph::CompletePlusEnd { n: 2 });
        assert_eq!(r.pendant, Some((3, 2)));
    }

    #[test]
    fn non_targets() {
        assert!(recognize_target(&SimpleGraph::new(0)).is_none());
        // Two isolated vertices.
        assert!(recognize_target(&SimpleGraph::new(2)).is_none());
        // 4-cycle has the right edge count for K_3+1 but no pendant.
        let c4 = SimpleGraph::from_edges(4, &[(1, 2), (2, 3), (3, 4), (1, 4)]).unwrap();
        assert!(recognize_target(&c4).is_none());
        // Star K_{1,3}: a degree-1 vertex exists but the rest is not a clique.
        let star = SimpleGraph::from_edges(4, &[(1, 2), (1, 3), (1, 4)]).unwrap();
        assert!(recognize_target(&star).is_none());
        // K_4 minus an edge.
        let mut g = complete(4);
        g.edges.remove(&(1, 2));
        assert!(recognize_target(&g).is_none());
    }

    /// Exhaustive over all graphs on up to 5 vertices: recognition agrees
    /// with a direct definition of the two families.
    #[test]
    fn recognition_matches_definition_exhaustively() {
        for v in 1..=5usize {
            let pairs: Vec<(usize, usize)> = (1..=v)
                .flat_map(|a| (a + 1..=v).map(move |b| (a, b)))
                .collect();
            for mask in 0u32..(1 << pairs.len()) {
                let edges: Vec<_> = pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, &p)| p)
                    .collect();
                let g = SimpleGraph::from_edges(v, &edges).unwrap();
                let is_complete = edges.len() == pairs.len();
                let plus_end = v >= 3
                    && (1..=v)
                        .any(|p| g.degree(p) == 1 && g.is_clique((1..=v).filter(|&x| x != p)));
                let got = recognize_target(&g).map(|r| r.target);
                if is_complete {
                    assert_eq!(got, Some(TargetGraph::CompleteK { n: v }));
                } else if plus_end {
                    assert_eq!(got, Some(TargetGraph::CompletePlusEnd { n: v - 1 }));
                } else {
                    assert_eq!(got, None, "edges {edges:?}");
                }
            }
        }
    }

    #[test]
    fn dot_is_stable() {
        let g = SimpleGraph::from_edges(4, &[(1, 2), (1, 3), (2, 3), (1, 4)]).unwrap();
        let dot = g.to_dot("k3_1", Some(4));
        assert_eq!(
            dot,
            "graph k3_1 {\n  v1 [label=\"a1\"];\n  v2 [label=\"a2\"];\n  v3 [label=\"a3\"];\n  \
             v4 [label=\"x1\"];\n  v1 -- v2;\n  v1 -- v3;\n  v1 -- v4;\n  v2 -- v3;\n}\n"
        );
        assert_eq!(dot, g.to_dot("k3_1", Some(4)));
    }

    #[test]
    fn target_validation() {
        assert!(TargetGraph::CompleteK { n: 0 }.validate().is_err());
        assert!(TargetGraph::CompletePlusEnd { n: 1 }.validate().is_err());
        assert!(TargetGraph::CompletePlusEnd { n: 2 }.validate().is_ok());
    }

    #[test]
    fn standard_layout_graphs_are_recognized() {
        for n in 1..=6 {
            let t = TargetGraph::CompleteK { n };
            assert_eq!(recognize_target(&t.graph()).unwrap().target, t);
        }
        for n in 3..=6 {
            let t = TargetGraph::CompletePlusEnd { n };
            let r = recognize_target(&t.graph()).unwrap();
            assert_eq!(r.target, t);
            assert_eq!(r.pendant, Some((n + 1, 1)));
        }
    }
}
