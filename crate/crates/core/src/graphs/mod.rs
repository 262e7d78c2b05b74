//! Simple labeled graphs, the edge-list and graph6 text formats, and the
//! stacked triangulations used as test graphs.

mod graph6;
mod stacked;

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

pub use graph6::{emit_graph6, parse_graph6};
pub use stacked::{
    count_labeled_stackings, faces_all_have_degree3_vertex, for_each_labeled_stacking,
    generate_stacked, recognize_stacked, StackingOrder,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("edge {{{0}, {1}}} has an endpoint >= n = {2}")]
    VertexOutOfRange(usize, usize, usize),
    #[error("graph is not a stacked triangulation")]
    NotStacked,
}

fn parse_err(offset: usize, message: impl Into<String>) -> GraphError {
    GraphError::Parse { offset, message: message.into() }
}

/// A simple graph on vertices `0..n`. Edges are stored with the smaller
/// endpoint first, in insertion order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(GraphError::Loop(u));
            }
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange(u, v, n));
            }
            let e = (u.min(v), u.max(v));
            if !seen.insert(e) {
                return Err(GraphError::DuplicateEdge(e.0, e.1));
            }
            out.push(e);
        }
        Ok(Graph { n, edges: out })
    }

    pub fn empty(n: usize) -> Self {
        Graph { n, edges: Vec::new() }
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        Graph { n, edges }
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle is simple")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in lexicographic order.
    pub fn sorted_edges(&self) -> Vec<(usize, usize)> {
        let mut e = self.edges.clone();
        e.sort_unstable();
        e
    }

    /// Same graph with edges in lexicographic order.
    pub fn normalized(&self) -> Graph {
        Graph { n: self.n, edges: self.sorted_edges() }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let e = (u.min(v), u.max(v));
        self.edges.contains(&e)
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(u, v) in &self.edges {
            d[u] += 1;
            d[v] += 1;
        }
        d
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let adj = self.neighbors();
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Image of the graph under `map`, where old vertex `v` becomes `map[v]`.
    pub fn relabel(&self, map: &[usize]) -> Graph {
        assert_eq!(map.len(), self.n);
        Graph { n: self.n, edges: self.edges.iter().map(|&(u, v)| {
            let (a, b) = (map[u], map[v]);
            (a.min(b), a.max(b))
        }).collect() }
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&emit_edge_list(self))
    }
}

/// Parses one line of `u1 v1 u2 v2 ...`. The vertex count is one more than
/// the largest label.
pub fn parse_edge_list(line: &str) -> Result<Graph, GraphError> {
    let mut labels = Vec::new();
    let mut pos = 0;
    for tok in line.split_whitespace() {
        let offset = line[pos..].find(tok).map_or(pos, |o| pos + o);
        pos = offset + tok.len();
        let v: usize =
            tok.parse().map_err(|_| parse_err(offset, format!("not a vertex label: {tok:?}")))?;
        labels.push(v);
    }
    if labels.len() % 2 != 0 {
        return Err(parse_err(line.len(), "odd number of labels"));
    }
    let n = labels.iter().max().map_or(0, |m| m + 1);
    Graph::new(n, labels.chunks_exact(2).map(|c| (c[0], c[1])))
}

pub fn emit_edge_list(g: &Graph) -> String {
    let mut s = String::new();
    for (i, &(u, v)) in g.edges.iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        s.push_str(&format!("{u} {v}"));
    }
    s
}

/// Parses a file with one edge list per line; blank lines are skipped.
pub fn parse_edge_list_file(text: &str) -> Result<Vec<Graph>, GraphError> {
    text.lines().filter(|l| !l.trim().is_empty()).map(parse_edge_list).collect()
}

/// Parses a file with one graph6 string per line, ignoring blank lines and
/// an optional `>>graph6<<` header.
pub fn parse_graph6_file(text: &str) -> Result<Vec<Graph>, GraphError> {
    text.lines().map(str::trim).filter(|l| !l.is_empty()).map(parse_graph6).collect()
}

/// Connected, `3n - 6` edges and minimum degree three. Planarity is not
/// checked.
pub fn is_triangulation_candidate(g: &Graph) -> bool {
    g.n >= 4
        && g.edge_count() == 3 * g.n - 6
        && g.degrees().iter().all(|&d| d >= 3)
        && g.is_connected()
}

/// Graphs with maximum degree at most `d`, or exactly `d` when `exact`.
pub fn filter_max_degree(gs: &[Graph], d: usize, exact: bool) -> Vec<Graph> {
    gs.iter()
        .filter(|g| {
            let m = g.max_degree();
            if exact {
                m == d
            } else {
                m <= d
            }
        })
        .cloned()
        .collect()
}
