//! Stacked triangulations (planar 3-trees): recognition, exhaustive
//! generation up to isomorphism, and their face structure.
//!
//! Faces are oriented triples. Stacking vertex `v` into face `(a, b, c)`
//! replaces it by `(a, b, v)`, `(b, c, v)` and `(c, a, v)`, so every
//! directed edge lies on exactly one face and the orientation stays
//! consistent.

use std::collections::BTreeMap;

use super::{is_triangulation_candidate, Graph, GraphError};

const K4_FACES: [[usize; 3]; 4] = [[0, 1, 2], [0, 3, 1], [0, 2, 3], [1, 3, 2]];

/// A stacked triangulation in stacking labeling: vertices `0..4` span a K4
/// and vertex `k >= 4` is stacked into `steps[k - 4]`, a face of the graph
/// induced by `0..k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StackingOrder {
    labels: Vec<usize>,
    steps: Vec<[usize; 3]>,
    faces: Vec<[usize; 3]>,
}

impl StackingOrder {
    /// K4 on `0..4`.
    pub fn k4() -> Self {
        StackingOrder { labels: (0..4).collect(), steps: Vec::new(), faces: K4_FACES.to_vec() }
    }

    /// Builds the triangulation from K4 by stacking vertex `4 + i` into the
    /// face with vertex set `steps[i]`.
    pub fn from_steps(steps: &[[usize; 3]]) -> Result<Self, GraphError> {
        let mut s = StackingOrder::k4();
        for step in steps {
            let key = sorted(*step);
            let idx = s.faces.iter().position(|f| sorted(*f) == key).ok_or(GraphError::NotStacked)?;
            s.stack(idx);
        }
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    /// `labels[k]` is the vertex of the recognized input graph that became
    /// vertex `k`. The identity for generated orders.
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// Vertex sets of the faces used by the steps, sorted ascending.
    pub fn steps(&self) -> &[[usize; 3]] {
        &self.steps
    }

    /// Oriented faces in stacking labeling.
    pub fn faces(&self) -> &[[usize; 3]] {
        &self.faces
    }

    /// The triangulation in stacking labeling, edges sorted.
    pub fn graph(&self) -> Graph {
        let mut edges: Vec<(usize, usize)> =
            vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        for (i, f) in self.steps.iter().enumerate() {
            edges.extend(f.iter().map(|&u| (u, 4 + i)));
        }
        edges.sort_unstable();
        Graph::new(self.n(), edges).expect("stacking yields a simple graph")
    }

    /// The triangulation in the labeling of the recognized input.
    pub fn original_graph(&self) -> Graph {
        self.graph().relabel(&self.labels).normalized()
    }

    /// Oriented faces in the labeling of the recognized input.
    pub fn original_faces(&self) -> Vec<[usize; 3]> {
        self.faces.iter().map(|f| f.map(|v| self.labels[v])).collect()
    }

    /// Stacks a new vertex into `faces[idx]`.
    pub(crate) fn stack(&mut self, idx: usize) {
        let v = self.n();
        let [a, b, c] = self.faces[idx];
        self.labels.push(v);
        self.steps.push(sorted([a, b, c]));
        self.faces[idx] = [a, b, v];
        self.faces.push([b, c, v]);
        self.faces.push([c, a, v]);
    }

    /// Undoes the last `stack(idx)`.
    pub(crate) fn unstack(&mut self, idx: usize) {
        let [a, b, _] = self.faces[idx];
        let [c, _, _] = self.faces.pop().expect("stacked face");
        self.faces.pop();
        self.faces[idx] = [a, b, c];
        self.steps.pop();
        self.labels.pop();
    }

    /// Isomorphism-invariant code of the triangulation: the lexicographically
    /// least breadth-first rotation code over all starting darts and both
    /// orientations. A 3-connected planar triangulation has one embedding
    /// up to reflection, so equal codes mean isomorphic graphs.
    pub fn canonical_code(&self) -> Vec<u32> {
        let n = self.n();
        let mut next = vec![usize::MAX; n * n];
        let mut prev = vec![usize::MAX; n * n];
        for &[a, b, c] in &self.faces {
            for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
                next[x * n + y] = z;
                prev[x * n + z] = y;
            }
        }
        let mut best: Option<Vec<u32>> = None;
        for rot in [&next, &prev] {
            for &[a, b, c] in &self.faces {
                for (u, v) in [(a, b), (b, c), (c, a), (b, a), (c, b), (a, c)] {
                    let code = rotation_code(n, rot, u, v);
                    if best.as_ref().is_none_or(|b| code < *b) {
                        best = Some(code);
                    }
                }
            }
        }
        best.unwrap_or_default()
    }
}

fn sorted(mut f: [usize; 3]) -> [usize; 3] {
    f.sort_unstable();
    f
}

fn rotation_code(n: usize, rot: &[usize], u: usize, v: usize) -> Vec<u32> {
    const NONE: usize = usize::MAX;
    let mut label = vec![NONE; n];
    let mut entry = vec![NONE; n];
    let mut order = Vec::with_capacity(n);
    label[u] = 0;
    entry[u] = v;
    order.push(u);
    let mut code = Vec::with_capacity(7 * n);
    let mut idx = 0;
    while idx < order.len() {
        let x = order[idx];
        idx += 1;
        let start = entry[x];
        let mut y = start;
        loop {
            if label[y] == NONE {
                label[y] = order.len();
                entry[y] = x;
                order.push(y);
            }
            code.push(label[y] as u32);
            y = rot[x * n + y];
            if y == start {
                break;
            }
        }
        code.push(u32::MAX);
    }
    code
}

/// Peels degree-3 vertices with triangular neighbourhoods down to K4, then
/// replays the peeling in reverse as a stacking, which also certifies
/// planarity. The highest-labeled removable vertex is peeled first, so a
/// graph already in stacking labeling keeps its labels.
pub fn recognize_stacked(g: &Graph) -> Option<StackingOrder> {
    if !is_triangulation_candidate(g) {
        return None;
    }
    let n = g.n();
    let mut adj = vec![false; n * n];
    for &(u, v) in g.edges() {
        adj[u * n + v] = true;
        adj[v * n + u] = true;
    }
    let mut deg = g.degrees();
    let mut alive = vec![true; n];
    let mut peeled = Vec::with_capacity(n - 4);
    for _ in 4..n {
        let found = (0..n).rev().find_map(|v| {
            if !alive[v] || deg[v] != 3 {
                return None;
            }
            let nb: Vec<usize> = (0..n).filter(|&u| alive[u] && adj[v * n + u]).collect();
            let [a, b, c] = nb[..] else { return None };
            (adj[a * n + b] && adj[b * n + c] && adj[a * n + c]).then_some((v, [a, b, c]))
        });
        let (v, nb) = found?;
        alive[v] = false;
        for u in nb {
            deg[u] -= 1;
        }
        peeled.push((v, nb));
    }
    let base: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    if base.iter().any(|&u| base.iter().any(|&v| u != v && !adj[u * n + v])) {
        return None;
    }
    let mut labels = base;
    labels.extend(peeled.iter().rev().map(|&(v, _)| v));
    let mut new_of = vec![0; n];
    for (k, &old) in labels.iter().enumerate() {
        new_of[old] = k;
    }
    let steps: Vec<[usize; 3]> =
        peeled.iter().rev().map(|(_, nb)| sorted(nb.map(|u| new_of[u]))).collect();
    let mut order = StackingOrder::from_steps(&steps).ok()?;
    order.labels = labels;
    Some(order)
}

/// All stacked triangulations on `n` vertices up to isomorphism, each in
/// stacking labeling, ordered by canonical code.
pub fn generate_stacked(n: usize) -> Vec<StackingOrder> {
    assert!(n >= 4, "stacked triangulations need at least four vertices");
    let mut level = vec![StackingOrder::k4()];
    for _ in 4..n {
        let mut next = BTreeMap::new();
        for order in &level {
            for idx in 0..order.faces.len() {
                let mut s = order.clone();
                s.stack(idx);
                next.entry(s.canonical_code()).or_insert(s);
            }
        }
        level = next.into_values().collect();
    }
    level
}

/// Calls `visit` once per labeled stacked triangulation on `n` vertices,
/// i.e. once per sequence of face choices starting from K4.
pub fn for_each_labeled_stacking(n: usize, mut visit: impl FnMut(&StackingOrder)) {
    fn rec(s: &mut StackingOrder, n: usize, visit: &mut impl FnMut(&StackingOrder)) {
        if s.n() == n {
            visit(s);
            return;
        }
        for idx in 0..s.faces.len() {
            s.stack(idx);
            rec(s, n, visit);
            s.unstack(idx);
        }
    }
    assert!(n >= 4, "stacked triangulations need at least four vertices");
    rec(&mut StackingOrder::k4(), n, &mut visit);
}

pub fn count_labeled_stackings(n: usize) -> u64 {
    let mut count = 0;
    for_each_labeled_stacking(n, |_| count += 1);
    count
}

/// Whether every face of the stacked triangulation `g` has a vertex of
/// degree three.
pub fn faces_all_have_degree3_vertex(g: &Graph) -> Result<bool, GraphError> {
    let order = recognize_stacked(g).ok_or(GraphError::NotStacked)?;
    let deg = g.degrees();
    Ok(order.original_faces().iter().all(|f| f.iter().any(|&v| deg[v] == 3)))
}
