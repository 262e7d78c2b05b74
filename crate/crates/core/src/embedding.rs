//! Plane straight-line embeddability of a graph on an order type, as a CNF
//! instance.
//!
//! Variables: `M(v, p)` says vertex `v` sits on point `p`, `A(p, q)` says
//! the segment `pq` is drawn. Clauses force a total injective placement,
//! activate the segment under every edge and forbid two active segments
//! that cross.

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use thiserror::Error;

use crate::chirotope::AbstractOrderType;
use crate::graphs::Graph;
use crate::sat::{self, Budget, SatResult};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbeddingError {
    #[error("graph has {vertices} vertices but the order type only {points} points")]
    TooManyVertices { vertices: usize, points: usize },
    #[error("solver gave up after {conflicts} conflicts")]
    SolverTimeout { conflicts: u64 },
    #[error("solver produced an invalid drawing: {0}")]
    WitnessInvalid(Violation),
}

/// What a claimed drawing gets wrong.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Violation {
    #[error("assignment covers {got} vertices, graph has {expected}")]
    WrongLength { expected: usize, got: usize },
    #[error("vertex {vertex} mapped to point {point}, which does not exist")]
    PointOutOfRange { vertex: usize, point: usize },
    #[error("vertices {0} and {1} share point {2}")]
    DuplicatePoint(usize, usize, usize),
    #[error("edges {0:?} and {1:?} cross")]
    Crossing((usize, usize), (usize, usize)),
}

/// A semantic variable of the encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    Map { vertex: usize, point: usize },
    Active { p: usize, q: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    vertices: usize,
    points: usize,
    clauses: Vec<Vec<i32>>,
}

impl CnfFormula {
    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn clauses(&self) -> &[Vec<i32>] {
        &self.clauses
    }

    /// `vertices * points + points * (points - 1) / 2`.
    pub fn num_vars(&self) -> usize {
        self.vertices * self.points + self.points * self.points.saturating_sub(1) / 2
    }

    pub fn map_var(&self, vertex: usize, point: usize) -> i32 {
        debug_assert!(vertex < self.vertices && point < self.points);
        (vertex * self.points + point + 1) as i32
    }

    /// Id of `A(p, q)`; the pair is unordered.
    pub fn active_var(&self, p: usize, q: usize) -> i32 {
        let (p, q) = (p.min(q), p.max(q));
        debug_assert!(p < q && q < self.points);
        let m = self.points;
        let rank = p * (2 * m - p - 1) / 2 + (q - p - 1);
        (self.vertices * m + rank + 1) as i32
    }

    /// Inverse of `map_var` and `active_var`.
    pub fn var(&self, id: i32) -> Option<Var> {
        if id < 1 || id as usize > self.num_vars() {
            return None;
        }
        let k = id as usize - 1;
        let m = self.points;
        if k < self.vertices * m {
            return Some(Var::Map { vertex: k / m, point: k % m });
        }
        let mut rank = k - self.vertices * m;
        for p in 0..m {
            let row = m - p - 1;
            if rank < row {
                return Some(Var::Active { p, q: p + 1 + rank });
            }
            rank -= row;
        }
        None
    }

    /// Placement read off a model: the first point of each vertex.
    pub fn decode(&self, model: &[bool]) -> EmbeddingWitness {
        let assignment = (0..self.vertices)
            .map(|v| {
                (0..self.points)
                    .find(|&p| model[self.map_var(v, p) as usize - 1])
                    .unwrap_or(usize::MAX)
            })
            .collect();
        EmbeddingWitness { assignment }
    }

    pub fn write_dimacs(&self, w: &mut impl Write) -> io::Result<()> {
        sat::write_dimacs(w, self.num_vars(), &self.clauses)
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = Vec::new();
        self.write_dimacs(&mut out).expect("writing to memory");
        String::from_utf8(out).expect("DIMACS is ASCII")
    }
}

/// Point of each vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EmbeddingWitness {
    pub assignment: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Embeddable(EmbeddingWitness),
    NotEmbeddable,
}

impl Verdict {
    pub fn is_embeddable(&self) -> bool {
        matches!(self, Verdict::Embeddable(_))
    }
}

pub fn encode_embedding(g: &Graph, ot: &AbstractOrderType) -> Result<CnfFormula, EmbeddingError> {
    let (nv, np) = (g.n(), ot.n());
    if nv > np {
        return Err(EmbeddingError::TooManyVertices { vertices: nv, points: np });
    }
    let mut f = CnfFormula { vertices: nv, points: np, clauses: Vec::new() };
    let mut clauses = Vec::new();
    for v in 0..nv {
        clauses.push((0..np).map(|p| f.map_var(v, p)).collect());
        for p in 0..np {
            for q in p + 1..np {
                clauses.push(vec![-f.map_var(v, p), -f.map_var(v, q)]);
            }
        }
    }
    for p in 0..np {
        for v in 0..nv {
            for w in v + 1..nv {
                clauses.push(vec![-f.map_var(v, p), -f.map_var(w, p)]);
            }
        }
    }
    for &(u, v) in g.edges() {
        for p in 0..np {
            for q in 0..np {
                if p != q {
                    clauses.push(vec![-f.map_var(u, p), -f.map_var(v, q), f.active_var(p, q)]);
                }
            }
        }
    }
    for a in 0..np {
        for b in a + 1..np {
            for c in b + 1..np {
                for d in c + 1..np {
                    for ((p, q), (r, s)) in [((a, b), (c, d)), ((a, c), (b, d)), ((a, d), (b, c))] {
                        if ot.crosses(p, q, r, s) {
                            clauses.push(vec![-f.active_var(p, q), -f.active_var(r, s)]);
                        }
                    }
                }
            }
        }
    }
    f.clauses = clauses;
    Ok(f)
}

/// Checks a placement directly against the order type.
pub fn verify_witness(
    g: &Graph,
    ot: &AbstractOrderType,
    w: &EmbeddingWitness,
) -> Result<(), Violation> {
    let pi = &w.assignment;
    if pi.len() != g.n() {
        return Err(Violation::WrongLength { expected: g.n(), got: pi.len() });
    }
    let mut owner = vec![usize::MAX; ot.n()];
    for (v, &p) in pi.iter().enumerate() {
        if p >= ot.n() {
            return Err(Violation::PointOutOfRange { vertex: v, point: p });
        }
        if owner[p] != usize::MAX {
            return Err(Violation::DuplicatePoint(owner[p], v, p));
        }
        owner[p] = v;
    }
    let edges = g.edges();
    for (i, &(a, b)) in edges.iter().enumerate() {
        for &(c, d) in &edges[i + 1..] {
            if a == c || a == d || b == c || b == d {
                continue;
            }
            if ot.segments_cross(pi[a], pi[b], pi[c], pi[d]) == Ok(true) {
                return Err(Violation::Crossing((a, b), (c, d)));
            }
        }
    }
    Ok(())
}

/// Decides embeddability with the built-in solver. Every positive answer
/// is checked with `verify_witness` before it is returned.
pub fn decide_embeddable(
    g: &Graph,
    ot: &AbstractOrderType,
    budget: Budget,
) -> Result<Verdict, EmbeddingError> {
    let f = encode_embedding(g, ot)?;
    let mut solver = sat::Solver::new(f.num_vars(), f.clauses());
    match solver.solve(budget) {
        SatResult::Sat(model) => {
            let w = f.decode(&model);
            verify_witness(g, ot, &w).map_err(EmbeddingError::WitnessInvalid)?;
            Ok(Verdict::Embeddable(w))
        }
        SatResult::Unsat => Ok(Verdict::NotEmbeddable),
        SatResult::Unknown => {
            Err(EmbeddingError::SolverTimeout { conflicts: solver.stats().conflicts })
        }
    }
}

pub fn export_dimacs(f: &CnfFormula, path: &Path) -> io::Result<()> {
    let mut w = BufWriter::new(fs::File::create(path)?);
    f.write_dimacs(&mut w)?;
    w.flush()
}
