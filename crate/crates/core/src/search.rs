//! The search pipeline over order types: structural prefilters,
//! universality tests with a shared failure-priority queue, the
//! order type × graph stat matrix, and minimum conflict collections.

use std::fmt::Write as _;
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use thiserror::Error;

use crate::chirotope::AbstractOrderType;
use crate::data;
use crate::embedding::{decide_embeddable, EmbeddingError};
use crate::graphs::Graph;
use crate::sat::Budget;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("expected order types on {expected} points, got {got}")]
    WrongSize { expected: usize, got: usize },
    #[error("order type {ot}, graph {graph}: {source}")]
    Embedding { ot: usize, graph: usize, source: EmbeddingError },
    #[error("row {row} has no failing graph, so no conflict collection exists")]
    Infeasible { row: usize },
    #[error("no graphs to test")]
    NoGraphs,
    #[error("stat file line {line}: {message}")]
    StatParse { line: usize, message: String },
}

/// Extreme points form a triangle, and some interior point `q` together
/// with two extreme points spans a triangle holding every other interior
/// point.
pub fn property2(ot: &AbstractOrderType) -> bool {
    let hull = ot.extreme_points();
    if hull.len() != 3 {
        return false;
    }
    let inner: Vec<usize> = (0..ot.n()).filter(|p| !hull.contains(p)).collect();
    inner.iter().any(|&q| {
        (0..3).any(|k| {
            let (a, b) = (hull[k], hull[(k + 1) % 3]);
            inner.iter().all(|&p| p == q || ot.in_triangle(p, q, a, b))
        })
    })
}

/// The filter graph embeds.
pub fn property1(ot: &AbstractOrderType, budget: Budget) -> Result<bool, EmbeddingError> {
    Ok(decide_embeddable(&data::property1_graph(), ot, budget)?.is_embeddable())
}

/// Indices of the order types on 11 points that pass both structural
/// properties, in input order. The cheap geometric property runs first.
pub fn filter_phase1(ots: &[AbstractOrderType], budget: Budget) -> Result<Vec<usize>, SearchError> {
    if let Some(ot) = ots.iter().find(|ot| ot.n() != 11) {
        return Err(SearchError::WrongSize { expected: 11, got: ot.n() });
    }
    let graph = data::property1_graph();
    let keep: Vec<Option<usize>> = ots
        .par_iter()
        .enumerate()
        .map(|(i, ot)| {
            if !property2(ot) {
                return Ok(None);
            }
            let v = decide_embeddable(&graph, ot, budget)
                .map_err(|source| SearchError::Embedding { ot: i, graph: 0, source })?;
            Ok(v.is_embeddable().then_some(i))
        })
        .collect::<Result<_, SearchError>>()?;
    Ok(keep.into_iter().flatten().collect())
}

/// Per-graph failure tally shared by concurrent universality tests. It
/// only decides the testing order, never a verdict.
#[derive(Debug)]
pub struct PriorityQueue {
    failures: Vec<AtomicU64>,
}

impl PriorityQueue {
    pub fn new(graphs: usize) -> Self {
        PriorityQueue { failures: (0..graphs).map(|_| AtomicU64::new(0)).collect() }
    }

    pub fn with_counts(counts: &[u64]) -> Self {
        PriorityQueue { failures: counts.iter().map(|&c| AtomicU64::new(c)).collect() }
    }

    pub fn len(&self) -> usize {
        self.failures.len()
    }

    pub fn is_empty(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn counts(&self) -> Vec<u64> {
        self.failures.iter().map(|c| c.load(Ordering::Relaxed)).collect()
    }

    /// Graph indices by failure count, most failures first, ties by index.
    pub fn order(&self) -> Vec<usize> {
        let counts = self.counts();
        let mut idx: Vec<usize> = (0..counts.len()).collect();
        idx.sort_by_key(|&j| (std::cmp::Reverse(counts[j]), j));
        idx
    }

    pub fn record_failure(&self, graph: usize) {
        self.failures[graph].fetch_add(1, Ordering::Relaxed);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Universality {
    Universal,
    /// The first graph found that does not embed.
    Fails(usize),
}

/// Tests the graphs in priority order and stops at the first one that does
/// not embed. Errors carry the index of the graph being tested.
pub fn test_universal(
    ot: &AbstractOrderType,
    graphs: &[Graph],
    queue: &PriorityQueue,
    budget: Budget,
) -> Result<Universality, (usize, EmbeddingError)> {
    assert_eq!(queue.len(), graphs.len(), "one priority slot per graph");
    for j in queue.order() {
        let v = decide_embeddable(&graphs[j], ot, budget).map_err(|e| (j, e))?;
        if !v.is_embeddable() {
            queue.record_failure(j);
            return Ok(Universality::Fails(j));
        }
    }
    Ok(Universality::Universal)
}

/// `test_universal` over many order types in parallel, results in input
/// order.
pub fn test_universal_all(
    ots: &[AbstractOrderType],
    graphs: &[Graph],
    queue: &PriorityQueue,
    budget: Budget,
) -> Result<Vec<Universality>, SearchError> {
    if graphs.is_empty() {
        return Err(SearchError::NoGraphs);
    }
    ots.par_iter()
        .enumerate()
        .map(|(i, ot)| {
            test_universal(ot, graphs, queue, budget)
                .map_err(|(graph, source)| SearchError::Embedding { ot: i, graph, source })
        })
        .collect()
}

/// Embeddability bits, one row per order type and one column per graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StatMatrix {
    rows: usize,
    cols: usize,
    bits: Vec<bool>,
}

impl StatMatrix {
    pub fn from_rows(rows: &[Vec<bool>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged stat matrix");
        StatMatrix { rows: rows.len(), cols, bits: rows.concat() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[bool] {
        &self.bits[i * self.cols..(i + 1) * self.cols]
    }

    /// Columns with a zero in row `i`.
    pub fn failing(&self, i: usize) -> Vec<usize> {
        (0..self.cols).filter(|&j| !self.get(i, j)).collect()
    }

    /// One line of `0`/`1` per row.
    pub fn to_text(&self) -> String {
        let mut s = String::with_capacity(self.rows * (self.cols + 1));
        for i in 0..self.rows {
            s.extend(self.row(i).iter().map(|&b| if b { '1' } else { '0' }));
            s.push('\n');
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self, SearchError> {
        let mut rows = Vec::new();
        for (k, line) in text.lines().enumerate() {
            let row: Vec<bool> = line
                .chars()
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    other => Err(SearchError::StatParse {
                        line: k + 1,
                        message: format!("unexpected character {other:?}"),
                    }),
                })
                .collect::<Result<_, _>>()?;
            if let Some(first) = rows.first().map(Vec::len) {
                if row.len() != first {
                    return Err(SearchError::StatParse {
                        line: k + 1,
                        message: format!("{} columns, expected {first}", row.len()),
                    });
                }
            }
            rows.push(row);
        }
        Ok(StatMatrix::from_rows(&rows))
    }
}

/// Decides every (order type, graph) pair. Rows keep the input order of
/// the order types and columns the input order of the graphs.
pub fn build_stat(
    ots: &[AbstractOrderType],
    graphs: &[Graph],
    budget: Budget,
) -> Result<StatMatrix, SearchError> {
    let rows: Vec<Vec<bool>> = ots
        .par_iter()
        .enumerate()
        .map(|(i, ot)| {
            graphs
                .iter()
                .enumerate()
                .map(|(j, g)| {
                    decide_embeddable(g, ot, budget)
                        .map(|v| v.is_embeddable())
                        .map_err(|source| SearchError::Embedding { ot: i, graph: j, source })
                })
                .collect()
        })
        .collect::<Result<_, _>>()?;
    Ok(StatMatrix { rows: rows.len(), cols: graphs.len(), bits: rows.concat() })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverMode {
    Greedy,
    Exact,
}

/// Graphs that together fail on every row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConflictCollection {
    /// Selected graph indices, ascending.
    pub graphs: Vec<usize>,
    /// For each row, a selected graph failing on it.
    pub certificate: Vec<usize>,
}

impl ConflictCollection {
    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    /// Every row has a selected graph with a zero.
    pub fn is_feasible_for(&self, m: &StatMatrix) -> bool {
        (0..m.rows()).all(|i| self.graphs.iter().any(|&j| !m.get(i, j)))
    }
}

fn check_feasible(m: &StatMatrix) -> Result<Vec<Vec<usize>>, SearchError> {
    (0..m.rows())
        .map(|i| {
            let f = m.failing(i);
            if f.is_empty() {
                Err(SearchError::Infeasible { row: i })
            } else {
                Ok(f)
            }
        })
        .collect()
}

fn collection(m: &StatMatrix, mut chosen: Vec<usize>) -> ConflictCollection {
    chosen.sort_unstable();
    let certificate = (0..m.rows())
        .map(|i| *chosen.iter().find(|&&j| !m.get(i, j)).expect("feasible cover"))
        .collect();
    ConflictCollection { graphs: chosen, certificate }
}

/// Repeatedly takes the column failing on the most uncovered rows, lowest
/// index on ties.
fn greedy_cover(sets: &[Vec<usize>], cols: usize) -> Vec<usize> {
    let mut covered = vec![false; sets.len()];
    let mut left = sets.len();
    let mut chosen = Vec::new();
    while left > 0 {
        let mut gain = vec![0usize; cols];
        for (r, s) in sets.iter().enumerate() {
            if !covered[r] {
                for &j in s {
                    gain[j] += 1;
                }
            }
        }
        let best = (0..cols).max_by_key(|&j| (gain[j], std::cmp::Reverse(j))).expect("columns");
        chosen.push(best);
        for (r, s) in sets.iter().enumerate() {
            if !covered[r] && s.contains(&best) {
                covered[r] = true;
                left -= 1;
            }
        }
    }
    chosen
}

/// Drops duplicate rows and rows implied by a row with fewer failing
/// graphs.
fn reduce_rows(sets: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut sorted: Vec<Vec<usize>> = sets.to_vec();
    sorted.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    sorted.dedup();
    let mut kept: Vec<Vec<usize>> = Vec::new();
    for s in sorted {
        let implied = kept.iter().any(|k| k.iter().all(|j| s.binary_search(j).is_ok()));
        if !implied {
            kept.push(s);
        }
    }
    kept
}

struct Exact<'a> {
    sets: &'a [Vec<usize>],
    col_rows: Vec<Vec<usize>>,
    best: Vec<usize>,
}

impl Exact<'_> {
    /// Rows with pairwise disjoint candidate sets need distinct columns.
    fn packing_bound(&self, covered: &[u32]) -> usize {
        let mut used = vec![false; self.col_rows.len()];
        let mut open: Vec<usize> = (0..self.sets.len()).filter(|&r| covered[r] == 0).collect();
        open.sort_by_key(|&r| self.sets[r].len());
        let mut bound = 0;
        for r in open {
            if self.sets[r].iter().all(|&j| !used[j]) {
                bound += 1;
                for &j in &self.sets[r] {
                    used[j] = true;
                }
            }
        }
        bound
    }

    fn search(&mut self, covered: &mut [u32], chosen: &mut Vec<usize>) {
        let Some(row) = (0..self.sets.len())
            .filter(|&r| covered[r] == 0)
            .min_by_key(|&r| (self.sets[r].len(), r))
        else {
            if chosen.len() < self.best.len() {
                self.best = chosen.clone();
            }
            return;
        };
        if chosen.len() + self.packing_bound(covered) >= self.best.len() {
            return;
        }
        let mut cands = self.sets[row].clone();
        cands.sort_by_key(|&j| {
            let gain = self.col_rows[j].iter().filter(|&&r| covered[r] == 0).count();
            (std::cmp::Reverse(gain), j)
        });
        for j in cands {
            for &r in &self.col_rows[j] {
                covered[r] += 1;
            }
            chosen.push(j);
            self.search(covered, chosen);
            chosen.pop();
            for &r in &self.col_rows[j] {
                covered[r] -= 1;
            }
        }
    }
}

/// A set of graphs failing on every row: minimum cardinality in exact mode
/// (branch and bound), a max-coverage heuristic in greedy mode.
pub fn min_hitting_set(m: &StatMatrix, mode: CoverMode) -> Result<ConflictCollection, SearchError> {
    let sets = check_feasible(m)?;
    if sets.is_empty() {
        return Ok(collection(m, Vec::new()));
    }
    let sets = reduce_rows(&sets);
    let greedy = greedy_cover(&sets, m.cols());
    if mode == CoverMode::Greedy {
        return Ok(collection(m, greedy));
    }
    let mut col_rows = vec![Vec::new(); m.cols()];
    for (r, s) in sets.iter().enumerate() {
        for &j in s {
            col_rows[j].push(r);
        }
    }
    let mut ex = Exact { sets: &sets, col_rows, best: greedy };
    ex.search(&mut vec![0; sets.len()], &mut Vec::new());
    let best = ex.best;
    Ok(collection(m, best))
}

/// The minimum conflict collection problem as an LP-format integer
/// program: binary `x_j` per graph, minimize their sum, one covering row
/// per order type.
pub fn export_lp(m: &StatMatrix) -> Result<String, SearchError> {
    let sets = check_feasible(m)?;
    let mut s = String::new();
    let terms = |cols: &mut dyn Iterator<Item = usize>| {
        let mut line = String::new();
        for (k, j) in cols.enumerate() {
            if k > 0 {
                line.push_str(if k % 16 == 0 { "\n   + " } else { " + " });
            }
            let _ = write!(line, "x{j}");
        }
        line
    };
    s.push_str("\\ minimum conflict collection\nMinimize\n obj: ");
    s.push_str(&terms(&mut (0..m.cols())));
    s.push_str("\nSubject To\n");
    for (i, f) in sets.iter().enumerate() {
        let _ = writeln!(s, " r{i}: {} >= 1", terms(&mut f.iter().copied()));
    }
    s.push_str("Binary\n");
    for j in 0..m.cols() {
        let _ = write!(s, " x{j}");
        if (j + 1) % 16 == 0 {
            s.push('\n');
        }
    }
    if !m.cols().is_multiple_of(16) {
        s.push('\n');
    }
    s.push_str("End\n");
    Ok(s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConflictCheck {
    /// No order type embeds all graphs.
    Ok,
    /// The first order type that embeds every graph.
    Counterexample(usize),
}

pub fn verify_conflict_collection(
    graphs: &[Graph],
    ots: &[AbstractOrderType],
    budget: Budget,
) -> Result<ConflictCheck, SearchError> {
    if graphs.is_empty() {
        return Err(SearchError::NoGraphs);
    }
    let queue = PriorityQueue::new(graphs.len());
    let verdicts = test_universal_all(ots, graphs, &queue, budget)?;
    Ok(verdicts
        .iter()
        .position(|v| *v == Universality::Universal)
        .map_or(ConflictCheck::Ok, ConflictCheck::Counterexample))
}
