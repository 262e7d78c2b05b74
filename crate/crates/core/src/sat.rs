//! A small conflict-driven clause-learning SAT solver: two watched literals,
//! first-UIP learning, VSIDS branching with phase saving, Luby restarts and
//! activity-based learnt clause reduction.
//!
//! Literals use the DIMACS convention: variable `v >= 1` is `v`, its
//! negation `-v`.

use std::io::{self, Write};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SatResult {
    /// A model, indexed by variable id minus one.
    Sat(Vec<bool>),
    Unsat,
    /// The conflict budget ran out.
    Unknown,
}

/// Conflict budget for a single solve call; `None` means unlimited.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Budget {
    pub conflicts: Option<u64>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { conflicts: None }
    }

    pub fn conflicts(n: u64) -> Self {
        Budget { conflicts: Some(n) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SolveStats {
    pub decisions: u64,
    pub conflicts: u64,
    pub propagations: u64,
    pub restarts: u64,
}

type Lit = u32;

fn lit(d: i32) -> Lit {
    let v = d.unsigned_abs() - 1;
    2 * v + (d < 0) as u32
}

fn var(l: Lit) -> usize {
    (l >> 1) as usize
}

fn neg(l: Lit) -> Lit {
    l ^ 1
}

const UNDEF: i8 = 0;

struct Clause {
    lits: Vec<Lit>,
    learnt: bool,
    activity: f64,
}

/// Max-heap of variables keyed by activity.
struct VarHeap {
    heap: Vec<usize>,
    pos: Vec<usize>,
}

const ABSENT: usize = usize::MAX;

impl VarHeap {
    fn new(n: usize) -> Self {
        VarHeap { heap: Vec::with_capacity(n), pos: vec![ABSENT; n] }
    }

    fn contains(&self, v: usize) -> bool {
        self.pos[v] != ABSENT
    }

    fn up(&mut self, mut i: usize, act: &[f64]) {
        let v = self.heap[i];
        while i > 0 {
            let p = (i - 1) / 2;
            if act[self.heap[p]] >= act[v] {
                break;
            }
            self.heap[i] = self.heap[p];
            self.pos[self.heap[i]] = i;
            i = p;
        }
        self.heap[i] = v;
        self.pos[v] = i;
    }

    fn down(&mut self, mut i: usize, act: &[f64]) {
        let v = self.heap[i];
        let len = self.heap.len();
        loop {
            let l = 2 * i + 1;
            if l >= len {
                break;
            }
            let r = l + 1;
            let c = if r < len && act[self.heap[r]] > act[self.heap[l]] { r } else { l };
            if act[self.heap[c]] <= act[v] {
                break;
            }
            self.heap[i] = self.heap[c];
            self.pos[self.heap[i]] = i;
            i = c;
        }
        self.heap[i] = v;
        self.pos[v] = i;
    }

    fn insert(&mut self, v: usize, act: &[f64]) {
        if self.contains(v) {
            return;
        }
        self.heap.push(v);
        let i = self.heap.len() - 1;
        self.pos[v] = i;
        self.up(i, act);
    }

    fn pop(&mut self, act: &[f64]) -> Option<usize> {
        let top = *self.heap.first()?;
        let last = self.heap.pop().expect("nonempty");
        self.pos[top] = ABSENT;
        if !self.heap.is_empty() {
            self.heap[0] = last;
            self.pos[last] = 0;
            self.down(0, act);
        }
        Some(top)
    }
}

pub struct Solver {
    clauses: Vec<Clause>,
    watches: Vec<Vec<usize>>,
    assigns: Vec<i8>,
    level: Vec<u32>,
    reason: Vec<Option<usize>>,
    phase: Vec<bool>,
    activity: Vec<f64>,
    var_inc: f64,
    cla_inc: f64,
    heap: VarHeap,
    trail: Vec<Lit>,
    trail_lim: Vec<usize>,
    qhead: usize,
    seen: Vec<bool>,
    unsat: bool,
    stats: SolveStats,
}

impl Solver {
    /// A solver over variables `1..=num_vars`. Tautologies are dropped and
    /// repeated literals merged; an empty clause makes the instance
    /// unsatisfiable.
    pub fn new(num_vars: usize, clauses: &[Vec<i32>]) -> Self {
        let mut s = Solver {
            clauses: Vec::with_capacity(clauses.len()),
            watches: vec![Vec::new(); 2 * num_vars],
            assigns: vec![UNDEF; num_vars],
            level: vec![0; num_vars],
            reason: vec![None; num_vars],
            phase: vec![false; num_vars],
            activity: vec![0.0; num_vars],
            var_inc: 1.0,
            cla_inc: 1.0,
            heap: VarHeap::new(num_vars),
            trail: Vec::with_capacity(num_vars),
            trail_lim: Vec::new(),
            qhead: 0,
            seen: vec![false; num_vars],
            unsat: false,
            stats: SolveStats::default(),
        };
        for v in 0..num_vars {
            s.heap.insert(v, &s.activity);
        }
        for c in clauses {
            assert!(
                c.iter().all(|&d| d != 0 && d.unsigned_abs() as usize <= num_vars),
                "literal out of range"
            );
            let mut lits: Vec<Lit> = c.iter().map(|&d| lit(d)).collect();
            lits.sort_unstable();
            lits.dedup();
            if lits.windows(2).any(|w| w[0] == neg(w[1])) {
                continue;
            }
            s.add_input(lits);
            if s.unsat {
                break;
            }
        }
        s
    }

    pub fn stats(&self) -> SolveStats {
        self.stats
    }

    fn value(&self, l: Lit) -> i8 {
        let a = self.assigns[var(l)];
        if l & 1 == 1 {
            -a
        } else {
            a
        }
    }

    fn decision_level(&self) -> u32 {
        self.trail_lim.len() as u32
    }

    fn add_input(&mut self, lits: Vec<Lit>) {
        match lits.len() {
            0 => self.unsat = true,
            1 => match self.value(lits[0]) {
                1 => {}
                -1 => self.unsat = true,
                _ => self.enqueue(lits[0], None),
            },
            _ => {
                let cref = self.clauses.len();
                self.watches[lits[0] as usize].push(cref);
                self.watches[lits[1] as usize].push(cref);
                self.clauses.push(Clause { lits, learnt: false, activity: 0.0 });
            }
        }
    }

    fn enqueue(&mut self, l: Lit, reason: Option<usize>) {
        let v = var(l);
        self.assigns[v] = if l & 1 == 1 { -1 } else { 1 };
        self.level[v] = self.decision_level();
        self.reason[v] = reason;
        self.trail.push(l);
    }

    /// Unit propagation; returns a conflicting clause if any.
    fn propagate(&mut self) -> Option<usize> {
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            self.stats.propagations += 1;
            let false_lit = neg(p);
            let mut ws = std::mem::take(&mut self.watches[false_lit as usize]);
            let mut keep = 0;
            let mut i = 0;
            let mut conflict = None;
            while i < ws.len() {
                let cref = ws[i];
                i += 1;
                let lits = &mut self.clauses[cref].lits;
                if lits[0] == false_lit {
                    lits.swap(0, 1);
                }
                let first = lits[0];
                let first_val = {
                    let a = self.assigns[var(first)];
                    if first & 1 == 1 { -a } else { a }
                };
                if first_val == 1 {
                    ws[keep] = cref;
                    keep += 1;
                    continue;
                }
                let mut moved = false;
                for k in 2..lits.len() {
                    let l = lits[k];
                    let a = self.assigns[var(l)];
                    let val = if l & 1 == 1 { -a } else { a };
                    if val != -1 {
                        lits.swap(1, k);
                        self.watches[lits[1] as usize].push(cref);
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                ws[keep] = cref;
                keep += 1;
                if first_val == -1 {
                    conflict = Some(cref);
                    while i < ws.len() {
                        ws[keep] = ws[i];
                        keep += 1;
                        i += 1;
                    }
                } else {
                    self.enqueue(first, Some(cref));
                }
            }
            ws.truncate(keep);
            self.watches[false_lit as usize] = ws;
            if conflict.is_some() {
                self.qhead = self.trail.len();
                return conflict;
            }
        }
        None
    }

    fn bump_var(&mut self, v: usize) {
        self.activity[v] += self.var_inc;
        if self.activity[v] > 1e100 {
            for a in &mut self.activity {
                *a *= 1e-100;
            }
            self.var_inc *= 1e-100;
        }
        if self.heap.contains(v) {
            let i = self.heap.pos[v];
            self.heap.up(i, &self.activity);
        }
    }

    fn bump_clause(&mut self, cref: usize) {
        let c = &mut self.clauses[cref];
        if !c.learnt {
            return;
        }
        c.activity += self.cla_inc;
        if c.activity > 1e20 {
            for c in self.clauses.iter_mut().filter(|c| c.learnt) {
                c.activity *= 1e-20;
            }
            self.cla_inc *= 1e-20;
        }
    }

    /// First-UIP conflict analysis. Returns the learnt clause (asserting
    /// literal first) and the backjump level.
    fn analyze(&mut self, mut conflict: usize) -> (Vec<Lit>, u32) {
        let mut learnt: Vec<Lit> = vec![0];
        let mut path = 0;
        let mut p: Option<Lit> = None;
        let mut idx = self.trail.len();
        loop {
            self.bump_clause(conflict);
            let start = if p.is_some() { 1 } else { 0 };
            for k in start..self.clauses[conflict].lits.len() {
                let q = self.clauses[conflict].lits[k];
                let v = var(q);
                if !self.seen[v] && self.level[v] > 0 {
                    self.seen[v] = true;
                    self.bump_var(v);
                    if self.level[v] >= self.decision_level() {
                        path += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                idx -= 1;
                if self.seen[var(self.trail[idx])] {
                    break;
                }
            }
            let l = self.trail[idx];
            p = Some(l);
            self.seen[var(l)] = false;
            path -= 1;
            if path == 0 {
                break;
            }
            conflict = self.reason[var(l)].expect("implied literal has a reason");
        }
        learnt[0] = neg(p.expect("conflict at positive level"));
        for &l in &learnt[1..] {
            self.seen[var(l)] = false;
        }
        let mut bt = 0;
        if learnt.len() > 1 {
            let mut best = 1;
            for k in 2..learnt.len() {
                if self.level[var(learnt[k])] > self.level[var(learnt[best])] {
                    best = k;
                }
            }
            learnt.swap(1, best);
            bt = self.level[var(learnt[1])];
        }
        (learnt, bt)
    }

    fn cancel_until(&mut self, lvl: u32) {
        if self.decision_level() <= lvl {
            return;
        }
        let lim = self.trail_lim[lvl as usize];
        for k in (lim..self.trail.len()).rev() {
            let l = self.trail[k];
            let v = var(l);
            self.phase[v] = l & 1 == 0;
            self.assigns[v] = UNDEF;
            self.reason[v] = None;
            self.heap.insert(v, &self.activity);
        }
        self.trail.truncate(lim);
        self.trail_lim.truncate(lvl as usize);
        self.qhead = lim;
    }

    fn pick_branch(&mut self) -> Option<Lit> {
        while let Some(v) = self.heap.pop(&self.activity) {
            if self.assigns[v] == UNDEF {
                return Some(2 * v as u32 + (!self.phase[v]) as u32);
            }
        }
        None
    }

    /// Drops satisfied clauses and false literals, removes the less active
    /// half of the learnt clauses and rebuilds the watch lists. Only called
    /// at decision level zero after a conflict-free propagation.
    fn reduce_and_simplify(&mut self, drop_learnts: bool) {
        let mut learnt_acts: Vec<f64> =
            self.clauses.iter().filter(|c| c.learnt).map(|c| c.activity).collect();
        let cutoff = if drop_learnts && !learnt_acts.is_empty() {
            let mid = learnt_acts.len() / 2;
            learnt_acts.select_nth_unstable_by(mid, |a, b| a.total_cmp(b));
            learnt_acts[mid]
        } else {
            f64::NEG_INFINITY
        };
        let assigns = &self.assigns;
        let value = |l: Lit| {
            let a = assigns[var(l)];
            if l & 1 == 1 { -a } else { a }
        };
        let old = std::mem::take(&mut self.clauses);
        for mut c in old {
            if c.lits.iter().any(|&l| value(l) == 1) {
                continue;
            }
            if c.learnt && c.lits.len() > 2 && c.activity < cutoff {
                continue;
            }
            c.lits.retain(|&l| value(l) != -1);
            debug_assert!(c.lits.len() >= 2);
            self.clauses.push(c);
        }
        for w in &mut self.watches {
            w.clear();
        }
        for (cref, c) in self.clauses.iter().enumerate() {
            self.watches[c.lits[0] as usize].push(cref);
            self.watches[c.lits[1] as usize].push(cref);
        }
        for r in &mut self.reason {
            *r = None;
        }
    }

    pub fn solve(&mut self, budget: Budget) -> SatResult {
        if self.unsat || self.propagate().is_some() {
            self.unsat = true;
            return SatResult::Unsat;
        }
        let start_conflicts = self.stats.conflicts;
        let mut max_learnts = (self.clauses.len() / 3).max(1000) as f64;
        let mut restart = 0u32;
        loop {
            let limit = 100 * luby(restart);
            let mut local = 0u64;
            loop {
                if let Some(conflict) = self.propagate() {
                    self.stats.conflicts += 1;
                    local += 1;
                    if self.decision_level() == 0 {
                        self.unsat = true;
                        return SatResult::Unsat;
                    }
                    let (learnt, bt) = self.analyze(conflict);
                    self.cancel_until(bt);
                    if learnt.len() == 1 {
                        self.enqueue(learnt[0], None);
                    } else {
                        let cref = self.clauses.len();
                        self.watches[learnt[0] as usize].push(cref);
                        self.watches[learnt[1] as usize].push(cref);
                        let first = learnt[0];
                        self.clauses.push(Clause { lits: learnt, learnt: true, activity: 0.0 });
                        self.bump_clause(cref);
                        self.enqueue(first, Some(cref));
                    }
                    self.var_inc /= 0.95;
                    self.cla_inc /= 0.999;
                    if let Some(b) = budget.conflicts {
                        if self.stats.conflicts - start_conflicts >= b {
                            self.cancel_until(0);
                            return SatResult::Unknown;
                        }
                    }
                } else if local >= limit {
                    break;
                } else {
                    match self.pick_branch() {
                        None => {
                            let model = self.assigns.iter().map(|&a| a == 1).collect();
                            self.cancel_until(0);
                            return SatResult::Sat(model);
                        }
                        Some(l) => {
                            self.stats.decisions += 1;
                            self.trail_lim.push(self.trail.len());
                            self.enqueue(l, None);
                        }
                    }
                }
            }
            self.stats.restarts += 1;
            restart += 1;
            self.cancel_until(0);
            if self.propagate().is_some() {
                self.unsat = true;
                return SatResult::Unsat;
            }
            let learnts = self.clauses.iter().filter(|c| c.learnt).count() as f64;
            self.reduce_and_simplify(learnts > max_learnts);
            if learnts > max_learnts {
                max_learnts *= 1.1;
            }
        }
    }
}

/// The Luby sequence 1, 1, 2, 1, 1, 2, 4, ...
fn luby(i: u32) -> u64 {
    let mut size = 1u64;
    let mut seq = 0u32;
    while size < i as u64 + 1 {
        seq += 1;
        size = 2 * size + 1;
    }
    let mut i = i as u64;
    while size - 1 != i {
        size = (size - 1) / 2;
        seq -= 1;
        i %= size;
    }
    1 << seq
}

pub fn solve(num_vars: usize, clauses: &[Vec<i32>], budget: Budget) -> SatResult {
    Solver::new(num_vars, clauses).solve(budget)
}

/// Whether `model` satisfies every clause.
pub fn check_model(clauses: &[Vec<i32>], model: &[bool]) -> bool {
    clauses.iter().all(|c| c.iter().any(|&d| model[d.unsigned_abs() as usize - 1] == (d > 0)))
}

pub fn write_dimacs(w: &mut impl Write, num_vars: usize, clauses: &[Vec<i32>]) -> io::Result<()> {
    writeln!(w, "p cnf {} {}", num_vars, clauses.len())?;
    for c in clauses {
        for d in c {
            write!(w, "{d} ")?;
        }
        writeln!(w, "0")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn luby_prefix() {
        let s: Vec<u64> = (0..15).map(luby).collect();
        assert_eq!(s, vec![1, 1, 2, 1, 1, 2, 4, 1, 1, 2, 1, 1, 2, 4, 8]);
    }

    #[test]
    fn trivial_instances() {
        assert_eq!(solve(1, &[vec![1]], Budget::unlimited()), SatResult::Sat(vec![true]));
        assert_eq!(solve(1, &[vec![1], vec![-1]], Budget::unlimited()), SatResult::Unsat);
        assert_eq!(solve(0, &[vec![]], Budget::unlimited()), SatResult::Unsat);
        assert_eq!(solve(2, &[vec![1, -1]], Budget::unlimited()), SatResult::Sat(vec![false, false]));
    }

    fn pigeonhole(holes: usize) -> (usize, Vec<Vec<i32>>) {
        let pigeons = holes + 1;
        let x = |p: usize, h: usize| (p * holes + h + 1) as i32;
        let mut cls = Vec::new();
        for p in 0..pigeons {
            cls.push((0..holes).map(|h| x(p, h)).collect());
        }
        for h in 0..holes {
            for p in 0..pigeons {
                for q in p + 1..pigeons {
                    cls.push(vec![-x(p, h), -x(q, h)]);
                }
            }
        }
        (pigeons * holes, cls)
    }

    #[test]
    fn pigeonhole_is_unsat() {
        for holes in 1..=7 {
            let (n, cls) = pigeonhole(holes);
            assert_eq!(solve(n, &cls, Budget::unlimited()), SatResult::Unsat, "{holes} holes");
        }
    }

    #[test]
    fn budget_gives_unknown() {
        let (n, cls) = pigeonhole(9);
        assert_eq!(solve(n, &cls, Budget::conflicts(10)), SatResult::Unknown);
    }

    #[test]
    fn dimacs_text() {
        let mut out = Vec::new();
        write_dimacs(&mut out, 1, &[vec![1]]).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "p cnf 1 1\n1 0\n");
    }
}
