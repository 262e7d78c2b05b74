//! External oracles driven through `python3` and scipy's MILP interface.
//! Every helper returns `None` when Python or scipy is unavailable so that
//! callers can skip.

#![allow(dead_code)]

use std::io::Write;
use std::process::{Command, Stdio};

const DIMACS_AS_ILP: &str = r#"
import sys
import numpy as np
from scipy.optimize import milp, LinearConstraint, Bounds
text = sys.stdin.read().split("\n")
nv = 0
rows = []
for line in text:
    t = line.split()
    if not t or t[0] == "c":
        continue
    if t[0] == "p":
        nv = int(t[2])
        continue
    lits = [int(x) for x in t if x != "0"]
    rows.append(lits)
if any(len(r) == 0 for r in rows):
    print("UNSAT"); sys.exit(0)
A = np.zeros((len(rows), nv))
lb = np.ones(len(rows))
for i, r in enumerate(rows):
    for l in r:
        if l > 0:
            A[i, l - 1] += 1
        else:
            A[i, -l - 1] -= 1
            lb[i] -= 1
cons = [LinearConstraint(A, lb, np.inf)] if rows else []
res = milp(np.zeros(nv), constraints=cons, integrality=np.ones(nv), bounds=Bounds(0, 1))
print("SAT" if res.status == 0 else "UNSAT" if res.status == 2 else "ERROR %d" % res.status)
"#;

const LP_FILE_SOLVER: &str = r#"
import re, sys
import numpy as np
from scipy.optimize import milp, LinearConstraint, Bounds
sections = {}
sec = None
for raw in sys.stdin.read().split("\n"):
    line = raw.strip()
    if not line or line.startswith("\\"):
        continue
    low = line.lower()
    if low in ("minimize", "subject to", "binary", "binaries", "end"):
        sec = "binary" if low == "binaries" else low
        sections[sec] = ""
        continue
    sections[sec] += " " + line
term = r"([+-]?)\s*(\d*)\s*(x\d+)"
obj = {}
for sign, coef, v in re.findall(term, sections["minimize"].split(":", 1)[1]):
    obj[v] = (-1 if sign == "-" else 1) * (int(coef) if coef else 1)
rows = []
for name, lhs, rhs in re.findall(r"(\w+)\s*:([^:]*?)>=\s*(\d+)", sections.get("subject to", "")):
    rows.append(([v for _, _, v in re.findall(term, lhs)], float(rhs)))
names = sorted(set(sections.get("binary", "").split()) | set(obj), key=lambda s: int(s[1:]))
idx = {v: i for i, v in enumerate(names)}
c = np.array([obj.get(v, 0) for v in names], dtype=float)
A = np.zeros((len(rows), len(names)))
lb = np.zeros(len(rows))
for i, (vs, r) in enumerate(rows):
    for v in vs:
        A[i, idx[v]] = 1
    lb[i] = r
cons = [LinearConstraint(A, lb, np.inf)] if rows else []
res = milp(c, constraints=cons, integrality=np.ones(len(names)), bounds=Bounds(0, 1))
print("INFEASIBLE" if res.status == 2 else round(res.fun))
"#;

fn lp_batch_script() -> String {
    let body = LP_FILE_SOLVER
        .replace("sys.stdin.read()", "text")
        .lines()
        .filter(|l| !l.starts_with("import") && !l.starts_with("from"))
        .map(|l| format!("    {l}"))
        .collect::<Vec<_>>()
        .join("\n");
    format!(
        "import re, sys\nimport numpy as np\nfrom scipy.optimize import milp, LinearConstraint, Bounds\n\
         def solve(text):\n{body}\nfor chunk in sys.stdin.read().split('@@@'):\n    if chunk.strip():\n        solve(chunk)\n"
    )
}

fn run_python(script: &str, input: &str) -> Option<String> {
    let mut child = Command::new("python3")
        .arg("-c")
        .arg(script)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .ok()?;
    child.stdin.take()?.write_all(input.as_bytes()).ok()?;
    let out = child.wait_with_output().ok()?;
    if !out.status.success() {
        return None;
    }
    Some(String::from_utf8(out.stdout).ok()?.trim().to_string())
}

/// `Some(true)` for satisfiable DIMACS input, `Some(false)` for unsatisfiable.
pub fn external_sat(dimacs: &str) -> Option<bool> {
    match run_python(DIMACS_AS_ILP, dimacs)?.as_str() {
        "SAT" => Some(true),
        "UNSAT" => Some(false),
        _ => None,
    }
}

/// Objectives of several LP files with a single interpreter start.
pub fn external_lp_objectives(lps: &[String]) -> Option<Vec<u64>> {
    let out = run_python(&lp_batch_script(), &lps.join("\n@@@\n"))?;
    let vals: Option<Vec<u64>> = out.lines().map(|l| l.trim().parse().ok()).collect();
    vals.filter(|v| v.len() == lps.len())
}

/// Optimal objective of a minimization LP file with binary variables.
pub fn external_lp_objective(lp: &str) -> Option<u64> {
    run_python(LP_FILE_SOLVER, lp)?.parse().ok()
}

use ups_core::chirotope::AbstractOrderType;
use ups_core::graphs::Graph;

/// Whether `pq` and `rs` cross, read straight off the four orientations.
pub fn cross_by_signs(ot: &AbstractOrderType, p: usize, q: usize, r: usize, s: usize) -> bool {
    ot.chi(p, q, r) * ot.chi(p, q, s) < 0 && ot.chi(r, s, p) * ot.chi(r, s, q) < 0
}

pub fn plane_under(g: &Graph, ot: &AbstractOrderType, pi: &[usize]) -> bool {
    let e = g.edges();
    for i in 0..e.len() {
        for j in i + 1..e.len() {
            let (a, b) = e[i];
            let (c, d) = e[j];
            let img = [pi[a], pi[b], pi[c], pi[d]];
            if img[0] == img[2] || img[0] == img[3] || img[1] == img[2] || img[1] == img[3] {
                continue;
            }
            if cross_by_signs(ot, img[0], img[1], img[2], img[3]) {
                return false;
            }
        }
    }
    true
}

/// Tries every injective placement of the vertices.
pub fn brute_force_embeddable(g: &Graph, ot: &AbstractOrderType) -> bool {
    fn rec(g: &Graph, ot: &AbstractOrderType, pi: &mut Vec<usize>, used: &mut [bool]) -> bool {
        if pi.len() == g.n() {
            return plane_under(g, ot, pi);
        }
        for p in 0..ot.n() {
            if !used[p] {
                used[p] = true;
                pi.push(p);
                let ok = rec(g, ot, pi, used);
                pi.pop();
                used[p] = false;
                if ok {
                    return true;
                }
            }
        }
        false
    }
    rec(g, ot, &mut Vec::new(), &mut vec![false; ot.n()])
}

/// All graphs on `n` vertices with `3n - 6` edges, connected and of
/// minimum degree three.
pub fn triangulation_candidates(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let m = 3 * n - 6;
    let mut out = Vec::new();
    for mask in 0u32..1 << pairs.len() {
        if mask.count_ones() as usize != m {
            continue;
        }
        let g = Graph::new(n, pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &e)| e))
            .unwrap();
        if ups_core::graphs::is_triangulation_candidate(&g) {
            out.push(g);
        }
    }
    out
}

/// Smallest number of columns hitting every row, by trying all subsets.
pub fn exhaustive_cover(rows: &[Vec<bool>], cols: usize) -> Option<usize> {
    (0u32..1 << cols)
        .filter(|mask| rows.iter().all(|r| (0..cols).any(|j| mask >> j & 1 == 1 && !r[j])))
        .map(|mask| mask.count_ones() as usize)
        .min()
}

/// Independent count oracle: every signotope on `n` points (all sign
/// patterns on increasing triples satisfying the 4-point axiom), reduced
/// up to relabeling and reflection by a brute-force search over labelings.
pub mod order_types {
    use std::collections::BTreeSet;

    use ups_core::chirotope::AbstractOrderType;

    pub fn all_signotopes(n: usize) -> Vec<Vec<i8>> {
        let triples: Vec<[usize; 3]> = (0..n)
            .flat_map(|i| (i + 1..n).flat_map(move |j| (j + 1..n).map(move |k| [i, j, k])))
            .collect();
        let index = |t: [usize; 3]| triples.iter().position(|&x| x == t).unwrap();
        let mut out = Vec::new();
        let mut signs = vec![0i8; triples.len()];
        fn rec(
            at: usize,
            triples: &[[usize; 3]],
            signs: &mut Vec<i8>,
            index: &dyn Fn([usize; 3]) -> usize,
            out: &mut Vec<Vec<i8>>,
        ) {
            if at == triples.len() {
                out.push(signs.clone());
                return;
            }
            let [j, k, l] = triples[at];
            for s in [1i8, -1] {
                signs[at] = s;
                // (i, j, k, l) completes when its lexicographically last triple
                // (j, k, l) is assigned
                let ok = (0..j).all(|i| {
                    let seq = [
                        signs[index([i, j, k])],
                        signs[index([i, j, l])],
                        signs[index([i, k, l])],
                        s,
                    ];
                    seq.windows(2).filter(|w| w[0] != w[1]).count() <= 1
                });
                if ok {
                    rec(at + 1, triples, signs, index, out);
                }
            }
        }
        rec(0, &triples, &mut signs, &index, &mut out);
        out
    }

    /// Lexicographically smallest upper-triangle lambda sequence (rows 1..n)
    /// over every labeling of `ot` and its mirror. Labelings are built point by
    /// point and cut as soon as the first row leaves 0, 1, 2, ...
    pub fn brute_canonical(ot: &AbstractOrderType) -> Vec<u8> {
        let n = ot.n();
        let mut best: Option<Vec<u8>> = None;
        for mirror in [ot.clone(), ot.reflect()] {
            let lam = |a: usize, b: usize| {
                (0..n).filter(|&k| k != a && k != b && mirror.chi(a, b, k) < 0).count() as u8
            };
            let mut perm = Vec::with_capacity(n);
            let mut used = vec![false; n];
            fn go(
                n: usize,
                perm: &mut Vec<usize>,
                used: &mut Vec<bool>,
                lam: &dyn Fn(usize, usize) -> u8,
                best: &mut Option<Vec<u8>>,
            ) {
                // No first row beats 0, 1, 2, ...: an interior point sees
                // points on both sides of every line, an extreme one sees each
                // count once.
                if perm.len() >= 2 {
                    let row = (1..perm.len()).map(|j| lam(perm[0], perm[j]));
                    if row.ne(0..perm.len() as u8 - 1) {
                        return;
                    }
                }
                if perm.len() == n {
                    let mut seq = Vec::new();
                    for i in 0..n {
                        for j in i + 1..n {
                            seq.push(lam(perm[i], perm[j]));
                        }
                    }
                    if best.as_ref().is_none_or(|b| seq < *b) {
                        *best = Some(seq);
                    }
                    return;
                }
                for p in 0..n {
                    if !used[p] {
                        used[p] = true;
                        perm.push(p);
                        go(n, perm, used, lam, best);
                        perm.pop();
                        used[p] = false;
                    }
                }
            }
            go(n, &mut perm, &mut used, &lam, &mut best);
        }
        best.unwrap()
    }

    pub fn oracle_count(n: usize) -> usize {
        let mut classes = BTreeSet::new();
        for s in all_signotopes(n) {
            let ot = AbstractOrderType::from_triple_signs(n, &s).unwrap();
            classes.insert(brute_canonical(&ot));
        }
        classes.len()
    }
}
