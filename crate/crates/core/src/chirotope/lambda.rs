use super::{AbstractOrderType, ChirotopeError};

/// The stored part of a naturally labeled small lambda matrix: the entries
/// `lambda(i, j)` for `1 <= i < j < n`, row by row.
///
/// Row `0` is implied (`lambda(0, j) = j - 1`), as is the lower triangle
/// (`lambda(i, j) + lambda(j, i) = n - 2`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SmallLambdaMatrix {
    n: usize,
    entries: Vec<u8>,
}

/// Result of canonicalization: the minimal matrix and how to reach it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalLabeling {
    pub matrix: SmallLambdaMatrix,
    /// New label `i` is old point `perm[i]`.
    pub perm: Vec<usize>,
    /// Whether the mirror image was taken.
    pub reflected: bool,
}

impl SmallLambdaMatrix {
    /// Bytes per record: `(n - 1)(n - 2) / 2`.
    pub const fn record_len(n: usize) -> usize {
        (n - 1) * (n - 2) / 2
    }

    pub fn new(n: usize, entries: Vec<u8>) -> Result<Self, ChirotopeError> {
        if !(3..=super::MAX_POINTS).contains(&n) {
            return Err(ChirotopeError::UnsupportedSize(n));
        }
        let expected = Self::record_len(n);
        if entries.len() != expected {
            return Err(ChirotopeError::LambdaLength { expected, got: entries.len() });
        }
        if let Some(&value) = entries.iter().find(|&&v| v as usize > n - 2) {
            return Err(ChirotopeError::InvalidLambdaEntry { n, value });
        }
        Ok(SmallLambdaMatrix { n, entries })
    }

    pub(crate) fn from_entries_unchecked(n: usize, entries: Vec<u8>) -> Self {
        SmallLambdaMatrix { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<u8> {
        self.entries
    }

    /// `lambda(i, j)` for any `i != j`, including the implied entries.
    pub fn get(&self, i: usize, j: usize) -> u8 {
        assert!(i != j && i < self.n && j < self.n);
        let n = self.n;
        if i == 0 {
            return (j - 1) as u8;
        }
        if j == 0 {
            return (n - 2 - (i - 1)) as u8;
        }
        if i < j {
            self.entries[self.offset(i, j)]
        } else {
            (n - 2) as u8 - self.entries[self.offset(j, i)]
        }
    }

    fn offset(&self, i: usize, j: usize) -> usize {
        // rows 1..i-1 hold (n-1-r) entries each
        let before: usize = (1..i).map(|r| self.n - 1 - r).sum();
        before + (j - i - 1)
    }

    /// Reconstructs the naturally labeled order type encoded by the matrix.
    ///
    /// Points `1..n` are read as wires of a pseudoline arrangement ordered by
    /// slope; `lambda(i, j)` is the number of wires above the crossing of
    /// `i` and `j`. The arrangement is rebuilt by sweeping adjacent
    /// transpositions, backtracking if a greedy choice dead-ends.
    pub fn to_order_type(&self) -> Result<AbstractOrderType, ChirotopeError> {
        let n = self.n;
        let wires = n - 1;
        let mut ot = AbstractOrderType::blank(n);
        for i in 1..n {
            for j in i + 1..n {
                ot.set(0, i, j, 1);
            }
        }
        if wires >= 2 {
            // crossing (a, b) must happen between positions h and h + 1
            let mut level = vec![usize::MAX; n * n];
            for a in 1..n {
                for b in a + 1..n {
                    let lam = self.get(a, b) as usize;
                    if lam > n - 3 {
                        return Err(ChirotopeError::InconsistentLambda);
                    }
                    level[a * n + b] = n - 3 - lam;
                }
            }
            let mut order: Vec<usize> = (1..n).rev().collect();
            let mut sweep = Sweep { n, level: &level, ot: &mut ot };
            if !sweep.run(&mut order, wires * (wires - 1) / 2) {
                return Err(ChirotopeError::InconsistentLambda);
            }
        }
        if ot.small_lambda() != *self {
            return Err(ChirotopeError::InconsistentLambda);
        }
        Ok(ot)
    }
}

struct Sweep<'a> {
    n: usize,
    level: &'a [usize],
    ot: &'a mut AbstractOrderType,
}

impl Sweep<'_> {
    fn run(&mut self, order: &mut Vec<usize>, remaining: usize) -> bool {
        if remaining == 0 {
            return true;
        }
        let n = self.n;
        for h in 0..order.len() - 1 {
            let (below, above) = (order[h], order[h + 1]);
            // uncrossed pairs still have the larger label below
            if below <= above || self.level[above * n + below] != h {
                continue;
            }
            // a wire b with above < b < below fixes chi(above, b, below):
            // positive iff b runs over the crossing
            for (pos, &b) in order.iter().enumerate() {
                if b > above && b < below {
                    self.ot.set(above, b, below, if pos > h + 1 { 1 } else { -1 });
                }
            }
            order.swap(h, h + 1);
            if self.run(order, remaining - 1) {
                return true;
            }
            order.swap(h, h + 1);
        }
        false
    }
}

/// Minimizes the small lambda matrix over natural labelings of the order
/// type and of its mirror image. Any lexicographically minimal labeling has
/// first row `0, 1, ..., n - 2`, which forces point `0` onto the hull and
/// the remaining points into angular order around it.
pub(crate) fn canonical_labeling(ot: &AbstractOrderType) -> CanonicalLabeling {
    let n = ot.n();
    let lam = ot.lambda_counts();
    let top = (n - 2) as u8;
    let mut best: Option<CanonicalLabeling> = None;
    let mut perm = vec![0usize; n];
    let mut cand = Vec::with_capacity(SmallLambdaMatrix::record_len(n));
    for reflected in [false, true] {
        let lam_at = |a: usize, b: usize| {
            let v = lam[a * n + b];
            if reflected {
                top - v
            } else {
                v
            }
        };
        for h in 0..n {
            // h is extreme iff some lambda(h, q) vanishes
            if !(0..n).any(|q| q != h && lam_at(h, q) == 0) {
                continue;
            }
            perm[0] = h;
            for q in (0..n).filter(|&q| q != h) {
                perm[lam_at(h, q) as usize + 1] = q;
            }
            cand.clear();
            let mut decided_worse = false;
            let mut decided_better = best.is_none();
            'fill: for i in 1..n {
                for j in i + 1..n {
                    let v = lam_at(perm[i], perm[j]);
                    if !decided_better {
                        let b = best.as_ref().unwrap().matrix.entries[cand.len()];
                        if v > b {
                            decided_worse = true;
                            break 'fill;
                        }
                        if v < b {
                            decided_better = true;
                        }
                    }
                    cand.push(v);
                }
            }
            if !decided_worse && decided_better {
                best = Some(CanonicalLabeling {
                    matrix: SmallLambdaMatrix { n, entries: cand.clone() },
                    perm: perm.clone(),
                    reflected,
                });
            }
        }
    }
    best.expect("an abstract order type has at least one extreme point")
}
