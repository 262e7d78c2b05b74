//! Abstract order types (chirotopes) of labeled point sets in general
//! position.
//!
//! An [`AbstractOrderType`] stores the orientation of every ordered index
//! triple. Orientations are `+1` (counterclockwise) or `-1` (clockwise);
//! `0` only ever appears on triples with a repeated index. Labels are
//! 0-based throughout the crate, so the "first point" of a natural labeling
//! is point `0`.

mod lambda;
pub mod olm;
pub mod realization;

pub use lambda::{CanonicalLabeling, SmallLambdaMatrix};

use std::fmt;

use thiserror::Error;

/// Largest point count an order type may have. The binary record format
/// stores one byte per lambda entry, which caps `n` well above this.
pub const MAX_POINTS: usize = 32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChirotopeError {
    #[error("points {0} and {1} coincide")]
    CoincidentPoints(usize, usize),
    #[error("degenerate input: points ({0}, {1}, {2}) are collinear")]
    DegenerateInput(usize, usize, usize),
    #[error("unsupported point count {0} (expected 3..={max})", max = MAX_POINTS)]
    UnsupportedSize(usize),
    #[error("indices {0:?} are not pairwise distinct")]
    IndexOverlap([usize; 4]),
    #[error("small lambda matrix does not describe an abstract order type")]
    InconsistentLambda,
    #[error("invalid lambda entry {value} for n = {n}")]
    InvalidLambdaEntry { n: usize, value: u8 },
    #[error("wrong number of lambda entries: expected {expected}, got {got}")]
    LambdaLength { expected: usize, got: usize },
}

/// Integer coordinates of labeled points.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PointSet {
    points: Vec<(i32, i32)>,
}

/// Sign of the homogeneous 3x3 orientation determinant, computed exactly.
pub fn orientation(a: (i32, i32), b: (i32, i32), c: (i32, i32)) -> i8 {
    let (ax, ay) = (a.0 as i128, a.1 as i128);
    let (bx, by) = (b.0 as i128, b.1 as i128);
    let (cx, cy) = (c.0 as i128, c.1 as i128);
    let det = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
    det.signum() as i8
}

impl PointSet {
    /// Builds a point set and checks general position.
    pub fn new(points: Vec<(i32, i32)>) -> Result<Self, ChirotopeError> {
        let ps = PointSet { points };
        ps.check_general_position()?;
        Ok(ps)
    }

    /// Builds a point set without the general-position check.
    pub fn new_unchecked(points: Vec<(i32, i32)>) -> Self {
        PointSet { points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[(i32, i32)] {
        &self.points
    }

    /// Keeps the first `k` points.
    pub fn prefix(&self, k: usize) -> PointSet {
        PointSet { points: self.points[..k.min(self.points.len())].to_vec() }
    }

    pub fn check_general_position(&self) -> Result<(), ChirotopeError> {
        let n = self.points.len();
        for i in 0..n {
            for j in i + 1..n {
                if self.points[i] == self.points[j] {
                    return Err(ChirotopeError::CoincidentPoints(i, j));
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    if orientation(self.points[i], self.points[j], self.points[k]) == 0 {
                        return Err(ChirotopeError::DegenerateInput(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    /// Parses a coordinate list such as `[(0,0),(4, 0),(5,3)]`.
    pub fn parse(text: &str) -> Option<PointSet> {
        let mut nums = Vec::new();
        let mut cur = String::new();
        for ch in text.chars() {
            if ch.is_ascii_digit() || ch == '-' {
                cur.push(ch);
            } else if !cur.is_empty() {
                nums.push(cur.parse::<i32>().ok()?);
                cur.clear();
            }
        }
        if !cur.is_empty() {
            nums.push(cur.parse::<i32>().ok()?);
        }
        if nums.len() % 2 != 0 {
            return None;
        }
        Some(PointSet::new_unchecked(nums.chunks(2).map(|c| (c[0], c[1])).collect()))
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, (x, y)) in self.points.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "({x},{y})")?;
        }
        write!(f, "]")
    }
}

/// A triple-orientation map on `n` labeled points.
///
/// The full `n^3` table is materialized so that predicate queries are a
/// single indexed load; antisymmetry is enforced on construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AbstractOrderType {
    n: usize,
    signs: Vec<i8>,
}

impl fmt::Debug for AbstractOrderType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AbstractOrderType(n={}, ", self.n)?;
        for i in 0..self.n {
            for j in i + 1..self.n {
                for k in j + 1..self.n {
                    f.write_str(if self.chi(i, j, k) > 0 { "+" } else { "-" })?;
                }
            }
        }
        write!(f, ")")
    }
}

/// Number of sign changes in a sequence of nonzero signs.
pub(crate) fn sign_changes(seq: &[i8]) -> usize {
    seq.windows(2).filter(|w| w[0] != w[1]).count()
}

impl AbstractOrderType {
    fn check_size(n: usize) -> Result<(), ChirotopeError> {
        if (3..=MAX_POINTS).contains(&n) {
            Ok(())
        } else {
            Err(ChirotopeError::UnsupportedSize(n))
        }
    }

    /// Builds an order type from the orientation of every increasing triple
    /// `i < j < k`. `f` must return `+1` or `-1`.
    pub fn from_fn(
        n: usize,
        mut f: impl FnMut(usize, usize, usize) -> i8,
    ) -> Result<Self, ChirotopeError> {
        Self::check_size(n)?;
        let mut ot = AbstractOrderType { n, signs: vec![0; n * n * n] };
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let s = f(i, j, k);
                    debug_assert!(s == 1 || s == -1);
                    ot.set(i, j, k, s);
                }
            }
        }
        Ok(ot)
    }

    /// Builds an order type from signs listed in lexicographic triple order.
    pub fn from_triple_signs(n: usize, signs: &[i8]) -> Result<Self, ChirotopeError> {
        let expected = n * n.saturating_sub(1) * n.saturating_sub(2) / 6;
        if signs.len() != expected {
            return Err(ChirotopeError::LambdaLength { expected, got: signs.len() });
        }
        let mut it = signs.iter().copied();
        Self::from_fn(n, |_, _, _| if it.next().unwrap_or(1) >= 0 { 1 } else { -1 })
    }

    /// The raw chirotope of a point set, in the point set's own labeling.
    pub fn from_points(ps: &PointSet) -> Result<Self, ChirotopeError> {
        Self::check_size(ps.len())?;
        ps.check_general_position()?;
        let p = ps.points();
        Self::from_fn(ps.len(), |i, j, k| orientation(p[i], p[j], p[k]))
    }

    /// Empty table used by builders that fill signs incrementally.
    pub(crate) fn blank(n: usize) -> Self {
        AbstractOrderType { n, signs: vec![0; n * n * n] }
    }

    /// Sets `chi(i,j,k) = s` and all five permuted entries.
    pub(crate) fn set(&mut self, i: usize, j: usize, k: usize, s: i8) {
        let n = self.n;
        let idx = |a: usize, b: usize, c: usize| (a * n + b) * n + c;
        self.signs[idx(i, j, k)] = s;
        self.signs[idx(j, k, i)] = s;
        self.signs[idx(k, i, j)] = s;
        self.signs[idx(j, i, k)] = -s;
        self.signs[idx(i, k, j)] = -s;
        self.signs[idx(k, j, i)] = -s;
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Orientation of the ordered triple; `0` iff two indices coincide.
    #[inline]
    pub fn chi(&self, i: usize, j: usize, k: usize) -> i8 {
        self.signs[(i * self.n + j) * self.n + k]
    }

    /// Signs of all increasing triples in lexicographic order.
    pub fn triple_signs(&self) -> Vec<i8> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                for k in j + 1..self.n {
                    out.push(self.chi(i, j, k));
                }
            }
        }
        out
    }

    /// The mirror image: every orientation flipped.
    pub fn reflect(&self) -> Self {
        AbstractOrderType { n: self.n, signs: self.signs.iter().map(|s| -s).collect() }
    }

    /// Relabels so that new point `i` is old point `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        let mut out = Self::blank(self.n);
        for i in 0..self.n {
            for j in i + 1..self.n {
                for k in j + 1..self.n {
                    out.set(i, j, k, self.chi(perm[i], perm[j], perm[k]));
                }
            }
        }
        out
    }

    /// Restriction to the points `keep`, relabeled `0..keep.len()` in the
    /// given order.
    pub fn restrict(&self, keep: &[usize]) -> Result<Self, ChirotopeError> {
        Self::check_size(keep.len())?;
        let mut out = Self::blank(keep.len());
        for i in 0..keep.len() {
            for j in i + 1..keep.len() {
                for k in j + 1..keep.len() {
                    out.set(i, j, k, self.chi(keep[i], keep[j], keep[k]));
                }
            }
        }
        Ok(out)
    }

    /// First increasing 4-tuple, in lexicographic order, whose triple
    /// orientations change sign more than once.
    pub fn signotope_violation(&self) -> Option<[usize; 4]> {
        let n = self.n;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    for l in k + 1..n {
                        let seq = [
                            self.chi(i, j, k),
                            self.chi(i, j, l),
                            self.chi(i, k, l),
                            self.chi(j, k, l),
                        ];
                        if sign_changes(&seq) > 1 {
                            return Some([i, j, k, l]);
                        }
                    }
                }
            }
        }
        None
    }

    pub fn is_signotope(&self) -> bool {
        self.signotope_violation().is_none()
    }

    /// `chi(0, i, j) = +1` for all `0 < i < j`.
    pub fn is_naturally_labeled(&self) -> bool {
        (1..self.n).all(|i| (i + 1..self.n).all(|j| self.chi(0, i, j) > 0))
    }

    /// `lambda[a * n + b]` counts the points strictly right of the directed
    /// line `a -> b`, i.e. the `k` with `chi(a, b, k) = -1`.
    pub fn lambda_counts(&self) -> Vec<u8> {
        let n = self.n;
        let mut lam = vec![0u8; n * n];
        for a in 0..n {
            for b in 0..n {
                if a != b {
                    lam[a * n + b] = (0..n).filter(|&k| self.chi(a, b, k) < 0).count() as u8;
                }
            }
        }
        lam
    }

    /// Whether `p` lies strictly inside triangle `abc`.
    pub fn in_triangle(&self, p: usize, a: usize, b: usize, c: usize) -> bool {
        let o = self.chi(a, b, c);
        self.chi(a, b, p) == o && self.chi(b, c, p) == o && self.chi(c, a, p) == o
    }

    /// Points on the boundary of the convex hull, in increasing label order.
    pub fn extreme_points(&self) -> Vec<usize> {
        let all: Vec<usize> = (0..self.n).collect();
        self.extreme_points_of(&all)
    }

    /// Extreme points of the sub-configuration `subset`.
    ///
    /// `p` is extreme iff some other point `q` of the subset has every
    /// remaining point strictly to the left of `p -> q`.
    pub fn extreme_points_of(&self, subset: &[usize]) -> Vec<usize> {
        if subset.len() <= 2 {
            return subset.to_vec();
        }
        let mut out: Vec<usize> = subset
            .iter()
            .copied()
            .filter(|&p| {
                subset.iter().any(|&q| {
                    q != p && subset.iter().all(|&k| k == p || k == q || self.chi(p, q, k) > 0)
                })
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Sizes of the convex layers obtained by repeated hull peeling.
    pub fn convex_layers(&self) -> Vec<usize> {
        let mut rest: Vec<usize> = (0..self.n).collect();
        let mut sizes = Vec::new();
        while !rest.is_empty() {
            let hull = self.extreme_points_of(&rest);
            sizes.push(hull.len());
            rest.retain(|p| !hull.contains(p));
        }
        sizes
    }

    /// Whether the segments `pq` and `rs` cross. The four indices must be
    /// pairwise distinct.
    pub fn segments_cross(
        &self,
        p: usize,
        q: usize,
        r: usize,
        s: usize,
    ) -> Result<bool, ChirotopeError> {
        if p == q || p == r || p == s || q == r || q == s || r == s {
            return Err(ChirotopeError::IndexOverlap([p, q, r, s]));
        }
        Ok(self.crosses(p, q, r, s))
    }

    /// Unchecked crossing test for callers that guarantee distinct indices.
    #[inline]
    pub(crate) fn crosses(&self, p: usize, q: usize, r: usize, s: usize) -> bool {
        self.chi(p, q, r) != self.chi(p, q, s) && self.chi(r, s, p) != self.chi(r, s, q)
    }

    /// Lexicographically minimal small lambda matrix over all relabelings
    /// and the mirror image.
    pub fn canonical_form(&self) -> SmallLambdaMatrix {
        lambda::canonical_labeling(self).matrix
    }

    /// Canonical matrix together with the relabeling that produces it.
    pub fn canonical_labeling(&self) -> CanonicalLabeling {
        lambda::canonical_labeling(self)
    }

    /// The order type relabeled (and possibly mirrored) into canonical form.
    pub fn canonicalize(&self) -> AbstractOrderType {
        let c = lambda::canonical_labeling(self);
        let ot = self.relabel(&c.perm);
        if c.reflected {
            ot.reflect()
        } else {
            ot
        }
    }

    /// Small lambda matrix of the current labeling. Only meaningful as an
    /// encoding when the labeling is natural.
    pub fn small_lambda(&self) -> SmallLambdaMatrix {
        let n = self.n;
        let lam = self.lambda_counts();
        let mut entries = Vec::with_capacity(SmallLambdaMatrix::record_len(n));
        for i in 1..n {
            for j in i + 1..n {
                entries.push(lam[i * n + j]);
            }
        }
        SmallLambdaMatrix::from_entries_unchecked(n, entries)
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    fn ps(p: &[(i32, i32)]) -> PointSet {
        PointSet::new(p.to_vec()).unwrap()
    }

    #[test]
    fn ccw_triangle_is_positive() {
        let ot = AbstractOrderType::from_points(&ps(&[(0, 0), (1, 0), (0, 1)])).unwrap();
        assert_eq!(ot.chi(0, 1, 2), 1);
        assert_eq!(ot.chi(1, 0, 2), -1);
        assert_eq!(ot.chi(2, 0, 1), 1);
    }

    #[test]
    fn collinear_points_are_rejected() {
        let err = PointSet::new(vec![(0, 0), (1, 1), (2, 2)]).unwrap_err();
        assert_eq!(err, ChirotopeError::DegenerateInput(0, 1, 2));
        let err = PointSet::new(vec![(0, 0), (3, 1), (0, 0)]).unwrap_err();
        assert_eq!(err, ChirotopeError::CoincidentPoints(0, 2));
    }

    #[test]
    fn large_coordinates_do_not_overflow() {
        let m = i32::MAX;
        assert_eq!(orientation((-m, -m), (m, -m), (m, m)), 1);
        assert_eq!(orientation((-m, -m), (m, m), (m - 1, m)), 1);
        assert_eq!(orientation((-m, -m), (0, 0), (m, m)), 0);
    }

    #[test]
    fn signotope_examples() {
        let ot = AbstractOrderType::from_triple_signs(4, &[1, 1, 1, 1]).unwrap();
        assert_eq!(ot.signotope_violation(), None);
        let ot = AbstractOrderType::from_triple_signs(4, &[1, -1, 1, 1]).unwrap();
        assert_eq!(ot.signotope_violation(), Some([0, 1, 2, 3]));
        let quad = ps(&[(0, 0), (4, 0), (5, 3), (1, 4)]);
        assert!(AbstractOrderType::from_points(&quad).unwrap().is_signotope());
    }

    #[test]
    fn convex_quadrilateral_lambda() {
        let quad = ps(&[(0, 0), (4, 0), (5, 3), (1, 4)]);
        let ot = AbstractOrderType::from_points(&quad).unwrap();
        assert!(ot.is_naturally_labeled());
        assert_eq!(ot.small_lambda().entries(), &[0, 1, 0]);
        assert_eq!(ot.canonical_form().entries(), &[0, 1, 0]);
    }

    #[test]
    fn layers_and_extremes() {
        let quad = ps(&[(0, 0), (4, 0), (5, 3), (1, 4)]);
        let ot = AbstractOrderType::from_points(&quad).unwrap();
        assert_eq!(ot.extreme_points(), vec![0, 1, 2, 3]);
        assert_eq!(ot.convex_layers(), vec![4]);
        let tri = ps(&[(0, 0), (4, 0), (1, 1), (0, 4)]);
        let ot = AbstractOrderType::from_points(&tri).unwrap();
        assert_eq!(ot.extreme_points(), vec![0, 1, 3]);
        assert_eq!(ot.convex_layers(), vec![3, 1]);
    }

    #[test]
    fn crossing_examples() {
        let x = ps(&[(0, 0), (2, 2), (0, 2), (2, 0)]);
        let ot = AbstractOrderType::from_points(&x).unwrap();
        assert_eq!(ot.segments_cross(0, 1, 2, 3), Ok(true));
        let quad = ps(&[(0, 0), (4, 0), (5, 3), (1, 4)]);
        let ot = AbstractOrderType::from_points(&quad).unwrap();
        assert_eq!(ot.segments_cross(0, 1, 2, 3), Ok(false));
        assert_eq!(ot.segments_cross(1, 2, 3, 0), Ok(false));
        assert_eq!(ot.segments_cross(0, 2, 1, 3), Ok(true));
        assert_eq!(
            ot.segments_cross(0, 1, 1, 3),
            Err(ChirotopeError::IndexOverlap([0, 1, 1, 3]))
        );
    }

    #[test]
    fn parse_listing_style_coordinates() {
        let p = PointSet::parse("[(974, 10),(0,-3)]").unwrap();
        assert_eq!(p.points(), &[(974, 10), (0, -3)]);
        assert_eq!(p.to_string(), "[(974,10),(0,-3)]");
    }
}
