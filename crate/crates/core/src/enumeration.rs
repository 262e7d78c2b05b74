//! Enumeration of abstract order types by single-point extension.
//!
//! A new point is appended to every natural labeling of an order type (and
//! of its mirror image) in every way that keeps the signotope axioms, and
//! each result is reduced to its canonical small lambda matrix.
//!
//! Appending after all natural labelings is what makes the search
//! complete: an order type on `n + 1` points in canonical labeling, minus
//! its last point, is *some* natural labeling of an `n`-point order type,
//! not necessarily the canonical one.

use std::collections::{BTreeSet, HashSet};
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use thiserror::Error;

use crate::chirotope::olm::{self, CodecError, Validation};
use crate::chirotope::{sign_changes, AbstractOrderType, SmallLambdaMatrix, MAX_POINTS};
use crate::shard::Shard;

#[derive(Debug, Error)]
pub enum EnumerationError {
    #[error(transparent)]
    Codec(#[from] CodecError),
    #[error("output {0} already exists (use force to overwrite)")]
    OutputExists(PathBuf),
    #[error("cannot extend order types on {0} points")]
    TooLarge(usize),
}

/// Distinct natural labelings of `ot` and of its mirror image: one per
/// extreme point taken as point `0`.
pub fn natural_labelings(ot: &AbstractOrderType) -> Vec<AbstractOrderType> {
    let n = ot.n();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for base in [ot.clone(), ot.reflect()] {
        let lam = base.lambda_counts();
        for h in base.extreme_points() {
            let mut perm = vec![h; n];
            for q in (0..n).filter(|&q| q != h) {
                perm[lam[h * n + q] as usize + 1] = q;
            }
            let labeled = base.relabel(&perm);
            if seen.insert(labeled.small_lambda()) {
                out.push(labeled);
            }
        }
    }
    out
}

/// Calls `visit` with every signotope-consistent extension of the naturally
/// labeled `ot` by a new point labeled `ot.n()` that comes last in the
/// angular order around point `0`, so the extension is naturally labeled
/// too. Sign choices are explored for pairs `(i, j)` in lexicographic
/// order, `+` before `-`.
pub fn for_each_extension(ot: &AbstractOrderType, mut visit: impl FnMut(&AbstractOrderType)) {
    debug_assert!(ot.is_naturally_labeled());
    let n = ot.n();
    let m = n + 1;
    let mut ext = AbstractOrderType::blank(m);
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                ext.set(i, j, k, ot.chi(i, j, k));
            }
        }
    }
    for j in 1..n {
        ext.set(0, j, n, 1);
    }
    let pairs: Vec<(usize, usize)> =
        (1..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    extend_rec(&mut ext, &pairs, 0, &mut visit);
}

fn extend_rec(
    ext: &mut AbstractOrderType,
    pairs: &[(usize, usize)],
    at: usize,
    visit: &mut impl FnMut(&AbstractOrderType),
) {
    if at == pairs.len() {
        visit(ext);
        return;
    }
    let new = ext.n() - 1;
    let (a, b) = pairs[at];
    for s in [1i8, -1] {
        ext.set(a, b, new, s);
        if consistent_after(ext, a, b, new) {
            extend_rec(ext, pairs, at + 1, visit);
        }
    }
}

/// Checks the 4-tuples touched by the choice of `chi(a, b, new)`: tuples
/// `(i, a, b, new)` are now complete, tuples `(a, c, b, new)` have a
/// three-sign prefix.
fn consistent_after(ext: &AbstractOrderType, a: usize, b: usize, new: usize) -> bool {
    for i in 0..a {
        let seq = [ext.chi(i, a, b), ext.chi(i, a, new), ext.chi(i, b, new), ext.chi(a, b, new)];
        if sign_changes(&seq) > 1 {
            return false;
        }
    }
    for c in a + 1..b {
        let seq = [ext.chi(a, c, b), ext.chi(a, c, new), ext.chi(a, b, new)];
        if sign_changes(&seq) > 1 {
            return false;
        }
    }
    true
}

/// Canonical matrices of all one-point extensions, sorted and deduplicated.
pub fn extension_matrices(ot: &AbstractOrderType) -> BTreeSet<SmallLambdaMatrix> {
    let mut out = BTreeSet::new();
    for labeled in natural_labelings(ot) {
        for_each_extension(&labeled, |e| {
            out.insert(e.canonical_form());
        });
    }
    out
}

/// All order types on `n + 1` points obtained from `ot`, in canonical
/// labeling, sorted by canonical matrix.
pub fn extend_by_one(ot: &AbstractOrderType) -> Vec<AbstractOrderType> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for labeled in natural_labelings(ot) {
        for_each_extension(&labeled, |e| {
            let c = e.canonical_labeling();
            if seen.insert(c.matrix.clone()) {
                let relabeled = e.relabel(&c.perm);
                let canon = if c.reflected { relabeled.reflect() } else { relabeled };
                out.push((c.matrix, canon));
            }
        });
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out.into_iter().map(|(_, ot)| ot).collect()
}

/// Extends every matrix of a level and merges the results.
pub fn extend_level(level: &[SmallLambdaMatrix]) -> Result<Vec<SmallLambdaMatrix>, CodecError> {
    let sets: Vec<BTreeSet<SmallLambdaMatrix>> = level
        .par_iter()
        .map(|m| m.to_order_type().map(|ot| extension_matrices(&ot)))
        .collect::<Result<_, _>>()?;
    let mut all = BTreeSet::new();
    for s in sets {
        all.extend(s);
    }
    Ok(all.into_iter().collect())
}

/// The unique order type on three points.
pub fn seed() -> SmallLambdaMatrix {
    SmallLambdaMatrix::new(3, vec![0]).expect("valid seed")
}

/// Canonical matrices of all abstract order types on `n` points, built up
/// from the seed.
pub fn enumerate(n: usize) -> Result<Vec<SmallLambdaMatrix>, CodecError> {
    let mut level = vec![seed()];
    for _ in 3..n {
        level = extend_level(&level)?;
    }
    Ok(level)
}

/// One unit of a sharded extension run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionShard {
    pub shard: Shard,
    pub input: PathBuf,
    pub output: PathBuf,
}

impl ExtensionShard {
    /// Output path `<input>.ext<from>_<to>.bin` next to the input.
    pub fn with_default_output(input: impl Into<PathBuf>, shard: Shard) -> Self {
        let input = input.into();
        let mut name = input.as_os_str().to_owned();
        name.push(format!(".ext{}.bin", shard.suffix()));
        ExtensionShard { shard, input, output: PathBuf::from(name) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtensionReport {
    /// Input records owned by the shard.
    pub processed: usize,
    /// Distinct order types written.
    pub produced: usize,
    /// Total input records.
    pub total_input: usize,
}

/// Extends the shard's input records and writes their canonical extensions,
/// sorted and deduplicated within the shard.
pub fn run_extension(
    job: &ExtensionShard,
    n: usize,
    force: bool,
) -> Result<ExtensionReport, EnumerationError> {
    if n + 1 > MAX_POINTS {
        return Err(EnumerationError::TooLarge(n));
    }
    if job.output.exists() && !force {
        return Err(EnumerationError::OutputExists(job.output.clone()));
    }
    let input = olm::read_file(&job.input, n, Validation::Shallow)?;
    let mine: Vec<&SmallLambdaMatrix> =
        job.shard.indices(input.len()).map(|i| &input[i]).collect();
    let owned: Vec<SmallLambdaMatrix> = mine.iter().map(|m| (*m).clone()).collect();
    let out = extend_level(&owned)?;
    olm::write_file(&job.output, &out)?;
    Ok(ExtensionReport { processed: mine.len(), produced: out.len(), total_input: input.len() })
}

/// Merges per-shard outputs into one sorted, duplicate-free file. Returns
/// the number of records written.
pub fn merge_dedup(
    n: usize,
    inputs: &[impl AsRef<Path>],
    output: &Path,
    force: bool,
) -> Result<usize, EnumerationError> {
    if output.exists() && !force {
        return Err(EnumerationError::OutputExists(output.to_path_buf()));
    }
    let mut all = BTreeSet::new();
    for p in inputs {
        all.extend(olm::read_file(p.as_ref(), n, Validation::Shallow)?);
    }
    let all: Vec<_> = all.into_iter().collect();
    olm::write_file(output, &all)?;
    Ok(all.len())
}

/// Reads a binary file of order types on `n` points and rebuilds each one.
pub fn load_order_types(path: &Path, n: usize) -> Result<Vec<AbstractOrderType>, CodecError> {
    let bytes = fs::read(path)?;
    decode_order_types(&bytes, n)
}

pub fn decode_order_types(bytes: &[u8], n: usize) -> Result<Vec<AbstractOrderType>, CodecError> {
    olm::decode(bytes, n, Validation::Shallow)?
        .par_iter()
        .enumerate()
        .map(|(record, m)| {
            m.to_order_type().map_err(|source| CodecError::Inconsistent { record, source })
        })
        .collect()
}
