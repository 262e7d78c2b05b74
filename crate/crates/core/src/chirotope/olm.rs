//! Binary order-type files: one record of `(n-1)(n-2)/2` bytes per order
//! type, holding `lambda(i, j)` for `1 <= i < j < n` in lexicographic order.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use thiserror::Error;

use super::{ChirotopeError, SmallLambdaMatrix};

#[derive(Debug, Error)]
pub enum CodecError {
    #[error("file length {len} is not a multiple of the record size {record} for n = {n}")]
    TruncatedFile { n: usize, len: usize, record: usize },
    #[error("record {record}: entry {value} exceeds n - 2 = {max}")]
    InvalidEntry { record: usize, value: u8, max: usize },
    #[error("record {record}: signotope axiom violated on {quad:?}")]
    AxiomViolation { record: usize, quad: [usize; 4] },
    #[error("record {record}: {source}")]
    Inconsistent { record: usize, source: ChirotopeError },
    #[error(transparent)]
    Chirotope(#[from] ChirotopeError),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Whether decoding should rebuild every order type and check the axioms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Validation {
    /// Length and entry range only.
    #[default]
    Shallow,
    /// Also reconstruct each order type and run the signotope check.
    Full,
}

pub fn record_len(n: usize) -> usize {
    SmallLambdaMatrix::record_len(n)
}

pub fn encode(matrices: &[SmallLambdaMatrix]) -> Vec<u8> {
    let mut out = Vec::with_capacity(matrices.iter().map(|m| m.entries().len()).sum());
    for m in matrices {
        out.extend_from_slice(m.entries());
    }
    out
}

pub fn decode(
    bytes: &[u8],
    n: usize,
    validation: Validation,
) -> Result<Vec<SmallLambdaMatrix>, CodecError> {
    if !(3..=super::MAX_POINTS).contains(&n) {
        return Err(ChirotopeError::UnsupportedSize(n).into());
    }
    let rec = record_len(n);
    if !bytes.len().is_multiple_of(rec) {
        return Err(CodecError::TruncatedFile { n, len: bytes.len(), record: rec });
    }
    bytes
        .chunks_exact(rec)
        .enumerate()
        .map(|(record, chunk)| {
            if let Some(&value) = chunk.iter().find(|&&v| v as usize > n - 2) {
                return Err(CodecError::InvalidEntry { record, value, max: n - 2 });
            }
            let m = SmallLambdaMatrix::from_entries_unchecked(n, chunk.to_vec());
            if validation == Validation::Full {
                let ot = m
                    .to_order_type()
                    .map_err(|source| CodecError::Inconsistent { record, source })?;
                if let Some(quad) = ot.signotope_violation() {
                    return Err(CodecError::AxiomViolation { record, quad });
                }
            }
            Ok(m)
        })
        .collect()
}

pub fn read_file(
    path: &Path,
    n: usize,
    validation: Validation,
) -> Result<Vec<SmallLambdaMatrix>, CodecError> {
    decode(&fs::read(path)?, n, validation)
}

pub fn write_file(path: &Path, matrices: &[SmallLambdaMatrix]) -> Result<(), CodecError> {
    let mut f = io::BufWriter::new(fs::File::create(path)?);
    f.write_all(&encode(matrices))?;
    f.flush()?;
    Ok(())
}
