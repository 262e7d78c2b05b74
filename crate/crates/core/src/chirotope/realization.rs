//! Reader for realization files that store one point set per record as
//! `x1 y1 ... xn yn`: one byte per coordinate for `n <= 8`, two bytes
//! (little endian) for larger `n`.

use super::PointSet;
use super::olm::CodecError;

pub fn coordinate_width(n: usize) -> usize {
    if n <= 8 {
        1
    } else {
        2
    }
}

pub fn decode(bytes: &[u8], n: usize) -> Result<Vec<PointSet>, CodecError> {
    let width = coordinate_width(n);
    let rec = 2 * n * width;
    if rec == 0 || !bytes.len().is_multiple_of(rec) {
        return Err(CodecError::TruncatedFile { n, len: bytes.len(), record: rec });
    }
    Ok(bytes
        .chunks_exact(rec)
        .map(|chunk| {
            let coord = |t: usize| -> i32 {
                if width == 1 {
                    chunk[t] as i32
                } else {
                    u16::from_le_bytes([chunk[2 * t], chunk[2 * t + 1]]) as i32
                }
            };
            PointSet::new_unchecked((0..n).map(|i| (coord(2 * i), coord(2 * i + 1))).collect())
        })
        .collect())
}
