//! graph6: a vertex count followed by the upper triangle of the adjacency
//! matrix, column by column, packed six bits per printable byte.

use super::{parse_err, Graph, GraphError};

const HEADER: &str = ">>graph6<<";

fn six(bytes: &[u8], at: usize) -> Result<u64, GraphError> {
    match bytes.get(at) {
        Some(&b) if (63..=126).contains(&b) => Ok((b - 63) as u64),
        Some(&b) => Err(parse_err(at, format!("byte {b:#04x} outside the graph6 range"))),
        None => Err(parse_err(at, "unexpected end of input")),
    }
}

pub fn parse_graph6(text: &str) -> Result<Graph, GraphError> {
    let text = text.trim_end_matches(['\n', '\r']);
    let skip = if text.starts_with(HEADER) { HEADER.len() } else { 0 };
    let bytes = text.as_bytes();
    let at = |i: usize| skip + i;
    let first = six(bytes, at(0))?;
    let (n, mut pos) = if first < 63 {
        (first as usize, 1)
    } else if six(bytes, at(1))? < 63 {
        let mut n = 0u64;
        for i in 1..4 {
            n = (n << 6) | six(bytes, at(i))?;
        }
        (n as usize, 4)
    } else {
        let mut n = 0u64;
        for i in 2..8 {
            n = (n << 6) | six(bytes, at(i))?;
        }
        (n as usize, 8)
    };
    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    let have = bytes.len() - at(pos);
    if have != need {
        return Err(parse_err(at(pos), format!("expected {need} adjacency bytes, found {have}")));
    }
    let mut edges = Vec::new();
    let mut word = 0u64;
    let mut left = 0;
    for j in 1..n {
        for i in 0..j {
            if left == 0 {
                word = six(bytes, at(pos))?;
                pos += 1;
                left = 6;
            }
            left -= 1;
            if (word >> left) & 1 == 1 {
                edges.push((i, j));
            }
        }
    }
    edges.sort_unstable();
    Graph::new(n, edges)
}

pub fn emit_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n < 63 {
        out.push(n as u8 + 63);
    } else if n < 258048 {
        out.push(126);
        for s in [12, 6, 0] {
            out.push(((n >> s) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for s in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> s) & 63) as u8 + 63);
        }
    }
    let mut adj = vec![false; n * n];
    for &(u, v) in g.edges() {
        adj[u * n + v] = true;
    }
    let mut word = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            word = (word << 1) | adj[i * n + j] as u8;
            filled += 1;
            if filled == 6 {
                out.push(word + 63);
                word = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((word << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}
