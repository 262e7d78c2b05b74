//! Resolution of input arguments: bundled `data:` names, generated graph
//! families and files on disk.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use ups_core::chirotope::{olm, realization, AbstractOrderType, PointSet, SmallLambdaMatrix};
use ups_core::data;
use ups_core::graphs::{emit_edge_list, generate_stacked, parse_edge_list_file, parse_graph6_file, Graph};

use crate::manifest::sha256_hex;
use crate::UsageError;

pub struct OrderTypes {
    pub label: String,
    pub digest: String,
    pub n: usize,
    pub items: Vec<AbstractOrderType>,
    /// Record written for each order type when it survives a filter: the
    /// input record for binary files, the canonical matrix otherwise.
    pub records: Vec<SmallLambdaMatrix>,
    /// Coordinates, when the input had them.
    pub points: Option<Vec<PointSet>>,
}

pub struct Graphs {
    pub label: String,
    pub digest: String,
    pub graphs: Vec<Graph>,
}

fn from_point_sets(label: String, digest: String, sets: Vec<PointSet>) -> Result<OrderTypes> {
    let Some(first) = sets.first() else { bail!("{label}: no point sets") };
    let n = first.len();
    let mut items = Vec::with_capacity(sets.len());
    for (i, ps) in sets.iter().enumerate() {
        if ps.len() != n {
            bail!("{label}: point set {i} has {} points, expected {n}", ps.len());
        }
        items.push(
            AbstractOrderType::from_points(ps).with_context(|| format!("{label}: point set {i}"))?,
        );
    }
    let records = items.iter().map(|ot| ot.canonical_form()).collect();
    Ok(OrderTypes { label, digest, n, items, records, points: Some(sets) })
}

fn from_records(label: String, digest: String, n: usize, bytes: &[u8]) -> Result<OrderTypes> {
    let records = olm::decode(bytes, n, olm::Validation::Shallow).with_context(|| label.clone())?;
    let items = records
        .iter()
        .enumerate()
        .map(|(i, m)| m.to_order_type().with_context(|| format!("{label}: record {i}")))
        .collect::<Result<_>>()?;
    Ok(OrderTypes { label, digest, n, items, records, points: None })
}

fn point_lines(text: &str, label: &str) -> Result<Vec<PointSet>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(k, l)| {
            PointSet::parse(l).with_context(|| format!("{label}: line {}: malformed point list", k + 1))
        })
        .collect()
}

/// `data:listing1`, `data:listing2`, `data:n3`, a `.txt` file with one
/// point list per line, a realization file (`realizations`), or a binary
/// small-lambda file. The last two need `n`.
pub fn load_order_types(source: &str, n: Option<usize>, realizations: bool) -> Result<OrderTypes> {
    let label = source.to_string();
    match source {
        "data:listing1" => {
            let digest = sha256_hex(data::LISTING1_POINTS.as_bytes());
            return from_point_sets(label, digest, vec![data::listing1()]);
        }
        "data:listing2" => {
            let digest = sha256_hex(data::LISTING2_POINTS.as_bytes());
            return from_point_sets(label, digest, vec![data::listing2()]);
        }
        "data:n3" => {
            let digest = sha256_hex(data::N3_ORDER_TYPES);
            return from_records(label, digest, 3, data::N3_ORDER_TYPES);
        }
        s if s.starts_with("data:") => {
            return Err(UsageError(format!("unknown order type data set {s:?}")).into());
        }
        _ => {}
    }
    let path = Path::new(source);
    let bytes = fs::read(path).with_context(|| format!("reading {source}"))?;
    let digest = sha256_hex(&bytes);
    if path.extension().is_some_and(|e| e == "txt") {
        let text = String::from_utf8(bytes).with_context(|| format!("{source}: not UTF-8"))?;
        let sets = point_lines(&text, source)?;
        return from_point_sets(label, digest, sets);
    }
    let n = n.ok_or_else(|| UsageError(format!("{source}: binary input needs --points <n>")))?;
    if realizations {
        let sets = realization::decode(&bytes, n).with_context(|| source.to_string())?;
        from_point_sets(label, digest, sets)
    } else {
        from_records(label, digest, n, &bytes)
    }
}

/// `data:G`, `data:H`, `data:G+H`, `data:n8c4`, `stacked:<n>` or a file in
/// graph6 or edge-list format (told apart by the first character).
pub fn load_graphs(source: &str) -> Result<Graphs> {
    let bundled = |text: &str, graphs: Vec<Graph>| Graphs {
        label: source.to_string(),
        digest: sha256_hex(text.as_bytes()),
        graphs,
    };
    match source {
        "data:G" => return Ok(bundled(data::CONFLICT_G, data::conflict_g())),
        "data:H" => return Ok(bundled(data::CONFLICT_H, data::conflict_h())),
        "data:G+H" => return Ok(bundled(data::CONFLICT_ALL, data::conflict_all())),
        "data:n8c4" => return Ok(bundled(data::N8C4_GRAPH6, data::n8c4())),
        s if s.starts_with("data:") => {
            return Err(UsageError(format!("unknown graph data set {s:?}")).into());
        }
        _ => {}
    }
    if let Some(n) = source.strip_prefix("stacked:") {
        let n: usize = n.parse().map_err(|_| UsageError(format!("bad vertex count in {source:?}")))?;
        if n < 4 {
            return Err(UsageError(format!("stacked triangulations need n >= 4, got {n}")).into());
        }
        let graphs: Vec<Graph> = generate_stacked(n).iter().map(|s| s.graph()).collect();
        let text: String = graphs.iter().map(|g| emit_edge_list(g) + "\n").collect();
        return Ok(Graphs { label: source.to_string(), digest: sha256_hex(text.as_bytes()), graphs });
    }
    let text = fs::read_to_string(source).with_context(|| format!("reading {source}"))?;
    let first = text.trim_start().chars().next();
    let graphs = if first.is_some_and(|c| c.is_ascii_digit()) {
        parse_edge_list_file(&text)
    } else {
        parse_graph6_file(&text)
    }
    .with_context(|| source.to_string())?;
    if graphs.is_empty() {
        bail!("{source}: no graphs");
    }
    Ok(Graphs { label: source.to_string(), digest: sha256_hex(text.as_bytes()), graphs })
}

/// Default output path: `<input>.<tag>` for files, `<name>.<tag>` in the
/// working directory for bundled or generated inputs.
pub fn default_output(source: &str, tag: &str) -> String {
    let base = match source.split_once(':') {
        Some((_, name)) if !Path::new(source).exists() => name.replace('+', "_"),
        _ => source.to_string(),
    };
    format!("{base}.{tag}")
}
