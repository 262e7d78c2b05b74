//! One function per subcommand. Each prints its transcript to stdout and
//! records inputs, outputs and counts in the manifest.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use ups_core::bounds::BoundReport;
use ups_core::chirotope::{olm, AbstractOrderType};
use ups_core::data;
use ups_core::embedding::{decide_embeddable, encode_embedding, export_dimacs, Verdict};
use ups_core::enumeration::{self, ExtensionShard};
use ups_core::graphs::Graph;
use ups_core::sat::Budget;
use ups_core::search::{
    build_stat, export_lp, filter_phase1, min_hitting_set, test_universal_all, verify_conflict_collection,
    ConflictCheck, CoverMode, PriorityQueue, StatMatrix, Universality,
};
use ups_core::shard::Shard;

use crate::manifest::{sha256_hex, Manifest};
use crate::sources::{default_output, load_graphs, load_order_types, OrderTypes};
use crate::{InputArgs, UsageError};

fn check_writable(path: &Path, force: bool) -> Result<()> {
    if path.exists() && !force {
        return Err(UsageError(format!("output {} already exists (use --force to overwrite)", path.display())).into());
    }
    Ok(())
}

fn write_output(m: &mut Manifest, path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))?;
    m.output(path)
}

fn load_ots(m: &mut Manifest, source: &str, input: InputArgs) -> Result<OrderTypes> {
    let ots = load_order_types(source, input.points, input.realizations)?;
    m.input(&ots.label, &ots.digest);
    m.count("points", ots.n);
    m.count("order_types", ots.items.len());
    Ok(ots)
}

fn load_graph_list(m: &mut Manifest, source: &str) -> Result<Vec<Graph>> {
    let g = load_graphs(source)?;
    m.input(&g.label, &g.digest);
    m.count("graphs", g.graphs.len());
    Ok(g.graphs)
}

/// Order types owned by the shard, with their input indices.
fn owned(ots: &OrderTypes, shard: Shard) -> (Vec<usize>, Vec<AbstractOrderType>) {
    let idx: Vec<usize> = shard.indices(ots.items.len()).collect();
    let items = idx.iter().map(|&i| ots.items[i].clone()).collect();
    (idx, items)
}

fn output_path(explicit: Option<PathBuf>, source: &str, tag: &str, shard: Shard, ext: &str) -> PathBuf {
    explicit.unwrap_or_else(|| PathBuf::from(default_output(source, &format!("{tag}{}.{ext}", shard.suffix()))))
}

pub fn extend(
    m: &mut Manifest,
    n: usize,
    file: &Path,
    shard: Shard,
    output: Option<PathBuf>,
    force: bool,
) -> Result<()> {
    let mut job = ExtensionShard::with_default_output(file, shard);
    if let Some(o) = output {
        job.output = o;
    }
    let bytes = fs::read(file).with_context(|| format!("reading {}", file.display()))?;
    m.input(&file.display().to_string(), &sha256_hex(&bytes));
    println!("n: {n}");
    println!("parts: {}, running {}..{}", shard.parts(), shard.from(), shard.to());
    let rep = enumeration::run_extension(&job, n, force)?;
    println!("processed: {}", rep.processed);
    println!("output: {}", job.output.display());
    println!("total solutions: {}/{}", rep.produced, rep.total_input);
    m.output(&job.output)?;
    m.count("input", rep.total_input);
    m.count("processed", rep.processed);
    m.count("produced", rep.produced);
    Ok(())
}

pub fn merge_dedup(m: &mut Manifest, n: usize, output: &Path, inputs: &[PathBuf], force: bool) -> Result<()> {
    for p in inputs {
        let bytes = fs::read(p).with_context(|| format!("reading {}", p.display()))?;
        m.input(&p.display().to_string(), &sha256_hex(&bytes));
    }
    let written = enumeration::merge_dedup(n, inputs, output, force)?;
    println!("merged {} files into {}: {written} order types", inputs.len(), output.display());
    m.output(output)?;
    m.count("produced", written);
    Ok(())
}

fn write_survivors(
    m: &mut Manifest,
    ots: &OrderTypes,
    survivors: &[usize],
    path: &Path,
) -> Result<()> {
    let records: Vec<_> = survivors.iter().map(|&i| ots.records[i].clone()).collect();
    write_output(m, path, &olm::encode(&records))
}

pub fn filter1(
    m: &mut Manifest,
    source: &str,
    input: InputArgs,
    shard: Shard,
    budget: Budget,
    output: Option<PathBuf>,
    force: bool,
) -> Result<()> {
    let out = output_path(output, source, "phase1_", shard, "bin");
    check_writable(&out, force)?;
    let ots = load_ots(m, source, input)?;
    let (idx, items) = owned(&ots, shard);
    let kept: Vec<usize> = filter_phase1(&items, budget)?.into_iter().map(|k| idx[k]).collect();
    write_survivors(m, &ots, &kept, &out)?;
    println!("phase 1 survivors: {}/{}", kept.len(), idx.len());
    println!("output: {}", out.display());
    m.count("processed", idx.len());
    m.count("survivors", kept.len());
    Ok(())
}

#[allow(clippy::too_many_arguments)]
pub fn test_universal(
    m: &mut Manifest,
    source: &str,
    graphs: &str,
    input: InputArgs,
    shard: Shard,
    budget: Budget,
    output: Option<PathBuf>,
    force: bool,
) -> Result<()> {
    let out = output_path(output, source, "universal_", shard, "bin");
    check_writable(&out, force)?;
    let ots = load_ots(m, source, input)?;
    let graphs = load_graph_list(m, graphs)?;
    let (idx, items) = owned(&ots, shard);
    let queue = PriorityQueue::new(graphs.len());
    let verdicts = test_universal_all(&items, &graphs, &queue, budget)?;
    let kept: Vec<usize> = verdicts
        .iter()
        .zip(&idx)
        .filter(|(v, _)| **v == Universality::Universal)
        .map(|(_, &i)| i)
        .collect();
    write_survivors(m, &ots, &kept, &out)?;
    let counts: Vec<String> = queue.counts().iter().map(u64::to_string).collect();
    println!("failures per graph: {}", counts.join(" "));
    println!("universal: {}/{}", kept.len(), idx.len());
    println!("output: {}", out.display());
    m.count("processed", idx.len());
    m.count("universal", kept.len());
    Ok(())
}

fn write_dimacs_pairs(
    m: &mut Manifest,
    dir: &Path,
    idx: &[usize],
    items: &[AbstractOrderType],
    graphs: &[Graph],
) -> Result<usize> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut written = 0;
    for (&i, ot) in idx.iter().zip(items) {
        for (j, g) in graphs.iter().enumerate() {
            let f = encode_embedding(g, ot)?;
            let path = dir.join(format!("ot{i}_graph{j}.cnf"));
            export_dimacs(&f, &path).with_context(|| format!("writing {}", path.display()))?;
            written += 1;
        }
    }
    println!("wrote {written} DIMACS instances to {}", dir.display());
    m.count("dimacs_files", written);
    Ok(written)
}

#[allow(clippy::too_many_arguments)]
pub fn stat(
    m: &mut Manifest,
    source: &str,
    graphs: &str,
    input: InputArgs,
    shard: Shard,
    budget: Budget,
    output: Option<PathBuf>,
    dimacs_out: Option<PathBuf>,
    force: bool,
) -> Result<()> {
    let out = output_path(output, source, "stat_", shard, "txt");
    if dimacs_out.is_none() {
        check_writable(&out, force)?;
    }
    let ots = load_ots(m, source, input)?;
    let graphs = load_graph_list(m, graphs)?;
    let (idx, items) = owned(&ots, shard);
    if let Some(dir) = dimacs_out {
        write_dimacs_pairs(m, &dir, &idx, &items, &graphs)?;
        return Ok(());
    }
    let matrix = build_stat(&items, &graphs, budget)?;
    write_output(m, &out, matrix.to_text().as_bytes())?;
    let universal = (0..matrix.rows()).filter(|&i| matrix.failing(i).is_empty()).count();
    println!("rows: {}, columns: {}", matrix.rows(), matrix.cols());
    println!("rows embedding every graph: {universal}");
    println!("output: {}", out.display());
    m.count("rows", matrix.rows());
    Ok(())
}

pub fn mincover(m: &mut Manifest, stats: &[PathBuf], exact: bool, lp: Option<PathBuf>, force: bool) -> Result<()> {
    if let Some(p) = &lp {
        check_writable(p, force)?;
    }
    let mut text = String::new();
    for p in stats {
        let t = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
        m.input(&p.display().to_string(), &sha256_hex(t.as_bytes()));
        text.push_str(&t);
        if !text.is_empty() && !text.ends_with('\n') {
            text.push('\n');
        }
    }
    let matrix = StatMatrix::parse(&text)?;
    let mode = if exact { CoverMode::Exact } else { CoverMode::Greedy };
    let cover = min_hitting_set(&matrix, mode)?;
    if let Some(p) = &lp {
        write_output(m, p, export_lp(&matrix)?.as_bytes())?;
    }
    let picked: Vec<String> = cover.graphs.iter().map(usize::to_string).collect();
    println!("rows: {}, columns: {}", matrix.rows(), matrix.cols());
    println!("mode: {}", if exact { "exact" } else { "greedy" });
    println!("conflict collection size: {}", cover.len());
    println!("graphs: {}", picked.join(" "));
    m.count("rows", matrix.rows());
    m.count("cover_size", cover.len());
    Ok(())
}

pub fn bounds(m: &mut Manifest, n: usize, alpha_tol: f64, kv: bool) -> Result<()> {
    if !(alpha_tol > 0.0 && alpha_tol < 1.0) {
        return Err(UsageError(format!("--alpha-tol must lie in (0, 1), got {alpha_tol}")).into());
    }
    let report = BoundReport::new(n, alpha_tol)?;
    if kv {
        print!("{}", report.to_key_values());
    } else {
        println!("{report}");
    }
    m.count("min_m", report.min_m);
    Ok(())
}

pub fn embed(
    m: &mut Manifest,
    graphs: &str,
    source: &str,
    input: InputArgs,
    budget: Budget,
    witness: bool,
    dimacs_out: Option<PathBuf>,
) -> Result<()> {
    let ots = load_ots(m, source, input)?;
    let graphs = load_graph_list(m, graphs)?;
    if let Some(dir) = dimacs_out {
        let idx: Vec<usize> = (0..ots.items.len()).collect();
        write_dimacs_pairs(m, &dir, &idx, &ots.items, &graphs)?;
        return Ok(());
    }
    let mut embeddable = 0;
    for (i, ot) in ots.items.iter().enumerate() {
        for (j, g) in graphs.iter().enumerate() {
            let v = decide_embeddable(g, ot, budget).with_context(|| format!("order type {i}, graph {j}"))?;
            match v {
                Verdict::Embeddable(w) => {
                    embeddable += 1;
                    println!("order type {i} graph {j}: embeddable");
                    if witness {
                        let coords = ots.points.as_ref().map(|p| p[i].points());
                        let pairs: Vec<String> = w
                            .assignment
                            .iter()
                            .enumerate()
                            .map(|(v, &p)| match coords {
                                Some(c) => format!("{v}->{p}({},{})", c[p].0, c[p].1),
                                None => format!("{v}->{p}"),
                            })
                            .collect();
                        println!("  witness: {}", pairs.join(" "));
                    }
                }
                Verdict::NotEmbeddable => println!("order type {i} graph {j}: not embeddable"),
            }
        }
    }
    m.count("embeddable", embeddable);
    m.count("pairs", ots.items.len() * graphs.len());
    Ok(())
}

pub fn verify_conflict(m: &mut Manifest, graphs: &str, source: &str, input: InputArgs, budget: Budget) -> Result<()> {
    let ots = load_ots(m, source, input)?;
    let graphs = load_graph_list(m, graphs)?;
    match verify_conflict_collection(&graphs, &ots.items, budget)? {
        ConflictCheck::Ok => {
            println!(
                "conflict collection verified: none of {} order types embeds all {} graphs",
                ots.items.len(),
                graphs.len()
            );
            m.count("counterexample", "none");
        }
        ConflictCheck::Counterexample(i) => {
            println!("counterexample: order type {i} embeds all {} graphs", graphs.len());
            m.count("counterexample", i);
        }
    }
    Ok(())
}

pub fn data(m: &mut Manifest, name: &str) -> Result<()> {
    let raw: &[u8] = match name {
        "G" => data::CONFLICT_G.as_bytes(),
        "H" => data::CONFLICT_H.as_bytes(),
        "G+H" => data::CONFLICT_ALL.as_bytes(),
        "listing1" => data::LISTING1_POINTS.as_bytes(),
        "listing2" => data::LISTING2_POINTS.as_bytes(),
        "n8c4" => data::N8C4_GRAPH6.as_bytes(),
        "n3" => data::N3_ORDER_TYPES,
        other => bail!(UsageError(format!(
            "unknown data set {other:?}; expected G, H, G+H, listing1, listing2, n3 or n8c4"
        ))),
    };
    let text = match name {
        "n3" => hex::encode(raw) + "\n",
        _ => String::from_utf8_lossy(raw).into_owned(),
    };
    print!("{text}");
    if !text.ends_with('\n') {
        println!();
    }
    m.input(&format!("data:{name}"), &sha256_hex(raw));
    Ok(())
}
