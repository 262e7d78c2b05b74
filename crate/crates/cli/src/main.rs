//! `ups`: every stage of the universal point set search behind one binary.

mod commands;
mod manifest;
mod sources;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};
use ups_core::embedding::EmbeddingError;
use ups_core::enumeration::EnumerationError;
use ups_core::sat::Budget;
use ups_core::shard::{InvalidShard, Shard};

use crate::manifest::Manifest;

/// Bad arguments that clap cannot catch on its own.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

#[derive(Parser)]
#[command(name = "ups", version, about = "Order types, stacked triangulations and universal point set search")]
struct Cli {
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true, env = "UPS_THREADS")]
    threads: Option<usize>,
    /// Write the run manifest to this file instead of stderr.
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

/// Record `i` belongs to part `i % parts`; parts `from..to` are processed.
#[derive(Args, Clone, Copy, Debug)]
pub struct ShardArgs {
    #[arg(long, default_value_t = 1)]
    parts: usize,
    #[arg(long, default_value_t = 0)]
    from: usize,
    /// Defaults to `parts`.
    #[arg(long)]
    to: Option<usize>,
}

impl ShardArgs {
    fn is_default(&self) -> bool {
        self.parts == 1 && self.from == 0 && self.to.is_none()
    }

    pub fn shard(&self) -> Result<Shard, InvalidShard> {
        Shard::new(self.parts, self.from, self.to.unwrap_or(self.parts))
    }
}

#[derive(Args, Clone, Copy, Debug)]
pub struct InputArgs {
    /// Point count of binary order type files.
    #[arg(long, short = 'n')]
    points: Option<usize>,
    /// Read binary input as realizations (coordinates) instead of small
    /// lambda matrices.
    #[arg(long)]
    realizations: bool,
}

#[derive(Args, Clone, Copy, Debug)]
pub struct SolveArgs {
    /// Conflict limit per SAT call; exceeding it is a timeout.
    #[arg(long)]
    budget: Option<u64>,
}

impl SolveArgs {
    pub fn budget(&self) -> Budget {
        Budget { conflicts: self.budget }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Extend order types on n points by one point.
    Extend {
        n: usize,
        file: PathBuf,
        /// Optional `parts from to`, as an alternative to the flags.
        #[arg(num_args = 0..=3)]
        split: Vec<usize>,
        #[command(flatten)]
        shard: ShardArgs,
        /// Defaults to `<file>.ext<from>_<to>.bin`.
        #[arg(long, short)]
        output: Option<PathBuf>,
        #[arg(long)]
        force: bool,
    },
    /// Merge shard outputs into one sorted, duplicate-free file.
    MergeDedup {
        n: usize,
        output: PathBuf,
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long)]
        force: bool,
    },
    /// Keep the 11-point order types with both structural properties.
    Filter1 {
        ots: String,
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        shard: ShardArgs,
        #[command(flatten)]
        solve: SolveArgs,
        #[arg(long, short)]
        output: Option<PathBuf>,
        #[arg(long)]
        force: bool,
    },
    /// Keep the order types on which every graph embeds.
    TestUniversal {
        ots: String,
        graphs: String,
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        shard: ShardArgs,
        #[command(flatten)]
        solve: SolveArgs,
        #[arg(long, short)]
        output: Option<PathBuf>,
        #[arg(long)]
        force: bool,
    },
    /// Write the order type by graph embeddability matrix.
    Stat {
        ots: String,
        graphs: String,
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        shard: ShardArgs,
        #[command(flatten)]
        solve: SolveArgs,
        #[arg(long, short)]
        output: Option<PathBuf>,
        /// Write one DIMACS file per pair here instead of solving.
        #[arg(long)]
        dimacs_out: Option<PathBuf>,
        #[arg(long)]
        force: bool,
    },
    /// Smallest set of graphs failing on every row of the stat files.
    Mincover {
        #[arg(required = true)]
        stats: Vec<PathBuf>,
        #[arg(long, conflicts_with = "greedy")]
        exact: bool,
        #[arg(long)]
        greedy: bool,
        /// Also write the 0-1 program in LP format.
        #[arg(long)]
        lp: Option<PathBuf>,
        #[arg(long)]
        force: bool,
    },
    /// Counting lower bound and the asymptotic constant.
    Bounds {
        n: usize,
        #[arg(long, default_value_t = 1e-9)]
        alpha_tol: f64,
        /// Print `key=value` lines.
        #[arg(long)]
        kv: bool,
    },
    /// Decide embeddability of each graph on each order type.
    Embed {
        graphs: String,
        ots: String,
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        solve: SolveArgs,
        /// Print the vertex to point map of each drawing.
        #[arg(long)]
        witness: bool,
        /// Write one DIMACS file per pair here instead of solving.
        #[arg(long)]
        dimacs_out: Option<PathBuf>,
    },
    /// Check that no order type embeds every graph of a collection.
    VerifyConflict {
        graphs: String,
        ots: String,
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        solve: SolveArgs,
    },
    /// Print a bundled data set: G, H, G+H, listing1, listing2, n3, n8c4.
    Data { name: String },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Extend { .. } => "extend",
            Command::MergeDedup { .. } => "merge-dedup",
            Command::Filter1 { .. } => "filter1",
            Command::TestUniversal { .. } => "test-universal",
            Command::Stat { .. } => "stat",
            Command::Mincover { .. } => "mincover",
            Command::Bounds { .. } => "bounds",
            Command::Embed { .. } => "embed",
            Command::VerifyConflict { .. } => "verify-conflict",
            Command::Data { .. } => "data",
        }
    }
}

fn dispatch(cmd: Command, m: &mut Manifest) -> Result<()> {
    match cmd {
        Command::Extend { n, file, split, shard, output, force } => {
            let shard = match split.as_slice() {
                [] => shard.shard()?,
                &[parts, from, to] if shard.is_default() => Shard::new(parts, from, to)?,
                [_, _, _] => {
                    return Err(UsageError("give the shard either positionally or by flags".into()).into())
                }
                _ => return Err(UsageError("positional shard needs `parts from to`".into()).into()),
            };
            commands::extend(m, n, &file, shard, output, force)
        }
        Command::MergeDedup { n, output, inputs, force } => commands::merge_dedup(m, n, &output, &inputs, force),
        Command::Filter1 { ots, input, shard, solve, output, force } => {
            commands::filter1(m, &ots, input, shard.shard()?, solve.budget(), output, force)
        }
        Command::TestUniversal { ots, graphs, input, shard, solve, output, force } => {
            commands::test_universal(m, &ots, &graphs, input, shard.shard()?, solve.budget(), output, force)
        }
        Command::Stat { ots, graphs, input, shard, solve, output, dimacs_out, force } => commands::stat(
            m,
            &ots,
            &graphs,
            input,
            shard.shard()?,
            solve.budget(),
            output,
            dimacs_out,
            force,
        ),
        Command::Mincover { stats, exact, greedy: _, lp, force } => commands::mincover(m, &stats, exact, lp, force),
        Command::Bounds { n, alpha_tol, kv } => commands::bounds(m, n, alpha_tol, kv),
        Command::Embed { graphs, ots, input, solve, witness, dimacs_out } => {
            commands::embed(m, &graphs, &ots, input, solve.budget(), witness, dimacs_out)
        }
        Command::VerifyConflict { graphs, ots, input, solve } => {
            commands::verify_conflict(m, &graphs, &ots, input, solve.budget())
        }
        Command::Data { name } => commands::data(m, &name),
    }
}

/// 2 for usage errors, 4 for solver timeouts, 3 for everything else.
fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if matches!(cause.downcast_ref(), Some(EmbeddingError::SolverTimeout { .. })) {
            return 4;
        }
    }
    for cause in err.chain() {
        if cause.is::<UsageError>()
            || cause.is::<InvalidShard>()
            || matches!(cause.downcast_ref(), Some(EnumerationError::OutputExists(_)))
        {
            return 2;
        }
    }
    3
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        let built = if t == 0 {
            Err(anyhow::Error::new(UsageError("--threads must be positive".into())))
        } else {
            rayon::ThreadPoolBuilder::new().num_threads(t).build_global().map_err(Into::into)
        };
        if let Err(e) = built {
            eprintln!("error: {e:#}");
            return ExitCode::from(exit_code(&e));
        }
    }
    let arguments: Vec<String> = std::env::args().skip(1).collect();
    let mut manifest = Manifest::new(cli.command.name(), &arguments);
    let result = dispatch(cli.command, &mut manifest);
    manifest.field("status", if result.is_ok() { "ok" } else { "error" });
    let emitted = manifest.emit(cli.manifest.as_deref());
    match result.and(emitted) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
