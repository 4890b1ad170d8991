//! Command-line front end: batch and streamed insertion, validation and
//! input generators over plain-text graph files.

pub mod format;
pub mod generate;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use incdfs::{
    batch_insert, static_dfs, validate_parents, Engine, EngineChoice, EngineKind, Graph, Maintainer, Update,
    UpdateBatch, UpdateStats, Violation, WorkCounter,
};
use thiserror::Error;

use format::Entry;

/// Version of the metrics CSV layout, written in its first column.
pub const METRICS_VERSION: u32 = 1;

pub const METRICS_HEADER: [&str; 10] = [
    "version",
    "update",
    "vertices",
    "report_work",
    "build_work",
    "queries_3b",
    "cascade_queries",
    "cascade_work",
    "table_lookups",
    "buffer",
];

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}:{line}: {msg}")]
    Parse { path: String, line: usize, msg: String },
    #[error("{0}")]
    Params(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("update {index} (line {line}): {msg}")]
    InvalidUpdate { index: usize, line: usize, msg: String },
    #[error("update {index}: tree is not a DFS tree: {violation}")]
    Validation { index: usize, violation: Violation },
    #[error("{0}")]
    Check(Violation),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse { .. } | CliError::Params(_) | CliError::Io { .. } => 2,
            CliError::InvalidUpdate { .. } => 3,
            CliError::Validation { .. } => 4,
            CliError::Check(_) => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "incdfs", version, about = "Maintain a DFS tree of an undirected graph under insertions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EngineArg {
    Auto,
    Brute,
    Dense,
    Range,
    Hybrid,
}

impl EngineArg {
    fn choice(self) -> EngineChoice {
        match self {
            EngineArg::Auto => EngineChoice::Auto,
            EngineArg::Brute => EngineChoice::Fixed(EngineKind::Brute),
            EngineArg::Dense => EngineChoice::Fixed(EngineKind::Dense),
            EngineArg::Range => EngineChoice::Fixed(EngineKind::Range),
            EngineArg::Hybrid => EngineChoice::Fixed(EngineKind::Hybrid),
        }
    }

    fn kind(self, g: &Graph) -> EngineKind {
        match self.choice() {
            EngineChoice::Fixed(kind) => kind,
            EngineChoice::Auto => EngineKind::auto(g.n(), g.m()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Parents,
    Hash,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Generator {
    Chain,
    Broom,
    Random,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Insert all updates at once and print the resulting tree.
    Batch {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        updates: PathBuf,
        #[arg(long, value_enum, default_value_t = EngineArg::Auto)]
        engine: EngineArg,
        #[arg(long, value_enum, default_value_t = Emit::Parents)]
        emit: Emit,
    },
    /// Insert updates one at a time, printing the tree digest after each.
    Stream {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        updates: PathBuf,
        #[arg(long, value_enum, default_value_t = EngineArg::Auto)]
        engine: EngineArg,
        /// Validate the tree after every update.
        #[arg(long)]
        check: bool,
        /// Write per-update work counters to this CSV file.
        #[arg(long)]
        metrics: Option<PathBuf>,
    },
    /// Generate a graph and an update list.
    Gen {
        #[arg(long = "gen", value_enum)]
        generator: Generator,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Edge density for the random generator.
        #[arg(long, default_value_t = 0.1)]
        p: f64,
        /// Write the graph here instead of standard output.
        #[arg(long)]
        graph_out: Option<PathBuf>,
        /// Write the updates here instead of standard output.
        #[arg(long)]
        updates_out: Option<PathBuf>,
    },
    /// Check that a tree file is a DFS tree of a graph.
    Check {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        tree: PathBuf,
        /// Apply these updates to the graph before checking.
        #[arg(long)]
        updates: Option<PathBuf>,
    },
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes()).map_err(|source| CliError::Io { path: "<stdout>".into(), source })
}

fn load(graph: &Path, updates: &Path) -> Result<(Graph, Vec<Entry>), CliError> {
    let g = format::parse_graph(graph, &read(graph)?)?;
    let u = format::parse_updates(updates, &read(updates)?)?;
    Ok((g, u))
}

/// Checks updates in order against a growing vertex count and collects them
/// into one batch.
fn to_batch(n: usize, entries: &[Entry]) -> Result<UpdateBatch, CliError> {
    let mut batch = UpdateBatch::default();
    let mut count = n;
    for (index, e) in entries.iter().enumerate() {
        match e.update {
            Update::Vertex => {
                batch.new_vertices += 1;
                count += 1;
            }
            Update::Edge(a, b) => {
                let msg = if a == b {
                    Some(format!("self-loop on vertex {a}"))
                } else {
                    [a, b].into_iter().find(|&v| v >= count).map(|v| format!("vertex {v} out of range (vertex count {count})"))
                };
                if let Some(msg) = msg {
                    return Err(CliError::InvalidUpdate { index, line: e.line, msg });
                }
                batch.new_edges.push((a, b));
            }
        }
    }
    Ok(batch)
}

fn metrics_row(index: usize, vertices: usize, s: &UpdateStats) -> [String; 10] {
    let e = s.engine();
    [
        METRICS_VERSION.to_string(),
        index.to_string(),
        vertices.to_string(),
        s.report_work.to_string(),
        s.build_work.to_string(),
        e.queries_3b.to_string(),
        e.cascade_queries.to_string(),
        e.cascade_work.to_string(),
        e.table_lookups.to_string(),
        s.buffer.to_string(),
    ]
}

fn batch(graph: &Path, updates: &Path, engine: EngineArg, mode: Emit, out: &mut dyn Write) -> Result<(), CliError> {
    let (g, entries) = load(graph, updates)?;
    let b = to_batch(g.n(), &entries)?;
    let t = static_dfs(&g);
    let index = Engine::build(engine.kind(&g), &g, &t, &mut WorkCounter::new());
    let rebuilt = batch_insert(&g, &t, &index, &b).expect("batch was validated");
    let text = match mode {
        Emit::Parents => format::write_tree(&rebuilt.tree),
        Emit::Hash => format::write_digest(&rebuilt.tree),
    };
    emit(out, &text)
}

fn stream(
    graph: &Path,
    updates: &Path,
    engine: EngineArg,
    check: bool,
    metrics: Option<&Path>,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let (g, entries) = load(graph, updates)?;
    let mut csv = match metrics {
        Some(path) => {
            let mut w = csv::Writer::from_path(path)
                .map_err(|e| CliError::Io { path: path.display().to_string(), source: e.into() })?;
            w.write_record(METRICS_HEADER).map_err(|e| CliError::Io { path: path.display().to_string(), source: e.into() })?;
            Some((path, w))
        }
        None => None,
    };
    let mut mt = Maintainer::with_engine(g, engine.choice());
    for (index, e) in entries.iter().enumerate() {
        let stats = mt
            .insert(e.update)
            .map_err(|err| CliError::InvalidUpdate { index, line: e.line, msg: err.to_string() })?;
        if check {
            validate_parents(mt.graph(), &mt.tree().parents()).map_err(|violation| CliError::Validation { index, violation })?;
        }
        emit(out, &format::write_digest(mt.tree()))?;
        if let Some((path, w)) = &mut csv {
            w.write_record(metrics_row(index, mt.graph().n(), &stats))
                .map_err(|e| CliError::Io { path: path.display().to_string(), source: e.into() })?;
        }
    }
    if let Some((path, mut w)) = csv {
        w.flush().map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn generate(
    generator: Generator,
    n: usize,
    seed: u64,
    p: f64,
    graph_out: Option<&Path>,
    updates_out: Option<&Path>,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let (g, updates) = match generator {
        Generator::Chain => generate::chain(n)?,
        Generator::Broom => generate::broom(n)?,
        Generator::Random => generate::random(n, p, seed)?,
    };
    let graph_text = format::write_graph(&g);
    let update_text = format::write_updates(&updates);
    match graph_out {
        Some(path) => write_file(path, &graph_text)?,
        None => emit(out, &graph_text)?,
    }
    match updates_out {
        Some(path) => write_file(path, &update_text)?,
        None => {
            if graph_out.is_none() {
                emit(out, "# updates\n")?;
            }
            emit(out, &update_text)?;
        }
    }
    Ok(())
}

fn check(graph: &Path, tree: &Path, updates: Option<&Path>) -> Result<(), CliError> {
    let mut g = format::parse_graph(graph, &read(graph)?)?;
    if let Some(path) = updates {
        let entries = format::parse_updates(path, &read(path)?)?;
        let b = to_batch(g.n(), &entries)?;
        b.apply_to(&mut g).expect("batch was validated");
    }
    let parents = format::parse_tree(tree, &read(tree)?)?;
    validate_parents(&g, &parents).map_err(CliError::Check)
}

/// Runs one command, writing regular output to `out`.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Batch { graph, updates, engine, emit } => batch(&graph, &updates, engine, emit, out),
        Command::Stream { graph, updates, engine, check, metrics } => {
            stream(&graph, &updates, engine, check, metrics.as_deref(), out)
        }
        Command::Gen { generator, n, seed, p, graph_out, updates_out } => {
            generate(generator, n, seed, p, graph_out.as_deref(), updates_out.as_deref(), out)
        }
        Command::Check { graph, tree, updates } => check(&graph, &tree, updates.as_deref()),
    }
}
