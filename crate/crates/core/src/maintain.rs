//! Online maintenance with a bounded amount of work per insertion.
//!
//! The maintainer keeps a base generation (graph, DFS tree, engine) and a
//! buffer of updates made since the base snapshot. Each insertion reports a
//! fresh tree by rebuilding from the base with the whole buffer. Meanwhile
//! the next generation is built in the background, a fixed quota of work
//! units per insertion, so that it is ready when the phase ends:
//!
//! ```text
//! phase j starts at b_j:  snapshot (G_bj, T_bj), start building its engine
//! phase j ends:           base ← (G_bj, T_bj, engine), buffer ← updates since b_j
//! ```
//!
//! The buffer therefore holds at most two phases of updates. Phase length is
//! `⌈√f⌉` with `f = min(m·⌈log₂ n⌉, n²)` taken at phase start.
//!
//! The background build runs on a worker thread in lockstep with the caller:
//! every insertion hands it a quota and waits until it has been spent, so all
//! counters are deterministic.

use std::any::Any;
use std::panic::{self, AssertUnwindSafe};
use std::sync::mpsc::{self, Receiver, Sender};
use std::sync::Arc;
use std::thread::{self, JoinHandle};

use crate::engine::{Engine, EngineKind, EngineStats};
use crate::error::Result;
use crate::graph::{Graph, VertexId};
use crate::meter::{ceil_log2, Chunked, Meter, WorkCounter};
use crate::rebuild::{batch_insert, RebuildStats, UpdateBatch};
use crate::tree::{static_dfs_metered, DfsTree};

/// One insertion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Update {
    Edge(VertexId, VertexId),
    /// Appends a vertex with the next free id.
    Vertex,
}

/// Which engine each generation uses.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum EngineChoice {
    /// Whichever of dense and hybrid has the smaller planned build work.
    #[default]
    Auto,
    Fixed(EngineKind),
}

impl EngineChoice {
    fn resolve(self, n: usize, m: usize) -> EngineKind {
        match self {
            EngineChoice::Auto => {
                if planned_work(EngineKind::Dense, n, m) <= planned_work(EngineKind::Hybrid, n, m) {
                    EngineKind::Dense
                } else {
                    EngineKind::Hybrid
                }
            }
            EngineChoice::Fixed(kind) => kind,
        }
    }
}

/// Counters for a single insertion.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct UpdateStats {
    /// Work to report the tree: rebuilder plus engine queries.
    pub report_work: u64,
    /// Background build work spent during this insertion.
    pub build_work: u64,
    pub rebuild: RebuildStats,
    /// Buffer length used for the report.
    pub buffer: usize,
    pub phase_len: usize,
    /// True if a new generation was installed after this insertion.
    pub swapped: bool,
}

impl UpdateStats {
    pub fn total_work(&self) -> u64 {
        self.report_work + self.build_work
    }

    pub fn engine(&self) -> &EngineStats {
        &self.rebuild.engine
    }
}

struct Generation {
    graph: Arc<Graph>,
    tree: Arc<DfsTree>,
    engine: Engine,
}

enum Grant {
    Quota(u64),
}

enum Event {
    Parked(u64),
    Done(u64, Box<Generation>),
}

/// Unwinds the worker when the caller goes away.
struct Cancelled;

struct ThrottledMeter {
    budget: i64,
    spent: u64,
    grants: Receiver<Grant>,
    events: Sender<Event>,
}

impl ThrottledMeter {
    fn wait(&mut self) {
        match self.grants.recv() {
            Ok(Grant::Quota(q)) => self.budget = self.budget.saturating_add(q.min(i64::MAX as u64) as i64),
            Err(_) => panic::resume_unwind(Box::new(Cancelled)),
        }
    }
}

impl Meter for ThrottledMeter {
    fn tick(&mut self, units: u64) {
        self.spent += units;
        self.budget = self.budget.saturating_sub(units as i64);
        while self.budget <= 0 {
            let spent = std::mem::take(&mut self.spent);
            if self.events.send(Event::Parked(spent)).is_err() {
                panic::resume_unwind(Box::new(Cancelled));
            }
            self.wait();
        }
    }
}

struct Builder {
    grants: Sender<Grant>,
    events: Receiver<Event>,
    handle: Option<JoinHandle<()>>,
    result: Option<Generation>,
    quota: u64,
}

impl Builder {
    fn spawn(base: Arc<Graph>, buffer: UpdateBatch, tree: Arc<DfsTree>, choice: EngineChoice, quota: u64) -> Self {
        let (grant_tx, grant_rx) = mpsc::channel();
        let (event_tx, event_rx) = mpsc::channel();
        let handle = thread::spawn(move || {
            let mut meter = ThrottledMeter { budget: 0, spent: 0, grants: grant_rx, events: event_tx };
            let outcome = panic::catch_unwind(AssertUnwindSafe(|| {
                meter.wait();
                let graph = Arc::new(extend_graph(&base, &buffer, &mut meter));
                drop(base);
                let kind = choice.resolve(graph.n(), graph.m());
                let engine = Engine::build(kind, &graph, &tree, &mut meter);
                Generation { graph, tree, engine }
            }));
            match outcome {
                Ok(generation) => {
                    let spent = std::mem::take(&mut meter.spent);
                    let _ = meter.events.send(Event::Done(spent, Box::new(generation)));
                }
                Err(payload) if is_cancel(&payload) => {}
                Err(payload) => panic::resume_unwind(payload),
            }
        });
        Self { grants: grant_tx, events: event_rx, handle: Some(handle), result: None, quota }
    }

    /// Lets the worker spend `quota` units; returns what it actually spent.
    fn step(&mut self, quota: u64) -> u64 {
        if self.result.is_some() {
            return 0;
        }
        if self.grants.send(Grant::Quota(quota)).is_err() {
            self.rethrow();
        }
        match self.events.recv() {
            Ok(Event::Parked(spent)) => spent,
            Ok(Event::Done(spent, generation)) => {
                self.result = Some(*generation);
                if let Some(h) = self.handle.take() {
                    let _ = h.join();
                }
                spent
            }
            Err(_) => self.rethrow(),
        }
    }

    fn rethrow(&mut self) -> ! {
        match self.handle.take().map(JoinHandle::join) {
            Some(Err(payload)) => panic::resume_unwind(payload),
            _ => panic!("background build stopped unexpectedly"),
        }
    }

    /// Runs the build to completion; returns the extra work spent.
    fn finish(&mut self) -> u64 {
        let mut spent = 0;
        while self.result.is_none() {
            spent += self.step(u64::MAX / 4);
        }
        spent
    }
}

impl Drop for Builder {
    fn drop(&mut self) {
        if let Some(handle) = self.handle.take() {
            // closing the grant channel unwinds a parked worker
            let (dead, _) = mpsc::channel();
            drop(std::mem::replace(&mut self.grants, dead));
            let _ = handle.join();
        }
    }
}

fn is_cancel(payload: &Box<dyn Any + Send>) -> bool {
    payload.is::<Cancelled>()
}

fn extend_graph(base: &Graph, buffer: &UpdateBatch, meter: &mut dyn Meter) -> Graph {
    let mut meter = Chunked::new(meter);
    let mut g = Graph::new(base.n() + buffer.new_vertices);
    meter.add(base.n() as u64 + 1);
    for u in 0..base.n() {
        for &v in base.neighbors(u) {
            meter.add(1);
            if u < v {
                g.add_edge(u, v).expect("base edges are valid");
            }
        }
    }
    for &(a, b) in &buffer.new_edges {
        meter.add(1);
        g.add_edge(a, b).expect("buffered edges are valid");
    }
    g
}

/// `(f, phase length)` for a graph with `n` vertices and `m` edges.
pub fn phase_params(n: usize, m: usize) -> (u64, usize) {
    let n = n as u64;
    let f = (m as u64 * ceil_log2(n as usize) as u64).min(n * n);
    let len = ((f as f64).sqrt().ceil() as usize).max(1);
    (f, len)
}

/// Upper bound on the background build work for one generation, following
/// the meter ticks of each build step.
pub fn planned_work(kind: EngineKind, n: usize, m: usize) -> u64 {
    let jumps = ceil_log2(n + 1) as u64;
    let span = 2 * ceil_log2(n) as u64;
    let (n, m) = (n as u64, m as u64);
    let copy = n + 2 * m + 1;
    let range = 2 * n + 4 * m + 2 + jumps * (4 * m + 1);
    copy + match kind {
        EngineKind::Brute => 1,
        EngineKind::Dense => 3 * n * (n + 1) / 2 + 2 * n + 2 * m + 1,
        EngineKind::Range => range,
        EngineKind::Hybrid => {
            let table = (jumps + 2) * (n + 1) + m * (span + jumps) + n * (span + 1);
            let marked = 10 * n + 10 * m + 4;
            table + marked + range
        }
    }
}

/// Cumulative counters over the maintainer's lifetime.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MaintainerCounters {
    pub init_work: u64,
    pub updates: u64,
    pub generations: u64,
    /// Builds that were still running when their phase ended.
    pub forced_finishes: u64,
}

pub struct Maintainer {
    choice: EngineChoice,
    graph: Graph,
    base: Generation,
    /// Updates since the base snapshot.
    buffer: UpdateBatch,
    /// Updates since the current phase started.
    phase_buffer: UpdateBatch,
    phase_len: usize,
    in_phase: usize,
    builder: Option<Builder>,
    tree: Arc<DfsTree>,
    counters: MaintainerCounters,
}

impl Maintainer {
    pub fn new(g: Graph) -> Self {
        Self::with_engine(g, EngineChoice::Auto)
    }

    pub fn with_engine(g: Graph, choice: EngineChoice) -> Self {
        let mut work = WorkCounter::new();
        let tree = Arc::new(static_dfs_metered(&g, &mut work));
        let kind = choice.resolve(g.n(), g.m());
        let engine = Engine::build(kind, &g, &tree, &mut work);
        let (_, phase_len) = phase_params(g.n(), g.m());
        let base = Generation { graph: Arc::new(g.clone()), tree: Arc::clone(&tree), engine };
        Self {
            choice,
            graph: g,
            base,
            buffer: UpdateBatch::default(),
            phase_buffer: UpdateBatch::default(),
            phase_len,
            in_phase: 0,
            builder: None,
            tree,
            counters: MaintainerCounters { init_work: work.units, generations: 1, ..Default::default() },
        }
    }

    /// The DFS tree of the current graph.
    pub fn tree(&self) -> &DfsTree {
        &self.tree
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn engine_kind(&self) -> EngineKind {
        use crate::engine::QueryEngine;
        self.base.engine.kind()
    }

    pub fn buffer_len(&self) -> usize {
        self.buffer.len()
    }

    pub fn phase_len(&self) -> usize {
        self.phase_len
    }

    pub fn counters(&self) -> MaintainerCounters {
        self.counters
    }

    /// Applies one insertion and reports the new tree. Invalid updates are
    /// rejected without touching any state.
    pub fn insert(&mut self, update: Update) -> Result<UpdateStats> {
        match update {
            Update::Edge(a, b) => {
                self.graph.check_edge(a, b)?;
                self.graph.add_edge(a, b)?;
                self.buffer.new_edges.push((a, b));
                self.phase_buffer.new_edges.push((a, b));
            }
            Update::Vertex => {
                self.graph.add_vertex();
                self.buffer.new_vertices += 1;
                self.phase_buffer.new_vertices += 1;
            }
        }

        let base = &self.base;
        let rebuild = batch_insert(&base.graph, &base.tree, &base.engine, &self.buffer)
            .expect("buffered updates were validated on entry");
        let mut stats = UpdateStats {
            report_work: rebuild.stats.work + rebuild.stats.engine.work,
            buffer: self.buffer.len(),
            phase_len: self.phase_len,
            rebuild: rebuild.stats,
            ..Default::default()
        };
        self.tree = Arc::new(rebuild.tree);

        if let Some(builder) = &mut self.builder {
            stats.build_work = builder.step(builder.quota);
        }
        self.in_phase += 1;
        self.counters.updates += 1;
        if self.in_phase >= self.phase_len {
            let (swapped, forced) = self.end_phase();
            stats.swapped = swapped;
            stats.build_work += forced;
        }
        Ok(stats)
    }

    /// Installs the finished generation (if any) and opens the next phase.
    /// Returns whether a swap happened and the work spent forcing the build.
    fn end_phase(&mut self) -> (bool, u64) {
        let mut swapped = false;
        let mut forced = 0;
        if let Some(mut builder) = self.builder.take() {
            if builder.result.is_none() {
                self.counters.forced_finishes += 1;
                forced = builder.finish();
            }
            self.base = builder.result.take().expect("finished build has a result");
            self.buffer = std::mem::take(&mut self.phase_buffer);
            self.counters.generations += 1;
            swapped = true;
        }
        self.phase_buffer = UpdateBatch::default();

        let (n, m) = (self.graph.n(), self.graph.m());
        let (_, phase_len) = phase_params(n, m);
        let kind = self.choice.resolve(n, m);
        let quota = planned_work(kind, n, m).div_ceil(phase_len as u64);
        self.phase_len = phase_len;
        self.in_phase = 0;
        self.builder = Some(Builder::spawn(
            Arc::clone(&self.base.graph),
            self.buffer.clone(),
            Arc::clone(&self.tree),
            self.choice,
            quota,
        ));
        (swapped, forced)
    }
}
