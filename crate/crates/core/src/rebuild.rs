//! Batch insertion: rebuild a DFS tree of `G + U` from a DFS tree of `G`.
//!
//! The traversal starts at the super root. Entering an untouched subtree at
//! `v`, it climbs to the highest unvisited ancestor `u`, reverses
//! `path(u, v)` in the new tree, and for every subtree hanging off that path
//! asks the engine for the single edge worth keeping: the one reaching the
//! highest path vertex. Those edges, together with the inserted edges, form
//! the reduced adjacency lists that drive the rest of the traversal.

use crate::engine::{EngineStats, PathQuery, QueryAnswer, QueryEngine};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::tree::DfsTree;

/// A set of insertions applied at once. New vertices get ids
/// `n..n + new_vertices`; edges may reference them.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct UpdateBatch {
    pub new_vertices: usize,
    pub new_edges: Vec<(VertexId, VertexId)>,
}

impl UpdateBatch {
    pub fn len(&self) -> usize {
        self.new_vertices + self.new_edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Checks edges against a graph of `n` vertices extended by this batch.
    pub fn validate(&self, n: usize) -> Result<()> {
        let count = n + self.new_vertices;
        for &(a, b) in &self.new_edges {
            for v in [a, b] {
                if v >= count {
                    return Err(Error::VertexOutOfRange { vertex: v, count });
                }
            }
            if a == b {
                return Err(Error::SelfLoop(a));
            }
        }
        Ok(())
    }

    pub fn apply_to(&self, g: &mut Graph) -> Result<()> {
        self.validate(g.n())?;
        for _ in 0..self.new_vertices {
            g.add_vertex();
        }
        for &(a, b) in &self.new_edges {
            g.add_edge(a, b)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RebuildStats {
    /// Rebuilder work excluding engine internals.
    pub work: u64,
    /// Paths opened, one per traversal entry.
    pub paths: u64,
    /// Hanging subtrees queried.
    pub hanging: u64,
    /// Query answers added to reduced adjacency lists.
    pub found_entries: u64,
    pub engine: EngineStats,
}

#[derive(Debug, Clone)]
pub struct Rebuild {
    pub tree: DfsTree,
    pub stats: RebuildStats,
}

/// Builds a DFS tree of `g + batch`, given a DFS tree `t` of `g` and an
/// engine built over `(g, t)`.
pub fn batch_insert<E>(g: &Graph, t: &DfsTree, engine: &E, batch: &UpdateBatch) -> Result<Rebuild>
where
    E: QueryEngine + ?Sized,
{
    if g.n() != t.n() {
        return Err(Error::InvalidParameter(format!("graph has {} vertices, tree has {}", g.n(), t.n())));
    }
    batch.validate(g.n())?;
    let mut state = RebuildState::new(g, t, engine, batch);
    state.traverse_root();
    let RebuildState { par_star, mut stats, .. } = state;
    let tree = DfsTree::from_parents(&par_star).expect("traversal assigns every vertex a parent");
    stats.work += par_star.len() as u64;
    Ok(Rebuild { tree, stats })
}

/// One open path on the explicit traversal stack.
#[derive(Debug, Clone, Copy)]
struct Frame {
    start: usize,
    len: usize,
    /// Path position whose reduced list is being scanned.
    pos: usize,
    /// Scanning inserted edges rather than query answers.
    seeded: bool,
    cursor: usize,
}

struct RebuildState<'a, E: ?Sized> {
    g: &'a Graph,
    t: &'a DfsTree,
    engine: &'a E,
    /// Real vertices of the old tree; anything at or above is newly inserted.
    n: usize,
    visited: Vec<bool>,
    found: Vec<Vec<VertexId>>,
    seeded: Vec<Vec<VertexId>>,
    par_star: Vec<Option<VertexId>>,
    path_buf: Vec<VertexId>,
    hanging: Vec<VertexId>,
    answers: Vec<QueryAnswer>,
    stats: RebuildStats,
}

impl<'a, E: QueryEngine + ?Sized> RebuildState<'a, E> {
    fn new(g: &'a Graph, t: &'a DfsTree, engine: &'a E, batch: &UpdateBatch) -> Self {
        let n = g.n();
        let total = n + batch.new_vertices;
        let mut seeded = vec![Vec::new(); total];
        for &(a, b) in &batch.new_edges {
            seeded[a].push(b);
            seeded[b].push(a);
        }
        let stats = RebuildStats { work: (total + 2 * batch.new_edges.len()) as u64, ..Default::default() };
        Self {
            g,
            t,
            engine,
            n,
            visited: vec![false; total],
            found: vec![Vec::new(); total],
            seeded,
            par_star: vec![None; total],
            path_buf: Vec::new(),
            hanging: Vec::new(),
            answers: Vec::new(),
            stats,
        }
    }

    fn old_parent(&self, v: VertexId) -> Option<VertexId> {
        if v < self.n {
            self.t.real_parent(v)
        } else {
            None
        }
    }

    /// Enters old component roots in ascending id, then inserted vertices.
    fn traverse_root(&mut self) {
        let total = self.visited.len();
        let roots = self.t.children(self.t.root()).iter().copied().chain(self.n..total);
        for x in roots {
            self.stats.work += 1;
            if !self.visited[x] {
                self.par_star[x] = None;
                self.dfs_enter(x);
            }
        }
    }

    /// Runs the traversal from `v` until everything reachable through reduced
    /// lists below it is visited. Nested entries use an explicit stack.
    fn dfs_enter(&mut self, v: VertexId) {
        let mut frames = vec![self.open_path(v)];
        while let Some(frame) = frames.last_mut() {
            if frame.pos == frame.len {
                self.path_buf.truncate(frame.start);
                frames.pop();
                continue;
            }
            let w = self.path_buf[frame.start + frame.pos];
            let list = if frame.seeded { &self.seeded[w] } else { &self.found[w] };
            if let Some(&x) = list.get(frame.cursor) {
                frame.cursor += 1;
                self.stats.work += 1;
                if !self.visited[x] {
                    self.par_star[x] = Some(w);
                    let next = self.open_path(x);
                    frames.push(next);
                }
            } else if !frame.seeded {
                frame.seeded = true;
                frame.cursor = 0;
            } else {
                frame.pos += 1;
                frame.seeded = false;
                frame.cursor = 0;
            }
        }
    }

    /// Climbs from `v`, reverses the path, and fills reduced lists for every
    /// subtree hanging off it.
    fn open_path(&mut self, v: VertexId) -> Frame {
        let start = self.path_buf.len();
        self.path_buf.push(v);
        let mut u = v;
        while let Some(p) = self.old_parent(u) {
            if self.visited[p] {
                break;
            }
            u = p;
            self.path_buf.push(u);
        }
        self.path_buf[start..].reverse();
        let len = self.path_buf.len() - start;
        self.stats.paths += 1;
        self.stats.work += 3 * len as u64;

        let path = &self.path_buf[start..];
        for &x in path {
            self.visited[x] = true;
        }
        for pair in path.windows(2) {
            self.par_star[pair[0]] = Some(pair[1]);
        }

        self.hanging.clear();
        for (i, &w) in path.iter().enumerate() {
            if w >= self.n {
                continue;
            }
            let next = path.get(i + 1).copied();
            for &x in self.t.children(w) {
                self.stats.work += 1;
                if Some(x) != next && !self.visited[x] {
                    self.hanging.push(x);
                }
            }
        }

        if !self.hanging.is_empty() {
            self.answers.clear();
            let query = PathQuery { path, hanging: &self.hanging };
            self.engine.answer_path(self.g, self.t, query, &mut self.answers, &mut self.stats.engine);
            debug_assert_eq!(self.answers.len(), self.hanging.len());
            self.stats.hanging += self.hanging.len() as u64;
            for ans in &self.answers {
                self.stats.work += 1;
                if let Some(e) = ans {
                    self.found[e.hi].push(e.lo);
                    self.stats.found_entries += 1;
                }
            }
        }

        Frame { start, len, pos: 0, seeded: false, cursor: 0 }
    }
}
