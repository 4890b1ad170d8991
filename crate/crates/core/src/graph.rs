//! Undirected multigraph over dense vertex ids.

use crate::error::{Error, Result};

/// Dense vertex index. Real vertices are `0..n`; a DFS tree adds one extra
/// node, the super root, at index `n`.
pub type VertexId = usize;

/// An edge attached to a DFS tree: `hi` is an ancestor of `lo`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub hi: VertexId,
    pub lo: VertexId,
}

impl Edge {
    pub fn new(hi: VertexId, lo: VertexId) -> Self {
        Self { hi, lo }
    }
}

/// Undirected graph with append-only adjacency lists.
///
/// Self-loops are rejected. Parallel edges are kept; every occurrence is
/// listed at both endpoints.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<VertexId>>,
    m: usize,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Self { adj: vec![Vec::new(); n], m: 0 }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut g = Self::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    /// Appends a vertex and returns its id.
    pub fn add_vertex(&mut self) -> VertexId {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    pub fn check_edge(&self, u: VertexId, v: VertexId) -> Result<()> {
        let count = self.n();
        for w in [u, v] {
            if w >= count {
                return Err(Error::VertexOutOfRange { vertex: w, count });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        Ok(())
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<()> {
        self.check_edge(u, v)?;
        self.adj[u].push(v);
        self.adj[v].push(u);
        self.m += 1;
        Ok(())
    }

    /// Every edge once, as `(u, v)` with `u < v`, parallel copies repeated.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u < self.n() && v < self.n() && self.adj[u].contains(&v)
    }

    /// Adjacency lists sorted ascending, built by bucketing in `O(n + m)`.
    pub fn sorted_adjacency(&self) -> Vec<Vec<VertexId>> {
        let mut sorted: Vec<Vec<VertexId>> = self.adj.iter().map(|a| Vec::with_capacity(a.len())).collect();
        for (u, nbrs) in self.adj.iter().enumerate() {
            for &v in nbrs {
                sorted[v].push(u);
            }
        }
        sorted
    }
}
