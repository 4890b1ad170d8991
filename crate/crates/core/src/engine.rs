//! The query contract shared by all engines.
//!
//! `Q(T(w), u, v)` asks for the edge joining the highest vertex of the tree
//! path `u..v` to the subtree `T(w)` hanging off that path. Since every
//! non-tree edge of a DFS tree joins an ancestor to a descendant, the lower
//! end of the path can always be taken to be `par(w)`; engines answer the
//! reduced form `Q(T(w), u, par(w))`.
//!
//! Ties on the path endpoint are broken towards the subtree endpoint with the
//! smallest preorder position, a rule every engine here honors natively.

use std::fmt;
use std::str::FromStr;

use crate::dense::DenseTable;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexId};
use crate::hybrid::HybridIndex;
use crate::meter::Meter;
use crate::oracle;
use crate::range::RangeIndex;
use crate::tree::DfsTree;

/// `Some(edge)` with `edge.hi` on the path and `edge.lo` in the subtree, or `None`.
pub type QueryAnswer = Option<Edge>;

/// All queries issued for one rebuilder path.
#[derive(Debug, Clone, Copy)]
pub struct PathQuery<'a> {
    /// `path(u, v)` top-down; `path[0]` is `u`.
    pub path: &'a [VertexId],
    /// Roots of subtrees whose parent lies on the path.
    pub hanging: &'a [VertexId],
}

impl PathQuery<'_> {
    pub fn upper(&self) -> VertexId {
        self.path[0]
    }
}

/// Per-call counters. Engines only ever add to these.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EngineStats {
    /// Total elementary work inside the engine.
    pub work: u64,
    pub point_queries: u64,
    pub table_lookups: u64,
    pub cascade_queries: u64,
    pub cascade_work: u64,
    /// Large hanging subtrees answered by the range index.
    pub queries_3b: u64,
    pub range_visits: u64,
    /// Roots routed to the range index, in query order.
    pub large_roots: Vec<VertexId>,
}

impl EngineStats {
    pub fn absorb(&mut self, other: &EngineStats) {
        self.work += other.work;
        self.point_queries += other.point_queries;
        self.table_lookups += other.table_lookups;
        self.cascade_queries += other.cascade_queries;
        self.cascade_work += other.cascade_work;
        self.queries_3b += other.queries_3b;
        self.range_visits += other.range_visits;
        self.large_roots.extend_from_slice(&other.large_roots);
    }
}

pub trait QueryEngine {
    fn kind(&self) -> EngineKind;

    /// Appends one answer per entry of `query.hanging` to `out`, in order.
    fn answer_path(
        &self,
        g: &Graph,
        t: &DfsTree,
        query: PathQuery<'_>,
        out: &mut Vec<QueryAnswer>,
        stats: &mut EngineStats,
    );
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EngineKind {
    Brute,
    Dense,
    Range,
    Hybrid,
}

impl EngineKind {
    pub const ALL: [EngineKind; 4] = [EngineKind::Brute, EngineKind::Dense, EngineKind::Range, EngineKind::Hybrid];

    /// Dense when `n² ≤ m·⌈log₂ n⌉`, hybrid otherwise.
    pub fn auto(n: usize, m: usize) -> Self {
        let log = crate::meter::ceil_log2(n) as u128;
        if (n as u128) * (n as u128) <= (m as u128) * log {
            EngineKind::Dense
        } else {
            EngineKind::Hybrid
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            EngineKind::Brute => "brute",
            EngineKind::Dense => "dense",
            EngineKind::Range => "range",
            EngineKind::Hybrid => "hybrid",
        }
    }
}

impl fmt::Display for EngineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EngineKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "brute" => Ok(EngineKind::Brute),
            "dense" => Ok(EngineKind::Dense),
            "range" => Ok(EngineKind::Range),
            "hybrid" => Ok(EngineKind::Hybrid),
            other => Err(Error::InvalidParameter(format!("unknown engine `{other}`"))),
        }
    }
}

/// Scans every edge per query; used to cross-check the real engines.
#[derive(Debug, Clone, Copy, Default)]
pub struct BruteEngine;

impl QueryEngine for BruteEngine {
    fn kind(&self) -> EngineKind {
        EngineKind::Brute
    }

    fn answer_path(
        &self,
        g: &Graph,
        t: &DfsTree,
        query: PathQuery<'_>,
        out: &mut Vec<QueryAnswer>,
        stats: &mut EngineStats,
    ) {
        let u = query.upper();
        for &x in query.hanging {
            let p = t.parent(x).expect("hanging root has a parent");
            out.push(oracle::scan_query(g, t, x, u, p));
            stats.point_queries += 1;
            stats.work += 2 * g.m() as u64 + 1;
        }
    }
}

/// A built engine of any kind.
#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)]
pub enum Engine {
    Brute(BruteEngine),
    Dense(DenseTable),
    Range(RangeIndex),
    Hybrid(HybridIndex),
}

impl Engine {
    pub fn build(kind: EngineKind, g: &Graph, t: &DfsTree, meter: &mut dyn Meter) -> Self {
        match kind {
            EngineKind::Brute => {
                meter.tick(1);
                Engine::Brute(BruteEngine)
            }
            EngineKind::Dense => Engine::Dense(DenseTable::build(g, t, meter)),
            EngineKind::Range => Engine::Range(RangeIndex::build(g, t, meter)),
            EngineKind::Hybrid => Engine::Hybrid(HybridIndex::build(g, t, meter)),
        }
    }
}

impl QueryEngine for Engine {
    fn kind(&self) -> EngineKind {
        match self {
            Engine::Brute(e) => e.kind(),
            Engine::Dense(e) => e.kind(),
            Engine::Range(e) => e.kind(),
            Engine::Hybrid(e) => e.kind(),
        }
    }

    fn answer_path(
        &self,
        g: &Graph,
        t: &DfsTree,
        query: PathQuery<'_>,
        out: &mut Vec<QueryAnswer>,
        stats: &mut EngineStats,
    ) {
        match self {
            Engine::Brute(e) => e.answer_path(g, t, query, out, stats),
            Engine::Dense(e) => e.answer_path(g, t, query, out, stats),
            Engine::Range(e) => e.answer_path(g, t, query, out, stats),
            Engine::Hybrid(e) => e.answer_path(g, t, query, out, stats),
        }
    }
}

/// Rewrites `Q(T(w), x, y)` as `Q(T(w), x, par(w))`, returned as `(w, x)`.
///
/// The lower end `y` drops out: an edge from `T(w)` can only reach an
/// ancestor of `w`, and those on `path(x, y)` are exactly `path(x, par(w))`.
pub fn reduce_query(_t: &DfsTree, w: VertexId, x: VertexId, _y: VertexId) -> (VertexId, VertexId) {
    (w, x)
}

/// Checks that `x` is a real ancestor of `y` and that `T(w)` hangs off `path(x, y)`.
pub(crate) fn check_hanging(t: &DfsTree, w: VertexId, x: VertexId, y: VertexId) -> Result<()> {
    let n = t.n();
    if w >= n || x >= n || y >= n {
        return Err(Error::InvalidQuery(format!("vertices ({w}, {x}, {y}) must be real")));
    }
    if !t.is_ancestor(x, y) {
        return Err(Error::InvalidQuery(format!("{x} is not an ancestor of {y}")));
    }
    let p = t.parent(w).expect("real vertex has a parent");
    if t.is_root(p) || !t.is_ancestor(x, p) || !t.is_ancestor(p, y) {
        return Err(Error::InvalidQuery(format!("parent of {w} is not on path({x}, {y})")));
    }
    if t.is_ancestor(w, y) {
        return Err(Error::InvalidQuery(format!("{w} lies on path({x}, {y})")));
    }
    Ok(())
}

/// Prefers the higher path endpoint, then the earlier subtree endpoint.
#[inline]
pub(crate) fn better(t: &DfsTree, cand: Edge, best: Option<Edge>) -> bool {
    match best {
        None => true,
        Some(b) => (t.depth(cand.hi), t.first(cand.lo)) < (t.depth(b.hi), t.first(b.lo)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::static_dfs;

    #[test]
    fn reduce_query_examples() {
        let g = Graph::from_edges(5, (1..5).map(|v| (v - 1, v))).unwrap();
        let t = static_dfs(&g);
        assert_eq!(reduce_query(&t, 3, 0, 4), (3, 0));
        assert_eq!(reduce_query(&t, 3, 0, 2), (3, 0));
        assert!(check_hanging(&t, 3, 0, 4).is_err(), "3 lies on path(0, 4)");
        assert!(check_hanging(&t, 3, 0, 2).is_ok());
    }

    #[test]
    fn kind_parsing() {
        for k in EngineKind::ALL {
            assert_eq!(k.name().parse::<EngineKind>().unwrap(), k);
        }
        assert!("fast".parse::<EngineKind>().is_err());
    }

    #[test]
    fn auto_selection() {
        // triangle: 9 > 3 * 2
        assert_eq!(EngineKind::auto(3, 3), EngineKind::Hybrid);
        // K5: 25 <= 10 * 3
        assert_eq!(EngineKind::auto(5, 10), EngineKind::Dense);
    }
}
