//! Quadratic-space engine storing `Q(T(w), u, par(w))` for every real
//! ancestor `u` of every vertex `w`.
//!
//! Built one ancestor at a time: for `u`, a next-neighbor array over the
//! preorder positions of `T(u)` tells in O(1) whether `u` has an edge into
//! `T(w)` and which subtree vertex comes first. A second pass per `w` carries
//! answers upward from `par(w)` to the top.

use crate::engine::{EngineKind, EngineStats, PathQuery, QueryAnswer, QueryEngine};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexId};
use crate::meter::{Chunked, Meter};
use crate::tree::DfsTree;

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, Default)]
pub struct DenseTable {
    /// Row of `w` starts at `offset[w]`; slot `depth(u) − 1` holds `(u', z)`.
    offset: Vec<usize>,
    cells: Vec<(u32, u32)>,
}

impl DenseTable {
    pub fn build(g: &Graph, t: &DfsTree, meter: &mut dyn Meter) -> Self {
        let n = g.n();
        let mut offset = Vec::with_capacity(n + 1);
        let mut total = 0usize;
        for w in 0..n {
            offset.push(total);
            total += t.depth(w) - 1;
        }
        offset.push(total);
        let mut cells = vec![(NONE, NONE); total];

        let positions = n + 2;
        let mut stamp = vec![usize::MAX; positions];
        let mut next = vec![NONE; positions];
        let mut meter = Chunked::new(meter);
        meter.add(n as u64 + 1);
        for u in 0..n {
            let (lo, hi) = (t.first(u) + 1, t.last(u));
            if lo > hi {
                continue;
            }
            for &v in g.neighbors(u) {
                meter.add(1);
                if v != u && t.is_ancestor(u, v) {
                    stamp[t.first(v)] = u;
                }
            }
            next[hi + 1] = NONE;
            for p in (lo..=hi).rev() {
                meter.add(2);
                next[p] = if stamp[p] == u { p as u32 } else { next[p + 1] };
            }
            let slot = t.depth(u) - 1;
            for (&w, &q) in t.order()[lo..=hi].iter().zip(&next[lo..=hi]) {
                if q != NONE && q as usize <= t.last(w) {
                    cells[offset[w] + slot] = (u as u32, t.order()[q as usize] as u32);
                }
            }
            meter.add(1);
        }

        // carry answers upward: a miss at u inherits the answer one level down
        for w in 0..n {
            let row = &mut cells[offset[w]..offset[w + 1]];
            for i in (0..row.len().saturating_sub(1)).rev() {
                if row[i].0 == NONE {
                    row[i] = row[i + 1];
                }
            }
            meter.add(row.len() as u64 + 1);
        }
        Self { offset, cells }
    }

    /// Number of stored `(w, u)` pairs.
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// `Q(T(w), u, par(w))` for a real proper ancestor `u` of `w`.
    pub fn dense_query(&self, t: &DfsTree, w: VertexId, u: VertexId) -> Result<QueryAnswer> {
        let n = self.offset.len().saturating_sub(1);
        if w >= n || u >= n || u == w || !t.is_ancestor(u, w) {
            return Err(Error::InvalidQuery(format!("pair ({w}, {u}) is not stored")));
        }
        Ok(self.lookup(t, w, u))
    }

    #[inline]
    fn lookup(&self, t: &DfsTree, w: VertexId, u: VertexId) -> QueryAnswer {
        let (hi, lo) = self.cells[self.offset[w] + t.depth(u) - 1];
        (hi != NONE).then(|| Edge::new(hi as VertexId, lo as VertexId))
    }
}

impl QueryEngine for DenseTable {
    fn kind(&self) -> EngineKind {
        EngineKind::Dense
    }

    fn answer_path(
        &self,
        _g: &Graph,
        t: &DfsTree,
        query: PathQuery<'_>,
        out: &mut Vec<QueryAnswer>,
        stats: &mut EngineStats,
    ) {
        let u = query.upper();
        for &w in query.hanging {
            out.push(self.lookup(t, w, u));
        }
        let count = query.hanging.len() as u64;
        stats.point_queries += count;
        stats.table_lookups += count;
        stats.work += count;
    }
}
