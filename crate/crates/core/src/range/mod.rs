//! Single-query engine: `Q(T(w), x, par(w))` as a 2D range-successor query.
//!
//! Every edge `(a, b)` contributes the points `(first(a), first(b))` and
//! `(first(b), first(a))`. The answer to `Q(T(w), x, par(w))` is the point
//! with smallest x-coordinate in `[first(x), first(w) − 1] × [first(w), last(w)]`:
//! only ancestors of `w` inside `T(x)` can have an edge into `T(w)`, and the
//! highest of them comes first in preorder.
//!
//! Points are kept sorted by `(x, y)` with their y-values in a wavelet tree,
//! so the minimum-x point is the leftmost position in an index range whose
//! value falls in a value range. Ties on `x` resolve to the smallest `y`.
//! The x-coordinates are preorder positions, so the index range comes from a
//! per-position offset table instead of a binary search.

mod wavelet;

pub use wavelet::WaveletTree;

use crate::engine::{EngineKind, EngineStats, PathQuery, QueryAnswer, QueryEngine};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexId};
use crate::meter::{Chunked, Meter};
use crate::tree::DfsTree;

#[derive(Debug, Clone, Default)]
pub struct RangeIndex {
    /// `start[p]` = index of the first point with x-coordinate `≥ p`.
    start: Vec<u32>,
    /// Source edge of each point as `(path side, subtree side)`.
    sources: Vec<(u32, u32)>,
    wavelet: WaveletTree,
}

impl RangeIndex {
    pub fn build(g: &Graph, t: &DfsTree, meter: &mut dyn Meter) -> Self {
        let n = g.n();
        let nodes = n + 1;
        // bucket by x = first(a); scanning b in preorder keeps each bucket sorted by y
        let mut start = vec![0usize; nodes + 1];
        for a in 0..n {
            start[t.first(a) + 1] += g.degree(a);
        }
        for i in 0..nodes {
            start[i + 1] += start[i];
        }
        let total = start[nodes];
        let mut fill = start.clone();
        let mut ys = vec![0u32; total];
        let mut sources = vec![(0u32, 0u32); total];
        meter.tick(nodes as u64);
        let mut chunked = Chunked::new(meter);
        for &b in t.order() {
            if t.is_root(b) {
                continue;
            }
            chunked.add(1);
            for &a in g.neighbors(b) {
                chunked.add(2);
                let slot = &mut fill[t.first(a)];
                ys[*slot] = t.first(b) as u32;
                sources[*slot] = (a as u32, b as u32);
                *slot += 1;
            }
        }
        drop(chunked);
        let wavelet = WaveletTree::build(&ys, nodes, meter);
        let start = start.into_iter().map(|s| s as u32).collect();
        Self { start, sources, wavelet }
    }

    /// Number of points (twice the edge count).
    pub fn len(&self) -> usize {
        self.sources.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sources.is_empty()
    }

    pub fn wavelet(&self) -> &WaveletTree {
        &self.wavelet
    }

    /// Points `(x, y)` in index order.
    pub fn points(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.start.windows(2).enumerate().flat_map(move |(x, w)| {
            (w[0] as usize..w[1] as usize).map(move |i| (x as u32, self.wavelet.access(i)))
        })
    }

    /// `Q(T(w), x, par(w))`; `x` must be a proper real ancestor of `w`.
    pub fn range_query(&self, t: &DfsTree, w: VertexId, x: VertexId) -> Result<QueryAnswer> {
        if w >= t.n() || x >= t.n() || x == w || !t.is_ancestor(x, w) {
            return Err(Error::InvalidQuery(format!("{x} is not a proper ancestor of {w}")));
        }
        let mut visits = 0;
        Ok(self.query(t, w, x, &mut visits))
    }

    pub(crate) fn query(&self, t: &DfsTree, w: VertexId, x: VertexId, visits: &mut u64) -> QueryAnswer {
        let lo = self.start[t.first(x)] as usize;
        let hi = self.start[t.first(w)] as usize;
        let (y_lo, y_hi) = (t.first(w) as u32, t.last(w) as u32);
        self.wavelet.leftmost_in_range(lo, hi, y_lo, y_hi, visits).map(|i| {
            let (a, b) = self.sources[i];
            Edge::new(a as VertexId, b as VertexId)
        })
    }
}

impl QueryEngine for RangeIndex {
    fn kind(&self) -> EngineKind {
        EngineKind::Range
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
            let mut visits = 0;
            out.push(self.query(t, w, u, &mut visits));
            stats.point_queries += 1;
            stats.range_visits += visits;
            stats.work += visits + 1;
        }
    }
}
