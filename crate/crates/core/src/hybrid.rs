//! Engine answering all queries of one path together.
//!
//! Three parts, chosen per hanging subtree `T(x)`:
//!
//! - a short-path table holding `Q(T(v), u, par(v))` for the `2L` nearest
//!   ancestors `u` of every `v`, where `L = ⌈log₂ n⌉`;
//! - a marked set `M` (partition vertices with `|T(x)| ≥ L`) whose groups
//!   `M_s = {v : anc_v = s}` each carry a cascade over depth-sorted ancestor
//!   neighbor lists, so one search answers every small subtree below `s`;
//! - the range index, for large subtrees below a marked vertex.
//!
//! Any subtree within `2L` hops of the path top is answered from the table.
//! That always covers the segment above the first marked vertex, since a path
//! avoiding `M` has at most `2L − 2` hops.

use std::collections::HashMap;

use crate::cascade::CascadeFamily;
use crate::engine::{EngineKind, EngineStats, PathQuery, QueryAnswer, QueryEngine};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexId};
use crate::meter::{ceil_log2, Chunked, Meter, WorkCounter};
use crate::partition::partition_metered;
use crate::range::RangeIndex;
use crate::tree::DfsTree;

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, Default)]
pub struct ShortPathTable {
    span: usize,
    offset: Vec<usize>,
    /// Row of `v`, slot `h − 1`: answer for the ancestor `h` hops above `v`.
    cells: Vec<(u32, u32)>,
}

impl ShortPathTable {
    /// Maximum number of hops stored per vertex.
    pub fn span(&self) -> usize {
        self.span
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// `Q(T(v), u, par(v))` for the ancestor `u` exactly `hops` above `v`,
    /// or `None` if that pair is not stored.
    pub fn entry(&self, v: VertexId, hops: usize) -> Option<QueryAnswer> {
        let row = self.offset.get(v..v + 2)?;
        if hops == 0 || hops > row[1] - row[0] {
            return None;
        }
        let (hi, lo) = self.cells[row[0] + hops - 1];
        Some((hi != NONE).then(|| Edge::new(hi as VertexId, lo as VertexId)))
    }
}

pub fn build_short_path_table(g: &Graph, t: &DfsTree) -> ShortPathTable {
    short_path_metered(g, t, &mut WorkCounter::new())
}

fn short_path_metered(g: &Graph, t: &DfsTree, meter: &mut dyn Meter) -> ShortPathTable {
    let n = g.n();
    let span = 2 * ceil_log2(n);
    let mut offset = Vec::with_capacity(n + 1);
    let mut total = 0;
    for v in 0..n {
        offset.push(total);
        total += span.min(t.depth(v) - 1);
    }
    offset.push(total);
    let mut cells = vec![(NONE, NONE); total];
    meter.tick(n as u64 + 1);

    // mark (a, v) for every v within `span` hops below a on the way to b
    for _ in 0..=ceil_log2(n + 1) {
        meter.tick(n as u64 + 1);
    }
    let jumps = t.jumps();
    for a in 0..n {
        for &b in g.neighbors(a) {
            if b == a || !t.is_ancestor(a, b) {
                continue;
            }
            let gap = t.depth(b) - t.depth(a);
            let top = span.min(gap);
            let mut v = jumps.ancestor(b, gap - top);
            for h in (1..=top).rev() {
                let cell = &mut cells[offset[v] + h - 1];
                if cell.0 == NONE || t.first(b) < t.first(cell.1 as usize) {
                    *cell = (a as u32, b as u32);
                }
                v = t.parent(v).expect("real vertex has a parent");
            }
            meter.tick(top as u64 + ceil_log2(gap + 1) as u64);
        }
    }

    // an unmarked pair inherits the answer one hop lower
    for v in 0..n {
        let row = &mut cells[offset[v]..offset[v + 1]];
        for h in 1..row.len() {
            if row[h].0 == NONE {
                row[h] = row[h - 1];
            }
        }
        meter.tick(row.len() as u64 + 1);
    }
    ShortPathTable { span, offset, cells }
}

#[derive(Debug, Clone, Default)]
pub struct MarkedIndex {
    log: usize,
    marked: Vec<VertexId>,
    /// Per vertex: its group index when marked, otherwise [`NONE`].
    group_of: Vec<u32>,
    /// Nearest marked proper ancestor.
    anc: Vec<u32>,
    group_start: Vec<usize>,
    /// Members of all groups, each group in preorder.
    members: Vec<VertexId>,
    /// Index of a vertex inside its group.
    group_pos: Vec<u32>,
    cascades: Vec<CascadeFamily<u32>>,
    /// Neighbor ids parallel to the cascade arrays.
    neighbors: Vec<Vec<Vec<u32>>>,
}

impl MarkedIndex {
    pub fn log(&self) -> usize {
        self.log
    }

    /// Marked vertices in preorder.
    pub fn marked(&self) -> &[VertexId] {
        &self.marked
    }

    pub fn is_marked(&self, v: VertexId) -> bool {
        self.group_of.get(v).is_some_and(|&g| g != NONE)
    }

    pub fn anc(&self, v: VertexId) -> Option<VertexId> {
        self.anc.get(v).filter(|&&a| a != NONE).map(|&a| a as VertexId)
    }

    /// `M_s` in preorder; empty unless `s` is marked.
    pub fn group(&self, s: VertexId) -> &[VertexId] {
        match self.group_index(s) {
            Some(i) => &self.members[self.group_start[i]..self.group_start[i + 1]],
            None => &[],
        }
    }

    pub fn cascade(&self, s: VertexId) -> Option<&CascadeFamily<u32>> {
        self.group_index(s).map(|i| &self.cascades[i])
    }

    fn group_index(&self, s: VertexId) -> Option<usize> {
        self.group_of.get(s).filter(|&&g| g != NONE).map(|&g| g as usize)
    }
}

pub fn build_marked_index(g: &Graph, t: &DfsTree) -> MarkedIndex {
    marked_metered(g, t, &mut WorkCounter::new())
}

fn marked_metered(g: &Graph, t: &DfsTree, meter: &mut dyn Meter) -> MarkedIndex {
    let n = g.n();
    let log = ceil_log2(n);
    let mut group_of = vec![NONE; n];
    let mut marked = Vec::new();
    if n >= 2 {
        let part = partition_metered(t, log.max(2), meter);
        for &v in &part.marked {
            if t.subtree_size(v) >= log {
                group_of[v] = marked.len() as u32;
                marked.push(v);
            }
        }
    }

    let mut anc = vec![NONE; n];
    let mut sizes = vec![0usize; marked.len() + 1];
    for &v in t.order() {
        let Some(p) = t.parent(v).filter(|&p| p < n) else {
            continue;
        };
        anc[v] = if group_of[p] != NONE { p as u32 } else { anc[p] };
        if anc[v] != NONE {
            sizes[group_of[anc[v] as usize] as usize + 1] += 1;
        }
    }
    let mut group_start = sizes;
    for i in 0..marked.len() {
        group_start[i + 1] += group_start[i];
    }
    let mut fill = group_start.clone();
    let mut members = vec![0; group_start[marked.len()]];
    let mut group_pos = vec![NONE; n];
    for &v in t.order() {
        if v < n && anc[v] != NONE {
            let gi = group_of[anc[v] as usize] as usize;
            members[fill[gi]] = v;
            group_pos[v] = (fill[gi] - group_start[gi]) as u32;
            fill[gi] += 1;
        }
    }
    for _ in 0..3 {
        meter.tick(n as u64 + 1);
    }

    // ancestor-neighbor depths per vertex, ascending: scan z by depth
    let mut by_depth = vec![0usize; n + 2];
    for v in 0..n {
        by_depth[t.depth(v) + 1] += 1;
    }
    for d in 0..=n {
        by_depth[d + 1] += by_depth[d];
    }
    let mut level_order = vec![0; n];
    for v in 0..n {
        let d = t.depth(v);
        level_order[by_depth[d]] = v;
        by_depth[d] += 1;
    }
    let mut lists: Vec<Vec<(u32, u32)>> = vec![Vec::new(); n];
    let mut chunked = Chunked::new(meter);
    chunked.add(2 * n as u64 + 1);
    for &z in &level_order {
        for &y in g.neighbors(z) {
            chunked.add(1);
            if t.depth(z) < t.depth(y) && anc[y] != NONE {
                lists[y].push((t.depth(z) as u32, z as u32));
            }
        }
    }
    drop(chunked);

    let mut cascades = Vec::with_capacity(marked.len());
    let mut neighbors = Vec::with_capacity(marked.len());
    for gi in 0..marked.len() {
        let group = &members[group_start[gi]..group_start[gi + 1]];
        let mut depths = Vec::with_capacity(group.len());
        let mut ids = Vec::with_capacity(group.len());
        for &y in group {
            let list = std::mem::take(&mut lists[y]);
            meter.tick(list.len() as u64 + 1);
            depths.push(list.iter().map(|e| e.0).collect());
            ids.push(list.into_iter().map(|e| e.1).collect());
        }
        cascades.push(CascadeFamily::build_metered(depths, meter).expect("lists are sorted"));
        neighbors.push(ids);
    }
    MarkedIndex { log, marked, group_of, anc, group_start, members, group_pos, cascades, neighbors }
}

#[derive(Debug, Clone, Default)]
pub struct HybridIndex {
    table: ShortPathTable,
    marked: MarkedIndex,
    range: RangeIndex,
}

impl HybridIndex {
    pub fn build(g: &Graph, t: &DfsTree, meter: &mut dyn Meter) -> Self {
        let table = short_path_metered(g, t, meter);
        let marked = marked_metered(g, t, meter);
        let range = RangeIndex::build(g, t, meter);
        Self { table, marked, range }
    }

    pub fn short_paths(&self) -> &ShortPathTable {
        &self.table
    }

    pub fn marked(&self) -> &MarkedIndex {
        &self.marked
    }

    pub fn range(&self) -> &RangeIndex {
        &self.range
    }

    /// `Q(T(x), u, v)` for every `x` in `hanging`, checking preconditions.
    pub fn batched_path_query(
        &self,
        g: &Graph,
        t: &DfsTree,
        u: VertexId,
        v: VertexId,
        hanging: &[VertexId],
    ) -> Result<(Vec<QueryAnswer>, EngineStats)> {
        let n = g.n();
        if u >= n || v >= n {
            return Err(Error::InvalidQuery(format!("path ({u}, {v}) must use real vertices")));
        }
        let path = t.path_vertices(u, v).map_err(|_| Error::InvalidQuery(format!("{u} is not an ancestor of {v}")))?;
        for &x in hanging {
            crate::engine::check_hanging(t, x, u, v)?;
        }
        let mut out = Vec::with_capacity(hanging.len());
        let mut stats = EngineStats::default();
        self.answer_path(g, t, PathQuery { path: &path, hanging }, &mut out, &mut stats);
        Ok((out, stats))
    }

    fn small_subtree(
        &self,
        t: &DfsTree,
        s: VertexId,
        x: VertexId,
        successors: &[Option<usize>],
        stats: &mut EngineStats,
    ) -> QueryAnswer {
        let m = &self.marked;
        let gi = m.group_of[s] as usize;
        let start = m.group_pos[x] as usize;
        let limit = t.depth(x) as u32;
        let cascade = &m.cascades[gi];
        let mut best: Option<(u32, u32, VertexId)> = None;
        let size = t.subtree_size(x);
        for (i, &y) in m.members[m.group_start[gi] + start..][..size].iter().enumerate() {
            debug_assert!(t.is_ancestor(x, y));
            if let Some(p) = successors[start + i] {
                let depth = cascade.arrays()[start + i][p];
                if depth < limit && best.is_none_or(|b| depth < b.0) {
                    best = Some((depth, m.neighbors[gi][start + i][p], y));
                }
            }
        }
        stats.work += size as u64;
        best.map(|(_, z, y)| Edge::new(z as VertexId, y))
    }
}

impl QueryEngine for HybridIndex {
    fn kind(&self) -> EngineKind {
        EngineKind::Hybrid
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
        let top = t.depth(u);
        let log = self.marked.log;
        let mut cascades: HashMap<VertexId, Vec<Option<usize>>> = HashMap::new();
        for &x in query.hanging {
            let p = t.parent(x).expect("hanging root has a parent");
            // deepest marked vertex on the path at or above par(x)
            let owner = if self.marked.is_marked(p) { Some(p) } else { self.marked.anc(p) };
            let owner = owner.filter(|&s| t.depth(s) >= top);
            stats.point_queries += 1;
            let stored = self.table.entry(x, t.depth(x) - top);
            let answer = match (stored, owner) {
                (Some(answer), _) => {
                    stats.table_lookups += 1;
                    stats.work += 1;
                    answer
                }
                (None, None) => self.range_query(t, x, u, stats),
                (None, Some(s)) if t.subtree_size(x) < log => {
                    let successors = cascades.entry(s).or_insert_with(|| {
                        let cascade = self.marked.cascade(s).expect("owner is marked");
                        let mut pos = Vec::with_capacity(cascade.len());
                        let comparisons = cascade.successor_positions_into(top as u32, &mut pos);
                        let cost = comparisons + cascade.len() as u64 + 1;
                        stats.cascade_queries += 1;
                        stats.cascade_work += cost;
                        stats.work += cost;
                        pos
                    });
                    self.small_subtree(t, s, x, successors, stats)
                }
                (None, Some(_)) => {
                    stats.queries_3b += 1;
                    stats.large_roots.push(x);
                    self.range_query(t, x, u, stats)
                }
            };
            out.push(answer);
        }
    }
}

impl HybridIndex {
    fn range_query(&self, t: &DfsTree, x: VertexId, u: VertexId, stats: &mut EngineStats) -> QueryAnswer {
        let mut visits = 0;
        let answer = self.range.query(t, x, u, &mut visits);
        stats.range_visits += visits;
        stats.work += visits + 1;
        answer
    }
}
