//! Rooted DFS trees with preorder intervals and level-ancestor lookup.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::meter::{Meter, WorkCounter};

const NIL: VertexId = VertexId::MAX;

/// A rooted spanning tree over `n` real vertices plus the super root `n`.
///
/// Children are kept in ascending id order and the preorder `order` visits
/// them in that order, so `first(v)..=last(v)` is the interval of `T(v)`.
/// The super root always sits at preorder position 0.
#[derive(Debug, Clone)]
pub struct DfsTree {
    n: usize,
    parent: Vec<VertexId>,
    depth: Vec<usize>,
    child_start: Vec<usize>,
    child_list: Vec<VertexId>,
    order: Vec<VertexId>,
    first: Vec<usize>,
    last: Vec<usize>,
    jumps: OnceLock<LevelAncestor>,
}

impl PartialEq for DfsTree {
    fn eq(&self, other: &Self) -> bool {
        self.parent == other.parent
    }
}

impl Eq for DfsTree {}

impl DfsTree {
    /// Builds a tree from per-vertex parents; `None` attaches a vertex to the
    /// super root.
    pub fn from_parents(parents: &[Option<VertexId>]) -> Result<Self> {
        let n = parents.len();
        let root = n;
        let mut parent = Vec::with_capacity(n + 1);
        for (v, p) in parents.iter().enumerate() {
            match *p {
                None => parent.push(root),
                Some(p) if p < n && p != v => parent.push(p),
                Some(_) => return Err(Error::NotATree(v)),
            }
        }
        parent.push(NIL);

        let mut child_start = vec![0usize; n + 2];
        for &p in &parent[..n] {
            child_start[p + 1] += 1;
        }
        for i in 0..=n {
            child_start[i + 1] += child_start[i];
        }
        let mut fill = child_start.clone();
        let mut child_list = vec![0; n];
        for (v, &p) in parent[..n].iter().enumerate() {
            child_list[fill[p]] = v;
            fill[p] += 1;
        }

        let mut order = Vec::with_capacity(n + 1);
        let mut first = vec![NIL; n + 1];
        let mut last = vec![0; n + 1];
        let mut depth = vec![0; n + 1];
        // (vertex, next child cursor)
        let mut stack: Vec<(VertexId, usize)> = vec![(root, child_start[root])];
        first[root] = 0;
        order.push(root);
        while let Some(top) = stack.last_mut() {
            let (v, cursor) = *top;
            if cursor < child_start[v + 1] {
                top.1 += 1;
                let c = child_list[cursor];
                first[c] = order.len();
                depth[c] = depth[v] + 1;
                order.push(c);
                stack.push((c, child_start[c]));
            } else {
                last[v] = order.len() - 1;
                stack.pop();
            }
        }
        if order.len() != n + 1 {
            let stranded = (0..n).find(|&v| first[v] == NIL).unwrap_or(0);
            return Err(Error::NotATree(stranded));
        }

        Ok(Self { n, parent, depth, child_start, child_list, order, first, last, jumps: OnceLock::new() })
    }

    /// Number of real vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn root(&self) -> VertexId {
        self.n
    }

    pub fn is_root(&self, v: VertexId) -> bool {
        v == self.n
    }

    /// Parent of `v`; `None` only for the super root.
    pub fn parent(&self, v: VertexId) -> Option<VertexId> {
        let p = self.parent[v];
        (p != NIL).then_some(p)
    }

    /// Parent of a real vertex, `None` when it hangs directly from the super root.
    pub fn real_parent(&self, v: VertexId) -> Option<VertexId> {
        self.parent(v).filter(|&p| p != self.n)
    }

    pub fn depth(&self, v: VertexId) -> usize {
        self.depth[v]
    }

    pub fn children(&self, v: VertexId) -> &[VertexId] {
        &self.child_list[self.child_start[v]..self.child_start[v + 1]]
    }

    /// Preorder over all nodes, super root first.
    pub fn order(&self) -> &[VertexId] {
        &self.order
    }

    pub fn first(&self, v: VertexId) -> usize {
        self.first[v]
    }

    pub fn last(&self, v: VertexId) -> usize {
        self.last[v]
    }

    pub fn subtree_size(&self, v: VertexId) -> usize {
        self.last[v] - self.first[v] + 1
    }

    /// Parents of the real vertices, `None` for children of the super root.
    pub fn parents(&self) -> Vec<Option<VertexId>> {
        (0..self.n).map(|v| self.real_parent(v)).collect()
    }

    /// FNV-1a over the parent array, each parent as a little-endian `i64`
    /// with `-1` for the super root.
    pub fn digest(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for v in 0..self.n {
            let p = self.real_parent(v).map_or(-1, |p| p as i64);
            for byte in p.to_le_bytes() {
                h ^= byte as u64;
                h = h.wrapping_mul(0x0000_0100_0000_01b3);
            }
        }
        h
    }

    /// True iff `a == b` or `a` is a proper ancestor of `b`.
    pub fn is_ancestor(&self, a: VertexId, b: VertexId) -> bool {
        self.first[a] <= self.first[b] && self.last[b] <= self.last[a]
    }

    /// The ancestor of `v` exactly `hops` edges above it.
    pub fn level_ancestor(&self, v: VertexId, hops: usize) -> Result<VertexId> {
        if hops > self.depth[v] {
            return Err(Error::AncestorOutOfRange { hops, depth: self.depth[v] });
        }
        Ok(self.jumps().ancestor(v, hops))
    }

    pub(crate) fn jumps(&self) -> &LevelAncestor {
        self.jumps.get_or_init(|| LevelAncestor::new(&self.parent, &self.order))
    }

    /// `path(u, v)` listed top-down, `u` first.
    pub fn path_vertices(&self, u: VertexId, v: VertexId) -> Result<Vec<VertexId>> {
        if !self.is_ancestor(u, v) {
            return Err(Error::InvalidPath { upper: u, lower: v });
        }
        let mut path = Vec::with_capacity(self.depth[v] - self.depth[u] + 1);
        let mut x = v;
        path.push(x);
        while x != u {
            x = self.parent[x];
            path.push(x);
        }
        path.reverse();
        Ok(path)
    }
}

/// Power-of-two ancestor tables.
#[derive(Debug, Clone)]
pub(crate) struct LevelAncestor {
    up: Vec<Vec<VertexId>>,
}

impl LevelAncestor {
    fn new(parent: &[VertexId], order: &[VertexId]) -> Self {
        let nodes = parent.len();
        let root = nodes - 1;
        let base: Vec<VertexId> = parent.iter().map(|&p| if p == NIL { root } else { p }).collect();
        let levels = (usize::BITS - nodes.leading_zeros()) as usize;
        let mut up = Vec::with_capacity(levels.max(1));
        up.push(base);
        for k in 1..levels {
            let prev = &up[k - 1];
            let mut next = vec![root; nodes];
            // preorder guarantees ancestors are filled before descendants
            for &v in order {
                next[v] = prev[prev[v]];
            }
            up.push(next);
        }
        Self { up }
    }

    pub(crate) fn ancestor(&self, mut v: VertexId, mut hops: usize) -> VertexId {
        let mut k = 0;
        while hops > 0 {
            if hops & 1 == 1 {
                v = self.up[k][v];
            }
            hops >>= 1;
            k += 1;
        }
        v
    }
}

/// Static DFS rooted at the super root: components entered in ascending order
/// of their smallest vertex, neighbors explored in ascending id.
pub fn static_dfs(g: &Graph) -> DfsTree {
    static_dfs_metered(g, &mut WorkCounter::new())
}

pub fn static_dfs_metered(g: &Graph, meter: &mut dyn Meter) -> DfsTree {
    let n = g.n();
    let adj = g.sorted_adjacency();
    meter.tick((n + 2 * g.m()) as u64);
    let mut parent: Vec<Option<VertexId>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut stack: Vec<(VertexId, usize)> = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        stack.push((s, 0));
        while let Some(top) = stack.last_mut() {
            let (v, i) = *top;
            if let Some(&w) = adj[v].get(i) {
                top.1 += 1;
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(v);
                    stack.push((w, 0));
                }
            } else {
                stack.pop();
            }
        }
    }
    meter.tick((n + 2 * g.m()) as u64);
    let tree = DfsTree::from_parents(&parent).expect("DFS parents always form a tree");
    meter.tick(n as u64 + 1);
    tree
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).unwrap()
    }

    #[test]
    fn triangle_tree() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let t = static_dfs(&g);
        assert_eq!(t.parents(), vec![None, Some(0), Some(1)]);
        assert!(t.is_ancestor(0, 2));
    }

    #[test]
    fn edgeless_tree() {
        let t = static_dfs(&Graph::new(3));
        for v in 0..3 {
            assert_eq!(t.parent(v), Some(3));
            assert_eq!(t.depth(v), 1);
        }
        assert_eq!(t.children(t.root()), &[0, 1, 2]);
    }

    #[test]
    fn chain_intervals() {
        let t = static_dfs(&chain(4));
        assert_eq!(t.parents(), vec![None, Some(0), Some(1), Some(2)]);
        assert_eq!((0..4).map(|v| t.first(v)).collect::<Vec<_>>(), vec![1, 2, 3, 4]);
        assert_eq!(t.first(t.root()), 0);
        assert_eq!(t.order()[0], t.root());
    }

    #[test]
    fn ancestor_examples() {
        let t = static_dfs(&chain(3));
        assert!(t.is_ancestor(0, 2));
        assert!(!t.is_ancestor(1, 0));
        for v in 0..3 {
            assert!(t.is_ancestor(v, v));
        }
    }

    #[test]
    fn level_ancestor_examples() {
        let t = static_dfs(&chain(8));
        assert_eq!(t.level_ancestor(5, 2).unwrap(), 3);
        assert_eq!(t.level_ancestor(5, 0).unwrap(), 5);
        assert_eq!(t.level_ancestor(5, 6).unwrap(), t.root());
        assert_eq!(t.level_ancestor(5, 7), Err(Error::AncestorOutOfRange { hops: 7, depth: 6 }));
    }

    #[test]
    fn path_examples() {
        let t = static_dfs(&chain(5));
        assert_eq!(t.path_vertices(1, 3).unwrap(), vec![1, 2, 3]);
        assert_eq!(t.path_vertices(2, 2).unwrap(), vec![2]);
        assert_eq!(t.path_vertices(3, 1), Err(Error::InvalidPath { upper: 3, lower: 1 }));
    }

    #[test]
    fn digest_tracks_parents() {
        let a = static_dfs(&chain(4));
        let b = DfsTree::from_parents(&[None, Some(0), Some(1), Some(2)]).unwrap();
        let c = DfsTree::from_parents(&[None, Some(0), Some(0), Some(2)]).unwrap();
        assert_eq!(a.digest(), b.digest());
        assert_ne!(a.digest(), c.digest());
        assert_eq!(DfsTree::from_parents(&[]).unwrap().digest(), 0xcbf2_9ce4_8422_2325);
    }

    #[test]
    fn from_parents_rejects_cycles() {
        assert!(matches!(DfsTree::from_parents(&[Some(1), Some(0)]), Err(Error::NotATree(_))));
        assert!(matches!(DfsTree::from_parents(&[Some(0)]), Err(Error::NotATree(0))));
        assert!(matches!(DfsTree::from_parents(&[Some(5)]), Err(Error::NotATree(0))));
    }
}
