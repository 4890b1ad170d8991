//! Brute-force references: an `O(m)` query scan, a DFS-tree validator and a
//! plain recursive batch-insert driven by the scan. Deliberately slow and
//! written without reusing the engine or rebuilder code paths.

use std::fmt;

use crate::engine::{better, QueryAnswer};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexId};
use crate::rebuild::UpdateBatch;
use crate::tree::DfsTree;

/// `Q(T(w), u, v)` by scanning all edges.
///
/// Returns the edge whose path endpoint is highest; among those, the one whose
/// subtree endpoint comes first in preorder. The scan only needs `T(w)` to be
/// disjoint from the path, which is weaker than hanging off it.
pub fn brute_query(g: &Graph, t: &DfsTree, w: VertexId, u: VertexId, v: VertexId) -> Result<QueryAnswer> {
    let n = t.n();
    if g.n() != n {
        return Err(Error::InvalidQuery("graph and tree sizes differ".into()));
    }
    if w >= n || u >= n || v >= n {
        return Err(Error::InvalidQuery(format!("vertices ({w}, {u}, {v}) must be real")));
    }
    if !t.is_ancestor(u, v) {
        return Err(Error::InvalidQuery(format!("{u} is not an ancestor of {v}")));
    }
    if t.is_ancestor(w, v) {
        return Err(Error::InvalidQuery(format!("T({w}) meets path({u}, {v})")));
    }
    Ok(scan_query(g, t, w, u, v))
}

pub(crate) fn scan_query(g: &Graph, t: &DfsTree, w: VertexId, u: VertexId, v: VertexId) -> QueryAnswer {
    let on_path = |x: VertexId| t.is_ancestor(u, x) && t.is_ancestor(x, v);
    let mut best = None;
    for (a, b) in g.edges() {
        for (hi, lo) in [(a, b), (b, a)] {
            let cand = Edge::new(hi, lo);
            if on_path(hi) && t.is_ancestor(w, lo) && better(t, cand, best) {
                best = Some(cand);
            }
        }
    }
    best
}

/// Why a parent array fails to be a DFS tree of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    SizeMismatch { tree: usize, graph: usize },
    /// Parent out of range or equal to the vertex itself.
    BadParent { vertex: VertexId, parent: VertexId },
    /// The tree edge to the parent is not an edge of the graph.
    MissingEdge { vertex: VertexId, parent: VertexId },
    /// Vertex lies on a parent cycle and never reaches the super root.
    Unrooted { vertex: VertexId },
    /// A graph edge joining two vertices where neither is an ancestor of the other.
    CrossEdge { a: VertexId, b: VertexId },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::SizeMismatch { tree, graph } => {
                write!(f, "tree has {tree} vertices but graph has {graph}")
            }
            Violation::BadParent { vertex, parent } => write!(f, "vertex {vertex} has invalid parent {parent}"),
            Violation::MissingEdge { vertex, parent } => {
                write!(f, "tree edge ({parent}, {vertex}) is not an edge of the graph")
            }
            Violation::Unrooted { vertex } => write!(f, "vertex {vertex} does not reach the super root"),
            Violation::CrossEdge { a, b } => write!(f, "edge ({a}, {b}) joins unrelated vertices"),
        }
    }
}

/// Checks a parent array (`None` = child of the super root) against `g`.
pub fn validate_parents(g: &Graph, parents: &[Option<VertexId>]) -> std::result::Result<(), Violation> {
    let n = g.n();
    if parents.len() != n {
        return Err(Violation::SizeMismatch { tree: parents.len(), graph: n });
    }
    let root = n;
    let mut kids: Vec<Vec<VertexId>> = vec![Vec::new(); n + 1];
    for (v, p) in parents.iter().enumerate() {
        match *p {
            None => kids[root].push(v),
            Some(p) if p >= n || p == v => return Err(Violation::BadParent { vertex: v, parent: p }),
            Some(p) => {
                if !g.neighbors(v).contains(&p) {
                    return Err(Violation::MissingEdge { vertex: v, parent: p });
                }
                kids[p].push(v);
            }
        }
    }

    // entry/exit times from the super root
    let mut tin = vec![usize::MAX; n + 1];
    let mut tout = vec![0; n + 1];
    let mut clock = 0;
    let mut stack = vec![(root, 0usize)];
    tin[root] = clock;
    while let Some(&mut (v, ref mut i)) = stack.last_mut() {
        if let Some(&c) = kids[v].get(*i) {
            *i += 1;
            clock += 1;
            tin[c] = clock;
            stack.push((c, 0));
        } else {
            tout[v] = clock;
            stack.pop();
        }
    }
    if let Some(v) = (0..n).find(|&v| tin[v] == usize::MAX) {
        return Err(Violation::Unrooted { vertex: v });
    }

    let related = |a: VertexId, b: VertexId| tin[a] <= tin[b] && tout[b] <= tout[a];
    for (a, b) in g.edges() {
        if !related(a, b) && !related(b, a) {
            return Err(Violation::CrossEdge { a, b });
        }
    }
    Ok(())
}

/// True iff `t` is a DFS tree of `g` rooted at the super root.
pub fn validate_dfs_tree(g: &Graph, t: &DfsTree) -> bool {
    t.n() == g.n() && validate_parents(g, &t.parents()).is_ok()
}

/// Batch insertion executed literally: recursive traversal, every hanging
/// subtree answered by [`brute_query`].
///
/// Uses the same tie-breaks as the rebuilder: reduced adjacency lists yield
/// query-derived entries before inserted edges, children are scanned in
/// ascending id order, and the super root enters old component roots before
/// inserted vertices.
pub fn reference_batch_insert(g: &Graph, t: &DfsTree, batch: &UpdateBatch) -> Result<DfsTree> {
    let n = g.n();
    let total = n + batch.new_vertices;
    batch.validate(n)?;

    let mut seeded: Vec<Vec<VertexId>> = vec![Vec::new(); total];
    for &(a, b) in &batch.new_edges {
        seeded[a].push(b);
        seeded[b].push(a);
    }

    struct Run<'a> {
        g: &'a Graph,
        t: &'a DfsTree,
        n: usize,
        visited: Vec<bool>,
        found: Vec<Vec<VertexId>>,
        seeded: Vec<Vec<VertexId>>,
        par_star: Vec<Option<VertexId>>,
    }

    impl Run<'_> {
        fn old_parent(&self, v: VertexId) -> Option<VertexId> {
            if v < self.n {
                self.t.real_parent(v)
            } else {
                None
            }
        }

        fn dfs(&mut self, v: VertexId) {
            let mut u = v;
            while let Some(p) = self.old_parent(u) {
                if self.visited[p] {
                    break;
                }
                u = p;
            }
            let mut path = vec![v];
            while *path.last().unwrap() != u {
                let x = self.old_parent(*path.last().unwrap()).unwrap();
                path.push(x);
            }
            path.reverse();
            for &x in &path {
                self.visited[x] = true;
            }
            for pair in path.windows(2) {
                self.par_star[pair[0]] = Some(pair[1]);
            }
            for (i, &wi) in path.iter().enumerate() {
                if wi >= self.n {
                    continue;
                }
                let next = path.get(i + 1).copied();
                for &x in self.t.children(wi) {
                    if Some(x) == next || self.visited[x] {
                        continue;
                    }
                    let ans = brute_query(self.g, self.t, x, u, v).expect("hanging subtree query is well-formed");
                    if let Some(e) = ans {
                        self.found[e.hi].push(e.lo);
                    }
                }
            }
            for &wi in &path {
                let mut entries = self.found[wi].clone();
                entries.extend_from_slice(&self.seeded[wi]);
                for x in entries {
                    if !self.visited[x] {
                        self.par_star[x] = Some(wi);
                        self.dfs(x);
                    }
                }
            }
        }
    }

    let mut run = Run {
        g,
        t,
        n,
        visited: vec![false; total],
        found: vec![Vec::new(); total],
        seeded,
        par_star: vec![None; total],
    };
    let roots: Vec<VertexId> = t.children(t.root()).iter().copied().chain(n..total).collect();
    for x in roots {
        if !run.visited[x] {
            run.par_star[x] = None;
            run.dfs(x);
        }
    }
    DfsTree::from_parents(&run.par_star)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::static_dfs;

    fn chain(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).unwrap()
    }

    #[test]
    fn chain_top_query() {
        let g = chain(6);
        let t = static_dfs(&g);
        assert_eq!(brute_query(&g, &t, 1, 0, 0).unwrap(), Some(Edge::new(0, 1)));
    }

    #[test]
    fn triangle_query() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let t = static_dfs(&g);
        assert_eq!(brute_query(&g, &t, 2, 0, 1).unwrap(), Some(Edge::new(0, 2)));
    }

    #[test]
    fn chain_null_query() {
        let g = chain(5);
        let t = static_dfs(&g);
        assert_eq!(brute_query(&g, &t, 3, 0, 1).unwrap(), None);
        assert_eq!(brute_query(&g, &t, 3, 0, 2).unwrap(), Some(Edge::new(2, 3)));
    }

    #[test]
    fn rejects_subtree_meeting_path() {
        let g = chain(5);
        let t = static_dfs(&g);
        assert!(matches!(brute_query(&g, &t, 3, 0, 4), Err(Error::InvalidQuery(_))));
        assert!(matches!(brute_query(&g, &t, 3, 2, 0), Err(Error::InvalidQuery(_))));
        assert!(matches!(brute_query(&g, &t, 5, 0, 1), Err(Error::InvalidQuery(_))));
    }

    #[test]
    fn ties_prefer_earliest_subtree_endpoint() {
        // 0 is adjacent to both 2 and 3 inside T(2) = {2, 3}
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)]).unwrap();
        let t = static_dfs(&g);
        assert_eq!(t.parents(), vec![None, Some(0), Some(1), Some(2)]);
        assert_eq!(brute_query(&g, &t, 2, 0, 1).unwrap(), Some(Edge::new(0, 2)));
    }

    #[test]
    fn validator_examples() {
        let tri = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(validate_dfs_tree(&tri, &static_dfs(&tri)));
        assert_eq!(validate_parents(&tri, &[None, Some(0), None]), Err(Violation::CrossEdge { a: 0, b: 2 }));

        let star = Graph::from_edges(5, (1..5).map(|v| (0, v))).unwrap();
        assert_eq!(validate_parents(&star, &[None, Some(0), Some(0), Some(0), Some(0)]), Ok(()));
        assert_eq!(validate_parents(&star, &[None, Some(2), Some(0), Some(0), Some(0)]), Err(Violation::MissingEdge { vertex: 1, parent: 2 }));
        assert_eq!(validate_parents(&star, &[Some(1), Some(0), Some(0), Some(0), Some(0)]), Err(Violation::Unrooted { vertex: 0 }));
        assert_eq!(validate_parents(&star, &[None; 4]), Err(Violation::SizeMismatch { tree: 4, graph: 5 }));
    }

    #[test]
    fn reference_empty_batch_reproduces_tree() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (1, 5)]).unwrap();
        let t = static_dfs(&g);
        let out = reference_batch_insert(&g, &t, &UpdateBatch::default()).unwrap();
        assert_eq!(out, t);
    }

    #[test]
    fn reference_joins_components() {
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        let t = static_dfs(&g);
        let batch = UpdateBatch { new_vertices: 0, new_edges: vec![(1, 2)] };
        let out = reference_batch_insert(&g, &t, &batch).unwrap();
        assert_eq!(out.parents(), vec![None, Some(0), Some(1)]);
        let g2 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert!(validate_dfs_tree(&g2, &out));
    }
}
