#![allow(dead_code)]

use incdfs::{Graph, UpdateBatch, VertexId};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// G(n, p) with edges drawn in lexicographic order.
pub fn gnp(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

pub fn chain(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).unwrap()
}

/// Random batch: up to `max_vertices` new vertices and `edges` new edges.
pub fn random_batch(rng: &mut ChaCha8Rng, n: usize, max_vertices: usize, edges: usize) -> UpdateBatch {
    let new_vertices = rng.gen_range(0..=max_vertices);
    let total = n + new_vertices;
    let mut new_edges = Vec::with_capacity(edges);
    if total >= 2 {
        while new_edges.len() < edges {
            let a = rng.gen_range(0..total);
            let b = rng.gen_range(0..total);
            if a != b {
                new_edges.push((a, b));
            }
        }
    }
    UpdateBatch { new_vertices, new_edges }
}

/// Random rooted forest given as parent pointers; `depth_bias` near 1 makes
/// long paths likely.
pub fn random_forest(rng: &mut ChaCha8Rng, n: usize, depth_bias: f64) -> Vec<Option<VertexId>> {
    let mut parents = vec![None; n];
    for (v, slot) in parents.iter_mut().enumerate().skip(1) {
        if rng.gen_bool(0.02) {
            continue;
        }
        *slot = Some(if rng.gen_bool(depth_bias) { v - 1 - rng.gen_range(0..v.min(3)) } else { rng.gen_range(0..v) });
    }
    parents
}

/// Graph whose edges are exactly the forest's tree edges.
pub fn forest_graph(parents: &[Option<VertexId>]) -> Graph {
    Graph::from_edges(parents.len(), parents.iter().enumerate().filter_map(|(v, p)| p.map(|p| (p, v)))).unwrap()
}

/// Broom: path `0..n/2`, leaves `n/2..n` under the path end, each leaf also
/// adjacent to `0`.
pub fn broom(n: usize) -> (Graph, VertexId) {
    let half = n / 2;
    let end = half - 1;
    let mut edges: Vec<_> = (1..half).map(|v| (v - 1, v)).collect();
    for leaf in half..n {
        edges.push((end, leaf));
        edges.push((0, leaf));
    }
    (Graph::from_edges(n, edges).unwrap(), end)
}

/// Broom on `1..n` with vertex 0 isolated; inserting `(0, end)` enters the
/// broom from its bottom.
pub fn rooted_broom(n: usize) -> (Graph, VertexId) {
    let (inner, end) = broom(n - 1);
    let g = Graph::from_edges(n, inner.edges().map(|(a, b)| (a + 1, b + 1))).unwrap();
    (g, end + 1)
}
