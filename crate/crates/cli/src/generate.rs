//! Seeded input generators.

use incdfs::{Graph, Update};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::CliError;

/// Path `0..n` and one update joining its ends.
pub fn chain(n: usize) -> Result<(Graph, Vec<Update>), CliError> {
    if n < 2 {
        return Err(CliError::Params(format!("chain needs n >= 2, got {n}")));
    }
    let g = Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("path edges are valid");
    Ok((g, vec![Update::Edge(0, n - 1)]))
}

/// Path `0..n/2` whose end `r'` carries leaves `n/2..n`, each leaf with a
/// back edge to `0`; the update joins `0` and `r'`.
pub fn broom(n: usize) -> Result<(Graph, Vec<Update>), CliError> {
    if n < 4 {
        return Err(CliError::Params(format!("broom needs n >= 4, got {n}")));
    }
    let half = n / 2;
    let end = half - 1;
    let mut edges: Vec<_> = (1..half).map(|v| (v - 1, v)).collect();
    for leaf in half..n {
        edges.push((end, leaf));
        edges.push((0, leaf));
    }
    let g = Graph::from_edges(n, edges).expect("broom edges are valid");
    Ok((g, vec![Update::Edge(0, end)]))
}

/// G(n, p) followed by `⌈√n⌉` random insertions, about one in ten a vertex.
pub fn random(n: usize, p: f64, seed: u64) -> Result<(Graph, Vec<Update>), CliError> {
    if n < 2 {
        return Err(CliError::Params(format!("random needs n >= 2, got {n}")));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(CliError::Params(format!("density {p} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).expect("distinct in-range endpoints");
            }
        }
    }
    let count = (n as f64).sqrt().ceil() as usize;
    let mut size = n;
    let mut updates = Vec::with_capacity(count);
    for _ in 0..count {
        if rng.gen_bool(0.1) {
            updates.push(Update::Vertex);
            size += 1;
        } else {
            let a = rng.gen_range(0..size);
            let b = (a + rng.gen_range(1..size)) % size;
            updates.push(Update::Edge(a, b));
        }
    }
    Ok((g, updates))
}
