mod common;

use common::{forest_graph, random_forest, rng};
use incdfs::{ceil_log2, compute_partition, static_dfs, CascadeFamily, DfsTree};
use proptest::prelude::*;

fn component_sizes(t: &DfsTree, marked: &[bool]) -> Vec<usize> {
    let n = t.n();
    let mut label = vec![usize::MAX; n];
    let mut sizes = Vec::new();
    for &v in t.order() {
        if v >= n || marked[v] {
            continue;
        }
        match t.real_parent(v) {
            Some(p) if !marked[p] => {
                label[v] = label[p];
                sizes[label[v]] += 1;
            }
            _ => {
                label[v] = sizes.len();
                sizes.push(1);
            }
        }
    }
    sizes
}

proptest! {
    #[test]
    fn partition_bounds(seed in 0u64..10_000, n in 2usize..300, k in 2usize..40, bias in 0.0f64..1.0) {
        prop_assume!(k <= n);
        let parents = random_forest(&mut rng(seed), n, bias);
        let t = DfsTree::from_parents(&parents).unwrap();
        let p = compute_partition(&t, k).unwrap();
        let marked: Vec<bool> = (0..n).map(|v| p.is_marked(v)).collect();
        prop_assert!(p.marked.len() <= n / (k + 1));
        prop_assert!(component_sizes(&t, &marked).iter().all(|&s| s <= k));
    }

    #[test]
    fn cascade_matches_partition_point(
        mut arrays in prop::collection::vec(prop::collection::vec(0u32..500, 0..40), 1..12),
        probes in prop::collection::vec(0u32..520, 1..20),
    ) {
        for a in &mut arrays {
            a.sort_unstable();
        }
        let family = CascadeFamily::build(arrays.clone()).unwrap();
        let total: usize = arrays.iter().map(Vec::len).sum();
        for x in probes {
            let (positions, comparisons) = family.successor_positions(x);
            for (a, pos) in arrays.iter().zip(&positions) {
                let want = a.partition_point(|&y| y < x);
                prop_assert_eq!(*pos, (want < a.len()).then_some(want));
            }
            let bound = 4 * (arrays.len() + ceil_log2(total + 2)) as u64;
            prop_assert!(comparisons <= bound);
        }
    }
}

#[test]
fn forest_tree_round_trip() {
    let parents = random_forest(&mut rng(3), 200, 0.7);
    let t = DfsTree::from_parents(&parents).unwrap();
    assert_eq!(t.parents(), parents);
    let g = forest_graph(&parents);
    assert_eq!(static_dfs(&g).parents().iter().filter(|p| p.is_none()).count(), parents.iter().filter(|p| p.is_none()).count());
}

#[test]
fn unsorted_cascade_rejected() {
    assert!(CascadeFamily::build(vec![vec![3u32, 1]]).is_err());
}
