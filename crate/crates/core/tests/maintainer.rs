mod common;

use common::{gnp, rng};
use incdfs::{validate_dfs_tree, EngineChoice, EngineKind, Graph, Maintainer, Update};
use rand::Rng;

fn random_update(r: &mut impl Rng, n: usize) -> Update {
    if n < 2 || r.gen_bool(0.1) {
        Update::Vertex
    } else {
        let a = r.gen_range(0..n);
        Update::Edge(a, (a + r.gen_range(1..n)) % n)
    }
}

#[test]
fn every_engine_reports_valid_trees() {
    for kind in EngineKind::ALL {
        let mut r = rng(kind as u64 + 10);
        let mut mt = Maintainer::with_engine(gnp(&mut r, 40, 0.05), EngineChoice::Fixed(kind));
        for step in 0..150 {
            let update = random_update(&mut r, mt.graph().n());
            let stats = mt.insert(update).unwrap();
            assert!(validate_dfs_tree(mt.graph(), mt.tree()), "{kind} step {step}");
            assert!(stats.buffer <= 2 * stats.phase_len.max(1));
        }
        assert_eq!(mt.engine_kind(), kind);
        assert_eq!(mt.counters().forced_finishes, 0, "{kind}");
        assert!(mt.counters().generations > 0);
    }
}

#[test]
fn engine_choice_does_not_change_trees() {
    let mut r = rng(99);
    let g = gnp(&mut r, 30, 0.1);
    let updates: Vec<_> = (0..80).map(|i| random_update(&mut r, 30 + i / 20)).collect();
    let mut reports = Vec::new();
    for kind in EngineKind::ALL {
        let mut mt = Maintainer::with_engine(g.clone(), EngineChoice::Fixed(kind));
        let mut digests = Vec::new();
        for &u in &updates {
            if mt.insert(u).is_ok() {
                digests.push(mt.tree().digest());
            }
        }
        reports.push(digests);
    }
    assert!(reports.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn grows_from_empty() {
    let mut mt = Maintainer::new(Graph::new(0));
    for _ in 0..5 {
        mt.insert(Update::Vertex).unwrap();
    }
    for v in 1..5 {
        mt.insert(Update::Edge(v - 1, v)).unwrap();
    }
    assert!(validate_dfs_tree(mt.graph(), mt.tree()));
    assert_eq!(mt.tree().parents().iter().filter(|p| p.is_none()).count(), 1);
}

#[test]
fn invalid_update_leaves_state() {
    let mut mt = Maintainer::new(Graph::from_edges(3, [(0, 1)]).unwrap());
    let before = mt.tree().digest();
    assert!(mt.insert(Update::Edge(1, 1)).is_err());
    assert!(mt.insert(Update::Edge(0, 7)).is_err());
    assert_eq!(mt.tree().digest(), before);
    assert_eq!(mt.counters().updates, 0);
}
