//! Marked-vertex tree partition.
//!
//! Removing the marked set splits the tree into pieces of at most `k`
//! vertices. One bottom-up pass: a vertex accumulates the unmarked weight of
//! its children plus itself, and is marked once that exceeds `k`. Each mark
//! consumes more than `k` vertices, so `|M| ≤ ⌊n/(k+1)⌋`.

use crate::error::{Error, Result};
use crate::graph::VertexId;
use crate::meter::{Meter, WorkCounter};
use crate::tree::DfsTree;

/// Component label of a marked vertex.
pub const REMOVED: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub k: usize,
    pub marked: Vec<VertexId>,
    is_marked: Vec<bool>,
    /// Per real vertex: component label, or [`REMOVED`].
    pub comp_of: Vec<usize>,
    pub components: usize,
}

impl Partition {
    pub fn is_marked(&self, v: VertexId) -> bool {
        self.is_marked[v]
    }
}

/// Partition of the real vertices of `t` (the super root is not part of the
/// forest being split). Requires `2 ≤ k ≤ n`.
pub fn compute_partition(t: &DfsTree, k: usize) -> Result<Partition> {
    let n = t.n();
    if k < 2 || k > n {
        return Err(Error::InvalidParameter(format!("partition size {k} outside [2, {n}]")));
    }
    Ok(partition_metered(t, k, &mut WorkCounter::new()))
}

pub(crate) fn partition_metered(t: &DfsTree, k: usize, meter: &mut dyn Meter) -> Partition {
    let n = t.n();
    let mut weight = vec![0usize; n + 1];
    let mut is_marked = vec![false; n];
    // reverse preorder visits children before parents
    for &v in t.order().iter().rev() {
        if t.is_root(v) {
            continue;
        }
        weight[v] += 1;
        if weight[v] > k {
            is_marked[v] = true;
            weight[v] = 0;
        }
        let p = t.parent(v).expect("real vertex has a parent");
        weight[p] += weight[v];
    }
    meter.tick(n as u64);

    // label components top-down: an unmarked vertex joins its parent's
    // component unless the parent is marked or the super root
    let mut comp_of = vec![REMOVED; n];
    let mut components = 0;
    for &v in t.order() {
        if t.is_root(v) || is_marked[v] {
            continue;
        }
        comp_of[v] = match t.real_parent(v) {
            Some(p) if !is_marked[p] => comp_of[p],
            _ => {
                components += 1;
                components - 1
            }
        };
    }
    meter.tick(n as u64);

    let marked = t.order().iter().copied().filter(|&v| !t.is_root(v) && is_marked[v]).collect();
    Partition { k, marked, is_marked, comp_of, components }
}
