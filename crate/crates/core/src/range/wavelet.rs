//! Level-wise wavelet tree over small non-negative integers.
//!
//! Level `ℓ` holds the sequence stably sorted by the top `ℓ` bits, so every
//! node is a contiguous segment. Each level keeps prefix counts of ones plus
//! explicit zero/one position lists, giving constant-time moves both down
//! (rank) and up (select) the tree.

use crate::meter::{Chunked, Meter};

#[derive(Debug, Clone, Default)]
pub struct WaveletTree {
    len: usize,
    bits: usize,
    /// Per level, `ones[ℓ][i]` = number of ones among the first `i` bits.
    ones: Vec<Vec<u32>>,
    zero_pos: Vec<Vec<u32>>,
    one_pos: Vec<Vec<u32>>,
}

/// Bits needed to store any value below `sigma`.
pub fn bits_for(sigma: usize) -> usize {
    if sigma <= 1 {
        0
    } else {
        (usize::BITS - (sigma - 1).leading_zeros()) as usize
    }
}

impl WaveletTree {
    /// Builds over `values`, each of which must be below `sigma`.
    pub fn build(values: &[u32], sigma: usize, meter: &mut dyn Meter) -> Self {
        let len = values.len();
        let bits = bits_for(sigma);
        debug_assert!(values.iter().all(|&v| (v as usize) < sigma.max(1)));
        let mut ones = Vec::with_capacity(bits);
        let mut zero_pos = Vec::with_capacity(bits);
        let mut one_pos = Vec::with_capacity(bits);
        let mut seq = values.to_vec();
        let mut next = Vec::with_capacity(len);
        let mut meter = Chunked::new(meter);
        for level in 0..bits {
            let shift = bits - 1 - level;
            let mut prefix = Vec::with_capacity(len + 1);
            let mut zp = Vec::new();
            let mut op = Vec::new();
            prefix.push(0u32);
            for (i, &v) in seq.iter().enumerate() {
                let bit = (v >> shift) & 1;
                prefix.push(prefix[i] + bit);
                meter.add(2);
                if bit == 1 {
                    op.push(i as u32);
                } else {
                    zp.push(i as u32);
                }
            }
            // stable split of each node: zeros, then ones
            next.clear();
            let mut start = 0;
            while start < len {
                let node = seq[start] >> (shift + 1);
                let mut end = start;
                while end < len && seq[end] >> (shift + 1) == node {
                    end += 1;
                }
                next.extend(seq[start..end].iter().filter(|&&v| (v >> shift) & 1 == 0));
                next.extend(seq[start..end].iter().filter(|&&v| (v >> shift) & 1 == 1));
                start = end;
            }
            std::mem::swap(&mut seq, &mut next);
            meter.add(1);
            ones.push(prefix);
            zero_pos.push(zp);
            one_pos.push(op);
        }
        Self { len, bits, ones, zero_pos, one_pos }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Number of levels.
    pub fn depth(&self) -> usize {
        self.bits
    }

    #[inline]
    fn ones_before(&self, level: usize, i: usize) -> usize {
        self.ones[level][i] as usize
    }

    #[inline]
    fn zeros_before(&self, level: usize, i: usize) -> usize {
        i - self.ones_before(level, i)
    }

    /// Value at position `i` of the original sequence.
    pub fn access(&self, mut i: usize) -> u32 {
        let (mut s, mut e) = (0, self.len);
        let mut value = 0u32;
        for level in 0..self.bits {
            let z = self.zeros_before(level, e) - self.zeros_before(level, s);
            let bit = self.ones_before(level, i + 1) - self.ones_before(level, i);
            value = (value << 1) | bit as u32;
            if bit == 0 {
                i = s + self.zeros_before(level, i) - self.zeros_before(level, s);
                e = s + z;
            } else {
                i = s + z + self.ones_before(level, i) - self.ones_before(level, s);
                s += z;
            }
        }
        value
    }

    /// Leftmost position in `[lo, hi)` whose value lies in `[a, b]`.
    /// `visits` counts the tree nodes entered.
    pub fn leftmost_in_range(&self, lo: usize, hi: usize, a: u32, b: u32, visits: &mut u64) -> Option<usize> {
        if lo >= hi || a > b || hi > self.len {
            return None;
        }
        let span = 1u64 << self.bits;
        if a as u64 >= span {
            return None;
        }
        let b = (b as u64).min(span - 1) as u32;
        let node = Node { level: 0, s: 0, e: self.len, vlo: 0 };
        self.descend(node, lo, hi, a, b, visits)
    }

    fn descend(&self, node: Node, lo: usize, hi: usize, a: u32, b: u32, visits: &mut u64) -> Option<usize> {
        *visits += 1;
        let width = 1u64 << (self.bits - node.level);
        let vhi = node.vlo as u64 + width - 1;
        if a as u64 <= node.vlo as u64 && vhi <= b as u64 {
            return Some(lo);
        }
        let level = node.level;
        let (s, e) = (node.s, node.e);
        let z = self.zeros_before(level, e) - self.zeros_before(level, s);
        let half = (width / 2) as u32;
        let mut best: Option<usize> = None;

        let left = Node { level: level + 1, s, e: s + z, vlo: node.vlo };
        let (llo, lhi) = (
            s + self.zeros_before(level, lo) - self.zeros_before(level, s),
            s + self.zeros_before(level, hi) - self.zeros_before(level, s),
        );
        if llo < lhi && a < node.vlo + half {
            if let Some(p) = self.descend(left, llo, lhi, a, b, visits) {
                let k = self.zeros_before(level, s) + (p - s);
                best = Some(self.zero_pos[level][k] as usize);
            }
        }

        let right = Node { level: level + 1, s: s + z, e, vlo: node.vlo + half };
        let (rlo, rhi) = (
            s + z + self.ones_before(level, lo) - self.ones_before(level, s),
            s + z + self.ones_before(level, hi) - self.ones_before(level, s),
        );
        if rlo < rhi && b >= node.vlo + half {
            if let Some(p) = self.descend(right, rlo, rhi, a, b, visits) {
                let k = self.ones_before(level, s) + (p - (s + z));
                let up = self.one_pos[level][k] as usize;
                best = Some(best.map_or(up, |q| q.min(up)));
            }
        }
        best
    }
}

#[derive(Debug, Clone, Copy)]
struct Node {
    level: usize,
    s: usize,
    e: usize,
    vlo: u32,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::meter::WorkCounter;
    use proptest::prelude::*;

    fn brute_leftmost(values: &[u32], lo: usize, hi: usize, a: u32, b: u32) -> Option<usize> {
        (lo..hi.min(values.len())).find(|&i| a <= values[i] && values[i] <= b)
    }

    #[test]
    fn small_sequence() {
        let values = [5u32, 1, 7, 3, 3, 0, 6];
        let w = WaveletTree::build(&values, 8, &mut WorkCounter::new());
        assert_eq!(w.depth(), 3);
        for (i, &v) in values.iter().enumerate() {
            assert_eq!(w.access(i), v);
        }
        let mut visits = 0;
        assert_eq!(w.leftmost_in_range(0, 7, 2, 4, &mut visits), Some(3));
        assert_eq!(w.leftmost_in_range(4, 7, 6, 7, &mut visits), Some(6));
        assert_eq!(w.leftmost_in_range(0, 2, 2, 4, &mut visits), None);
    }

    #[test]
    fn single_symbol_alphabet() {
        let w = WaveletTree::build(&[0, 0, 0], 1, &mut WorkCounter::new());
        assert_eq!(w.depth(), 0);
        assert_eq!(w.access(1), 0);
        let mut visits = 0;
        assert_eq!(w.leftmost_in_range(1, 3, 0, 0, &mut visits), Some(1));
    }

    proptest! {
        #[test]
        fn matches_linear_scan(
            values in proptest::collection::vec(0u32..100, 0..200),
            lo in 0usize..200, len in 0usize..200, a in 0u32..110, width in 0u32..110,
        ) {
            let w = WaveletTree::build(&values, 100, &mut WorkCounter::new());
            let hi = (lo + len).min(values.len());
            let b = a.saturating_add(width);
            let mut visits = 0;
            prop_assert_eq!(w.leftmost_in_range(lo, hi, a, b, &mut visits), brute_leftmost(&values, lo, hi, a, b));
            prop_assert!(visits <= 4 * w.depth() as u64);
            for (i, &v) in values.iter().enumerate() {
                prop_assert_eq!(w.access(i), v);
            }
        }
    }
}
