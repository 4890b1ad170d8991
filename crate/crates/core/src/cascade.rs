//! Fractional cascading over a chain of sorted arrays.
//!
//! The augmented list of array `i` is the array merged with every second
//! element of the augmented list of array `i + 1`. One binary search in the
//! first augmented list, then a bridge hop and at most one step back per
//! array, finds the successor of a key in every array.

use crate::error::{Error, Result};
use crate::meter::{Chunked, Meter};

/// One slot of an augmented list.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AugmentedEntry<T> {
    pub value: T,
    /// Index of the leftmost element of the original array that is `≥ value`.
    pub own: usize,
    /// Index of the leftmost element of the next augmented list that is `≥ value`.
    pub bridge: usize,
}

#[derive(Debug, Clone)]
pub struct CascadeFamily<T> {
    arrays: Vec<Vec<T>>,
    augmented: Vec<Vec<AugmentedEntry<T>>>,
}

impl<T: Ord + Copy> CascadeFamily<T> {
    pub fn build(arrays: Vec<Vec<T>>) -> Result<Self> {
        let mut work = crate::meter::WorkCounter::new();
        Self::build_metered(arrays, &mut work)
    }

    pub fn build_metered(arrays: Vec<Vec<T>>, meter: &mut dyn Meter) -> Result<Self> {
        for (index, a) in arrays.iter().enumerate() {
            if a.windows(2).any(|w| w[0] > w[1]) {
                return Err(Error::Unsorted { index });
            }
        }
        let k = arrays.len();
        let mut meter = Chunked::new(meter);
        let mut augmented: Vec<Vec<AugmentedEntry<T>>> = vec![Vec::new(); k];
        for i in (0..k).rev() {
            let own = &arrays[i];
            let promoted: Vec<T> = match augmented.get(i + 1) {
                Some(next) => next.iter().skip(1).step_by(2).map(|e| e.value).collect(),
                None => Vec::new(),
            };
            let mut values = Vec::with_capacity(own.len() + promoted.len());
            let (mut a, mut b) = (0, 0);
            while a < own.len() || b < promoted.len() {
                meter.add(1);
                if b == promoted.len() || (a < own.len() && own[a] <= promoted[b]) {
                    values.push(own[a]);
                    a += 1;
                } else {
                    values.push(promoted[b]);
                    b += 1;
                }
            }

            let next_values: &[AugmentedEntry<T>] = augmented.get(i + 1).map(Vec::as_slice).unwrap_or(&[]);
            let mut list = Vec::with_capacity(values.len());
            let (mut o, mut q) = (0, 0);
            for value in values {
                let (o0, q0) = (o, q);
                while o < own.len() && own[o] < value {
                    o += 1;
                }
                while q < next_values.len() && next_values[q].value < value {
                    q += 1;
                }
                list.push(AugmentedEntry { value, own: o, bridge: q });
                meter.add((1 + o - o0 + q - q0) as u64);
            }
            meter.add(1);
            augmented[i] = list;
        }
        Ok(Self { arrays, augmented })
    }

    pub fn len(&self) -> usize {
        self.arrays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrays.is_empty()
    }

    pub fn arrays(&self) -> &[Vec<T>] {
        &self.arrays
    }

    pub fn augmented(&self) -> &[Vec<AugmentedEntry<T>>] {
        &self.augmented
    }

    /// Total number of original elements.
    pub fn total_len(&self) -> usize {
        self.arrays.iter().map(Vec::len).sum()
    }

    pub fn augmented_len(&self) -> usize {
        self.augmented.iter().map(Vec::len).sum()
    }

    /// Writes, per array, the index of its leftmost element `≥ x` (or `None`)
    /// into `out` and returns the number of key comparisons made.
    pub fn successor_positions_into(&self, x: T, out: &mut Vec<Option<usize>>) -> u64 {
        out.clear();
        let Some(head) = self.augmented.first() else {
            return 0;
        };
        let mut comparisons = 0u64;
        // leftmost position in the first list with value >= x
        let (mut lo, mut hi) = (0, head.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            comparisons += 1;
            if head[mid].value < x {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        let mut pos = lo;
        out.push(self.own_at(0, pos));
        for i in 1..self.augmented.len() {
            let prev = &self.augmented[i - 1];
            let list = &self.augmented[i];
            let mut q = prev.get(pos).map_or(list.len(), |e| e.bridge);
            while q > 0 {
                comparisons += 1;
                if list[q - 1].value >= x {
                    q -= 1;
                } else {
                    break;
                }
            }
            pos = q;
            out.push(self.own_at(i, pos));
        }
        comparisons
    }

    fn own_at(&self, i: usize, pos: usize) -> Option<usize> {
        let own = self.augmented[i].get(pos).map_or(self.arrays[i].len(), |e| e.own);
        (own < self.arrays[i].len()).then_some(own)
    }

    pub fn successor_positions(&self, x: T) -> (Vec<Option<usize>>, u64) {
        let mut out = Vec::with_capacity(self.len());
        let comparisons = self.successor_positions_into(x, &mut out);
        (out, comparisons)
    }

    /// Smallest element `≥ x` of every array.
    pub fn query_all_successors(&self, x: T) -> Vec<Option<T>> {
        let (positions, _) = self.successor_positions(x);
        positions
            .into_iter()
            .enumerate()
            .map(|(i, p)| p.map(|j| self.arrays[i][j]))
            .collect()
    }
}
