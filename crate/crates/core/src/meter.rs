//! Work accounting.
//!
//! Complexity claims are checked against instrumented work units rather than
//! wall-clock time. Every structure build and every rebuild reports its work
//! through a [`Meter`]; the maintainer swaps in a throttled meter to spread a
//! background build over many updates.

/// Sink for elementary work units.
pub trait Meter {
    fn tick(&mut self, units: u64);
}

/// Plain accumulating meter.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct WorkCounter {
    pub units: u64,
}

impl WorkCounter {
    pub fn new() -> Self {
        Self::default()
    }
}

impl Meter for WorkCounter {
    #[inline]
    fn tick(&mut self, units: u64) {
        self.units += units;
    }
}

/// Buffers small ticks and forwards them in chunks.
pub(crate) struct Chunked<'a> {
    meter: &'a mut dyn Meter,
    pending: u64,
}

impl<'a> Chunked<'a> {
    const CHUNK: u64 = 16;

    pub(crate) fn new(meter: &'a mut dyn Meter) -> Self {
        Self { meter, pending: 0 }
    }

    #[inline]
    pub(crate) fn add(&mut self, units: u64) {
        self.pending += units;
        if self.pending >= Self::CHUNK {
            self.meter.tick(self.pending);
            self.pending = 0;
        }
    }
}

impl Drop for Chunked<'_> {
    fn drop(&mut self) {
        if self.pending > 0 && !std::thread::panicking() {
            self.meter.tick(self.pending);
        }
    }
}

/// `⌈log₂ n⌉`, clamped to at least 1.
pub fn ceil_log2(n: usize) -> usize {
    if n <= 2 {
        1
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ceil_log2_values() {
        let expected = [(0, 1), (1, 1), (2, 1), (3, 2), (4, 2), (5, 3), (8, 3), (9, 4), (16384, 14), (16385, 15)];
        for (n, l) in expected {
            assert_eq!(ceil_log2(n), l, "n = {n}");
        }
        for n in 2..5000usize {
            let naive = (n as f64).log2().ceil() as usize;
            assert_eq!(ceil_log2(n), naive.max(1));
        }
    }
}
