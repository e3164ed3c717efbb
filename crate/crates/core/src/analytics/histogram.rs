use crate::scalar::Scalar;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Histogram {
    pub bin_edges: Vec<f64>,
    pub counts: Vec<u64>,
}

impl Histogram {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn bins(&self) -> usize {
        self.counts.len()
    }
}

/// Uniform bin layout over `[lo, hi]`: left-closed bins, the last one right-closed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinLayout<T> {
    pub lo: T,
    pub hi: T,
    pub bins: usize,
}

impl<T: Scalar> BinLayout<T> {
    /// Layout for `bins` bins over `[lo, hi]`. A zero-width range collapses to a
    /// single bin of unit width centred on the value.
    pub fn new(lo: T, hi: T, bins: usize) -> Self {
        let bins = bins.max(1);
        if !(hi > lo) {
            let half = T::lit(0.5);
            return BinLayout { lo: lo - half, hi: lo + half, bins: 1 };
        }
        BinLayout { lo, hi, bins }
    }

    pub fn is_degenerate_fallback(lo: T, hi: T) -> bool {
        !(hi > lo)
    }

    pub fn edge(&self, i: usize) -> T {
        if i == self.bins {
            return self.hi;
        }
        self.lo + (self.hi - self.lo) * T::from_count(i) / T::from_count(self.bins)
    }

    pub fn edges(&self) -> Vec<T> {
        (0..=self.bins).map(|i| self.edge(i)).collect()
    }

    /// Bin holding `x`, or `None` when outside `[lo, hi]` or not finite.
    pub fn locate(&self, x: T) -> Option<usize> {
        if !x.is_finite() || x < self.lo || x > self.hi {
            return None;
        }
        if x == self.hi {
            return Some(self.bins - 1);
        }
        let scaled = (x - self.lo) / (self.hi - self.lo) * T::from_count(self.bins);
        let mut i = scaled.floor().to_usize().unwrap_or(0).min(self.bins - 1);
        // snap to the edge comparison so boundary values follow the left-closed rule
        while i > 0 && x < self.edge(i) {
            i -= 1;
        }
        while i + 1 < self.bins && x >= self.edge(i + 1) {
            i += 1;
        }
        Some(i)
    }

    pub fn count<I: IntoIterator<Item = T>>(&self, values: I) -> Vec<u64> {
        let mut counts = vec![0u64; self.bins];
        for v in values {
            if let Some(i) = self.locate(v) {
                counts[i] += 1;
            }
        }
        counts
    }

    pub fn finish(&self, counts: Vec<u64>) -> Histogram {
        Histogram { bin_edges: self.edges().into_iter().map(Scalar::to_f64_lossy).collect(), counts }
    }
}

/// Elementwise sum; the shorter side counts as zeros.
pub fn add_counts(a: &[u64], b: &[u64]) -> Vec<u64> {
    (0..a.len().max(b.len())).map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)).collect()
}

/// Histogram of the finite values over `range` (default: their min/max).
pub fn histogram<T: Scalar>(values: &[T], bins: usize, range: Option<(T, T)>) -> Option<Histogram> {
    let finite = values.iter().copied().filter(|v| v.is_finite());
    let (lo, hi) = match range {
        Some(r) => r,
        None => finite.clone().fold(None, |acc: Option<(T, T)>, v| match acc {
            None => Some((v, v)),
            Some((lo, hi)) => Some((lo.min(v), hi.max(v))),
        })?,
    };
    let layout = BinLayout::new(lo, hi, bins);
    Some(layout.finish(layout.count(finite)))
}
