//! Before/after distributions for the effect of dropping rows where an
//! anchor column is missing, plus the two-sample KS distance.

use super::categorical::BarCounts;
use super::histogram::Histogram;
use crate::frame::DType;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Distribution {
    Histogram(Histogram),
    Bars(BarCounts),
}

impl Distribution {
    /// Counts aligned on the shared bins / categories (the `other` bucket last for bars).
    pub fn aligned_counts(&self) -> Vec<u64> {
        match self {
            Distribution::Histogram(h) => h.counts.clone(),
            Distribution::Bars(b) => b.bars.iter().map(|x| x.count).chain([b.other]).collect(),
        }
    }

    pub fn total(&self) -> u64 {
        self.aligned_counts().iter().sum()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ImpactPair {
    pub anchor: String,
    pub column: String,
    pub dtype: DType,
    pub before: Distribution,
    pub after: Distribution,
    /// Largest gap between the before/after cumulative distributions.
    pub ks_d: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Ecdf {
    pub x: Vec<f64>,
    pub p: Vec<f64>,
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EcdfPair {
    pub anchor: String,
    pub column: String,
    pub before: Ecdf,
    pub after: Ecdf,
}

/// Step points of the empirical CDF of an ascending slice, thinned to at most
/// `max_points` evenly spaced ranks (the last rank is always kept).
pub fn ecdf(sorted: &[f64], max_points: usize) -> Ecdf {
    let n = sorted.len();
    if n == 0 {
        return Ecdf { x: Vec::new(), p: Vec::new(), n };
    }
    let k = max_points.max(2).min(n);
    let ranks: Vec<usize> = if k == n {
        (0..n).collect()
    } else {
        (0..k).map(|i| ((i as u128 * (n - 1) as u128) / (k - 1) as u128) as usize).collect()
    };
    Ecdf {
        x: ranks.iter().map(|&i| sorted[i]).collect(),
        p: ranks.iter().map(|&i| (i + 1) as f64 / n as f64).collect(),
        n,
    }
}

/// Two-sample Kolmogorov-Smirnov statistic over ascending slices.
pub fn ks_statistic(a: &[f64], b: &[f64]) -> f64 {
    if a.is_empty() || b.is_empty() {
        return f64::NAN;
    }
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < a.len() && j < b.len() {
        let v = a[i].min(b[j]);
        while i < a.len() && a[i] <= v {
            i += 1;
        }
        while j < b.len() && b[j] <= v {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    d
}

/// KS-style distance between two count vectors over the same ordered categories.
pub fn discrete_ks(a: &[u64], b: &[u64]) -> f64 {
    let (ta, tb) = (a.iter().sum::<u64>() as f64, b.iter().sum::<u64>() as f64);
    if ta == 0.0 || tb == 0.0 {
        return f64::NAN;
    }
    let (mut ca, mut cb, mut d) = (0.0, 0.0, 0.0f64);
    for (x, y) in a.iter().zip(b) {
        ca += *x as f64;
        cb += *y as f64;
        d = d.max((ca / ta - cb / tb).abs());
    }
    d
}

pub fn dtype_of(d: &Distribution) -> DType {
    match d {
        Distribution::Histogram(_) => DType::Numerical,
        Distribution::Bars(_) => DType::Categorical,
    }
}
