//! Two-column numeric views: scatter sample, hexagonal binning, binned box plots.

use super::boxplot::{tukey, BoxStats};
use super::correlation::CoMoments;
use super::histogram::BinLayout;
use super::sampling::{sample_indices, take_indices};
use crate::scalar::{total_cmp, Scalar};
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Regression {
    pub slope: f64,
    pub intercept: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScatterPoints {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    /// Complete pairs before sampling.
    pub n_pairs: usize,
    pub regression: Option<Regression>,
    pub pearson: f64,
}

impl ScatterPoints {
    pub fn sampled(&self) -> bool {
        self.x.len() < self.n_pairs
    }
}

/// All pairs when there are at most `max_points`, else a seeded uniform sample.
/// The regression line and `r` always use every pair.
pub fn scatter_sample(xs: &[f64], ys: &[f64], max_points: usize, seed: u64) -> Option<ScatterPoints> {
    if xs.is_empty() {
        return None;
    }
    let cm = CoMoments::from_pairs(xs, ys);
    let idx = sample_indices(xs.len(), max_points, seed);
    Some(ScatterPoints {
        x: take_indices(xs, &idx),
        y: take_indices(ys, &idx),
        n_pairs: xs.len(),
        regression: cm.regression().map(|(slope, intercept)| Regression { slope, intercept }),
        pearson: cm.pearson(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Bounds {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl Bounds {
    pub fn of_point(x: f64, y: f64) -> Self {
        Bounds { x_min: x, x_max: x, y_min: y, y_max: y }
    }

    pub fn merge(&self, o: &Self) -> Self {
        Bounds {
            x_min: self.x_min.min(o.x_min),
            x_max: self.x_max.max(o.x_max),
            y_min: self.y_min.min(o.y_min),
            y_max: self.y_max.max(o.y_max),
        }
    }
}

/// Pointy-top hexagon grid over a bounding box with `gridsize` hexes across x.
///
/// Coordinates are scaled to a square of width `gridsize * sqrt(3)` (hex size 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HexLayout<T> {
    pub x_min: T,
    pub x_span: T,
    pub y_min: T,
    pub y_span: T,
    pub gridsize: usize,
}

impl<T: Scalar> HexLayout<T> {
    /// `None` when either axis has zero extent.
    pub fn new(x_min: T, x_max: T, y_min: T, y_max: T, gridsize: usize) -> Option<Self> {
        if !(x_max > x_min) || !(y_max > y_min) {
            return None;
        }
        Some(HexLayout { x_min, x_span: x_max - x_min, y_min, y_span: y_max - y_min, gridsize: gridsize.max(1) })
    }

    fn width(&self) -> T {
        T::from_count(self.gridsize) * T::lit(3.0).sqrt()
    }

    fn to_plane(&self, x: T, y: T) -> (T, T) {
        let w = self.width();
        ((x - self.x_min) / self.x_span * w, (y - self.y_min) / self.y_span * w)
    }

    fn center_plane(q: i64, r: i64) -> (T, T) {
        let (qf, rf) = (T::lit(q as f64), T::lit(r as f64));
        (T::lit(3.0).sqrt() * (qf + rf / T::lit(2.0)), T::lit(1.5) * rf)
    }

    /// Hex centre in data coordinates.
    pub fn center(&self, q: i64, r: i64) -> (T, T) {
        let (u, v) = Self::center_plane(q, r);
        let w = self.width();
        (self.x_min + u / w * self.x_span, self.y_min + v / w * self.y_span)
    }

    /// Axial `(q, r)` of the nearest hex centre; equidistant points go to the
    /// lexicographically smaller index.
    pub fn locate(&self, x: T, y: T) -> (i64, i64) {
        let (u, v) = self.to_plane(x, y);
        let sqrt3 = T::lit(3.0).sqrt();
        let qf = (sqrt3 / T::lit(3.0)) * u - v / T::lit(3.0);
        let rf = T::lit(2.0) / T::lit(3.0) * v;
        let (q0, r0) = cube_round(qf, rf);
        let mut best = (q0, r0);
        let mut best_d = T::infinity();
        let eps = T::lit(1e-9);
        for (dq, dr) in [(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1)] {
            let cand = (q0 + dq, r0 + dr);
            let (cu, cv) = Self::center_plane(cand.0, cand.1);
            let d = (cu - u) * (cu - u) + (cv - v) * (cv - v);
            if d < best_d - eps || ((d - best_d).abs() <= eps && cand < best) {
                best = cand;
                best_d = d;
            }
        }
        best
    }
}

fn cube_round<T: Scalar>(q: T, r: T) -> (i64, i64) {
    let s = -q - r;
    let (mut rq, mut rr, rs) = (q.round(), r.round(), s.round());
    let (dq, dr, ds) = ((rq - q).abs(), (rr - r).abs(), (rs - s).abs());
    if dq > dr && dq > ds {
        rq = -rr - rs;
    } else if dr > ds {
        rr = -rq - rs;
    }
    (rq.to_i64().unwrap_or(0), rr.to_i64().unwrap_or(0))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HexBin {
    pub q: i64,
    pub r: i64,
    pub x: f64,
    pub y: f64,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HexbinGrid {
    pub gridsize: usize,
    pub bounds: Option<Bounds>,
    /// Non-empty hexes ordered by `(q, r)`.
    pub bins: Vec<HexBin>,
    pub total: u64,
    /// True when the bounding box had zero extent and every point went to one bin.
    pub degenerate: bool,
}

pub type HexCounts = BTreeMap<(i64, i64), u64>;

pub fn hex_counts(layout: Option<&HexLayout<f64>>, xs: &[f64], ys: &[f64]) -> HexCounts {
    let mut counts = HexCounts::new();
    for (&x, &y) in xs.iter().zip(ys) {
        let key = layout.map(|l| l.locate(x, y)).unwrap_or((0, 0));
        *counts.entry(key).or_insert(0) += 1;
    }
    counts
}

pub fn merge_hex_counts(a: &HexCounts, b: &HexCounts) -> HexCounts {
    let mut out = a.clone();
    for (k, v) in b {
        *out.entry(*k).or_insert(0) += v;
    }
    out
}

pub fn finish_hexbin(layout: Option<&HexLayout<f64>>, bounds: Option<Bounds>, counts: &HexCounts, gridsize: usize) -> HexbinGrid {
    let bins = counts
        .iter()
        .map(|(&(q, r), &count)| {
            let (x, y) = match (layout, bounds) {
                (Some(l), _) => l.center(q, r),
                (None, Some(b)) => ((b.x_min + b.x_max) / 2.0, (b.y_min + b.y_max) / 2.0),
                (None, None) => (0.0, 0.0),
            };
            HexBin { q, r, x, y, count }
        })
        .collect();
    HexbinGrid { gridsize, bounds, bins, total: counts.values().sum(), degenerate: layout.is_none() }
}

/// Box plots of `ys` grouped by uniform bins of `xs`. Empty bins are skipped.
pub fn binned_box(xs: &[f64], ys: &[f64], bins: usize, max_outliers: usize) -> Vec<BoxStats> {
    let Some((lo, hi)) = xs.iter().fold(None, |acc: Option<(f64, f64)>, &v| match acc {
        None => Some((v, v)),
        Some((a, b)) => Some((a.min(v), b.max(v))),
    }) else {
        return Vec::new();
    };
    let layout = BinLayout::new(lo, hi, bins);
    let mut groups: Vec<Vec<f64>> = vec![Vec::new(); layout.bins];
    for (&x, &y) in xs.iter().zip(ys) {
        if let Some(i) = layout.locate(x) {
            groups[i].push(y);
        }
    }
    groups
        .into_iter()
        .enumerate()
        .filter_map(|(i, mut g)| {
            g.sort_by(total_cmp);
            let mut b = tukey(&g, max_outliers)?;
            b.label = Some(format!("[{}, {}{}", fmt_edge(layout.edge(i)), fmt_edge(layout.edge(i + 1)), if i + 1 == layout.bins { "]" } else { ")" }));
            Some(b)
        })
        .collect()
}

fn fmt_edge(v: f64) -> String {
    let s = format!("{v:.4}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".to_owned() } else { s.to_owned() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn small_scatter_returns_everything() {
        let x: Vec<f64> = (0..10).map(|i| i as f64).collect();
        let y: Vec<f64> = x.iter().map(|v| 2.0 * v + 1.0).collect();
        let s = scatter_sample(&x, &y, 1000, 0).unwrap();
        assert_eq!(s.x.len(), 10);
        let reg = s.regression.unwrap();
        assert!((reg.slope - 2.0).abs() < 1e-12 && (reg.intercept - 1.0).abs() < 1e-12);
        assert!(scatter_sample(&[], &[], 10, 0).is_none());
    }

    #[test]
    fn large_scatter_sampled_reproducibly() {
        let x: Vec<f64> = (0..1_000_000).map(|i| i as f64).collect();
        let a = scatter_sample(&x, &x, 1000, 0).unwrap();
        let b = scatter_sample(&x, &x, 1000, 0).unwrap();
        assert_eq!(a.x.len(), 1000);
        assert_eq!(a, b);
        assert!(a.sampled());
    }

    #[test]
    fn hexbin_conserves_points() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        let xs: Vec<f64> = (0..500).map(|_| rng.gen_range(-3.0..3.0)).collect();
        let ys: Vec<f64> = (0..500).map(|_| rng.gen_range(10.0..20.0)).collect();
        let b = xs.iter().zip(&ys).map(|(&x, &y)| Bounds::of_point(x, y)).reduce(|a, b| a.merge(&b)).unwrap();
        let layout = HexLayout::new(b.x_min, b.x_max, b.y_min, b.y_max, 20).unwrap();
        let counts = hex_counts(Some(&layout), &xs, &ys);
        let grid = finish_hexbin(Some(&layout), Some(b), &counts, 20);
        assert_eq!(grid.total, 500);
        assert_eq!(grid.bins.iter().map(|h| h.count).sum::<u64>(), 500);
    }

    #[test]
    fn identical_points_single_bin() {
        let xs = [2.0; 7];
        let counts = hex_counts(None, &xs, &xs);
        let grid = finish_hexbin(None, Some(Bounds::of_point(2.0, 2.0)), &counts, 20);
        assert_eq!(grid.bins.len(), 1);
        assert_eq!(grid.bins[0].count, 7);
        assert!(HexLayout::new(2.0, 2.0, 0.0, 1.0, 20).is_none());
    }

    #[test]
    fn corner_and_edge_points_have_one_owner() {
        let layout = HexLayout::new(0.0, 1.0, 0.0, 1.0, 4).unwrap();
        for (x, y) in [(0.0, 0.0), (1.0, 1.0), (0.0, 1.0), (1.0, 0.0)] {
            let a = layout.locate(x, y);
            assert_eq!(a, layout.locate(x, y));
        }
        // midpoint between centres (0,0) and (1,0) is equidistant; the smaller index wins
        let (cx0, cy0) = layout.center(0, 0);
        let (cx1, cy1) = layout.center(1, 0);
        assert_eq!(layout.locate((cx0 + cx1) / 2.0, (cy0 + cy1) / 2.0), (0, 0));
    }

    #[test]
    fn binned_box_groups() {
        let xs: Vec<f64> = (0..100).map(|i| i as f64).collect();
        let ys: Vec<f64> = xs.iter().map(|v| v * 2.0).collect();
        let boxes = binned_box(&xs, &ys, 5, 10);
        assert_eq!(boxes.len(), 5);
        assert_eq!(boxes.iter().map(|b| b.n).sum::<usize>(), 100);
        assert_eq!(boxes[4].label.as_deref(), Some("[79.2, 99]"));
    }
}
