//! Missing-value summaries: per-column counts, row-segment spectrum,
//! nullity correlation and the nullity dendrogram.

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MissingColumn {
    pub name: String,
    pub missing: u64,
    pub pct: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MissingBar {
    pub rows: usize,
    pub columns: Vec<MissingColumn>,
}

impl MissingBar {
    pub fn new(names: &[String], missing: &[u64], rows: usize) -> Self {
        let columns = names
            .iter()
            .zip(missing)
            .map(|(name, &m)| MissingColumn {
                name: name.clone(),
                missing: m,
                pct: if rows == 0 { 0.0 } else { 100.0 * m as f64 / rows as f64 },
            })
            .collect();
        MissingBar { rows, columns }
    }
}

/// Contiguous near-equal row ranges: segment `s` starts at `floor(s * n / S)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegmentLayout {
    starts: Vec<usize>,
    n_rows: usize,
}

impl SegmentLayout {
    /// More segments than rows degrades to one row per segment.
    pub fn new(n_rows: usize, segments: usize) -> Self {
        let s = segments.max(1).min(n_rows.max(1));
        let starts = (0..s).map(|i| (i as u128 * n_rows as u128 / s as u128) as usize).collect();
        SegmentLayout { starts, n_rows }
    }

    pub fn len(&self) -> usize {
        self.starts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.starts.is_empty()
    }

    pub fn bounds(&self, s: usize) -> (usize, usize) {
        let end = self.starts.get(s + 1).copied().unwrap_or(self.n_rows);
        (self.starts[s], end)
    }

    pub fn segment_of(&self, row: usize) -> usize {
        match self.starts.binary_search(&row) {
            Ok(i) => {
                // several equal starts cannot occur because segments <= rows
                i
            }
            Err(i) => i - 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumSegment {
    pub start: usize,
    pub end: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MissingSpectrum {
    pub columns: Vec<String>,
    pub segments: Vec<SpectrumSegment>,
    /// `fractions[segment][column]` in `[0, 1]`.
    pub fractions: Vec<Vec<f64>>,
}

pub fn finish_spectrum(layout: &SegmentLayout, names: &[String], counts: &[Vec<u64>]) -> MissingSpectrum {
    let segments: Vec<SpectrumSegment> =
        (0..layout.len()).map(|s| layout.bounds(s)).map(|(start, end)| SpectrumSegment { start, end }).collect();
    let fractions = segments
        .iter()
        .zip(counts)
        .map(|(seg, row)| {
            let size = (seg.end - seg.start) as f64;
            row.iter().map(|&c| if size > 0.0 { c as f64 / size } else { 0.0 }).collect()
        })
        .collect();
    MissingSpectrum { columns: names.to_vec(), segments, fractions }
}

/// Missing-indicator co-counts: `single[i]` rows missing in column i,
/// `joint[i][j]` rows missing in both. Mergeable by addition.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct NullityCounts {
    pub rows: u64,
    pub single: Vec<u64>,
    pub joint: Vec<Vec<u64>>,
}

impl NullityCounts {
    pub fn zeros(m: usize) -> Self {
        NullityCounts { rows: 0, single: vec![0; m], joint: vec![vec![0; m]; m] }
    }

    /// Add one row given the indices of its missing columns.
    pub fn add_row(&mut self, missing_cols: &[usize]) {
        self.rows += 1;
        for (k, &i) in missing_cols.iter().enumerate() {
            self.single[i] += 1;
            for &j in &missing_cols[k..] {
                self.joint[i][j] += 1;
                if i != j {
                    self.joint[j][i] += 1;
                }
            }
        }
    }

    pub fn merge(&self, other: &Self) -> Self {
        if self.single.is_empty() && self.rows == 0 {
            return other.clone();
        }
        if other.single.is_empty() && other.rows == 0 {
            return self.clone();
        }
        let m = self.single.len();
        let mut out = self.clone();
        out.rows += other.rows;
        for i in 0..m {
            out.single[i] += other.single[i];
            for j in 0..m {
                out.joint[i][j] += other.joint[i][j];
            }
        }
        out
    }

    /// Pearson correlation of the 0/1 indicators of columns `i` and `j`.
    pub fn indicator_corr(&self, i: usize, j: usize) -> f64 {
        let n = self.rows as f64;
        let (a, b, ab) = (self.single[i] as f64, self.single[j] as f64, self.joint[i][j] as f64);
        let denom = (a * (n - a) * b * (n - b)).sqrt();
        if denom == 0.0 {
            return f64::NAN;
        }
        ((n * ab - a * b) / denom).clamp(-1.0, 1.0)
    }

    /// Euclidean distance between the indicator vectors of `i` and `j`.
    pub fn indicator_distance(&self, i: usize, j: usize) -> f64 {
        let d2 = self.single[i] as f64 + self.single[j] as f64 - 2.0 * self.joint[i][j] as f64;
        d2.max(0.0).sqrt()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NullityCorr {
    pub columns: Vec<String>,
    pub values: Vec<Vec<f64>>,
    /// Fully observed or fully missing columns, left out of the matrix.
    pub excluded: Vec<String>,
}

/// `None` when fewer than two columns are partially missing.
pub fn nullity_corr(names: &[String], counts: &NullityCounts) -> Option<NullityCorr> {
    let keep: Vec<usize> =
        (0..names.len()).filter(|&i| counts.single[i] > 0 && counts.single[i] < counts.rows).collect();
    let excluded = (0..names.len()).filter(|i| !keep.contains(i)).map(|i| names[i].clone()).collect();
    if keep.len() < 2 {
        return None;
    }
    let values = keep
        .iter()
        .map(|&i| keep.iter().map(|&j| if i == j { 1.0 } else { counts.indicator_corr(i, j) }).collect())
        .collect();
    Some(NullityCorr { columns: keep.iter().map(|&i| names[i].clone()).collect(), values, excluded })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Merge {
    /// Cluster ids: `0..m` are leaves, `m + k` is the cluster formed by merge `k`.
    pub left: usize,
    pub right: usize,
    pub height: f64,
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DendrogramTree {
    pub leaves: Vec<String>,
    pub merges: Vec<Merge>,
    /// Leaf indices in drawing order.
    pub order: Vec<usize>,
}

/// Average-linkage agglomerative clustering over a symmetric distance matrix.
/// Ties pick the pair with the smallest cluster ids.
pub fn average_linkage(dist: &[Vec<f64>]) -> Vec<Merge> {
    let m = dist.len();
    let mut active: Vec<usize> = (0..m).collect();
    let mut size: Vec<usize> = vec![1; m];
    // distances between cluster ids, grown as clusters form
    let mut d: Vec<Vec<f64>> = dist.to_vec();
    let mut merges = Vec::with_capacity(m.saturating_sub(1));
    let mut heights: Vec<f64> = vec![0.0; m];
    while active.len() > 1 {
        let mut best: Option<(f64, usize, usize)> = None;
        for (ai, &a) in active.iter().enumerate() {
            for &b in &active[ai + 1..] {
                let dab = d[a][b];
                let better = match best {
                    None => true,
                    Some((bd, ba, bb)) => dab < bd || (dab == bd && (a.min(b), a.max(b)) < (ba, bb)),
                };
                if better {
                    best = Some((dab, a.min(b), a.max(b)));
                }
            }
        }
        let (h, a, b) = best.expect("at least two active clusters");
        let new_id = d.len();
        let new_size = size[a] + size[b];
        let height = h.max(heights[a]).max(heights[b]);
        let mut row = vec![0.0; new_id + 1];
        for &k in &active {
            if k == a || k == b {
                continue;
            }
            row[k] = (size[a] as f64 * d[k][a] + size[b] as f64 * d[k][b]) / new_size as f64;
        }
        for (k, r) in d.iter_mut().enumerate() {
            r.push(row[k]);
        }
        d.push(row);
        size.push(new_size);
        heights.push(height);
        active.retain(|&k| k != a && k != b);
        active.push(new_id);
        merges.push(Merge { left: a, right: b, height, size: new_size });
    }
    merges
}

pub fn leaf_order(m: usize, merges: &[Merge]) -> Vec<usize> {
    if m == 0 {
        return Vec::new();
    }
    fn walk(id: usize, m: usize, merges: &[Merge], out: &mut Vec<usize>) {
        if id < m {
            out.push(id);
        } else {
            let mg = &merges[id - m];
            walk(mg.left, m, merges, out);
            walk(mg.right, m, merges, out);
        }
    }
    let mut out = Vec::with_capacity(m);
    let root = if merges.is_empty() { 0 } else { m + merges.len() - 1 };
    walk(root, m, merges, &mut out);
    out
}

pub fn nullity_dendrogram(names: &[String], counts: &NullityCounts) -> Option<DendrogramTree> {
    let m = names.len();
    if m < 2 {
        return None;
    }
    let dist: Vec<Vec<f64>> = (0..m).map(|i| (0..m).map(|j| if i == j { 0.0 } else { counts.indicator_distance(i, j) }).collect()).collect();
    let merges = average_linkage(&dist);
    let order = leaf_order(m, &merges);
    Some(DendrogramTree { leaves: names.to_vec(), merges, order })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn counts_from_masks(masks: &[Vec<bool>]) -> NullityCounts {
        let m = masks.len();
        let n = masks[0].len();
        let mut c = NullityCounts::zeros(m);
        for row in 0..n {
            let miss: Vec<usize> = (0..m).filter(|&i| masks[i][row]).collect();
            c.add_row(&miss);
        }
        c
    }

    fn names(m: usize) -> Vec<String> {
        (0..m).map(|i| format!("c{i}")).collect()
    }

    #[test]
    fn segment_layout_partitions_rows() {
        for (n, s) in [(10, 3), (3, 2), (5, 50), (1000, 50), (7, 7)] {
            let layout = SegmentLayout::new(n, s);
            assert_eq!(layout.len(), s.min(n));
            let mut covered = 0;
            for seg in 0..layout.len() {
                let (a, b) = layout.bounds(seg);
                assert!(b > a);
                for row in a..b {
                    assert_eq!(layout.segment_of(row), seg);
                }
                covered += b - a;
            }
            assert_eq!(covered, n);
        }
    }

    #[test]
    fn identical_and_complementary_masks() {
        let a = vec![true, false, true, false, false];
        let comp: Vec<bool> = a.iter().map(|b| !b).collect();
        let c = counts_from_masks(&[a.clone(), a.clone(), comp]);
        assert!((c.indicator_corr(0, 1) - 1.0).abs() < 1e-12);
        assert!((c.indicator_corr(0, 2) + 1.0).abs() < 1e-12);
        assert_eq!(c.indicator_distance(0, 1), 0.0);
    }

    #[test]
    fn random_masks_match_brute_force_pearson() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        let masks: Vec<Vec<bool>> = (0..4).map(|_| (0..500).map(|_| rng.gen_bool(0.3)).collect()).collect();
        let c = counts_from_masks(&masks);
        let nc = nullity_corr(&names(4), &c).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let x: Vec<f64> = masks[i].iter().map(|&b| b as u8 as f64).collect();
                let y: Vec<f64> = masks[j].iter().map(|&b| b as u8 as f64).collect();
                let mx = x.iter().sum::<f64>() / 500.0;
                let my = y.iter().sum::<f64>() / 500.0;
                let sxy: f64 = x.iter().zip(&y).map(|(a, b)| (a - mx) * (b - my)).sum();
                let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
                let syy: f64 = y.iter().map(|b| (b - my).powi(2)).sum();
                assert!((nc.values[i][j] - sxy / (sxx * syy).sqrt()).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn too_few_partial_columns() {
        let c = counts_from_masks(&[vec![false; 5], vec![true, false, false, false, false]]);
        assert!(nullity_corr(&names(2), &c).is_none());
    }

    #[test]
    fn dendrogram_structure() {
        let a = vec![true, true, false, false, false, false];
        let c = vec![false, false, false, true, true, true];
        let counts = counts_from_masks(&[a.clone(), a, c.clone(), c]);
        let tree = nullity_dendrogram(&names(4), &counts).unwrap();
        assert_eq!(tree.merges[0].height, 0.0);
        assert_eq!(tree.merges[1].height, 0.0);
        assert_eq!((tree.merges[0].left, tree.merges[0].right), (0, 1));
        assert_eq!((tree.merges[1].left, tree.merges[1].right), (2, 3));
        assert_eq!((tree.merges[2].left, tree.merges[2].right), (4, 5));
        assert!(tree.merges[2].height > 0.0);
        assert_eq!(tree.order, vec![0, 1, 2, 3]);
    }

    // recompute every candidate distance as the mean over member pairs
    fn naive_linkage(dist: &[Vec<f64>]) -> Vec<f64> {
        let mut clusters: Vec<Vec<usize>> = (0..dist.len()).map(|i| vec![i]).collect();
        let mut heights = Vec::new();
        while clusters.len() > 1 {
            let mut best = (f64::INFINITY, 0, 0);
            for i in 0..clusters.len() {
                for j in i + 1..clusters.len() {
                    let mut s = 0.0;
                    for &a in &clusters[i] {
                        for &b in &clusters[j] {
                            s += dist[a][b];
                        }
                    }
                    let avg = s / (clusters[i].len() * clusters[j].len()) as f64;
                    if avg < best.0 {
                        best = (avg, i, j);
                    }
                }
            }
            let (h, i, j) = best;
            let merged: Vec<usize> = clusters[i].iter().chain(&clusters[j]).copied().collect();
            clusters.remove(j);
            clusters.remove(i);
            clusters.push(merged);
            heights.push(h);
        }
        heights
    }

    #[test]
    fn linkage_heights_match_naive_and_are_monotone() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(8);
        for _ in 0..30 {
            let m = rng.gen_range(2..9);
            let masks: Vec<Vec<bool>> = (0..m).map(|_| (0..60).map(|_| rng.gen_bool(0.4)).collect()).collect();
            let counts = counts_from_masks(&masks);
            let tree = nullity_dendrogram(&names(m), &counts).unwrap();
            let dist: Vec<Vec<f64>> = (0..m).map(|i| (0..m).map(|j| counts.indicator_distance(i, j)).collect()).collect();
            let mut fast: Vec<f64> = tree.merges.iter().map(|g| g.height).collect();
            let mut slow = naive_linkage(&dist);
            fast.sort_by(|a, b| a.partial_cmp(b).unwrap());
            slow.sort_by(|a, b| a.partial_cmp(b).unwrap());
            for (f, s) in fast.iter().zip(&slow) {
                assert!((f - s).abs() < 1e-9, "{f} {s}");
            }
            for (k, g) in tree.merges.iter().enumerate() {
                for child in [g.left, g.right] {
                    if child >= m {
                        assert!(tree.merges[child - m].height <= g.height);
                        assert!(child - m < k);
                    }
                }
            }
        }
    }

    #[test]
    fn spectrum_conservation() {
        let layout = SegmentLayout::new(10, 4);
        let mut counts = vec![vec![0u64; 1]; layout.len()];
        let missing_rows = [0usize, 1, 2, 7];
        for &r in &missing_rows {
            counts[layout.segment_of(r)][0] += 1;
        }
        let spec = finish_spectrum(&layout, &names(1), &counts);
        let weighted: f64 = spec.segments.iter().zip(&spec.fractions).map(|(s, f)| (s.end - s.start) as f64 * f[0]).sum::<f64>() / 10.0;
        assert!((weighted - 0.4).abs() < 1e-12);
    }
}
