//! Pearson, Spearman and Kendall correlation.

use crate::scalar::{total_cmp, Scalar};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CorrMethod {
    Pearson,
    Spearman,
    Kendall,
}

impl CorrMethod {
    pub const ALL: [CorrMethod; 3] = [CorrMethod::Pearson, CorrMethod::Spearman, CorrMethod::Kendall];

    pub fn as_str(self) -> &'static str {
        match self {
            CorrMethod::Pearson => "pearson",
            CorrMethod::Spearman => "spearman",
            CorrMethod::Kendall => "kendall",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "pearson" => Some(CorrMethod::Pearson),
            "spearman" => Some(CorrMethod::Spearman),
            "kendall" => Some(CorrMethod::Kendall),
            _ => None,
        }
    }

    pub fn title(self) -> &'static str {
        match self {
            CorrMethod::Pearson => "Pearson",
            CorrMethod::Spearman => "Spearman",
            CorrMethod::Kendall => "Kendall",
        }
    }
}

/// Mergeable co-moment partial for one column pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoMoments<T> {
    pub n: usize,
    pub mean_x: T,
    pub mean_y: T,
    pub m2_x: T,
    pub m2_y: T,
    pub c_xy: T,
}

impl<T: Scalar> Default for CoMoments<T> {
    fn default() -> Self {
        let z = T::zero();
        CoMoments { n: 0, mean_x: z, mean_y: z, m2_x: z, m2_y: z, c_xy: z }
    }
}

impl<T: Scalar> CoMoments<T> {
    /// Two-pass partial over complete pairs.
    pub fn from_pairs(xs: &[T], ys: &[T]) -> Self {
        debug_assert_eq!(xs.len(), ys.len());
        if xs.is_empty() {
            return Self::default();
        }
        let n = T::from_count(xs.len());
        let mean_x = xs.iter().copied().sum::<T>() / n;
        let mean_y = ys.iter().copied().sum::<T>() / n;
        let (mut m2_x, mut m2_y, mut c_xy) = (T::zero(), T::zero(), T::zero());
        for (&x, &y) in xs.iter().zip(ys) {
            let dx = x - mean_x;
            let dy = y - mean_y;
            m2_x = m2_x + dx * dx;
            m2_y = m2_y + dy * dy;
            c_xy = c_xy + dx * dy;
        }
        CoMoments { n: xs.len(), mean_x, mean_y, m2_x, m2_y, c_xy }
    }

    pub fn merge(&self, other: &Self) -> Self {
        if other.n == 0 {
            return *self;
        }
        if self.n == 0 {
            return *other;
        }
        let na = T::from_count(self.n);
        let nb = T::from_count(other.n);
        let n = na + nb;
        let dx = other.mean_x - self.mean_x;
        let dy = other.mean_y - self.mean_y;
        let w = na * nb / n;
        CoMoments {
            n: self.n + other.n,
            mean_x: self.mean_x + dx * nb / n,
            mean_y: self.mean_y + dy * nb / n,
            m2_x: self.m2_x + other.m2_x + dx * dx * w,
            m2_y: self.m2_y + other.m2_y + dy * dy * w,
            c_xy: self.c_xy + other.c_xy + dx * dy * w,
        }
    }

    /// `NaN` when either side has zero variance or fewer than two pairs.
    pub fn pearson(&self) -> T {
        if self.n < 2 || !(self.m2_x > T::zero()) || !(self.m2_y > T::zero()) {
            return T::nan();
        }
        let r = self.c_xy / (self.m2_x * self.m2_y).sqrt();
        r.max(-T::one()).min(T::one())
    }

    /// Least-squares `(slope, intercept)` of y on x.
    pub fn regression(&self) -> Option<(T, T)> {
        if self.n < 2 || !(self.m2_x > T::zero()) {
            return None;
        }
        let slope = self.c_xy / self.m2_x;
        Some((slope, self.mean_y - slope * self.mean_x))
    }
}

pub fn pearson<T: Scalar>(xs: &[T], ys: &[T]) -> T {
    CoMoments::from_pairs(xs, ys).pearson()
}

/// Midranks (1-based, ties share the average rank).
pub fn midranks<T: Scalar>(values: &[T]) -> Vec<T> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| total_cmp(&values[a], &values[b]).then(a.cmp(&b)));
    let mut ranks = vec![T::zero(); values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i + 1;
        while j < order.len() && values[order[j]] == values[order[i]] {
            j += 1;
        }
        // positions i..j (0-based) share rank ((i+1) + j) / 2
        let rank = T::from_count(i + 1 + j) / T::lit(2.0);
        for &k in &order[i..j] {
            ranks[k] = rank;
        }
        i = j;
    }
    ranks
}

pub fn spearman<T: Scalar>(xs: &[T], ys: &[T]) -> T {
    pearson(&midranks(xs), &midranks(ys))
}

/// Kendall's tau-b in O(n log n) by counting inversions with a merge sort.
pub fn kendall_tau_b<T: Scalar>(xs: &[T], ys: &[T]) -> T {
    let n = xs.len();
    if n < 2 {
        return T::nan();
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| total_cmp(&xs[a], &xs[b]).then_with(|| total_cmp(&ys[a], &ys[b])));

    let pairs = |t: u64| t * t.saturating_sub(1) / 2;
    let total = pairs(n as u64);

    let (mut x_ties, mut joint_ties) = (0u64, 0u64);
    let (mut run_x, mut run_xy) = (1u64, 1u64);
    for w in order.windows(2) {
        let (a, b) = (w[0], w[1]);
        if xs[a] == xs[b] {
            run_x += 1;
            if ys[a] == ys[b] {
                run_xy += 1;
            } else {
                joint_ties += pairs(run_xy);
                run_xy = 1;
            }
        } else {
            x_ties += pairs(run_x);
            joint_ties += pairs(run_xy);
            run_x = 1;
            run_xy = 1;
        }
    }
    x_ties += pairs(run_x);
    joint_ties += pairs(run_xy);

    let mut seq: Vec<T> = order.iter().map(|&i| ys[i]).collect();
    let mut buf = seq.clone();
    let swaps = merge_count(&mut seq, &mut buf);

    let mut y_ties = 0u64;
    let mut run_y = 1u64;
    for w in seq.windows(2) {
        if w[0] == w[1] {
            run_y += 1;
        } else {
            y_ties += pairs(run_y);
            run_y = 1;
        }
    }
    y_ties += pairs(run_y);

    let denom_x = total - x_ties;
    let denom_y = total - y_ties;
    if denom_x == 0 || denom_y == 0 {
        return T::nan();
    }
    let numer = total as f64 - x_ties as f64 - y_ties as f64 + joint_ties as f64 - 2.0 * swaps as f64;
    let tau = numer / ((denom_x as f64) * (denom_y as f64)).sqrt();
    T::lit(tau.clamp(-1.0, 1.0))
}

/// Sorts `v` ascending and returns the number of strict inversions.
fn merge_count<T: Scalar>(v: &mut [T], buf: &mut [T]) -> u64 {
    let n = v.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let mut swaps = {
        let (l, r) = v.split_at_mut(mid);
        let (bl, br) = buf.split_at_mut(mid);
        merge_count(l, bl) + merge_count(r, br)
    };
    let (mut i, mut j, mut k) = (0, mid, 0);
    while i < mid && j < n {
        if v[j] < v[i] {
            buf[k] = v[j];
            swaps += (mid - i) as u64;
            j += 1;
        } else {
            buf[k] = v[i];
            i += 1;
        }
        k += 1;
    }
    while i < mid {
        buf[k] = v[i];
        i += 1;
        k += 1;
    }
    while j < n {
        buf[k] = v[j];
        j += 1;
        k += 1;
    }
    v.copy_from_slice(&buf[..n]);
    swaps
}

pub fn correlation<T: Scalar>(method: CorrMethod, xs: &[T], ys: &[T]) -> T {
    match method {
        CorrMethod::Pearson => pearson(xs, ys),
        CorrMethod::Spearman => spearman(xs, ys),
        CorrMethod::Kendall => kendall_tau_b(xs, ys),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrMatrix {
    pub method: CorrMethod,
    pub columns: Vec<String>,
    /// Row-major, `values[i][j]`; `NaN` (serialized as null) when undefined.
    pub values: Vec<Vec<f64>>,
    /// Kendall only: rows used per pair were sampled down to this cap.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sampled_rows: Option<usize>,
}

impl CorrMatrix {
    pub fn get(&self, a: &str, b: &str) -> Option<f64> {
        let i = self.columns.iter().position(|c| c == a)?;
        let j = self.columns.iter().position(|c| c == b)?;
        Some(self.values[i][j])
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankEntry {
    pub column: String,
    pub r: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrRanking {
    pub method: CorrMethod,
    pub anchor: String,
    pub entries: Vec<RankEntry>,
}

/// Other columns by descending `|r|`, ties by name. Undefined correlations go last.
pub fn corr_rank(m: &CorrMatrix, anchor: &str) -> Option<CorrRanking> {
    let i = m.columns.iter().position(|c| c == anchor)?;
    let mut entries: Vec<RankEntry> = m
        .columns
        .iter()
        .enumerate()
        .filter(|(j, _)| *j != i)
        .map(|(j, c)| RankEntry { column: c.clone(), r: m.values[i][j] })
        .collect();
    entries.sort_by(|a, b| {
        let ka = if a.r.is_nan() { -1.0 } else { a.r.abs() };
        let kb = if b.r.is_nan() { -1.0 } else { b.r.abs() };
        kb.partial_cmp(&ka).unwrap_or(std::cmp::Ordering::Equal).then_with(|| a.column.cmp(&b.column))
    });
    Some(CorrRanking { method: m.method, anchor: anchor.to_owned(), entries })
}
