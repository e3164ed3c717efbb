//! Threshold-based data facts attached to charts and stat tables.
//!
//! Every insight records the observed value and the threshold it was compared
//! against, so `fires(observed, threshold)` can be re-checked after the fact.

use crate::analytics::correlation::CorrMatrix;
use crate::analytics::impact::ks_statistic;
use crate::analytics::moments::Moments;
use crate::analytics::sampling::{sample_indices, take_indices};
use crate::analytics::special::chi_square_sf;
use crate::analytics::summary::{CategoricalStats, ColumnStats};
use crate::chart::ChartKind;
use crate::config::ConfigTree;
use crate::scalar::total_cmp;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum InsightKind {
    Missing,
    Infinite,
    Zeros,
    Negatives,
    Constant,
    HighCardinality,
    Skewed,
    Uniform,
    Normal,
    SimilarDistribution,
    NoImpact,
    HighCorrelation,
}

impl InsightKind {
    /// Whether `observed` crosses `threshold` for this kind.
    pub fn fires(self, observed: f64, threshold: f64) -> bool {
        use InsightKind::*;
        match self {
            Missing | Infinite | Zeros | Negatives | HighCardinality => observed > threshold,
            Constant => observed == threshold,
            Skewed => observed.abs() > threshold,
            Uniform | Normal => observed >= threshold,
            SimilarDistribution | NoImpact => observed <= threshold,
            HighCorrelation => observed.abs() >= threshold,
        }
    }

    pub fn severity(self) -> Severity {
        use InsightKind::*;
        match self {
            Missing | Infinite | Zeros | Negatives | Constant | HighCardinality => Severity::Warning,
            _ => Severity::Info,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Info,
    Warning,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Insight {
    pub kind: InsightKind,
    pub columns: Vec<String>,
    pub observed: f64,
    pub threshold: f64,
    pub severity: Severity,
    pub message: String,
    /// Chart or table the insight decorates.
    pub anchor: ChartKind,
}

impl Insight {
    fn new(kind: InsightKind, columns: &[&str], observed: f64, threshold: f64, anchor: ChartKind) -> Self {
        let message = message(kind, columns, observed);
        Insight {
            kind,
            columns: columns.iter().map(|c| c.to_string()).collect(),
            observed,
            threshold,
            severity: kind.severity(),
            message,
            anchor,
        }
    }

    /// Same insight attached to a different chart.
    pub fn anchored(mut self, anchor: ChartKind) -> Self {
        self.anchor = anchor;
        self
    }
}

fn message(kind: InsightKind, cols: &[&str], v: f64) -> String {
    use InsightKind::*;
    let c = cols.first().copied().unwrap_or("");
    let d = cols.get(1).copied().unwrap_or("");
    match kind {
        Missing => format!("{c} has {v:.1}% missing values"),
        Infinite => format!("{c} has {v} infinite values"),
        Zeros => format!("{c} has {v:.1}% zeros"),
        Negatives => format!("{c} has {v} negative values"),
        Constant => format!("{c} has a constant value"),
        HighCardinality => format!("{c} has a high cardinality: {v} distinct values"),
        Skewed => format!("{c} is skewed (skewness {v:.2})"),
        Uniform => format!("{c} is uniformly distributed"),
        Normal => format!("{c} is normally distributed"),
        SimilarDistribution => format!("{c} and {d} have similar distributions (KS distance {v:.3})"),
        NoImpact => format!("dropping rows with missing {c} does not change the distribution of {d}"),
        HighCorrelation => format!("{c} and {d} are highly correlated (r = {v:.3})"),
    }
}

fn check(out: &mut Vec<Insight>, kind: InsightKind, cols: &[&str], observed: f64, threshold: f64, anchor: ChartKind) {
    if !observed.is_nan() && kind.fires(observed, threshold) {
        out.push(Insight::new(kind, cols, observed, threshold, anchor));
    }
}

/// Data-quality and skewness facts for a numerical column.
pub fn detect_stat_insights(s: &ColumnStats, cfg: &ConfigTree) -> Vec<Insight> {
    let mut out = Vec::new();
    let col = [s.column.as_str()];
    let a = ChartKind::Stats;
    check(&mut out, InsightKind::Missing, &col, s.missing_pct(), cfg.float("insight.missing_pct"), a);
    check(&mut out, InsightKind::Infinite, &col, s.n_infinite as f64, 0.0, a);
    if s.present() > 0 {
        let zeros = 100.0 * s.n_zero as f64 / s.present() as f64;
        check(&mut out, InsightKind::Zeros, &col, zeros, cfg.float("insight.zeros_pct"), a);
    }
    if cfg.flag("insight.flag_negatives") {
        check(&mut out, InsightKind::Negatives, &col, s.n_negative as f64, 0.0, a);
    }
    check(&mut out, InsightKind::Constant, &col, s.n_distinct as f64, 1.0, a);
    check(&mut out, InsightKind::HighCardinality, &col, s.n_distinct as f64, cfg.int("insight.cardinality") as f64, a);
    check(&mut out, InsightKind::Skewed, &col, s.skewness, cfg.float("insight.skew"), a);
    out
}

/// Data-quality facts for a categorical column.
pub fn detect_categorical_insights(s: &CategoricalStats, cfg: &ConfigTree) -> Vec<Insight> {
    let mut out = Vec::new();
    let col = [s.column.as_str()];
    let a = ChartKind::Stats;
    check(&mut out, InsightKind::Missing, &col, s.missing_pct(), cfg.float("insight.missing_pct"), a);
    check(&mut out, InsightKind::Constant, &col, s.n_distinct as f64, 1.0, a);
    check(&mut out, InsightKind::HighCardinality, &col, s.n_distinct as f64, cfg.int("insight.cardinality") as f64, a);
    out
}

/// Pearson chi-square statistic and p-value against equal class frequencies.
/// `None` when there are fewer than two classes or fewer than five expected per class.
pub fn chi_square_uniform(counts: &[u64]) -> Option<(f64, f64)> {
    let k = counts.len();
    let total: u64 = counts.iter().sum();
    if k < 2 || total < 5 * k as u64 {
        return None;
    }
    let expected = total as f64 / k as f64;
    let stat: f64 = counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
    Some((stat, chi_square_sf(stat, (k - 1) as f64)))
}

pub fn test_uniform(column: &str, counts: &[u64], anchor: ChartKind, cfg: &ConfigTree) -> Option<Insight> {
    let (_, p) = chi_square_uniform(counts)?;
    let threshold = cfg.float("insight.uniform_p");
    InsightKind::Uniform.fires(p, threshold).then(|| Insight::new(InsightKind::Uniform, &[column], p, threshold, anchor))
}

/// D'Agostino-Pearson K² statistic and its chi-square (2 df) p-value.
/// `None` below 20 values or for zero variance.
pub fn dagostino_k2(values: &[f64]) -> Option<(f64, f64)> {
    let n = values.len();
    if n < 20 {
        return None;
    }
    let m = Moments::from_slice(values);
    let (g1, b2) = (m.biased_skewness(), m.biased_kurtosis());
    if !g1.is_finite() || !b2.is_finite() {
        return None;
    }
    let n = n as f64;

    // skewness z-score
    let y = g1 * ((n + 1.0) * (n + 3.0) / (6.0 * (n - 2.0))).sqrt();
    let beta2 = 3.0 * (n * n + 27.0 * n - 70.0) * (n + 1.0) * (n + 3.0) / ((n - 2.0) * (n + 5.0) * (n + 7.0) * (n + 9.0));
    let w2 = -1.0 + (2.0 * (beta2 - 1.0)).sqrt();
    let delta = 1.0 / (0.5 * w2.ln()).sqrt();
    let alpha = (2.0 / (w2 - 1.0)).sqrt();
    let y = if y == 0.0 { 1.0 } else { y };
    let z_skew = delta * (y / alpha + ((y / alpha).powi(2) + 1.0).sqrt()).ln();

    // kurtosis z-score
    let e = 3.0 * (n - 1.0) / (n + 1.0);
    let var_b2 = 24.0 * n * (n - 2.0) * (n - 3.0) / ((n + 1.0) * (n + 1.0) * (n + 3.0) * (n + 5.0));
    let x = (b2 - e) / var_b2.sqrt();
    let sqrt_beta1 = 6.0 * (n * n - 5.0 * n + 2.0) / ((n + 7.0) * (n + 9.0))
        * (6.0 * (n + 3.0) * (n + 5.0) / (n * (n - 2.0) * (n - 3.0))).sqrt();
    let a = 6.0 + 8.0 / sqrt_beta1 * (2.0 / sqrt_beta1 + (1.0 + 4.0 / (sqrt_beta1 * sqrt_beta1)).sqrt());
    let term1 = 1.0 - 2.0 / (9.0 * a);
    let denom = 1.0 + x * (2.0 / (a - 4.0)).sqrt();
    if denom == 0.0 {
        return None;
    }
    let term2 = denom.signum() * ((1.0 - 2.0 / a) / denom.abs()).cbrt();
    let z_kurt = (term1 - term2) / (2.0 / (9.0 * a)).sqrt();

    let k2 = z_skew * z_skew + z_kurt * z_kurt;
    Some((k2, chi_square_sf(k2, 2.0)))
}

/// Normality insight on at most `insight.normal_sample` seeded values.
pub fn test_normal(column: &str, values: &[f64], anchor: ChartKind, cfg: &ConfigTree) -> Option<Insight> {
    let cap = cfg.count("insight.normal_sample");
    let sample;
    let used = if values.len() > cap {
        sample = take_indices(values, &sample_indices(values.len(), cap, cfg.int("insight.seed") as u64));
        &sample[..]
    } else {
        values
    };
    let (_, p) = dagostino_k2(used)?;
    let threshold = cfg.float("insight.normal_p");
    InsightKind::Normal.fires(p, threshold).then(|| Insight::new(InsightKind::Normal, &[column], p, threshold, anchor))
}

/// KS-distance insight for a pair of distributions, given D and both sample sizes.
pub fn similarity_insight(kind: InsightKind, cols: [&str; 2], d: f64, sizes: (u64, u64), anchor: ChartKind, cfg: &ConfigTree) -> Option<Insight> {
    if sizes.0 < 20 || sizes.1 < 20 || d.is_nan() {
        return None;
    }
    let threshold = cfg.float("insight.ks_d");
    kind.fires(d, threshold).then(|| Insight::new(kind, &cols, d, threshold, anchor))
}

pub fn test_similar(names: [&str; 2], a: &[f64], b: &[f64], anchor: ChartKind, cfg: &ConfigTree) -> Option<Insight> {
    let sort = |v: &[f64]| {
        let mut v: Vec<f64> = v.iter().copied().filter(|x| x.is_finite()).collect();
        v.sort_by(total_cmp);
        v
    };
    let (a, b) = (sort(a), sort(b));
    let d = ks_statistic(&a, &b);
    similarity_insight(InsightKind::SimilarDistribution, names, d, (a.len() as u64, b.len() as u64), anchor, cfg)
}

/// HighCorrelation per unordered pair across the given matrices. A pair flagged
/// by several methods is reported once, for the method with the largest |r|
/// (earlier methods win ties).
pub fn detect_corr_insights(matrices: &[&CorrMatrix], cfg: &ConfigTree) -> Vec<Insight> {
    let threshold = cfg.float("insight.corr");
    let mut best: Vec<((String, String), f64, ChartKind)> = Vec::new();
    for m in matrices {
        let k = m.columns.len();
        for i in 0..k {
            for j in i + 1..k {
                let r = m.values[i][j];
                if r.is_nan() || !InsightKind::HighCorrelation.fires(r, threshold) {
                    continue;
                }
                let pair = (m.columns[i].clone(), m.columns[j].clone());
                let anchor = ChartKind::CorrHeatmap(m.method);
                match best.iter_mut().find(|(p, _, _)| *p == pair) {
                    Some(entry) if r.abs() > entry.1.abs() => {
                        entry.1 = r;
                        entry.2 = anchor;
                    }
                    Some(_) => {}
                    None => best.push((pair, r, anchor)),
                }
            }
        }
    }
    best.into_iter()
        .map(|((a, b), r, anchor)| Insight::new(InsightKind::HighCorrelation, &[&a, &b], r, threshold, anchor))
        .collect()
}
