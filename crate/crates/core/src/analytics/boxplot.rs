use super::quantile::type7;
use crate::scalar::Scalar;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoxStats {
    /// Group label for grouped box plots, `None` for a whole column.
    pub label: Option<String>,
    pub n: usize,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub iqr: f64,
    pub lower_fence: f64,
    pub upper_fence: f64,
    pub lower_whisker: f64,
    pub upper_whisker: f64,
    /// Ascending, truncated to the configured cap.
    pub outliers: Vec<f64>,
    pub n_outliers: usize,
}

/// Tukey box statistics of an ascending, non-empty slice of finite values.
pub fn tukey<T: Scalar>(sorted: &[T], max_outliers: usize) -> Option<BoxStats> {
    if sorted.is_empty() {
        return None;
    }
    let q1 = type7(sorted, T::lit(0.25));
    let median = type7(sorted, T::lit(0.5));
    let q3 = type7(sorted, T::lit(0.75));
    let iqr = q3 - q1;
    let k = T::lit(1.5);
    let lower_fence = q1 - k * iqr;
    let upper_fence = q3 + k * iqr;
    let lower_whisker = sorted.iter().copied().find(|v| *v >= lower_fence).unwrap_or(q1);
    let upper_whisker = sorted.iter().rev().copied().find(|v| *v <= upper_fence).unwrap_or(q3);
    let outliers: Vec<f64> =
        sorted.iter().filter(|v| **v < lower_fence || **v > upper_fence).map(|v| v.to_f64_lossy()).collect();
    let n_outliers = outliers.len();
    Some(BoxStats {
        label: None,
        n: sorted.len(),
        q1: q1.to_f64_lossy(),
        median: median.to_f64_lossy(),
        q3: q3.to_f64_lossy(),
        iqr: iqr.to_f64_lossy(),
        lower_fence: lower_fence.to_f64_lossy(),
        upper_fence: upper_fence.to_f64_lossy(),
        lower_whisker: lower_whisker.to_f64_lossy(),
        upper_whisker: upper_whisker.to_f64_lossy(),
        outliers: outliers.into_iter().take(max_outliers).collect(),
        n_outliers,
    })
}
