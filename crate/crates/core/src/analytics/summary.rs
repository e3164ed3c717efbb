//! Column and dataset summaries.

use super::moments::StatsPartial;
use super::quantile::{type7, SUMMARY_PROBS};
use crate::frame::DType;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuantileValue {
    pub p: f64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ColumnStats {
    pub column: String,
    pub n: usize,
    pub n_missing: usize,
    pub n_distinct: usize,
    pub n_infinite: usize,
    pub n_zero: usize,
    pub n_negative: usize,
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    pub std: f64,
    pub variance: f64,
    pub skewness: f64,
    pub kurtosis: f64,
    pub sum: f64,
    pub quantiles: Vec<QuantileValue>,
}

impl ColumnStats {
    /// Combine merged moments with the column's ascending finite values.
    pub fn from_parts(column: &str, partial: &StatsPartial<f64>, sorted_finite: &[f64]) -> Self {
        let m = &partial.moments;
        let (min, max) = partial.range().unwrap_or((f64::NAN, f64::NAN));
        let quantiles = SUMMARY_PROBS
            .iter()
            .map(|&p| QuantileValue { p, value: if sorted_finite.is_empty() { f64::NAN } else { type7(sorted_finite, p) } })
            .collect();
        ColumnStats {
            column: column.to_owned(),
            n: partial.n,
            n_missing: partial.n_missing,
            n_distinct: partial.n_distinct(),
            n_infinite: partial.n_infinite,
            n_zero: partial.n_zero,
            n_negative: partial.n_negative,
            min,
            max,
            mean: if m.count > 0 { m.mean } else { f64::NAN },
            std: m.std(),
            variance: m.variance(),
            skewness: m.skewness(),
            kurtosis: m.kurtosis(),
            sum: partial.sum,
            quantiles,
        }
    }

    pub fn quantile(&self, p: f64) -> Option<f64> {
        self.quantiles.iter().find(|q| q.p == p).map(|q| q.value)
    }

    pub fn present(&self) -> usize {
        self.n - self.n_missing
    }

    pub fn missing_pct(&self) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            100.0 * self.n_missing as f64 / self.n as f64
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CategoricalStats {
    pub column: String,
    pub n: usize,
    pub n_missing: usize,
    pub n_distinct: usize,
    pub mode: Option<String>,
    pub mode_count: u64,
}

impl CategoricalStats {
    pub fn missing_pct(&self) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            100.0 * self.n_missing as f64 / self.n as f64
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ColumnType {
    pub name: String,
    pub dtype: DType,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DatasetStats {
    pub rows: usize,
    pub columns: usize,
    pub n_numerical: usize,
    pub n_categorical: usize,
    pub missing_cells: u64,
    pub missing_pct: f64,
    pub duplicate_rows: u64,
    pub column_types: Vec<ColumnType>,
}

/// Rows that repeat an earlier row exactly (missing cells compare equal).
pub fn count_duplicates(keys: &[Vec<u64>]) -> u64 {
    let mut seen = std::collections::HashSet::with_capacity(keys.len());
    keys.iter().filter(|k| !seen.insert(k.as_slice())).count() as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stats_from_parts() {
        let values = [1.0, 2.0, 3.0, 4.0];
        let p = StatsPartial::from_values(values.iter().map(|v| Some(*v)).chain([None]));
        let s = ColumnStats::from_parts("x", &p, &values);
        assert_eq!((s.n, s.n_missing, s.present()), (5, 1, 4));
        assert_eq!(s.quantile(0.5), Some(2.5));
        assert_eq!(s.mean, 2.5);
        assert!((s.missing_pct() - 20.0).abs() < 1e-12);
        let qs: Vec<f64> = s.quantiles.iter().map(|q| q.value).collect();
        assert!(s.min <= qs[0] && qs.windows(2).all(|w| w[0] <= w[1]) && qs[4] <= s.max);
    }

    #[test]
    fn duplicates() {
        let keys = vec![vec![1, 2], vec![1, 3], vec![1, 2], vec![1, 2]];
        assert_eq!(count_duplicates(&keys), 2);
        assert_eq!(count_duplicates(&[]), 0);
    }
}
