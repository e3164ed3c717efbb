//! Exact quantiles by linear interpolation between order statistics
//! (type 7: `h = (n - 1) p`).

use crate::error::{EdaError, Result};
use crate::scalar::{total_cmp, Scalar};

/// Probabilities reported in the column statistics table.
pub const SUMMARY_PROBS: [f64; 5] = [0.05, 0.25, 0.5, 0.75, 0.95];

/// Type-7 quantile of an ascending slice. Panics on an empty slice.
pub fn type7<T: Scalar>(sorted: &[T], p: T) -> T {
    assert!(!sorted.is_empty(), "quantile of empty sample");
    let n = sorted.len();
    if n == 1 {
        return sorted[0];
    }
    let p = p.max(T::zero()).min(T::one());
    let h = T::from_count(n - 1) * p;
    let lo = h.floor();
    let i = lo.to_usize().unwrap_or(0).min(n - 1);
    if i + 1 >= n {
        return sorted[n - 1];
    }
    let frac = h - lo;
    if frac == T::zero() {
        return sorted[i];
    }
    sorted[i] + frac * (sorted[i + 1] - sorted[i])
}

/// Quantiles of the finite values in `values` (unsorted input).
pub fn quantiles<T: Scalar>(values: &[T], probs: &[T]) -> Result<Vec<T>> {
    let mut finite: Vec<T> = values.iter().copied().filter(|v| v.is_finite()).collect();
    if finite.is_empty() {
        return Err(EdaError::NoData("no finite values for quantiles".into()));
    }
    finite.sort_by(total_cmp);
    Ok(probs.iter().map(|&p| type7(&finite, p)).collect())
}

/// Merge two ascending runs into one ascending run.
pub fn merge_sorted<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if b[j] < a[i] {
            out.push(b[j]);
            j += 1;
        } else {
            out.push(a[i]);
            i += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn midpoint_and_singleton() {
        assert_eq!(type7(&[1.0, 2.0, 3.0, 4.0], 0.5), 2.5);
        for p in [0.0, 0.3, 1.0] {
            assert_eq!(type7(&[5.0], p), 5.0);
        }
        assert!(quantiles::<f64>(&[f64::NAN, f64::INFINITY], &[0.5]).is_err());
    }

    #[test]
    fn random_sample_matches_sorted_index_oracle() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let values: Vec<f64> = (0..1000).map(|_| rng.gen_range(-50.0..50.0)).collect();
        let mut sorted = values.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let probs = SUMMARY_PROBS;
        let got = quantiles(&values, &probs).unwrap();
        for (p, q) in probs.iter().zip(got) {
            let h = 999.0 * p;
            let lo = h.floor() as usize;
            let hi = h.ceil() as usize;
            let expect = sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo]);
            assert_eq!(q, expect);
        }
    }

    #[test]
    fn merge_sorted_runs() {
        assert_eq!(merge_sorted(&[1.0, 3.0, 5.0], &[2.0, 3.0, 6.0]), vec![1.0, 2.0, 3.0, 3.0, 5.0, 6.0]);
        assert_eq!(merge_sorted::<f64>(&[], &[1.0]), vec![1.0]);
    }
}
