//! Mergeable central moments and per-column numeric summaries.

use crate::scalar::Scalar;
use std::collections::HashSet;

/// Count, mean and central moment sums up to order four.
///
/// Partials built from disjoint samples combine with [`Moments::merge`] using
/// the pairwise update formulas for higher-order central moments, so the
/// result does not depend on how the sample was partitioned (up to rounding).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments<T> {
    pub count: usize,
    pub mean: T,
    pub m2: T,
    pub m3: T,
    pub m4: T,
}

impl<T: Scalar> Default for Moments<T> {
    fn default() -> Self {
        Moments { count: 0, mean: T::zero(), m2: T::zero(), m3: T::zero(), m4: T::zero() }
    }
}

impl<T: Scalar> Moments<T> {
    /// Two-pass evaluation over a slice.
    pub fn from_slice(values: &[T]) -> Self {
        if values.is_empty() {
            return Self::default();
        }
        let n = T::from_count(values.len());
        let mean = values.iter().copied().sum::<T>() / n;
        let (mut m2, mut m3, mut m4) = (T::zero(), T::zero(), T::zero());
        for &v in values {
            let d = v - mean;
            let d2 = d * d;
            m2 = m2 + d2;
            m3 = m3 + d2 * d;
            m4 = m4 + d2 * d2;
        }
        Moments { count: values.len(), mean, m2, m3, m4 }
    }

    pub fn merge(&self, other: &Self) -> Self {
        if other.count == 0 {
            return *self;
        }
        if self.count == 0 {
            return *other;
        }
        let na = T::from_count(self.count);
        let nb = T::from_count(other.count);
        let n = na + nb;
        let delta = other.mean - self.mean;
        let d2 = delta * delta;
        let d3 = d2 * delta;
        let d4 = d2 * d2;
        let three = T::lit(3.0);
        let four = T::lit(4.0);
        let six = T::lit(6.0);

        let mean = self.mean + delta * nb / n;
        let m2 = self.m2 + other.m2 + d2 * na * nb / n;
        let m3 = self.m3 + other.m3 + d3 * na * nb * (na - nb) / (n * n)
            + three * delta * (na * other.m2 - nb * self.m2) / n;
        let m4 = self.m4
            + other.m4
            + d4 * na * nb * (na * na - na * nb + nb * nb) / (n * n * n)
            + six * d2 * (na * na * other.m2 + nb * nb * self.m2) / (n * n)
            + four * delta * (na * other.m3 - nb * self.m3) / n;
        Moments { count: self.count + other.count, mean, m2, m3, m4 }
    }

    /// Sample variance (n - 1 denominator).
    pub fn variance(&self) -> T {
        if self.count < 2 {
            return T::nan();
        }
        (self.m2 / T::from_count(self.count - 1)).max(T::zero())
    }

    pub fn std(&self) -> T {
        self.variance().sqrt()
    }

    /// Bias-corrected sample skewness (adjusted Fisher-Pearson G1).
    pub fn skewness(&self) -> T {
        let n = self.count;
        if n < 3 || self.m2 <= T::zero() {
            return T::nan();
        }
        let nf = T::from_count(n);
        let g1 = self.biased_skewness();
        g1 * (nf * (nf - T::one())).sqrt() / (nf - T::lit(2.0))
    }

    /// Population skewness g1 = m3 / m2^(3/2).
    pub fn biased_skewness(&self) -> T {
        if self.count == 0 || self.m2 <= T::zero() {
            return T::nan();
        }
        let nf = T::from_count(self.count);
        let m2 = self.m2 / nf;
        let m3 = self.m3 / nf;
        m3 / m2.powf(T::lit(1.5))
    }

    /// Pearson kurtosis b2 = m4 / m2^2 (normal = 3).
    pub fn biased_kurtosis(&self) -> T {
        if self.count == 0 || self.m2 <= T::zero() {
            return T::nan();
        }
        let nf = T::from_count(self.count);
        let m2 = self.m2 / nf;
        let m4 = self.m4 / nf;
        m4 / (m2 * m2)
    }

    /// Bias-corrected excess kurtosis (G2).
    pub fn kurtosis(&self) -> T {
        let n = self.count;
        if n < 4 || self.m2 <= T::zero() {
            return T::nan();
        }
        let nf = T::from_count(n);
        let one = T::one();
        let g2 = self.biased_kurtosis() - T::lit(3.0);
        ((nf + one) * g2 + T::lit(6.0)) * (nf - one) / ((nf - T::lit(2.0)) * (nf - T::lit(3.0)))
    }
}

/// Mergeable per-chunk summary of a numerical column.
#[derive(Debug, Clone, PartialEq)]
pub struct StatsPartial<T> {
    /// Rows seen, missing included.
    pub n: usize,
    pub n_missing: usize,
    pub n_infinite: usize,
    pub n_zero: usize,
    pub n_negative: usize,
    pub sum: T,
    pub moments: Moments<T>,
    /// Over finite values only.
    pub min: T,
    pub max: T,
    /// Bit patterns of every observed value (infinities included).
    pub distinct: HashSet<u64>,
}

impl<T: Scalar> Default for StatsPartial<T> {
    fn default() -> Self {
        StatsPartial {
            n: 0,
            n_missing: 0,
            n_infinite: 0,
            n_zero: 0,
            n_negative: 0,
            sum: T::zero(),
            moments: Moments::default(),
            min: T::infinity(),
            max: T::neg_infinity(),
            distinct: HashSet::new(),
        }
    }
}

impl<T: Scalar> StatsPartial<T> {
    /// Partial over a chunk; `None` marks a missing cell.
    pub fn from_values<I: IntoIterator<Item = Option<T>>>(values: I) -> Self {
        let mut p = Self::default();
        let mut finite = Vec::new();
        for v in values {
            p.n += 1;
            let Some(v) = v else {
                p.n_missing += 1;
                continue;
            };
            let bits = if v == T::zero() { 0u64 } else { v.to_f64_lossy().to_bits() };
            p.distinct.insert(bits);
            if v.is_infinite() {
                p.n_infinite += 1;
                if v < T::zero() {
                    p.n_negative += 1;
                }
                continue;
            }
            if v == T::zero() {
                p.n_zero += 1;
            } else if v < T::zero() {
                p.n_negative += 1;
            }
            p.min = p.min.min(v);
            p.max = p.max.max(v);
            finite.push(v);
        }
        p.sum = finite.iter().copied().sum();
        p.moments = Moments::from_slice(&finite);
        p
    }

    pub fn merge(&self, other: &Self) -> Self {
        let mut distinct = self.distinct.clone();
        distinct.extend(other.distinct.iter().copied());
        StatsPartial {
            n: self.n + other.n,
            n_missing: self.n_missing + other.n_missing,
            n_infinite: self.n_infinite + other.n_infinite,
            n_zero: self.n_zero + other.n_zero,
            n_negative: self.n_negative + other.n_negative,
            sum: self.sum + other.sum,
            moments: self.moments.merge(&other.moments),
            min: self.min.min(other.min),
            max: self.max.max(other.max),
            distinct,
        }
    }

    pub fn finite_count(&self) -> usize {
        self.moments.count
    }

    pub fn n_distinct(&self) -> usize {
        self.distinct.len()
    }

    /// `[min, max]` of finite values, if any.
    pub fn range(&self) -> Option<(T, T)> {
        (self.moments.count > 0).then_some((self.min, self.max))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn naive(values: &[f64]) -> (f64, f64, f64, f64) {
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let m = |k: i32| values.iter().map(|v| (v - mean).powi(k)).sum::<f64>() / n;
        let (m2, m3, m4) = (m(2), m(3), m(4));
        let var = m2 * n / (n - 1.0);
        let g1 = m3 / m2.powf(1.5);
        let skew = g1 * (n * (n - 1.0)).sqrt() / (n - 2.0);
        let g2 = m4 / (m2 * m2) - 3.0;
        let kurt = ((n + 1.0) * g2 + 6.0) * (n - 1.0) / ((n - 2.0) * (n - 3.0));
        (mean, var, skew, kurt)
    }

    #[test]
    fn partial_of_one_two_three() {
        let p = StatsPartial::from_values([Some(1.0f64), Some(2.0), Some(3.0)]);
        assert_eq!(p.n, 3);
        assert_eq!(p.sum, 6.0);
        assert_eq!((p.min, p.max), (1.0, 3.0));
        assert!((p.moments.m2 - 2.0).abs() < 1e-15);
    }

    #[test]
    fn all_missing_partial() {
        let p = StatsPartial::<f64>::from_values([None, None]);
        assert_eq!((p.n, p.n_missing, p.finite_count()), (2, 2, 0));
        assert!(p.range().is_none());
    }

    #[test]
    fn infinities_excluded_from_moments() {
        let p = StatsPartial::from_values([Some(1.0f64), Some(f64::INFINITY)]);
        assert_eq!(p.n_infinite, 1);
        assert_eq!(p.moments.mean, 1.0);
        assert_eq!(p.max, 1.0);
        assert_eq!(p.n_distinct(), 2);
    }

    #[test]
    fn merge_matches_single_pass() {
        let a = StatsPartial::from_values([Some(1.0f64), Some(2.0)]);
        let b = StatsPartial::from_values([Some(3.0f64)]);
        let whole = StatsPartial::from_values([Some(1.0f64), Some(2.0), Some(3.0)]);
        let m = a.merge(&b);
        assert!((m.moments.mean - whole.moments.mean).abs() < 1e-12);
        assert!((m.moments.m2 - whole.moments.m2).abs() < 1e-12);
        assert_eq!(m.merge(&StatsPartial::default()), m);
    }

    #[test]
    fn skew_kurtosis_against_naive() {
        let v = [2.0, 8.0, 0.0, 4.0, 1.0, 9.0, 9.0, 0.0, 3.5, 11.25];
        let (mean, var, skew, kurt) = naive(&v);
        let m = Moments::from_slice(&v);
        assert!((m.mean - mean).abs() < 1e-12);
        assert!((m.variance() - var).abs() < 1e-12);
        assert!((m.skewness() - skew).abs() < 1e-12);
        assert!((m.kurtosis() - kurt).abs() < 1e-12);
    }

    #[test]
    fn works_in_single_precision() {
        let m = Moments::from_slice(&[1.0f32, 2.0, 3.0, 4.0]);
        assert!((m.variance() - 5.0 / 3.0).abs() < 1e-6);
    }

    proptest! {
        #[test]
        fn merge_is_associative(
            a in proptest::collection::vec(-1e3f64..1e3, 0..30),
            b in proptest::collection::vec(-1e3f64..1e3, 0..30),
            c in proptest::collection::vec(-1e3f64..1e3, 0..30),
        ) {
            let (pa, pb, pc) = (Moments::from_slice(&a), Moments::from_slice(&b), Moments::from_slice(&c));
            let left = pa.merge(&pb).merge(&pc);
            let right = pa.merge(&pb.merge(&pc));
            let mut all = a.clone();
            all.extend(&b);
            all.extend(&c);
            let direct = Moments::from_slice(&all);
            let scale = |x: f64| 1e-9 * x.abs().max(1.0);
            prop_assert_eq!(left.count, right.count);
            prop_assert!((left.mean - right.mean).abs() <= scale(direct.mean));
            prop_assert!((left.m2 - right.m2).abs() <= scale(direct.m2));
            prop_assert!((left.m3 - direct.m3).abs() <= 1e-7 * direct.m2.powf(1.5).max(1.0));
            prop_assert!((left.m4 - direct.m4).abs() <= 1e-7 * (direct.m2 * direct.m2).max(1.0));
        }
    }
}
