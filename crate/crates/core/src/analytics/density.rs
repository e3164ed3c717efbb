//! Kernel density estimate and normal Q-Q points.

use super::quantile::type7;
use super::special::normal_ppf;
use crate::error::{EdaError, Result};
use crate::scalar::Scalar;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KdeCurve {
    pub x: Vec<f64>,
    pub density: Vec<f64>,
    pub bandwidth: f64,
    /// Values the estimate was computed on.
    pub n_used: usize,
    /// Finite values available before sampling.
    pub n_total: usize,
}

impl KdeCurve {
    pub fn sampled(&self) -> bool {
        self.n_used < self.n_total
    }
}

/// Silverman's rule of thumb, `0.9 * min(sd, IQR / 1.34) * n^(-1/5)`.
///
/// `sorted` must be ascending. A zero IQR falls back to the standard deviation.
pub fn silverman_bandwidth<T: Scalar>(sorted: &[T], std: T) -> T {
    let n = T::from_count(sorted.len());
    let iqr = type7(sorted, T::lit(0.75)) - type7(sorted, T::lit(0.25));
    let robust = iqr / T::lit(1.34);
    let spread = if robust > T::zero() { std.min(robust) } else { std };
    T::lit(0.9) * spread * n.powf(T::lit(-0.2))
}

/// Gaussian KDE on `grid_points` uniform points over `[min - 3h, max + 3h]`.
pub fn gaussian_kde<T: Scalar>(sorted: &[T], grid_points: usize) -> Result<(Vec<T>, Vec<T>, T)> {
    if sorted.len() < 2 {
        return Err(EdaError::DegenerateSpread("KDE needs at least two finite values".into()));
    }
    let std = super::moments::Moments::from_slice(sorted).std();
    if !(std > T::zero()) {
        return Err(EdaError::DegenerateSpread("values have zero spread".into()));
    }
    let h = silverman_bandwidth(sorted, std);
    let three = T::lit(3.0);
    let lo = sorted[0] - three * h;
    let hi = sorted[sorted.len() - 1] + three * h;
    let points = grid_points.max(2);
    let step = (hi - lo) / T::from_count(points - 1);
    let norm = T::one() / (T::from_count(sorted.len()) * h * (T::TAU()).sqrt());
    // only kernels within 8h contribute measurably; sorted input lets us window them
    let reach = T::lit(8.0) * h;
    let mut xs = Vec::with_capacity(points);
    let mut ys = Vec::with_capacity(points);
    let mut start = 0usize;
    for i in 0..points {
        let x = if i == points - 1 { hi } else { lo + step * T::from_count(i) };
        while start < sorted.len() && sorted[start] < x - reach {
            start += 1;
        }
        let mut acc = T::zero();
        for &v in &sorted[start..] {
            if v > x + reach {
                break;
            }
            let z = (x - v) / h;
            acc = acc + (-(z * z) / T::lit(2.0)).exp();
        }
        xs.push(x);
        ys.push(acc * norm);
    }
    Ok((xs, ys, h))
}

pub fn trapezoid<T: Scalar>(x: &[T], y: &[T]) -> T {
    x.windows(2).zip(y.windows(2)).map(|(xw, yw)| (xw[1] - xw[0]) * (yw[0] + yw[1]) / T::lit(2.0)).sum()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QqPoints {
    pub theoretical: Vec<f64>,
    pub sample: Vec<f64>,
}

/// Pairs `(mu + sigma * z_p, sample quantile at p)` for `p = (i - 0.5) / n_points`.
pub fn qq_normal<T: Scalar>(sorted: &[T], mean: T, std: T, n_points: usize) -> Result<(Vec<T>, Vec<T>)> {
    if sorted.len() < 2 {
        return Err(EdaError::DegenerateSpread("Q-Q plot needs at least two finite values".into()));
    }
    if !(std > T::zero()) {
        return Err(EdaError::DegenerateSpread("values have zero spread".into()));
    }
    let m = T::from_count(n_points.max(1));
    let mut theo = Vec::with_capacity(n_points);
    let mut samp = Vec::with_capacity(n_points);
    for i in 1..=n_points.max(1) {
        let p = (T::from_count(i) - T::lit(0.5)) / m;
        theo.push(mean + std * normal_ppf(p));
        samp.push(type7(sorted, p));
    }
    Ok((theo, samp))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_distr::{Distribution, StandardNormal};

    #[test]
    fn silverman_formula() {
        // sd = 1 with a wide IQR: h = 0.9 * 100^(-1/5)
        let mut v: Vec<f64> = (0..100).map(|i| if i < 50 { -1.0 } else { 1.0 }).collect();
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let std = super::super::moments::Moments::from_slice(&v).std();
        let h = silverman_bandwidth(&v, 1.0);
        assert!((h - 0.9 * 100f64.powf(-0.2)).abs() < 1e-12);
        assert!(std > 1.0);
    }

    #[test]
    fn symmetric_data_gives_symmetric_curve() {
        let v: Vec<f64> = (-20..=20).map(|i| i as f64 / 4.0).collect();
        let (x, y, _) = gaussian_kde(&v, 201).unwrap();
        for i in 0..x.len() {
            let j = x.len() - 1 - i;
            assert!((x[i] + x[j]).abs() < 1e-9);
            assert!((y[i] - y[j]).abs() < 1e-9);
        }
    }

    #[test]
    fn density_integrates_to_one() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let mut v: Vec<f64> = (0..2000).map(|_| StandardNormal.sample(&mut rng)).collect();
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let (x, y, _) = gaussian_kde(&v, 200).unwrap();
        let area = trapezoid(&x, &y);
        assert!((0.99..=1.01).contains(&area), "{area}");
    }

    #[test]
    fn kde_rejects_constant() {
        assert!(matches!(gaussian_kde(&[2.0, 2.0, 2.0], 10), Err(EdaError::DegenerateSpread(_))));
    }

    #[test]
    fn qq_of_exact_normal_quantiles_is_identity() {
        // 21 values whose odd order statistics are exactly z((i - 0.5) / 10), so the
        // type-7 sample quantile at every plotting position lands on one of them
        let m = 10;
        let z = |i: usize| normal_ppf((i as f64 - 0.5) / m as f64);
        let mut v = vec![z(1) - 1.0];
        for i in 1..=m {
            v.push(z(i));
            v.push(if i < m { (z(i) + z(i + 1)) / 2.0 } else { z(i) + 1.0 });
        }
        assert_eq!(v.len(), 21);
        let (theo, samp) = qq_normal(&v, 0.0, 1.0, m).unwrap();
        for (t, s) in theo.iter().zip(&samp) {
            assert!((t - s).abs() < 1e-6, "{t} {s}");
        }
        assert!(qq_normal(&[1.0, 1.0], 1.0, 0.0, 10).is_err());
    }
}
