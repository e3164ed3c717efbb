//! Fixtures and naive reference implementations shared by the integration tests.
#![allow(dead_code)]

use eda::frame::Column;
use eda::DataFrame;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, LogNormal, Normal};
use std::path::Path;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Raw cells of a generated frame, kept so the same data can be re-chunked.
#[derive(Debug, Clone)]
pub enum Raw {
    Num(String, Vec<Option<f64>>),
    Cat(String, Vec<Option<String>>),
}

impl Raw {
    pub fn name(&self) -> &str {
        match self {
            Raw::Num(n, _) | Raw::Cat(n, _) => n,
        }
    }
}

pub fn frame(raw: &[Raw], chunk_rows: usize) -> DataFrame {
    let cols = raw
        .iter()
        .map(|r| match r {
            Raw::Num(n, v) => Column::from_f64(n.clone(), v, chunk_rows),
            Raw::Cat(n, v) => Column::from_strs(n.clone(), v, chunk_rows),
        })
        .collect();
    DataFrame::new(cols, "fixture").unwrap()
}

fn numeric_column(r: &mut ChaCha8Rng, n: usize, style: usize, missing: f64) -> Vec<Option<f64>> {
    let normal = Normal::new(10.0, 3.0).unwrap();
    let lognormal = LogNormal::new(0.0, 0.8).unwrap();
    (0..n)
        .map(|_| {
            if r.gen::<f64>() < missing {
                return None;
            }
            Some(match style % 5 {
                0 => normal.sample(r),
                1 => lognormal.sample(r) * 100.0,
                2 => r.gen_range(0..12) as f64, // heavy ties
                3 => r.gen_range(-50.0..50.0),
                _ => (normal.sample(r) * 4.0).round() / 4.0 - 10.0,
            })
        })
        .collect()
}

fn categorical_column(r: &mut ChaCha8Rng, n: usize, levels: usize, missing: f64) -> Vec<Option<String>> {
    (0..n)
        .map(|_| {
            if r.gen::<f64>() < missing {
                None
            } else {
                // skewed level frequencies
                let k = (r.gen::<f64>().powi(2) * levels as f64) as usize;
                Some(format!("L{k}"))
            }
        })
        .collect()
}

/// Mixed-type frame: 2 to 5 numerical and 1 to 3 categorical columns, some missing cells.
pub fn random_raw(seed: u64, n: usize) -> Vec<Raw> {
    let mut r = rng(seed);
    let n_num = r.gen_range(2..=5);
    let n_cat = r.gen_range(1..=3);
    let mut raw = Vec::new();
    for i in 0..n_num {
        let missing = if i == 0 { 0.1 } else { r.gen_range(0.0..0.2) };
        raw.push(Raw::Num(format!("n{i}"), numeric_column(&mut r, n, i + seed as usize, missing)));
    }
    for i in 0..n_cat {
        let levels = r.gen_range(2..15);
        let missing = r.gen_range(0.0..0.15);
        raw.push(Raw::Cat(format!("c{i}"), categorical_column(&mut r, n, levels, missing)));
    }
    // row order interleaves column types
    raw.sort_by_key(|c| c.name().chars().nth(1).unwrap_or('0'));
    raw
}

/// Synthetic frame with `n_num` numerical and `n_cat` categorical columns and the given missing rate.
pub fn synthetic_raw(seed: u64, n: usize, n_num: usize, n_cat: usize, missing: f64) -> Vec<Raw> {
    let mut r = rng(seed);
    let mut raw = Vec::new();
    for i in 0..n_num {
        raw.push(Raw::Num(format!("num{i}"), numeric_column(&mut r, n, i, missing)));
    }
    for i in 0..n_cat {
        raw.push(Raw::Cat(format!("cat{i}"), categorical_column(&mut r, n, 4 + 3 * i, missing)));
    }
    raw
}

pub fn write_csv(raw: &[Raw], path: &Path) {
    let mut w = csv::Writer::from_path(path).unwrap();
    w.write_record(raw.iter().map(|c| c.name())).unwrap();
    let n = match &raw[0] {
        Raw::Num(_, v) => v.len(),
        Raw::Cat(_, v) => v.len(),
    };
    for i in 0..n {
        let row: Vec<String> = raw
            .iter()
            .map(|c| match c {
                Raw::Num(_, v) => v[i].map(|x| format!("{x:?}")).unwrap_or_default(),
                Raw::Cat(_, v) => v[i].clone().unwrap_or_default(),
            })
            .collect();
        w.write_record(&row).unwrap();
    }
    w.flush().unwrap();
}

/// Fixed CSV with numerical and categorical columns, some missing cells.
pub fn house_raw(n: usize) -> Vec<Raw> {
    let mut r = rng(42);
    let normal = Normal::new(0.0, 1.0).unwrap();
    let mut price = Vec::new();
    let mut area = Vec::new();
    let mut rooms = Vec::new();
    let mut city = Vec::new();
    let mut kind = Vec::new();
    for i in 0..n {
        let a: f64 = 50.0 + 150.0 * r.gen::<f64>();
        let p = 1000.0 + 20.0 * a + 300.0 * normal.sample(&mut r);
        area.push(Some((a * 10.0).round() / 10.0));
        price.push(if i % 17 == 3 { None } else { Some(p) });
        rooms.push(if i % 23 == 5 { None } else { Some((a / 30.0).floor()) });
        city.push(if i % 29 == 7 { None } else { Some(["Oslo", "Bergen", "Tromso", "Bodo"][r.gen_range(0..4)].to_owned()) });
        kind.push(Some(["flat", "house"][(a > 120.0) as usize].to_owned()));
    }
    vec![
        Raw::Num("price".into(), price),
        Raw::Num("area".into(), area),
        Raw::Cat("city".into(), city),
        Raw::Num("rooms".into(), rooms),
        Raw::Cat("kind".into(), kind),
    ]
}

pub mod naive {
    //! Textbook formulas, written for clarity rather than speed.

    pub fn mean(x: &[f64]) -> f64 {
        x.iter().sum::<f64>() / x.len() as f64
    }

    fn central(x: &[f64], k: i32) -> f64 {
        let m = mean(x);
        x.iter().map(|v| (v - m).powi(k)).sum::<f64>() / x.len() as f64
    }

    pub fn variance(x: &[f64]) -> f64 {
        let n = x.len() as f64;
        central(x, 2) * n / (n - 1.0)
    }

    /// Adjusted Fisher-Pearson skewness G1.
    pub fn skewness(x: &[f64]) -> f64 {
        let n = x.len() as f64;
        let g1 = central(x, 3) / central(x, 2).powf(1.5);
        g1 * (n * (n - 1.0)).sqrt() / (n - 2.0)
    }

    /// Bias-corrected excess kurtosis G2.
    pub fn kurtosis(x: &[f64]) -> f64 {
        let n = x.len() as f64;
        let g2 = central(x, 4) / central(x, 2).powi(2) - 3.0;
        ((n + 1.0) * g2 + 6.0) * (n - 1.0) / ((n - 2.0) * (n - 3.0))
    }

    /// Type-7 quantile: linear interpolation at h = (n - 1) p.
    pub fn quantile(x: &[f64], p: f64) -> f64 {
        let mut s = x.to_vec();
        s.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let h = (s.len() - 1) as f64 * p;
        let lo = h.floor() as usize;
        let hi = (lo + 1).min(s.len() - 1);
        s[lo] + (h - lo as f64) * (s[hi] - s[lo])
    }

    pub fn pearson(x: &[f64], y: &[f64]) -> f64 {
        let (mx, my) = (mean(x), mean(y));
        let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
        let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
        let syy: f64 = y.iter().map(|b| (b - my).powi(2)).sum();
        sxy / (sxx * syy).sqrt()
    }

    /// Average ranks by counting, O(n²).
    pub fn ranks(x: &[f64]) -> Vec<f64> {
        x.iter()
            .map(|v| {
                let less = x.iter().filter(|w| *w < v).count() as f64;
                let equal = x.iter().filter(|w| *w == v).count() as f64;
                less + (equal + 1.0) / 2.0
            })
            .collect()
    }

    pub fn spearman(x: &[f64], y: &[f64]) -> f64 {
        pearson(&ranks(x), &ranks(y))
    }

    /// Kendall tau-b over all pairs.
    pub fn kendall(x: &[f64], y: &[f64]) -> f64 {
        let n = x.len();
        let (mut c, mut d, mut tx, mut ty) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
        for i in 0..n {
            for j in i + 1..n {
                let a = (x[i] - x[j]).signum() * if x[i] == x[j] { 0.0 } else { 1.0 };
                let b = (y[i] - y[j]).signum() * if y[i] == y[j] { 0.0 } else { 1.0 };
                if a == 0.0 && b == 0.0 {
                } else if a == 0.0 {
                    tx += 1.0;
                } else if b == 0.0 {
                    ty += 1.0;
                } else if a == b {
                    c += 1.0;
                } else {
                    d += 1.0;
                }
            }
        }
        (c - d) / ((c + d + tx) * (c + d + ty)).sqrt()
    }

    /// Pairs where both values are finite.
    pub fn complete(x: &[Option<f64>], y: &[Option<f64>]) -> (Vec<f64>, Vec<f64>) {
        x.iter()
            .zip(y)
            .filter_map(|(a, b)| match (a, b) {
                (Some(a), Some(b)) if a.is_finite() && b.is_finite() => Some((*a, *b)),
                _ => None,
            })
            .unzip()
    }
}

/// `|a - b| <= tol * max(1, |a|, |b|)`, treating two NaNs as equal.
pub fn close(a: f64, b: f64, tol: f64) -> bool {
    if a.is_nan() || b.is_nan() {
        return a.is_nan() && b.is_nan();
    }
    if a == b {
        return true;
    }
    (a - b).abs() <= tol * 1f64.max(a.abs()).max(b.abs())
}

/// First difference between two JSON trees, comparing numbers with `close`.
pub fn json_diff(a: &serde_json::Value, b: &serde_json::Value, tol: f64, path: &str) -> Option<String> {
    use serde_json::Value as V;
    match (a, b) {
        (V::Number(x), V::Number(y)) => {
            let (x, y) = (x.as_f64().unwrap(), y.as_f64().unwrap());
            (!close(x, y, tol)).then(|| format!("{path}: {x} vs {y}"))
        }
        (V::Array(x), V::Array(y)) => {
            if x.len() != y.len() {
                return Some(format!("{path}: length {} vs {}", x.len(), y.len()));
            }
            x.iter().zip(y).enumerate().find_map(|(i, (p, q))| json_diff(p, q, tol, &format!("{path}[{i}]")))
        }
        (V::Object(x), V::Object(y)) => {
            if x.len() != y.len() || x.keys().zip(y.keys()).any(|(p, q)| p != q) {
                return Some(format!("{path}: keys differ"));
            }
            x.iter().find_map(|(k, v)| json_diff(v, &y[k], tol, &format!("{path}.{k}")))
        }
        _ => (a != b).then(|| format!("{path}: {a} vs {b}")),
    }
}

/// Normal scores Φ⁻¹((i + 0.5) / n) with small jitter, in a seeded order.
/// Unlike an iid sample these pass a normality test at p ≥ 0.99 reliably.
pub fn normal_scores(n: usize, seed: u64) -> Vec<f64> {
    use rand::seq::SliceRandom;
    let mut r = rng(seed);
    let jitter = Normal::new(0.0, 0.01).unwrap();
    let mut v: Vec<f64> =
        (0..n).map(|i| eda::analytics::special::normal_ppf((i as f64 + 0.5) / n as f64) + jitter.sample(&mut r)).collect();
    v.shuffle(&mut r);
    v
}
