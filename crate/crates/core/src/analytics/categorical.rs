//! Frequency counts over categorical codes.

use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Bar {
    pub label: String,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BarCounts {
    pub bars: Vec<Bar>,
    /// Mass of the categories not shown.
    pub other: u64,
    pub n_distinct: usize,
    pub total: u64,
}

/// Per-code counts; mergeable by elementwise addition.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CodeCounts {
    pub counts: Vec<u64>,
    pub missing: u64,
}

impl CodeCounts {
    pub fn from_codes<I: IntoIterator<Item = Option<u32>>>(codes: I) -> Self {
        let mut cc = CodeCounts::default();
        for c in codes {
            match c {
                Some(code) => {
                    let i = code as usize;
                    if cc.counts.len() <= i {
                        cc.counts.resize(i + 1, 0);
                    }
                    cc.counts[i] += 1;
                }
                None => cc.missing += 1,
            }
        }
        cc
    }

    pub fn merge(&self, other: &Self) -> Self {
        let len = self.counts.len().max(other.counts.len());
        let counts = (0..len)
            .map(|i| self.counts.get(i).copied().unwrap_or(0) + other.counts.get(i).copied().unwrap_or(0))
            .collect();
        CodeCounts { counts, missing: self.missing + other.missing }
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn n_distinct(&self) -> usize {
        self.counts.iter().filter(|c| **c > 0).count()
    }

    /// Observed codes ordered by descending count, ties by label ascending.
    pub fn ranked(&self, dictionary: &[String]) -> Vec<(u32, u64)> {
        let mut v: Vec<(u32, u64)> =
            self.counts.iter().enumerate().filter(|(_, c)| **c > 0).map(|(i, c)| (i as u32, *c)).collect();
        v.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| dictionary[a.0 as usize].cmp(&dictionary[b.0 as usize])));
        v
    }

    pub fn top_k(&self, dictionary: &[String], top_k: usize) -> BarCounts {
        let ranked = self.ranked(dictionary);
        let top_k = top_k.max(1);
        let bars: Vec<Bar> =
            ranked.iter().take(top_k).map(|(c, n)| Bar { label: dictionary[*c as usize].clone(), count: *n }).collect();
        let shown: u64 = bars.iter().map(|b| b.count).sum();
        let total = self.total();
        BarCounts { bars, other: total - shown, n_distinct: ranked.len(), total }
    }

    /// Counts for a fixed list of codes, remaining mass in `other`.
    pub fn restricted(&self, dictionary: &[String], codes: &[u32]) -> BarCounts {
        let bars: Vec<Bar> = codes
            .iter()
            .map(|c| Bar { label: dictionary[*c as usize].clone(), count: self.counts.get(*c as usize).copied().unwrap_or(0) })
            .collect();
        let shown: u64 = bars.iter().map(|b| b.count).sum();
        let total = self.total();
        BarCounts { bars, other: total - shown, n_distinct: self.n_distinct(), total }
    }
}

/// Joint counts of two categorical columns, keyed by code pair.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PairCounts {
    pub cells: BTreeMap<(u32, u32), u64>,
}

impl PairCounts {
    pub fn merge(&self, other: &Self) -> Self {
        let mut cells = self.cells.clone();
        for (k, v) in &other.cells {
            *cells.entry(*k).or_insert(0) += v;
        }
        PairCounts { cells }
    }

    pub fn marginal_x(&self) -> CodeCounts {
        self.marginal(|&(x, _)| x)
    }

    pub fn marginal_y(&self) -> CodeCounts {
        self.marginal(|&(_, y)| y)
    }

    fn marginal(&self, pick: impl Fn(&(u32, u32)) -> u32) -> CodeCounts {
        let mut cc = CodeCounts::default();
        for (key, n) in &self.cells {
            let i = pick(key) as usize;
            if cc.counts.len() <= i {
                cc.counts.resize(i + 1, 0);
            }
            cc.counts[i] += n;
        }
        cc
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossCounts {
    pub x_labels: Vec<String>,
    pub y_labels: Vec<String>,
    /// `counts[i][j]` for x category `i` and y category `j`.
    pub counts: Vec<Vec<u64>>,
    /// Complete pairs outside the shown categories.
    pub other: u64,
    pub total: u64,
}

pub fn cross_counts(pairs: &PairCounts, x_dict: &[String], y_dict: &[String], top_k: usize) -> CrossCounts {
    let xs: Vec<u32> = pairs.marginal_x().ranked(x_dict).into_iter().take(top_k.max(1)).map(|(c, _)| c).collect();
    let ys: Vec<u32> = pairs.marginal_y().ranked(y_dict).into_iter().take(top_k.max(1)).map(|(c, _)| c).collect();
    let counts: Vec<Vec<u64>> =
        xs.iter().map(|x| ys.iter().map(|y| pairs.cells.get(&(*x, *y)).copied().unwrap_or(0)).collect()).collect();
    let total: u64 = pairs.cells.values().sum();
    let shown: u64 = counts.iter().flatten().sum();
    CrossCounts {
        x_labels: xs.iter().map(|c| x_dict[*c as usize].clone()).collect(),
        y_labels: ys.iter().map(|c| y_dict[*c as usize].clone()).collect(),
        counts,
        other: total - shown,
        total,
    }
}
