use super::ConfigValue;
use crate::analytics::correlation::CorrMethod;
use crate::chart::ChartKind;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValueType {
    Bool,
    Int,
    Float,
    Str,
    StrList,
}

impl ValueType {
    pub fn as_str(self) -> &'static str {
        match self {
            ValueType::Bool => "bool",
            ValueType::Int => "int",
            ValueType::Float => "float",
            ValueType::Str => "string",
            ValueType::StrList => "string-list",
        }
    }
}

impl fmt::Display for ValueType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy)]
pub enum DefaultValue {
    Bool(bool),
    Int(i64),
    Float(f64),
    List(&'static [&'static str]),
}

impl DefaultValue {
    pub fn value(self) -> ConfigValue {
        match self {
            DefaultValue::Bool(b) => ConfigValue::Bool(b),
            DefaultValue::Int(i) => ConfigValue::Int(i),
            DefaultValue::Float(x) => ConfigValue::Float(x),
            DefaultValue::List(xs) => ConfigValue::List(xs.iter().map(|s| s.to_string()).collect()),
        }
    }

    fn ty(self) -> ValueType {
        match self {
            DefaultValue::Bool(_) => ValueType::Bool,
            DefaultValue::Int(_) => ValueType::Int,
            DefaultValue::Float(_) => ValueType::Float,
            DefaultValue::List(_) => ValueType::StrList,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct KeySpec {
    pub key: &'static str,
    pub default: DefaultValue,
    pub description: &'static str,
    pub owners: &'static [ChartKind],
}

impl KeySpec {
    pub fn ty(&self) -> ValueType {
        self.default.ty()
    }
}

/// Named-argument sugar: each shortcut fans out to every key with this suffix.
pub const SHORTCUTS: [(&str, &str); 2] = [("bins", ".bins"), ("top_k", ".top_k")];

use ChartKind as K;
use CorrMethod::{Kendall, Pearson, Spearman};

const CORR: &[ChartKind] = &[
    K::CorrHeatmap(Pearson),
    K::CorrHeatmap(Spearman),
    K::CorrHeatmap(Kendall),
    K::CorrRank(Pearson),
    K::CorrRank(Spearman),
    K::CorrRank(Kendall),
];
const CROSS: &[ChartKind] = &[K::NestedBar, K::StackedBar, K::CrossHeatmap];
const BOXES: &[ChartKind] = &[K::Box, K::BinnedBox, K::GroupedBox];
const HISTS: &[ChartKind] = &[K::Histogram, K::CategoryHistograms];
const SCATTERS: &[ChartKind] = &[K::Scatter, K::CorrScatter];

macro_rules! spec {
    ($key:literal, $default:expr, $owners:expr, $desc:literal) => {
        KeySpec { key: $key, default: $default, description: $desc, owners: $owners }
    };
}

pub static REGISTRY: &[KeySpec] = &[
    spec!("overview.enabled", DefaultValue::Bool(true), &[K::Overview], "Show the dataset overview table"),
    spec!("stats.enabled", DefaultValue::Bool(true), &[K::Stats], "Show the column statistics table"),
    spec!("hist.bins", DefaultValue::Int(50), HISTS, "Number of histogram bins"),
    spec!("hist.enabled", DefaultValue::Bool(true), HISTS, "Show histograms"),
    spec!("kde.bins", DefaultValue::Int(50), &[K::Kde], "Number of histogram bins drawn under the density curve"),
    spec!("kde.grid_points", DefaultValue::Int(200), &[K::Kde], "Points at which the density is evaluated"),
    spec!("kde.sample", DefaultValue::Int(10_000), &[K::Kde], "Maximum values used to estimate the density"),
    spec!("kde.enabled", DefaultValue::Bool(true), &[K::Kde], "Show the KDE plot"),
    spec!("qq.points", DefaultValue::Int(100), &[K::QqNormal], "Number of quantile pairs in the Q-Q plot"),
    spec!("qq.enabled", DefaultValue::Bool(true), &[K::QqNormal], "Show the normal Q-Q plot"),
    spec!("box.bins", DefaultValue::Int(50), &[K::BinnedBox], "Number of x bins for binned box plots"),
    spec!("box.max_outliers", DefaultValue::Int(100), BOXES, "Maximum outliers drawn per box"),
    spec!("box.enabled", DefaultValue::Bool(true), BOXES, "Show box plots"),
    spec!("group.top_k", DefaultValue::Int(10), &[K::GroupedBox, K::CategoryHistograms], "Most frequent categories shown per group"),
    spec!("bar.top_k", DefaultValue::Int(10), &[K::Bar], "Most frequent categories shown as bars"),
    spec!("bar.enabled", DefaultValue::Bool(true), &[K::Bar], "Show the bar chart"),
    spec!("pie.top_k", DefaultValue::Int(10), &[K::Pie], "Most frequent categories shown as slices"),
    spec!("pie.enabled", DefaultValue::Bool(true), &[K::Pie], "Show the pie chart"),
    spec!("scatter.sample", DefaultValue::Int(1000), SCATTERS, "Maximum points drawn in a scatter plot"),
    spec!("scatter.seed", DefaultValue::Int(0), SCATTERS, "Seed for scatter point sampling"),
    spec!("scatter.enabled", DefaultValue::Bool(true), SCATTERS, "Show scatter plots"),
    spec!("hexbin.gridsize", DefaultValue::Int(20), &[K::Hexbin], "Hexagons across the x range"),
    spec!("hexbin.enabled", DefaultValue::Bool(true), &[K::Hexbin], "Show the hexbin plot"),
    spec!("cross.top_k", DefaultValue::Int(10), CROSS, "Most frequent categories per axis"),
    spec!("nested_bar.enabled", DefaultValue::Bool(true), &[K::NestedBar], "Show the nested bar chart"),
    spec!("stacked_bar.enabled", DefaultValue::Bool(true), &[K::StackedBar], "Show the stacked bar chart"),
    spec!("cross_heatmap.enabled", DefaultValue::Bool(true), &[K::CrossHeatmap], "Show the cross-count heat map"),
    spec!("corr.methods", DefaultValue::List(&["pearson", "spearman", "kendall"]), CORR, "Correlation methods to compute"),
    spec!("corr.kendall_cap", DefaultValue::Int(10_000), &[K::CorrHeatmap(Kendall), K::CorrRank(Kendall)], "Maximum rows used for Kendall tau"),
    spec!("corr.seed", DefaultValue::Int(0), &[K::CorrHeatmap(Kendall), K::CorrRank(Kendall)], "Seed for Kendall row sampling"),
    spec!("corr.enabled", DefaultValue::Bool(true), CORR, "Show correlation charts"),
    spec!("corr.max_pairs", DefaultValue::Int(5), &[], "Numerical column pairs shown under Interactions in a report"),
    spec!("missing_bar.enabled", DefaultValue::Bool(true), &[K::MissingBar], "Show the missing-count bar chart"),
    spec!("spectrum.segments", DefaultValue::Int(50), &[K::MissingSpectrum], "Row segments in the missing spectrum"),
    spec!("spectrum.enabled", DefaultValue::Bool(true), &[K::MissingSpectrum], "Show the missing spectrum"),
    spec!("nullity_heatmap.enabled", DefaultValue::Bool(true), &[K::NullityHeatmap], "Show the nullity correlation heat map"),
    spec!("dendrogram.enabled", DefaultValue::Bool(true), &[K::NullityDendrogram], "Show the nullity dendrogram"),
    spec!("impact.bins", DefaultValue::Int(50), &[K::MissingImpact], "Histogram bins for before/after distributions"),
    spec!("impact.top_k", DefaultValue::Int(10), &[K::MissingImpact], "Categories shown for before/after distributions"),
    spec!("impact.enabled", DefaultValue::Bool(true), &[K::MissingImpact], "Show before/after distributions"),
    spec!("ecdf.points", DefaultValue::Int(200), &[K::MissingEcdf], "Maximum steps drawn per empirical CDF"),
    spec!("ecdf.enabled", DefaultValue::Bool(true), &[K::MissingEcdf], "Show the empirical CDF comparison"),
    spec!("insight.missing_pct", DefaultValue::Float(1.0), &[], "Missing percentage above which a column is flagged"),
    spec!("insight.zeros_pct", DefaultValue::Float(5.0), &[], "Zero percentage above which a column is flagged"),
    spec!("insight.flag_negatives", DefaultValue::Bool(false), &[], "Flag columns containing negative values"),
    spec!("insight.cardinality", DefaultValue::Int(50), &[], "Distinct count above which a column is flagged"),
    spec!("insight.skew", DefaultValue::Float(1.0), &[], "Absolute skewness above which a column is flagged"),
    spec!("insight.uniform_p", DefaultValue::Float(0.999), &[], "Chi-square p-value at or above which counts look uniform"),
    spec!("insight.normal_p", DefaultValue::Float(0.99), &[], "Normality test p-value at or above which values look normal"),
    spec!("insight.normal_sample", DefaultValue::Int(10_000), &[], "Maximum values fed to the normality test"),
    spec!("insight.seed", DefaultValue::Int(0), &[], "Seed for insight sampling"),
    spec!("insight.ks_d", DefaultValue::Float(0.05), &[], "KS distance at or below which two distributions look similar"),
    spec!("insight.corr", DefaultValue::Float(0.9), &[], "Absolute correlation at or above which a pair is flagged"),
    spec!("plot.width", DefaultValue::Int(600), &[], "Chart width in pixels"),
    spec!("plot.height", DefaultValue::Int(400), &[], "Chart height in pixels"),
    spec!("data.numeric_threshold", DefaultValue::Float(0.95), &[], "Fraction of parseable values needed to treat a column as numerical"),
];

pub fn lookup(key: &str) -> Option<&'static KeySpec> {
    REGISTRY.iter().find(|s| s.key == key)
}

/// Keys that configure `kind`, in registry order.
pub fn keys_for(kind: ChartKind) -> impl Iterator<Item = &'static KeySpec> {
    REGISTRY.iter().filter(move |s| s.owners.contains(&kind))
}

/// Keys a shortcut fans out to.
pub fn shortcut_targets(name: &str) -> Option<Vec<&'static str>> {
    let (_, suffix) = SHORTCUTS.iter().find(|(n, _)| *n == name)?;
    Some(REGISTRY.iter().filter(|s| s.key.ends_with(suffix)).map(|s| s.key).collect())
}

/// Closest registry key or shortcut name, if any is plausibly a typo of `key`.
pub fn suggest(key: &str) -> Option<String> {
    let candidates = REGISTRY.iter().map(|s| s.key).chain(SHORTCUTS.iter().map(|(n, _)| *n));
    let (best, dist) = candidates.map(|c| (c, levenshtein(key, c))).min_by_key(|(_, d)| *d)?;
    (dist <= (key.len() / 3).max(2)).then(|| best.to_owned())
}

fn levenshtein(a: &str, b: &str) -> usize {
    let b: Vec<char> = b.chars().collect();
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    for (i, ca) in a.chars().enumerate() {
        let mut cur = vec![i + 1; b.len() + 1];
        for (j, cb) in b.iter().enumerate() {
            let sub = prev[j] + usize::from(ca != *cb);
            cur[j + 1] = sub.min(prev[j + 1] + 1).min(cur[j] + 1);
        }
        prev = cur;
    }
    prev[b.len()]
}
