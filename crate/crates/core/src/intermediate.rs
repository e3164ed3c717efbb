//! Values flowing between graph nodes.
//!
//! Render-ready variants serialize with a `type` tag; working values (sorted
//! arrays, partial aggregates) are internal to the graph and never exported.

use crate::analytics::bivariate::{Bounds, HexCounts, HexbinGrid, ScatterPoints};
use crate::analytics::boxplot::BoxStats;
use crate::analytics::categorical::{BarCounts, CodeCounts, CrossCounts, PairCounts};
use crate::analytics::correlation::{CoMoments, CorrMatrix, CorrRanking};
use crate::analytics::density::{KdeCurve, QqPoints};
use crate::analytics::histogram::Histogram;
use crate::analytics::impact::{EcdfPair, ImpactPair};
use crate::analytics::missing::{DendrogramTree, MissingBar, MissingSpectrum, NullityCorr, NullityCounts};
use crate::analytics::moments::StatsPartial;
use crate::analytics::summary::{CategoricalStats, ColumnStats, DatasetStats};
use serde::Serialize;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KdeChart {
    pub column: String,
    pub curve: KdeCurve,
    pub histogram: Histogram,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QqChart {
    pub column: String,
    #[serde(flatten)]
    pub points: QqPoints,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HistogramChart {
    pub column: String,
    #[serde(flatten)]
    pub histogram: Histogram,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BarChart {
    pub column: String,
    #[serde(flatten)]
    pub counts: BarCounts,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoxGroups {
    /// Column on the value axis.
    pub column: String,
    /// Column (or binned column) the boxes are grouped by; empty for a single box.
    pub group_by: Option<String>,
    pub boxes: Vec<BoxStats>,
    /// Groups left out because they held no finite values.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub omitted: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HistogramGroup {
    pub label: String,
    pub histogram: Histogram,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HistogramGroups {
    pub column: String,
    pub group_by: String,
    pub groups: Vec<HistogramGroup>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossChart {
    #[serde(rename = "x_column")]
    pub x: String,
    #[serde(rename = "y_column")]
    pub y: String,
    #[serde(flatten)]
    pub counts: CrossCounts,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScatterChart {
    #[serde(rename = "x_column")]
    pub x: String,
    #[serde(rename = "y_column")]
    pub y: String,
    #[serde(flatten)]
    pub points: ScatterPoints,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HexbinChart {
    #[serde(rename = "x_column")]
    pub x: String,
    #[serde(rename = "y_column")]
    pub y: String,
    #[serde(flatten)]
    pub grid: HexbinGrid,
}

/// Per-chunk impact counts before/after dropping rows with a missing anchor.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SplitCounts {
    pub before: Vec<u64>,
    pub after: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Intermediate {
    DatasetStats(DatasetStats),
    ColumnStats(ColumnStats),
    CategoricalStats(CategoricalStats),
    Histogram(HistogramChart),
    Kde(KdeChart),
    Qq(QqChart),
    Box(BoxGroups),
    Bars(BarChart),
    HistogramGroups(HistogramGroups),
    Cross(CrossChart),
    CorrMatrix(CorrMatrix),
    CorrRanking(CorrRanking),
    Scatter(ScatterChart),
    Hexbin(HexbinChart),
    MissingBar(MissingBar),
    MissingSpectrum(MissingSpectrum),
    NullityCorr(NullityCorr),
    Dendrogram(DendrogramTree),
    Impact(ImpactPair),
    Ecdf(EcdfPair),
    /// A chart that could not be produced from this data, with the reason.
    Unavailable { reason: String },

    #[serde(skip)]
    Count(u64),
    #[serde(skip)]
    Stats(Arc<StatsPartial<f64>>),
    /// Ascending finite values of a column.
    #[serde(skip)]
    Sorted(Arc<Vec<f64>>),
    /// Row-aligned numeric values, NaN where missing.
    #[serde(skip)]
    Values(Arc<Vec<f64>>),
    /// Row-aligned category codes, `u32::MAX` where missing.
    #[serde(skip)]
    Codes(Arc<Vec<u32>>),
    #[serde(skip)]
    CodeCounts(Arc<CodeCounts>),
    #[serde(skip)]
    PairCounts(Arc<PairCounts>),
    #[serde(skip)]
    CoMoments(Arc<Vec<CoMoments<f64>>>),
    #[serde(skip)]
    Nullity(Arc<NullityCounts>),
    #[serde(skip)]
    RowKeys(Arc<Vec<Vec<u64>>>),
    #[serde(skip)]
    Bounds(Option<Bounds>),
    #[serde(skip)]
    HexCounts(Arc<HexCounts>),
    #[serde(skip)]
    Split(Arc<SplitCounts>),
}

pub const MISSING_CODE: u32 = u32::MAX;

impl Intermediate {
    pub fn unavailable(reason: impl Into<String>) -> Self {
        Intermediate::Unavailable { reason: reason.into() }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Intermediate::DatasetStats(_) => "dataset_stats",
            Intermediate::ColumnStats(_) => "column_stats",
            Intermediate::CategoricalStats(_) => "categorical_stats",
            Intermediate::Histogram(_) => "histogram",
            Intermediate::Kde(_) => "kde",
            Intermediate::Qq(_) => "qq",
            Intermediate::Box(_) => "box",
            Intermediate::Bars(_) => "bars",
            Intermediate::HistogramGroups(_) => "histogram_groups",
            Intermediate::Cross(_) => "cross",
            Intermediate::CorrMatrix(_) => "corr_matrix",
            Intermediate::CorrRanking(_) => "corr_ranking",
            Intermediate::Scatter(_) => "scatter",
            Intermediate::Hexbin(_) => "hexbin",
            Intermediate::MissingBar(_) => "missing_bar",
            Intermediate::MissingSpectrum(_) => "missing_spectrum",
            Intermediate::NullityCorr(_) => "nullity_corr",
            Intermediate::Dendrogram(_) => "dendrogram",
            Intermediate::Impact(_) => "impact",
            Intermediate::Ecdf(_) => "ecdf",
            Intermediate::Unavailable { .. } => "unavailable",
            Intermediate::Count(_) => "count",
            Intermediate::Stats(_) => "stats_partial",
            Intermediate::Sorted(_) => "sorted",
            Intermediate::Values(_) => "values",
            Intermediate::Codes(_) => "codes",
            Intermediate::CodeCounts(_) => "code_counts",
            Intermediate::PairCounts(_) => "pair_counts",
            Intermediate::CoMoments(_) => "co_moments",
            Intermediate::Nullity(_) => "nullity",
            Intermediate::RowKeys(_) => "row_keys",
            Intermediate::Bounds(_) => "bounds",
            Intermediate::HexCounts(_) => "hex_counts",
            Intermediate::Split(_) => "split_counts",
        }
    }

    /// True for values that are exported as chart payloads.
    pub fn is_renderable(&self) -> bool {
        !matches!(
            self,
            Intermediate::Count(_)
                | Intermediate::Stats(_)
                | Intermediate::Sorted(_)
                | Intermediate::Values(_)
                | Intermediate::Codes(_)
                | Intermediate::CodeCounts(_)
                | Intermediate::PairCounts(_)
                | Intermediate::CoMoments(_)
                | Intermediate::Nullity(_)
                | Intermediate::RowKeys(_)
                | Intermediate::Bounds(_)
                | Intermediate::HexCounts(_)
                | Intermediate::Split(_)
        )
    }
}
