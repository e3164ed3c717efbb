use crate::analytics::correlation::CorrMethod;
use serde::{Serialize, Serializer};
use std::fmt;

/// Every panel type a task can emit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChartKind {
    Overview,
    Stats,
    Histogram,
    Kde,
    QqNormal,
    Box,
    Bar,
    Pie,
    Scatter,
    Hexbin,
    BinnedBox,
    GroupedBox,
    CategoryHistograms,
    NestedBar,
    StackedBar,
    CrossHeatmap,
    CorrHeatmap(CorrMethod),
    CorrRank(CorrMethod),
    CorrScatter,
    MissingBar,
    MissingSpectrum,
    NullityHeatmap,
    NullityDendrogram,
    MissingImpact,
    MissingEcdf,
}

impl ChartKind {
    pub const ALL: [ChartKind; 29] = [
        ChartKind::Overview,
        ChartKind::Stats,
        ChartKind::Histogram,
        ChartKind::Kde,
        ChartKind::QqNormal,
        ChartKind::Box,
        ChartKind::Bar,
        ChartKind::Pie,
        ChartKind::Scatter,
        ChartKind::Hexbin,
        ChartKind::BinnedBox,
        ChartKind::GroupedBox,
        ChartKind::CategoryHistograms,
        ChartKind::NestedBar,
        ChartKind::StackedBar,
        ChartKind::CrossHeatmap,
        ChartKind::CorrHeatmap(CorrMethod::Pearson),
        ChartKind::CorrHeatmap(CorrMethod::Spearman),
        ChartKind::CorrHeatmap(CorrMethod::Kendall),
        ChartKind::CorrRank(CorrMethod::Pearson),
        ChartKind::CorrRank(CorrMethod::Spearman),
        ChartKind::CorrRank(CorrMethod::Kendall),
        ChartKind::CorrScatter,
        ChartKind::MissingBar,
        ChartKind::MissingSpectrum,
        ChartKind::NullityHeatmap,
        ChartKind::NullityDendrogram,
        ChartKind::MissingImpact,
        ChartKind::MissingEcdf,
    ];

    pub fn name(self) -> &'static str {
        use CorrMethod::*;
        match self {
            ChartKind::Overview => "overview",
            ChartKind::Stats => "stats",
            ChartKind::Histogram => "histogram",
            ChartKind::Kde => "kde",
            ChartKind::QqNormal => "qq_normal",
            ChartKind::Box => "box",
            ChartKind::Bar => "bar",
            ChartKind::Pie => "pie",
            ChartKind::Scatter => "scatter",
            ChartKind::Hexbin => "hexbin",
            ChartKind::BinnedBox => "binned_box",
            ChartKind::GroupedBox => "grouped_box",
            ChartKind::CategoryHistograms => "category_histograms",
            ChartKind::NestedBar => "nested_bar",
            ChartKind::StackedBar => "stacked_bar",
            ChartKind::CrossHeatmap => "cross_heatmap",
            ChartKind::CorrHeatmap(Pearson) => "pearson_heatmap",
            ChartKind::CorrHeatmap(Spearman) => "spearman_heatmap",
            ChartKind::CorrHeatmap(Kendall) => "kendall_heatmap",
            ChartKind::CorrRank(Pearson) => "pearson_rank",
            ChartKind::CorrRank(Spearman) => "spearman_rank",
            ChartKind::CorrRank(Kendall) => "kendall_rank",
            ChartKind::CorrScatter => "correlation_scatter",
            ChartKind::MissingBar => "missing_bar",
            ChartKind::MissingSpectrum => "missing_spectrum",
            ChartKind::NullityHeatmap => "nullity_heatmap",
            ChartKind::NullityDendrogram => "nullity_dendrogram",
            ChartKind::MissingImpact => "missing_impact",
            ChartKind::MissingEcdf => "missing_ecdf",
        }
    }

    pub fn from_name(name: &str) -> Option<ChartKind> {
        Self::ALL.iter().copied().find(|k| k.name() == name)
    }

    /// Human-readable tab title.
    pub fn title(self) -> &'static str {
        use CorrMethod::*;
        match self {
            ChartKind::Overview => "Overview",
            ChartKind::Stats => "Stats",
            ChartKind::Histogram => "Histogram",
            ChartKind::Kde => "KDE Plot",
            ChartKind::QqNormal => "Normal Q-Q Plot",
            ChartKind::Box => "Box Plot",
            ChartKind::Bar => "Bar Chart",
            ChartKind::Pie => "Pie Chart",
            ChartKind::Scatter => "Scatter Plot",
            ChartKind::Hexbin => "Hexbin Plot",
            ChartKind::BinnedBox => "Box Plot",
            ChartKind::GroupedBox => "Box Plot",
            ChartKind::CategoryHistograms => "Histograms",
            ChartKind::NestedBar => "Nested Bar Chart",
            ChartKind::StackedBar => "Stacked Bar Chart",
            ChartKind::CrossHeatmap => "Heat Map",
            ChartKind::CorrHeatmap(Pearson) | ChartKind::CorrRank(Pearson) => "Pearson",
            ChartKind::CorrHeatmap(Spearman) | ChartKind::CorrRank(Spearman) => "Spearman",
            ChartKind::CorrHeatmap(Kendall) | ChartKind::CorrRank(Kendall) => "Kendall Tau",
            ChartKind::CorrScatter => "Scatter Plot",
            ChartKind::MissingBar => "Bar Chart",
            ChartKind::MissingSpectrum => "Spectrum",
            ChartKind::NullityHeatmap => "Heat Map",
            ChartKind::NullityDendrogram => "Dendrogram",
            ChartKind::MissingImpact => "Impact",
            ChartKind::MissingEcdf => "ECDF",
        }
    }
}

impl fmt::Display for ChartKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for ChartKind {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}
