//! Chart-to-node planning and per-panel insight detection.

use super::{Target, TaskSignature};
use crate::analytics::correlation::{CorrMatrix, CorrMethod};
use crate::chart::ChartKind;
use crate::config::ConfigTree;
use crate::error::Result;
use crate::frame::DType;
use crate::graph::{ops::Planner, Execution, NodeId};
use crate::insights::{self, Insight, InsightKind};
use crate::intermediate::Intermediate;

/// Extra graph outputs a panel's insights are computed from.
#[derive(Debug, Clone)]
pub(crate) enum Aux {
    None,
    /// Column or categorical stats nodes for quality insights.
    Quality(Vec<NodeId>),
    /// Column stats and sorted values of a numerical column.
    Shape { stats: NodeId, sorted: NodeId },
    CodeCounts(NodeId),
    /// Every correlation matrix in the task, for cross-method deduplication.
    Corr(Vec<NodeId>),
}

#[derive(Debug, Clone)]
pub(crate) struct PanelPlan {
    pub target: Target,
    pub node: NodeId,
    pub aux: Aux,
}

fn dtype_of(sig: &TaskSignature, col: &str) -> DType {
    sig.frame.iter().find(|(n, _)| n == col).map(|(_, d)| *d).expect("column resolved by the signature")
}

fn stats_node(p: &mut Planner<'_>, sig: &TaskSignature, col: &str) -> Result<NodeId> {
    match dtype_of(sig, col) {
        DType::Numerical => p.column_stats(col),
        DType::Categorical => p.categorical_stats(col),
    }
}

fn corr_matrix(p: &mut Planner<'_>, cfg: &ConfigTree, sig: &TaskSignature, m: CorrMethod) -> Result<NodeId> {
    let cols = sig.numerical_frame_columns();
    p.corr_matrix(m, &cols, cfg.count("corr.kendall_cap"), cfg.int("corr.seed") as u64)
}

/// Plan every enabled target into the planner's graph.
pub(crate) fn plan_targets(p: &mut Planner<'_>, cfg: &ConfigTree, sig: &TaskSignature, targets: &[Target]) -> Result<Vec<PanelPlan>> {
    targets.iter().filter(|t| cfg.chart_enabled(t.kind)).map(|t| plan_target(p, cfg, sig, t)).collect()
}

pub(crate) fn plan_target(p: &mut Planner<'_>, cfg: &ConfigTree, sig: &TaskSignature, t: &Target) -> Result<PanelPlan> {
    use ChartKind as K;
    let c = &t.columns;
    let col = || c[0].as_str();
    let pair = || (c[0].as_str(), c[1].as_str());
    let mut aux = Aux::None;
    let node = match t.kind {
        K::Overview => {
            let nodes = sig.frame.iter().map(|(n, _)| stats_node(p, sig, n)).collect::<Result<_>>()?;
            aux = Aux::Quality(nodes);
            p.dataset_stats()?
        }
        K::Stats => {
            let node = stats_node(p, sig, col())?;
            aux = Aux::Quality(vec![node]);
            node
        }
        K::Histogram => {
            aux = Aux::Shape { stats: p.column_stats(col())?, sorted: p.quantiles(col())? };
            p.histogram(col(), cfg.count("hist.bins"))?
        }
        K::Kde => p.kde(col(), cfg.count("kde.bins"), cfg.count("kde.grid_points"), cfg.count("kde.sample"))?,
        K::QqNormal => p.qq(col(), cfg.count("qq.points"))?,
        K::Box => p.box_plot(col(), cfg.usize("box.max_outliers"))?,
        K::Bar => {
            aux = Aux::CodeCounts(p.code_counts(col())?);
            p.bars(col(), cfg.count("bar.top_k"))?
        }
        K::Pie => p.bars(col(), cfg.count("pie.top_k"))?,
        K::Scatter | K::CorrScatter => {
            let (a, b) = pair();
            p.scatter(a, b, cfg.count("scatter.sample"), cfg.int("scatter.seed") as u64)?
        }
        K::Hexbin => {
            let (a, b) = pair();
            p.hexbin(a, b, cfg.count("hexbin.gridsize"))?
        }
        K::BinnedBox => {
            let (a, b) = pair();
            p.binned_box(a, b, cfg.count("box.bins"), cfg.usize("box.max_outliers"))?
        }
        K::GroupedBox | K::CategoryHistograms => {
            let (a, b) = pair();
            let (num, cat) = if dtype_of(sig, a) == DType::Numerical { (a, b) } else { (b, a) };
            if t.kind == K::GroupedBox {
                p.grouped_box(num, cat, cfg.count("group.top_k"), cfg.usize("box.max_outliers"))?
            } else {
                p.category_histograms(num, cat, cfg.count("hist.bins"), cfg.count("group.top_k"))?
            }
        }
        K::NestedBar | K::StackedBar | K::CrossHeatmap => {
            let (a, b) = pair();
            p.cross(a, b, cfg.count("cross.top_k"))?
        }
        K::CorrHeatmap(m) => {
            let all = cfg
                .corr_methods()
                .into_iter()
                .filter(|m| cfg.chart_enabled(K::CorrHeatmap(*m)))
                .map(|m| corr_matrix(p, cfg, sig, m))
                .collect::<Result<_>>()?;
            aux = Aux::Corr(all);
            corr_matrix(p, cfg, sig, m)?
        }
        K::CorrRank(m) => {
            let matrix = corr_matrix(p, cfg, sig, m)?;
            p.corr_ranking(matrix, col())?
        }
        K::MissingBar => p.missing_bar()?,
        K::MissingSpectrum => p.missing_spectrum(cfg.count("spectrum.segments"))?,
        K::NullityHeatmap => p.nullity_corr()?,
        K::NullityDendrogram => p.dendrogram()?,
        K::MissingImpact => {
            let (a, b) = pair();
            p.impact(a, b, cfg.count("impact.bins"), cfg.count("impact.top_k"))?
        }
        K::MissingEcdf => {
            let (a, b) = pair();
            p.ecdf(a, b, cfg.count("ecdf.points"))?
        }
    };
    Ok(PanelPlan { target: t.clone(), node, aux })
}

/// Counts for the uniformity test of a numerical column: per distinct value
/// when there are at most `bins` of them, otherwise the histogram bins.
fn uniform_counts(sorted: &[f64], n_distinct: usize, bins: usize, hist: &Intermediate) -> Option<Vec<u64>> {
    if n_distinct <= bins {
        let mut counts = Vec::new();
        let mut i = 0;
        while i < sorted.len() {
            let j = sorted[i..].iter().position(|v| *v != sorted[i]).map_or(sorted.len(), |k| i + k);
            counts.push((j - i) as u64);
            i = j;
        }
        return Some(counts);
    }
    match hist {
        Intermediate::Histogram(h) => Some(h.histogram.counts.clone()),
        _ => None,
    }
}

pub(crate) fn panel_insights(p: &PanelPlan, exec: &Execution, cfg: &ConfigTree) -> Vec<Insight> {
    let kind = p.target.kind;
    let mut out = Vec::new();
    match &p.aux {
        Aux::None => {}
        Aux::Quality(nodes) => {
            for &n in nodes {
                let found = match exec.get(n) {
                    Intermediate::ColumnStats(s) => insights::detect_stat_insights(s, cfg),
                    Intermediate::CategoricalStats(s) => insights::detect_categorical_insights(s, cfg),
                    _ => Vec::new(),
                };
                out.extend(found.into_iter().map(|i| i.anchored(kind)));
            }
        }
        Aux::Shape { stats, sorted } => {
            let (Intermediate::ColumnStats(s), Intermediate::Sorted(values)) = (exec.get(*stats), exec.get(*sorted)) else {
                return out;
            };
            let col = &p.target.columns[0];
            if kind == ChartKind::Histogram {
                let counts = uniform_counts(values, s.n_distinct, cfg.count("hist.bins"), exec.get(p.node));
                out.extend(counts.and_then(|c| insights::test_uniform(col, &c, kind, cfg)));
                out.extend(insights::test_normal(col, values, kind, cfg));
            }
        }
        Aux::CodeCounts(node) => {
            if let Intermediate::CodeCounts(cc) = exec.get(*node) {
                let present: Vec<u64> = cc.counts.iter().copied().filter(|c| *c > 0).collect();
                out.extend(insights::test_uniform(&p.target.columns[0], &present, kind, cfg));
            }
        }
        Aux::Corr(nodes) => {
            let matrices: Vec<&CorrMatrix> = nodes
                .iter()
                .filter_map(|n| match exec.get(*n) {
                    Intermediate::CorrMatrix(m) => Some(m),
                    _ => None,
                })
                .collect();
            out.extend(insights::detect_corr_insights(&matrices, cfg).into_iter().filter(|i| i.anchor == kind));
        }
    }
    match (kind, exec.get(p.node)) {
        (ChartKind::MissingImpact, Intermediate::Impact(pair)) => {
            if let Some(d) = pair.ks_d {
                let sizes = (pair.before.total(), pair.after.total());
                out.extend(insights::similarity_insight(
                    InsightKind::NoImpact,
                    [&pair.anchor, &pair.column],
                    d,
                    sizes,
                    kind,
                    cfg,
                ));
            }
        }
        (ChartKind::CorrScatter, Intermediate::Scatter(s)) => {
            let m = CorrMatrix {
                method: CorrMethod::Pearson,
                columns: vec![s.x.clone(), s.y.clone()],
                values: vec![vec![1.0, s.points.pearson], vec![s.points.pearson, 1.0]],
                sampled_rows: None,
            };
            out.extend(insights::detect_corr_insights(&[&m], cfg).into_iter().map(|i| i.anchored(kind)));
        }
        _ => {}
    }
    out
}
