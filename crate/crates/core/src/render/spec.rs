//! Render-ready chart descriptions built from intermediates.

use super::ticks::{format_tick, nice_ticks};
use crate::analytics::boxplot::BoxStats;
use crate::analytics::categorical::BarCounts;
use crate::analytics::histogram::Histogram;
use crate::analytics::impact::Distribution;
use crate::analytics::summary::QuantileValue;
use crate::chart::ChartKind;
use crate::config::ConfigTree;
use crate::error::{EdaError, Result};
use crate::insights::{Insight, InsightKind};
use crate::intermediate::Intermediate;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Linear,
    Band,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    pub label: String,
    pub scale: Scale,
    pub lo: f64,
    pub hi: f64,
    pub ticks: Vec<f64>,
    pub tick_labels: Vec<String>,
    /// Band axes only.
    pub categories: Vec<String>,
}

impl Axis {
    pub fn linear(label: &str, lo: f64, hi: f64) -> Self {
        let t = nice_ticks(lo, hi);
        let tick_labels = t.values.iter().map(|v| format_tick(*v, t.step)).collect();
        Axis { label: label.to_owned(), scale: Scale::Linear, lo: t.lo, hi: t.hi, ticks: t.values, tick_labels, categories: vec![] }
    }

    pub fn band(label: &str, categories: Vec<String>) -> Self {
        Axis {
            label: label.to_owned(),
            scale: Scale::Band,
            lo: 0.0,
            hi: categories.len() as f64,
            ticks: vec![],
            tick_labels: vec![],
            categories,
        }
    }

    /// Linear axis over the finite values in `values`, starting at zero if `from_zero`.
    fn covering<'a>(label: &str, values: impl IntoIterator<Item = &'a f64>, from_zero: bool) -> Self {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for v in values.into_iter().filter(|v| v.is_finite()) {
            lo = lo.min(*v);
            hi = hi.max(*v);
        }
        if lo > hi {
            (lo, hi) = (0.0, 1.0);
        }
        if from_zero {
            lo = lo.min(0.0);
        }
        Axis::linear(label, lo, hi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColorScale {
    /// White to blue over `[lo, hi]`.
    Sequential,
    /// Blue through white to red over `[lo, hi]`.
    Diverging,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    pub label: String,
    pub value: String,
    pub highlight: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Series {
    /// Bars spanning `[x0, x1] x [0, y]` in data units.
    Rects { x0: Vec<f64>, x1: Vec<f64>, y: Vec<f64>, color: usize, opacity: f64 },
    /// Values per band category, one entry per named group.
    BandBars { groups: Vec<(String, Vec<f64>)>, stacked: bool },
    Line { label: Option<String>, x: Vec<f64>, y: Vec<f64>, color: usize, step: bool, dashed: bool },
    Points { x: Vec<f64>, y: Vec<f64>, color: usize },
    /// One box per band category.
    Boxes(Vec<BoxStats>),
    /// `values[row][col]`; rows on the y band, columns on the x band.
    Heatmap { values: Vec<Vec<f64>>, lo: f64, hi: f64, scale: ColorScale, annotate: bool },
    /// Hexagon centres with vertex offsets shared by every hexagon.
    Hexagons { cx: Vec<f64>, cy: Vec<f64>, counts: Vec<u64>, dx: [f64; 6], dy: [f64; 6] },
    Pie { labels: Vec<String>, values: Vec<f64> },
    Table(Vec<TableRow>),
    /// Line segments `(x0, y0, x1, y1)` in data units.
    Segments(Vec<[f64; 4]>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChartSpec {
    pub kind: ChartKind,
    pub title: String,
    /// Subtitle lines: sampling disclosures, statistics worth stating.
    pub notes: Vec<String>,
    pub x: Option<Axis>,
    pub y: Option<Axis>,
    pub series: Vec<Series>,
    pub legend: Vec<(String, usize)>,
    pub badge: bool,
    pub width: u32,
    pub height: u32,
}

impl ChartSpec {
    fn new(kind: ChartKind, title: &str, cfg: &ConfigTree) -> Self {
        ChartSpec {
            kind,
            title: title.to_owned(),
            notes: vec![],
            x: None,
            y: None,
            series: vec![],
            legend: vec![],
            badge: false,
            width: cfg.count("plot.width") as u32,
            height: cfg.count("plot.height") as u32,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.series.is_empty()
    }
}

/// Thousands separators: 10000 -> "10,000".
pub fn group_digits(n: u64) -> String {
    let s = n.to_string();
    let mut out = String::new();
    for (i, ch) in s.chars().enumerate() {
        if i > 0 && (s.len() - i).is_multiple_of(3) {
            out.push(',');
        }
        out.push(ch);
    }
    out
}

/// Compact number for tables.
pub fn format_value(v: f64) -> String {
    if v.is_nan() {
        return "n/a".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == v.trunc() && v.abs() < 1e15 {
        return format!("{}", v as i64);
    }
    let a = v.abs();
    if !(1e-4..1e9).contains(&a) {
        format!("{v:.4e}")
    } else {
        let s = format!("{v:.4}");
        s.trim_end_matches('0').trim_end_matches('.').to_owned()
    }
}

fn row(label: &str, value: impl Into<String>) -> TableRow {
    TableRow { label: label.to_owned(), value: value.into(), highlight: false }
}

fn quantile_rows(qs: &[QuantileValue]) -> impl Iterator<Item = TableRow> + '_ {
    qs.iter().map(|q| row(&format!("{}% quantile", format_value(q.p * 100.0)), format_value(q.value)))
}

fn histogram_rects(h: &Histogram, scale: impl Fn(u64) -> f64, color: usize, opacity: f64) -> Series {
    Series::Rects {
        x0: h.bin_edges[..h.counts.len()].to_vec(),
        x1: h.bin_edges[1..].to_vec(),
        y: h.counts.iter().map(|c| scale(*c)).collect(),
        color,
        opacity,
    }
}

fn step_line(label: &str, h: &Histogram, color: usize) -> Series {
    // value of bin i held across [edge i, edge i+1]
    let mut x = Vec::with_capacity(h.counts.len() * 2);
    let mut y = Vec::with_capacity(h.counts.len() * 2);
    let total = h.total().max(1) as f64;
    for (i, c) in h.counts.iter().enumerate() {
        let frac = *c as f64 / total;
        x.extend([h.bin_edges[i], h.bin_edges[i + 1]]);
        y.extend([frac, frac]);
    }
    Series::Line { label: Some(label.to_owned()), x, y, color, step: false, dashed: false }
}

fn bar_labels(b: &BarCounts) -> (Vec<String>, Vec<f64>) {
    let mut labels: Vec<String> = b.bars.iter().map(|x| x.label.clone()).collect();
    let mut values: Vec<f64> = b.bars.iter().map(|x| x.count as f64).collect();
    if b.other > 0 {
        labels.push("Others".into());
        values.push(b.other as f64);
    }
    (labels, values)
}

fn bands_max(groups: &[(String, Vec<f64>)], stacked: bool) -> Vec<f64> {
    if stacked {
        let n = groups.first().map_or(0, |g| g.1.len());
        (0..n).map(|i| groups.iter().map(|g| g.1[i]).sum()).collect()
    } else {
        groups.iter().flat_map(|g| g.1.iter().copied()).collect()
    }
}

/// Chart description for a panel's intermediate. Fails for intermediates that
/// have no chart template for `kind`.
pub fn to_chart_spec(kind: ChartKind, title: &str, i: &Intermediate, insights: &[Insight], cfg: &ConfigTree) -> Result<ChartSpec> {
    let mut s = ChartSpec::new(kind, title, cfg);
    s.badge = !insights.is_empty();
    let no_template = || EdaError::UnknownKind(format!("no chart template for {} as {}", i.kind(), kind));
    match (kind, i) {
        (_, Intermediate::Unavailable { reason }) => s.notes.push(format!("no data: {reason}")),
        (ChartKind::Overview, Intermediate::DatasetStats(d)) => {
            s.series.push(Series::Table(vec![
                row("Rows", group_digits(d.rows as u64)),
                row("Columns", d.columns.to_string()),
                row("Numerical columns", d.n_numerical.to_string()),
                row("Categorical columns", d.n_categorical.to_string()),
                row("Missing cells", group_digits(d.missing_cells)),
                row("Missing cells (%)", format!("{:.2}", d.missing_pct)),
                row("Duplicate rows", group_digits(d.duplicate_rows)),
            ]));
        }
        (ChartKind::Stats, Intermediate::ColumnStats(c)) => {
            let high_card = insights.iter().any(|x| x.kind == InsightKind::HighCardinality);
            let mut rows = vec![
                row("Count", group_digits(c.n as u64)),
                row("Missing", format!("{} ({:.2}%)", group_digits(c.n_missing as u64), c.missing_pct())),
                TableRow { highlight: high_card, ..row("Distinct", group_digits(c.n_distinct as u64)) },
                row("Infinite", group_digits(c.n_infinite as u64)),
                row("Zeros", group_digits(c.n_zero as u64)),
                row("Negatives", group_digits(c.n_negative as u64)),
                row("Min", format_value(c.min)),
                row("Max", format_value(c.max)),
                row("Mean", format_value(c.mean)),
                row("Std", format_value(c.std)),
                row("Skewness", format_value(c.skewness)),
                row("Kurtosis", format_value(c.kurtosis)),
            ];
            rows.extend(quantile_rows(&c.quantiles));
            s.series.push(Series::Table(rows));
        }
        (ChartKind::Stats, Intermediate::CategoricalStats(c)) => {
            let high_card = insights.iter().any(|x| x.kind == InsightKind::HighCardinality);
            s.series.push(Series::Table(vec![
                row("Count", group_digits(c.n as u64)),
                row("Missing", format!("{} ({:.2}%)", group_digits(c.n_missing as u64), c.missing_pct())),
                TableRow { highlight: high_card, ..row("Distinct", group_digits(c.n_distinct as u64)) },
                row("Most frequent", c.mode.clone().unwrap_or_else(|| "n/a".into())),
                row("Most frequent count", group_digits(c.mode_count)),
            ]));
        }
        (ChartKind::Histogram, Intermediate::Histogram(h)) => {
            let hist = &h.histogram;
            s.x = Some(Axis::covering(&h.column, &hist.bin_edges, false));
            let counts: Vec<f64> = hist.counts.iter().map(|c| *c as f64).collect();
            s.y = Some(Axis::covering("Frequency", &counts, true));
            s.series.push(histogram_rects(hist, |c| c as f64, 0, 1.0));
        }
        (ChartKind::Kde, Intermediate::Kde(k)) => {
            let hist = &k.histogram;
            let total = hist.total().max(1) as f64;
            let width = (hist.bin_edges.last().unwrap_or(&1.0) - hist.bin_edges[0]) / hist.counts.len().max(1) as f64;
            let density = |c: u64| if width > 0.0 { c as f64 / (total * width) } else { 0.0 };
            let bars: Vec<f64> = hist.counts.iter().map(|c| density(*c)).collect();
            let xs = k.curve.x.iter().chain(&hist.bin_edges);
            s.x = Some(Axis::covering(&k.column, xs, false));
            s.y = Some(Axis::covering("Density", k.curve.density.iter().chain(&bars), true));
            s.series.push(histogram_rects(hist, density, 0, 0.35));
            s.series.push(Series::Line { label: None, x: k.curve.x.clone(), y: k.curve.density.clone(), color: 1, step: false, dashed: false });
            if k.curve.sampled() {
                s.notes.push(format!("density estimated on {} sampled rows", group_digits(k.curve.n_used as u64)));
            }
        }
        (ChartKind::QqNormal, Intermediate::Qq(q)) => {
            let all = q.points.theoretical.iter().chain(&q.points.sample);
            let (lo, hi) = all.clone().filter(|v| v.is_finite()).fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(*v), b.max(*v)));
            s.x = Some(Axis::covering("Normal theoretical quantiles", &q.points.theoretical, false));
            s.y = Some(Axis::covering(&format!("Quantiles of {}", q.column), &q.points.sample, false));
            s.series.push(Series::Line { label: None, x: vec![lo, hi], y: vec![lo, hi], color: 9, step: false, dashed: true });
            s.series.push(Series::Points { x: q.points.theoretical.clone(), y: q.points.sample.clone(), color: 0 });
        }
        (ChartKind::Box | ChartKind::BinnedBox | ChartKind::GroupedBox, Intermediate::Box(b)) => {
            let labels = b.boxes.iter().map(|x| x.label.clone().unwrap_or_else(|| b.column.clone())).collect();
            s.x = Some(Axis::band(b.group_by.as_deref().unwrap_or(""), labels));
            let extent = b.boxes.iter().flat_map(|x| [x.lower_whisker, x.upper_whisker].into_iter().chain(x.outliers.iter().copied()));
            let extent: Vec<f64> = extent.collect();
            s.y = Some(Axis::covering(&b.column, &extent, false));
            if !b.omitted.is_empty() {
                s.notes.push(format!("no values for: {}", b.omitted.join(", ")));
            }
            if !b.boxes.is_empty() {
                s.series.push(Series::Boxes(b.boxes.clone()));
            }
        }
        (ChartKind::Bar, Intermediate::Bars(b)) => {
            let (labels, values) = bar_labels(&b.counts);
            s.x = Some(Axis::band(&b.column, labels));
            s.y = Some(Axis::covering("Count", &values, true));
            if b.counts.n_distinct > b.counts.bars.len() {
                s.notes.push(format!("top {} of {} categories", b.counts.bars.len(), group_digits(b.counts.n_distinct as u64)));
            }
            if !values.is_empty() {
                s.series.push(Series::BandBars { groups: vec![(b.column.clone(), values)], stacked: false });
            }
        }
        (ChartKind::Pie, Intermediate::Bars(b)) => {
            let (labels, values) = bar_labels(&b.counts);
            if values.iter().sum::<f64>() > 0.0 {
                s.series.push(Series::Pie { labels: labels.clone(), values });
                s.legend = labels.into_iter().enumerate().map(|(i, l)| (l, i)).collect();
            }
        }
        (ChartKind::CategoryHistograms, Intermediate::HistogramGroups(g)) => {
            if let Some(first) = g.groups.first() {
                s.x = Some(Axis::covering(&g.column, &first.histogram.bin_edges, false));
                let mut peak = vec![0.0];
                for (k, grp) in g.groups.iter().enumerate() {
                    let line = step_line(&grp.label, &grp.histogram, k);
                    if let Series::Line { y, .. } = &line {
                        peak.extend(y.iter().copied());
                    }
                    s.series.push(line);
                    s.legend.push((grp.label.clone(), k));
                }
                s.y = Some(Axis::covering("Fraction of group", &peak, true));
            }
        }
        (ChartKind::NestedBar | ChartKind::StackedBar, Intermediate::Cross(c)) => {
            let stacked = kind == ChartKind::StackedBar;
            let groups: Vec<(String, Vec<f64>)> = c
                .counts
                .y_labels
                .iter()
                .enumerate()
                .map(|(j, label)| (label.clone(), c.counts.counts.iter().map(|row| row[j] as f64).collect()))
                .collect();
            s.x = Some(Axis::band(&c.x, c.counts.x_labels.clone()));
            s.y = Some(Axis::covering("Count", &bands_max(&groups, stacked), true));
            s.legend = groups.iter().enumerate().map(|(k, g)| (g.0.clone(), k)).collect();
            if !groups.is_empty() && !c.counts.x_labels.is_empty() {
                s.series.push(Series::BandBars { groups, stacked });
            }
        }
        (ChartKind::CrossHeatmap, Intermediate::Cross(c)) => {
            // rows: y categories, columns: x categories
            let values: Vec<Vec<f64>> =
                (0..c.counts.y_labels.len()).map(|j| c.counts.counts.iter().map(|row| row[j] as f64).collect()).collect();
            let hi = values.iter().flatten().fold(1.0f64, |a, b| a.max(*b));
            s.x = Some(Axis::band(&c.x, c.counts.x_labels.clone()));
            s.y = Some(Axis::band(&c.y, c.counts.y_labels.clone()));
            if !values.is_empty() && !c.counts.x_labels.is_empty() {
                s.series.push(Series::Heatmap { values, lo: 0.0, hi, scale: ColorScale::Sequential, annotate: true });
            }
        }
        (ChartKind::CorrHeatmap(_), Intermediate::CorrMatrix(m)) => {
            s.x = Some(Axis::band("", m.columns.clone()));
            s.y = Some(Axis::band("", m.columns.clone()));
            if let Some(n) = m.sampled_rows {
                s.notes.push(format!("computed on {} sampled rows", group_digits(n as u64)));
            }
            s.series.push(Series::Heatmap { values: m.values.clone(), lo: -1.0, hi: 1.0, scale: ColorScale::Diverging, annotate: true });
        }
        (ChartKind::CorrRank(_), Intermediate::CorrRanking(r)) => {
            let labels = r.entries.iter().map(|e| e.column.clone()).collect();
            let values: Vec<f64> = r.entries.iter().map(|e| e.r).collect();
            s.x = Some(Axis::band("", labels));
            s.y = Some(Axis::linear(&format!("Correlation with {}", r.anchor), -1.0, 1.0));
            if !values.is_empty() {
                s.series.push(Series::BandBars { groups: vec![(r.anchor.clone(), values)], stacked: false });
            }
        }
        (ChartKind::Scatter | ChartKind::CorrScatter, Intermediate::Scatter(p)) => {
            s.x = Some(Axis::covering(&p.x, &p.points.x, false));
            s.y = Some(Axis::covering(&p.y, &p.points.y, false));
            s.series.push(Series::Points { x: p.points.x.clone(), y: p.points.y.clone(), color: 0 });
            if p.points.sampled() {
                s.notes.push(format!(
                    "showing {} of {} points",
                    group_digits(p.points.x.len() as u64),
                    group_digits(p.points.n_pairs as u64)
                ));
            }
            if kind == ChartKind::CorrScatter {
                if let (Some(reg), Some(ax)) = (&p.points.regression, &s.x) {
                    let xs = [ax.lo, ax.hi];
                    let ys = xs.map(|x| reg.intercept + reg.slope * x);
                    s.series.push(Series::Line { label: None, x: xs.to_vec(), y: ys.to_vec(), color: 1, step: false, dashed: false });
                }
                s.notes.push(format!("r = {}", format_value((p.points.pearson * 1e4).round() / 1e4)));
            }
        }
        (ChartKind::Hexbin, Intermediate::Hexbin(h)) => {
            let g = &h.grid;
            if let Some(b) = g.bounds {
                s.x = Some(Axis::linear(&h.x, b.x_min, b.x_max));
                s.y = Some(Axis::linear(&h.y, b.y_min, b.y_max));
                let w = g.gridsize.max(1) as f64 * 3f64.sqrt();
                let (sx, sy) = ((b.x_max - b.x_min) / w, (b.y_max - b.y_min) / w);
                let mut dx = [0.0; 6];
                let mut dy = [0.0; 6];
                for k in 0..6 {
                    let angle = std::f64::consts::PI / 180.0 * (60.0 * k as f64 + 30.0);
                    dx[k] = angle.cos() * sx;
                    dy[k] = angle.sin() * sy;
                }
                if g.degenerate {
                    s.notes.push("all points share one location".into());
                }
                s.series.push(Series::Hexagons {
                    cx: g.bins.iter().map(|b| b.x).collect(),
                    cy: g.bins.iter().map(|b| b.y).collect(),
                    counts: g.bins.iter().map(|b| b.count).collect(),
                    dx,
                    dy,
                });
            }
        }
        (ChartKind::MissingBar, Intermediate::MissingBar(m)) => {
            let labels = m.columns.iter().map(|c| c.name.clone()).collect();
            let values: Vec<f64> = m.columns.iter().map(|c| c.pct).collect();
            s.x = Some(Axis::band("", labels));
            s.y = Some(Axis::linear("Missing (%)", 0.0, values.iter().fold(1.0f64, |a, b| a.max(*b))));
            if !values.is_empty() {
                s.series.push(Series::BandBars { groups: vec![("missing".into(), values)], stacked: false });
            }
        }
        (ChartKind::MissingSpectrum, Intermediate::MissingSpectrum(m)) => {
            let rows = m.segments.iter().map(|g| format!("{}-{}", g.start + 1, g.end)).collect();
            s.x = Some(Axis::band("", m.columns.clone()));
            s.y = Some(Axis::band("Rows", rows));
            if !m.fractions.is_empty() && !m.columns.is_empty() {
                s.series.push(Series::Heatmap { values: m.fractions.clone(), lo: 0.0, hi: 1.0, scale: ColorScale::Sequential, annotate: false });
            }
        }
        (ChartKind::NullityHeatmap, Intermediate::NullityCorr(c)) => {
            s.x = Some(Axis::band("", c.columns.clone()));
            s.y = Some(Axis::band("", c.columns.clone()));
            if !c.excluded.is_empty() {
                s.notes.push(format!("not shown (fully observed or fully missing): {}", c.excluded.join(", ")));
            }
            s.series.push(Series::Heatmap { values: c.values.clone(), lo: -1.0, hi: 1.0, scale: ColorScale::Diverging, annotate: true });
        }
        (ChartKind::NullityDendrogram, Intermediate::Dendrogram(t)) => {
            let m = t.leaves.len();
            let mut pos = vec![(0.0, 0.0); m + t.merges.len()];
            for (slot, &leaf) in t.order.iter().enumerate() {
                pos[leaf] = (slot as f64 + 0.5, 0.0);
            }
            let mut segments = Vec::new();
            for (k, mg) in t.merges.iter().enumerate() {
                let (l, r) = (pos[mg.left], pos[mg.right]);
                segments.push([l.0, l.1, l.0, mg.height]);
                segments.push([r.0, r.1, r.0, mg.height]);
                segments.push([l.0, mg.height, r.0, mg.height]);
                pos[m + k] = ((l.0 + r.0) / 2.0, mg.height);
            }
            let heights: Vec<f64> = t.merges.iter().map(|mg| mg.height).collect();
            s.x = Some(Axis::band("", t.order.iter().map(|&i| t.leaves[i].clone()).collect()));
            s.y = Some(Axis::covering("Distance", &heights, true));
            s.series.push(Series::Segments(segments));
        }
        (ChartKind::MissingImpact, Intermediate::Impact(p)) => {
            if let Some(d) = p.ks_d {
                s.notes.push(format!("KS distance {}", format_value((d * 1e4).round() / 1e4)));
            }
            match (&p.before, &p.after) {
                (Distribution::Histogram(b), Distribution::Histogram(a)) => {
                    let (lb, la) = (step_line("before", b, 0), step_line("after", a, 1));
                    let ys: Vec<f64> = [&lb, &la]
                        .iter()
                        .flat_map(|l| match l {
                            Series::Line { y, .. } => y.clone(),
                            _ => vec![],
                        })
                        .collect();
                    s.x = Some(Axis::covering(&p.column, &b.bin_edges, false));
                    s.y = Some(Axis::covering("Fraction of rows", &ys, true));
                    s.series.extend([lb, la]);
                }
                (Distribution::Bars(b), Distribution::Bars(a)) => {
                    let (labels, before) = bar_labels(b);
                    let (_, after) = bar_labels(a);
                    let frac = |v: Vec<f64>| {
                        let t: f64 = v.iter().sum::<f64>().max(1.0);
                        v.into_iter().map(|x| x / t).collect::<Vec<_>>()
                    };
                    let mut after = frac(after);
                    after.resize(labels.len(), 0.0);
                    let groups = vec![("before".to_owned(), frac(before)), ("after".to_owned(), after)];
                    s.x = Some(Axis::band(&p.column, labels));
                    s.y = Some(Axis::covering("Fraction of rows", &bands_max(&groups, false), true));
                    if s.x.as_ref().is_some_and(|x| !x.categories.is_empty()) {
                        s.series.push(Series::BandBars { groups, stacked: false });
                    }
                }
                _ => return Err(no_template()),
            }
            s.legend = vec![("before".into(), 0), (format!("after dropping rows with missing {}", p.anchor), 1)];
        }
        (ChartKind::MissingEcdf, Intermediate::Ecdf(e)) => {
            s.x = Some(Axis::covering(&e.column, e.before.x.iter().chain(&e.after.x), false));
            s.y = Some(Axis::linear("Cumulative fraction", 0.0, 1.0));
            s.series.push(Series::Line { label: Some("before".into()), x: e.before.x.clone(), y: e.before.p.clone(), color: 0, step: true, dashed: false });
            s.series.push(Series::Line { label: Some("after".into()), x: e.after.x.clone(), y: e.after.p.clone(), color: 1, step: true, dashed: false });
            s.legend = vec![("before".into(), 0), (format!("after dropping rows with missing {}", e.anchor), 1)];
        }
        _ => return Err(no_template()),
    }
    Ok(s)
}
