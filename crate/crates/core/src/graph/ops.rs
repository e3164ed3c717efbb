//! Kernel catalog and the [`Planner`] that adds kernels to a graph.
//!
//! Each planner method names its node by op and canonical params, so asking
//! for the same computation twice yields the same node.

use super::{params, ChunkCtx, ComputeDag, Finalize, NodeId, Reduce};
use crate::analytics::bivariate::{self, Bounds, HexCounts, HexLayout};
use crate::analytics::boxplot::tukey;
use crate::analytics::categorical::{cross_counts, CodeCounts, PairCounts};
use crate::analytics::correlation::{corr_rank, correlation, midranks, pearson, CoMoments, CorrMatrix, CorrMethod};
use crate::analytics::density::{gaussian_kde, qq_normal, KdeCurve, QqPoints};
use crate::analytics::histogram::{add_counts, BinLayout};
use crate::analytics::impact::{discrete_ks, ecdf, ks_statistic, Distribution, EcdfPair, ImpactPair};
use crate::analytics::missing::{finish_spectrum, nullity_corr, nullity_dendrogram, MissingBar, NullityCounts, SegmentLayout};
use crate::analytics::moments::StatsPartial;
use crate::analytics::sampling::{sample_indices, take_indices};
use crate::analytics::summary::{count_duplicates, CategoricalStats, ColumnStats, ColumnType, DatasetStats};
use crate::error::{EdaError, Result};
use crate::frame::{DType, DataFrame};
use crate::intermediate::*;
use crate::scalar::total_cmp;
use std::sync::Arc;

// ---------------------------------------------------------------------------
// input accessors

fn mismatch(want: &str, got: &Intermediate) -> EdaError {
    EdaError::UnknownKind(format!("expected {want} input, got {}", got.kind()))
}

fn as_stats(i: &Intermediate) -> Result<&StatsPartial<f64>> {
    match i {
        Intermediate::Stats(s) => Ok(s),
        other => Err(mismatch("stats", other)),
    }
}

fn as_sorted(i: &Intermediate) -> Result<&[f64]> {
    match i {
        Intermediate::Sorted(v) => Ok(v),
        other => Err(mismatch("sorted", other)),
    }
}

fn as_values(i: &Intermediate) -> Result<&[f64]> {
    match i {
        Intermediate::Values(v) => Ok(v),
        other => Err(mismatch("values", other)),
    }
}

fn as_codes(i: &Intermediate) -> Result<&[u32]> {
    match i {
        Intermediate::Codes(v) => Ok(v),
        other => Err(mismatch("codes", other)),
    }
}

fn as_code_counts(i: &Intermediate) -> Result<&CodeCounts> {
    match i {
        Intermediate::CodeCounts(c) => Ok(c),
        other => Err(mismatch("code counts", other)),
    }
}

fn as_nullity(i: &Intermediate) -> Result<&NullityCounts> {
    match i {
        Intermediate::Nullity(c) => Ok(c),
        other => Err(mismatch("nullity", other)),
    }
}

fn as_histogram(i: &Intermediate) -> Result<Option<&HistogramChart>> {
    match i {
        Intermediate::Histogram(h) => Ok(Some(h)),
        Intermediate::Unavailable { .. } => Ok(None),
        other => Err(mismatch("histogram", other)),
    }
}

fn layout_of(stats: &StatsPartial<f64>, bins: usize) -> Option<BinLayout<f64>> {
    stats.range().map(|(lo, hi)| BinLayout::new(lo, hi, bins))
}

/// Complete pairs where both values are finite.
fn finite_pairs(xs: &[f64], ys: &[f64]) -> (Vec<f64>, Vec<f64>) {
    xs.iter().zip(ys).filter(|(x, y)| x.is_finite() && y.is_finite()).map(|(x, y)| (*x, *y)).unzip()
}

fn sorted_finite(values: impl IntoIterator<Item = f64>) -> Vec<f64> {
    let mut v: Vec<f64> = values.into_iter().filter(|x| x.is_finite()).collect();
    v.sort_by(total_cmp);
    v
}

// ---------------------------------------------------------------------------
// reduce kernels

struct RowCount;

impl Reduce for RowCount {
    type Partial = u64;
    fn map(&self, ctx: &ChunkCtx<'_>) -> Result<u64> {
        Ok(ctx.df.chunk_meta().chunk_row_counts[ctx.chunk] as u64)
    }
    fn merge(&self, a: u64, b: u64) -> u64 {
        a + b
    }
    fn finish(&self, p: u64, _: &DataFrame, _: &[Arc<Intermediate>]) -> Result<Intermediate> {
        Ok(Intermediate::Count(p))
    }
}

struct Stats {
    col: usize,
}

impl Reduce for Stats {
    type Partial = StatsPartial<f64>;
    fn map(&self, ctx: &ChunkCtx<'_>) -> Result<Self::Partial> {
        let chunk = ctx.df.columns()[self.col].chunk(ctx.chunk);
        Ok(StatsPartial::from_values((0..chunk.row_count()).map(|r| chunk.f64_at(r))))
    }
    fn merge(&self, a: Self::Partial, b: Self::Partial) -> Self::Partial {
        a.merge(&b)
    }
    fn finish(&self, p: Self::Partial, _: &DataFrame, _: &[Arc<Intermediate>]) -> Result<Intermediate> {
        Ok(Intermediate::Stats(Arc::new(p)))
    }
}

/// Ascending finite values: the shared order-statistics node.
struct Quantiles {
    col: usize,
}

impl Reduce for Quantiles {
    type Partial = Vec<f64>;
    fn map(&self, ctx: &ChunkCtx<'_>) -> Result<Vec<f64>> {
        let chunk = ctx.df.columns()[self.col].chunk(ctx.chunk);
        Ok(sorted_finite((0..chunk.row_count()).filter_map(|r| chunk.f64_at(r))))
    }
    fn merge(&self, a: Vec<f64>, b: Vec<f64>) -> Vec<f64> {
        crate::analytics::quantile::merge_sorted(&a, &b)
    }
    fn finish(&self, p: Vec<f64>, _: &DataFrame, _: &[Arc<Intermediate>]) -> Result<Intermediate> {
        Ok(Intermediate::Sorted(Arc::new(p)))
    }
}

/// Ascending finite values of `col` over rows where `anchor` is present.
struct QuantilesWherePresent {
    col: usize,
    anchor: usize,
}

impl Reduce for QuantilesWherePresent {
    type Partial = Vec<f64>;
    fn map(&self, ctx: &ChunkCtx<'_>) -> Result<Vec<f64>> {
        let chunk = ctx.df.columns()[self.col].chunk(ctx.chunk);
        let anchor = ctx.df.columns()[self.anchor].chunk(ctx.chunk);
        Ok(sorted_finite((0..chunk.row_count()).filter(|&r| anchor.is_valid(r)).filter_map(|r| chunk.f64_at(r))))
    }
    fn merge(&self, a: Vec<f64>, b: Vec<f64>) -> Vec<f64> {
        crate::analytics::quantile::merge_sorted(&a, &b)
    }
    fn finish(&self, p: Vec<f64>, _: &DataFrame, _: &[Arc<Intermediate>]) -> Result<Intermediate> {
        Ok(Intermediate::Sorted(Arc::new(p)))
    }
}

/// Bin counts over edges fixed by the column's merged min/max.
struct Hist {
    col: usize,
    bins: usize,
}

impl Reduce for Hist {
    type Partial = Vec<u64>;
    fn map(&self, ctx: &ChunkCtx<'_>) -> Result<Vec<u64>> {
        let Some(layout) = layout_of(as_stats(&ctx.deps[0])?, self.bins) else {
            return Ok(Vec::new());
        };
        let chunk = ctx.df.columns()[self.col].chunk(ctx.chunk);
        Ok(layout.count((0..chunk.row_count()).filter_map(|r| chunk.f64_at(r))))
    }
    fn merge(&self, a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
        add_counts(&a, &b)
    }
    fn finish(&self, p: Vec<u64>, df: &DataFrame, deps: &[Arc<Intermediate>]) -> Result<Intermediate> {
        let Some(layout) = layout_of(as_stats(&deps[0])?, self.bins) else {
            return Ok(Intermediate::unavailable("no finite values"));
        };
        let counts = if p.is_empty() { vec![0; layout.bins] } else { p };
        Ok(Intermediate::Histogram(HistogramChart {
            column: df.columns()[self.col].name().to_owned(),
            histogram: layout.finish(counts),
        }))
    }
}

/// Row-aligned numeric values, NaN where missing.
struct Values {
    col: usize,
}

impl Reduce for Values {
    type Partial = Vec<f64>;
    fn map(&self, ctx: &ChunkCtx<'_>) -> Result<Vec<f64>> {
        let chunk = ctx.df.columns()[self.col].chunk(ctx.chunk);
        Ok((0..chunk.row_count()).map(|r| chunk.f64_at(r).unwrap_or(f64::NAN)).collect())
    }
    fn merge(&self, mut a: Vec<f64>, b: Vec<f64>) -> Vec<f64> {
        a.extend(b);
        a
    }
    fn finish(&self, p: Vec<f64>, _: &DataFrame, _: &[Arc<Intermediate>]) -> Result<Intermediate> {
        Ok(Intermediate::Values(Arc::new(p)))
    }
}

/// Row-aligned category codes.
struct Codes {
    col: usize,
}

impl Reduce for Codes {
    type Partial = Vec<u32>;
    fn map(&self, ctx: &ChunkCtx<'_>) -> Result<Vec<u32>> {
        let chunk = ctx.df.columns()[self.col].chunk(ctx.chunk);
        Ok((0..chunk.row_count()).map(|r| chunk.code_at(r).unwrap_or(MISSING_CODE)).collect())
    }
    fn merge(&self, mut a: Vec<u32>, b: Vec<u32>) -> Vec<u32> {
        a.extend(b);
        a
    }
    fn finish(&self, p: Vec<u32>, _: &DataFrame, _: &[Arc<Intermediate>]) -> Result<Intermediate> {
        Ok(Intermediate::Codes(Arc::new(p)))
    }
}

struct CodeCountsK {
    col: usize,
}

impl Reduce for CodeCountsK {
    type Partial = CodeCounts;
    fn map(&self, ctx: &ChunkCtx<'_>) -> Result<CodeCounts> {
        let chunk = ctx.df.columns()[self.col].chunk(ctx.chunk);
        Ok(CodeCounts::from_codes((0..chunk.row_count()).map(|r| chunk.code_at(r))))
    }
    fn merge(&self, a: CodeCounts, b: CodeCounts) -> CodeCounts {
        a.merge(&b)
    }
    fn finish(&self, p: CodeCounts, _: &DataFrame, _: &[Arc<Intermediate>]) -> Result<Intermediate> {
        Ok(Intermediate::CodeCounts(Arc::new(p)))
    }
}

struct PairCountsK {
    x: usize,
    y: usize,
}

impl Reduce for PairCountsK {
    type Partial = PairCounts;
    fn map(&self, ctx: &ChunkCtx<'_>) -> Result<PairCounts> {
        let cx = ctx.df.columns()[self.x].chunk(ctx.chunk);
        let cy = ctx.df.columns()[self.y].chunk(ctx.chunk);
        let mut p = PairCounts::default();
        for r in 0..cx.row_count() {
            if let (Some(a), Some(b)) = (cx.code_at(r), cy.code_at(r)) {
                *p.cells.entry((a, b)).or_insert(0) += 1;
            }
        }
        Ok(p)
    }
    fn merge(&self, a: PairCounts, b: PairCounts) -> PairCounts {
        a.merge(&b)
    }
    fn finish(&self, p: PairCounts, _: &DataFrame, _: &[Arc<Intermediate>]) -> Result<Intermediate> {
        Ok(Intermediate::PairCounts(Arc::new(p)))
    }
}

/// Co-moments for every column pair `i < j`, pairwise-complete finite rows.
struct CoMomentsK {
    cols: Vec<usize>,
}

impl CoMomentsK {
    fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let m = self.cols.len();
        (0..m).flat_map(move |i| (i + 1..m).map(move |j| (i, j)))
    }
}

impl Reduce for CoMomentsK {
    type Partial = Vec<CoMoments<f64>>;
    fn map(&self, ctx: &ChunkCtx<'_>) -> Result<Self::Partial> {
        let cols: Vec<Vec<f64>> = self
            .cols
            .iter()
            .map(|&c| {
                let chunk = ctx.df.columns()[c].chunk(ctx.chunk);
                (0..chunk.row_count()).map(|r| chunk.f64_at(r).unwrap_or(f64::NAN)).collect()
            })
            .collect();
        Ok(self
            .pairs()
            .map(|(i, j)| {
                let (xs, ys) = finite_pairs(&cols[i], &cols[j]);
                CoMoments::from_pairs(&xs, &ys)
            })
            .collect())
    }
    fn merge(&self, a: Self::Partial, b: Self::Partial) -> Self::Partial {
        if a.is_empty() {
            return b;
        }
        if b.is_empty() {
            return a;
        }
        a.iter().zip(&b).map(|(x, y)| x.merge(y)).collect()
    }
    fn finish(&self, p: Self::Partial, _: &DataFrame, _: &[Arc<Intermediate>]) -> Result<Intermediate> {
        let p = if p.is_empty() { self.pairs().map(|_| CoMoments::default()).collect() } else { p };
        Ok(Intermediate::CoMoments(Arc::new(p)))
    }
}

/// Missing-indicator counts over every column.
struct Nullity;

impl Reduce for Nullity {
    type Partial = NullityCounts;
    fn map(&self, ctx: &ChunkCtx<'_>) -> Result<NullityCounts> {
        let cols = ctx.df.columns();
        let rows = ctx.df.chunk_meta().chunk_row_counts[ctx.chunk];
        let mut counts = NullityCounts::zeros(cols.len());
        let chunks: Vec<_> = cols.iter().map(|c| c.chunk(ctx.chunk)).collect();
        let mut missing = Vec::with_capacity(cols.len());
        for r in 0..rows {
            missing.clear();
            missing.extend((0..cols.len()).filter(|&c| !chunks[c].is_valid(r)));
            counts.add_row(&missing);
        }
        Ok(counts)
    }
    fn merge(&self, a: NullityCounts, b: NullityCounts) -> NullityCounts {
        a.merge(&b)
    }
    fn finish(&self, p: NullityCounts, df: &DataFrame, _: &[Arc<Intermediate>]) -> Result<Intermediate> {
        let p = if p.single.is_empty() { NullityCounts::zeros(df.n_cols()) } else { p };
        Ok(Intermediate::Nullity(Arc::new(p)))
    }
}

/// Missing counts per (row segment, column).
struct Spectrum {
    segments: usize,
}

impl Reduce for Spectrum {
    type Partial = Vec<Vec<u64>>;
    fn map(&self, ctx: &ChunkCtx<'_>) -> Result<Self::Partial> {
        let layout = SegmentLayout::new(ctx.df.n_rows(), self.segments);
        let cols = ctx.df.columns();
        let mut counts = vec![vec![0u64; cols.len()]; layout.len()];
        let rows = ctx.df.chunk_meta().chunk_row_counts[ctx.chunk];
        let segs: Vec<usize> = (0..rows).map(|r| layout.segment_of(ctx.offset + r)).collect();
        for (c, col) in cols.iter().enumerate() {
            let chunk = col.chunk(ctx.chunk);
            for (r, &s) in segs.iter().enumerate() {
                if !chunk.is_valid(r) {
                    counts[s][c] += 1;
                }
            }
        }
        Ok(counts)
    }
    fn merge(&self, a: Self::Partial, b: Self::Partial) -> Self::Partial {
        if a.is_empty() {
            return b;
        }
        a.iter().zip(&b).map(|(x, y)| add_counts(x, y)).collect()
    }
    fn finish(&self, p: Self::Partial, df: &DataFrame, _: &[Arc<Intermediate>]) -> Result<Intermediate> {
        let layout = SegmentLayout::new(df.n_rows(), self.segments);
        let p = if p.is_empty() { vec![vec![0; df.n_cols()]; layout.len()] } else { p };
        Ok(Intermediate::MissingSpectrum(finish_spectrum(&layout, &df.column_names(), &p)))
    }
}

/// One exact key per row for duplicate detection.
struct RowKeys;

const MISSING_KEY: u64 = u64::MAX;

impl Reduce for RowKeys {
    type Partial = Vec<Vec<u64>>;
    fn map(&self, ctx: &ChunkCtx<'_>) -> Result<Self::Partial> {
        let cols = ctx.df.columns();
        let rows = ctx.df.chunk_meta().chunk_row_counts[ctx.chunk];
        let chunks: Vec<_> = cols.iter().map(|c| c.chunk(ctx.chunk)).collect();
        Ok((0..rows)
            .map(|r| {
                chunks
                    .iter()
                    .map(|ch| match (ch.f64_at(r), ch.code_at(r)) {
                        // -0.0 and 0.0 are the same value
                        (Some(v), _) => (v + 0.0).to_bits(),
                        (None, Some(code)) => code as u64,
                        (None, None) => MISSING_KEY,
                    })
                    .collect()
            })
            .collect())
    }
    fn merge(&self, mut a: Self::Partial, b: Self::Partial) -> Self::Partial {
        a.extend(b);
        a
    }
    fn finish(&self, p: Self::Partial, _: &DataFrame, _: &[Arc<Intermediate>]) -> Result<Intermediate> {
        Ok(Intermediate::RowKeys(Arc::new(p)))
    }
}

struct PairBounds {
    x: usize,
    y: usize,
}

impl Reduce for PairBounds {
    type Partial = Option<Bounds>;
    fn map(&self, ctx: &ChunkCtx<'_>) -> Result<Option<Bounds>> {
        let cx = ctx.df.columns()[self.x].chunk(ctx.chunk);
        let cy = ctx.df.columns()[self.y].chunk(ctx.chunk);
        let mut b: Option<Bounds> = None;
        for r in 0..cx.row_count() {
            if let (Some(x), Some(y)) = (cx.f64_at(r), cy.f64_at(r)) {
                if x.is_finite() && y.is_finite() {
                    let p = Bounds::of_point(x, y);
                    b = Some(b.map_or(p, |acc| acc.merge(&p)));
                }
            }
        }
        Ok(b)
    }
    fn merge(&self, a: Option<Bounds>, b: Option<Bounds>) -> Option<Bounds> {
        match (a, b) {
            (Some(a), Some(b)) => Some(a.merge(&b)),
            (a, b) => a.or(b),
        }
    }
    fn finish(&self, p: Option<Bounds>, _: &DataFrame, _: &[Arc<Intermediate>]) -> Result<Intermediate> {
        Ok(Intermediate::Bounds(p))
    }
}

struct Hexbin {
    x: usize,
    y: usize,
    gridsize: usize,
}

impl Hexbin {
    fn layout(&self, deps: &[Arc<Intermediate>]) -> Result<(Option<Bounds>, Option<HexLayout<f64>>)> {
        let bounds = match &*deps[0] {
            Intermediate::Bounds(b) => *b,
            other => return Err(mismatch("bounds", other)),
        };
        let layout = bounds.and_then(|b| HexLayout::new(b.x_min, b.x_max, b.y_min, b.y_max, self.gridsize));
        Ok((bounds, layout))
    }
}

impl Reduce for Hexbin {
    type Partial = HexCounts;
    fn map(&self, ctx: &ChunkCtx<'_>) -> Result<HexCounts> {
        let (_, layout) = self.layout(ctx.deps)?;
        let cx = ctx.df.columns()[self.x].chunk(ctx.chunk);
        let cy = ctx.df.columns()[self.y].chunk(ctx.chunk);
        let xs: Vec<f64> = (0..cx.row_count()).map(|r| cx.f64_at(r).unwrap_or(f64::NAN)).collect();
        let ys: Vec<f64> = (0..cy.row_count()).map(|r| cy.f64_at(r).unwrap_or(f64::NAN)).collect();
        let (xs, ys) = finite_pairs(&xs, &ys);
        Ok(bivariate::hex_counts(layout.as_ref(), &xs, &ys))
    }
    fn merge(&self, a: HexCounts, b: HexCounts) -> HexCounts {
        bivariate::merge_hex_counts(&a, &b)
    }
    fn finish(&self, p: HexCounts, df: &DataFrame, deps: &[Arc<Intermediate>]) -> Result<Intermediate> {
        let (bounds, layout) = self.layout(deps)?;
        if bounds.is_none() {
            return Ok(Intermediate::unavailable("no complete pairs"));
        }
        Ok(Intermediate::Hexbin(HexbinChart {
            x: df.columns()[self.x].name().to_owned(),
            y: df.columns()[self.y].name().to_owned(),
            grid: bivariate::finish_hexbin(layout.as_ref(), bounds, &p, self.gridsize),
        }))
    }
}

/// Counts of `col` over all rows and over rows where `anchor` is present.
/// Numerical columns count into shared bins, categorical columns per code.
struct SplitCountsK {
    anchor: usize,
    col: usize,
    bins: usize,
}

impl Reduce for SplitCountsK {
    type Partial = SplitCounts;
    fn map(&self, ctx: &ChunkCtx<'_>) -> Result<SplitCounts> {
        let col = &ctx.df.columns()[self.col];
        let chunk = col.chunk(ctx.chunk);
        let anchor = ctx.df.columns()[self.anchor].chunk(ctx.chunk);
        let rows = chunk.row_count();
        let mut out = SplitCounts::default();
        match col.dtype() {
            DType::Numerical => {
                let Some(layout) = layout_of(as_stats(&ctx.deps[0])?, self.bins) else {
                    return Ok(out);
                };
                out.before = layout.count((0..rows).filter_map(|r| chunk.f64_at(r)));
                out.after = layout.count((0..rows).filter(|&r| anchor.is_valid(r)).filter_map(|r| chunk.f64_at(r)));
            }
            DType::Categorical => {
                let n = col.dictionary().len();
                out.before = vec![0; n];
                out.after = vec![0; n];
                for r in 0..rows {
                    if let Some(code) = chunk.code_at(r) {
                        out.before[code as usize] += 1;
                        if anchor.is_valid(r) {
                            out.after[code as usize] += 1;
                        }
                    }
                }
            }
        }
        Ok(out)
    }
    fn merge(&self, a: SplitCounts, b: SplitCounts) -> SplitCounts {
        SplitCounts { before: add_counts(&a.before, &b.before), after: add_counts(&a.after, &b.after) }
    }
    fn finish(&self, p: SplitCounts, _: &DataFrame, _: &[Arc<Intermediate>]) -> Result<Intermediate> {
        Ok(Intermediate::Split(Arc::new(p)))
    }
}

// ---------------------------------------------------------------------------
// finalize kernels

struct ColumnStatsF {
    col: String,
}

impl Finalize for ColumnStatsF {
    fn run(&self, _: &DataFrame, inputs: &[Arc<Intermediate>]) -> Result<Intermediate> {
        let stats = as_stats(&inputs[0])?;
        let sorted = as_sorted(&inputs[1])?;
        Ok(Intermediate::ColumnStats(ColumnStats::from_parts(&self.col, stats, sorted)))
    }
}

struct CategoricalStatsF {
    col: usize,
}

impl Finalize for CategoricalStatsF {
    fn run(&self, df: &DataFrame, inputs: &[Arc<Intermediate>]) -> Result<Intermediate> {
        let cc = as_code_counts(&inputs[0])?;
        let col = &df.columns()[self.col];
        let ranked = cc.ranked(col.dictionary());
        let mode = ranked.first().map(|(c, _)| col.dictionary()[*c as usize].clone());
        Ok(Intermediate::CategoricalStats(CategoricalStats {
            column: col.name().to_owned(),
            n: (cc.total() + cc.missing) as usize,
            n_missing: cc.missing as usize,
            n_distinct: ranked.len(),
            mode,
            mode_count: ranked.first().map_or(0, |(_, n)| *n),
        }))
    }
}

struct KdeF {
    col: String,
    grid_points: usize,
    sample: usize,
}

impl Finalize for KdeF {
    fn run(&self, _: &DataFrame, inputs: &[Arc<Intermediate>]) -> Result<Intermediate> {
        let sorted = as_sorted(&inputs[0])?;
        let Some(hist) = as_histogram(&inputs[1])? else {
            return Ok(Intermediate::unavailable("no finite values"));
        };
        let sample;
        let used: &[f64] = if sorted.len() > self.sample {
            sample = take_indices(sorted, &sample_indices(sorted.len(), self.sample, 0));
            &sample
        } else {
            sorted
        };
        match gaussian_kde(used, self.grid_points) {
            Ok((x, density, bandwidth)) => Ok(Intermediate::Kde(KdeChart {
                column: self.col.clone(),
                curve: KdeCurve { x, density, bandwidth, n_used: used.len(), n_total: sorted.len() },
                histogram: hist.histogram.clone(),
            })),
            Err(EdaError::DegenerateSpread(reason)) => Ok(Intermediate::unavailable(reason)),
            Err(e) => Err(e),
        }
    }
}

struct QqF {
    col: String,
    points: usize,
}

impl Finalize for QqF {
    fn run(&self, _: &DataFrame, inputs: &[Arc<Intermediate>]) -> Result<Intermediate> {
        let stats = as_stats(&inputs[0])?;
        let sorted = as_sorted(&inputs[1])?;
        match qq_normal(sorted, stats.moments.mean, stats.moments.std(), self.points) {
            Ok((theoretical, sample)) => {
                Ok(Intermediate::Qq(QqChart { column: self.col.clone(), points: QqPoints { theoretical, sample } }))
            }
            Err(EdaError::DegenerateSpread(reason)) => Ok(Intermediate::unavailable(reason)),
            Err(e) => Err(e),
        }
    }
}

struct BoxF {
    col: String,
    max_outliers: usize,
}

impl Finalize for BoxF {
    fn run(&self, _: &DataFrame, inputs: &[Arc<Intermediate>]) -> Result<Intermediate> {
        let sorted = as_sorted(&inputs[0])?;
        Ok(match tukey(sorted, self.max_outliers) {
            Some(b) => Intermediate::Box(BoxGroups { column: self.col.clone(), group_by: None, boxes: vec![b], omitted: vec![] }),
            None => Intermediate::unavailable("no finite values"),
        })
    }
}

struct BarsF {
    col: usize,
    top_k: usize,
}

impl Finalize for BarsF {
    fn run(&self, df: &DataFrame, inputs: &[Arc<Intermediate>]) -> Result<Intermediate> {
        let cc = as_code_counts(&inputs[0])?;
        let col = &df.columns()[self.col];
        Ok(Intermediate::Bars(BarChart { column: col.name().to_owned(), counts: cc.top_k(col.dictionary(), self.top_k) }))
    }
}

/// Midranks over every row, reused for pairs without missing or non-finite cells.
fn full_ranks(values: &[f64]) -> Option<Vec<f64>> {
    values.iter().all(|v| v.is_finite()).then(|| midranks(values))
}

/// Row indices of the finite values, sorted by value.
fn finite_order(values: &[f64]) -> Vec<u32> {
    let mut order: Vec<u32> = (0..values.len() as u32).filter(|&r| values[r as usize].is_finite()).collect();
    order.sort_by(|&a, &b| total_cmp(&values[a as usize], &values[b as usize]));
    order
}

/// Midranks among the rows where `other` is also finite, written into `out` by row.
/// Matches `midranks` on the complete pairs without sorting again.
fn pair_ranks(order: &[u32], values: &[f64], other: &[f64], out: &mut [f64]) {
    let kept: Vec<usize> = order.iter().map(|&r| r as usize).filter(|&r| other[r].is_finite()).collect();
    let mut i = 0;
    while i < kept.len() {
        let mut j = i + 1;
        while j < kept.len() && values[kept[j]] == values[kept[i]] {
            j += 1;
        }
        let rank = (i + 1 + j) as f64 / 2.0;
        for &r in &kept[i..j] {
            out[r] = rank;
        }
        i = j;
    }
}

fn spearman_pairwise(a: &[f64], oa: &[u32], b: &[f64], ob: &[u32], ra: &mut [f64], rb: &mut [f64]) -> f64 {
    pair_ranks(oa, a, b, ra);
    pair_ranks(ob, b, a, rb);
    let (xs, ys): (Vec<f64>, Vec<f64>) =
        (0..a.len()).filter(|&r| a[r].is_finite() && b[r].is_finite()).map(|r| (ra[r], rb[r])).unzip();
    pearson(&xs, &ys)
}

struct CorrF {
    method: CorrMethod,
    cols: Vec<String>,
    kendall_cap: usize,
    seed: u64,
}

impl Finalize for CorrF {
    fn run(&self, _: &DataFrame, inputs: &[Arc<Intermediate>]) -> Result<Intermediate> {
        let m = self.cols.len();
        let mut values = vec![vec![1.0; m]; m];
        let mut sampled_rows = None;
        match self.method {
            CorrMethod::Pearson => {
                let Intermediate::CoMoments(cm) = &*inputs[0] else {
                    return Err(mismatch("co-moments", &inputs[0]));
                };
                let mut k = 0;
                for i in 0..m {
                    for j in i + 1..m {
                        let r = cm[k].pearson();
                        values[i][j] = r;
                        values[j][i] = r;
                        k += 1;
                    }
                }
            }
            CorrMethod::Spearman | CorrMethod::Kendall => {
                let mut cols: Vec<&[f64]> = inputs.iter().map(|i| as_values(i)).collect::<Result<_>>()?;
                let taken: Vec<Vec<f64>>;
                let n = cols.first().map_or(0, |c| c.len());
                if self.method == CorrMethod::Kendall && n > self.kendall_cap {
                    let idx = sample_indices(n, self.kendall_cap, self.seed);
                    taken = cols.iter().map(|c| take_indices(c, &idx)).collect();
                    cols = taken.iter().map(Vec::as_slice).collect();
                    sampled_rows = Some(self.kendall_cap);
                }
                let spearman = self.method == CorrMethod::Spearman;
                let ranks: Vec<Option<Vec<f64>>> =
                    if spearman { cols.iter().map(|c| full_ranks(c)).collect() } else { vec![None; m] };
                let orders: Vec<Vec<u32>> = if spearman && ranks.iter().any(Option::is_none) {
                    cols.iter().map(|c| finite_order(c)).collect()
                } else {
                    Vec::new()
                };
                let (mut ra, mut rb) = (vec![0.0; n], vec![0.0; n]);
                for i in 0..m {
                    for j in i + 1..m {
                        let r = match (&ranks[i], &ranks[j]) {
                            (Some(a), Some(b)) => pearson(a, b),
                            _ if spearman => {
                                spearman_pairwise(cols[i], &orders[i], cols[j], &orders[j], &mut ra, &mut rb)
                            }
                            _ => {
                                let (xs, ys) = finite_pairs(cols[i], cols[j]);
                                correlation(self.method, &xs, &ys)
                            }
                        };
                        values[i][j] = r;
                        values[j][i] = r;
                    }
                }
            }
        }
        Ok(Intermediate::CorrMatrix(CorrMatrix { method: self.method, columns: self.cols.clone(), values, sampled_rows }))
    }
}

struct CorrRankF {
    anchor: String,
}

impl Finalize for CorrRankF {
    fn run(&self, df: &DataFrame, inputs: &[Arc<Intermediate>]) -> Result<Intermediate> {
        let Intermediate::CorrMatrix(m) = &*inputs[0] else {
            return Err(mismatch("correlation matrix", &inputs[0]));
        };
        corr_rank(m, &self.anchor).map(Intermediate::CorrRanking).ok_or_else(|| df.unknown_column(&self.anchor))
    }
}

struct ScatterF {
    x: String,
    y: String,
    sample: usize,
    seed: u64,
}

impl Finalize for ScatterF {
    fn run(&self, _: &DataFrame, inputs: &[Arc<Intermediate>]) -> Result<Intermediate> {
        let (xs, ys) = finite_pairs(as_values(&inputs[0])?, as_values(&inputs[1])?);
        Ok(match bivariate::scatter_sample(&xs, &ys, self.sample, self.seed) {
            Some(points) => Intermediate::Scatter(ScatterChart { x: self.x.clone(), y: self.y.clone(), points }),
            None => Intermediate::unavailable("no complete pairs"),
        })
    }
}

struct BinnedBoxF {
    x: String,
    y: String,
    bins: usize,
    max_outliers: usize,
}

impl Finalize for BinnedBoxF {
    fn run(&self, _: &DataFrame, inputs: &[Arc<Intermediate>]) -> Result<Intermediate> {
        let (xs, ys) = finite_pairs(as_values(&inputs[0])?, as_values(&inputs[1])?);
        if xs.is_empty() {
            return Ok(Intermediate::unavailable("no complete pairs"));
        }
        let boxes = bivariate::binned_box(&xs, &ys, self.bins, self.max_outliers);
        Ok(Intermediate::Box(BoxGroups { column: self.y.clone(), group_by: Some(self.x.clone()), boxes, omitted: vec![] }))
    }
}

/// Finite values of `values` per shown category, most frequent categories first.
fn grouped_values(values: &[f64], codes: &[u32], shown: &[u32]) -> Vec<Vec<f64>> {
    let mut slot = std::collections::HashMap::new();
    for (i, c) in shown.iter().enumerate() {
        slot.insert(*c, i);
    }
    let mut groups = vec![Vec::new(); shown.len()];
    for (v, c) in values.iter().zip(codes) {
        if let Some(&i) = slot.get(c) {
            if v.is_finite() {
                groups[i].push(*v);
            }
        }
    }
    groups
}

struct GroupedBoxF {
    num: String,
    cat: usize,
    top_k: usize,
    max_outliers: usize,
}

impl Finalize for GroupedBoxF {
    fn run(&self, df: &DataFrame, inputs: &[Arc<Intermediate>]) -> Result<Intermediate> {
        let values = as_values(&inputs[0])?;
        let codes = as_codes(&inputs[1])?;
        let dict = df.columns()[self.cat].dictionary();
        let shown: Vec<u32> = as_code_counts(&inputs[2])?.ranked(dict).into_iter().take(self.top_k).map(|(c, _)| c).collect();
        let mut boxes = Vec::new();
        let mut omitted = Vec::new();
        for (code, mut g) in shown.iter().zip(grouped_values(values, codes, &shown)) {
            g.sort_by(total_cmp);
            let label = dict[*code as usize].clone();
            match tukey(&g, self.max_outliers) {
                Some(mut b) => {
                    b.label = Some(label);
                    boxes.push(b);
                }
                None => omitted.push(label),
            }
        }
        Ok(Intermediate::Box(BoxGroups {
            column: self.num.clone(),
            group_by: Some(df.columns()[self.cat].name().to_owned()),
            boxes,
            omitted,
        }))
    }
}

struct CategoryHistF {
    num: String,
    cat: usize,
    bins: usize,
    top_k: usize,
}

impl Finalize for CategoryHistF {
    fn run(&self, df: &DataFrame, inputs: &[Arc<Intermediate>]) -> Result<Intermediate> {
        let values = as_values(&inputs[0])?;
        let codes = as_codes(&inputs[1])?;
        let dict = df.columns()[self.cat].dictionary();
        let shown: Vec<u32> = as_code_counts(&inputs[2])?.ranked(dict).into_iter().take(self.top_k).map(|(c, _)| c).collect();
        let Some(layout) = layout_of(as_stats(&inputs[3])?, self.bins) else {
            return Ok(Intermediate::unavailable("no finite values"));
        };
        let groups = shown
            .iter()
            .zip(grouped_values(values, codes, &shown))
            .map(|(code, g)| HistogramGroup { label: dict[*code as usize].clone(), histogram: layout.finish(layout.count(g)) })
            .collect();
        Ok(Intermediate::HistogramGroups(HistogramGroups {
            column: self.num.clone(),
            group_by: df.columns()[self.cat].name().to_owned(),
            groups,
        }))
    }
}

struct CrossF {
    x: usize,
    y: usize,
    top_k: usize,
}

impl Finalize for CrossF {
    fn run(&self, df: &DataFrame, inputs: &[Arc<Intermediate>]) -> Result<Intermediate> {
        let Intermediate::PairCounts(pairs) = &*inputs[0] else {
            return Err(mismatch("pair counts", &inputs[0]));
        };
        let (cx, cy) = (&df.columns()[self.x], &df.columns()[self.y]);
        Ok(Intermediate::Cross(CrossChart {
            x: cx.name().to_owned(),
            y: cy.name().to_owned(),
            counts: cross_counts(pairs, cx.dictionary(), cy.dictionary(), self.top_k),
        }))
    }
}

struct MissingBarF;

impl Finalize for MissingBarF {
    fn run(&self, df: &DataFrame, inputs: &[Arc<Intermediate>]) -> Result<Intermediate> {
        let n = as_nullity(&inputs[0])?;
        Ok(Intermediate::MissingBar(MissingBar::new(&df.column_names(), &n.single, df.n_rows())))
    }
}

struct NullityCorrF;

impl Finalize for NullityCorrF {
    fn run(&self, df: &DataFrame, inputs: &[Arc<Intermediate>]) -> Result<Intermediate> {
        Ok(match nullity_corr(&df.column_names(), as_nullity(&inputs[0])?) {
            Some(c) => Intermediate::NullityCorr(c),
            None => Intermediate::unavailable("fewer than two columns have some but not all values missing"),
        })
    }
}

struct DendrogramF;

impl Finalize for DendrogramF {
    fn run(&self, df: &DataFrame, inputs: &[Arc<Intermediate>]) -> Result<Intermediate> {
        Ok(match nullity_dendrogram(&df.column_names(), as_nullity(&inputs[0])?) {
            Some(t) => Intermediate::Dendrogram(t),
            None => Intermediate::unavailable("needs at least two columns"),
        })
    }
}

struct ImpactF {
    anchor: String,
    col: usize,
    bins: usize,
    top_k: usize,
}

impl Finalize for ImpactF {
    fn run(&self, df: &DataFrame, inputs: &[Arc<Intermediate>]) -> Result<Intermediate> {
        let Intermediate::Split(split) = &*inputs[0] else {
            return Err(mismatch("split counts", &inputs[0]));
        };
        let col = &df.columns()[self.col];
        let (before, after, ks_d) = match col.dtype() {
            DType::Numerical => {
                let Some(layout) = layout_of(as_stats(&inputs[1])?, self.bins) else {
                    return Ok(Intermediate::unavailable("no finite values"));
                };
                let fill = |c: &Vec<u64>| if c.is_empty() { vec![0; layout.bins] } else { c.clone() };
                let d = ks_statistic(as_sorted(&inputs[2])?, as_sorted(&inputs[3])?);
                (
                    Distribution::Histogram(layout.finish(fill(&split.before))),
                    Distribution::Histogram(layout.finish(fill(&split.after))),
                    d,
                )
            }
            DType::Categorical => {
                let dict = col.dictionary();
                let b = CodeCounts { counts: split.before.clone(), missing: 0 };
                let a = CodeCounts { counts: split.after.clone(), missing: 0 };
                let shown: Vec<u32> = b.ranked(dict).into_iter().take(self.top_k.max(1)).map(|(c, _)| c).collect();
                let d = discrete_ks(&split.before, &split.after);
                (Distribution::Bars(b.restricted(dict, &shown)), Distribution::Bars(a.restricted(dict, &shown)), d)
            }
        };
        Ok(Intermediate::Impact(ImpactPair {
            anchor: self.anchor.clone(),
            column: col.name().to_owned(),
            dtype: col.dtype(),
            before,
            after,
            ks_d: (!ks_d.is_nan()).then_some(ks_d),
        }))
    }
}

struct EcdfF {
    anchor: String,
    col: String,
    points: usize,
}

impl Finalize for EcdfF {
    fn run(&self, _: &DataFrame, inputs: &[Arc<Intermediate>]) -> Result<Intermediate> {
        let before = as_sorted(&inputs[0])?;
        let after = as_sorted(&inputs[1])?;
        if before.is_empty() {
            return Ok(Intermediate::unavailable("no finite values"));
        }
        Ok(Intermediate::Ecdf(EcdfPair {
            anchor: self.anchor.clone(),
            column: self.col.clone(),
            before: ecdf(before, self.points),
            after: ecdf(after, self.points),
        }))
    }
}

struct DatasetF;

impl Finalize for DatasetF {
    fn run(&self, df: &DataFrame, inputs: &[Arc<Intermediate>]) -> Result<Intermediate> {
        let nullity = as_nullity(&inputs[0])?;
        let Intermediate::RowKeys(keys) = &*inputs[1] else {
            return Err(mismatch("row keys", &inputs[1]));
        };
        let missing_cells: u64 = nullity.single.iter().sum();
        let cells = (df.n_rows() * df.n_cols()) as f64;
        let column_types: Vec<ColumnType> =
            df.columns().iter().map(|c| ColumnType { name: c.name().to_owned(), dtype: c.dtype() }).collect();
        let n_numerical = column_types.iter().filter(|c| c.dtype == DType::Numerical).count();
        Ok(Intermediate::DatasetStats(DatasetStats {
            rows: df.n_rows(),
            columns: df.n_cols(),
            n_numerical,
            n_categorical: df.n_cols() - n_numerical,
            missing_cells,
            missing_pct: if cells > 0.0 { 100.0 * missing_cells as f64 / cells } else { 0.0 },
            duplicate_rows: count_duplicates(keys),
            column_types,
        }))
    }
}

// ---------------------------------------------------------------------------
// planner

/// Adds kernels for a specific frame to a graph, deduplicating as it goes.
pub struct Planner<'a> {
    g: &'a mut ComputeDag,
    df: &'a DataFrame,
}

impl<'a> Planner<'a> {
    pub fn new(g: &'a mut ComputeDag, df: &'a DataFrame) -> Self {
        Planner { g, df }
    }

    pub fn graph(&self) -> &ComputeDag {
        self.g
    }

    fn col(&self, name: &str) -> Result<usize> {
        self.df.column_index(name)
    }

    fn require(&self, name: &str, dtype: DType) -> Result<usize> {
        let i = self.col(name)?;
        let got = self.df.columns()[i].dtype();
        if got != dtype {
            return Err(EdaError::UnsupportedCombination(format!(
                "column `{name}` is {}, this computation needs a {} column",
                got.as_str(),
                dtype.as_str()
            )));
        }
        Ok(i)
    }

    pub fn row_count(&mut self) -> Result<NodeId> {
        self.g.add_reduce("row_count", String::new(), vec![], RowCount)
    }

    pub fn stats(&mut self, col: &str) -> Result<NodeId> {
        let c = self.require(col, DType::Numerical)?;
        self.g.add_reduce("stats", params(&[("col", &col)]), vec![], Stats { col: c })
    }

    pub fn quantiles(&mut self, col: &str) -> Result<NodeId> {
        let c = self.require(col, DType::Numerical)?;
        self.g.add_reduce("quantiles", params(&[("col", &col)]), vec![], Quantiles { col: c })
    }

    pub fn quantiles_where_present(&mut self, col: &str, anchor: &str) -> Result<NodeId> {
        let c = self.require(col, DType::Numerical)?;
        let a = self.col(anchor)?;
        self.g.add_reduce(
            "quantiles_where_present",
            params(&[("col", &col), ("anchor", &anchor)]),
            vec![],
            QuantilesWherePresent { col: c, anchor: a },
        )
    }

    pub fn histogram(&mut self, col: &str, bins: usize) -> Result<NodeId> {
        let stats = self.stats(col)?;
        let c = self.col(col)?;
        self.g.add_reduce("histogram", params(&[("col", &col), ("bins", &bins)]), vec![stats], Hist { col: c, bins })
    }

    pub fn values(&mut self, col: &str) -> Result<NodeId> {
        let c = self.require(col, DType::Numerical)?;
        self.g.add_reduce("values", params(&[("col", &col)]), vec![], Values { col: c })
    }

    pub fn codes(&mut self, col: &str) -> Result<NodeId> {
        let c = self.require(col, DType::Categorical)?;
        self.g.add_reduce("codes", params(&[("col", &col)]), vec![], Codes { col: c })
    }

    pub fn code_counts(&mut self, col: &str) -> Result<NodeId> {
        let c = self.require(col, DType::Categorical)?;
        self.g.add_reduce("code_counts", params(&[("col", &col)]), vec![], CodeCountsK { col: c })
    }

    pub fn pair_counts(&mut self, x: &str, y: &str) -> Result<NodeId> {
        let (cx, cy) = (self.require(x, DType::Categorical)?, self.require(y, DType::Categorical)?);
        self.g.add_reduce("pair_counts", params(&[("x", &x), ("y", &y)]), vec![], PairCountsK { x: cx, y: cy })
    }

    pub fn co_moments(&mut self, cols: &[String]) -> Result<NodeId> {
        let idx = cols.iter().map(|c| self.require(c, DType::Numerical)).collect::<Result<Vec<_>>>()?;
        self.g.add_reduce("co_moments", params(&[("cols", &cols.join(","))]), vec![], CoMomentsK { cols: idx })
    }

    pub fn nullity(&mut self) -> Result<NodeId> {
        self.g.add_reduce("nullity", String::new(), vec![], Nullity)
    }

    pub fn row_keys(&mut self) -> Result<NodeId> {
        self.g.add_reduce("row_keys", String::new(), vec![], RowKeys)
    }

    pub fn pair_bounds(&mut self, x: &str, y: &str) -> Result<NodeId> {
        let (cx, cy) = (self.require(x, DType::Numerical)?, self.require(y, DType::Numerical)?);
        self.g.add_reduce("pair_bounds", params(&[("x", &x), ("y", &y)]), vec![], PairBounds { x: cx, y: cy })
    }

    pub fn split_counts(&mut self, anchor: &str, col: &str, bins: usize) -> Result<NodeId> {
        let a = self.col(anchor)?;
        let c = self.col(col)?;
        match self.df.columns()[c].dtype() {
            DType::Numerical => {
                let stats = self.stats(col)?;
                self.g.add_reduce(
                    "split_counts",
                    params(&[("anchor", &anchor), ("col", &col), ("bins", &bins)]),
                    vec![stats],
                    SplitCountsK { anchor: a, col: c, bins },
                )
            }
            DType::Categorical => self.g.add_reduce(
                "split_counts",
                params(&[("anchor", &anchor), ("col", &col)]),
                vec![],
                SplitCountsK { anchor: a, col: c, bins: 0 },
            ),
        }
    }

    // chart-level nodes

    pub fn dataset_stats(&mut self) -> Result<NodeId> {
        let deps = vec![self.nullity()?, self.row_keys()?];
        self.g.add_finalize("dataset_stats", String::new(), deps, DatasetF)
    }

    pub fn column_stats(&mut self, col: &str) -> Result<NodeId> {
        let deps = vec![self.stats(col)?, self.quantiles(col)?];
        self.g.add_finalize("column_stats", params(&[("col", &col)]), deps, ColumnStatsF { col: col.to_owned() })
    }

    pub fn categorical_stats(&mut self, col: &str) -> Result<NodeId> {
        let deps = vec![self.code_counts(col)?];
        let c = self.col(col)?;
        self.g.add_finalize("categorical_stats", params(&[("col", &col)]), deps, CategoricalStatsF { col: c })
    }

    pub fn kde(&mut self, col: &str, bins: usize, grid_points: usize, sample: usize) -> Result<NodeId> {
        let deps = vec![self.quantiles(col)?, self.histogram(col, bins)?];
        self.g.add_finalize(
            "kde",
            params(&[("col", &col), ("grid_points", &grid_points), ("sample", &sample)]),
            deps,
            KdeF { col: col.to_owned(), grid_points, sample },
        )
    }

    pub fn qq(&mut self, col: &str, points: usize) -> Result<NodeId> {
        let deps = vec![self.stats(col)?, self.quantiles(col)?];
        self.g.add_finalize("qq_normal", params(&[("col", &col), ("points", &points)]), deps, QqF { col: col.to_owned(), points })
    }

    pub fn box_plot(&mut self, col: &str, max_outliers: usize) -> Result<NodeId> {
        let deps = vec![self.quantiles(col)?];
        self.g.add_finalize(
            "box",
            params(&[("col", &col), ("max_outliers", &max_outliers)]),
            deps,
            BoxF { col: col.to_owned(), max_outliers },
        )
    }

    pub fn bars(&mut self, col: &str, top_k: usize) -> Result<NodeId> {
        let deps = vec![self.code_counts(col)?];
        let c = self.col(col)?;
        self.g.add_finalize("bars", params(&[("col", &col), ("top_k", &top_k)]), deps, BarsF { col: c, top_k })
    }

    pub fn corr_matrix(&mut self, method: CorrMethod, cols: &[String], kendall_cap: usize, seed: u64) -> Result<NodeId> {
        let names = cols.join(",");
        match method {
            CorrMethod::Pearson => {
                let deps = vec![self.co_moments(cols)?];
                self.g.add_finalize(
                    "corr_matrix",
                    params(&[("method", &method.as_str()), ("cols", &names)]),
                    deps,
                    CorrF { method, cols: cols.to_vec(), kendall_cap, seed },
                )
            }
            CorrMethod::Spearman => {
                let deps = cols.iter().map(|c| self.values(c)).collect::<Result<Vec<_>>>()?;
                self.g.add_finalize(
                    "corr_matrix",
                    params(&[("method", &method.as_str()), ("cols", &names)]),
                    deps,
                    CorrF { method, cols: cols.to_vec(), kendall_cap, seed },
                )
            }
            CorrMethod::Kendall => {
                let deps = cols.iter().map(|c| self.values(c)).collect::<Result<Vec<_>>>()?;
                self.g.add_finalize(
                    "corr_matrix",
                    params(&[("method", &method.as_str()), ("cols", &names), ("cap", &kendall_cap), ("seed", &seed)]),
                    deps,
                    CorrF { method, cols: cols.to_vec(), kendall_cap, seed },
                )
            }
        }
    }

    pub fn corr_ranking(&mut self, matrix: NodeId, anchor: &str) -> Result<NodeId> {
        self.col(anchor)?;
        self.g.add_finalize("corr_rank", params(&[("anchor", &anchor)]), vec![matrix], CorrRankF { anchor: anchor.to_owned() })
    }

    pub fn scatter(&mut self, x: &str, y: &str, sample: usize, seed: u64) -> Result<NodeId> {
        let deps = vec![self.values(x)?, self.values(y)?];
        self.g.add_finalize(
            "scatter",
            params(&[("x", &x), ("y", &y), ("sample", &sample), ("seed", &seed)]),
            deps,
            ScatterF { x: x.to_owned(), y: y.to_owned(), sample, seed },
        )
    }

    pub fn hexbin(&mut self, x: &str, y: &str, gridsize: usize) -> Result<NodeId> {
        let bounds = self.pair_bounds(x, y)?;
        let (cx, cy) = (self.col(x)?, self.col(y)?);
        self.g.add_reduce(
            "hexbin",
            params(&[("x", &x), ("y", &y), ("gridsize", &gridsize)]),
            vec![bounds],
            Hexbin { x: cx, y: cy, gridsize },
        )
    }

    pub fn binned_box(&mut self, x: &str, y: &str, bins: usize, max_outliers: usize) -> Result<NodeId> {
        let deps = vec![self.values(x)?, self.values(y)?];
        self.g.add_finalize(
            "binned_box",
            params(&[("x", &x), ("y", &y), ("bins", &bins), ("max_outliers", &max_outliers)]),
            deps,
            BinnedBoxF { x: x.to_owned(), y: y.to_owned(), bins, max_outliers },
        )
    }

    pub fn grouped_box(&mut self, num: &str, cat: &str, top_k: usize, max_outliers: usize) -> Result<NodeId> {
        let deps = vec![self.values(num)?, self.codes(cat)?, self.code_counts(cat)?];
        let c = self.col(cat)?;
        self.g.add_finalize(
            "grouped_box",
            params(&[("num", &num), ("cat", &cat), ("top_k", &top_k), ("max_outliers", &max_outliers)]),
            deps,
            GroupedBoxF { num: num.to_owned(), cat: c, top_k, max_outliers },
        )
    }

    pub fn category_histograms(&mut self, num: &str, cat: &str, bins: usize, top_k: usize) -> Result<NodeId> {
        let deps = vec![self.values(num)?, self.codes(cat)?, self.code_counts(cat)?, self.stats(num)?];
        let c = self.col(cat)?;
        self.g.add_finalize(
            "category_histograms",
            params(&[("num", &num), ("cat", &cat), ("bins", &bins), ("top_k", &top_k)]),
            deps,
            CategoryHistF { num: num.to_owned(), cat: c, bins, top_k },
        )
    }

    pub fn cross(&mut self, x: &str, y: &str, top_k: usize) -> Result<NodeId> {
        let deps = vec![self.pair_counts(x, y)?];
        let (cx, cy) = (self.col(x)?, self.col(y)?);
        self.g.add_finalize("cross", params(&[("x", &x), ("y", &y), ("top_k", &top_k)]), deps, CrossF { x: cx, y: cy, top_k })
    }

    pub fn missing_bar(&mut self) -> Result<NodeId> {
        let deps = vec![self.nullity()?];
        self.g.add_finalize("missing_bar", String::new(), deps, MissingBarF)
    }

    pub fn missing_spectrum(&mut self, segments: usize) -> Result<NodeId> {
        self.g.add_reduce("missing_spectrum", params(&[("segments", &segments)]), vec![], Spectrum { segments })
    }

    pub fn nullity_corr(&mut self) -> Result<NodeId> {
        let deps = vec![self.nullity()?];
        self.g.add_finalize("nullity_corr", String::new(), deps, NullityCorrF)
    }

    pub fn dendrogram(&mut self) -> Result<NodeId> {
        let deps = vec![self.nullity()?];
        self.g.add_finalize("nullity_dendrogram", String::new(), deps, DendrogramF)
    }

    pub fn impact(&mut self, anchor: &str, col: &str, bins: usize, top_k: usize) -> Result<NodeId> {
        let c = self.col(col)?;
        let split = self.split_counts(anchor, col, bins)?;
        let (deps, key) = match self.df.columns()[c].dtype() {
            DType::Numerical => (
                vec![split, self.stats(col)?, self.quantiles(col)?, self.quantiles_where_present(col, anchor)?],
                params(&[("anchor", &anchor), ("col", &col), ("bins", &bins)]),
            ),
            DType::Categorical => (vec![split], params(&[("anchor", &anchor), ("col", &col), ("top_k", &top_k)])),
        };
        self.g.add_finalize("impact", key, deps, ImpactF { anchor: anchor.to_owned(), col: c, bins, top_k })
    }

    pub fn ecdf(&mut self, anchor: &str, col: &str, points: usize) -> Result<NodeId> {
        let deps = vec![self.quantiles(col)?, self.quantiles_where_present(col, anchor)?];
        self.g.add_finalize(
            "ecdf",
            params(&[("anchor", &anchor), ("col", &col), ("points", &points)]),
            deps,
            EcdfF { anchor: anchor.to_owned(), col: col.to_owned(), points },
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::Column;
    use crate::graph::execute;

    fn frame(chunk: usize) -> DataFrame {
        let x: Vec<Option<f64>> = (0..20).map(|i| if i % 7 == 3 { None } else { Some((i * i % 11) as f64) }).collect();
        let y: Vec<Option<f64>> = (0..20).map(|i| Some(i as f64 * 0.5)).collect();
        let c: Vec<Option<&str>> = (0..20).map(|i| if i % 5 == 0 { None } else { Some(["a", "b", "c"][i % 3]) }).collect();
        DataFrame::new(
            vec![Column::from_f64("x", &x, chunk), Column::from_f64("y", &y, chunk), Column::from_strs("c", &c, chunk)],
            "inline",
        )
        .unwrap()
    }

    #[test]
    fn univariate_nodes_share_quantiles() {
        let df = frame(6);
        let mut g = ComputeDag::new();
        let mut p = Planner::new(&mut g, &df);
        p.column_stats("x").unwrap();
        p.histogram("x", 10).unwrap();
        p.kde("x", 10, 200, 10_000).unwrap();
        p.qq("x", 100).unwrap();
        p.box_plot("x", 100).unwrap();
        let q: Vec<NodeId> = g.with_op("quantiles").collect();
        assert_eq!(q.len(), 1);
        assert!(g.consumers(q[0]) >= 4);
        assert_eq!(g.with_op("histogram").count(), 1, "kde reuses the histogram node");
    }

    #[test]
    fn outputs_independent_of_chunking() {
        let build = |df: &DataFrame| {
            let mut g = ComputeDag::new();
            let mut p = Planner::new(&mut g, df);
            let ids = vec![
                p.column_stats("x").unwrap(),
                p.histogram("x", 5).unwrap(),
                p.hexbin("x", "y", 4).unwrap(),
                p.missing_spectrum(3).unwrap(),
                p.dataset_stats().unwrap(),
                p.impact("x", "c", 5, 10).unwrap(),
                p.impact("c", "y", 5, 10).unwrap(),
                p.grouped_box("y", "c", 10, 100).unwrap(),
            ];
            (g, ids)
        };
        let base = frame(20);
        let (g, ids) = build(&base);
        let want = execute(&g, &base, 1).unwrap();
        for chunk in [1, 3, 7] {
            let df = base.rechunk(chunk).unwrap();
            let got = execute(&g, &df, 2).unwrap();
            for &id in &ids {
                let (a, b) = (want.get(id), got.get(id));
                if let (Intermediate::ColumnStats(a), Intermediate::ColumnStats(b)) = (a, b) {
                    assert!((a.mean - b.mean).abs() < 1e-12 && (a.variance - b.variance).abs() < 1e-12);
                    assert_eq!(a.quantiles, b.quantiles);
                } else {
                    assert_eq!(a, b, "node {id} chunk {chunk}");
                }
            }
        }
    }

    #[test]
    fn impact_drops_rows_with_missing_anchor() {
        let df = frame(4);
        let mut g = ComputeDag::new();
        let id = Planner::new(&mut g, &df).impact("x", "c", 5, 10).unwrap();
        let out = execute(&g, &df, 1).unwrap();
        let Intermediate::Impact(pair) = out.get(id) else { panic!() };
        let (b, a) = (pair.before.aligned_counts(), pair.after.aligned_counts());
        assert!(b.iter().zip(&a).all(|(b, a)| a <= b));
        assert!(pair.before.total() > pair.after.total());
    }

    #[test]
    fn wrong_dtype_is_rejected() {
        let df = frame(4);
        let mut g = ComputeDag::new();
        assert!(matches!(Planner::new(&mut g, &df).stats("c"), Err(EdaError::UnsupportedCombination(_))));
        assert!(matches!(Planner::new(&mut g, &df).codes("x"), Err(EdaError::UnsupportedCombination(_))));
        assert!(matches!(Planner::new(&mut g, &df).stats("zz"), Err(EdaError::UnknownColumn { .. })));
    }
}
