//! The task-centric API: one call per analysis task.
//!
//! A task resolves its column dtypes, looks up the charts that task produces,
//! plans every chart into one deduplicated graph, executes it once, and
//! attaches insights and how-to guides to the resulting panels.

mod plan;
mod report;

pub use report::{create_report, plan_report, section_graphs, PanelGroup, Report, ReportPlan, Section, SECTION_NAMES};

use crate::chart::ChartKind;
use crate::config::{ConfigTree, HowtoEntry};
use crate::error::{EdaError, Result};
use crate::frame::{DType, DataFrame};
use crate::graph::{execute_with, ops::Planner, ComputeDag, Execution, Progress};
use crate::insights::Insight;
use crate::intermediate::Intermediate;
use crate::analytics::correlation::CorrMethod;
use plan::PanelPlan;
use serde::Serialize;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Plot,
    PlotCorrelation,
    PlotMissing,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Plot, Family::PlotCorrelation, Family::PlotMissing];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::Plot => "plot",
            Family::PlotCorrelation => "plot_correlation",
            Family::PlotMissing => "plot_missing",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A task family applied to 0-2 named columns, with their resolved dtypes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TaskSignature {
    pub family: Family,
    pub columns: Vec<String>,
    pub dtypes: Vec<DType>,
    /// Every frame column with its dtype, in frame order.
    #[serde(skip)]
    pub frame: Vec<(String, DType)>,
}

impl TaskSignature {
    /// Resolve column names against `df` and check the task accepts their dtypes.
    pub fn resolve<S: AsRef<str>>(df: &DataFrame, family: Family, cols: &[S]) -> Result<Self> {
        if cols.len() > 2 {
            return Err(EdaError::InvalidArgument(format!("{family} takes at most two columns, got {}", cols.len())));
        }
        let mut columns = Vec::new();
        let mut dtypes = Vec::new();
        for c in cols {
            let i = df.column_index(c.as_ref())?;
            columns.push(c.as_ref().to_owned());
            dtypes.push(df.columns()[i].dtype());
        }
        let frame = df.columns().iter().map(|c| (c.name().to_owned(), c.dtype())).collect();
        let sig = TaskSignature { family, columns, dtypes, frame };
        sig.check()?;
        Ok(sig)
    }

    pub fn arity(&self) -> usize {
        self.columns.len()
    }

    fn numerical_frame_columns(&self) -> Vec<String> {
        self.frame.iter().filter(|(_, d)| *d == DType::Numerical).map(|(n, _)| n.clone()).collect()
    }

    fn check(&self) -> Result<()> {
        let unsupported = |msg: String| Err(EdaError::UnsupportedCombination(msg));
        if self.family == Family::PlotCorrelation {
            if let Some(i) = self.dtypes.iter().position(|d| *d == DType::Categorical) {
                return unsupported(format!(
                    "plot_correlation needs numerical columns, but `{}` is categorical; use plot(df, {}) to explore it",
                    self.columns[i], self.columns[i]
                ));
            }
            if self.arity() < 2 && self.numerical_frame_columns().len() < 2 {
                return unsupported("plot_correlation needs at least two numerical columns".into());
            }
        }
        Ok(())
    }

    /// `plot(df, price)` style description with dtype letters.
    pub fn describe(&self) -> String {
        let mut s = format!("{}(df", self.family);
        for (c, d) in self.columns.iter().zip(&self.dtypes) {
            s.push_str(&format!(", {c}:{}", d.letter()));
        }
        s.push(')');
        s
    }
}

/// A chart the task emits and the columns it is about.
#[derive(Debug, Clone, PartialEq)]
pub struct Target {
    pub kind: ChartKind,
    pub columns: Vec<String>,
    /// Distinguishes repeated chart kinds within one task.
    pub label: Option<String>,
}

impl Target {
    fn new(kind: ChartKind, columns: &[String]) -> Self {
        Target { kind, columns: columns.to_vec(), label: None }
    }

    fn labeled(kind: ChartKind, columns: Vec<String>, label: &str) -> Self {
        Target { kind, columns, label: Some(label.to_owned()) }
    }
}

/// Charts a valid signature produces, in panel order.
pub fn targets(sig: &TaskSignature) -> Vec<Target> {
    use ChartKind as K;
    use DType::{Categorical as C, Numerical as N};
    let cols = &sig.columns;
    let each = |kinds: &[ChartKind]| kinds.iter().map(|k| Target::new(*k, cols)).collect::<Vec<_>>();
    match (sig.family, sig.dtypes.as_slice()) {
        (Family::Plot, []) => {
            let mut out = vec![Target::new(K::Overview, cols)];
            for (name, dtype) in &sig.frame {
                let kind = if *dtype == N { K::Histogram } else { K::Bar };
                out.push(Target::labeled(kind, vec![name.clone()], name));
            }
            out
        }
        (Family::Plot, [N]) => each(&[K::Stats, K::Histogram, K::Kde, K::QqNormal, K::Box]),
        (Family::Plot, [C]) => each(&[K::Stats, K::Bar, K::Pie]),
        (Family::Plot, [N, N]) => each(&[K::Scatter, K::Hexbin, K::BinnedBox]),
        (Family::Plot, [N, C] | [C, N]) => each(&[K::GroupedBox, K::CategoryHistograms]),
        (Family::Plot, [C, C]) => each(&[K::NestedBar, K::StackedBar, K::CrossHeatmap]),
        (Family::PlotCorrelation, []) => CorrMethod::ALL.iter().map(|m| Target::new(K::CorrHeatmap(*m), cols)).collect(),
        (Family::PlotCorrelation, [N]) => CorrMethod::ALL.iter().map(|m| Target::new(K::CorrRank(*m), cols)).collect(),
        (Family::PlotCorrelation, [N, N]) => each(&[K::CorrScatter]),
        (Family::PlotMissing, []) => each(&[K::MissingBar, K::MissingSpectrum, K::NullityHeatmap, K::NullityDendrogram]),
        (Family::PlotMissing, [_]) => sig
            .frame
            .iter()
            .filter(|(name, _)| *name != cols[0])
            .map(|(name, _)| Target::labeled(K::MissingImpact, vec![cols[0].clone(), name.clone()], name))
            .collect(),
        (Family::PlotMissing, [_, N]) => each(&[K::MissingImpact, K::MissingEcdf]),
        (Family::PlotMissing, [_, C]) => each(&[K::MissingImpact]),
        _ => Vec::new(),
    }
}

/// The chart list for a signature (one entry per panel, repeats included).
pub fn mapping(sig: &TaskSignature) -> Vec<ChartKind> {
    targets(sig).into_iter().map(|t| t.kind).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Panel {
    pub kind: ChartKind,
    pub title: String,
    pub columns: Vec<String>,
    pub intermediate: Intermediate,
    pub insights: Vec<Insight>,
    pub howto: Vec<HowtoEntry>,
}

/// A chart that could not be drawn from this data.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Diagnostic {
    pub kind: ChartKind,
    pub columns: Vec<String>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ColumnInfo {
    pub name: String,
    pub dtype: DType,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DatasetInfo {
    pub rows: usize,
    pub columns: Vec<ColumnInfo>,
}

impl DatasetInfo {
    pub fn of(df: &DataFrame) -> Self {
        DatasetInfo {
            rows: df.n_rows(),
            columns: df.columns().iter().map(|c| ColumnInfo { name: c.name().to_owned(), dtype: c.dtype() }).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TaskResult {
    pub task: String,
    pub signature: TaskSignature,
    pub dataset: DatasetInfo,
    pub panels: Vec<Panel>,
    pub diagnostics: Vec<Diagnostic>,
}

/// A planned task: its graph is built but not yet executed.
pub struct TaskPlan {
    sig: TaskSignature,
    graph: ComputeDag,
    panels: Vec<PanelPlan>,
}

impl TaskPlan {
    pub fn signature(&self) -> &TaskSignature {
        &self.sig
    }

    pub fn graph(&self) -> &ComputeDag {
        &self.graph
    }

    /// Execute the graph once and assemble the panels.
    pub fn run(&self, df: &DataFrame, cfg: &ConfigTree, workers: usize, progress: &mut dyn FnMut(Progress)) -> Result<TaskResult> {
        let exec = execute_with(&self.graph, df, workers, progress)?;
        let (panels, diagnostics) = assemble(&self.panels, &exec, cfg);
        Ok(TaskResult { task: self.sig.describe(), signature: self.sig.clone(), dataset: DatasetInfo::of(df), panels, diagnostics })
    }
}

pub fn plan_task<S: AsRef<str>>(df: &DataFrame, family: Family, cols: &[S], cfg: &ConfigTree) -> Result<TaskPlan> {
    let sig = TaskSignature::resolve(df, family, cols)?;
    let mut graph = ComputeDag::new();
    let mut planner = Planner::new(&mut graph, df);
    let panels = plan::plan_targets(&mut planner, cfg, &sig, &targets(&sig))?;
    Ok(TaskPlan { sig, graph, panels })
}

/// Worker count used when the caller does not choose one.
pub fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

pub fn run_task<S: AsRef<str>>(df: &DataFrame, family: Family, cols: &[S], cfg: &ConfigTree) -> Result<TaskResult> {
    plan_task(df, family, cols, cfg)?.run(df, cfg, default_workers(), &mut |_| {})
}

pub fn plot<S: AsRef<str>>(df: &DataFrame, cols: &[S], cfg: &ConfigTree) -> Result<TaskResult> {
    run_task(df, Family::Plot, cols, cfg)
}

pub fn plot_correlation<S: AsRef<str>>(df: &DataFrame, cols: &[S], cfg: &ConfigTree) -> Result<TaskResult> {
    run_task(df, Family::PlotCorrelation, cols, cfg)
}

pub fn plot_missing<S: AsRef<str>>(df: &DataFrame, cols: &[S], cfg: &ConfigTree) -> Result<TaskResult> {
    run_task(df, Family::PlotMissing, cols, cfg)
}

fn assemble(plans: &[PanelPlan], exec: &Execution, cfg: &ConfigTree) -> (Vec<Panel>, Vec<Diagnostic>) {
    let mut panels = Vec::with_capacity(plans.len());
    let mut diagnostics = Vec::new();
    for p in plans {
        let intermediate = exec.get(p.node).clone();
        if let Intermediate::Unavailable { reason } = &intermediate {
            diagnostics.push(Diagnostic { kind: p.target.kind, columns: p.target.columns.clone(), reason: reason.clone() });
        }
        let title = match &p.target.label {
            Some(l) => format!("{}: {l}", p.target.kind.title()),
            None => p.target.kind.title().to_owned(),
        };
        panels.push(Panel {
            kind: p.target.kind,
            title,
            columns: p.target.columns.clone(),
            insights: plan::panel_insights(p, exec, cfg),
            intermediate,
            howto: cfg.howto(p.target.kind),
        });
    }
    (panels, diagnostics)
}
