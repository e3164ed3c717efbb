//! Full-dataset report: every section planned into one shared graph.

use super::plan::{plan_targets, PanelPlan};
use super::{assemble, targets, DatasetInfo, Diagnostic, Family, Panel, TaskSignature};
use crate::chart::ChartKind;
use crate::config::ConfigTree;
use crate::error::Result;
use crate::frame::{DType, DataFrame};
use crate::graph::{execute_with, ops::Planner, ComputeDag, Progress};
use serde::Serialize;

pub const SECTION_NAMES: [&str; 5] = ["Overview", "Variables", "Interactions", "Correlations", "Missing Values"];

const NEEDS_TWO_NUMERICAL: &str = "not applicable: the dataset has fewer than two numerical columns";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PanelGroup {
    pub title: String,
    pub columns: Vec<String>,
    pub panels: Vec<Panel>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Section {
    pub name: String,
    pub groups: Vec<PanelGroup>,
    /// Why the section is empty, when it is.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub task: String,
    pub dataset: DatasetInfo,
    pub sections: Vec<Section>,
    pub diagnostics: Vec<Diagnostic>,
}

impl Report {
    pub fn panels(&self) -> impl Iterator<Item = &Panel> {
        self.sections.iter().flat_map(|s| s.groups.iter()).flat_map(|g| g.panels.iter())
    }
}

struct GroupPlan {
    title: String,
    columns: Vec<String>,
    panels: Vec<PanelPlan>,
}

struct SectionPlan {
    name: &'static str,
    groups: Vec<GroupPlan>,
    note: Option<String>,
}

pub struct ReportPlan {
    graph: ComputeDag,
    sections: Vec<SectionPlan>,
}

fn group(title: &str, columns: Vec<String>, panels: Vec<PanelPlan>) -> GroupPlan {
    GroupPlan { title: title.to_owned(), columns, panels }
}

fn plan_section(p: &mut Planner<'_>, df: &DataFrame, cfg: &ConfigTree, index: usize) -> Result<SectionPlan> {
    let numerical: Vec<String> =
        df.columns().iter().filter(|c| c.dtype() == DType::Numerical).map(|c| c.name().to_owned()).collect();
    let name = SECTION_NAMES[index];
    let mut groups = Vec::new();
    let mut note = None;
    match index {
        0 => {
            let sig = TaskSignature::resolve::<&str>(df, Family::Plot, &[])?;
            let overview: Vec<_> = targets(&sig).into_iter().filter(|t| t.kind == ChartKind::Overview).collect();
            groups.push(group("Dataset", vec![], plan_targets(p, cfg, &sig, &overview)?));
        }
        1 => {
            for col in df.column_names() {
                let sig = TaskSignature::resolve(df, Family::Plot, &[&col])?;
                let panels = plan_targets(p, cfg, &sig, &targets(&sig))?;
                groups.push(group(&col, vec![col.clone()], panels));
            }
        }
        2 => {
            let pairs = numerical
                .iter()
                .enumerate()
                .flat_map(|(i, a)| numerical[i + 1..].iter().map(move |b| (a, b)))
                .take(cfg.usize("corr.max_pairs"));
            for (a, b) in pairs {
                let sig = TaskSignature::resolve(df, Family::Plot, &[a, b])?;
                let scatter: Vec<_> = targets(&sig).into_iter().filter(|t| t.kind == ChartKind::Scatter).collect();
                groups.push(group(&format!("{a} / {b}"), vec![a.clone(), b.clone()], plan_targets(p, cfg, &sig, &scatter)?));
            }
            if numerical.len() < 2 {
                note = Some(NEEDS_TWO_NUMERICAL.to_owned());
            }
        }
        3 => {
            if numerical.len() < 2 {
                note = Some(NEEDS_TWO_NUMERICAL.to_owned());
            } else {
                let sig = TaskSignature::resolve::<&str>(df, Family::PlotCorrelation, &[])?;
                groups.push(group("Correlation", vec![], plan_targets(p, cfg, &sig, &targets(&sig))?));
            }
        }
        _ => {
            let sig = TaskSignature::resolve::<&str>(df, Family::PlotMissing, &[])?;
            groups.push(group("Missing values", vec![], plan_targets(p, cfg, &sig, &targets(&sig))?));
        }
    }
    Ok(SectionPlan { name, groups, note })
}

/// Plan all report sections into one graph.
pub fn plan_report(df: &DataFrame, cfg: &ConfigTree) -> Result<ReportPlan> {
    let mut graph = ComputeDag::new();
    let mut p = Planner::new(&mut graph, df);
    let sections = (0..SECTION_NAMES.len()).map(|i| plan_section(&mut p, df, cfg, i)).collect::<Result<_>>()?;
    Ok(ReportPlan { graph, sections })
}

/// Each section planned on its own, as if it were a standalone task.
pub fn section_graphs(df: &DataFrame, cfg: &ConfigTree) -> Result<Vec<(&'static str, ComputeDag)>> {
    (0..SECTION_NAMES.len())
        .map(|i| {
            let mut graph = ComputeDag::new();
            plan_section(&mut Planner::new(&mut graph, df), df, cfg, i)?;
            Ok((SECTION_NAMES[i], graph))
        })
        .collect()
}

impl ReportPlan {
    pub fn graph(&self) -> &ComputeDag {
        &self.graph
    }

    pub fn run(&self, df: &DataFrame, cfg: &ConfigTree, workers: usize, progress: &mut dyn FnMut(Progress)) -> Result<Report> {
        let exec = execute_with(&self.graph, df, workers, progress)?;
        let mut diagnostics = Vec::new();
        let sections = self
            .sections
            .iter()
            .map(|s| Section {
                name: s.name.to_owned(),
                groups: s
                    .groups
                    .iter()
                    .map(|g| {
                        let (panels, diag) = assemble(&g.panels, &exec, cfg);
                        diagnostics.extend(diag);
                        PanelGroup { title: g.title.clone(), columns: g.columns.clone(), panels }
                    })
                    .collect(),
                note: s.note.clone(),
            })
            .collect();
        Ok(Report { task: "create_report(df)".into(), dataset: DatasetInfo::of(df), sections, diagnostics })
    }
}

pub fn create_report(df: &DataFrame, cfg: &ConfigTree) -> Result<Report> {
    plan_report(df, cfg)?.run(df, cfg, super::default_workers(), &mut |_| {})
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::Column;

    #[test]
    fn single_column_report_has_notes() {
        let v: Vec<Option<f64>> = (0..10).map(|i| Some(i as f64)).collect();
        let df = DataFrame::new(vec![Column::from_f64("x", &v, 4)], "t").unwrap();
        let r = create_report(&df, &ConfigTree::default()).unwrap();
        let names: Vec<_> = r.sections.iter().map(|s| s.name.as_str()).collect();
        assert_eq!(names, SECTION_NAMES);
        assert_eq!(r.sections[1].groups.len(), 1);
        assert!(r.sections[2].note.is_some() && r.sections[3].note.is_some());
        assert!(r.sections[2].groups.is_empty() && r.sections[3].groups.is_empty());
    }

    #[test]
    fn report_shares_nodes_across_sections() {
        let v: Vec<Option<f64>> = (0..40).map(|i| if i % 9 == 0 { None } else { Some((i * 7 % 13) as f64) }).collect();
        let w: Vec<Option<f64>> = (0..40).map(|i| Some(i as f64)).collect();
        let df = DataFrame::new(vec![Column::from_f64("a", &v, 16), Column::from_f64("b", &w, 16)], "t").unwrap();
        let cfg = ConfigTree::default();
        let whole = plan_report(&df, &cfg).unwrap().graph().len();
        let parts: usize = section_graphs(&df, &cfg).unwrap().iter().map(|(_, g)| g.len()).sum();
        assert!(whole < parts, "{whole} vs {parts}");
    }
}
