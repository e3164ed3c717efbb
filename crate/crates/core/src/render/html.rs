//! Self-contained HTML documents: inline styles, pre-rendered SVG panels,
//! tab strips, insight badges, how-to guides and a JSON manifest island read
//! by the inlined viewer script.

use super::json::panel_id;
use super::spec::{to_chart_spec, ChartSpec};
use super::svg::{escape, render_svg};
use crate::config::ConfigTree;
use crate::tasks::{DatasetInfo, Diagnostic, Panel, Report, TaskResult};
use serde::Serialize;
use std::fmt::Write;

/// Script inlined into every document. It only handles interaction; the
/// page stays readable with all panels stacked when it does not run.
pub struct ViewerAssets {
    pub script: &'static str,
}

impl ViewerAssets {
    pub fn bundled() -> Self {
        ViewerAssets { script: include_str!("../../assets/viewer.js") }
    }
}

impl Default for ViewerAssets {
    fn default() -> Self {
        Self::bundled()
    }
}

const STYLE: &str = "\
body{font-family:Helvetica,Arial,sans-serif;margin:0;padding:0 24px 48px;color:#222;background:#fafbfc}\
header{padding:16px 0;border-bottom:1px solid #ddd;margin-bottom:16px}\
h1{font-size:20px;margin:0 0 4px}h2{font-size:18px;margin:28px 0 8px}h3{font-size:15px;margin:18px 0 6px}\
.meta{color:#666;font-size:13px;margin:0}.note{color:#666;font-style:italic}\
.tabs{display:flex;flex-wrap:wrap;gap:4px;border-bottom:1px solid #ccc;margin-bottom:8px}\
.tab{padding:6px 12px;border:1px solid #ccc;border-bottom:none;border-radius:4px 4px 0 0;text-decoration:none;color:#333;background:#eef1f4;font-size:13px}\
.tab.active{background:#fff;font-weight:bold}\
.badge{color:#d62728;font-weight:bold;margin-left:4px;cursor:help}\
.panel{background:#fff;border:1px solid #e1e4e8;border-radius:4px;padding:8px 12px;margin-bottom:12px}\
.tabbed .panel{display:none}.tabbed .panel.active{display:block}\
.panel-head{display:flex;align-items:center;gap:8px}.panel-head h4{margin:4px 0;font-size:14px;flex:1}\
.insights{margin:4px 0 8px;padding-left:20px;font-size:13px}.insights .warning{color:#d62728}\
.howto summary{cursor:pointer;font-weight:bold;color:#4e79a7;list-style:none}\
.howto table{border-collapse:collapse;font-size:12px;margin-top:4px}\
.howto td,.howto th{border:1px solid #ddd;padding:3px 8px;text-align:left}\
code{background:#f1f3f5;padding:1px 4px;border-radius:3px}\
.diagnostics{font-size:13px;color:#666}";

#[derive(Serialize)]
struct ManifestHowto<'a> {
    key: &'a str,
    snippet: &'a str,
}

#[derive(Serialize)]
struct ManifestPanel<'a> {
    id: String,
    title: &'a str,
    group: usize,
    has_insight: bool,
    insights: Vec<&'a str>,
    howto: Vec<ManifestHowto<'a>>,
}

#[derive(Serialize)]
struct Manifest<'a> {
    version: &'static str,
    panels: Vec<ManifestPanel<'a>>,
}

/// Panels of one tab strip, with an optional heading.
struct TabGroup<'a> {
    heading: Option<&'a str>,
    section: Option<(&'a str, Option<&'a str>)>,
    panels: Vec<&'a Panel>,
}

fn chart_spec(p: &Panel, cfg: &ConfigTree) -> ChartSpec {
    to_chart_spec(p.kind, &p.title, &p.intermediate, &p.insights, cfg).unwrap_or_else(|e| {
        let mut s = to_chart_spec(p.kind, &p.title, &crate::intermediate::Intermediate::unavailable(e.to_string()), &p.insights, cfg)
            .expect("unavailable always has a template");
        s.badge = !p.insights.is_empty();
        s
    })
}

fn badge(p: &Panel) -> String {
    if p.insights.is_empty() {
        return String::new();
    }
    let tip: Vec<&str> = p.insights.iter().map(|i| i.message.as_str()).collect();
    format!(r#"<span class="badge" title="{}">(!)</span>"#, escape(&tip.join("\n")).replace('\n', "&#10;"))
}

fn write_panel(out: &mut String, id: &str, p: &Panel, cfg: &ConfigTree, active: bool) {
    let class = if active { "panel active" } else { "panel" };
    let _ = write!(out, r#"<section class="{class}" id="{id}" data-kind="{}">"#, p.kind.name());
    let _ = write!(out, r#"<div class="panel-head"><h4>{}{}</h4>"#, escape(&p.title), badge(p));
    out.push_str(r#"<details class="howto"><summary title="How to customize this chart">(?)</summary><table><tr><th>key</th><th>value</th><th>snippet</th></tr>"#);
    for h in &p.howto {
        let _ = write!(out, "<tr><td>{}</td><td>{}</td><td><code>{}</code></td></tr>", escape(&h.key), escape(&h.value), escape(&h.snippet));
    }
    out.push_str("</table></details></div>");
    out.push_str(&render_svg(&chart_spec(p, cfg)));
    if !p.insights.is_empty() {
        out.push_str(r#"<ul class="insights">"#);
        for i in &p.insights {
            let sev = serde_json::to_value(i.severity).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default();
            let _ = write!(out, r#"<li class="{sev}">{}</li>"#, escape(&i.message));
        }
        out.push_str("</ul>");
    }
    out.push_str("</section>");
}

fn document(title: &str, dataset: &DatasetInfo, groups: &[TabGroup<'_>], diagnostics: &[Diagnostic], cfg: &ConfigTree, assets: &ViewerAssets) -> String {
    let mut body = String::new();
    let mut manifest = Manifest { version: "1", panels: Vec::new() };
    let mut current_section = None;
    for (g, group) in groups.iter().enumerate() {
        if let Some((name, note)) = group.section {
            if current_section != Some(name) {
                current_section = Some(name);
                let _ = write!(body, "<h2>{}</h2>", escape(name));
                if let Some(n) = note {
                    let _ = write!(body, r#"<p class="note">{}</p>"#, escape(n));
                }
            }
        }
        if group.panels.is_empty() {
            continue;
        }
        if let Some(h) = group.heading {
            let _ = write!(body, "<h3>{}</h3>", escape(h));
        }
        let first = manifest.panels.len();
        body.push_str(r#"<div class="tabset"><nav class="tabs" role="tablist">"#);
        for (k, p) in group.panels.iter().enumerate() {
            let id = panel_id(first + k);
            let (class, selected) = if k == 0 { ("tab active", "true") } else { ("tab", "false") };
            let _ = write!(
                body,
                r##"<a class="{class}" role="tab" aria-selected="{selected}" href="#{id}" data-panel="{id}">{}{}</a>"##,
                escape(&p.title),
                badge(p)
            );
        }
        body.push_str("</nav>");
        for (k, p) in group.panels.iter().enumerate() {
            let id = panel_id(first + k);
            write_panel(&mut body, &id, p, cfg, k == 0);
            manifest.panels.push(ManifestPanel {
                id,
                title: &p.title,
                group: g,
                has_insight: !p.insights.is_empty(),
                insights: p.insights.iter().map(|i| i.message.as_str()).collect(),
                howto: p.howto.iter().map(|h| ManifestHowto { key: &h.key, snippet: &h.snippet }).collect(),
            });
        }
        body.push_str("</div>");
    }
    if !diagnostics.is_empty() {
        body.push_str(r#"<h2>Skipped charts</h2><ul class="diagnostics">"#);
        for d in diagnostics {
            let _ = write!(body, "<li>{} ({}): {}</li>", escape(d.kind.name()), escape(&d.columns.join(", ")), escape(&d.reason));
        }
        body.push_str("</ul>");
    }

    let island = serde_json::to_string(&manifest).expect("manifest serializes").replace('<', "\\u003c");
    let mut out = String::new();
    let _ = write!(
        out,
        r#"<!DOCTYPE html><html lang="en"><head><meta charset="utf-8"><meta name="viewport" content="width=device-width, initial-scale=1"><title>{}</title><style>{STYLE}</style></head><body>"#,
        escape(title)
    );
    let _ = write!(
        out,
        r#"<header><h1>{}</h1><p class="meta">{} rows, {} columns</p></header>"#,
        escape(title),
        dataset.rows,
        dataset.columns.len()
    );
    out.push_str(&body);
    let _ = write!(out, r#"<script type="application/json" id="eda-manifest">{island}</script>"#);
    let _ = write!(out, "<script>{}</script>", assets.script.replace("</", "<\\/"));
    out.push_str("</body></html>\n");
    out
}

/// One tab strip holding every panel of the task.
pub fn task_html_with(r: &TaskResult, cfg: &ConfigTree, assets: &ViewerAssets) -> String {
    let groups = [TabGroup { heading: None, section: None, panels: r.panels.iter().collect() }];
    document(&r.task, &r.dataset, &groups, &r.diagnostics, cfg, assets)
}

pub fn task_html(r: &TaskResult, cfg: &ConfigTree) -> String {
    task_html_with(r, cfg, &ViewerAssets::bundled())
}

/// A heading per section and a tab strip per panel group.
pub fn report_html_with(r: &Report, cfg: &ConfigTree, assets: &ViewerAssets) -> String {
    let mut groups = Vec::new();
    for s in &r.sections {
        let section = Some((s.name.as_str(), s.note.as_deref()));
        if s.groups.is_empty() {
            groups.push(TabGroup { heading: None, section, panels: vec![] });
        }
        for g in &s.groups {
            let heading = if s.groups.len() > 1 { Some(g.title.as_str()) } else { None };
            groups.push(TabGroup { heading, section, panels: g.panels.iter().collect() });
        }
    }
    document(&r.task, &r.dataset, &groups, &r.diagnostics, cfg, assets)
}

pub fn report_html(r: &Report, cfg: &ConfigTree) -> String {
    report_html_with(r, cfg, &ViewerAssets::bundled())
}
