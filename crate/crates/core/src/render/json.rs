//! Versioned JSON export of task results and reports.
//!
//! Floats are written with 17 significant digits so every value survives a
//! parse and re-export unchanged; non-finite floats become `null`.

use crate::config::HowtoEntry;
use crate::chart::ChartKind;
use crate::insights::Insight;
use crate::intermediate::Intermediate;
use crate::tasks::{DatasetInfo, Diagnostic, Panel, Report, TaskResult};
use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};
use std::io;

pub const SCHEMA_VERSION: &str = "1";

/// Pretty printing with exponent-form floats.
struct FloatFormatter(PrettyFormatter<'static>);

macro_rules! delegate {
    ($($name:ident),*) => {
        $(fn $name<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
            self.0.$name(w)
        })*
    };
}

macro_rules! delegate_first {
    ($($name:ident),*) => {
        $(fn $name<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
            self.0.$name(w, first)
        })*
    };
}

impl Formatter for FloatFormatter {
    delegate!(begin_array, end_array, begin_object, end_object, end_array_value, begin_object_value, end_object_value);
    delegate_first!(begin_array_value, begin_object_key);

    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }
}

/// Serialize any value with the export float format.
pub fn to_json_string<T: Serialize + ?Sized>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, FloatFormatter(PrettyFormatter::with_indent(b"  ")));
    value.serialize(&mut ser).expect("in-memory serialization does not fail");
    buf.push(b'\n');
    String::from_utf8(buf).expect("serde_json writes UTF-8")
}

#[derive(Serialize)]
struct PanelOut<'a> {
    id: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    section: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    group: Option<&'a str>,
    kind: ChartKind,
    title: &'a str,
    columns: &'a [String],
    intermediate: &'a Intermediate,
    insights: &'a [Insight],
    howto: &'a [HowtoEntry],
}

impl<'a> PanelOut<'a> {
    fn new(index: usize, p: &'a Panel, section: Option<&'a str>, group: Option<&'a str>) -> Self {
        PanelOut {
            id: panel_id(index),
            section,
            group,
            kind: p.kind,
            title: &p.title,
            columns: &p.columns,
            intermediate: &p.intermediate,
            insights: &p.insights,
            howto: &p.howto,
        }
    }
}

/// Element id shared by the HTML panel and its JSON entry.
pub fn panel_id(index: usize) -> String {
    format!("panel-{index}")
}

#[derive(Serialize)]
struct SectionOut<'a> {
    name: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<&'a str>,
}

#[derive(Serialize)]
struct Export<'a> {
    schema_version: &'static str,
    task: &'a str,
    dataset: &'a DatasetInfo,
    #[serde(skip_serializing_if = "Option::is_none")]
    sections: Option<Vec<SectionOut<'a>>>,
    panels: Vec<PanelOut<'a>>,
    diagnostics: &'a [Diagnostic],
}

pub fn export_task_json(r: &TaskResult) -> String {
    to_json_string(&Export {
        schema_version: SCHEMA_VERSION,
        task: &r.task,
        dataset: &r.dataset,
        sections: None,
        panels: r.panels.iter().enumerate().map(|(i, p)| PanelOut::new(i, p, None, None)).collect(),
        diagnostics: &r.diagnostics,
    })
}

/// Report export: the panels as one flat list, each tagged with its section and group.
pub fn export_report_json(r: &Report) -> String {
    let mut panels = Vec::new();
    for s in &r.sections {
        for g in &s.groups {
            for p in &g.panels {
                panels.push(PanelOut::new(panels.len(), p, Some(&s.name), Some(&g.title)));
            }
        }
    }
    to_json_string(&Export {
        schema_version: SCHEMA_VERSION,
        task: &r.task,
        dataset: &r.dataset,
        sections: Some(r.sections.iter().map(|s| SectionOut { name: &s.name, note: s.note.as_deref() }).collect()),
        panels,
        diagnostics: &r.diagnostics,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn floats_keep_seventeen_digits() {
        let v = json!({"a": 0.1, "b": [1.0, -2.5e-300, f64::MAX], "c": 3});
        let s = to_json_string(&v);
        assert!(s.contains("1.0000000000000001e-1"), "{s}");
        assert!(s.contains("\"c\": 3"));
        let back: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(to_json_string(&back), s);
        assert_eq!(back["a"].as_f64(), Some(0.1));
    }

    #[test]
    fn non_finite_is_null() {
        #[derive(Serialize)]
        struct S {
            x: f64,
        }
        assert!(to_json_string(&S { x: f64::NAN }).contains("\"x\": null"));
    }
}
