//! Charts, HTML documents and JSON exports.

pub mod html;
pub mod json;
pub mod spec;
pub mod svg;
pub mod ticks;

pub use html::{report_html, task_html};
pub use json::{export_report_json, export_task_json};
pub use spec::{to_chart_spec, ChartSpec};
pub use svg::render_svg;
