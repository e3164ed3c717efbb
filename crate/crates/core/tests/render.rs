mod common;

use common::{frame, house_raw, normal_scores, Raw};
use eda::analytics::correlation::CorrMethod;
use eda::insights::InsightKind;
use eda::render::html::{task_html_with, ViewerAssets};
use eda::render::json::to_json_string;
use eda::render::spec::{ColorScale, Series};
use eda::render::{export_report_json, export_task_json, render_svg, report_html, task_html, to_chart_spec};
use eda::tasks::Panel;
use eda::{create_report, from_assignments, plot, plot_correlation, ChartKind, ConfigTree, Intermediate, TaskResult};

fn panel(r: &TaskResult, kind: ChartKind) -> &Panel {
    r.panels.iter().find(|p| p.kind == kind).unwrap_or_else(|| panic!("no {kind} panel"))
}

fn svg_of(p: &Panel, cfg: &ConfigTree) -> String {
    render_svg(&to_chart_spec(p.kind, &p.title, &p.intermediate, &p.insights, cfg).unwrap())
}

fn normal_price() -> eda::DataFrame {
    let v = normal_scores(5000, 2024).into_iter().map(Some).collect();
    frame(&[Raw::Num("price".into(), v)], 1000)
}

#[test]
fn histogram_draws_one_bar_per_bin() {
    let cfg = ConfigTree::default();
    let df = frame(&house_raw(500), 64);
    let r = plot(&df, &["price"], &cfg).unwrap();
    let p = panel(&r, ChartKind::Histogram);
    let spec = to_chart_spec(p.kind, &p.title, &p.intermediate, &p.insights, &cfg).unwrap();
    assert_eq!(spec.y.as_ref().unwrap().label, "Frequency");
    assert_eq!(svg_of(p, &cfg).matches(r#"class="bar""#).count(), 50);

    let cfg = from_assignments(&["hist.bins=12"]).unwrap();
    let r = plot(&df, &["price"], &cfg).unwrap();
    assert_eq!(svg_of(panel(&r, ChartKind::Histogram), &cfg).matches(r#"class="bar""#).count(), 12);
}

#[test]
fn histogram_counts_cover_non_missing_values() {
    let raw = house_raw(700);
    let df = frame(&raw, 33);
    let r = plot(&df, &["price"], &ConfigTree::default()).unwrap();
    let Intermediate::Histogram(h) = &panel(&r, ChartKind::Histogram).intermediate else { panic!("not a histogram") };
    let Raw::Num(_, v) = &raw[0] else { unreachable!() };
    assert_eq!(h.histogram.total() as usize, v.iter().flatten().count());
}

#[test]
fn correlation_heatmap_is_diverging_over_unit_range() {
    let cfg = ConfigTree::default();
    let df = frame(&house_raw(300), 50);
    let r = plot_correlation(&df, &[] as &[&str], &cfg).unwrap();
    let p = panel(&r, ChartKind::CorrHeatmap(CorrMethod::Pearson));
    let spec = to_chart_spec(p.kind, &p.title, &p.intermediate, &p.insights, &cfg).unwrap();
    let heat = spec.series.iter().find_map(|s| match s {
        Series::Heatmap { values, lo, hi, scale, .. } => Some((values.len(), *lo, *hi, *scale)),
        _ => None,
    });
    assert_eq!(heat, Some((3, -1.0, 1.0, ColorScale::Diverging)));
}

#[test]
fn sampled_density_is_disclosed() {
    let cfg = ConfigTree::default();
    let v: Vec<Option<f64>> = normal_scores(20_000, 3).into_iter().map(Some).collect();
    let df = frame(&[Raw::Num("x".into(), v)], 4096);
    let r = plot(&df, &["x"], &cfg).unwrap();
    let p = panel(&r, ChartKind::Kde);
    let spec = to_chart_spec(p.kind, &p.title, &p.intermediate, &p.insights, &cfg).unwrap();
    assert!(spec.notes.iter().any(|n| n == "density estimated on 10,000 sampled rows"), "{:?}", spec.notes);
    assert!(svg_of(p, &cfg).contains("10,000 sampled rows"));

    let small = frame(&house_raw(200), 64);
    let r = plot(&small, &["price"], &cfg).unwrap();
    let p = panel(&r, ChartKind::Kde);
    let spec = to_chart_spec(p.kind, &p.title, &p.intermediate, &p.insights, &cfg).unwrap();
    assert!(spec.notes.iter().all(|n| !n.contains("sampled")));
}

#[test]
fn svg_is_deterministic_and_empty_specs_say_so() {
    let cfg = ConfigTree::default();
    let df = frame(&house_raw(400), 64);
    let a = plot(&df, &["price", "area"], &cfg).unwrap();
    let b = plot(&frame(&house_raw(400), 7), &["price", "area"], &cfg).unwrap();
    for (p, q) in a.panels.iter().zip(&b.panels) {
        assert_eq!(svg_of(p, &cfg), svg_of(q, &cfg), "{}", p.kind);
    }

    let gone = frame(&[Raw::Num("gone".into(), vec![None; 20])], 8);
    let r = plot(&gone, &["gone"], &cfg).unwrap();
    let svg = svg_of(panel(&r, ChartKind::Histogram), &cfg);
    assert!(svg.contains("no data"));
    assert!(!svg.contains(r#"class="bar""#));
}

#[test]
fn single_column_page_has_five_tabs_with_stats_first() {
    let cfg = ConfigTree::default();
    let r = plot(&frame(&house_raw(300), 64), &["price"], &cfg).unwrap();
    let html = task_html(&r, &cfg);
    assert_eq!(html.matches(r#"role="tab""#).count(), 5);
    let first = html.find(r#"class="tab active""#).unwrap();
    assert!(html[first..].split("</a>").next().unwrap().contains("Stats"));
    assert_eq!(html.matches(r#"class="tab active""#).count(), 1);
    assert!(html.contains(r#"<section class="panel active" id="panel-0""#));
}

#[test]
fn normal_badge_carries_the_message() {
    let cfg = ConfigTree::default();
    let r = plot(&normal_price(), &["price"], &cfg).unwrap();
    let hist = panel(&r, ChartKind::Histogram);
    let normal = hist.insights.iter().find(|i| i.kind == InsightKind::Normal).expect("Normal insight");
    assert_eq!(normal.message, "price is normally distributed");
    let html = task_html(&r, &cfg);
    let titles: Vec<&str> = html.split(r#"<span class="badge" title=""#).skip(1).map(|t| t.split('"').next().unwrap()).collect();
    assert!(titles.iter().any(|t| t.split("&#10;").any(|m| m == "price is normally distributed")), "{titles:?}");
}

#[test]
fn pages_are_self_contained() {
    let cfg = ConfigTree::default();
    let df = frame(&house_raw(300), 64);
    let pages = [task_html(&plot(&df, &["price"], &cfg).unwrap(), &cfg), report_html(&create_report(&df, &cfg).unwrap(), &cfg)];
    for html in pages {
        let stripped = html.replace("http://www.w3.org/2000/svg", "");
        assert!(!stripped.contains("http://") && !stripped.contains("https://"));
        assert!(!html.contains("<script src") && !html.contains("<link "));
        assert!(html.contains(r#"<script type="application/json" id="eda-manifest">"#));
    }
}

#[test]
fn manifest_matches_panels_and_escapes_markup() {
    let cfg = ConfigTree::default();
    let raw = vec![Raw::Num("</script><b>".into(), (0..50).map(|i| Some(i as f64)).collect())];
    let r = plot(&frame(&raw, 16), &[] as &[&str], &cfg).unwrap();
    let html = task_html(&r, &cfg);
    let start = html.find(r#"id="eda-manifest">"#).unwrap() + r#"id="eda-manifest">"#.len();
    let island = &html[start..start + html[start..].find("</script>").unwrap()];
    assert!(!island.contains('<'));
    let manifest: serde_json::Value = serde_json::from_str(island).unwrap();
    let panels = manifest["panels"].as_array().unwrap();
    assert_eq!(panels.len(), r.panels.len());
    for (i, p) in panels.iter().enumerate() {
        assert_eq!(p["id"], format!("panel-{i}"));
        assert!(html.contains(&format!(r#"id="panel-{i}""#)));
    }
}

#[test]
fn page_without_viewer_script_keeps_every_panel() {
    let cfg = ConfigTree::default();
    let r = plot(&frame(&house_raw(200), 64), &["price"], &cfg).unwrap();
    let html = task_html_with(&r, &cfg, &ViewerAssets { script: "" });
    assert_eq!(html.matches("<svg").count(), r.panels.len());
    assert!(html.contains("<details class=\"howto\""));
    assert!(!html.contains("class=\"tabbed\""));
}

#[test]
fn json_export_round_trips() {
    let cfg = ConfigTree::default();
    let df = frame(&house_raw(300), 64);
    let task = export_task_json(&plot(&df, &["price", "city"], &cfg).unwrap());
    let report = export_report_json(&create_report(&df, &cfg).unwrap());
    for text in [task, report] {
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["schema_version"], "1");
        let again = to_json_string(&v);
        let first = again.lines().zip(text.lines()).find(|(a, b)| a != b);
        assert!(first.is_none() && again.len() == text.len(), "first difference {first:?}");
    }
}

#[test]
fn report_json_lists_panels_with_sections() {
    let cfg = ConfigTree::default();
    let report = create_report(&frame(&house_raw(300), 64), &cfg).unwrap();
    let v: serde_json::Value = serde_json::from_str(&export_report_json(&report)).unwrap();
    let panels = v["panels"].as_array().unwrap();
    assert_eq!(panels.len(), report.panels().count());
    let sections: Vec<&str> = v["sections"].as_array().unwrap().iter().map(|s| s["name"].as_str().unwrap()).collect();
    assert!(panels.iter().all(|p| sections.contains(&p["section"].as_str().unwrap())));
}
