//! Standalone SVG for a chart spec. Output depends only on the spec, so equal
//! specs give byte-identical documents.

use super::spec::{Axis, ChartSpec, ColorScale, Scale, Series, TableRow};
use crate::analytics::boxplot::BoxStats;
use std::fmt::Write;

pub const PALETTE: [&str; 10] =
    ["#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac"];

const HIGHLIGHT: &str = "#d62728";
const MARGIN_LEFT: f64 = 64.0;
const MARGIN_RIGHT: f64 = 20.0;
const MARGIN_BOTTOM: f64 = 64.0;
const TITLE_BAND: f64 = 30.0;
const NOTE_LINE: f64 = 14.0;

pub fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&#39;"),
            _ => out.push(ch),
        }
    }
    out
}

/// Fixed two-decimal coordinate.
fn n(v: f64) -> String {
    let s = format!("{v:.2}");
    if s == "-0.00" {
        "0.00".into()
    } else {
        s
    }
}

fn color(i: usize) -> &'static str {
    PALETTE[i % PALETTE.len()]
}

fn mix(a: (u8, u8, u8), b: (u8, u8, u8), t: f64) -> String {
    let t = t.clamp(0.0, 1.0);
    let c = |x: u8, y: u8| (x as f64 + (y as f64 - x as f64) * t).round() as u8;
    format!("#{:02x}{:02x}{:02x}", c(a.0, b.0), c(a.1, b.1), c(a.2, b.2))
}

const WHITE: (u8, u8, u8) = (255, 255, 255);
const BLUE: (u8, u8, u8) = (33, 102, 172);
const RED: (u8, u8, u8) = (178, 24, 43);
const SEQ: (u8, u8, u8) = (8, 81, 156);

pub fn scale_color(v: f64, lo: f64, hi: f64, scale: ColorScale) -> String {
    if !v.is_finite() {
        return "#dddddd".into();
    }
    let t = if hi > lo { (v - lo) / (hi - lo) } else { 0.5 };
    match scale {
        ColorScale::Sequential => mix(WHITE, SEQ, t),
        ColorScale::Diverging if t < 0.5 => mix(BLUE, WHITE, t * 2.0),
        ColorScale::Diverging => mix(WHITE, RED, (t - 0.5) * 2.0),
    }
}

fn shorten(s: &str, max: usize) -> String {
    if s.chars().count() <= max {
        s.to_owned()
    } else {
        let head: String = s.chars().take(max - 1).collect();
        format!("{head}\u{2026}")
    }
}

/// Pixel frame of the plotting area.
struct Frame {
    left: f64,
    top: f64,
    width: f64,
    height: f64,
}

impl Frame {
    fn x(&self, a: &Axis, v: f64) -> f64 {
        self.left + (v - a.lo) / span(a) * self.width
    }

    /// Linear y grows upward; band rows run top to bottom.
    fn y(&self, a: &Axis, v: f64) -> f64 {
        let t = (v - a.lo) / span(a);
        match a.scale {
            Scale::Linear => self.top + (1.0 - t) * self.height,
            Scale::Band => self.top + t * self.height,
        }
    }

    fn bottom(&self) -> f64 {
        self.top + self.height
    }
}

fn span(a: &Axis) -> f64 {
    if a.hi > a.lo {
        a.hi - a.lo
    } else {
        1.0
    }
}

fn unit_axis() -> Axis {
    Axis::band("", vec![String::new()])
}

pub fn render_svg(spec: &ChartSpec) -> String {
    let (w, h) = (spec.width.max(200) as f64, spec.height.max(150) as f64);
    let mut out = String::new();
    let _ = write!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="Helvetica, Arial, sans-serif" font-size="11">"#
    );
    let _ = write!(out, r##"<rect class="bg" x="0" y="0" width="{w}" height="{h}" fill="#ffffff"/>"##);
    let _ = write!(out, r#"<text class="title" x="{}" y="18" font-size="14" font-weight="bold" text-anchor="middle">{}</text>"#, n(w / 2.0), escape(&spec.title));
    for (i, note) in spec.notes.iter().enumerate() {
        let y = TITLE_BAND + 4.0 + i as f64 * NOTE_LINE;
        let _ = write!(out, r##"<text class="note" x="{}" y="{}" fill="#555555" text-anchor="middle">{}</text>"##, n(w / 2.0), n(y), escape(note));
    }
    let top = TITLE_BAND + spec.notes.len() as f64 * NOTE_LINE + 8.0;

    if spec.is_empty() {
        let _ = write!(out, r##"<text class="empty" x="{}" y="{}" font-size="16" fill="#888888" text-anchor="middle">no data</text>"##, n(w / 2.0), n(h / 2.0));
        out.push_str("</svg>");
        return out;
    }

    let left = if spec.y.as_ref().is_some_and(|a| a.scale == Scale::Band) { 110.0 } else { MARGIN_LEFT };
    let frame = Frame { left, top, width: (w - left - MARGIN_RIGHT).max(10.0), height: (h - top - MARGIN_BOTTOM).max(10.0) };
    let xa = spec.x.clone().unwrap_or_else(unit_axis);
    let ya = spec.y.clone().unwrap_or_else(unit_axis);

    let mut body = String::new();
    let mut axes = true;
    for s in &spec.series {
        match s {
            Series::Table(rows) => {
                axes = false;
                table(&mut body, rows, w, top, h);
            }
            Series::Pie { labels, values } => {
                axes = false;
                pie(&mut body, labels, values, &frame);
            }
            _ => series(&mut body, s, &frame, &xa, &ya),
        }
    }
    if axes && (spec.x.is_some() || spec.y.is_some()) {
        draw_axes(&mut out, &frame, spec.x.as_ref(), spec.y.as_ref());
    }
    out.push_str(&body);
    legend(&mut out, &spec.legend, &frame);
    out.push_str("</svg>");
    out
}

fn draw_axes(out: &mut String, f: &Frame, x: Option<&Axis>, y: Option<&Axis>) {
    let axis_line = |out: &mut String, x1: f64, y1: f64, x2: f64, y2: f64| {
        let _ = write!(out, r##"<line class="axis" x1="{}" y1="{}" x2="{}" y2="{}" stroke="#333333"/>"##, n(x1), n(y1), n(x2), n(y2));
    };
    if let Some(a) = x {
        axis_line(out, f.left, f.bottom(), f.left + f.width, f.bottom());
        match a.scale {
            Scale::Linear => {
                for (v, label) in a.ticks.iter().zip(&a.tick_labels) {
                    let px = f.x(a, *v);
                    let _ = write!(out, r##"<line class="tick" x1="{0}" y1="{1}" x2="{0}" y2="{2}" stroke="#333333"/>"##, n(px), n(f.bottom()), n(f.bottom() + 4.0));
                    let _ = write!(out, r#"<text class="tick-label" x="{}" y="{}" text-anchor="middle">{}</text>"#, n(px), n(f.bottom() + 16.0), escape(label));
                }
            }
            Scale::Band => {
                let count = a.categories.len().max(1);
                let every = count.div_ceil(30);
                let rotate = count > 6 || a.categories.iter().any(|c| c.chars().count() > 8);
                for (i, c) in a.categories.iter().enumerate().filter(|(i, _)| i % every == 0) {
                    let px = f.x(a, i as f64 + 0.5);
                    let py = f.bottom() + 14.0;
                    let label = escape(&shorten(c, 14));
                    if rotate {
                        let _ = write!(out, r#"<text class="tick-label" x="{0}" y="{1}" text-anchor="end" transform="rotate(-35 {0} {1})">{2}</text>"#, n(px), n(py), label);
                    } else {
                        let _ = write!(out, r#"<text class="tick-label" x="{}" y="{}" text-anchor="middle">{}</text>"#, n(px), n(py), label);
                    }
                }
            }
        }
        if !a.label.is_empty() {
            let _ = write!(out, r#"<text class="axis-label" x="{}" y="{}" text-anchor="middle">{}</text>"#, n(f.left + f.width / 2.0), n(f.bottom() + 48.0), escape(&a.label));
        }
    }
    if let Some(a) = y {
        axis_line(out, f.left, f.top, f.left, f.bottom());
        match a.scale {
            Scale::Linear => {
                for (v, label) in a.ticks.iter().zip(&a.tick_labels) {
                    let py = f.y(a, *v);
                    let _ = write!(out, r##"<line class="grid" x1="{0}" y1="{1}" x2="{2}" y2="{1}" stroke="#eeeeee"/>"##, n(f.left), n(py), n(f.left + f.width));
                    let _ = write!(out, r#"<text class="tick-label" x="{}" y="{}" text-anchor="end">{}</text>"#, n(f.left - 6.0), n(py + 4.0), escape(label));
                }
            }
            Scale::Band => {
                let every = a.categories.len().div_ceil(30).max(1);
                for (i, c) in a.categories.iter().enumerate().filter(|(i, _)| i % every == 0) {
                    let py = f.y(a, i as f64 + 0.5);
                    let _ = write!(out, r#"<text class="tick-label" x="{}" y="{}" text-anchor="end">{}</text>"#, n(f.left - 6.0), n(py + 4.0), escape(&shorten(c, 16)));
                }
            }
        }
        if !a.label.is_empty() {
            let (x, y) = (14.0, f.top + f.height / 2.0);
            let _ = write!(out, r#"<text class="axis-label" x="{0}" y="{1}" text-anchor="middle" transform="rotate(-90 {0} {1})">{2}</text>"#, n(x), n(y), escape(&a.label));
        }
    }
}

fn series(out: &mut String, s: &Series, f: &Frame, xa: &Axis, ya: &Axis) {
    match s {
        Series::Rects { x0, x1, y, color: c, opacity } => {
            let base = f.y(ya, ya.lo.max(0.0).min(ya.hi));
            for ((a, b), v) in x0.iter().zip(x1).zip(y) {
                let (px0, px1, py) = (f.x(xa, *a), f.x(xa, *b), f.y(ya, *v));
                let _ = write!(
                    out,
                    r##"<rect class="bar" x="{}" y="{}" width="{}" height="{}" fill="{}" fill-opacity="{}" stroke="#ffffff" stroke-width="0.5"/>"##,
                    n(px0),
                    n(py.min(base)),
                    n((px1 - px0).max(0.0)),
                    n((base - py).abs()),
                    color(*c),
                    opacity
                );
            }
        }
        Series::BandBars { groups, stacked } => {
            let k = groups.len().max(1);
            let slot = f.width / span(xa);
            let base = f.y(ya, ya.lo.max(0.0).min(ya.hi));
            let n_cat = groups.first().map_or(0, |g| g.1.len());
            let mut acc = vec![0.0; n_cat];
            for (g, (_, values)) in groups.iter().enumerate() {
                for (i, v) in values.iter().enumerate() {
                    if !v.is_finite() {
                        continue;
                    }
                    let (x, width, y_lo, y_hi) = if *stacked {
                        let lo = acc[i];
                        acc[i] += v;
                        (f.x(xa, i as f64 + 0.1), slot * 0.8, f.y(ya, lo), f.y(ya, lo + v))
                    } else {
                        let bw = slot * 0.8 / k as f64;
                        (f.x(xa, i as f64 + 0.1) + g as f64 * bw, bw, base, f.y(ya, *v))
                    };
                    let _ = write!(
                        out,
                        r#"<rect class="bar" x="{}" y="{}" width="{}" height="{}" fill="{}"/>"#,
                        n(x),
                        n(y_lo.min(y_hi)),
                        n(width),
                        n((y_lo - y_hi).abs()),
                        color(g)
                    );
                }
            }
        }
        Series::Line { x, y, color: c, step, dashed, .. } => {
            let mut d = String::new();
            let mut prev: Option<f64> = None;
            for (a, b) in x.iter().zip(y).filter(|(a, b)| a.is_finite() && b.is_finite()) {
                let (px, py) = (f.x(xa, *a), f.y(ya, *b));
                match prev {
                    None => {
                        let _ = write!(d, "M{} {}", n(px), n(py));
                    }
                    Some(last_y) if *step => {
                        let _ = write!(d, " L{} {} L{} {}", n(px), n(last_y), n(px), n(py));
                    }
                    Some(_) => {
                        let _ = write!(d, " L{} {}", n(px), n(py));
                    }
                }
                prev = Some(py);
            }
            if !d.is_empty() {
                let dash = if *dashed { r#" stroke-dasharray="5 4""# } else { "" };
                let _ = write!(out, r#"<path class="line" d="{d}" fill="none" stroke="{}" stroke-width="2"{dash}/>"#, color(*c));
            }
        }
        Series::Points { x, y, color: c } => {
            for (a, b) in x.iter().zip(y).filter(|(a, b)| a.is_finite() && b.is_finite()) {
                let _ = write!(out, r#"<circle class="pt" cx="{}" cy="{}" r="2.5" fill="{}" fill-opacity="0.6"/>"#, n(f.x(xa, *a)), n(f.y(ya, *b)), color(*c));
            }
        }
        Series::Boxes(boxes) => {
            let slot = f.width / span(xa);
            for (i, b) in boxes.iter().enumerate() {
                draw_box(out, b, f.x(xa, i as f64 + 0.5), slot * 0.5, |v| f.y(ya, v));
            }
        }
        Series::Heatmap { values, lo, hi, scale, annotate } => {
            let cols = values.first().map_or(0, |r| r.len());
            let annotate = *annotate && values.len() <= 15 && cols <= 15;
            let (cw, ch) = (f.width / cols.max(1) as f64, f.height / values.len().max(1) as f64);
            for (r, row) in values.iter().enumerate() {
                for (c, v) in row.iter().enumerate() {
                    let (x, y) = (f.left + c as f64 * cw, f.top + r as f64 * ch);
                    let fill = scale_color(*v, *lo, *hi, *scale);
                    let _ = write!(out, r##"<rect class="cell" x="{}" y="{}" width="{}" height="{}" fill="{fill}" stroke="#ffffff" stroke-width="0.5"/>"##, n(x), n(y), n(cw), n(ch));
                    if annotate {
                        let label = if v.is_finite() { format!("{v:.2}") } else { "n/a".into() };
                        let _ = write!(out, r#"<text class="cell-label" x="{}" y="{}" text-anchor="middle" font-size="10">{label}</text>"#, n(x + cw / 2.0), n(y + ch / 2.0 + 3.5));
                    }
                }
            }
        }
        Series::Hexagons { cx, cy, counts, dx, dy } => {
            let max = counts.iter().copied().max().unwrap_or(1).max(1) as f64;
            let (sx, sy) = (f.width / span(xa), f.height / span(ya));
            for ((x, y), c) in cx.iter().zip(cy).zip(counts) {
                let (px, py) = (f.x(xa, *x), f.y(ya, *y));
                let pts: Vec<String> = (0..6).map(|k| format!("{},{}", n(px + dx[k] * sx), n(py - dy[k] * sy))).collect();
                let fill = scale_color(0.15 + 0.85 * *c as f64 / max, 0.0, 1.0, ColorScale::Sequential);
                let _ = write!(out, r##"<polygon class="hex" points="{}" fill="{fill}" stroke="#ffffff" stroke-width="0.3"><title>{c}</title></polygon>"##, pts.join(" "));
            }
        }
        Series::Segments(segs) => {
            for s in segs {
                let _ = write!(
                    out,
                    r#"<line class="seg" x1="{}" y1="{}" x2="{}" y2="{}" stroke="{}" stroke-width="1.5"/>"#,
                    n(f.x(xa, s[0])),
                    n(f.y(ya, s[1])),
                    n(f.x(xa, s[2])),
                    n(f.y(ya, s[3])),
                    color(0)
                );
            }
        }
        Series::Table(_) | Series::Pie { .. } => {}
    }
}

fn draw_box(out: &mut String, b: &BoxStats, cx: f64, width: f64, y: impl Fn(f64) -> f64) {
    let (x0, x1) = (cx - width / 2.0, cx + width / 2.0);
    let line = |out: &mut String, a: f64, b: f64, c: f64, d: f64| {
        let _ = write!(out, r##"<line class="whisker" x1="{}" y1="{}" x2="{}" y2="{}" stroke="#333333"/>"##, n(a), n(b), n(c), n(d));
    };
    line(out, cx, y(b.upper_whisker), cx, y(b.q3));
    line(out, cx, y(b.q1), cx, y(b.lower_whisker));
    line(out, cx - width / 4.0, y(b.upper_whisker), cx + width / 4.0, y(b.upper_whisker));
    line(out, cx - width / 4.0, y(b.lower_whisker), cx + width / 4.0, y(b.lower_whisker));
    let (top, bottom) = (y(b.q3), y(b.q1));
    let _ = write!(
        out,
        r##"<rect class="box" x="{}" y="{}" width="{}" height="{}" fill="{}" fill-opacity="0.7" stroke="#333333"/>"##,
        n(x0),
        n(top.min(bottom)),
        n(width),
        n((bottom - top).abs()),
        color(0)
    );
    line(out, x0, y(b.median), x1, y(b.median));
    for o in b.outliers.iter().filter(|v| v.is_finite()) {
        let _ = write!(out, r##"<circle class="outlier" cx="{}" cy="{}" r="2.5" fill="none" stroke="#333333"/>"##, n(cx), n(y(*o)));
    }
}

fn table(out: &mut String, rows: &[TableRow], w: f64, top: f64, h: f64) {
    let per_col = if rows.len() > 18 { rows.len().div_ceil(2) } else { rows.len() };
    let n_cols = rows.len().div_ceil(per_col.max(1)).max(1);
    let row_h = ((h - top - 16.0) / per_col.max(1) as f64).min(20.0);
    let col_w = (w - 40.0) / n_cols as f64;
    for (i, r) in rows.iter().enumerate() {
        let (c, k) = (i / per_col.max(1), i % per_col.max(1));
        let x = 20.0 + c as f64 * col_w;
        let y = top + 12.0 + k as f64 * row_h;
        let (class, fill) = if r.highlight { ("row hl", HIGHLIGHT) } else { ("row", "#222222") };
        if k % 2 == 0 {
            let _ = write!(out, r##"<rect class="stripe" x="{}" y="{}" width="{}" height="{}" fill="#f4f6f8"/>"##, n(x), n(y - row_h + 5.0), n(col_w - 10.0), n(row_h));
        }
        let _ = write!(
            out,
            r#"<g class="{class}" fill="{fill}"><text x="{}" y="{}">{}</text><text x="{}" y="{}" text-anchor="end"{}>{}</text></g>"#,
            n(x + 6.0),
            n(y),
            escape(&r.label),
            n(x + col_w - 16.0),
            n(y),
            if r.highlight { r#" font-weight="bold""# } else { "" },
            escape(&r.value)
        );
    }
}

fn pie(out: &mut String, labels: &[String], values: &[f64], f: &Frame) {
    let total: f64 = values.iter().filter(|v| v.is_finite() && **v > 0.0).sum();
    let (cx, cy) = (f.left + f.width * 0.4, f.top + f.height / 2.0);
    let r = (f.height / 2.0).min(f.width * 0.35);
    let mut angle = -std::f64::consts::FRAC_PI_2;
    for (i, (label, v)) in labels.iter().zip(values).enumerate() {
        if !(v.is_finite() && *v > 0.0) {
            continue;
        }
        let share = v / total;
        let pct = share * 100.0;
        if share >= 1.0 - 1e-12 {
            let _ = write!(out, r#"<circle class="slice" cx="{}" cy="{}" r="{}" fill="{}"><title>{}: {pct:.1}%</title></circle>"#, n(cx), n(cy), n(r), color(i), escape(label));
            continue;
        }
        let end = angle + share * std::f64::consts::TAU;
        let large = if share > 0.5 { 1 } else { 0 };
        let _ = write!(
            out,
            r##"<path class="slice" d="M{} {} L{} {} A{} {} 0 {large} 1 {} {} Z" fill="{}" stroke="#ffffff"><title>{}: {pct:.1}%</title></path>"##,
            n(cx),
            n(cy),
            n(cx + r * angle.cos()),
            n(cy + r * angle.sin()),
            n(r),
            n(r),
            n(cx + r * end.cos()),
            n(cy + r * end.sin()),
            color(i),
            escape(label)
        );
        angle = end;
    }
}

fn legend(out: &mut String, entries: &[(String, usize)], f: &Frame) {
    let x = f.left + f.width - 150.0;
    for (i, (label, c)) in entries.iter().take(12).enumerate() {
        let y = f.top + 4.0 + i as f64 * 15.0;
        let _ = write!(out, r#"<rect class="swatch" x="{}" y="{}" width="10" height="10" fill="{}"/>"#, n(x), n(y), color(*c));
        let _ = write!(out, r#"<text class="legend" x="{}" y="{}">{}</text>"#, n(x + 14.0), n(y + 9.0), escape(&shorten(label, 24)));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chart::ChartKind;

    fn spec(series: Vec<Series>) -> ChartSpec {
        ChartSpec {
            kind: ChartKind::Histogram,
            title: "a < b & c".into(),
            notes: vec![],
            x: Some(Axis::linear("x", 0.0, 3.0)),
            y: Some(Axis::linear("Frequency", 0.0, 5.0)),
            series,
            legend: vec![],
            badge: false,
            width: 600,
            height: 400,
        }
    }

    #[test]
    fn empty_series_says_no_data() {
        let svg = render_svg(&spec(vec![]));
        assert!(svg.contains(">no data</text>"));
        assert!(svg.contains("a &lt; b &amp; c"));
    }

    #[test]
    fn one_rect_per_bin() {
        let s = spec(vec![Series::Rects { x0: vec![0.0, 1.0, 2.0], x1: vec![1.0, 2.0, 3.0], y: vec![1.0, 5.0, 2.0], color: 0, opacity: 1.0 }]);
        let svg = render_svg(&s);
        assert_eq!(svg.matches(r#"class="bar""#).count(), 3);
        assert_eq!(svg, render_svg(&s.clone()));
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>"));
    }

    #[test]
    fn diverging_midpoint_is_white() {
        assert_eq!(scale_color(0.0, -1.0, 1.0, ColorScale::Diverging), "#ffffff");
        assert_eq!(scale_color(1.0, -1.0, 1.0, ColorScale::Diverging), "#b2182b");
        assert_eq!(scale_color(-1.0, -1.0, 1.0, ColorScale::Diverging), "#2166ac");
    }
}
