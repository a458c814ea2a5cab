//! Cause-effect diagram: prominence (r + c) on x, relation (r - c) on y.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::dematel::{DematelResult, Group};
use crate::error::{Error, Result};
use crate::report::round_sig12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DiagramFormat {
    Svg,
    Dot,
    #[default]
    Json,
}

impl FromStr for DiagramFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "svg" => Ok(DiagramFormat::Svg),
            "dot" => Ok(DiagramFormat::Dot),
            "json" => Ok(DiagramFormat::Json),
            other => Err(Error::MalformedDocument(format!("unknown diagram format `{other}`"))),
        }
    }
}

#[derive(Debug, Serialize)]
struct Point<'a> {
    id: &'a str,
    name: &'a str,
    x: f64,
    y: f64,
    group: Group,
}

pub fn emit_diagram(result: &DematelResult, format: DiagramFormat) -> String {
    match format {
        DiagramFormat::Json => emit_json(result),
        DiagramFormat::Dot => emit_dot(result),
        DiagramFormat::Svg => emit_svg(result),
    }
}

fn emit_json(result: &DematelResult) -> String {
    let points: Vec<Point> = result
        .scores
        .iter()
        .map(|s| Point {
            id: &s.id,
            name: &s.name,
            x: round_sig12(s.prominence),
            y: round_sig12(s.relation),
            group: s.group,
        })
        .collect();
    let mut out = serde_json::to_string_pretty(&points).expect("points serialize");
    out.push('\n');
    out
}

fn escape_dot(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn emit_dot(result: &DematelResult) -> String {
    let (x_min, x_max) = padded_range(result.scores.iter().map(|s| s.prominence), false);
    let mut out = String::from("graph cause_effect {\n");
    out.push_str("  graph [label=\"x = r + c (prominence), y = r - c (relation)\"];\n");
    out.push_str("  node [shape=circle, fixedsize=true, width=0.15, fontsize=9];\n");
    for s in &result.scores {
        let color = match s.group {
            Group::Cause => "firebrick",
            Group::Effect => "steelblue",
        };
        let _ = writeln!(
            out,
            "  \"{id}\" [xlabel=\"{id}\", label=\"\", pos=\"{x},{y}!\", group=\"{g}\", color=\"{color}\", tooltip=\"{name}\"];",
            id = escape_dot(&s.id),
            x = round_sig12(s.prominence),
            y = round_sig12(s.relation),
            g = s.group,
            name = escape_dot(&s.name),
        );
    }
    let _ = writeln!(out, "  \"zero_left\" [shape=point, style=invis, pos=\"{},0!\"];", round_sig12(x_min));
    let _ = writeln!(out, "  \"zero_right\" [shape=point, style=invis, pos=\"{},0!\"];", round_sig12(x_max));
    out.push_str("  \"zero_left\" -- \"zero_right\" [style=dashed, label=\"r - c = 0\"];\n");
    out.push_str("}\n");
    out
}

/// Data range with 10% padding on each side; `with_zero` forces 0 into range.
fn padded_range(values: impl Iterator<Item = f64>, with_zero: bool) -> (f64, f64) {
    let (mut lo, mut hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    if with_zero {
        lo = lo.min(0.0);
        hi = hi.max(0.0);
    }
    if !lo.is_finite() || !hi.is_finite() {
        return (-1.0, 1.0);
    }
    let span = hi - lo;
    let pad = if span > 0.0 { span * 0.1 } else { lo.abs().max(1.0) * 0.5 };
    (lo - pad, hi + pad)
}

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const MARGIN: f64 = 70.0;

fn escape_xml(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;").replace('\'', "&apos;")
}

fn emit_svg(result: &DematelResult) -> String {
    let (x_min, x_max) = padded_range(result.scores.iter().map(|s| s.prominence), false);
    let (y_min, y_max) = padded_range(result.scores.iter().map(|s| s.relation), true);
    let px = |x: f64| MARGIN + (x - x_min) / (x_max - x_min) * (WIDTH - 2.0 * MARGIN);
    let py = |y: f64| HEIGHT - MARGIN - (y - y_min) / (y_max - y_min) * (HEIGHT - 2.0 * MARGIN);
    let (left, right, top, bottom) = (MARGIN, WIDTH - MARGIN, MARGIN, HEIGHT - MARGIN);
    let zero_y = py(0.0);

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">"
    );
    out.push_str("  <title>Cause and effect diagram</title>\n");
    out.push_str("  <rect x=\"0\" y=\"0\" width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    let _ = writeln!(
        out,
        "  <rect x=\"{left:.2}\" y=\"{top:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"none\" stroke=\"black\"/>",
        right - left,
        bottom - top
    );
    let _ = writeln!(
        out,
        "  <line class=\"zero-line\" x1=\"{left:.2}\" y1=\"{zero_y:.2}\" x2=\"{right:.2}\" y2=\"{zero_y:.2}\" stroke=\"gray\" stroke-dasharray=\"6,4\"/>"
    );

    for (value, anchor) in [(x_min, "start"), (x_max, "end")] {
        let _ = writeln!(
            out,
            "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"11\" text-anchor=\"{anchor}\">{value:.3}</text>",
            px(value),
            bottom + 16.0
        );
    }
    for value in [y_min, 0.0, y_max] {
        let _ = writeln!(
            out,
            "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"11\" text-anchor=\"end\">{:.3}</text>",
            left - 6.0,
            py(value) + 4.0,
            value + 0.0
        );
    }
    let _ = writeln!(
        out,
        "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"13\" text-anchor=\"middle\">r + c (prominence)</text>",
        WIDTH / 2.0,
        HEIGHT - 20.0
    );
    let _ = writeln!(
        out,
        "  <text x=\"20\" y=\"{:.2}\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 20 {:.2})\">r - c (relation)</text>",
        HEIGHT / 2.0,
        HEIGHT / 2.0
    );
    let _ = writeln!(out, "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"11\" fill=\"gray\">cause</text>", right - 40.0, zero_y - 6.0);
    let _ = writeln!(out, "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"11\" fill=\"gray\">effect</text>", right - 40.0, zero_y + 14.0);

    for s in &result.scores {
        let (cx, cy) = (px(s.prominence), py(s.relation));
        let (class, fill) = match s.group {
            Group::Cause => ("cause", "firebrick"),
            Group::Effect => ("effect", "steelblue"),
        };
        let _ = writeln!(
            out,
            "  <circle class=\"point {class}\" data-id=\"{id}\" cx=\"{cx:.2}\" cy=\"{cy:.2}\" r=\"4\" fill=\"{fill}\"><title>{name}</title></circle>",
            id = escape_xml(&s.id),
            name = escape_xml(&s.name),
        );
        let _ = writeln!(
            out,
            "  <text class=\"label\" x=\"{:.2}\" y=\"{:.2}\" font-size=\"10\">{}</text>",
            cx + 6.0,
            cy - 6.0,
            escape_xml(&s.id)
        );
    }
    out.push_str("</svg>\n");
    out
}
