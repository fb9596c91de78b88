//! Unit-circle diagrams of a criterion report: for each `λ`, the points
//! `exp(2πi⟨λa⟩)` of the top parameters in red and of the bottom parameters
//! in blue. Repeated points are stacked outward so multiplicities stay
//! visible. Output depends only on the report.

use std::f64::consts::TAU;
use std::fmt::Write as _;
use std::io;
use std::path::Path;

use hypalg_core::criteria::{CriterionReport, LambdaReport};
use hypalg_core::exact::BracketValue;
use hypalg_core::Rational;
use num_traits::ToPrimitive;

const CELL: f64 = 200.0;
const RADIUS: f64 = 70.0;
const DOT: f64 = 5.0;
const STACK: f64 = 12.0;
const PER_ROW: usize = 6;
const TOP_COLOR: &str = "#d62728";
const BOTTOM_COLOR: &str = "#1f77b4";

fn angle(b: &BracketValue) -> f64 {
    b.value().to_f64().expect("bracket in (0, 1]") * TAU
}

fn dots(
    out: &mut String,
    cx: f64,
    cy: f64,
    points: &[(Rational, BracketValue)],
    class: &str,
    color: &str,
    inward: bool,
) {
    let mut seen: Vec<&BracketValue> = Vec::new();
    for (_, b) in points {
        let depth = seen.iter().filter(|&&s| s == b).count() as f64;
        seen.push(b);
        let r = if inward { RADIUS - depth * STACK } else { RADIUS + depth * STACK };
        let t = angle(b);
        let (x, y) = (cx + r * t.cos(), cy - r * t.sin());
        let _ = writeln!(out, r#"    <circle class="{class}" cx="{x:.3}" cy="{y:.3}" r="{DOT:.3}" fill="{color}"/>"#);
    }
}

fn cell(out: &mut String, index: usize, r: &LambdaReport) {
    let col = (index % PER_ROW) as f64;
    let row = (index / PER_ROW) as f64;
    let (cx, cy) = (col * CELL + CELL / 2.0, row * CELL + CELL / 2.0 + 10.0);
    let status = if r.satisfied { "interlacing" } else { "not interlacing" };
    let _ = writeln!(out, r#"  <g id="lambda-{}">"#, r.lambda);
    let _ = writeln!(
        out,
        r##"    <circle cx="{cx:.3}" cy="{cy:.3}" r="{RADIUS:.3}" fill="none" stroke="#444444" stroke-width="1.000"/>"##
    );
    // top parameters stack outward, bottom ones inward, so coincident
    // brackets of different kinds do not hide each other
    dots(out, cx, cy, &r.sorted_top, "top", TOP_COLOR, false);
    dots(out, cx, cy, &r.sorted_bottom, "bottom", BOTTOM_COLOR, true);
    let _ = writeln!(
        out,
        r#"    <text x="{cx:.3}" y="{:.3}" text-anchor="middle" font-family="sans-serif" font-size="14">λ = {} ({status})</text>"#,
        cy + RADIUS + 26.0,
        r.lambda
    );
    let _ = writeln!(out, "  </g>");
}

/// The SVG document for a report.
pub fn interlacing_svg(report: &CriterionReport) -> String {
    let n = report.per_lambda.len().max(1);
    let cols = n.min(PER_ROW);
    let rows = n.div_ceil(PER_ROW);
    let (w, h) = (cols as f64 * CELL, rows as f64 * CELL + 20.0);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.3}" height="{h:.3}" viewBox="0 0 {w:.3} {h:.3}">"#
    );
    let _ = writeln!(
        out,
        "  <title>{} criterion, N = {}, {}</title>",
        report.kind,
        report.modulus,
        if report.satisfied { "satisfied" } else { "violated" }
    );
    for (i, r) in report.per_lambda.iter().enumerate() {
        cell(&mut out, i, r);
    }
    out.push_str("</svg>\n");
    out
}

pub fn write_interlacing_svg(report: &CriterionReport, path: &Path) -> io::Result<()> {
    std::fs::write(path, interlacing_svg(report))
}
