//! Minimal SVG output for barcodes and dendrograms.

use std::fmt::Write as _;

use crate::hierarchy::Dendrogram;
use crate::persistence::PersistenceDiagram;

const WIDTH: f64 = 640.0;
const ROW: f64 = 16.0;
const MARGIN: f64 = 40.0;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn header(out: &mut String, width: f64, height: f64, comment: Option<&str>) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">"#
    );
    if let Some(c) = comment {
        let _ = writeln!(out, "<!-- {} -->", c.replace("--", "- -"));
    }
}

fn x_axis(out: &mut String, left: f64, right: f64, y: f64, max: f64) {
    let _ = writeln!(out, r#"<line x1="{left}" y1="{y}" x2="{right}" y2="{y}" stroke="black"/>"#);
    for k in 0..=4 {
        let v = max * k as f64 / 4.0;
        let x = left + (right - left) * k as f64 / 4.0;
        let _ = writeln!(
            out,
            r#"<line x1="{x:.2}" y1="{y}" x2="{x:.2}" y2="{}" stroke="black"/><text x="{x:.2}" y="{}" text-anchor="middle">{v:.3}</text>"#,
            y + 4.0,
            y + 16.0
        );
    }
}

/// One horizontal bar per interval, grouped by dimension. Essential bars
/// are drawn up to the cap in a different color.
pub fn barcode_svg(diagrams: &[PersistenceDiagram], comment: Option<&str>) -> String {
    let cap = diagrams.iter().map(|d| d.cap()).fold(0.0, f64::max);
    let max = if cap > 0.0 { cap } else { 1.0 };
    let rows: usize = diagrams.iter().map(|d| d.len() + 1).sum();
    let height = MARGIN * 2.0 + rows as f64 * ROW;
    let (left, right) = (MARGIN + 30.0, WIDTH - MARGIN);
    let scale = |v: f64| left + (right - left) * v.min(max) / max;

    let mut out = String::new();
    header(&mut out, WIDTH, height, comment);
    let mut y = MARGIN;
    for d in diagrams {
        let _ = writeln!(out, r#"<text x="4" y="{}">H{}</text>"#, y + 10.0, d.dimension());
        y += ROW;
        for b in d.bars() {
            let color = if b.essential { "#c0392b" } else { "#2c3e50" };
            let _ = writeln!(
                out,
                r#"<line x1="{:.2}" y1="{y}" x2="{:.2}" y2="{y}" stroke="{color}" stroke-width="3"/>"#,
                scale(b.birth),
                scale(b.death)
            );
            y += ROW;
        }
    }
    x_axis(&mut out, left, right, y, max);
    out.push_str("</svg>\n");
    out
}

/// Horizontal dendrogram: leaves on the y-axis, merge heights on the x-axis.
pub fn dendrogram_svg(d: &Dendrogram, comment: Option<&str>) -> String {
    let leaves = d.leaves();
    let n = leaves.len();
    let label_width = 8.0 + 7.0 * leaves.iter().map(|l| l.chars().count()).max().unwrap_or(1) as f64;
    let (left, right) = (MARGIN + label_width, WIDTH - MARGIN);
    let height = MARGIN * 2.0 + n as f64 * ROW;
    let top = d.final_height();
    let max = if top > 0.0 { top } else { 1.0 };
    let xpos = |h: f64| left + (right - left) * h / max;

    let mut y = vec![0.0; n + d.merges().len()];
    let mut out = String::new();
    header(&mut out, WIDTH, height, comment);
    for (row, &leaf) in d.leaf_order().iter().enumerate() {
        y[leaf] = MARGIN + row as f64 * ROW;
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            left - 4.0,
            y[leaf] + 4.0,
            escape(&leaves[leaf])
        );
    }
    for (k, m) in d.merges().iter().enumerate() {
        let (ya, yb) = (y[m.left], y[m.right]);
        let xh = xpos(m.height);
        let _ = writeln!(
            out,
            r#"<path d="M{:.2},{ya:.2}H{xh:.2}V{yb:.2}H{:.2}" fill="none" stroke="black"/>"#,
            xpos(d.height_of(m.left)),
            xpos(d.height_of(m.right))
        );
        y[n + k] = (ya + yb) / 2.0;
    }
    x_axis(&mut out, left, right, MARGIN + n as f64 * ROW, max);
    out.push_str("</svg>\n");
    out
}
