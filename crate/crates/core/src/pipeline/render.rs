//! Deterministic SVG output for barcodes, persistence diagrams and Morse sets.

use std::fmt::Write as _;

use crate::complex::{SimplexSet, SimplicialComplex};
use crate::error::{Error, Result};
use crate::homology::Interval;

const WIDTH: f64 = 640.0;
const MARGIN: f64 = 40.0;
const DIM_COLORS: [&str; 3] = ["#d62728", "#1f77b4", "#2ca02c"];
const PALETTE: [&str; 10] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
];

fn dim_color(dim: usize) -> &'static str {
    DIM_COLORS[dim.min(DIM_COLORS.len() - 1)]
}

fn header(out: &mut String, width: f64, height: f64) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    );
    let _ = writeln!(out, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##);
}

/// One horizontal bar per interval over steps `1..=steps`, drawn in the
/// given order from the top. `labels` name the steps along the axis.
pub fn barcode_svg(bars: &[Interval], steps: usize, labels: &[String]) -> String {
    let row = 12.0;
    let height = 2.0 * MARGIN + row * bars.len().max(1) as f64;
    let span = (WIDTH - 2.0 * MARGIN) / steps.max(1) as f64;
    let x = |t: f64| MARGIN + (t - 1.0) * span;
    let mut out = String::new();
    header(&mut out, WIDTH, height);
    let base = height - MARGIN;
    let _ = writeln!(
        out,
        r##"<line x1="{:.2}" y1="{base:.2}" x2="{:.2}" y2="{base:.2}" stroke="#000000"/>"##,
        x(1.0),
        x(steps as f64 + 1.0)
    );
    let _ = writeln!(
        out,
        r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{base:.2}" stroke="#000000"/>"##,
        x(1.0),
        MARGIN,
        x(1.0)
    );
    for t in 1..=steps {
        let label = labels.get(t - 1).cloned().unwrap_or_else(|| t.to_string());
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" font-size="9" text-anchor="middle">{label}</text>"#,
            x(t as f64 + 0.5),
            base + 14.0
        );
    }
    for (i, bar) in bars.iter().enumerate() {
        let death = bar.death.unwrap_or(steps);
        let y = MARGIN + row * i as f64 + 2.0;
        let _ = writeln!(
            out,
            r#"<rect x="{:.2}" y="{y:.2}" width="{:.2}" height="{:.2}" fill="{}"/>"#,
            x(bar.birth as f64),
            span * (death + 1 - bar.birth) as f64,
            row - 4.0,
            dim_color(bar.dim)
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Birth against death; degree 0 as pluses, degree 1 as crosses. Bars alive
/// at the last step are drawn on the top line.
pub fn diagram_svg(bars: &[Interval], steps: usize) -> String {
    let side = WIDTH - 2.0 * MARGIN;
    let n = steps.max(1) as f64 + 1.0;
    let px = |t: f64| MARGIN + side * t / n;
    let py = |t: f64| WIDTH - MARGIN - side * t / n;
    let mut out = String::new();
    header(&mut out, WIDTH, WIDTH);
    let _ = writeln!(
        out,
        r##"<rect x="{MARGIN:.2}" y="{MARGIN:.2}" width="{side:.2}" height="{side:.2}" fill="none" stroke="#000000"/>"##
    );
    let _ = writeln!(
        out,
        r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#999999"/>"##,
        px(0.0),
        py(0.0),
        px(n),
        py(n)
    );
    for bar in bars {
        let death = bar.death.map_or(n, |d| d as f64 + 1.0);
        let (cx, cy) = (px(bar.birth as f64), py(death));
        let r = 4.0;
        let color = dim_color(bar.dim);
        if bar.dim == 0 {
            let _ = writeln!(
                out,
                r#"<path d="M{:.2} {cy:.2}H{:.2}M{cx:.2} {:.2}V{:.2}" stroke="{color}" stroke-width="1.5"/>"#,
                cx - r,
                cx + r,
                cy - r,
                cy + r
            );
        } else {
            let _ = writeln!(
                out,
                r#"<path d="M{:.2} {:.2}L{:.2} {:.2}M{:.2} {:.2}L{:.2} {:.2}" stroke="{color}" stroke-width="1.5"/>"#,
                cx - r,
                cy - r,
                cx + r,
                cy + r,
                cx - r,
                cy + r,
                cx + r,
                cy - r
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

/// The mesh in light grey with each Morse set coloured by its index.
pub fn morse_overlay_svg(complex: &SimplicialComplex, sets: &[SimplexSet]) -> Result<String> {
    let geometry = complex.geometry().ok_or(Error::MissingCoordinates)?;
    if geometry.dim() != 2 {
        return Err(Error::UnsupportedDimension(geometry.dim()));
    }
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for v in 0..geometry.len() {
        let p = geometry.point(v);
        for a in 0..2 {
            lo[a] = lo[a].min(p[a]);
            hi[a] = hi[a].max(p[a]);
        }
    }
    let scale = (WIDTH - 2.0 * MARGIN) / (hi[0] - lo[0]).max(hi[1] - lo[1]).max(f64::MIN_POSITIVE);
    let height = 2.0 * MARGIN + scale * (hi[1] - lo[1]);
    let at = |v: u32| {
        let p = geometry.point(v as usize);
        (MARGIN + scale * (p[0] - lo[0]), height - MARGIN - scale * (p[1] - lo[1]))
    };
    let mut owner = vec![usize::MAX; complex.len()];
    for (i, m) in sets.iter().enumerate() {
        for s in m.iter() {
            owner[s.index()] = i;
        }
    }

    let mut out = String::new();
    header(&mut out, WIDTH, height);
    for pass in 0..2 {
        for s in complex.ids() {
            let colored = owner[s.index()] != usize::MAX;
            if colored != (pass == 1) {
                continue;
            }
            let (fill, stroke) = if colored {
                let c = PALETTE[owner[s.index()] % PALETTE.len()];
                (c, c)
            } else {
                ("none", "#dddddd")
            };
            let verts = complex.vertices(s);
            match verts.len() {
                1 => {
                    if colored {
                        let (x, y) = at(verts[0]);
                        let _ = writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="2.5" fill="{fill}"/>"#);
                    }
                }
                2 => {
                    let ((x1, y1), (x2, y2)) = (at(verts[0]), at(verts[1]));
                    let width = if colored { 2.0 } else { 0.5 };
                    let _ = writeln!(
                        out,
                        r#"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="{stroke}" stroke-width="{width}"/>"#
                    );
                }
                _ => {
                    if colored {
                        let pts: Vec<String> = verts
                            .iter()
                            .map(|&v| {
                                let (x, y) = at(v);
                                format!("{x:.2},{y:.2}")
                            })
                            .collect();
                        let _ = writeln!(
                            out,
                            r#"<polygon points="{}" fill="{fill}" fill-opacity="0.6" stroke="none"/>"#,
                            pts.join(" ")
                        );
                    }
                }
            }
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}
