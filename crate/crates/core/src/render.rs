//! SVG drawings of lifted patches.
//!
//! Circles and segments are written in model coordinates inside a group whose
//! transform flips the y axis and fits the drawing to the canvas, so the
//! emitted `cx`/`cy` values can be read back and compared exactly.

use std::fmt::Write;

use crate::colored_graph::{lift_patch, ColoredGraph};
use crate::realization::Realization;
use crate::scalar::Vec2;

const PALETTE: [&str; 8] = ["#d1495b", "#00798c", "#edae49", "#30638e", "#66a182", "#8d5a97", "#e07a5f", "#3d405b"];
const CANVAS: f64 = 800.0;

fn f64_pair(p: &Vec2) -> [f64; 2] {
    [p[0].to_f64(), p[1].to_f64()]
}

pub fn render_svg(g: &ColoredGraph, real: &Realization, radius: i64) -> String {
    let patch = lift_patch(g, real, radius);
    let v1 = f64_pair(real.v1());
    let v2 = f64_pair(&real.v2());

    let mut xs: Vec<f64> = patch.points.iter().map(|p| p.position[0]).collect();
    let mut ys: Vec<f64> = patch.points.iter().map(|p| p.position[1]).collect();
    for corner in [[0.0, 0.0], v1, v2, [v1[0] + v2[0], v1[1] + v2[1]]] {
        xs.push(corner[0]);
        ys.push(corner[1]);
    }
    let min = |v: &[f64]| v.iter().copied().fold(f64::INFINITY, f64::min);
    let max = |v: &[f64]| v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let (x0, x1, y0, y1) = (min(&xs), max(&xs), min(&ys), max(&ys));
    let span = (x1 - x0).max(y1 - y0).max(1e-9);
    let margin = 0.05 * span;
    let scale = CANVAS / (span + 2.0 * margin);
    let dot = 0.006 * (span + 2.0 * margin);

    let mut out = String::new();
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{CANVAS}" height="{CANVAS}" viewBox="0 0 {CANVAS} {CANVAS}">"#
    )
    .unwrap();
    writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    writeln!(
        out,
        r#"<g id="patch" data-k="{}" data-radius="{}" data-v1="{} {}" data-v2="{} {}" transform="matrix({scale} 0 0 {} {} {})">"#,
        g.k(),
        patch.radius,
        v1[0],
        v1[1],
        v2[0],
        v2[1],
        -scale,
        (margin - x0) * scale,
        (y1 + margin) * scale,
    )
    .unwrap();

    writeln!(
        out,
        r#"<polygon class="domain" points="0,0 {},{} {},{} {},{}" fill="none" stroke="gray" stroke-dasharray="{} {}" stroke-width="{}"/>"#,
        v1[0],
        v1[1],
        v1[0] + v2[0],
        v1[1] + v2[1],
        v2[0],
        v2[1],
        dot,
        dot,
        dot / 3.0
    )
    .unwrap();

    writeln!(out, r##"<g class="edges" stroke="#555" stroke-width="{}">"##, dot / 3.0).unwrap();
    for s in &patch.segments {
        writeln!(out, r#"<line data-edge="{}" x1="{}" y1="{}" x2="{}" y2="{}"/>"#, s.edge, s.from[0], s.from[1], s.to[0], s.to[1]).unwrap();
    }
    writeln!(out, "</g>").unwrap();

    writeln!(out, r#"<g class="vertices">"#).unwrap();
    for p in &patch.points {
        writeln!(
            out,
            r#"<circle data-vertex="{}" data-element="{}" cx="{}" cy="{}" r="{dot}" fill="{}"/>"#,
            p.vertex,
            p.element,
            p.position[0],
            p.position[1],
            PALETTE[p.vertex % PALETTE.len()]
        )
        .unwrap();
    }
    writeln!(out, "</g>\n</g>\n</svg>").unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::GroupContext;
    use crate::realization::random_realization;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn counts_circles() {
        let c = GroupContext::new(4).unwrap();
        let g = ColoredGraph::from_edges(c, 2, [(0, 1, c.r())]);
        let real = random_realization(&c, 2, 10, &mut ChaCha8Rng::seed_from_u64(2));
        let svg = render_svg(&g, &real, 1);
        assert_eq!(svg.matches("<circle").count(), 2 * 4 * 9);
        assert_eq!(svg.matches("<line").count(), 4 * 9);
        assert!(svg.trim_end().ends_with("</svg>"));
    }
}
