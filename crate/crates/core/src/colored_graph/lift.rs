//! A finite piece of the infinite symmetric framework covering a colored graph.

use serde::Serialize;

use super::ColoredGraph;
use crate::groups::GroupElement;
use crate::realization::Realization;
use crate::scalar::Vec2;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlacedVertex {
    pub vertex: usize,
    pub element: GroupElement,
    pub position: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Segment {
    pub edge: usize,
    pub element: GroupElement,
    pub from: [f64; 2],
    pub to: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LiftPatch {
    pub radius: i64,
    pub points: Vec<PlacedVertex>,
    pub segments: Vec<Segment>,
}

fn to_f64(p: &Vec2) -> [f64; 2] {
    [p[0].to_f64(), p[1].to_f64()]
}

/// Group elements `((m1, m2), s)` with `|m1|, |m2| <= radius` and every `s`.
pub(crate) fn patch_elements(k: u8, radius: i64) -> Vec<GroupElement> {
    let mut out = Vec::new();
    for m1 in -radius..=radius {
        for m2 in -radius..=radius {
            for s in 0..k {
                out.push(GroupElement::new([m1, m2], s));
            }
        }
    }
    out
}

/// Place `Φ(γ) p_i` for every vertex and every `γ` in the patch, and the image
/// of every quotient edge: the segment from `Φ(γ) p_i` to `Φ(γ γ_ij) p_j`.
pub fn lift_patch(g: &ColoredGraph, real: &Realization, radius: i64) -> LiftPatch {
    let ctx = g.context;
    let elements = patch_elements(ctx.k(), radius.max(0));
    let mut points = Vec::with_capacity(elements.len() * g.n);
    let mut segments = Vec::with_capacity(elements.len() * g.m());
    for gamma in &elements {
        for (vertex, p) in real.points.iter().enumerate() {
            points.push(PlacedVertex { vertex, element: *gamma, position: to_f64(&real.apply(gamma, p)) });
        }
        for (edge, e) in g.edges.iter().enumerate() {
            let from = real.apply(gamma, &real.points[e.tail]);
            let to = real.apply(&ctx.compose(gamma, &e.color), &real.points[e.head]);
            segments.push(Segment { edge, element: *gamma, from: to_f64(&from), to: to_f64(&to) });
        }
    }
    LiftPatch { radius: radius.max(0), points, segments }
}

impl LiftPatch {
    /// Check that the isometry `Φ(generator)` maps the points of a subpatch into
    /// the patch, up to `tolerance`. Translations are tested on the radius
    /// `r - 1` subpatch; a rotation on the elements whose image stays inside
    /// the patch, since the k = 3, 6 actions can stretch lattice coordinates.
    pub fn is_symmetric_under(&self, g: &ColoredGraph, real: &Realization, generator: &GroupElement, tolerance: f64) -> bool {
        let ctx = g.context;
        let inner = self.radius - 1;
        self.points.iter().all(|placed| {
            let image_element = ctx.compose(generator, &placed.element);
            let within_radius = |e: &GroupElement, r: i64| e.t[0].abs() <= r && e.t[1].abs() <= r;
            let testable = if generator.is_rotation() {
                within_radius(&placed.element, inner) && within_radius(&image_element, self.radius)
            } else {
                within_radius(&placed.element, inner)
            };
            if !testable {
                return true;
            }
            let p = &real.points[placed.vertex];
            let q = to_f64(&real.apply(generator, &real.apply(&placed.element, p)));
            self.points
                .iter()
                .any(|other| (other.position[0] - q[0]).abs() <= tolerance && (other.position[1] - q[1]).abs() <= tolerance)
        })
    }
}
