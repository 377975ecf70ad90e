//! Seeded random instances for tests, self-tests and the `gen` command.

use rand::Rng;

use crate::colored_graph::ColoredGraph;
use crate::groups::{GroupContext, GroupElement, IndexedSubset};

/// Uniform color with `|m1|, |m2| <= bound`.
pub fn random_color<R: Rng + ?Sized>(ctx: &GroupContext, bound: i64, rng: &mut R) -> GroupElement {
    ctx.element([rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound)], rng.gen_range(0..ctx.k() as i64))
}

/// Mostly uniform colors, mixed with the identity, unit translations and
/// rotations about the origin so that degenerate subgroups show up often.
pub fn biased_color<R: Rng + ?Sized>(ctx: &GroupContext, bound: i64, rng: &mut R) -> GroupElement {
    match rng.gen_range(0..10) {
        0 => GroupElement::IDENTITY,
        1 => [ctx.t1(), ctx.t2(), ctx.invert(&ctx.t1())][rng.gen_range(0..3)],
        2 | 3 => ctx.element([0, 0], rng.gen_range(1..ctx.k() as i64)),
        _ => random_color(ctx, bound, rng),
    }
}

/// `m` edges with uniform endpoints and uniform colors.
pub fn random_graph<R: Rng + ?Sized>(ctx: &GroupContext, n: usize, m: usize, color_bound: i64, rng: &mut R) -> ColoredGraph {
    assert!(n > 0 || m == 0, "edges need vertices");
    let mut g = ColoredGraph::new(*ctx, n);
    for _ in 0..m {
        let (tail, head) = (rng.gen_range(0..n), rng.gen_range(0..n));
        g.add_edge(tail, head, random_color(ctx, color_bound, rng));
    }
    g
}

/// Like [`random_graph`] with [`biased_color`] colors.
pub fn biased_graph<R: Rng + ?Sized>(ctx: &GroupContext, n: usize, m: usize, color_bound: i64, rng: &mut R) -> ColoredGraph {
    let mut g = ColoredGraph::new(*ctx, n);
    for _ in 0..m {
        let (tail, head) = (rng.gen_range(0..n), rng.gen_range(0..n));
        g.add_edge(tail, head, biased_color(ctx, color_bound, rng));
    }
    g
}

/// Up to `max_size` biased elements spread over `n` parts.
pub fn random_indexed_subset<R: Rng + ?Sized>(ctx: &GroupContext, n: usize, max_size: usize, bound: i64, rng: &mut R) -> IndexedSubset {
    let size = rng.gen_range(0..=max_size);
    let elements = (0..size).map(|_| (biased_color(ctx, bound, rng), rng.gen_range(0..n))).collect();
    IndexedSubset::new(n, elements)
}

/// A greedily grown independent set of the group matroid.
pub fn random_independent_subset<R: Rng + ?Sized>(ctx: &GroupContext, n: usize, tries: usize, bound: i64, rng: &mut R) -> IndexedSubset {
    let mut a = IndexedSubset::empty(n);
    for _ in 0..tries {
        let b = a.with(biased_color(ctx, bound, rng), rng.gen_range(0..n));
        if b.is_independent(ctx) {
            a = b;
        }
    }
    a
}
