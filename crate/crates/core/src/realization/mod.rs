//! Direction networks and infinitesimal rigidity over exact arithmetic.
//!
//! Unknowns are laid out as `[p_0, ..., p_{n-1}, v1 (, v2)]`, two coordinates
//! each. The rotation `Φ(r_k)` is pinned to the origin and `Φ(t_2) = R_k v1`
//! for k = 3, 4, 6, so the only representation parameters are the lattice
//! vectors.

mod linalg;

pub use linalg::Matrix;

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::colored_graph::{graph_invariants, ColoredGraph};
use crate::error::{Error, Result};
use crate::groups::{GroupContext, GroupElement};
use crate::scalar::{add2, is_zero2, mat_vec, perp, scale2, sub2, transpose_vec, vec2, Scalar, Vec2};
use crate::sparsity;

pub type DirectionAssignment = Vec<Vec2>;

/// Points and lattice parameters of an equivariant realization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realization {
    pub context: GroupContext,
    pub points: Vec<Vec2>,
    /// `v1`, plus `v2` when k = 2.
    pub lattice: Vec<Vec2>,
}

/// Image of `γ`'s translation part: `m1 v1 + m2 v2` for k = 2, `m1 v1 + m2 R v1` otherwise.
pub fn translation_part(ctx: &GroupContext, gamma: &GroupElement, lattice: &[Vec2]) -> Vec2 {
    let m1 = Scalar::from_int(gamma.t[0]);
    let m2 = Scalar::from_int(gamma.t[1]);
    let second = if ctx.k() == 2 { lattice[1].clone() } else { mat_vec(&ctx.rotation(), &lattice[0]) };
    add2(&scale2(&m1, &lattice[0]), &scale2(&m2, &second))
}

/// Number of unknowns: `2n + 2r`.
pub fn unknown_count(ctx: &GroupContext, n: usize) -> usize {
    2 * n + 2 * ctx.lattice_params()
}

impl Realization {
    pub fn zero(context: GroupContext, n: usize) -> Self {
        Realization {
            context,
            points: vec![vec2(0, 0); n],
            lattice: vec![vec2(0, 0); context.lattice_params()],
        }
    }

    /// Read a solution vector in the column layout of the linear systems.
    pub fn from_vector(context: GroupContext, n: usize, x: &[Scalar]) -> Self {
        assert_eq!(x.len(), unknown_count(&context, n));
        let pair = |i: usize| [x[2 * i].clone(), x[2 * i + 1].clone()];
        Realization {
            context,
            points: (0..n).map(pair).collect(),
            lattice: (n..n + context.lattice_params()).map(pair).collect(),
        }
    }

    pub fn to_vector(&self) -> Vec<Scalar> {
        self.points.iter().chain(self.lattice.iter()).flat_map(|p| p.iter().cloned()).collect()
    }

    pub fn v1(&self) -> &Vec2 {
        &self.lattice[0]
    }

    /// `Φ(t_2)`'s translation.
    pub fn v2(&self) -> Vec2 {
        translation_part(&self.context, &self.context.t2(), &self.lattice)
    }

    pub fn translation_part(&self, gamma: &GroupElement) -> Vec2 {
        translation_part(&self.context, gamma, &self.lattice)
    }

    /// `Φ(γ) p = R^s p + τ(γ)`.
    pub fn apply(&self, gamma: &GroupElement, p: &Vec2) -> Vec2 {
        add2(&mat_vec(&self.context.rotation_power(gamma.s), p), &self.translation_part(gamma))
    }

    /// `Φ(γ_ij) p_j - p_i` for edge `i`.
    pub fn edge_vector(&self, g: &ColoredGraph, i: usize) -> Vec2 {
        let e = g.edges[i];
        sub2(&self.apply(&e.color, &self.points[e.head]), &self.points[e.tail])
    }

    pub fn collapsed_edges(&self, g: &ColoredGraph) -> Vec<usize> {
        (0..g.m()).filter(|&i| is_zero2(&self.edge_vector(g, i))).collect()
    }

    pub fn has_trivial_lattice(&self) -> bool {
        self.lattice.iter().all(is_zero2)
    }

    /// No collapsed edge and a nontrivial translation representation.
    pub fn is_faithful(&self, g: &ColoredGraph) -> bool {
        !self.has_trivial_lattice() && self.collapsed_edges(g).is_empty()
    }

    /// Scale so the first nonzero coordinate is 1.
    pub fn normalized(&self) -> Self {
        let x = self.to_vector();
        let Some(lead) = x.iter().find(|c| !c.is_zero()) else {
            return self.clone();
        };
        let inv = lead.inverse().expect("nonzero");
        let scaled: Vec<Scalar> = x.iter().map(|c| c * &inv).collect();
        Realization::from_vector(self.context, self.points.len(), &scaled)
    }
}

impl fmt::Display for Realization {
    /// `point <i> <x> <y>` lines, then `lattice v1 <x> <y>` (and `v2` for k = 2).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.points.iter().enumerate() {
            writeln!(f, "point {i} {} {}", p[0], p[1])?;
        }
        for (i, v) in self.lattice.iter().enumerate() {
            writeln!(f, "lattice v{} {} {}", i + 1, v[0], v[1])?;
        }
        Ok(())
    }
}

/// One row per edge: `<Φ(γ) p_j - p_i, normal> = 0`, linearized in `(p, v)`.
fn assemble_with_normals(g: &ColoredGraph, normals: &[Vec2]) -> Matrix {
    let ctx = g.context;
    let n = g.n;
    let mut m = Matrix::zeros(g.m(), unknown_count(&ctx, n));
    let rotation_t = ctx.rotation();
    for (row, (e, nrm)) in g.edges.iter().zip(normals).enumerate() {
        let head = transpose_vec(&ctx.rotation_power(e.color.s), nrm);
        for c in 0..2 {
            m.add_to(row, 2 * e.head + c, &head[c]);
            m.add_to(row, 2 * e.tail + c, &-&nrm[c]);
        }
        let m1 = Scalar::from_int(e.color.t[0]);
        let m2 = Scalar::from_int(e.color.t[1]);
        if ctx.k() == 2 {
            for c in 0..2 {
                m.add_to(row, 2 * n + c, &(&m1 * &nrm[c]));
                m.add_to(row, 2 * n + 2 + c, &(&m2 * &nrm[c]));
            }
        } else {
            let block = add2(&scale2(&m1, nrm), &scale2(&m2, &transpose_vec(&rotation_t, nrm)));
            for c in 0..2 {
                m.add_to(row, 2 * n + c, &block[c]);
            }
        }
    }
    m
}

/// The homogeneous system `<Φ(γ_ij) p_j - p_i, d_ij^⊥> = 0`.
pub fn assemble_direction_system(g: &ColoredGraph, d: &DirectionAssignment) -> Result<Matrix> {
    assert_eq!(d.len(), g.m(), "one direction per edge");
    if let Some(i) = d.iter().position(is_zero2) {
        return Err(Error::ZeroDirection(i));
    }
    let normals: Vec<Vec2> = d.iter().map(perp).collect();
    Ok(assemble_with_normals(g, &normals))
}

/// Integer directions with coordinates in `[-bound, bound]`, zero vectors rejected.
pub fn random_directions(g: &ColoredGraph, seed: u64, bound: i64) -> Result<DirectionAssignment> {
    if bound < 8 {
        return Err(Error::BadParameter(format!("direction bound must be at least 8 (got {bound})")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..g.m()).map(|_| random_nonzero(&mut rng, bound)).collect())
}

fn random_nonzero<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Vec2 {
    loop {
        let (x, y) = (rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound));
        if (x, y) != (0, 0) {
            return vec2(x, y);
        }
    }
}

/// Why a direction network has no faithful realization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnosis {
    pub kernel_dim: usize,
    /// Edges collapsed in the reported solution (all of them when the kernel is zero).
    pub collapsed_edges: Vec<usize>,
    pub circuit: Option<Vec<usize>>,
    pub solution: Option<Realization>,
}

impl Diagnosis {
    pub fn summary(&self) -> String {
        match self.kernel_dim {
            0 => "collapsed (kernel dim 0)".to_string(),
            1 => format!("not faithful (kernel dim 1, {} collapsed edges)", self.collapsed_edges.len()),
            d => format!("underdetermined (kernel dim {d})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RealizeOutcome {
    Faithful(Realization),
    Diagnosis(Diagnosis),
}

/// Solve the direction network; a one-dimensional kernel is normalized and
/// checked for faithfulness.
pub fn realize(g: &ColoredGraph, d: &DirectionAssignment) -> Result<RealizeOutcome> {
    let system = assemble_direction_system(g, d)?;
    let kernel = system.kernel();
    let solution = (kernel.len() == 1).then(|| Realization::from_vector(g.context, g.n, &kernel[0]).normalized());
    if let Some(real) = &solution {
        if real.is_faithful(g) {
            return Ok(RealizeOutcome::Faithful(real.clone()));
        }
    }
    let collapsed_edges = match (&solution, kernel.len()) {
        (Some(real), _) => real.collapsed_edges(g),
        (None, 0) => (0..g.m()).collect(),
        (None, _) => Vec::new(),
    };
    Ok(RealizeOutcome::Diagnosis(Diagnosis {
        kernel_dim: kernel.len(),
        collapsed_edges,
        circuit: sparsity::find_laman_circuit(g),
        solution,
    }))
}

/// Linearized length constraints at a realization, with collapsed edges flagged.
#[derive(Debug, Clone)]
pub struct RigiditySystem {
    pub matrix: Matrix,
    pub zero_rows: Vec<usize>,
}

/// Rows `<Φ(γ_ij) p_j - p_i, Φ'(γ_ij) q_j - q_i>` in unknowns `(q, u)`; the same
/// assembly as a direction network whose normals are the edge vectors.
pub fn rigidity_matrix(g: &ColoredGraph, real: &Realization) -> RigiditySystem {
    let normals: Vec<Vec2> = (0..g.m()).map(|i| real.edge_vector(g, i)).collect();
    let zero_rows = (0..g.m()).filter(|&i| is_zero2(&normals[i])).collect();
    RigiditySystem { matrix: assemble_with_normals(g, &normals), zero_rows }
}

/// Integer points and lattice vectors in `[-bound, bound]`, with a
/// nondegenerate lattice.
pub fn random_realization<R: Rng + ?Sized>(ctx: &GroupContext, n: usize, bound: i64, rng: &mut R) -> Realization {
    let points = (0..n).map(|_| vec2(rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound))).collect();
    let lattice = loop {
        let lattice: Vec<Vec2> = (0..ctx.lattice_params()).map(|_| random_nonzero(rng, bound)).collect();
        let second = if ctx.k() == 2 { lattice[1].clone() } else { mat_vec(&ctx.rotation(), &lattice[0]) };
        let det = &lattice[0][0] * &second[1] - &lattice[0][1] * &second[0];
        if !det.is_zero() {
            break lattice;
        }
    };
    Realization { context: *ctx, points, lattice }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankReport {
    pub rank: usize,
    pub samples: usize,
}

/// Largest rigidity-matrix rank over `samples` random integer realizations.
pub fn generic_rigidity_rank(g: &ColoredGraph, seed: u64, samples: usize) -> RankReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ceiling = g.m().min(unknown_count(&g.context, g.n));
    let mut best = 0;
    let mut used = 0;
    for _ in 0..samples.max(1) {
        used += 1;
        let real = random_realization(&g.context, g.n, 100, &mut rng);
        best = best.max(rigidity_matrix(g, &real).matrix.rank());
        if best == ceiling {
            break;
        }
    }
    RankReport { rank: best, samples: used }
}

/// `rep(Λ(Γ_k)) - rep(G) + Σ T(G_i)`: a lower bound on the kernel dimension of
/// every direction network on `g`.
pub fn collapsed_dim_bound(g: &ColoredGraph) -> i64 {
    let inv = graph_invariants(g);
    g.context.full_rep() - inv.rep + inv.t_sum()
}

/// `2n + rep(Λ(Γ_k)) - 1`: the edge count of a minimally rigid graph.
pub fn laman_edge_count(ctx: &GroupContext, n: usize) -> usize {
    2 * n + ctx.full_rep() as usize - 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{identity2, Mat2};

    fn ctx(k: i64) -> GroupContext {
        GroupContext::new(k).unwrap()
    }

    fn transpose(m: &Mat2) -> Mat2 {
        [[m[0][0].clone(), m[1][0].clone()], [m[0][1].clone(), m[1][1].clone()]]
    }

    #[test]
    fn translation_part_examples() {
        for c in GroupContext::all() {
            let lattice: Vec<Vec2> = (0..c.lattice_params()).map(|i| vec2(3 + i as i64, -1)).collect();
            assert_eq!(translation_part(&c, &c.t1(), &lattice), lattice[0]);
            let zero: Vec<Vec2> = vec![vec2(0, 0); c.lattice_params()];
            assert_eq!(translation_part(&c, &c.element([2, -1], 1), &zero), vec2(0, 0));
        }
        let k4 = ctx(4);
        assert_eq!(translation_part(&k4, &k4.t2(), &[vec2(1, 0)]), vec2(0, 1));
    }

    #[test]
    fn representation_is_a_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for c in GroupContext::all() {
            let real = random_realization(&c, 1, 10, &mut rng);
            let p = vec2(rng.gen_range(-9..=9), rng.gen_range(-9..=9));
            for _ in 0..20 {
                let mut pick = || c.element([rng.gen_range(-3..=3), rng.gen_range(-3..=3)], rng.gen_range(0..c.k() as i64));
                let (a, b) = (pick(), pick());
                assert_eq!(real.apply(&c.compose(&a, &b), &p), real.apply(&a, &real.apply(&b, &p)));
            }
        }
    }

    #[test]
    fn rotation_loop_row() {
        for c in GroupContext::all() {
            let g = ColoredGraph::from_edges(c, 1, [(0, 0, c.r())]);
            let m = assemble_direction_system(&g, &vec![vec2(1, 0)]).unwrap();
            let r = c.rotation();
            let mut rt_minus_i = transpose(&r);
            let id = identity2();
            for i in 0..2 {
                for j in 0..2 {
                    rt_minus_i[i][j] = &rt_minus_i[i][j] - &id[i][j];
                }
            }
            let expected = mat_vec(&rt_minus_i, &vec2(0, 1));
            assert_eq!(&m.row(0)[..2], &expected[..]);
            assert!(m.row(0)[2..].iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn translation_loop_row() {
        let c = ctx(3);
        let g = ColoredGraph::from_edges(c, 1, [(0, 0, c.t1())]);
        let m = assemble_direction_system(&g, &vec![vec2(1, 0)]).unwrap();
        assert_eq!(m.row(0), &[Scalar::zero(), Scalar::zero(), Scalar::zero(), Scalar::one()]);
    }

    #[test]
    fn empty_system() {
        for c in GroupContext::all() {
            let g = ColoredGraph::new(c, 2);
            let m = assemble_direction_system(&g, &vec![]).unwrap();
            assert_eq!((m.rows(), m.cols()), (0, unknown_count(&c, 2)));
            assert_eq!(m.kernel().len(), unknown_count(&c, 2));
        }
    }

    #[test]
    fn zero_direction_rejected() {
        let c = ctx(2);
        let g = ColoredGraph::from_edges(c, 1, [(0, 0, c.r()), (0, 0, c.t1())]);
        assert_eq!(assemble_direction_system(&g, &vec![vec2(1, 1), vec2(0, 0)]), Err(Error::ZeroDirection(1)));
    }

    #[test]
    fn random_directions_contract() {
        let c = ctx(6);
        let g = ColoredGraph::from_edges(c, 2, (0..6).map(|_| (0, 1, c.r())));
        let a = random_directions(&g, 9, 100).unwrap();
        assert_eq!(a, random_directions(&g, 9, 100).unwrap());
        assert_ne!(a, random_directions(&g, 10, 100).unwrap());
        assert!(a.iter().all(|d| !is_zero2(d)));
        assert!(random_directions(&g, 9, 7).is_err());
    }

    #[test]
    fn collapsed_bound_examples() {
        let k3 = ctx(3);
        assert_eq!(collapsed_dim_bound(&ColoredGraph::new(k3, 3)), 2 + 6);
        let gamma22 = ColoredGraph::from_edges(k3, 1, [(0, 0, k3.r()), (0, 0, k3.element([1, 0], 1)), (0, 0, k3.t1()), (0, 0, k3.t2())]);
        assert_eq!(collapsed_dim_bound(&gamma22), 0);
        let k2 = ctx(2);
        assert_eq!(collapsed_dim_bound(&ColoredGraph::from_edges(k2, 1, [(0, 0, k2.t1())])), 4);
    }

    #[test]
    fn rigidity_matrix_examples() {
        let c = ctx(4);
        let g = ColoredGraph::from_edges(c, 2, [(0, 1, GroupElement::IDENTITY), (0, 1, c.r())]);
        let zero = Realization::zero(c, 2);
        let sys = rigidity_matrix(&g, &zero);
        assert_eq!(sys.matrix.rank(), 0);
        assert_eq!(sys.zero_rows, vec![0, 1]);

        let single = ColoredGraph::from_edges(c, 2, [(0, 1, GroupElement::IDENTITY)]);
        let mut real = Realization::zero(c, 2);
        real.points[1] = vec2(2, 1);
        let sys = rigidity_matrix(&single, &real);
        assert_eq!(sys.matrix.rows(), 1);
        assert_eq!(sys.matrix.rank(), 1);
        assert!(sys.zero_rows.is_empty());
    }

    #[test]
    fn realization_text() {
        let c = ctx(3);
        let mut real = Realization::zero(c, 1);
        real.points[0] = [Scalar::from_ratio(1, 2), Scalar::from_int(1) + Scalar::sqrt3_ratio(-3, 2)];
        real.lattice[0] = vec2(1, 0);
        assert_eq!(real.to_string(), "point 0 1/2 1-3/2*sqrt3\nlattice v1 1 0\n");
    }
}
