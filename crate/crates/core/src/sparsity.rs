//! Count functions, the Γ-(1,1)/Γ-(2,2)/Laman oracles and the matroid-union engine.
//!
//! For an edge set `F` with components `G_1..G_c` on `n` vertices:
//!
//! * `g(F) = n + rep(F)/2 - Σ T(G_i)/2`, the rank of the Γ-(1,1) matroid;
//! * `f = 2g` and `h = f - 1`;
//! * `h'(F) = 2n' + teich(F) - Σ cent(G_i)`, evaluated on the vertices that
//!   `F` touches (an isolated vertex would otherwise contribute `-1`).
//!
//! Isolated vertices have `T = 2` and contribute nothing to `g` or `f`.

use serde::Serialize;

use crate::colored_graph::{graph_invariants, ColoredGraph};
use crate::error::{Error, Result};
use crate::groups::{GroupContext, SubgroupClass};

/// Per-component part of a [`CountReport`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentCount {
    pub vertices: Vec<usize>,
    pub edges: usize,
    pub class: SubgroupClass,
    pub t: i64,
    pub cent: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub m: usize,
    pub f: i64,
    pub g: i64,
    pub h: i64,
    pub h_prime: i64,
    pub rep: i64,
    pub components: Vec<ComponentCount>,
}

/// Evaluate every count on the subgraph spanned by `edges`.
pub fn counts(graph: &ColoredGraph, edges: &[usize]) -> CountReport {
    let sub = graph.subgraph(edges);
    let inv = graph_invariants(&sub);
    let twice_g = 2 * graph.n as i64 + inv.rep - inv.t_sum();
    debug_assert_eq!(twice_g % 2, 0);
    let g = twice_g / 2;

    let touched = sub.compact();
    let touched_inv = graph_invariants(&touched);
    let h_prime = 2 * touched.n as i64 + touched_inv.teich(&graph.context) - touched_inv.cent_sum();

    let mut edge_count = vec![0usize; inv.components.len()];
    let mg_components: Vec<usize> = {
        let mut of = vec![0usize; graph.n];
        for (c, vs) in inv.components.iter().enumerate() {
            for &v in vs {
                of[v] = c;
            }
        }
        of
    };
    for e in &sub.edges {
        edge_count[mg_components[e.tail]] += 1;
    }
    let components = inv
        .components
        .iter()
        .zip(&inv.descriptors)
        .zip(edge_count)
        .filter(|((_, _), m)| *m > 0)
        .map(|((vs, d), m)| ComponentCount { vertices: vs.clone(), edges: m, class: d.class, t: d.t_invariant(), cent: d.cent() })
        .collect();
    CountReport { m: edges.len(), f: 2 * g, g, h: 2 * g - 1, h_prime, rep: inv.rep, components }
}

/// `g` of the subgraph spanned by `edges`.
pub fn g_value(graph: &ColoredGraph, edges: &[usize]) -> i64 {
    let inv = graph_invariants(&graph.subgraph(edges));
    (2 * graph.n as i64 + inv.rep - inv.t_sum()) / 2
}

pub fn f_value(graph: &ColoredGraph, edges: &[usize]) -> i64 {
    2 * g_value(graph, edges)
}

/// Independence in the Γ-(1,1) matroid: `|F| = g(F)`.
pub fn is_g11_independent(graph: &ColoredGraph, edges: &[usize]) -> bool {
    edges.len() as i64 == g_value(graph, edges)
}

fn all_edges(graph: &ColoredGraph) -> Vec<usize> {
    (0..graph.m()).collect()
}

/// Outcome of the two-copy matroid union on an edge set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum UnionCertificate {
    /// Two disjoint g-independent sets covering the input.
    Partition { x: Vec<usize>, y: Vec<usize> },
    /// An edge set with `|W| > f(W)`.
    Violation { w: Vec<usize> },
}

/// Greedy matroid partitioning into two copies of the Γ-(1,1) matroid.
#[derive(Debug, Clone)]
struct UnionEngine<'a> {
    graph: &'a ColoredGraph,
    /// Which copy each edge sits in, if any.
    assignment: Vec<Option<usize>>,
}

impl<'a> UnionEngine<'a> {
    fn new(graph: &'a ColoredGraph) -> Self {
        UnionEngine { graph, assignment: vec![None; graph.m()] }
    }

    fn members(&self, copy: usize) -> Vec<usize> {
        (0..self.assignment.len()).filter(|&i| self.assignment[i] == Some(copy)).collect()
    }

    fn independent_with(&self, set: &[usize], add: usize, remove: Option<usize>) -> bool {
        let mut edges: Vec<usize> = set.iter().copied().filter(|&e| Some(e) != remove).collect();
        edges.push(add);
        is_g11_independent(self.graph, &edges)
    }

    /// Insert edge `x` along a shortest augmenting path, or return the set of
    /// edges reachable in the exchange graph.
    fn augment(&mut self, x: usize) -> std::result::Result<(), Vec<usize>> {
        let m = self.assignment.len();
        let sets = [self.members(0), self.members(1)];
        let mut parent: Vec<Option<usize>> = vec![None; m];
        let mut visited = vec![false; m];
        visited[x] = true;
        let mut queue = std::collections::VecDeque::from([x]);
        let mut order = vec![x];
        while let Some(y) = queue.pop_front() {
            for copy in 0..2 {
                if self.assignment[y] == Some(copy) {
                    continue;
                }
                if self.independent_with(&sets[copy], y, None) {
                    self.apply_path(y, copy, &parent);
                    return Ok(());
                }
                for &z in &sets[copy] {
                    if !visited[z] && self.independent_with(&sets[copy], y, Some(z)) {
                        visited[z] = true;
                        parent[z] = Some(y);
                        queue.push_back(z);
                        order.push(z);
                    }
                }
            }
        }
        order.sort_unstable();
        Err(order)
    }

    /// `end` enters `copy`; each predecessor takes the place its successor leaves.
    fn apply_path(&mut self, end: usize, copy: usize, parent: &[Option<usize>]) {
        let mut current = end;
        let mut target = Some(copy);
        loop {
            let vacated = self.assignment[current];
            self.assignment[current] = target;
            match parent[current] {
                Some(previous) => {
                    target = vacated;
                    current = previous;
                }
                None => break,
            }
        }
        debug_assert!((0..2).all(|c| is_g11_independent(self.graph, &self.members(c))));
    }

    fn certificate(&self) -> UnionCertificate {
        UnionCertificate::Partition { x: self.members(0), y: self.members(1) }
    }
}

fn verified_violation(graph: &ColoredGraph, w: Vec<usize>) -> UnionCertificate {
    assert!(w.len() as i64 > f_value(graph, &w), "reachable set is not a violation: {w:?}");
    UnionCertificate::Violation { w }
}

/// Partition `edges` into two g-independent sets, or exhibit `W` with `|W| > f(W)`.
pub fn union_oracle(graph: &ColoredGraph, edges: &[usize]) -> UnionCertificate {
    let sub = graph.subgraph(edges);
    let mut engine = UnionEngine::new(&sub);
    for x in 0..sub.m() {
        if let Err(w) = engine.augment(x) {
            return verified_violation(graph, w.into_iter().map(|i| edges[i]).collect());
        }
    }
    match engine.certificate() {
        UnionCertificate::Partition { x, y } => UnionCertificate::Partition {
            x: x.into_iter().map(|i| edges[i]).collect(),
            y: y.into_iter().map(|i| edges[i]).collect(),
        },
        violation => violation,
    }
}

pub fn is_gamma22_sparse(graph: &ColoredGraph) -> bool {
    matches!(union_oracle(graph, &all_edges(graph)), UnionCertificate::Partition { .. })
}

/// `2n + rep(Λ(Γ_k))`.
pub fn gamma22_edge_count(ctx: &GroupContext, n: usize) -> usize {
    2 * n + ctx.full_rep() as usize
}

pub fn is_gamma22(graph: &ColoredGraph) -> bool {
    graph.m() == gamma22_edge_count(&graph.context, graph.n) && is_gamma22_sparse(graph)
}

/// A set `W` with `|W| > h(W)` found by doubling, or `None` when the graph is
/// Laman-sparse. Each doubling starts from the partition of the undoubled graph.
fn laman_violation(graph: &ColoredGraph) -> Option<Vec<usize>> {
    let mut base = UnionEngine::new(graph);
    for x in 0..graph.m() {
        if let Err(w) = base.augment(x) {
            // |W| > f(W) > h(W)
            return Some(w);
        }
    }
    for e in 0..graph.m() {
        let doubled = graph.with_doubled_edge(e);
        let copy = graph.m();
        let mut engine = UnionEngine { graph: &doubled, assignment: base.assignment.clone() };
        engine.assignment.push(None);
        if let Err(w) = engine.augment(copy) {
            // The copy has identity fundamental path, so dropping it keeps f
            // and leaves |W| - 1 >= f(W) > h(W).
            debug_assert!(w.contains(&e));
            return Some(w.into_iter().filter(|&i| i != copy).collect());
        }
    }
    None
}

/// Every doubled graph `G + e` is Γ-(2,2)-sparse; equivalently `m' <= h` on every nonempty subgraph.
pub fn is_laman_sparse(graph: &ColoredGraph) -> bool {
    laman_violation(graph).is_none()
}

pub fn is_laman(graph: &ColoredGraph) -> bool {
    graph.m() == crate::realization::laman_edge_count(&graph.context, graph.n) && is_laman_sparse(graph)
}

/// Restart-free variant used to cross-check the warm start.
pub fn is_laman_sparse_cold(graph: &ColoredGraph) -> bool {
    (0..graph.m()).all(|e| is_gamma22_sparse(&graph.with_doubled_edge(e)))
}

/// An edge-minimal set that is not Laman-sparse, if any.
pub fn find_laman_circuit(graph: &ColoredGraph) -> Option<Vec<usize>> {
    let mut circuit = laman_violation(graph)?;
    let mut i = 0;
    while i < circuit.len() {
        let mut trial = circuit.clone();
        trial.remove(i);
        if !is_laman_sparse(&graph.subgraph(&trial)) {
            circuit = trial;
        } else {
            i += 1;
        }
    }
    Some(circuit)
}

/// Split a Γ-(2,2) graph into two spanning Γ-(1,1) graphs.
pub fn decompose11(graph: &ColoredGraph) -> Result<(Vec<usize>, Vec<usize>)> {
    if graph.m() != gamma22_edge_count(&graph.context, graph.n) {
        return Err(Error::NotABasis);
    }
    match union_oracle(graph, &all_edges(graph)) {
        UnionCertificate::Partition { x, y } => {
            for part in [&x, &y] {
                assert!(is_gamma11_by_counts(graph, part), "part fails the count check: {part:?}");
                assert!(is_gamma11_structural(graph, part), "part fails the structural check: {part:?}");
            }
            Ok((x, y))
        }
        UnionCertificate::Violation { .. } => Err(Error::NotABasis),
    }
}

/// g-independent with `n + rep(Λ(Γ_k))/2` edges.
pub fn is_gamma11_by_counts(graph: &ColoredGraph, edges: &[usize]) -> bool {
    edges.len() as i64 == graph.n as i64 + graph.context.full_rep() / 2 && is_g11_independent(graph, edges)
}

/// A map-graph plus `rep(Λ(Γ_k))/2` edges, every component's ρ-image has a
/// rotation, and `rep(G) = rep(Λ(Γ_k))`.
pub fn is_gamma11_structural(graph: &ColoredGraph, edges: &[usize]) -> bool {
    let full = graph.context.full_rep();
    if edges.len() as i64 != graph.n as i64 + full / 2 {
        return false;
    }
    let inv = graph_invariants(&graph.subgraph(edges));
    inv.descriptors.iter().all(|d| d.has_rotation()) && inv.rep == full
}

/// Rank in the generalized cone-(1,1) matroid: `n' - Σ T(G_i)/2` with `T`
/// taken on colors reduced modulo `Λ(Γ_k)`.
pub fn gen_cone11_rank(graph: &ColoredGraph, edges: &[usize]) -> i64 {
    let inv = graph_invariants(&graph.subgraph(edges));
    inv.components
        .iter()
        .zip(&inv.descriptors)
        .map(|(vs, d)| vs.len() as i64 - if d.has_rotation() { 0 } else { 1 })
        .sum()
}

/// A map-graph whose cycle in every component has a rotation as ρ-image.
pub fn is_gen_cone11(graph: &ColoredGraph) -> bool {
    graph.m() == graph.n && gen_cone11_rank(graph, &all_edges(graph)) == graph.n as i64
}

/// A spanning generalized cone-(1,1) subgraph of `edges`, found greedily.
pub fn spanning_gen_cone11(graph: &ColoredGraph, edges: &[usize]) -> Option<Vec<usize>> {
    let mut basis: Vec<usize> = Vec::new();
    for &e in edges {
        basis.push(e);
        if gen_cone11_rank(graph, &basis) < basis.len() as i64 {
            basis.pop();
        }
    }
    is_gen_cone11(&graph.subgraph(&basis)).then_some(basis)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountFn {
    F,
    G,
    H,
    HPrime,
}

impl CountFn {
    pub fn eval(self, graph: &ColoredGraph, edges: &[usize]) -> i64 {
        match self {
            CountFn::F => f_value(graph, edges),
            CountFn::G => g_value(graph, edges),
            CountFn::H => f_value(graph, edges) - 1,
            CountFn::HPrime => counts(graph, edges).h_prime,
        }
    }
}

pub const BRUTE_FORCE_LIMIT: usize = 20;

/// Check `m' <= count` (or `<` when `strict`) on every nonempty edge subset.
pub fn brute_force_sparse(graph: &ColoredGraph, count: CountFn, strict: bool) -> Result<bool> {
    let m = graph.m();
    if m > BRUTE_FORCE_LIMIT {
        return Err(Error::TooManyEdges(m));
    }
    let mut edges = Vec::with_capacity(m);
    for mask in 1u32..(1u32 << m) {
        edges.clear();
        edges.extend((0..m).filter(|&i| mask >> i & 1 == 1));
        let value = count.eval(graph, &edges);
        let size = edges.len() as i64;
        if size > value || (strict && size == value) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Laman-sparsity decided by brute force on every doubled graph `G + e`.
pub fn brute_force_laman_by_doubling(graph: &ColoredGraph) -> Result<bool> {
    if graph.m() + 1 > BRUTE_FORCE_LIMIT {
        return Err(Error::TooManyEdges(graph.m() + 1));
    }
    for e in 0..graph.m() {
        if !brute_force_sparse(&graph.with_doubled_edge(e), CountFn::F, false)? {
            return Ok(false);
        }
    }
    Ok(true)
}
