//! Colored (gain) graphs over `Γ_k`, spanning forests, and the ρ-map.

mod format;
mod lift;

pub use format::{parse_graph, serialize_graph};
pub use lift::{lift_patch, LiftPatch, PlacedVertex, Segment};

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{GroupContext, GroupElement, IndexedSubset, SubgroupDescriptor, TranslationLattice};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
    pub color: GroupElement,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }
}

/// A finite directed multigraph on vertices `0..n` with a `Γ_k` color per edge.
/// Edge identity is the position in `edges`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoredGraph {
    pub context: GroupContext,
    pub n: usize,
    pub edges: Vec<Edge>,
}

impl ColoredGraph {
    pub fn new(context: GroupContext, n: usize) -> Self {
        ColoredGraph { context, n, edges: Vec::new() }
    }

    pub fn from_edges(context: GroupContext, n: usize, edges: impl IntoIterator<Item = (usize, usize, GroupElement)>) -> Self {
        let mut g = ColoredGraph::new(context, n);
        for (tail, head, color) in edges {
            g.add_edge(tail, head, color);
        }
        g
    }

    pub fn add_edge(&mut self, tail: usize, head: usize, color: GroupElement) -> usize {
        assert!(tail < self.n && head < self.n, "vertex out of range");
        assert!(self.context.is_valid(&color), "color out of range");
        self.edges.push(Edge { tail, head, color });
        self.edges.len() - 1
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn k(&self) -> u8 {
        self.context.k()
    }

    /// The graph on the same vertices keeping only the listed edges, in the given order.
    pub fn subgraph(&self, edges: &[usize]) -> ColoredGraph {
        ColoredGraph { context: self.context, n: self.n, edges: edges.iter().map(|&i| self.edges[i]).collect() }
    }

    /// Append a parallel copy of edge `i`.
    pub fn with_doubled_edge(&self, i: usize) -> ColoredGraph {
        let mut g = self.clone();
        g.edges.push(self.edges[i]);
        g
    }

    pub fn without_edge(&self, i: usize) -> ColoredGraph {
        let mut g = self.clone();
        g.edges.remove(i);
        g
    }

    /// Incident edge indices per vertex, in index order; loops appear once.
    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for (i, e) in self.edges.iter().enumerate() {
            adj[e.tail].push(i);
            if !e.is_loop() {
                adj[e.head].push(i);
            }
        }
        adj
    }

    /// Connected components, each sorted, ordered by lowest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mg = MarkedGraph::bfs(self.clone());
        mg.component_vertices()
    }

    /// Vertices incident to at least one edge.
    pub fn touched_vertices(&self) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        for e in &self.edges {
            seen[e.tail] = true;
            seen[e.head] = true;
        }
        (0..self.n).filter(|&v| seen[v]).collect()
    }

    /// Drop untouched vertices and renumber the rest in order.
    pub fn compact(&self) -> ColoredGraph {
        let touched = self.touched_vertices();
        let mut index = vec![usize::MAX; self.n];
        for (new, &old) in touched.iter().enumerate() {
            index[old] = new;
        }
        ColoredGraph {
            context: self.context,
            n: touched.len(),
            edges: self.edges.iter().map(|e| Edge { tail: index[e.tail], head: index[e.head], color: e.color }).collect(),
        }
    }
}

/// A colored graph with one base vertex per component and a spanning forest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedGraph {
    pub graph: ColoredGraph,
    /// Component index per vertex.
    pub component_of: Vec<usize>,
    /// Base vertex per component.
    pub bases: Vec<usize>,
    /// Forest edge indices, sorted.
    pub forest: Vec<usize>,
    /// `ρ` of the forest path from the base to each vertex.
    pub eta: Vec<GroupElement>,
    in_forest: Vec<bool>,
}

impl MarkedGraph {
    /// Deterministic marking: BFS from the lowest unvisited vertex, scanning
    /// incident edges in index order; bases are the lowest vertex of each component.
    pub fn bfs(graph: ColoredGraph) -> MarkedGraph {
        let adj = graph.adjacency();
        let n = graph.n;
        let mut component_of = vec![usize::MAX; n];
        let mut bases = Vec::new();
        let mut forest = Vec::new();
        for start in 0..n {
            if component_of[start] != usize::MAX {
                continue;
            }
            let c = bases.len();
            bases.push(start);
            component_of[start] = c;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &i in &adj[u] {
                    let e = graph.edges[i];
                    let w = if e.tail == u { e.head } else { e.tail };
                    if component_of[w] == usize::MAX {
                        component_of[w] = c;
                        forest.push(i);
                        queue.push_back(w);
                    }
                }
            }
        }
        MarkedGraph::assemble(graph, component_of, bases, forest)
    }

    /// Random bases and a uniformly shuffled Kruskal forest.
    pub fn random<R: Rng + ?Sized>(graph: ColoredGraph, rng: &mut R) -> MarkedGraph {
        let n = graph.n;
        let mut order: Vec<usize> = (0..graph.m()).collect();
        order.shuffle(rng);
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut v: usize) -> usize {
            while parent[v] != v {
                parent[v] = parent[parent[v]];
                v = parent[v];
            }
            v
        }
        let mut forest = Vec::new();
        for i in order {
            let e = graph.edges[i];
            let (a, b) = (find(&mut parent, e.tail), find(&mut parent, e.head));
            if a != b {
                parent[a] = b;
                forest.push(i);
            }
        }
        let components = MarkedGraph::bfs(graph.clone()).component_vertices();
        let bases: Vec<usize> = components.iter().map(|c| *c.choose(rng).expect("nonempty component")).collect();
        MarkedGraph::with_marking(graph, bases, forest).expect("random marking is valid")
    }

    /// Validate and adopt a user-supplied marking.
    pub fn with_marking(graph: ColoredGraph, bases: Vec<usize>, forest: Vec<usize>) -> Result<MarkedGraph> {
        let reference = MarkedGraph::bfs(graph.clone());
        let components = reference.bases.len();
        if bases.len() != components {
            return Err(Error::InvalidMarking(format!("expected {components} base vertices, got {}", bases.len())));
        }
        let mut covered = vec![false; components];
        for &b in &bases {
            if b >= graph.n {
                return Err(Error::InvalidMarking(format!("base vertex {b} out of range")));
            }
            let c = reference.component_of[b];
            if covered[c] {
                return Err(Error::InvalidMarking(format!("two base vertices in the component of {b}")));
            }
            covered[c] = true;
        }
        let mut sorted = forest.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != forest.len() {
            return Err(Error::InvalidMarking("forest lists an edge twice".into()));
        }
        if sorted.len() != graph.n - components || sorted.iter().any(|&i| i >= graph.m()) {
            return Err(Error::InvalidMarking("forest has the wrong edge count".into()));
        }
        // n - c edges without a cycle span every component
        let mut parent: Vec<usize> = (0..graph.n).collect();
        fn find(parent: &mut [usize], mut v: usize) -> usize {
            while parent[v] != v {
                v = parent[v];
            }
            v
        }
        for &i in &sorted {
            let e = graph.edges[i];
            let (a, b) = (find(&mut parent, e.tail), find(&mut parent, e.head));
            if a == b {
                return Err(Error::InvalidMarking(format!("forest edge {i} closes a cycle")));
            }
            parent[a] = b;
        }
        // order components by the supplied bases' reference component
        let mut base_of = vec![0; components];
        for &b in &bases {
            base_of[reference.component_of[b]] = b;
        }
        Ok(MarkedGraph::assemble(graph, reference.component_of, base_of, sorted))
    }

    fn assemble(graph: ColoredGraph, component_of: Vec<usize>, bases: Vec<usize>, mut forest: Vec<usize>) -> MarkedGraph {
        forest.sort_unstable();
        let ctx = graph.context;
        let mut in_forest = vec![false; graph.m()];
        for &i in &forest {
            in_forest[i] = true;
        }
        let mut tree_adj = vec![Vec::new(); graph.n];
        for &i in &forest {
            let e = graph.edges[i];
            tree_adj[e.tail].push(i);
            tree_adj[e.head].push(i);
        }
        let mut eta = vec![GroupElement::IDENTITY; graph.n];
        let mut seen = vec![false; graph.n];
        for &b in &bases {
            seen[b] = true;
            let mut queue = VecDeque::from([b]);
            while let Some(u) = queue.pop_front() {
                for &i in &tree_adj[u] {
                    let e = graph.edges[i];
                    let (w, step) = if e.tail == u { (e.head, e.color) } else { (e.tail, ctx.invert(&e.color)) };
                    if !seen[w] {
                        seen[w] = true;
                        eta[w] = ctx.compose(&eta[u], &step);
                        queue.push_back(w);
                    }
                }
            }
        }
        MarkedGraph { graph, component_of, bases, forest, eta, in_forest }
    }

    pub fn component_count(&self) -> usize {
        self.bases.len()
    }

    pub fn component_vertices(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.bases.len()];
        for (v, &c) in self.component_of.iter().enumerate() {
            out[c].push(v);
        }
        out
    }

    pub fn is_forest_edge(&self, i: usize) -> bool {
        self.in_forest[i]
    }

    /// `ρ` of the fundamental closed path of a non-forest edge `i -> j`:
    /// `η_i γ η_j⁻¹`.
    pub fn rho_of_fundamental_path(&self, edge: usize) -> Result<GroupElement> {
        if self.in_forest[edge] {
            return Err(Error::TreeEdge);
        }
        let ctx = &self.graph.context;
        let e = self.graph.edges[edge];
        Ok(ctx.compose(&ctx.compose(&self.eta[e.tail], &e.color), &ctx.invert(&self.eta[e.head])))
    }

    /// `ρ` of an arbitrary closed walk from the base of its component, given as
    /// `(edge, forward)` steps.
    pub fn rho_of_walk(&self, steps: &[(usize, bool)]) -> GroupElement {
        let ctx = &self.graph.context;
        steps.iter().fold(GroupElement::IDENTITY, |acc, &(i, forward)| {
            let c = self.graph.edges[i].color;
            ctx.compose(&acc, &if forward { c } else { ctx.invert(&c) })
        })
    }

    /// `A(G, B, F)`: one element per non-forest edge, in the part of its component.
    pub fn indexed_subset(&self) -> IndexedSubset {
        let elements = (0..self.graph.m())
            .filter(|&i| !self.in_forest[i])
            .map(|i| (self.rho_of_fundamental_path(i).expect("non-forest"), self.component_of[self.graph.edges[i].tail]))
            .collect();
        IndexedSubset::new(self.component_count(), elements)
    }

    pub fn invariants(&self) -> GraphInvariants {
        let ctx = self.graph.context;
        let parts = self.indexed_subset().parts();
        let descriptors: Vec<SubgroupDescriptor> = parts.iter().map(|p| SubgroupDescriptor::classify(&ctx, p)).collect();
        let lattice = descriptors.iter().fold(TranslationLattice::trivial(), |acc, d| acc.join(&d.lattice));
        let rep = lattice.rep(&ctx);
        let t_list = descriptors.iter().map(|d| d.t_invariant()).collect();
        GraphInvariants { components: self.component_vertices(), descriptors, lattice, rep, t_list }
    }
}

/// Per-component subgroups and the global translation data of a colored graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphInvariants {
    pub components: Vec<Vec<usize>>,
    pub descriptors: Vec<SubgroupDescriptor>,
    pub lattice: TranslationLattice,
    pub rep: i64,
    pub t_list: Vec<i64>,
}

impl GraphInvariants {
    pub fn t_sum(&self) -> i64 {
        self.t_list.iter().sum()
    }

    pub fn teich(&self, ctx: &GroupContext) -> i64 {
        self.lattice.teich(ctx)
    }

    pub fn cent_sum(&self) -> i64 {
        self.descriptors.iter().map(|d| d.cent()).sum()
    }
}

pub fn graph_invariants(g: &ColoredGraph) -> GraphInvariants {
    MarkedGraph::bfs(g.clone()).invariants()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ctx(k: i64) -> GroupContext {
        GroupContext::new(k).unwrap()
    }

    #[test]
    fn edgeless_components() {
        let g = ColoredGraph::new(ctx(3), 3);
        let mg = MarkedGraph::bfs(g);
        assert_eq!(mg.component_count(), 3);
        assert!(mg.forest.is_empty());
        assert_eq!(mg.bases, vec![0, 1, 2]);
    }

    #[test]
    fn forest_follows_bfs_order() {
        let c = ctx(2);
        let e = GroupElement::IDENTITY;
        let path = ColoredGraph::from_edges(c, 3, [(0, 1, e), (1, 2, e)]);
        assert_eq!(MarkedGraph::bfs(path).forest, vec![0, 1]);
        let triangle = ColoredGraph::from_edges(c, 3, [(0, 1, e), (0, 2, e), (1, 2, e)]);
        let mg = MarkedGraph::bfs(triangle);
        assert_eq!(mg.forest, vec![0, 1]);
        assert_eq!(mg.component_count(), 1);
    }

    #[test]
    fn fundamental_path_examples() {
        let c = ctx(4);
        let g1 = c.element([1, 0], 1);
        let loop_graph = ColoredGraph::from_edges(c, 1, [(0, 0, g1)]);
        assert_eq!(MarkedGraph::bfs(loop_graph).rho_of_fundamental_path(0), Ok(g1));

        let g2 = c.element([0, 2], 3);
        let parallel = ColoredGraph::from_edges(c, 2, [(0, 1, g1), (0, 1, g2)]);
        let mg = MarkedGraph::bfs(parallel);
        assert_eq!(mg.rho_of_fundamental_path(1), Ok(c.compose(&g2, &c.invert(&g1))));
        assert_eq!(mg.rho_of_fundamental_path(0), Err(Error::TreeEdge));

        let e = GroupElement::IDENTITY;
        let plain = ColoredGraph::from_edges(c, 2, [(0, 1, e), (1, 0, e)]);
        assert_eq!(MarkedGraph::bfs(plain).rho_of_fundamental_path(1), Ok(e));
    }

    #[test]
    fn invariant_examples() {
        let k3 = ctx(3);
        let inv = graph_invariants(&ColoredGraph::from_edges(k3, 1, [(0, 0, k3.r())]));
        assert_eq!(inv.descriptors[0].class, crate::groups::SubgroupClass::CyclicRotation);
        assert_eq!((inv.t_list.clone(), inv.rep), (vec![0], 0));

        let k2 = ctx(2);
        let inv = graph_invariants(&ColoredGraph::from_edges(k2, 1, [(0, 0, k2.t1()), (0, 0, k2.t2())]));
        assert_eq!(inv.descriptors[0].class, crate::groups::SubgroupClass::TranslationOnly);
        assert_eq!(inv.lattice, TranslationLattice::Exact(crate::groups::Lattice::full()));
        assert_eq!((inv.t_list.clone(), inv.rep), (vec![2], 4));

        let e = GroupElement::IDENTITY;
        let tree = ColoredGraph::from_edges(k2, 3, [(0, 1, e), (2, 1, e)]);
        let inv = graph_invariants(&tree);
        assert_eq!(inv.descriptors[0].class, crate::groups::SubgroupClass::Trivial);
        assert_eq!((inv.t_list.clone(), inv.rep), (vec![2], 0));
    }

    #[test]
    fn custom_marking_is_validated() {
        let c = ctx(3);
        let e = GroupElement::IDENTITY;
        let triangle = ColoredGraph::from_edges(c, 3, [(0, 1, e), (0, 2, c.r()), (1, 2, c.t1())]);
        assert!(MarkedGraph::with_marking(triangle.clone(), vec![2], vec![1, 2]).is_ok());
        assert!(matches!(MarkedGraph::with_marking(triangle.clone(), vec![0, 1], vec![0, 1]), Err(Error::InvalidMarking(_))));
        assert!(matches!(MarkedGraph::with_marking(triangle.clone(), vec![0], vec![0]), Err(Error::InvalidMarking(_))));
        let doubled = ColoredGraph::from_edges(c, 2, [(0, 1, e), (0, 1, e)]);
        assert!(matches!(MarkedGraph::with_marking(doubled, vec![0], vec![0, 0]), Err(Error::InvalidMarking(_))));
    }

    #[test]
    fn random_marking_spans() {
        let c = ctx(6);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let g = ColoredGraph::from_edges(c, 4, [(0, 1, c.r()), (1, 2, c.t1()), (2, 0, c.t2()), (3, 3, c.r())]);
        for _ in 0..20 {
            let mg = MarkedGraph::random(g.clone(), &mut rng);
            assert_eq!(mg.forest.len(), 2);
            assert_eq!(mg.component_count(), 2);
        }
    }
}
