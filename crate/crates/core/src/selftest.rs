//! Randomized cross-checks between the combinatorial oracles, brute force and
//! exact rank computations. Each suite is deterministic for a given seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::colored_graph::{graph_invariants, parse_graph, serialize_graph, ColoredGraph, MarkedGraph};
use crate::groups::{GroupContext, GroupElement, IndexedSubset, SubgroupClass, SubgroupDescriptor, SubsetTransform};
use crate::random::{biased_color, biased_graph, random_graph, random_indexed_subset, random_independent_subset};
use crate::realization::{
    assemble_direction_system, collapsed_dim_bound, generic_rigidity_rank, laman_edge_count, random_directions, realize, RealizeOutcome,
};
use crate::sparsity::{
    brute_force_laman_by_doubling, brute_force_sparse, decompose11, gamma22_edge_count, is_g11_independent, is_gamma11_by_counts,
    is_gamma11_structural, is_gamma22, is_laman, is_laman_sparse, spanning_gen_cone11, union_oracle, CountFn,
    UnionCertificate,
};

const KEPT_FAILURES: usize = 5;

#[derive(Debug, Clone, Serialize)]
pub struct SuiteOutcome {
    pub name: String,
    pub cases: usize,
    pub failure_count: usize,
    /// The first few failures, spelled out.
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

impl SuiteOutcome {
    fn new(name: impl Into<String>) -> Self {
        SuiteOutcome { name: name.into(), cases: 0, failure_count: 0, failures: Vec::new(), notes: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failure_count += 1;
            if self.failures.len() < KEPT_FAILURES {
                self.failures.push(describe());
            }
        }
    }

    fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// One line: `PASS name (cases)` or `FAIL name (failures/cases)`.
    pub fn line(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let mut line = format!("{status} {} ({} failures / {} cases)", self.name, self.failure_count, self.cases);
        if !self.notes.is_empty() {
            line.push_str(&format!(" [{}]", self.notes.join("; ")));
        }
        line
    }
}

fn rng_for(seed: u64, ctx: &GroupContext, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (ctx.k() as u64) << 32 ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

fn one_line(g: &ColoredGraph) -> String {
    serialize_graph(g).trim_end().replace('\n', " | ")
}

/// Non-negativity, monotonicity, unit increments and local submodularity of `g1`.
pub fn matroid_axioms(per_k: usize, seed: u64) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("group matroid rank axioms");
    for ctx in GroupContext::all() {
        let mut rng = rng_for(seed, &ctx, 1);
        for _ in 0..per_k {
            let n = rng.gen_range(1..=4);
            let b = random_indexed_subset(&ctx, n, 8, 2, &mut rng);
            let cut = rng.gen_range(0..=b.len());
            let a = IndexedSubset::new(n, b.elements[..cut].to_vec());
            let x = (biased_color(&ctx, 2, &mut rng), rng.gen_range(0..n));
            let (ga, gb) = (a.g1(&ctx), b.g1(&ctx));
            let step_a = a.with(x.0, x.1).g1(&ctx) - ga;
            let step_b = b.with(x.0, x.1).g1(&ctx) - gb;
            let ok = ga >= 0
                && ga <= gb
                && ga <= a.len() as i64
                && (0..=1).contains(&step_a)
                && (0..=1).contains(&step_b)
                && step_a >= step_b;
            out.check(ok, || format!("k={} A={:?} B={:?} x={:?}", ctx.k(), a.elements, b.elements, x));
        }
    }
    out
}

fn random_generators<R: Rng + ?Sized>(ctx: &GroupContext, rng: &mut R) -> Vec<GroupElement> {
    let count = rng.gen_range(0..=3);
    (0..count).map(|_| biased_color(ctx, 2, rng)).collect()
}

/// Adding `γ` raises `rep(Λ) - T` by exactly `2·[γ ∉ cl(Γ')]`.
pub fn closure_dichotomy(per_k: usize, seed: u64) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("closure dichotomy for rep - T");
    for ctx in GroupContext::all() {
        let mut rng = rng_for(seed, &ctx, 2);
        for _ in 0..per_k {
            let gens = random_generators(&ctx, &mut rng);
            let gamma = biased_color(&ctx, 2, &mut rng);
            let before = SubgroupDescriptor::classify(&ctx, &gens);
            let after = before.with_generator(gamma);
            let delta = (after.rep() - after.t_invariant()) - (before.rep() - before.t_invariant());
            let expected = if before.in_closure(&gamma) { 0 } else { 2 };
            out.check(delta == expected, || format!("k={} gens={:?} γ={} delta={} expected={}", ctx.k(), gens, gamma, delta, expected));
        }
    }
    out
}

/// Edge counts near the Γ-(2,2) and Laman thresholds, or anything up to 12.
fn suite_graph<R: Rng + ?Sized>(ctx: &GroupContext, rng: &mut R) -> ColoredGraph {
    let n = rng.gen_range(1..=4);
    let tight = gamma22_edge_count(ctx, n);
    let m = match rng.gen_range(0..3) {
        0 => tight,
        1 => tight - 1,
        _ => rng.gen_range(1..=(tight + 1).min(12)),
    }
    .min(12);
    biased_graph(ctx, n, m, 2, rng)
}

/// Union oracle against brute force for `f`, and the warm-started Laman
/// check against brute force on every doubled graph. Returns the Γ-(2,2)
/// graphs encountered.
pub fn oracle_equivalence(per_k: usize, seed: u64) -> (SuiteOutcome, Vec<ColoredGraph>) {
    let mut out = SuiteOutcome::new("sparsity oracles vs brute force");
    let mut bases = Vec::new();
    let (mut sparse, mut laman_sparse) = (0, 0);
    for ctx in GroupContext::all() {
        let mut rng = rng_for(seed, &ctx, 3);
        for _ in 0..per_k {
            let g = suite_graph(&ctx, &mut rng);
            let all: Vec<usize> = (0..g.m()).collect();
            let certificate = union_oracle(&g, &all);
            let sound = match &certificate {
                UnionCertificate::Partition { x, y } => {
                    is_g11_independent(&g, x) && is_g11_independent(&g, y) && x.len() + y.len() == g.m()
                }
                UnionCertificate::Violation { .. } => true,
            };
            let oracle22 = matches!(certificate, UnionCertificate::Partition { .. });
            let brute22 = brute_force_sparse(&g, CountFn::F, false).expect("small graph");
            let oracle_laman = is_laman_sparse(&g);
            let brute_laman = brute_force_laman_by_doubling(&g).expect("small graph");
            sparse += oracle22 as usize;
            laman_sparse += oracle_laman as usize;
            out.check(sound && oracle22 == brute22 && oracle_laman == brute_laman, || {
                format!("{}: union {oracle22} brute {brute22}; laman {oracle_laman} brute {brute_laman}; sound {sound}", one_line(&g))
            });
            if is_gamma22(&g) {
                bases.push(g);
            }
        }
    }
    out.note(format!("{sparse} (2,2)-sparse, {laman_sparse} Laman-sparse, {} bases", bases.len()));
    (out, bases)
}

/// Random graphs with exactly `2n + rep(Λ(Γ_k)) - 1` edges.
pub fn laman_count_graphs(per_k: usize, seed: u64) -> Vec<ColoredGraph> {
    let mut graphs = Vec::new();
    for ctx in GroupContext::all() {
        let mut rng = rng_for(seed, &ctx, 4);
        for _ in 0..per_k {
            let n = rng.gen_range(1..=4);
            graphs.push(biased_graph(&ctx, n, laman_edge_count(&ctx, n), 2, &mut rng));
        }
    }
    graphs
}

const RESEEDS: u64 = 3;

fn direction_seed(seed: u64, case: usize, attempt: u64) -> u64 {
    seed.wrapping_mul(1_000_003).wrapping_add(case as u64 * 17 + attempt)
}

/// Which reading of the direction-network criterion to test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DirectionReading {
    /// The direction system has rank `m`.
    FullRank,
    /// The direction system has rank `m` and its kernel vector is faithful.
    Faithful,
}

/// Laman versus generic direction networks, with reseeds on shortfall.
pub fn direction_criterion(graphs: &[ColoredGraph], seed: u64, reading: DirectionReading) -> SuiteOutcome {
    let name = match reading {
        DirectionReading::FullRank => "direction rank = m iff Laman",
        DirectionReading::Faithful => "faithful direction realization iff Laman",
    };
    let mut out = SuiteOutcome::new(name);
    let mut laman_count = 0;
    let mut full_rank_not_laman = 0;
    for (case, g) in graphs.iter().enumerate() {
        let laman = is_laman(g);
        laman_count += laman as usize;
        let mut predicate = false;
        let mut full_rank_seen = false;
        for attempt in 0..=RESEEDS {
            let d = random_directions(g, direction_seed(seed, case, attempt), 100).expect("bound ok");
            let system = assemble_direction_system(g, &d).expect("nonzero directions");
            let full_rank = system.rank() == g.m();
            full_rank_seen |= full_rank;
            predicate = match reading {
                DirectionReading::FullRank => full_rank,
                DirectionReading::Faithful => full_rank && matches!(realize(g, &d), Ok(RealizeOutcome::Faithful(_))),
            };
            if predicate {
                break;
            }
        }
        if full_rank_seen && !laman {
            full_rank_not_laman += 1;
        }
        out.check(predicate == laman, || format!("{}: laman {laman}, predicate {predicate}", one_line(g)));
    }
    out.note(format!("{laman_count} Laman of {}", graphs.len()));
    if reading == DirectionReading::FullRank {
        out.note(format!("{full_rank_not_laman} non-Laman graphs reach rank m"));
    }
    out
}

/// Minimal rigidity versus generic infinitesimal rigidity rank.
pub fn rigidity_criterion(graphs: &[ColoredGraph], seed: u64, samples: usize) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("rigidity rank = m iff Laman");
    for (case, g) in graphs.iter().enumerate() {
        let laman = is_laman(g);
        let report = generic_rigidity_rank(g, direction_seed(seed, case, 0), samples);
        let rigid = report.rank == g.m() && g.m() == laman_edge_count(&g.context, g.n);
        out.check(rigid == laman, || format!("{}: laman {laman}, rank {} of {}", one_line(g), report.rank, g.m()));
    }
    out
}

/// Generic direction networks on Γ-(2,2) graphs collapse completely.
pub fn collapse(graphs: &[ColoredGraph], seed: u64) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("Γ-(2,2) direction networks collapse");
    for (case, g) in graphs.iter().enumerate() {
        let mut dims = Vec::new();
        for attempt in 0..=RESEEDS {
            let d = random_directions(g, direction_seed(seed, case, attempt), 100).expect("bound ok");
            let dim = assemble_direction_system(g, &d).expect("nonzero").kernel().len();
            dims.push(dim);
            if dim == 0 {
                break;
            }
        }
        out.check(dims.last() == Some(&0), || format!("{}: kernel dims {dims:?}", one_line(g)));
    }
    out
}

/// Kernel dimension at least `rep(Λ(Γ_k)) - rep(G) + Σ T(G_i)`.
pub fn collapsed_dimensions(per_k: usize, seed: u64) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("collapsed-dimension lower bound");
    for ctx in GroupContext::all() {
        let mut rng = rng_for(seed, &ctx, 7);
        for case in 0..per_k {
            let g = suite_graph(&ctx, &mut rng);
            let d = random_directions(&g, direction_seed(seed, case, ctx.k() as u64), 100).expect("bound ok");
            let dim = assemble_direction_system(&g, &d).expect("nonzero").kernel().len() as i64;
            let bound = collapsed_dim_bound(&g);
            out.check(dim >= bound, || format!("{}: kernel {dim} < bound {bound}", one_line(&g)));
        }
    }
    out
}

/// Both Γ-(1,1) checks on each part, plus a spanning generalized cone-(1,1) subgraph.
pub fn decomposition_validity(graphs: &[ColoredGraph]) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("Γ-(1,1) decompositions");
    for g in graphs {
        let verdict = match decompose11(g) {
            Ok((x, y)) => [&x, &y].iter().all(|part| {
                is_gamma11_by_counts(g, part) && is_gamma11_structural(g, part) && spanning_gen_cone11(g, part).is_some()
            }),
            Err(_) => false,
        };
        out.check(verdict, || format!("{}: decomposition invalid", one_line(g)));
    }
    out
}

/// Doubled copies of every Laman graph in `graphs`, one doubling each.
pub fn doubled_laman(graphs: &[ColoredGraph]) -> Vec<ColoredGraph> {
    graphs.iter().filter(|g| is_laman(g)).map(|g| g.with_doubled_edge(0)).collect()
}

/// The Γ_3 one-vertex example and its Γ-(2,2) extension.
pub fn worked_example(seed: u64) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("Γ_3 one-vertex example");
    let ctx = GroupContext::new(3).expect("k = 3");
    let laman = ColoredGraph::from_edges(ctx, 1, [(0, 0, ctx.r()), (0, 0, ctx.t1()), (0, 0, ctx.element([1, 0], 1))]);
    out.check(is_laman(&laman), || "not Laman".into());
    out.check(brute_force_sparse(&laman, CountFn::H, false) == Ok(true), || "brute force disagrees".into());
    let d = random_directions(&laman, seed, 100).expect("bound ok");
    let kernel = assemble_direction_system(&laman, &d).expect("nonzero").kernel().len();
    out.check(kernel == 1, || format!("kernel dim {kernel}"));
    out.check(matches!(realize(&laman, &d), Ok(RealizeOutcome::Faithful(_))), || "realization not faithful".into());

    let mut extended = laman.clone();
    extended.add_edge(0, 0, ctx.t2());
    out.check(is_gamma22(&extended), || "extension is not Γ-(2,2)".into());
    let d = random_directions(&extended, seed, 100).expect("bound ok");
    let kernel = assemble_direction_system(&extended, &d).expect("nonzero").kernel().len();
    out.check(kernel == 0, || format!("extension kernel dim {kernel}"));
    out
}

/// Counts and invariants agree between the BFS marking and random markings.
pub fn rebase_invariance(per_k: usize, seed: u64) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("invariance under base/forest rechoice");
    for ctx in GroupContext::all() {
        let mut rng = rng_for(seed, &ctx, 10);
        for _ in 0..per_k {
            let g = suite_graph(&ctx, &mut rng);
            let reference = MarkedGraph::bfs(g.clone());
            let base = reference.invariants();
            let fingerprint = |mg: &MarkedGraph| {
                let inv = mg.invariants();
                let a = mg.indexed_subset();
                let classes: Vec<SubgroupClass> = inv.descriptors.iter().map(|d| d.class).collect();
                let lattice = if ctx.k() == 2 { Some(inv.lattice.clone()) } else { None };
                let g_via_matroid = g.n as i64 - mg.component_count() as i64 + a.g1(&ctx);
                (inv.rep, inv.t_list.clone(), inv.cent_sum(), inv.teich(&ctx), classes, lattice, g_via_matroid)
            };
            let expected = fingerprint(&reference);
            let f = 2 * g.n as i64 + base.rep - base.t_sum();
            let consistent = expected.6 * 2 == f;
            for _ in 0..3 {
                let marked = MarkedGraph::random(g.clone(), &mut rng);
                let got = fingerprint(&marked);
                out.check(consistent && got == expected, || format!("{}: {:?} vs {:?}", one_line(&g), got, expected));
            }
        }
    }
    out
}

/// Conjugation and separation keep independence; fusing a tight set gives a spanning set.
pub fn matroid_transforms(per_k: usize, seed: u64) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("conjugate/separate/fuse");
    let mut tight_seen = 0;
    for ctx in GroupContext::all() {
        let mut rng = rng_for(seed, &ctx, 11);
        for _ in 0..per_k {
            let n = rng.gen_range(2..=4);
            let a = random_independent_subset(&ctx, n, 16, 2, &mut rng);
            let by: Vec<GroupElement> = (0..a.part_count()).map(|_| biased_color(&ctx, 2, &mut rng)).collect();
            let conj = a.transform(&ctx, &SubsetTransform::Conjugate(by)).expect("valid conjugation");
            out.check(conj.is_independent(&ctx), || format!("k={} conjugate of {:?} dependent", ctx.k(), a.elements));

            let parts = a.parts();
            if let (Some(from), Some(to)) = ((0..n).find(|&i| !parts[i].is_empty()), (0..n).find(|&i| parts[i].is_empty())) {
                let moved: Vec<usize> = (0..parts[from].len()).filter(|_| rng.gen_bool(0.5)).collect();
                let sep = a.transform(&ctx, &SubsetTransform::Separate { from, to, moved }).expect("valid separation");
                out.check(sep.is_independent(&ctx), || format!("k={} separation of {:?} dependent", ctx.k(), a.elements));
            }

            if a.is_tight(&ctx) {
                tight_seen += 1;
                let nonempty: Vec<usize> = (0..n).filter(|&i| !parts[i].is_empty()).collect();
                if nonempty.len() >= 2 {
                    let fused = a.transform(&ctx, &SubsetTransform::Fuse { into: nonempty[0], from: nonempty[1] }).expect("valid fuse");
                    out.check(fused.is_spanning(&ctx) && fused.part_count() == a.part_count() - 1, || {
                        format!("k={} fuse of tight {:?} not spanning", ctx.k(), a.elements)
                    });
                }
                let shape = a.tight_type(&ctx);
                out.check(shape.is_some() && (shape != Some(crate::groups::TightType::Two) || ctx.k() == 2), || {
                    format!("k={} tight set {:?} has shape {:?}", ctx.k(), a.elements, shape)
                });
            }
        }
    }
    out.note(format!("{tight_seen} tight sets"));
    out
}

/// Every subgroup the suites touch: random generator sets and graph components.
fn sample_subgroups(per_k: usize, seed: u64) -> Vec<SubgroupDescriptor> {
    let mut out = Vec::new();
    for ctx in GroupContext::all() {
        let mut rng = rng_for(seed, &ctx, 12);
        for _ in 0..per_k {
            out.push(SubgroupDescriptor::classify(&ctx, &random_generators(&ctx, &mut rng)));
            out.extend(graph_invariants(&suite_graph(&ctx, &mut rng)).descriptors);
        }
    }
    out
}

/// T against cent, teich against rep, and the cent value of each class.
pub fn cent_relations(per_k: usize, seed: u64) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("T/cent/rep/teich relations and cent table");
    for d in sample_subgroups(per_k, seed) {
        let (t, cent, rep, teich) = (d.t_invariant(), d.cent(), d.rep(), d.teich());
        let a = if d.has_translation() { t == cent } else { t == cent - 1 };
        let b = d.class != SubgroupClass::TranslationOnly || teich == rep - 1;
        let c = d.class != SubgroupClass::Trivial || (teich == 0 && rep == 0);
        let table = cent >= t
            && cent
                == match d.class {
                    SubgroupClass::Mixed => 0,
                    SubgroupClass::CyclicRotation => 1,
                    SubgroupClass::TranslationOnly => 2,
                    SubgroupClass::Trivial => 3,
                };
        let even = t % 2 == 0 && rep % 2 == 0;
        out.check(a && b && c && table && even, || format!("k={} {:?}: T={t} cent={cent} rep={rep} teich={teich}", d.context.k(), d.class));
    }
    out
}

/// The identity `rep(Λ) - T = teich(Λ) - cent`, checked literally.
pub fn relation_d(per_k: usize, seed: u64) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("rep - T = teich - cent");
    let mut shifted = 0;
    let mut total = 0;
    for d in sample_subgroups(per_k, seed) {
        let lhs = d.rep() - d.t_invariant();
        let rhs = d.teich() - d.cent();
        total += 1;
        shifted += (lhs - 1 == rhs) as usize;
        out.check(lhs == rhs, || format!("k={} {:?}: rep - T = {lhs}, teich - cent = {rhs}", d.context.k(), d.class));
    }
    out.note(format!("rep - T - 1 = teich - cent holds on {shifted} of {total}"));
    out
}

/// Generated graph files survive parse/serialize byte for byte.
pub fn format_round_trip(cases: usize, seed: u64) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("graph file round trip");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..cases {
        let ctx = GroupContext::all().nth(rng.gen_range(0..4)).expect("four groups");
        let n = rng.gen_range(1..=6);
        let m = rng.gen_range(0..=15);
        let g = random_graph(&ctx, n, m, 5, &mut rng);
        let text = serialize_graph(&g);
        let verdict = match parse_graph(&text) {
            Ok(parsed) => parsed == g && serialize_graph(&parsed) == text,
            Err(_) => false,
        };
        out.check(verdict, || format!("round trip failed for {}", one_line(&g)));
    }
    out
}

/// Suite sizes for [`run_all`].
#[derive(Debug, Clone, Copy)]
pub struct Scale {
    pub per_k: usize,
    pub graphs_per_k: usize,
}

impl Scale {
    pub fn small() -> Self {
        Scale { per_k: 50, graphs_per_k: 15 }
    }

    pub fn full() -> Self {
        Scale { per_k: 1000, graphs_per_k: 200 }
    }
}

/// Every suite at the given scale, in a fixed order.
pub fn run_all(scale: Scale, seed: u64) -> Vec<SuiteOutcome> {
    let mut out = vec![matroid_axioms(scale.per_k, seed), closure_dichotomy(scale.per_k, seed)];
    let (oracles, bases) = oracle_equivalence(scale.graphs_per_k, seed);
    out.push(oracles);
    let laman_graphs = laman_count_graphs(scale.graphs_per_k, seed);
    out.push(direction_criterion(&laman_graphs, seed, DirectionReading::Faithful));
    out.push(rigidity_criterion(&laman_graphs, seed, 3));
    out.push(collapse(&bases, seed));
    out.push(collapsed_dimensions(scale.graphs_per_k, seed));
    let mut decomposable = bases;
    decomposable.extend(doubled_laman(&laman_graphs));
    out.push(decomposition_validity(&decomposable));
    out.push(worked_example(seed));
    out.push(rebase_invariance(scale.graphs_per_k, seed));
    out.push(matroid_transforms(scale.graphs_per_k, seed));
    out.push(cent_relations(scale.graphs_per_k, seed));
    out.push(format_round_trip(scale.graphs_per_k, seed));
    out
}
