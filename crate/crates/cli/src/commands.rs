use std::fmt::Write;
use std::path::Path;

use anyhow::{bail, Context};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crystal_rigidity::colored_graph::{serialize_graph, ColoredGraph};
use crystal_rigidity::groups::GroupContext;
use crystal_rigidity::random::random_graph;
use crystal_rigidity::realization::{
    assemble_direction_system, generic_rigidity_rank, laman_edge_count, random_directions, realize as solve, Realization, RealizeOutcome,
};
use crystal_rigidity::render::render_svg;
use crystal_rigidity::scalar::Scalar;
use crystal_rigidity::selftest;
use crystal_rigidity::sparsity::{
    decompose11, find_laman_circuit, gamma22_edge_count, gen_cone11_rank, is_g11_independent, is_gamma11_by_counts, is_gamma22,
    is_gen_cone11, is_laman, union_oracle, UnionCertificate,
};

use crate::{Family, Outcome, Scale};

fn edge_list(edges: &[usize]) -> String {
    edges.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" ")
}

fn realization_json(real: &Realization) -> serde_json::Value {
    let pair = |p: &[Scalar; 2]| json!([p[0].to_string(), p[1].to_string()]);
    json!({
        "points": real.points.iter().map(pair).collect::<Vec<_>>(),
        "lattice": real.lattice.iter().map(pair).collect::<Vec<_>>(),
    })
}

pub fn check(g: &ColoredGraph, family: Family) -> Outcome {
    let all: Vec<usize> = (0..g.m()).collect();
    let mut text = String::new();
    let (ok, payload) = match family {
        Family::Laman => {
            let expected = laman_edge_count(&g.context, g.n);
            if is_laman(g) {
                text.push_str("LAMAN\n");
                (true, json!({ "m": g.m(), "expected": expected }))
            } else {
                let circuit = find_laman_circuit(g);
                writeln!(text, "NOT LAMAN\nedges {} expected {expected}", g.m()).unwrap();
                if let Some(c) = &circuit {
                    writeln!(text, "circuit {}", edge_list(c)).unwrap();
                }
                (false, json!({ "m": g.m(), "expected": expected, "circuit": circuit }))
            }
        }
        Family::Gamma22 => {
            let expected = gamma22_edge_count(&g.context, g.n);
            if is_gamma22(g) {
                let (x, y) = decompose11(g).expect("Γ-(2,2) graphs decompose");
                writeln!(text, "GAMMA-(2,2)\npartition x {}\npartition y {}", edge_list(&x), edge_list(&y)).unwrap();
                (true, json!({ "m": g.m(), "expected": expected, "partition": { "x": x, "y": y } }))
            } else {
                writeln!(text, "NOT GAMMA-(2,2)\nedges {} expected {expected}", g.m()).unwrap();
                let certificate = union_oracle(g, &all);
                match &certificate {
                    UnionCertificate::Partition { x, y } => {
                        writeln!(text, "partition x {}\npartition y {}", edge_list(x), edge_list(y)).unwrap()
                    }
                    UnionCertificate::Violation { w } => writeln!(text, "violation {}", edge_list(w)).unwrap(),
                }
                (false, json!({ "m": g.m(), "expected": expected, "certificate": certificate }))
            }
        }
        Family::Gamma11 => {
            let expected = g.n as i64 + g.context.full_rep() / 2;
            let ok = is_gamma11_by_counts(g, &all);
            let independent = is_g11_independent(g, &all);
            writeln!(text, "{}\nedges {} expected {expected}\nindependent {independent}", if ok { "GAMMA-(1,1)" } else { "NOT GAMMA-(1,1)" }, g.m())
                .unwrap();
            (ok, json!({ "m": g.m(), "expected": expected, "independent": independent }))
        }
        Family::GenCone11 => {
            let ok = is_gen_cone11(g);
            let rank = gen_cone11_rank(g, &all);
            writeln!(
                text,
                "{}\nedges {} vertices {} rank {rank}",
                if ok { "GENERALIZED-CONE-(1,1)" } else { "NOT GENERALIZED-CONE-(1,1)" },
                g.m(),
                g.n
            )
            .unwrap();
            (ok, json!({ "m": g.m(), "n": g.n, "rank": rank }))
        }
    };
    let family_name = format!("{family:?}").to_lowercase();
    Outcome { code: if ok { 0 } else { 1 }, text, json: json!({ "family": family_name, "decision": ok, "certificate": payload }) }
}

pub fn realize(g: &ColoredGraph, seed: u64, bound: i64) -> anyhow::Result<Outcome> {
    let d = random_directions(g, seed, bound)?;
    Ok(match solve(g, &d)? {
        RealizeOutcome::Faithful(real) => Outcome {
            code: 0,
            text: format!("faithful\n{real}"),
            json: json!({ "faithful": true, "realization": realization_json(&real) }),
        },
        RealizeOutcome::Diagnosis(diag) => {
            let mut text = format!("{}\n", diag.summary());
            if !diag.collapsed_edges.is_empty() {
                writeln!(text, "collapsed {}", edge_list(&diag.collapsed_edges)).unwrap();
            }
            if let Some(c) = &diag.circuit {
                writeln!(text, "circuit {}", edge_list(c)).unwrap();
            }
            if let Some(real) = &diag.solution {
                write!(text, "{real}").unwrap();
            }
            Outcome {
                code: 1,
                text,
                json: json!({
                    "faithful": false,
                    "summary": diag.summary(),
                    "kernel_dim": diag.kernel_dim,
                    "collapsed": diag.collapsed_edges,
                    "circuit": diag.circuit,
                    "realization": diag.solution.as_ref().map(realization_json),
                }),
            }
        }
    })
}

pub fn rank(g: &ColoredGraph, seed: u64, samples: usize) -> Outcome {
    let report = generic_rigidity_rank(g, seed, samples);
    let target = laman_edge_count(&g.context, g.n);
    let verdict = if report.rank < target {
        "FLEXIBLE"
    } else if g.m() > target {
        "OVERBRACED"
    } else {
        "MINIMALLY-RIGID"
    };
    Outcome {
        code: if verdict == "MINIMALLY-RIGID" { 0 } else { 1 },
        text: format!("rank {}\nedges {}\nlaman count {target}\n{verdict}\n", report.rank, g.m()),
        json: json!({ "rank": report.rank, "m": g.m(), "laman_count": target, "samples": report.samples, "verdict": verdict }),
    }
}

/// The faithful realization when there is one, otherwise a random kernel
/// vector with as few collapsed edges as a handful of draws finds.
fn drawable(g: &ColoredGraph, seed: u64) -> anyhow::Result<Option<Realization>> {
    let d = random_directions(g, seed, 100)?;
    if let RealizeOutcome::Faithful(real) = solve(g, &d)? {
        return Ok(Some(real));
    }
    let kernel = assemble_direction_system(g, &d)?.kernel();
    if kernel.is_empty() {
        return Ok(None);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut best: Option<(usize, Realization)> = None;
    for _ in 0..8 {
        let mut x = vec![Scalar::zero(); kernel[0].len()];
        for basis in &kernel {
            let c = Scalar::from_int(rng.gen_range(-9..=9));
            for (xi, bi) in x.iter_mut().zip(basis) {
                *xi += &(&c * bi);
            }
        }
        let real = Realization::from_vector(g.context, g.n, &x);
        let score = real.collapsed_edges(g).len() + if real.has_trivial_lattice() { g.m() + 1 } else { 0 };
        if real.to_vector().iter().any(|c| !c.is_zero()) && best.as_ref().is_none_or(|(s, _)| score < *s) {
            best = Some((score, real));
        }
    }
    Ok(best.map(|(_, real)| real))
}

pub fn render(g: &ColoredGraph, seed: u64, radius: i64, out: &Path) -> anyhow::Result<Outcome> {
    if radius < 0 {
        bail!("radius must be non-negative");
    }
    let Some(real) = drawable(g, seed)? else {
        return Ok(Outcome {
            code: 1,
            text: "fully collapsed: every direction-network solution is zero, nothing to draw\n".into(),
            json: json!({ "written": false, "reason": "fully collapsed" }),
        });
    };
    let svg = render_svg(g, &real, radius);
    std::fs::write(out, &svg).with_context(|| format!("cannot write {}", out.display()))?;
    let points = svg.matches("<circle").count();
    Ok(Outcome {
        code: 0,
        text: format!("wrote {} ({points} points)\n", out.display()),
        json: json!({ "written": true, "path": out.display().to_string(), "points": points, "realization": realization_json(&real) }),
    })
}

pub fn gen(k: i64, n: usize, m: usize, color_bound: i64, seed: u64) -> anyhow::Result<Outcome> {
    let ctx = GroupContext::new(k)?;
    if n == 0 && m > 0 {
        bail!("edges need at least one vertex");
    }
    if color_bound < 0 {
        bail!("color bound must be non-negative");
    }
    let g = random_graph(&ctx, n, m, color_bound, &mut ChaCha8Rng::seed_from_u64(seed));
    let text = serialize_graph(&g);
    Ok(Outcome { code: 0, json: json!({ "graph": text }), text })
}

pub fn selftest(scale: Scale, seed: u64) -> Outcome {
    let scale = match scale {
        Scale::Small => selftest::Scale::small(),
        Scale::Full => selftest::Scale::full(),
    };
    let suites = selftest::run_all(scale, seed);
    let mut text = String::new();
    for suite in &suites {
        writeln!(text, "{}", suite.line()).unwrap();
        for failure in &suite.failures {
            writeln!(text, "  {failure}").unwrap();
        }
    }
    let ok = suites.iter().all(|s| s.passed());
    Outcome { code: if ok { 0 } else { 1 }, text, json: json!({ "passed": ok, "suites": suites }) }
}
