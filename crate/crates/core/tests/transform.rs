mod common;

use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use xnum::frame::{build_frame, FrameParams};
use xnum::planarity::is_planar;
use xnum::sat::{build_cm_instance, compose_with_frame, pad_formula_to};
use xnum::solver::{anchored_crossing_number_exact, crossing_number_exact, SolveOptions};
use xnum::transform::*;
use xnum::{AnchoredInstance, CnfFormula, OmegaPoly, PPInstance, WeightedMultigraph};

use common::random_tree_pp;

/// Degree of v^i_j read off the rung rule directly.
fn wall_degree(h: usize, i: usize, j: usize) -> usize {
    let up = i > 1 && (i - 1 + j) % 2 == 1;
    let down = i < h && (i + j) % 2 == 1;
    2 + usize::from(up) + usize::from(down)
}

#[test]
fn wall_example() {
    let w = build_wall(2, 4).unwrap();
    assert_eq!(w.graph.vertex_count(), 8);
    assert_eq!(w.graph.edge_count(), 10);
    let deg = w.graph.degrees();
    let two: BTreeSet<_> = (0..8).filter(|&v| deg[v] == 2).map(|v| w.graph.name(v).to_string()).collect();
    assert_eq!(two, ["v1_1", "v1_3", "v2_1", "v2_3"].map(String::from).into());
    let single = build_wall(1, 6).unwrap();
    assert!(single.graph.degrees().iter().all(|&d| d == 2));
    assert!(build_wall(2, 5).is_err());
    assert!(build_wall(2, 2).is_err());
    assert!(build_wall(0, 4).is_err());
}

#[test]
fn walls_exhaustive() {
    for h in 1..=6 {
        for l in (4..=12).step_by(2) {
            let w = build_wall(h, l).unwrap();
            let g = &w.graph;
            assert_eq!(g.vertex_count(), h * l);
            assert_eq!(g.edge_count(), h * l + (h - 1) * l / 2);
            assert!(is_planar(g).is_some(), "h={h} l={l}");
            let deg = g.degrees();
            let mut rungs = BTreeSet::new();
            for e in g.edges() {
                let (a, b) = (e.u.min(e.v), e.u.max(e.v));
                if b - a == l {
                    rungs.insert((a / l + 1, a % l + 1));
                }
            }
            let expect: BTreeSet<_> = (1..h).flat_map(|i| (1..=l).map(move |j| (i, j))).filter(|(i, j)| (i + j) % 2 == 1).collect();
            assert_eq!(rungs, expect);
            for i in 1..=h {
                for j in 1..=l {
                    assert_eq!(deg[w.vertex(i, j)], wall_degree(h, i, j));
                    let boundary = (i == 1 || i == h) && deg[w.vertex(i, j)] == 2;
                    assert_eq!(deg[w.vertex(i, j)] == 2, boundary || h == 1);
                }
            }
            let ports = w.outer_ports();
            assert_eq!(ports.len(), l / 2);
            assert!(ports.iter().all(|&p| deg[p] == 2));
        }
    }
}

/// Two stars in a disk. Part 1 has center x on anchors `a*`, part 2 center y
/// on anchors `b*`; `order` lists the anchors around the disk.
fn stars(order: &[&str]) -> PPInstance {
    let mut g = WeightedMultigraph::new();
    let anchors: Vec<_> = order.iter().map(|n| g.add_vertex(*n).unwrap()).collect();
    let x = g.add_vertex("x").unwrap();
    let y = g.add_vertex("y").unwrap();
    let (mut part1, mut part2) = (BTreeSet::from([x]), BTreeSet::from([y]));
    for (&a, n) in anchors.iter().zip(order) {
        let (c, part) = if n.starts_with('a') { (x, &mut part1) } else { (y, &mut part2) };
        g.add_edge(c, a, OmegaPoly::one()).unwrap();
        part.insert(a);
    }
    PPInstance { base: AnchoredInstance::new(g, anchors).unwrap(), part1, part2 }
}

fn opts() -> SolveOptions {
    SolveOptions::default()
}

fn cr(g: &WeightedMultigraph) -> OmegaPoly {
    crossing_number_exact(g, &opts()).optimal_value().unwrap().clone()
}

fn cr_a(pp: &PPInstance) -> OmegaPoly {
    anchored_crossing_number_exact(&pp.base, &opts()).unwrap().optimal_value().unwrap().clone()
}

fn optimal_rotations(pp: &PPInstance) -> AnchoredRotations {
    let r = anchored_crossing_number_exact(&pp.base, &opts()).unwrap();
    AnchoredRotations::from_drawing(pp, r.witness.as_ref().unwrap()).unwrap()
}

fn scaled(m: u64, h: usize) -> TransformOptions {
    TransformOptions { m: Some(m), h: Some(h), scaled: true, ..Default::default() }
}

#[test]
fn multicycle() {
    let pp = stars(&["a1", "b1", "a2", "b2", "a3", "b3"]);
    let g0 = add_multicycle(&pp, 5).unwrap();
    assert_eq!(g0.edge_count(), pp.graph().edge_count() + 6);
    assert!(g0.edges()[6..].iter().all(|e| e.weight == OmegaPoly::constant(5)));
    let rot = AnchoredRotations::from_parts(&pp).unwrap();
    let rs = flipped_embedding(&g0, &pp, &rot).unwrap();
    assert!(rs.is_planar_embedding(&xnum::planarity::edge_ends(&g0)));
    assert!(is_planar(&g0).is_some());
    let two = stars(&["a1", "b1"]);
    assert!(add_multicycle(&two, 5).is_err());
    assert_eq!(default_m(&pp), 18);
}

#[test]
fn subdivision_keeps_the_anchored_crossing_number() {
    for order in [["a1", "a2", "b1", "a3", "b2", "b3"], ["a1", "b1", "a2", "b2", "a3", "b3"], ["a1", "a2", "a3", "b1", "b2", "b3"]] {
        let pp = stars(&order);
        let rot = optimal_rotations(&pp);
        let sub = choose_and_subdivide(&pp, &rot).unwrap();
        let g = sub.instance.graph();
        assert_eq!(sub.instance.part_of(sub.v1), Some(1));
        assert_eq!(sub.instance.part_of(sub.v2), Some(2));
        assert_eq!(g.degrees()[sub.v1], 2);
        assert_eq!(cr_a(&sub.instance), cr_a(&pp));
        let mut with_f = sub.instance.clone();
        with_f.base.graph.add_edge(sub.v1, sub.v2, OmegaPoly::one()).unwrap();
        assert_eq!(cr_a(&with_f), cr_a(&pp), "{order:?}");
    }
}

#[test]
fn no_shared_face_is_reported() {
    let mut g = WeightedMultigraph::new();
    let a: Vec<_> = ["a1", "a2", "a3"].iter().map(|n| g.add_vertex(*n).unwrap()).collect();
    g.add_edge(a[0], a[1], OmegaPoly::one()).unwrap();
    g.add_edge(a[1], a[2], OmegaPoly::one()).unwrap();
    let pp = PPInstance { base: AnchoredInstance::new(g, a.clone()).unwrap(), part1: a.iter().copied().collect(), part2: BTreeSet::new() };
    let rot = AnchoredRotations::from_parts(&pp).unwrap();
    let err = choose_and_subdivide(&pp, &rot).unwrap_err().to_string();
    assert!(err.contains("a1..a2"), "{err}");
}

#[test]
fn interleaved_stars_keep_one_crossing() {
    let pp = stars(&["a1", "a2", "b1", "a3", "b2", "b3"]);
    assert_eq!(cr_a(&pp), OmegaPoly::one());
    let inst = almost_planar_instance(&pp, &optimal_rotations(&pp), &scaled(3, 2)).unwrap();
    inst.check().unwrap();
    assert!(inst.scaled);
    assert_eq!(cr(&inst.with_edge()), OmegaPoly::one());
    let low = almost_planar_instance(&pp, &optimal_rotations(&pp), &scaled(2, 2));
    assert!(low.is_err());
    let unscaled = TransformOptions { m: Some(3), ..Default::default() };
    assert!(almost_planar_instance(&pp, &optimal_rotations(&pp), &unscaled).is_err());
}

#[test]
fn anchored_planar_toy_stays_planar() {
    let pp = stars(&["a1", "a2", "a3", "b1", "b2", "b3"]);
    let rot = AnchoredRotations::from_parts(&pp).unwrap();
    let inst = almost_planar_instance(&pp, &rot, &TransformOptions::default()).unwrap();
    assert!(!inst.scaled);
    assert_eq!(inst.m, 32);
    assert!(cr(&inst.with_edge()).is_zero());
}

#[test]
fn walls_replace_high_degree_vertices() {
    let pp = stars(&["a1", "b1", "b2", "a2", "b3", "b4", "a3"]);
    let rot = optimal_rotations(&pp);
    let plan = plan_almost_planar(&pp, &rot, &scaled(3, 3)).unwrap();
    let y = pp.graph().vid("y");
    assert_eq!(plan.g0.degrees()[y], 4);
    let inst = plan.build().unwrap();
    assert!(inst.graph.id("y").is_none());
    assert!(inst.graph.id("y#3_8").is_some());
    assert_eq!(inst.graph.vertex_count() as u128, plan.size.0);
    assert_eq!(inst.graph.edge_count() as u128, plan.size.1);
    inst.check().unwrap();
    assert_eq!(cr(&inst.with_edge()), cr_a(&pp));
    let mut bad = plan.embedding.clone();
    bad.rotation[y].swap(0, 1);
    assert!(blow_up(&plan.g0, &bad, &plan.protected, 3).is_err());
}

#[test]
fn pipeline_matches_the_anchored_crossing_number() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7a11);
    for round in 0..24 {
        let pp = random_tree_pp(&mut rng);
        let target = cr_a(&pp);
        let rot = optimal_rotations(&pp);
        let two = |x: &OmegaPoly| -> u64 { u64::try_from(x.eval_u64(1).to_integer() * 2 + 1).unwrap() };
        let m: u64 = two(&target);
        let plan = plan_almost_planar(&pp, &rot, &scaled(m, 1)).unwrap();
        let h = two(&cr(&plan.g0_with_edge())) as usize;
        let inst = almost_planar_instance(&pp, &rot, &scaled(m, h)).unwrap();
        inst.check().unwrap();
        let high = inst.graph.degrees().iter().filter(|&&d| d > 3).count();
        assert!(high <= 3);
        assert_eq!(cr(&inst.with_edge()), target, "round {round}");
    }
}

#[test]
fn composed_instance_default_plan() {
    let phi = CnfFormula::new(1, vec![vec![1]]).unwrap();
    let h = build_cm_instance(&pad_formula_to(&phi, 2).unwrap().formula, None).unwrap();
    let f = build_frame(FrameParams::symbolic(2)).unwrap();
    let c = compose_with_frame(&f, &h, false).unwrap();
    let rot = AnchoredRotations::from_parts(&c.instance).unwrap();
    let plan = plan_almost_planar(&c.instance, &rot, &TransformOptions::default()).unwrap();
    let g = c.instance.graph();
    let ends = |e: usize| [g.name(g.edge(e).u), g.name(g.edge(e).v)];
    assert_eq!(ends(plan.subdivided.e1), ["s0_8", "r2"]);
    assert_eq!(ends(plan.subdivided.e2), ["b0_8", "b4"]);
    assert!(is_planar(&plan.g0).is_some());
    assert_eq!(plan.h, plan.g0.edge_count().pow(2));
    assert!(!plan.scaled);
    assert!(plan.size.0 > plan.g0.vertex_count() as u128);
    eprintln!("k=2 composed: m = {}, h = {}, |V(G)| = {}, |E(G)| = {}", plan.m, plan.h, plan.size.0, plan.size.1);
    let capped = TransformOptions { max_vertices: Some(1_000_000), ..Default::default() };
    assert!(matches!(almost_planar_instance(&c.instance, &rot, &capped), Err(xnum::Error::Limit(_))));
}
