#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use xnum::pp::validate_pp;
use xnum::solver::{anchored_crossing_number_exact, crossing_number_exact, SolveOptions, SolveStatus};
use xnum::{AnchoredInstance, OmegaPoly, PPInstance, WeightedMultigraph};

pub fn cr(g: &WeightedMultigraph) -> OmegaPoly {
    let r = crossing_number_exact(g, &SolveOptions::default());
    assert_eq!(r.status, SolveStatus::Optimal);
    r.value.unwrap()
}

pub fn cr_a(a: &AnchoredInstance) -> OmegaPoly {
    let r = anchored_crossing_number_exact(a, &SolveOptions::default()).unwrap();
    assert_eq!(r.status, SolveStatus::Optimal);
    r.value.unwrap()
}

/// Connected random multigraph on `n` vertices with `m >= n - 1` edges.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, m: usize, max_weight: i64) -> WeightedMultigraph {
    let mut g = WeightedMultigraph::new();
    for i in 0..n {
        g.add_vertex(format!("v{i}")).unwrap();
    }
    for v in 1..n {
        let u = rng.gen_range(0..v);
        g.add_edge(u, v, OmegaPoly::constant(rng.gen_range(1..=max_weight))).unwrap();
    }
    while n > 1 && g.edge_count() < m {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v {
            g.add_edge(u, v, OmegaPoly::constant(rng.gen_range(1..=max_weight))).unwrap();
        }
    }
    g
}

/// K5 or K3,3 with random weights, optionally with one edge subdivided and
/// one extra edge.
pub fn random_kuratowski(rng: &mut ChaCha8Rng, k5: bool, max_weight: i64) -> WeightedMultigraph {
    let mut g = WeightedMultigraph::new();
    let n = if k5 { 5 } else { 6 };
    for i in 0..n {
        g.add_vertex(format!("v{i}")).unwrap();
    }
    let pairs: Vec<(usize, usize)> = if k5 {
        (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j))).collect()
    } else {
        (0..3).flat_map(|i| (3..6).map(move |j| (i, j))).collect()
    };
    for (a, b) in pairs {
        g.add_edge(a, b, OmegaPoly::constant(rng.gen_range(1..=max_weight))).unwrap();
    }
    if rng.gen_bool(0.5) {
        let e = rng.gen_range(0..g.edge_count());
        g.subdivide_edge(e, "s").unwrap();
    }
    if rng.gen_bool(0.5) {
        let u = rng.gen_range(0..g.vertex_count());
        let x = g.add_vertex("p").unwrap();
        g.add_edge(u, x, OmegaPoly::constant(rng.gen_range(1..=max_weight))).unwrap();
    }
    g
}

/// Adds a connected simple part over `anchors` plus `inner` new vertices.
fn add_part(
    g: &mut WeightedMultigraph,
    rng: &mut ChaCha8Rng,
    tag: &str,
    anchors: &[usize],
    inner: usize,
    edges: usize,
    max_weight: i64,
) -> BTreeSet<usize> {
    let mut vs = anchors.to_vec();
    for i in 0..inner {
        vs.push(g.add_vertex(format!("{tag}{i}")).unwrap());
    }
    for i in (1..vs.len()).rev() {
        vs.swap(i, rng.gen_range(0..=i));
    }
    let mut pairs = BTreeSet::new();
    for i in 1..vs.len() {
        pairs.insert((rng.gen_range(0..i), i));
    }
    let room = vs.len() * (vs.len() - 1) / 2;
    while pairs.len() < edges.min(room) {
        let (a, b) = (rng.gen_range(0..vs.len()), rng.gen_range(0..vs.len()));
        if a != b {
            pairs.insert((a.min(b), a.max(b)));
        }
    }
    for (a, b) in pairs {
        g.add_edge(vs[a], vs[b], OmegaPoly::constant(rng.gen_range(1..=max_weight))).unwrap();
    }
    vs.into_iter().collect()
}

/// Random valid PP instance whose first part has exactly two anchors.
pub fn random_two_anchor_pp(rng: &mut ChaCha8Rng, max_edges: usize, max_weight: i64) -> PPInstance {
    loop {
        let n2 = rng.gen_range(2..=4);
        let mut labels: Vec<bool> = (0..2 + n2).map(|i| i < 2).collect();
        for i in (1..labels.len()).rev() {
            labels.swap(i, rng.gen_range(0..=i));
        }
        let mut g = WeightedMultigraph::new();
        let anchors: Vec<_> = (0..labels.len()).map(|i| g.add_vertex(format!("a{i}")).unwrap()).collect();
        let side = |s: bool| -> Vec<usize> { anchors.iter().zip(&labels).filter(|(_, &l)| l == s).map(|(&a, _)| a).collect() };
        let (s1, s2) = (side(true), side(false));
        let (i1, i2) = (rng.gen_range(0..=2), rng.gen_range(0..=2));
        let e1 = rng.gen_range(s1.len() + i1 - 1..=max_edges.max(s1.len() + i1 - 1));
        let e2 = rng.gen_range(s2.len() + i2 - 1..=max_edges.max(s2.len() + i2 - 1));
        let part1 = add_part(&mut g, rng, "x", &s1, i1, e1, max_weight);
        let part2 = add_part(&mut g, rng, "y", &s2, i2, e2, max_weight);
        let pp = PPInstance { base: AnchoredInstance::new(g, anchors).unwrap(), part1, part2 };
        if validate_pp(&pp).is_empty() {
            return pp;
        }
    }
}

/// Random PP instance: each part is a tree whose leaves are its anchors.
pub fn random_tree_pp(rng: &mut ChaCha8Rng) -> PPInstance {
    loop {
        let na = rng.gen_range(1..=4);
        let nb = rng.gen_range(1..=4);
        if na + nb < 3 {
            continue;
        }
        let mut g = WeightedMultigraph::new();
        let mut labels: Vec<bool> = (0..na + nb).map(|i| i < na).collect();
        for i in (1..labels.len()).rev() {
            labels.swap(i, rng.gen_range(0..=i));
        }
        let anchors: Vec<_> = labels.iter().enumerate().map(|(i, _)| g.add_vertex(format!("t{i}")).unwrap()).collect();
        let (mut part1, mut part2) = (BTreeSet::new(), BTreeSet::new());
        for (side, part) in [(true, &mut part1), (false, &mut part2)] {
            let mine: Vec<_> = anchors.iter().zip(&labels).filter(|(_, &l)| l == side).map(|(&a, _)| a).collect();
            part.extend(&mine);
            let c = g.add_vertex(format!("c{}", u8::from(side))).unwrap();
            part.insert(c);
            for &a in &mine {
                let w = OmegaPoly::constant(rng.gen_range(1..=2));
                if rng.gen_bool(0.3) {
                    let mid = g.add_vertex(format!("m{a}")).unwrap();
                    part.insert(mid);
                    g.add_edge(c, mid, w.clone()).unwrap();
                    g.add_edge(mid, a, w).unwrap();
                } else {
                    g.add_edge(c, a, w).unwrap();
                }
            }
        }
        if g.edge_count() <= 8 {
            return PPInstance { base: AnchoredInstance::new(g, anchors).unwrap(), part1, part2 };
        }
    }
}
