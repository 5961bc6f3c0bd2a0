//! The two small anchored examples used throughout the tests and docs.

use std::collections::BTreeSet;

use crate::graph::{AnchoredInstance, PPInstance, WeightedMultigraph};
use crate::poly::OmegaPoly;

/// Unit-weight graph from named edges, creating vertices on first use.
pub fn named_graph(edges: &[(&str, &str)]) -> WeightedMultigraph {
    let mut g = WeightedMultigraph::new();
    for &(a, b) in edges {
        let u = g.ensure_vertex(a, Default::default());
        let v = g.ensure_vertex(b, Default::default());
        g.add_edge(u, v, OmegaPoly::one()).expect("fixture edges are valid");
    }
    g
}

/// Planar graph whose anchors a1, a2, a4, a3 (in this cyclic order) force
/// two crossings.
pub fn fig1a() -> AnchoredInstance {
    let g = named_graph(&[
        ("a1", "v1"),
        ("v1", "v2"),
        ("v2", "a1"),
        ("a2", "v1"),
        ("v2", "a2"),
        ("a3", "v3"),
        ("v3", "v4"),
        ("v4", "a3"),
        ("a4", "v3"),
        ("v4", "a4"),
        ("v1", "v3"),
        ("v3", "v5"),
        ("v5", "v6"),
        ("v6", "v2"),
        ("v2", "v4"),
    ]);
    let anchors = ["a1", "a2", "a4", "a3"].iter().map(|n| g.vid(n)).collect();
    AnchoredInstance::new(g, anchors).expect("distinct anchors")
}

/// Two anchored planar parts with interleaved anchor pairs; each needs two
/// edges cut, so four crossings.
pub fn fig1b() -> PPInstance {
    let part1 = [
        ("a1", "v1"),
        ("v1", "v3"),
        ("v4", "v2"),
        ("v2", "a1"),
        ("a1", "v5"),
        ("v5", "v3"),
        ("v3", "v4"),
        ("v4", "v5"),
        ("a2", "v7"),
        ("v7", "v8"),
        ("v8", "a2"),
        ("a2", "v6"),
        ("v3", "v7"),
        ("v4", "v8"),
    ];
    let part2 = [
        ("a3", "w1"),
        ("w1", "w3"),
        ("w3", "w2"),
        ("w2", "a3"),
        ("a3", "w3"),
        ("a4", "w4"),
        ("w4", "w5"),
        ("w5", "a4"),
        ("a4", "w6"),
        ("w6", "w4"),
        ("w6", "w5"),
        ("w3", "w4"),
        ("w2", "w5"),
    ];
    let all: Vec<_> = part1.iter().chain(part2.iter()).copied().collect();
    let g = named_graph(&all);
    let names = |edges: &[(&str, &str)]| -> BTreeSet<usize> {
        edges.iter().flat_map(|&(a, b)| [g.vid(a), g.vid(b)]).collect()
    };
    let (p1, p2) = (names(&part1), names(&part2));
    let anchors = ["a1", "a4", "a2", "a3"].iter().map(|n| g.vid(n)).collect();
    PPInstance { base: AnchoredInstance::new(g, anchors).expect("distinct anchors"), part1: p1, part2: p2 }
}
