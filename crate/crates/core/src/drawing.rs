//! Planarizations: combinatorial drawings given by ordered crossing lists.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, VertexId, WeightedMultigraph};
use crate::planarity::{self, RotationSystem};
use crate::poly::OmegaPoly;

/// For every edge, the partner edges it crosses, ordered from `u` to `v`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Planarization {
    pub crossings: Vec<Vec<EdgeId>>,
}

/// A crossing between two edges, stored with `a < b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CrossingPair {
    pub a: EdgeId,
    pub b: EdgeId,
}

impl CrossingPair {
    pub fn new(x: EdgeId, y: EdgeId) -> Self {
        CrossingPair { a: x.min(y), b: x.max(y) }
    }
}

/// Graph with one dummy vertex per crossing.
#[derive(Clone, Debug)]
pub struct DerivedGraph {
    pub vertex_count: usize,
    pub ends: Vec<(VertexId, VertexId)>,
    /// Original edge carried by each segment.
    pub origin: Vec<EdgeId>,
    /// Dummy vertex of each crossing.
    pub dummy: HashMap<CrossingPair, VertexId>,
}

impl Planarization {
    pub fn empty(edge_count: usize) -> Self {
        Planarization { crossings: vec![Vec::new(); edge_count] }
    }

    pub fn from_pairs(edge_count: usize, ordered: &[(EdgeId, EdgeId)]) -> Self {
        let mut p = Planarization::empty(edge_count);
        for &(x, y) in ordered {
            p.crossings[x].push(y);
            p.crossings[y].push(x);
        }
        p
    }

    pub fn pairs(&self) -> BTreeSet<CrossingPair> {
        let mut out = BTreeSet::new();
        for (e, list) in self.crossings.iter().enumerate() {
            for &f in list {
                out.insert(CrossingPair::new(e, f));
            }
        }
        out
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Structural checks short of planarity; returns the first problem.
    pub fn check_structure(&self, g: &WeightedMultigraph) -> Result<()> {
        if self.crossings.len() != g.edge_count() {
            return Err(Error::Invalid(format!(
                "planarization has {} edge lists for {} edges",
                self.crossings.len(),
                g.edge_count()
            )));
        }
        let mut count: HashMap<(EdgeId, EdgeId), usize> = HashMap::new();
        for (e, list) in self.crossings.iter().enumerate() {
            let mut local = BTreeSet::new();
            for &f in list {
                if f >= g.edge_count() {
                    return Err(Error::Invalid(format!("edge {e} crosses unknown edge {f}")));
                }
                if f == e {
                    return Err(Error::Invalid(format!("edge {e} crosses itself")));
                }
                if !local.insert(f) {
                    return Err(Error::Invalid(format!("edges {e} and {f} cross more than once")));
                }
                let (ee, ff) = (g.edge(e), g.edge(f));
                if ee.forbidden || ff.forbidden {
                    return Err(Error::Invalid(format!("crossing {e}x{f} involves a forbidden edge")));
                }
                if ee.adjacent_to(ff) {
                    return Err(Error::Invalid(format!("adjacent edges {e} and {f} cross")));
                }
                *count.entry((e, f)).or_default() += 1;
            }
        }
        for &(e, f) in count.keys() {
            if !count.contains_key(&(f, e)) {
                return Err(Error::Invalid(format!("crossing {e}x{f} is not symmetric")));
            }
        }
        Ok(())
    }

    /// Sum over crossings of the product of the two weights.
    pub fn weight(&self, g: &WeightedMultigraph) -> Result<OmegaPoly> {
        let mut total = OmegaPoly::zero();
        for p in self.pairs() {
            if p.b >= g.edge_count() {
                return Err(Error::Invalid(format!("dangling edge reference {}", p.b)));
            }
            total += &g.edge(p.a).weight * &g.edge(p.b).weight;
        }
        Ok(total)
    }

    /// Replace crossings by dummy vertices. Structure must already be valid.
    pub fn derived_graph(&self, g: &WeightedMultigraph) -> DerivedGraph {
        let mut n = g.vertex_count();
        let mut dummy = HashMap::new();
        for p in self.pairs() {
            dummy.insert(p, n);
            n += 1;
        }
        let mut ends = Vec::new();
        let mut origin = Vec::new();
        for (e, edge) in g.edges().iter().enumerate() {
            let mut prev = edge.u;
            for &f in &self.crossings[e] {
                let x = dummy[&CrossingPair::new(e, f)];
                ends.push((prev, x));
                origin.push(e);
                prev = x;
            }
            ends.push((prev, edge.v));
            origin.push(e);
        }
        DerivedGraph { vertex_count: n, ends, origin, dummy }
    }

    /// Planar embedding of the derived graph in which every crossing is a
    /// genuine transversal crossing.
    pub fn embedding(&self, g: &WeightedMultigraph) -> Option<(DerivedGraph, RotationSystem)> {
        let d = self.derived_graph(g);
        let (n, ends) = wheel_gadget(&d, self);
        let wheel = planarity::planar_embedding(n, &ends)?;
        // Segment s became wheel edges 2s and 2s+1; rims never touch the
        // derived vertices, so restricting gives the derived rotation.
        let rotation = wheel.rotation[..d.vertex_count]
            .iter()
            .map(|r| r.iter().map(|&j| j / 2).collect())
            .collect();
        let rs = RotationSystem { rotation };
        debug_assert!(rs.is_planar_embedding(&d.ends));
        Some((d, rs))
    }
}

/// Derived graph with every dummy vertex wrapped in a 4-cycle through its
/// neighbouring subdivision points so the two strands must alternate.
fn wheel_gadget(d: &DerivedGraph, p: &Planarization) -> (usize, Vec<(VertexId, VertexId)>) {
    let mut n = d.vertex_count;
    let mut ends: Vec<(VertexId, VertexId)> = Vec::new();
    // Subdivide every segment once so the rim vertices are private.
    let mut mid = Vec::with_capacity(d.ends.len());
    for &(a, b) in &d.ends {
        let m = n;
        n += 1;
        ends.push((a, m));
        ends.push((m, b));
        mid.push(m);
    }
    // Segment indices around each dummy: for edge e crossing f, the segments
    // before and after the crossing along e.
    let mut seg_start = Vec::with_capacity(p.crossings.len());
    let mut s = 0;
    for list in &p.crossings {
        seg_start.push(s);
        s += list.len() + 1;
    }
    let mut around: HashMap<VertexId, Vec<(usize, usize)>> = HashMap::new();
    for (e, list) in p.crossings.iter().enumerate() {
        for (i, &f) in list.iter().enumerate() {
            let x = d.dummy[&CrossingPair::new(e, f)];
            around.entry(x).or_default().push((seg_start[e] + i, seg_start[e] + i + 1));
        }
    }
    let mut dummies: Vec<_> = around.into_iter().collect();
    dummies.sort();
    for (_, strands) in dummies {
        let [(a0, a1), (b0, b1)] = [strands[0], strands[1]];
        let rim = [mid[a0], mid[b0], mid[a1], mid[b1]];
        for i in 0..4 {
            ends.push((rim[i], rim[(i + 1) % 4]));
        }
    }
    (n, ends)
}

pub fn drawing_weight(g: &WeightedMultigraph, p: &Planarization) -> Result<OmegaPoly> {
    p.weight(g)
}

/// All planarization invariants, including a planar derived graph with
/// transversal crossings.
pub fn verify_drawing(g: &WeightedMultigraph, p: &Planarization) -> bool {
    explain_drawing(g, p).is_ok()
}

pub fn explain_drawing(g: &WeightedMultigraph, p: &Planarization) -> Result<()> {
    p.check_structure(g)?;
    if p.embedding(g).is_none() {
        return Err(Error::Invalid("derived graph is not planar".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k5() -> WeightedMultigraph {
        let mut g = WeightedMultigraph::new();
        for i in 0..5 {
            g.add_vertex(format!("v{i}")).unwrap();
        }
        for i in 0..5 {
            for j in i + 1..5 {
                g.add_edge(i, j, OmegaPoly::one()).unwrap();
            }
        }
        g
    }

    fn edge_between(g: &WeightedMultigraph, a: usize, b: usize) -> EdgeId {
        g.edges().iter().position(|e| (e.u, e.v) == (a.min(b), a.max(b))).unwrap()
    }

    #[test]
    fn k5_needs_a_crossing() {
        let g = k5();
        assert!(!verify_drawing(&g, &Planarization::empty(10)));
        let e02 = edge_between(&g, 0, 2);
        let e13 = edge_between(&g, 1, 3);
        let p = Planarization::from_pairs(10, &[(e02, e13)]);
        assert!(verify_drawing(&g, &p));
        assert_eq!(drawing_weight(&g, &p).unwrap(), OmegaPoly::one());
    }

    #[test]
    fn touching_is_not_crossing() {
        // Two disjoint paths a-x-b and c-x'-d cannot "cross" in a planar
        // 4-cycle frame unless the strands alternate.
        let mut g = WeightedMultigraph::new();
        for n in ["a", "b", "c", "d"] {
            g.add_vertex(n).unwrap();
        }
        let ab = g.add_edge(0, 1, OmegaPoly::one()).unwrap();
        let cd = g.add_edge(2, 3, OmegaPoly::one()).unwrap();
        for (x, y) in [(0, 2), (2, 1), (1, 3), (3, 0)] {
            g.add_edge(x, y, OmegaPoly::one()).unwrap();
        }
        // Cycle a-c-b-d: chords ab and cd inside must cross exactly once,
        // which is fine; the crossing alternates a, c, b, d.
        let p = Planarization::from_pairs(6, &[(ab, cd)]);
        assert!(verify_drawing(&g, &p));
    }

    #[test]
    fn rejects_bad_structure() {
        let g = k5();
        let e01 = edge_between(&g, 0, 1);
        let e02 = edge_between(&g, 0, 2);
        let e13 = edge_between(&g, 1, 3);
        assert!(!verify_drawing(&g, &Planarization::from_pairs(10, &[(e01, e02)])));
        let mut p = Planarization::from_pairs(10, &[(e02, e13)]);
        p.crossings[e02].push(e13);
        p.crossings[e13].push(e02);
        assert!(!verify_drawing(&g, &p));
        let mut one_sided = Planarization::empty(10);
        one_sided.crossings[e02].push(e13);
        assert!(!verify_drawing(&g, &one_sided));
    }

    #[test]
    fn heavy_product() {
        let mut g = WeightedMultigraph::new();
        for n in ["a", "b", "c", "d"] {
            g.add_vertex(n).unwrap();
        }
        let e = g.add_edge(0, 1, OmegaPoly::pow(41) - OmegaPoly::pow(40)).unwrap();
        let f = g.add_edge(2, 3, OmegaPoly::pow(49)).unwrap();
        let p = Planarization::from_pairs(2, &[(e, f)]);
        assert_eq!(p.weight(&g).unwrap(), OmegaPoly::pow(90) - OmegaPoly::pow(89));
        assert_eq!(Planarization::empty(2).weight(&g).unwrap(), OmegaPoly::zero());
    }
}
