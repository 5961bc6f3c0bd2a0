//! Upper bounds by planar subgraph plus shortest-path edge insertion.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::drawing::{verify_drawing, Planarization};
use crate::graph::{EdgeId, VertexId, WeightedMultigraph};
use crate::planarity::{self, Dsu};
use crate::poly::OmegaPoly;

use super::exact::minimize_witness;

/// Best verified drawing over `rounds` random insertion orders.
pub fn insertion_drawing<R: Rng>(g: &WeightedMultigraph, rounds: usize, rng: &mut R) -> Option<(OmegaPoly, Planarization)> {
    let mut best: Option<(OmegaPoly, Planarization)> = None;
    for _ in 0..rounds {
        let Some(p) = one_round(g, rng) else { continue };
        let p = minimize_witness(g, p);
        if !verify_drawing(g, &p) {
            continue;
        }
        let w = p.weight(g).expect("witness edges exist");
        if best.as_ref().is_none_or(|(b, _)| &w < b) {
            best = Some((w, p));
        }
    }
    best
}

struct State {
    n: usize,
    /// Vertex sequence of every inserted edge from `u` to `v`.
    chain: Vec<Option<Vec<VertexId>>>,
    /// Both origins of every dummy vertex, indexed from the first dummy.
    dummy: Vec<(EdgeId, EdgeId)>,
}

/// Segment ends and, per segment, its edge and position along the chain.
type Segments = (Vec<(VertexId, VertexId)>, Vec<(EdgeId, usize)>);

impl State {
    fn segments(&self) -> Segments {
        let mut ends = Vec::new();
        let mut owner = Vec::new();
        for (e, c) in self.chain.iter().enumerate() {
            if let Some(c) = c {
                for (i, w) in c.windows(2).enumerate() {
                    ends.push((w[0], w[1]));
                    owner.push((e, i));
                }
            }
        }
        (ends, owner)
    }

    fn planar_with(&self, g: &WeightedMultigraph, e: EdgeId) -> bool {
        let (mut ends, _) = self.segments();
        ends.push((g.edge(e).u, g.edge(e).v));
        planarity::is_planar_edges(self.n, &ends)
    }
}

fn one_round<R: Rng>(g: &WeightedMultigraph, rng: &mut R) -> Option<Planarization> {
    let m = g.edge_count();
    let mut st = State { n: g.vertex_count(), chain: vec![None; m], dummy: Vec::new() };
    let mut order: Vec<EdgeId> = (0..m).collect();
    order.shuffle(rng);
    order.sort_by_key(|&e| !g.edge(e).forbidden);
    let mut rest = Vec::new();
    for &e in &order {
        if st.planar_with(g, e) {
            st.chain[e] = Some(vec![g.edge(e).u, g.edge(e).v]);
        } else if g.edge(e).forbidden {
            return None;
        } else {
            rest.push(e);
        }
    }
    for e in rest {
        insert(g, &mut st, e)?;
    }
    let n0 = g.vertex_count();
    let mut p = Planarization::empty(m);
    for (e, c) in st.chain.iter().enumerate() {
        for &x in &c.as_ref().expect("all edges inserted")[1..] {
            if x >= n0 {
                let (a, b) = st.dummy[x - n0];
                p.crossings[e].push(if a == e { b } else { a });
            }
        }
    }
    Some(p)
}

fn insert(g: &WeightedMultigraph, st: &mut State, e: EdgeId) -> Option<()> {
    let (u, v) = (g.edge(e).u, g.edge(e).v);
    let (ends, owner) = st.segments();
    let mut dsu = Dsu::new(st.n);
    for &(a, b) in &ends {
        dsu.union(a, b);
    }
    if dsu.find(u) != dsu.find(v) {
        st.chain[e] = Some(vec![u, v]);
        return Some(());
    }
    let rs = planarity::planar_embedding(st.n, &ends)?;
    let faces = rs.faces(&ends).ok()?;
    let face_of = faces.face_of();
    let mut side: Vec<[usize; 2]> = vec![[0, 0]; ends.len()];
    for (d, &f) in &face_of {
        side[d.edge][usize::from(d.from != ends[d.edge].0)] = f;
    }
    let touches = |f: usize, x: VertexId| faces.faces[f].iter().any(|d| d.from == x);
    let mut dist: HashMap<usize, OmegaPoly> = HashMap::new();
    let mut prev: HashMap<usize, (usize, usize)> = HashMap::new();
    let mut heap = BinaryHeap::new();
    for f in 0..faces.len() {
        if touches(f, u) {
            dist.insert(f, OmegaPoly::zero());
            heap.push(Reverse((OmegaPoly::zero(), f)));
        }
    }
    let ee = g.edge(e);
    let mut goal = None;
    while let Some(Reverse((d, f))) = heap.pop() {
        if dist.get(&f).is_some_and(|x| x < &d) {
            continue;
        }
        if touches(f, v) {
            goal = Some(f);
            break;
        }
        for dart in &faces.faces[f] {
            let s = dart.edge;
            let o = owner[s].0;
            let oe = g.edge(o);
            if ee.forbidden || oe.forbidden || oe.adjacent_to(ee) {
                continue;
            }
            let h = side[s][usize::from(dart.from == ends[s].0)];
            let nd = &d + &(&ee.weight * &oe.weight);
            if dist.get(&h).is_none_or(|x| &nd < x) {
                dist.insert(h, nd.clone());
                prev.insert(h, (f, s));
                heap.push(Reverse((nd, h)));
            }
        }
    }
    let mut f = goal?;
    let mut crossed = Vec::new();
    while let Some(&(pf, s)) = prev.get(&f) {
        crossed.push(owner[s]);
        f = pf;
    }
    crossed.reverse();
    let mut origins: Vec<EdgeId> = crossed.iter().map(|c| c.0).collect();
    origins.sort_unstable();
    origins.dedup();
    if origins.len() != crossed.len() {
        return None;
    }
    let mut path = vec![u];
    for (o, i) in crossed {
        let x = st.n;
        st.n += 1;
        st.dummy.push((e, o));
        st.chain[o].as_mut().expect("crossed edge is present").insert(i + 1, x);
        path.push(x);
    }
    path.push(v);
    st.chain[e] = Some(path);
    Some(())
}
