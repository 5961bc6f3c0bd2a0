//! Planarity testing, rotation systems, faces and anchored planarity.

mod lr;

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{AnchoredInstance, Color, Edge, EdgeId, VertexId, WeightedMultigraph};

/// Per-vertex cyclic order of incident edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RotationSystem {
    pub rotation: Vec<Vec<EdgeId>>,
}

/// A dart is an edge traversed away from `from`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Dart {
    pub edge: EdgeId,
    pub from: VertexId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceList {
    pub faces: Vec<Vec<Dart>>,
}

impl FaceList {
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// Index of the face to the left of every dart.
    pub fn face_of(&self) -> HashMap<Dart, usize> {
        let mut map = HashMap::new();
        for (i, f) in self.faces.iter().enumerate() {
            for &d in f {
                map.insert(d, i);
            }
        }
        map
    }
}

impl RotationSystem {
    /// Check that every edge appears exactly once at each endpoint.
    pub fn check(&self, ends: &[(VertexId, VertexId)]) -> Result<()> {
        let n = self.rotation.len();
        let mut seen = vec![[false; 2]; ends.len()];
        for (v, rot) in self.rotation.iter().enumerate() {
            for &e in rot {
                let (a, b) = *ends
                    .get(e)
                    .ok_or_else(|| Error::Invalid(format!("rotation names unknown edge {e}")))?;
                let slot = if a == v {
                    0
                } else if b == v {
                    1
                } else {
                    return Err(Error::Invalid(format!("edge {e} listed at non-endpoint {v}")));
                };
                if seen[e][slot] {
                    return Err(Error::Invalid(format!("edge {e} repeated at vertex {v}")));
                }
                seen[e][slot] = true;
            }
        }
        for (e, &(a, b)) in ends.iter().enumerate() {
            if a >= n || b >= n || !seen[e][0] || !seen[e][1] {
                return Err(Error::Invalid(format!("edge {e} missing from rotation")));
            }
        }
        Ok(())
    }

    /// Facial walks by rotation tracing.
    pub fn faces(&self, ends: &[(VertexId, VertexId)]) -> Result<FaceList> {
        self.check(ends)?;
        let mut pos: Vec<[usize; 2]> = vec![[0, 0]; ends.len()];
        for (v, rot) in self.rotation.iter().enumerate() {
            for (i, &e) in rot.iter().enumerate() {
                let slot = usize::from(ends[e].0 != v);
                pos[e][slot] = i;
            }
        }
        let mut used = vec![[false; 2]; ends.len()];
        let mut faces = Vec::new();
        for e0 in 0..ends.len() {
            for s0 in 0..2 {
                if used[e0][s0] {
                    continue;
                }
                let mut walk = Vec::new();
                let (mut e, mut s) = (e0, s0);
                while !used[e][s] {
                    used[e][s] = true;
                    let from = if s == 0 { ends[e].0 } else { ends[e].1 };
                    walk.push(Dart { edge: e, from });
                    let to = if s == 0 { ends[e].1 } else { ends[e].0 };
                    let slot_at_to = usize::from(ends[e].0 != to);
                    let rot = &self.rotation[to];
                    let next = rot[(pos[e][slot_at_to] + 1) % rot.len()];
                    e = next;
                    s = usize::from(ends[next].0 != to);
                }
                faces.push(walk);
            }
        }
        Ok(FaceList { faces })
    }

    /// Genus-zero test: every component with edges satisfies v - e + f = 2.
    pub fn is_planar_embedding(&self, ends: &[(VertexId, VertexId)]) -> bool {
        let Ok(faces) = self.faces(ends) else {
            return false;
        };
        let n = self.rotation.len();
        let mut dsu = Dsu::new(n);
        for &(a, b) in ends {
            dsu.union(a, b);
        }
        let mut v_count: HashMap<usize, i64> = HashMap::new();
        let mut e_count: HashMap<usize, i64> = HashMap::new();
        let mut f_count: HashMap<usize, i64> = HashMap::new();
        for v in 0..n {
            *v_count.entry(dsu.find(v)).or_default() += 1;
        }
        for &(a, _) in ends {
            *e_count.entry(dsu.find(a)).or_default() += 1;
        }
        for f in &faces.faces {
            *f_count.entry(dsu.find(f[0].from)).or_default() += 1;
        }
        e_count.iter().all(|(c, &e)| v_count[c] - e + f_count.get(c).copied().unwrap_or(0) == 2)
    }

    /// Reverse every cyclic order.
    pub fn mirrored(&self) -> RotationSystem {
        RotationSystem {
            rotation: self
                .rotation
                .iter()
                .map(|r| r.iter().rev().copied().collect())
                .collect(),
        }
    }
}

pub(crate) struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub(crate) fn new(n: usize) -> Self {
        Dsu { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

pub fn edge_ends(g: &WeightedMultigraph) -> Vec<(VertexId, VertexId)> {
    g.edges().iter().map(|e| (e.u, e.v)).collect()
}

/// Planarity of an edge list on `n` vertices; parallel edges allowed, loops
/// not. Returns a verified planar rotation system on success.
pub fn planar_embedding(n: usize, ends: &[(VertexId, VertexId)]) -> Option<RotationSystem> {
    let mut simple: Vec<(usize, usize)> = Vec::new();
    let mut bundle: HashMap<(usize, usize), usize> = HashMap::new();
    let mut members: Vec<Vec<EdgeId>> = Vec::new();
    for (i, &(a, b)) in ends.iter().enumerate() {
        assert_ne!(a, b, "loops are not supported");
        let key = (a.min(b), a.max(b));
        let id = *bundle.entry(key).or_insert_with(|| {
            simple.push(key);
            members.push(Vec::new());
            simple.len() - 1
        });
        members[id].push(i);
    }
    let rot = lr::planar_rotation(n, &simple)?;
    let rotation = rot
        .iter()
        .enumerate()
        .map(|(v, list)| {
            let mut out = Vec::new();
            for &s in list {
                if simple[s].0 == v {
                    out.extend(members[s].iter().copied());
                } else {
                    out.extend(members[s].iter().rev().copied());
                }
            }
            out
        })
        .collect();
    let rs = RotationSystem { rotation };
    assert!(rs.is_planar_embedding(ends), "planarity witness failed the Euler check");
    Some(rs)
}

pub fn is_planar_edges(n: usize, ends: &[(VertexId, VertexId)]) -> bool {
    let mut simple: Vec<(usize, usize)> = ends.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    simple.sort_unstable();
    simple.dedup();
    lr::is_planar(n, &simple)
}

pub fn is_planar(g: &WeightedMultigraph) -> Option<RotationSystem> {
    planar_embedding(g.vertex_count(), &edge_ends(g))
}

/// The anchored instance with its disk boundary made explicit.
#[derive(Clone, Debug)]
pub struct Augmented {
    pub graph: WeightedMultigraph,
    pub hub: VertexId,
    pub original_vertices: usize,
    pub original_edges: usize,
}

/// Add a forbidden cycle through the anchors in order and a forbidden hub
/// joined to every anchor.
pub fn augment_anchored(a: &AnchoredInstance) -> Result<Augmented> {
    if a.anchors.is_empty() {
        return Err(Error::Invalid("augmentation needs at least one anchor".into()));
    }
    let mut g = a.graph.clone();
    let original_vertices = g.vertex_count();
    let original_edges = g.edge_count();
    let mut hub_name = String::from("__hub");
    while g.id(&hub_name).is_some() {
        hub_name.push('_');
    }
    let hub = g.add_vertex_with(hub_name, None, Color::None)?;
    let k = a.anchors.len();
    if k >= 3 {
        for i in 0..k {
            g.add_forbidden_edge(a.anchors[i], a.anchors[(i + 1) % k])?;
        }
    } else if k == 2 {
        g.add_forbidden_edge(a.anchors[0], a.anchors[1])?;
    }
    for &x in &a.anchors {
        g.add_forbidden_edge(hub, x)?;
    }
    Ok(Augmented { graph: g, hub, original_vertices, original_edges })
}

impl Augmented {
    /// Drop the hub and boundary edges again.
    pub fn strip(&self) -> WeightedMultigraph {
        let keep: BTreeSet<VertexId> = (0..self.original_vertices).collect();
        let trimmed = self.graph.without_edges(|i, _| i >= self.original_edges);
        trimmed.induced(&keep).0
    }
}

pub fn is_anchored_planar(a: &AnchoredInstance) -> bool {
    if a.anchors.is_empty() {
        return is_planar(&a.graph).is_some();
    }
    match augment_anchored(a) {
        Ok(aug) => is_planar(&aug.graph).is_some(),
        Err(_) => false,
    }
}

/// Edge subset of `active` that is nonplanar and becomes planar after
/// removing any single non-forbidden member. Non-forbidden edges are tried
/// for deletion first, lightest first.
pub fn minimal_nonplanar_subgraph(
    g: &WeightedMultigraph,
    active: &[EdgeId],
) -> Option<Vec<EdgeId>> {
    let n = g.vertex_count();
    let ends_of = |set: &[EdgeId]| -> Vec<(VertexId, VertexId)> {
        set.iter().map(|&e| (g.edge(e).u, g.edge(e).v)).collect()
    };
    if is_planar_edges(n, &ends_of(active)) {
        return None;
    }
    let mut order: Vec<EdgeId> = active.to_vec();
    order.sort_by(|&a, &b| {
        let (ea, eb): (&Edge, &Edge) = (g.edge(a), g.edge(b));
        ea.forbidden
            .cmp(&eb.forbidden)
            .then_with(|| ea.weight.cmp(&eb.weight))
            .then(a.cmp(&b))
    });
    let mut current: BTreeSet<EdgeId> = active.iter().copied().collect();
    for e in order {
        current.remove(&e);
        let trial: Vec<EdgeId> = current.iter().copied().collect();
        if is_planar_edges(n, &ends_of(&trial)) {
            current.insert(e);
        }
    }
    Some(current.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Vec<(usize, usize)> {
        let mut e = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                e.push((i, j));
            }
        }
        e
    }

    #[test]
    fn small_complete_graphs() {
        assert!(is_planar_edges(4, &complete(4)));
        assert!(!is_planar_edges(5, &complete(5)));
        let mut k5e = complete(5);
        k5e.pop();
        assert!(is_planar_edges(5, &k5e));
    }

    #[test]
    fn k33_is_nonplanar() {
        let mut e = Vec::new();
        for i in 0..3 {
            for j in 3..6 {
                e.push((i, j));
            }
        }
        assert!(!is_planar_edges(6, &e));
        e.pop();
        assert!(is_planar_edges(6, &e));
    }

    #[test]
    fn face_counts() {
        let tri = RotationSystem { rotation: vec![vec![0, 2], vec![0, 1], vec![1, 2]] };
        let ends = [(0, 1), (1, 2), (2, 0)];
        assert_eq!(tri.faces(&ends).unwrap().len(), 2);
        let k4 = planar_embedding(4, &complete(4)).unwrap();
        assert_eq!(k4.faces(&complete(4)).unwrap().len(), 4);
        let tree = [(0, 1), (1, 2), (1, 3), (3, 4)];
        let rs = planar_embedding(5, &tree).unwrap();
        assert_eq!(rs.faces(&tree).unwrap().len(), 1);
    }

    #[test]
    fn parallel_edges_embed() {
        let ends = [(0, 1), (0, 1), (1, 2), (0, 1), (2, 0), (2, 0)];
        assert!(planar_embedding(3, &ends).is_some());
    }

    #[test]
    fn malformed_rotation_is_rejected() {
        let rs = RotationSystem { rotation: vec![vec![0], vec![]] };
        assert!(rs.faces(&[(0, 1)]).is_err());
    }
}
