//! Weighted multigraphs, anchored instances and PP (planar-pair) instances.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::OmegaPoly;

pub type VertexId = usize;
pub type EdgeId = usize;

/// Cosmetic colour tag. No algorithm branches on it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Red,
    Blue,
    #[default]
    None,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub name: String,
    pub label: Option<String>,
    pub color: Color,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub weight: OmegaPoly,
    pub label: Option<String>,
    /// Uncrossable structure (disk boundary, hub spokes, heavy cycles).
    pub forbidden: bool,
}

impl Edge {
    pub fn other(&self, x: VertexId) -> VertexId {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }

    pub fn touches(&self, x: VertexId) -> bool {
        self.u == x || self.v == x
    }

    /// Shares an endpoint with `other`.
    pub fn adjacent_to(&self, other: &Edge) -> bool {
        self.touches(other.u) || self.touches(other.v)
    }
}

/// Vertices plus multi-edges with positive `w`-polynomial weights.
///
/// Vertex ids are dense indices; names are unique strings used by the file
/// format.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeightedMultigraph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    index: HashMap<String, VertexId>,
}

impl WeightedMultigraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex(&self, v: VertexId) -> &Vertex {
        &self.vertices[v]
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e]
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.vertices[v].name
    }

    pub fn id(&self, name: &str) -> Option<VertexId> {
        self.index.get(name).copied()
    }

    /// Id of `name`, panicking on unknown names. For builders with fixed
    /// vocabularies.
    pub fn vid(&self, name: &str) -> VertexId {
        self.id(name)
            .unwrap_or_else(|| panic!("unknown vertex `{name}`"))
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> Result<VertexId> {
        self.add_vertex_with(name, None, Color::None)
    }

    pub fn add_vertex_with(
        &mut self,
        name: impl Into<String>,
        label: Option<String>,
        color: Color,
    ) -> Result<VertexId> {
        let name = name.into();
        if self.index.contains_key(&name) {
            return Err(Error::Invalid(format!("duplicate vertex id `{name}`")));
        }
        let id = self.vertices.len();
        self.index.insert(name.clone(), id);
        self.vertices.push(Vertex { name, label, color });
        Ok(id)
    }

    /// Existing id for `name`, or a fresh vertex.
    pub fn ensure_vertex(&mut self, name: &str, color: Color) -> VertexId {
        match self.id(name) {
            Some(v) => v,
            None => self.add_vertex_with(name, None, color).expect("fresh name"),
        }
    }

    pub fn set_color(&mut self, v: VertexId, color: Color) {
        self.vertices[v].color = color;
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId, weight: OmegaPoly) -> Result<EdgeId> {
        self.push_edge(Edge { u, v, weight, label: None, forbidden: false })
    }

    pub fn add_forbidden_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId> {
        self.push_edge(Edge { u, v, weight: OmegaPoly::one(), label: None, forbidden: true })
    }

    pub fn push_edge(&mut self, edge: Edge) -> Result<EdgeId> {
        if edge.u == edge.v {
            return Err(Error::Invalid(format!("loop at `{}`", self.name(edge.u))));
        }
        let n = self.vertices.len();
        if edge.u >= n || edge.v >= n {
            return Err(Error::Invalid("edge endpoint out of range".into()));
        }
        if !edge.weight.is_positive() {
            return Err(Error::Invalid(format!(
                "edge {}-{} has non-positive weight {}",
                self.name(edge.u),
                self.name(edge.v),
                edge.weight
            )));
        }
        self.edges.push(edge);
        Ok(self.edges.len() - 1)
    }

    pub fn set_edge_label(&mut self, e: EdgeId, label: impl Into<String>) {
        self.edges[e].label = Some(label.into());
    }

    pub fn set_edge_weight(&mut self, e: EdgeId, weight: OmegaPoly) {
        self.edges[e].weight = weight;
    }

    pub fn incident_edges(&self) -> Vec<Vec<EdgeId>> {
        let mut inc = vec![Vec::new(); self.vertices.len()];
        for (i, e) in self.edges.iter().enumerate() {
            inc[e.u].push(i);
            inc[e.v].push(i);
        }
        inc
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertices.len()];
        for e in &self.edges {
            d[e.u] += 1;
            d[e.v] += 1;
        }
        d
    }

    /// Total weight of all edges.
    pub fn total_weight(&self) -> OmegaPoly {
        self.edges.iter().map(|e| &e.weight).sum()
    }

    /// Connected component index per vertex.
    pub fn components(&self) -> (usize, Vec<usize>) {
        let inc = self.incident_edges();
        let mut comp = vec![usize::MAX; self.vertices.len()];
        let mut count = 0;
        for s in 0..self.vertices.len() {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = count;
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for &e in &inc[x] {
                    let y = self.edges[e].other(x);
                    if comp[y] == usize::MAX {
                        comp[y] = count;
                        stack.push(y);
                    }
                }
            }
            count += 1;
        }
        (count, comp)
    }

    /// Induced subgraph on `keep`, with a map from old to new vertex ids.
    pub fn induced(&self, keep: &BTreeSet<VertexId>) -> (WeightedMultigraph, HashMap<VertexId, VertexId>) {
        let mut g = WeightedMultigraph::new();
        let mut map = HashMap::new();
        for &v in keep {
            let vx = &self.vertices[v];
            let nv = g
                .add_vertex_with(vx.name.clone(), vx.label.clone(), vx.color)
                .expect("unique names");
            map.insert(v, nv);
        }
        for e in &self.edges {
            if let (Some(&a), Some(&b)) = (map.get(&e.u), map.get(&e.v)) {
                g.push_edge(Edge { u: a, v: b, ..e.clone() }).expect("valid edge");
            }
        }
        (g, map)
    }

    /// Copy of the graph without the edges for which `drop` is true.
    pub fn without_edges(&self, drop: impl Fn(EdgeId, &Edge) -> bool) -> WeightedMultigraph {
        let mut g = WeightedMultigraph {
            vertices: self.vertices.clone(),
            edges: Vec::new(),
            index: self.index.clone(),
        };
        for (i, e) in self.edges.iter().enumerate() {
            if !drop(i, e) {
                g.edges.push(e.clone());
            }
        }
        g
    }

    /// Replace edge `e` by a path through a fresh vertex `name`; the two
    /// halves keep the weight. Returns (new vertex, edge u-x, edge x-v); the
    /// first half reuses id `e`.
    pub fn subdivide_edge(&mut self, e: EdgeId, name: impl Into<String>) -> Result<(VertexId, EdgeId, EdgeId)> {
        let color = self.vertices[self.edges[e].u].color;
        let x = self.add_vertex_with(name, None, color)?;
        let old = self.edges[e].clone();
        self.edges[e].v = x;
        let second = self.push_edge(Edge { u: x, v: old.v, ..old })?;
        Ok((x, e, second))
    }
}

/// Replace every edge of evaluated weight `t` by `t` parallel unit edges.
/// Forbidden edges are copied unchanged.
pub fn expand_weights(g: &WeightedMultigraph, omega: u64) -> Result<WeightedMultigraph> {
    if omega == 0 {
        return Err(Error::Invalid("omega must be positive".into()));
    }
    let mut out = WeightedMultigraph { edges: Vec::new(), ..g.clone() };
    for (i, e) in g.edges.iter().enumerate() {
        if e.forbidden {
            out.edges.push(e.clone());
            continue;
        }
        let value = e.weight.eval_u64(omega);
        let name = || format!("edge {i} ({}-{})", g.name(e.u), g.name(e.v));
        if !value.is_integer() || !value.is_positive() {
            return Err(Error::Eval(format!("{} has weight {} at omega = {omega}", name(), value)));
        }
        let t = value.to_integer().to_u64().ok_or_else(|| Error::Limit(format!("{} is too heavy to expand", name())))?;
        for _ in 0..t {
            out.edges.push(Edge { weight: OmegaPoly::one(), ..e.clone() });
        }
    }
    Ok(out)
}

/// A graph plus a cyclic sequence of distinct anchor vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnchoredInstance {
    pub graph: WeightedMultigraph,
    pub anchors: Vec<VertexId>,
}

impl AnchoredInstance {
    pub fn new(graph: WeightedMultigraph, anchors: Vec<VertexId>) -> Result<Self> {
        let inst = Self { graph, anchors };
        inst.check()?;
        Ok(inst)
    }

    pub fn check(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for &a in &self.anchors {
            if a >= self.graph.vertex_count() {
                return Err(Error::Invalid("anchor is not a vertex".into()));
            }
            if !seen.insert(a) {
                return Err(Error::Invalid(format!("anchor `{}` repeated", self.graph.name(a))));
            }
        }
        Ok(())
    }

    /// Anchors restricted to `part`, in cyclic order.
    pub fn anchors_in(&self, part: &BTreeSet<VertexId>) -> Vec<VertexId> {
        self.anchors.iter().copied().filter(|a| part.contains(a)).collect()
    }

    /// The anchored sub-instance induced by `part`.
    pub fn restrict(&self, part: &BTreeSet<VertexId>) -> (AnchoredInstance, HashMap<VertexId, VertexId>) {
        let (g, map) = self.graph.induced(part);
        let anchors = self.anchors_in(part).iter().map(|a| map[a]).collect();
        (AnchoredInstance { graph: g, anchors }, map)
    }
}

/// An anchored instance split into two parts that are individually
/// anchored planar and share no edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PPInstance {
    pub base: AnchoredInstance,
    pub part1: BTreeSet<VertexId>,
    pub part2: BTreeSet<VertexId>,
}

impl PPInstance {
    pub fn graph(&self) -> &WeightedMultigraph {
        &self.base.graph
    }

    pub fn part_of(&self, v: VertexId) -> Option<u8> {
        match (self.part1.contains(&v), self.part2.contains(&v)) {
            (true, false) => Some(1),
            (false, true) => Some(2),
            (true, true) => Some(0),
            _ => None,
        }
    }

    pub fn parts(&self) -> [&BTreeSet<VertexId>; 2] {
        [&self.part1, &self.part2]
    }
}

/// Signed literal: positive = variable true.
pub type Literal = i32;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CnfFormula {
    pub num_vars: usize,
    pub clauses: Vec<Vec<Literal>>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Vec<Literal>>) -> Result<Self> {
        let f = Self { num_vars, clauses };
        f.check()?;
        Ok(f)
    }

    pub fn check(&self) -> Result<()> {
        for (i, c) in self.clauses.iter().enumerate() {
            if c.is_empty() {
                return Err(Error::Invalid(format!("clause {} is empty", i + 1)));
            }
            for &l in c {
                if l == 0 || l.unsigned_abs() as usize > self.num_vars {
                    return Err(Error::Invalid(format!("clause {} has bad literal {l}", i + 1)));
                }
            }
        }
        Ok(())
    }

    /// Evaluate under `assignment[v-1]`.
    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|c| c.iter().any(|&l| lit_true(l, assignment)))
    }

    /// Brute-force satisfiability, for small formulas only.
    pub fn brute_force_satisfiable(&self) -> Option<Vec<bool>> {
        assert!(self.num_vars <= 24, "brute force limited to 24 variables");
        (0u64..1 << self.num_vars).find_map(|mask| {
            let a: Vec<bool> = (0..self.num_vars).map(|i| mask >> i & 1 == 1).collect();
            self.satisfied_by(&a).then_some(a)
        })
    }
}

pub fn lit_true(l: Literal, assignment: &[bool]) -> bool {
    let v = assignment[l.unsigned_abs() as usize - 1];
    if l > 0 {
        v
    } else {
        !v
    }
}

impl fmt::Display for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "p cnf {} {}", self.num_vars, self.clauses.len())?;
        for c in &self.clauses {
            for l in c {
                write!(f, "{l} ")?;
            }
            writeln!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_loops_and_bad_weights() {
        let mut g = WeightedMultigraph::new();
        let a = g.add_vertex("a").unwrap();
        let b = g.add_vertex("b").unwrap();
        assert!(g.add_edge(a, a, OmegaPoly::one()).is_err());
        assert!(g.add_edge(a, b, OmegaPoly::zero()).is_err());
        assert!(g.add_edge(a, b, -OmegaPoly::one()).is_err());
        assert!(g.add_edge(a, b, OmegaPoly::pow(3) - OmegaPoly::pow(1)).is_ok());
        assert!(g.add_vertex("a").is_err());
    }

    #[test]
    fn anchors_must_be_distinct() {
        let mut g = WeightedMultigraph::new();
        let a = g.add_vertex("a").unwrap();
        assert!(AnchoredInstance::new(g.clone(), vec![a, a]).is_err());
        assert!(AnchoredInstance::new(g, vec![a]).is_ok());
    }

    #[test]
    fn subdivision_keeps_weight() {
        let mut g = WeightedMultigraph::new();
        let a = g.add_vertex("a").unwrap();
        let b = g.add_vertex("b").unwrap();
        let e = g.add_edge(a, b, OmegaPoly::constant(3)).unwrap();
        let (x, e1, e2) = g.subdivide_edge(e, "x").unwrap();
        assert_eq!(g.edge(e1).v, x);
        assert_eq!(g.edge(e2).u, x);
        assert_eq!(g.edge(e2).weight, OmegaPoly::constant(3));
    }

    #[test]
    fn cnf_checks() {
        assert!(CnfFormula::new(2, vec![vec![]]).is_err());
        assert!(CnfFormula::new(2, vec![vec![3]]).is_err());
        let f = CnfFormula::new(2, vec![vec![1, -2]]).unwrap();
        assert!(f.brute_force_satisfiable().is_some());
        let unsat = CnfFormula::new(1, vec![vec![1], vec![-1]]).unwrap();
        assert!(unsat.brute_force_satisfiable().is_none());
    }
}
