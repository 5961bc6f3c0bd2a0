//! From anchored instances to almost planar graphs: a heavy multicycle on the
//! anchors, one extra edge between the parts, and cylindrical walls in place
//! of high-degree vertices.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::drawing::Planarization;
use crate::error::{Error, Result};
use crate::graph::{AnchoredInstance, Color, Edge, EdgeId, PPInstance, VertexId, WeightedMultigraph};
use crate::planarity::{self, edge_ends, RotationSystem};
use crate::poly::OmegaPoly;
use crate::solver::{anchored_crossing_number_exact, crossing_number_exact, SolveOptions};

/// Cylindrical wall: cycles C1..Ch of length l, rung v^i_j v^{i+1}_j when
/// i + j is odd. C1 is the outer cycle.
#[derive(Clone, Debug)]
pub struct Wall {
    pub h: usize,
    pub l: usize,
    pub graph: WeightedMultigraph,
}

fn check_wall(h: usize, l: usize) -> Result<()> {
    if h == 0 {
        return Err(Error::Invalid("wall height must be positive".into()));
    }
    if l < 4 || l % 2 == 1 {
        return Err(Error::Invalid(format!("wall length must be even and at least 4, got {l}")));
    }
    Ok(())
}

/// Edges of the wall as pairs of 1-based (row, column) positions.
fn wall_edges(h: usize, l: usize) -> Vec<((usize, usize), (usize, usize))> {
    let mut out = Vec::new();
    for i in 1..=h {
        for j in 1..=l {
            out.push(((i, j), (i, j % l + 1)));
        }
    }
    for i in 1..h {
        for j in (1..=l).filter(|j| (i + j) % 2 == 1) {
            out.push(((i, j), (i + 1, j)));
        }
    }
    out
}

pub fn build_wall(h: usize, l: usize) -> Result<Wall> {
    check_wall(h, l)?;
    let mut g = WeightedMultigraph::new();
    for i in 1..=h {
        for j in 1..=l {
            g.add_vertex(format!("v{i}_{j}"))?;
        }
    }
    for (a, b) in wall_edges(h, l) {
        g.add_edge((a.0 - 1) * l + a.1 - 1, (b.0 - 1) * l + b.1 - 1, OmegaPoly::one())?;
    }
    Ok(Wall { h, l, graph: g })
}

impl Wall {
    /// Vertex v^i_j, 1-based.
    pub fn vertex(&self, i: usize, j: usize) -> VertexId {
        (i - 1) * self.l + j - 1
    }

    /// The degree-2 vertices of C1 in cyclic order.
    pub fn outer_ports(&self) -> Vec<VertexId> {
        (1..=self.l).step_by(2).map(|j| self.vertex(1, j)).collect()
    }
}

/// Per-vertex rotations of an anchored drawing restricted to its own edges.
/// At an anchor the list runs from the side of the boundary edge towards
/// the next anchor to the side of the edge towards the previous one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnchoredRotations {
    pub rotation: Vec<Vec<EdgeId>>,
}

/// The instance with the anchors joined by a cycle (a 2-cycle for two
/// anchors) and a hub joined to each anchor. Returns the cycle edges, where
/// `cyc[i]` runs from anchor i to anchor i+1, and the hub edges.
fn bounded(a: &AnchoredInstance) -> Result<(WeightedMultigraph, Vec<EdgeId>, Vec<EdgeId>)> {
    let mut g = a.graph.clone();
    let mut name = String::from("__hub");
    while g.id(&name).is_some() {
        name.push('_');
    }
    let hub = g.add_vertex_with(name, None, Color::None)?;
    let k = a.anchors.len();
    let mut cyc = Vec::new();
    if k >= 2 {
        for i in 0..k {
            cyc.push(g.add_forbidden_edge(a.anchors[i], a.anchors[(i + 1) % k])?);
        }
    }
    let hubs = a.anchors.iter().map(|&x| g.add_forbidden_edge(hub, x)).collect::<Result<_>>()?;
    Ok((g, cyc, hubs))
}

/// Normalized rotations of the anchored drawing `p` of `a`.
fn anchored_rotations(a: &AnchoredInstance, p: &Planarization) -> Result<Vec<Vec<EdgeId>>> {
    let m = a.graph.edge_count();
    if p.crossings.len() != m {
        return Err(Error::Invalid("drawing does not match the instance".into()));
    }
    let (g, cyc, hubs) = bounded(a)?;
    let mut full = p.clone();
    full.crossings.resize(g.edge_count(), Vec::new());
    full.check_structure(&g)?;
    let (d, rs) = full.embedding(&g).ok_or_else(|| Error::Invalid("not an anchored drawing".into()))?;
    let mut rot: Vec<Vec<EdgeId>> = rs.rotation[..a.graph.vertex_count()]
        .iter()
        .map(|r| r.iter().map(|&s| d.origin[s]).collect())
        .collect();
    let k = a.anchors.len();
    let mut mirrored = None;
    for (i, &x) in a.anchors.iter().enumerate() {
        let r = &rot[x];
        let hub_at = r.iter().position(|&e| e == hubs[i]).expect("hub edge at its anchor");
        let wedge: Vec<EdgeId> = if k >= 2 {
            let next = r.iter().position(|&e| e == cyc[i]).expect("cycle edge at its anchor");
            let prev = r.iter().position(|&e| e == cyc[(i + k - 1) % k]).expect("cycle edge at its anchor");
            let len = r.len();
            let from_next = |t: usize| (t + len - next) % len;
            let flip = from_next(hub_at) < from_next(prev);
            if *mirrored.get_or_insert(flip) != flip {
                return Err(Error::Invalid("anchor rotations disagree on orientation".into()));
            }
            let mut w: Vec<EdgeId> = (1..len).map(|t| r[(next + t) % len]).filter(|&e| e < m).collect();
            if flip {
                w.reverse();
            }
            w
        } else {
            (1..r.len()).map(|t| r[(hub_at + t) % r.len()]).collect()
        };
        rot[x] = wedge;
    }
    for (v, r) in rot.iter_mut().enumerate() {
        if mirrored == Some(true) && !a.anchors.contains(&v) {
            r.reverse();
        }
        r.retain(|&e| e < m);
    }
    Ok(rot)
}

impl AnchoredRotations {
    /// Rotations of an anchored drawing of the whole instance, such as an
    /// optimal witness.
    pub fn from_drawing(pp: &PPInstance, p: &Planarization) -> Result<Self> {
        Ok(AnchoredRotations { rotation: anchored_rotations(&pp.base, p)? })
    }

    /// Independent anchored planar drawings of the two parts.
    pub fn from_parts(pp: &PPInstance) -> Result<Self> {
        let g = pp.graph();
        let mut rotation = vec![Vec::new(); g.vertex_count()];
        for part in [&pp.part2, &pp.part1] {
            let (sub, map) = pp.base.restrict(part);
            let back: BTreeMap<VertexId, VertexId> = map.iter().map(|(&o, &n)| (n, o)).collect();
            let edges: Vec<EdgeId> =
                (0..g.edge_count()).filter(|&e| part.contains(&g.edge(e).u) && part.contains(&g.edge(e).v)).collect();
            let rot = anchored_rotations(&sub, &Planarization::empty(sub.graph.edge_count()))
                .map_err(|_| Error::Invalid("a part is not anchored planar".into()))?;
            for (nv, r) in rot.into_iter().enumerate() {
                rotation[back[&nv]].extend(r.into_iter().map(|e| edges[e]));
            }
        }
        Ok(AnchoredRotations { rotation })
    }

    fn wedge(&self, v: VertexId) -> &[EdgeId] {
        &self.rotation[v]
    }
}

/// The instance after subdividing one edge of each part.
#[derive(Clone, Debug)]
pub struct Subdivided {
    pub instance: PPInstance,
    pub rotations: AnchoredRotations,
    /// Subdivision vertex in part 1 and in part 2.
    pub v1: VertexId,
    pub v2: VertexId,
    /// The subdivided edges, by their ids in the original instance.
    pub e1: EdgeId,
    pub e2: EdgeId,
}

fn fresh_name(g: &WeightedMultigraph, base: &str) -> String {
    let mut name = base.to_string();
    while g.id(&name).is_some() {
        name.push('\'');
    }
    name
}

/// Subdivide `e` and keep the rotations in step.
fn subdivide(g: &mut WeightedMultigraph, rot: &mut Vec<Vec<EdgeId>>, e: EdgeId, name: &str) -> Result<VertexId> {
    let far = g.edge(e).v;
    let name = fresh_name(g, name);
    let (x, first, second) = g.subdivide_edge(e, name)?;
    for id in rot[far].iter_mut().filter(|id| **id == e) {
        *id = second;
    }
    rot.push(vec![first, second]);
    debug_assert_eq!(rot.len(), x + 1);
    Ok(x)
}

/// Picks consecutive anchors `a`, `a'` owned by different parts and the
/// edges closest to the boundary between them; these share the face along
/// that boundary arc in every drawing with these rotations. Both edges are
/// subdivided.
pub fn choose_and_subdivide(pp: &PPInstance, rot: &AnchoredRotations) -> Result<Subdivided> {
    let g = pp.graph();
    if rot.rotation.len() != g.vertex_count() {
        return Err(Error::Invalid("rotations do not match the instance".into()));
    }
    let anchors = &pp.base.anchors;
    let k = anchors.len();
    let mut tried = Vec::new();
    let mut pick = None;
    for i in 0..k {
        let (a, b) = (anchors[i], anchors[(i + 1) % k]);
        let (pa, pb) = (pp.part_of(a), pp.part_of(b));
        let (wa, wb) = (rot.wedge(a), rot.wedge(b));
        tried.push(format!("{}..{}", g.name(a), g.name(b)));
        if let (Some(x @ (1 | 2)), Some(y @ (1 | 2)), Some(&ea), Some(&eb)) = (pa, pb, wa.first(), wb.last()) {
            if x != y {
                pick = Some(if x == 1 { (ea, eb) } else { (eb, ea) });
                break;
            }
        }
    }
    let Some((e1, e2)) = pick else {
        return Err(Error::Invalid(format!(
            "no boundary face is shared by the two parts; checked arcs {}",
            tried.join(", ")
        )));
    };
    let mut graph = g.clone();
    let mut rotation = rot.rotation.clone();
    let v1 = subdivide(&mut graph, &mut rotation, e1, "f1")?;
    let v2 = subdivide(&mut graph, &mut rotation, e2, "f2")?;
    let mut instance = PPInstance { base: AnchoredInstance::new(graph, anchors.clone())?, ..pp.clone() };
    instance.part1.insert(v1);
    instance.part2.insert(v2);
    Ok(Subdivided { instance, rotations: AnchoredRotations { rotation }, v1, v2, e1, e2 })
}

/// H plus a cycle of weight-`m` edges through the anchors in order. The
/// edges of H keep their ids; cycle edge i joins anchor i to anchor i+1.
pub fn add_multicycle(pp: &PPInstance, m: u64) -> Result<WeightedMultigraph> {
    let anchors = &pp.base.anchors;
    if anchors.len() < 3 {
        return Err(Error::Invalid(format!("the multicycle needs 3 anchors, found {}", anchors.len())));
    }
    if m == 0 {
        return Err(Error::Invalid("multicycle weight must be positive".into()));
    }
    let mut g = pp.graph().clone();
    for i in 0..anchors.len() {
        let e = g.add_edge(anchors[i], anchors[(i + 1) % anchors.len()], OmegaPoly::constant(m as i64))?;
        g.set_edge_label(e, "C+");
    }
    Ok(g)
}

/// Default multicycle weight 2|E(H1)||E(H2)|.
pub fn default_m(pp: &PPInstance) -> u64 {
    let g = pp.graph();
    let inside = |part: &BTreeSet<VertexId>| g.edges().iter().filter(|e| part.contains(&e.u) && part.contains(&e.v)).count();
    (2 * inside(&pp.part1) * inside(&pp.part2)) as u64
}

/// Planar rotation system of `g0 = add_multicycle(pp, _)` with part 2
/// inside the cycle as drawn and part 1 mirrored outside it.
pub fn flipped_embedding(g0: &WeightedMultigraph, pp: &PPInstance, rot: &AnchoredRotations) -> Result<RotationSystem> {
    let anchors = &pp.base.anchors;
    let k = anchors.len();
    let base = pp.graph().edge_count();
    if g0.edge_count() != base + k || rot.rotation.len() != pp.graph().vertex_count() {
        return Err(Error::Invalid("graph is not the multicycle extension of the instance".into()));
    }
    let g = pp.graph();
    let side = |e: EdgeId, part: &BTreeSet<VertexId>| part.contains(&g.edge(e).u) && part.contains(&g.edge(e).v);
    let mut rotation: Vec<Vec<EdgeId>> = rot
        .rotation
        .iter()
        .enumerate()
        .map(|(v, r)| if pp.part_of(v) == Some(1) { r.iter().rev().copied().collect() } else { r.clone() })
        .collect();
    for (i, &a) in anchors.iter().enumerate() {
        let w = rot.wedge(a);
        let mut r = vec![base + i];
        r.extend(w.iter().filter(|&&e| side(e, &pp.part2)));
        r.push(base + (i + k - 1) % k);
        r.extend(w.iter().rev().filter(|&&e| side(e, &pp.part1)));
        rotation[a] = r;
    }
    let rs = RotationSystem { rotation };
    if !rs.is_planar_embedding(&edge_ends(g0)) {
        return Err(Error::Invalid("the flipped rotation system is not planar".into()));
    }
    Ok(rs)
}

/// Result of replacing vertices by walls. Edge e of the input keeps id e.
#[derive(Clone, Debug)]
pub struct BlowUp {
    pub graph: WeightedMultigraph,
    /// Input vertex to output vertex, `None` when blown up.
    pub vertex_map: Vec<Option<VertexId>>,
    /// Wall ports of every blown-up vertex, in rotation order.
    pub ports: BTreeMap<VertexId, Vec<VertexId>>,
}

fn blown(g0: &WeightedMultigraph, protected: &BTreeSet<VertexId>) -> Vec<bool> {
    g0.degrees().iter().enumerate().map(|(v, &d)| d > 3 && !protected.contains(&v)).collect()
}

/// Vertex and edge counts of `blow_up` without building it.
pub fn blow_up_size(g0: &WeightedMultigraph, protected: &BTreeSet<VertexId>, h: usize) -> (u128, u128) {
    let deg = g0.degrees();
    let (mut n, mut m) = (g0.vertex_count() as u128, g0.edge_count() as u128);
    for (v, b) in blown(g0, protected).into_iter().enumerate() {
        if b {
            let l = 2 * deg[v] as u128;
            let h = h as u128;
            n += h * l - 1;
            m += h * l + (h - 1) * l / 2;
        }
    }
    (n, m)
}

/// Replace every unprotected vertex of degree d > 3 by a wall of height `h`
/// and length 2d, attaching its edges to the outer ports in rotation order.
pub fn blow_up(g0: &WeightedMultigraph, rs: &RotationSystem, protected: &BTreeSet<VertexId>, h: usize) -> Result<BlowUp> {
    let ends = edge_ends(g0);
    if rs.rotation.len() != g0.vertex_count() || !rs.is_planar_embedding(&ends) {
        return Err(Error::Invalid("rotation system is not a planar embedding of the graph".into()));
    }
    let is_blown = blown(g0, protected);
    if is_blown.iter().any(|&b| b) {
        check_wall(h, 8)?;
    }
    let mut g = WeightedMultigraph::new();
    let mut vertex_map = vec![None; g0.vertex_count()];
    for (v, vx) in g0.vertices().iter().enumerate() {
        if !is_blown[v] {
            vertex_map[v] = Some(g.add_vertex_with(vx.name.clone(), vx.label.clone(), vx.color)?);
        }
    }
    let mut grids = BTreeMap::new();
    let mut ports = BTreeMap::new();
    for v in (0..g0.vertex_count()).filter(|&v| is_blown[v]) {
        let l = 2 * rs.rotation[v].len();
        let vx = g0.vertex(v);
        let mut ids = Vec::with_capacity(h * l);
        for i in 1..=h {
            for j in 1..=l {
                ids.push(g.add_vertex_with(format!("{}#{i}_{j}", vx.name), None, vx.color)?);
            }
        }
        ports.insert(v, (0..l).step_by(2).map(|j| ids[j]).collect::<Vec<_>>());
        grids.insert(v, (l, ids));
    }
    let mut slot: Vec<[Option<VertexId>; 2]> = vec![[None, None]; g0.edge_count()];
    for (&v, list) in &ports {
        for (&e, &p) in rs.rotation[v].iter().zip(list) {
            slot[e][usize::from(ends[e].0 != v)] = Some(p);
        }
    }
    for (e, edge) in g0.edges().iter().enumerate() {
        let u = slot[e][0].or(vertex_map[edge.u]).expect("every endpoint is mapped");
        let v = slot[e][1].or(vertex_map[edge.v]).expect("every endpoint is mapped");
        g.push_edge(Edge { u, v, ..edge.clone() })?;
    }
    for (_, (l, ids)) in grids {
        for (a, b) in wall_edges(h, l) {
            let e = g.add_edge(ids[(a.0 - 1) * l + a.1 - 1], ids[(b.0 - 1) * l + b.1 - 1], OmegaPoly::one())?;
            g.set_edge_label(e, "wall");
        }
    }
    Ok(BlowUp { graph: g, vertex_map, ports })
}

#[derive(Clone, Debug, Default)]
pub struct TransformOptions {
    pub m: Option<u64>,
    pub h: Option<usize>,
    /// Allow parameters below the defaults; the inequalities m/2 > cr_A(H)
    /// and h/2 > cr(G0 + f) are then checked with the exact solver.
    pub scaled: bool,
    /// Refuse to build graphs with more vertices than this.
    pub max_vertices: Option<u128>,
    pub solve: SolveOptions,
}

/// Every stage except the wall materialization.
#[derive(Clone, Debug)]
pub struct TransformPlan {
    pub subdivided: Subdivided,
    pub g0: WeightedMultigraph,
    pub embedding: RotationSystem,
    pub protected: BTreeSet<VertexId>,
    pub m: u64,
    pub h: usize,
    pub scaled: bool,
    /// Vertex and edge counts of the final graph.
    pub size: (u128, u128),
}

#[derive(Clone, Debug)]
pub struct AlmostPlanarInstance {
    /// Planar; the pair (u, v) is not joined.
    pub graph: WeightedMultigraph,
    pub u: VertexId,
    pub v: VertexId,
    pub source: PPInstance,
    pub m: u64,
    pub h: usize,
    /// Parameters below the defaults.
    pub scaled: bool,
    pub protected: Vec<VertexId>,
}

impl AlmostPlanarInstance {
    /// G + uv with a unit edge appended.
    pub fn with_edge(&self) -> WeightedMultigraph {
        let mut g = self.graph.clone();
        g.add_edge(self.u, self.v, OmegaPoly::one()).expect("u and v are distinct");
        g
    }

    pub fn check(&self) -> Result<()> {
        if planarity::is_planar(&self.graph).is_none() {
            return Err(Error::Invalid("G is not planar".into()));
        }
        if self.graph.edges().iter().any(|e| e.touches(self.u) && e.touches(self.v)) {
            return Err(Error::Invalid("u and v are already adjacent".into()));
        }
        let high: Vec<VertexId> = self.graph.degrees().iter().enumerate().filter(|(_, &d)| d > 3).map(|(v, _)| v).collect();
        if high.len() > 3 || high.iter().any(|v| !self.protected.contains(v)) {
            return Err(Error::Invalid(format!("{} vertices of degree above 3", high.len())));
        }
        Ok(())
    }
}

pub fn default_h(g0: &WeightedMultigraph) -> usize {
    g0.edge_count() * g0.edge_count()
}

pub fn plan_almost_planar(pp: &PPInstance, rot: &AnchoredRotations, opts: &TransformOptions) -> Result<TransformPlan> {
    let sub = choose_and_subdivide(pp, rot)?;
    let m_default = default_m(&sub.instance);
    let m = opts.m.unwrap_or(m_default);
    let g0 = add_multicycle(&sub.instance, m)?;
    let h_default = default_h(&g0);
    let h = opts.h.unwrap_or(h_default);
    if !opts.scaled && (m < m_default || h < h_default) {
        return Err(Error::Invalid(format!(
            "m = {m} and h = {h} are below the defaults {m_default} and {h_default}; pass the scaled option"
        )));
    }
    let embedding = flipped_embedding(&g0, &sub.instance, &sub.rotations)?;
    let protected: BTreeSet<VertexId> = sub.instance.base.anchors_in(&sub.instance.part1).into_iter().collect();
    let size = blow_up_size(&g0, &protected, h);
    let scaled = m < m_default || h < h_default;
    Ok(TransformPlan { subdivided: sub, g0, embedding, protected, m, h, scaled, size })
}

impl TransformPlan {
    /// G0 + f.
    pub fn g0_with_edge(&self) -> WeightedMultigraph {
        let mut g = self.g0.clone();
        g.add_edge(self.subdivided.v1, self.subdivided.v2, OmegaPoly::one()).expect("distinct vertices");
        g
    }

    /// Exact checks of m/2 > cr_A(H) and, when some vertex is replaced by a
    /// wall, h/2 > cr(G0 + f).
    pub fn check_scaled(&self, opts: &SolveOptions) -> Result<()> {
        let cra = anchored_crossing_number_exact(&self.subdivided.instance.base, opts)?;
        let cra = cra.optimal_value().ok_or_else(|| Error::Limit("cr_A(H) was not solved".into()))?.clone();
        if OmegaPoly::constant(self.m as i64) <= &OmegaPoly::constant(2) * &cra {
            return Err(Error::Invalid(format!("m = {} does not exceed 2 cr_A(H) = 2({cra})", self.m)));
        }
        if !blown(&self.g0, &self.protected).contains(&true) {
            return Ok(());
        }
        let cr0 = crossing_number_exact(&self.g0_with_edge(), opts);
        let cr0 = cr0.optimal_value().ok_or_else(|| Error::Limit("cr(G0 + f) was not solved".into()))?.clone();
        if OmegaPoly::constant(self.h as i64) <= &OmegaPoly::constant(2) * &cr0 {
            return Err(Error::Invalid(format!("h = {} does not exceed 2 cr(G0 + f) = 2({cr0})", self.h)));
        }
        Ok(())
    }

    pub fn build(&self) -> Result<AlmostPlanarInstance> {
        let blow = blow_up(&self.g0, &self.embedding, &self.protected, self.h)?;
        let map = |v: VertexId| blow.vertex_map[v].expect("subdivision vertices have degree 2");
        let inst = AlmostPlanarInstance {
            graph: blow.graph,
            u: map(self.subdivided.v1),
            v: map(self.subdivided.v2),
            source: self.subdivided.instance.clone(),
            m: self.m,
            h: self.h,
            scaled: self.scaled,
            protected: self.protected.iter().map(|&v| map(v)).collect(),
        };
        inst.check()?;
        Ok(inst)
    }
}

/// The full pipeline: subdivide, add the multicycle, flip part 1 out,
/// blow up.
pub fn almost_planar_instance(pp: &PPInstance, rot: &AnchoredRotations, opts: &TransformOptions) -> Result<AlmostPlanarInstance> {
    let plan = plan_almost_planar(pp, rot, opts)?;
    if let Some(max) = opts.max_vertices {
        if plan.size.0 > max {
            return Err(Error::Limit(format!("the result would have {} vertices (limit {max})", plan.size.0)));
        }
    }
    if opts.scaled {
        plan.check_scaled(&opts.solve)?;
    }
    plan.build()
}
