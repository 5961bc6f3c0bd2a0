//! The satisfiability gadget H = H1 ∪ H2.
//!
//! H1 is the red Q grid. H2 is a blue lattice of (2k+1) x (2k+1) vertices
//! anchored at its corners, plus the heavy path R through the diagonal
//! cells. Cell (i, j) is crossed by row Q^1_i and by the column pair of
//! variable j; the column runs in the right half of the cell for true and
//! the left half for false.
//!
//! Every clause row enters on the upper track and leaves on the lower
//! one, so it switches tracks once by crossing a middle lattice line. A
//! switch inside the strip between Q^3_j and Q^2_j uses a light row edge;
//! a middle-line segment is light when the clause has a literal of
//! variable j whose sign matches the half. Both lights combine only when
//! the literal is true.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;

use crate::drawing::Planarization;
use crate::error::{Error, Result};
use crate::frame::{gamma, normal_drawing, Frame};
use crate::geometry::{Point, PolylineDrawing};
use crate::graph::{lit_true, AnchoredInstance, CnfFormula, Color, EdgeId, PPInstance, VertexId, WeightedMultigraph};
use crate::io::{Document, Features};
use crate::poly::OmegaPoly;
use crate::pp::validate_pp_with;
use crate::qgrid::{add_q_grid, QPath, RowKind};

/// Side of a cell. `Right` encodes true.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Half {
    Right,
    Left,
}

impl Half {
    pub fn of(value: bool) -> Half {
        if value {
            Half::Right
        } else {
            Half::Left
        }
    }
}

/// A formula with k variables and k-1 clauses, plus where the original
/// variables and clauses went.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PaddedFormula {
    pub formula: CnfFormula,
    /// Column of original variable v at index v-1.
    pub var_column: Vec<usize>,
    /// Row of original clause c at index c-1.
    pub clause_row: Vec<usize>,
}

impl PaddedFormula {
    pub fn k(&self) -> usize {
        self.formula.num_vars
    }

    /// Assignment of the padded formula: dummies true, the rest copied.
    pub fn lift(&self, assignment: &[bool]) -> Vec<bool> {
        let mut out = vec![true; self.k()];
        for (v, &col) in self.var_column.iter().enumerate() {
            out[col - 1] = assignment[v];
        }
        out
    }
}

/// Smallest k accepted by [`pad_formula_to`].
pub fn min_padded_k(phi: &CnfFormula) -> usize {
    (2 * phi.num_vars).max(2 * phi.clauses.len()).max(2)
}

pub fn pad_formula(phi: &CnfFormula) -> Result<PaddedFormula> {
    pad_formula_to(phi, min_padded_k(phi))
}

/// Odd variables are all-true dummies and even rows hold the dummy clause
/// (y1). Original variable v becomes y_{2v}, original clause c becomes row
/// 2c-1; spare slots get more dummies.
pub fn pad_formula_to(phi: &CnfFormula, k: usize) -> Result<PaddedFormula> {
    phi.check()?;
    let min = min_padded_k(phi);
    if k < min {
        return Err(Error::Invalid(format!("invalid padding: k = {k} is below {min}")));
    }
    let lift = |l: i32| l.signum() * 2 * l.abs();
    let clauses = (1..k)
        .map(|r| match phi.clauses.get((r - 1) / 2) {
            Some(c) if r % 2 == 1 => c.iter().map(|&l| lift(l)).collect(),
            _ => vec![1],
        })
        .collect();
    Ok(PaddedFormula {
        formula: CnfFormula::new(k, clauses)?,
        var_column: (1..=phi.num_vars).map(|v| 2 * v).collect(),
        clause_row: (1..=phi.clauses.len()).map(|c| 2 * c - 1).collect(),
    })
}

/// Where a clause row switches tracks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RowRoute {
    pub column: usize,
    pub half: Half,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CmInstance {
    pub k: usize,
    pub formula: CnfFormula,
    /// Concrete w, or `None` for symbolic weights.
    pub w: Option<BigInt>,
    /// Weights are polynomials in w.
    pub instance: PPInstance,
    /// a_1 .. a_4k.
    pub a: Vec<VertexId>,
    pub b: VertexId,
    pub b_prime: VertexId,
    pub q: Vec<QPath>,
    pub r: Vec<EdgeId>,
    pub rows: Vec<RowKind>,
}

const S: i64 = 100;

fn w_pow(e: u32) -> OmegaPoly {
    OmegaPoly::pow(e)
}

fn lattice_name(k: usize, x: usize, y: usize) -> String {
    match (x, y) {
        (0, 0) => "b".into(),
        (x, y) if x == 2 * k && y == 2 * k => "b'".into(),
        (0, y) if y == 2 * k => "tr".into(),
        (x, 0) if x == 2 * k => "bl".into(),
        _ => format!("h_{x}_{y}"),
    }
}

/// Appends `route` as a path of edges of weight `weight`.
pub fn insert_heavy_path(g: &mut WeightedMultigraph, route: &[VertexId], weight: &OmegaPoly) -> Result<Vec<EdgeId>> {
    if route.len() < 2 {
        return Err(Error::Invalid("malformed route: fewer than two vertices".into()));
    }
    if let Some(&v) = route.iter().find(|&&v| v >= g.vertex_count()) {
        return Err(Error::Invalid(format!("malformed route: unknown vertex {v}")));
    }
    let distinct: BTreeSet<_> = route.iter().collect();
    if distinct.len() != route.len() {
        return Err(Error::Invalid("malformed route: repeated vertex".into()));
    }
    route.windows(2).map(|p| g.add_edge(p[0], p[1], weight.clone())).collect()
}

impl CmInstance {
    pub fn graph(&self) -> &WeightedMultigraph {
        self.instance.graph()
    }

    fn x(&self, lx: usize) -> i64 {
        (2 * self.k - lx) as i64 * S
    }

    fn half_left(&self, j: usize, h: Half) -> i64 {
        match h {
            Half::Right => self.x(2 * j - 1),
            Half::Left => self.x(2 * j),
        }
    }

    fn track(&self, i: usize, upper: bool) -> i64 {
        (2 * i as i64 - 2) * S + 50 + if upper { S } else { 0 }
    }

    /// Middle-line segment weight of column `j`, half `h`, on lattice line
    /// `y`. Line 2i-1 carries the literals of row i with matching sign,
    /// line 2i-2 the opposite sign, so both halves of a column stay equal.
    fn segment_weight(formula: &CnfFormula, j: usize, h: Half, y: usize) -> OmegaPoly {
        let k = formula.num_vars;
        let (row, want) = if y % 2 == 1 { (y.div_ceil(2), h == Half::Right) } else { (y / 2 + 1, h == Half::Left) };
        let hit = row < k && formula.clauses[row - 1].iter().any(|&l| l.unsigned_abs() as usize == j && (l > 0) == want);
        if hit {
            w_pow(2) - OmegaPoly::one()
        } else {
            w_pow(2)
        }
    }

    pub fn document(&self) -> Document {
        let mut d = Document::from_pp(&self.instance);
        d.features = self.features();
        d.meta = Some(serde_json::json!({
            "kind": "sat",
            "k": self.k,
            "formula": self.formula,
            "w": self.w.as_ref().map(|w| w.to_string()),
        }));
        d
    }

    pub fn features(&self) -> Features {
        let g = self.graph();
        let mut f = Features::default();
        for qp in &self.q {
            f.edges.insert(format!("Q{}_{}", qp.family, qp.index), qp.edges.clone());
        }
        f.edges.insert("R".into(), self.r.clone());
        let names = |vs: &[VertexId]| vs.iter().map(|&v| g.name(v).to_string()).collect::<Vec<_>>();
        f.vertices.insert("A1".into(), names(&self.a));
        let a2: Vec<_> = self.instance.base.anchors.iter().copied().filter(|v| !self.a.contains(v)).collect();
        f.vertices.insert("A2".into(), names(&a2));
        f.vertices.insert("b".into(), names(&[self.b, self.b_prime]));
        f
    }

    /// Every variable true and every clause row switching in column 1 on
    /// the right.
    pub fn canonical_routes(&self) -> Vec<RowRoute> {
        vec![RowRoute { column: 1, half: Half::Right }; self.k - 1]
    }

    pub fn canonical_drawing(&self) -> Result<Planarization> {
        self.drawing(&vec![true; self.k], &self.canonical_routes())
    }

    /// Row edge that carries the switch of `route`.
    fn switch_edge(&self, i: usize, route: RowRoute, assignment: &[bool]) -> EdgeId {
        let edges = &self.q[i - 1].edges;
        let j = route.column;
        if route.half == Half::of(assignment[j - 1]) {
            edges[2 * j - 1]
        } else if route.half == Half::Right {
            edges[2 * j - 2]
        } else {
            edges[2 * j]
        }
    }

    /// Weight of the crossing that switches row `i` under `route`.
    pub fn switch_cost(&self, i: usize, route: RowRoute, assignment: &[bool]) -> OmegaPoly {
        let e = self.switch_edge(i, route, assignment);
        let seg = Self::segment_weight(&self.formula, route.column, route.half, 2 * i - 1);
        &self.graph().edge(e).weight * &seg
    }

    /// The cheapest switch for every clause row.
    pub fn best_routes(&self, assignment: &[bool]) -> Vec<RowRoute> {
        (1..self.k)
            .map(|i| {
                let mut best: Option<(OmegaPoly, RowRoute)> = None;
                for j in 1..=self.k {
                    for half in [Half::Right, Half::Left] {
                        let r = RowRoute { column: j, half };
                        let c = self.switch_cost(i, r, assignment);
                        if best.as_ref().is_none_or(|(b, _)| c < *b) {
                            best = Some((c, r));
                        }
                    }
                }
                best.expect("k >= 2").1
            })
            .collect()
    }

    /// The drawing of H for a truth assignment and one switch per clause
    /// row.
    pub fn drawing(&self, assignment: &[bool], routes: &[RowRoute]) -> Result<Planarization> {
        let k = self.k;
        if assignment.len() != k || routes.len() != k - 1 {
            return Err(Error::Invalid(format!("need {k} values and {} routes", k - 1)));
        }
        if routes.iter().any(|r| r.column == 0 || r.column > k) {
            return Err(Error::Invalid("route column out of range".into()));
        }
        let g = self.graph();
        let mut d = PolylineDrawing::new(g);
        let mut put = |name: &str, p: Point| d.pos[g.vid(name)] = p;
        for lx in 0..=2 * k {
            for ly in 0..=2 * k {
                put(&lattice_name(k, lx, ly), (self.x(lx), ly as i64 * S));
            }
        }
        for i in 1..=k {
            let (xt, y0) = (self.x(2 * i - 1), (2 * i as i64 - 2) * S);
            put(&format!("m_{i}"), (xt + 60, y0 + S));
            put(&format!("t_{i}"), (xt + 45, y0 + 2 * S));
        }
        let top = 2 * k as i64 * S;
        let exit_y = |i: usize| self.track(i, i == k);
        for i in 1..=k {
            put(&format!("a_{i}"), (self.x(0) + 50, self.track(i, true)));
            put(&format!("a_{}", 3 * k + 1 - i), (self.x(2 * k) - 50, exit_y(i)));
            put(&format!("a_{}", k + i), (self.x(2 * i - 1) + 50, top + 50));
            put(&format!("a_{}", 4 * k + 1 - i), (self.x(2 * i - 1) + 50, -50));
        }
        let col = |j: usize| Half::of(assignment[j - 1]);
        let colx = |j: usize, fam: u8| self.half_left(j, col(j)) + if fam == 2 { 15 } else { 75 };
        for i in 1..=k {
            for j in 1..=k {
                let (y3, y2) = if i == k {
                    (self.track(i, true), self.track(i, true))
                } else {
                    let r = routes[i - 1];
                    let hi = self.track(i, true);
                    let lo = self.track(i, false);
                    match j.cmp(&r.column) {
                        std::cmp::Ordering::Less => (hi, hi),
                        std::cmp::Ordering::Greater => (lo, lo),
                        _ if r.half == col(j) => (hi, lo),
                        _ if r.half == Half::Right => (lo, lo),
                        _ => (hi, hi),
                    }
                };
                put(&format!("x3_{i}_{j}"), (colx(j, 3), y3));
                put(&format!("x2_{i}_{j}"), (colx(j, 2), y2));
            }
        }
        for (i, r) in (1..k).zip(routes) {
            if r.half != col(r.column) {
                let e = self.switch_edge(i, *r, assignment);
                let xs = self.half_left(r.column, r.half) + 50;
                d.bends[e] = vec![(xs, self.track(i, true)), (xs, self.track(i, false))];
            }
        }
        for qp in self.q.iter().filter(|q| q.family > 1) {
            let j = qp.index;
            let first = qp.edges[0];
            let last = *qp.edges.last().expect("nonempty");
            d.bends[first] = vec![(colx(j, qp.family), top + 20)];
            d.bends[last] = vec![(colx(j, qp.family), -20)];
        }
        for i in 1..=k {
            let (xt, y0) = (self.x(2 * i - 1), (2 * i as i64 - 2) * S);
            let e = &self.r[4 * (i - 1)..4 * i];
            d.bends[e[0]] = vec![(xt + 62, y0 + 10)];
            d.bends[e[2]] = vec![(xt + 40, y0 + 190), (xt + 5, y0 + 190)];
            d.bends[e[3]] = vec![(xt - 5, y0 + 190), (xt - 95, y0 + 190)];
        }
        d.planarize(g)
    }

    /// Crossing weight split into Q×lattice, R×Q and the rest.
    pub fn crossing_split(&self, p: &Planarization) -> Result<(OmegaPoly, OmegaPoly, OmegaPoly)> {
        let g = self.graph();
        let red = &self.instance.part1;
        let is_r: BTreeSet<_> = self.r.iter().copied().collect();
        let (mut qg, mut rq, mut other) = (OmegaPoly::zero(), OmegaPoly::zero(), OmegaPoly::zero());
        for pair in p.pairs() {
            let (e, f) = (pair.a, pair.b);
            let w = &g.edge(e).weight * &g.edge(f).weight;
            let red_e = red.contains(&g.edge(e).u);
            let red_f = red.contains(&g.edge(f).u);
            if red_e != red_f {
                if is_r.contains(&e) || is_r.contains(&f) {
                    rq += w;
                } else {
                    qg += w;
                }
            } else {
                other += w;
            }
        }
        p.check_structure(g)?;
        Ok((qg, rq, other))
    }
}

/// Builds H for a formula with k variables and k-1 clauses. A clause equal
/// to the padding clause (y1) gets a fully light row.
pub fn build_cm_instance(phi: &CnfFormula, w: Option<BigInt>) -> Result<CmInstance> {
    phi.check()?;
    let k = phi.num_vars;
    if k < 2 || phi.clauses.len() + 1 != k {
        return Err(Error::Invalid(format!(
            "invalid padding: need k >= 2 variables and k-1 clauses, got {} and {}",
            k,
            phi.clauses.len()
        )));
    }
    let mut g = WeightedMultigraph::new();
    let mut rows: Vec<RowKind> =
        phi.clauses.iter().map(|c| if c.as_slice() == [1] { RowKind::Light } else { RowKind::Clause }).collect();
    rows.push(RowKind::Corridor);
    let q = add_q_grid(&mut g, &|i| format!("a_{i}"), &w_pow(1), &rows);
    let red: BTreeSet<VertexId> = (0..g.vertex_count()).collect();

    let v = |g: &mut WeightedMultigraph, x: usize, y: usize| g.ensure_vertex(&lattice_name(k, x, y), Color::Blue);
    for y in 0..=2 * k {
        for x in 0..=2 * k {
            v(&mut g, x, y);
        }
    }
    let mut sub = BTreeMap::new();
    for i in 1..=k {
        sub.insert((2 * i - 2, 2 * i - 1), g.ensure_vertex(&format!("m_{i}"), Color::Blue));
        sub.insert((2 * i - 2, 2 * i), g.ensure_vertex(&format!("t_{i}"), Color::Blue));
    }
    for y in 0..=2 * k {
        for x in 0..2 * k {
            let (j, h) = (x / 2 + 1, if x % 2 == 0 { Half::Right } else { Half::Left });
            let wt = CmInstance::segment_weight(phi, j, h, y);
            let (p, q2) = (v(&mut g, x, y), v(&mut g, x + 1, y));
            match sub.get(&(x, y)) {
                Some(&m) => {
                    g.add_edge(p, m, wt.clone())?;
                    g.add_edge(m, q2, wt)?;
                }
                None => {
                    g.add_edge(p, q2, wt)?;
                }
            }
        }
    }
    for x in 0..=2 * k {
        for y in 0..2 * k {
            let row = y / 2 + 1;
            let lower = y % 2 == 0;
            let thick = match x {
                0 => lower,
                x if x == 2 * k => lower == (row == k),
                _ => false,
            };
            let (p, q2) = (v(&mut g, x, y), v(&mut g, x, y + 1));
            g.add_edge(p, q2, if thick { w_pow(4) } else { w_pow(2) })?;
        }
    }
    let mut route = Vec::new();
    for i in 1..=k {
        route.push(v(&mut g, 2 * i - 2, 2 * i - 2));
        route.push(sub[&(2 * i - 2, 2 * i - 1)]);
        route.push(sub[&(2 * i - 2, 2 * i)]);
        route.push(v(&mut g, 2 * i - 1, 2 * i));
    }
    route.push(v(&mut g, 2 * k, 2 * k));
    let r = insert_heavy_path(&mut g, &route, &w_pow(12))?;

    let a: Vec<VertexId> = (1..=4 * k).map(|i| g.vid(&format!("a_{i}"))).collect();
    let corner = |g: &WeightedMultigraph, s: &str| g.vid(s);
    let (b, b_prime, tr, bl) = (corner(&g, "b"), corner(&g, "b'"), corner(&g, "tr"), corner(&g, "bl"));
    let mut anchors = a[..k].to_vec();
    anchors.push(tr);
    anchors.extend(&a[k..2 * k]);
    anchors.push(b_prime);
    anchors.extend(&a[2 * k..3 * k]);
    anchors.push(bl);
    anchors.extend(&a[3 * k..]);
    anchors.push(b);
    let blue: BTreeSet<VertexId> = (0..g.vertex_count()).filter(|v| !red.contains(v)).collect();
    if let Some(wv) = &w {
        let bound = BigInt::from(g.edge_count());
        if wv < &bound {
            return Err(Error::Invalid(format!("w = {wv} is below the instance-size bound {bound}")));
        }
    }
    let base = AnchoredInstance::new(g, anchors)?;
    Ok(CmInstance {
        k,
        formula: phi.clone(),
        w,
        instance: PPInstance { base, part1: red, part2: blue },
        a,
        b,
        b_prime,
        q,
        r,
        rows,
    })
}

/// One failed clause of the structural lemma: property `a`, `b` or `c`,
/// or `p` for the PP invariants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Thm21Violation {
    pub property: char,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Thm21Report {
    pub violations: Vec<Thm21Violation>,
}

impl Thm21Report {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, property: char) -> bool {
        self.violations.iter().any(|v| v.property == property)
    }
}

/// Vertices of `edges` in walk order from `start`, or `None` when the
/// edges do not form a simple path starting there.
fn walk(g: &WeightedMultigraph, start: VertexId, edges: &[EdgeId]) -> Option<Vec<VertexId>> {
    let mut out = vec![start];
    for &e in edges {
        let ed = g.edge(e);
        let cur = *out.last().expect("nonempty");
        if !ed.touches(cur) {
            return None;
        }
        let next = ed.other(cur);
        if out.contains(&next) {
            return None;
        }
        out.push(next);
    }
    Some(out)
}

/// Checks the static properties (a)-(c) of the satisfiability gadget.
pub fn theorem21_check(h: &CmInstance) -> Thm21Report {
    let mut out = Thm21Report::default();
    let mut bad = |property: char, detail: String| out.violations.push(Thm21Violation { property, detail });
    let g = h.graph();
    let k = h.k;
    let wv = w_pow(1);
    let light = &wv - &OmegaPoly::one();
    let ge = |x: &OmegaPoly, y: &OmegaPoly| x >= y;

    let a1: BTreeSet<VertexId> = h.a.iter().copied().collect();
    let shared: BTreeSet<VertexId> = BTreeSet::new();
    for v in validate_pp_with(&h.instance, &shared) {
        bad('p', v.to_string());
    }

    // (a) the Q paths.
    let mut used: BTreeMap<EdgeId, String> = BTreeMap::new();
    let mut cover = [BTreeSet::new(), BTreeSet::new()];
    for qp in &h.q {
        let name = format!("Q{}_{}", qp.family, qp.index);
        let (s, t) = match qp.family {
            1 => (qp.index, 3 * k + 1 - qp.index),
            _ => (qp.index + k, 4 * k + 1 - qp.index),
        };
        let ends_ok = qp.ports == (s, t) && s <= 4 * k && t <= 4 * k;
        let path = if ends_ok { walk(g, h.a[s - 1], &qp.edges) } else { None };
        match path {
            Some(vs) if vs.last() == Some(&h.a[t - 1]) => {
                for v in &vs {
                    if !h.instance.part1.contains(v) {
                        bad('a', format!("{name} leaves H1 at `{}`", g.name(*v)));
                    }
                }
                cover[usize::from(qp.family > 1)].extend(vs);
            }
            _ => bad('a', format!("{name} is not a path from a_{s} to a_{t}")),
        }
        let floor = if qp.family == 1 && qp.index < k { &light } else { &wv };
        for (m, &e) in qp.edges.iter().enumerate() {
            let wt = &g.edge(e).weight;
            if !ge(wt, floor) {
                bad('a', format!("{name} edge {m} weighs {wt}, below {floor}"));
            }
            if (m == 0 || m + 1 == qp.edges.len()) && *wt != wv {
                bad('a', format!("{name} end edge {m} weighs {wt}, not w"));
            }
            if let Some(prev) = used.insert(e, name.clone()) {
                bad('a', format!("{name} and {prev} share edge {e}"));
            }
        }
    }
    let want = [(1u8, k), (2, k), (3, k)];
    for (fam, n) in want {
        let have = h.q.iter().filter(|q| q.family == fam).count();
        if have != n {
            bad('a', format!("{have} paths in family {fam}, expected {n}"));
        }
    }
    for v in h.instance.part1.iter().filter(|v| !a1.contains(v)) {
        for (c, label) in cover.iter().zip(["Q1", "Q2 and Q3"]) {
            if !c.contains(v) {
                bad('a', format!("vertex `{}` is not spanned by {label}", g.name(*v)));
            }
        }
    }

    // (b) the path R and the anchor positions.
    let anchors = &h.instance.base.anchors;
    let pos = |v: VertexId| anchors.iter().position(|&x| x == v);
    let between = |v: VertexId, lo: usize, hi: usize| -> bool {
        let (Some(p), Some(a), Some(b)) = (pos(v), pos(h.a[lo - 1]), pos(h.a[hi - 1])) else {
            return false;
        };
        let n = anchors.len();
        (p + n - a) % n < (b + n - a) % n && p != a
    };
    if !between(h.b, 4 * k, 1) {
        bad('b', "b is not between a_4k and a_1".into());
    }
    if !between(h.b_prime, 2 * k, 2 * k + 1) {
        bad('b', "b' is not between a_2k and a_2k+1".into());
    }
    match walk(g, h.b, &h.r) {
        Some(vs) if vs.last() == Some(&h.b_prime) => {
            if vs.iter().any(|v| !h.instance.part2.contains(v)) {
                bad('b', "R leaves H2".into());
            }
        }
        _ => bad('b', "R is not a path from b to b'".into()),
    }
    let heavy = w_pow(12);
    for &e in &h.r {
        if !ge(&g.edge(e).weight, &heavy) {
            bad('b', format!("R edge {e} is lighter than w^12"));
        }
    }

    // (c) weight caps.
    let cap = w_pow(4);
    let r_cap = &heavy + &cap;
    let r_set: BTreeSet<_> = h.r.iter().collect();
    for (e, ed) in g.edges().iter().enumerate() {
        let limit = if r_set.contains(&e) { &r_cap } else { &cap };
        if ed.weight > *limit {
            bad('c', format!("edge {e} ({}-{}) weighs {}, above {limit}", g.name(ed.u), g.name(ed.v), ed.weight));
        }
    }
    out
}

/// (2k+1)w^13 + (k-1)(w-1)w^12.
pub fn shift_constant(k: usize) -> OmegaPoly {
    let k = k as i64;
    OmegaPoly::term(2 * k + 1, 1, 13) + OmegaPoly::term(k - 1, 1, 13) - OmegaPoly::term(k - 1, 1, 12)
}

/// γ(k) - (3kω^52 - kω^48): the offset in the crossing bound certified by
/// pasting drawings.
pub fn certificate_offset(k: usize) -> OmegaPoly {
    let ki = k as i64;
    gamma(k) - (OmegaPoly::term(3 * ki, 1, 52) - OmegaPoly::term(ki, 1, 48))
}

/// H̄: the frame with its Q paths and R replaced by those of H.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Composed {
    pub k: usize,
    /// Weights in ω, with w = ω^4.
    pub instance: PPInstance,
    /// The merged r0/b0 vertex when identified.
    pub shared: Option<VertexId>,
    /// The frame with Q weights taken from H.
    pub frame: Frame,
    /// Frame edge to composed edge; `None` for the frame's R.
    pub frame_edge: Vec<Option<EdgeId>>,
    /// Edge of H to composed edge.
    pub h_edge: Vec<EdgeId>,
    pub r: Vec<EdgeId>,
}

impl Composed {
    pub fn graph(&self) -> &WeightedMultigraph {
        self.instance.graph()
    }

    pub fn validate(&self) -> Vec<crate::pp::PpViolation> {
        validate_pp_with(&self.instance, &self.shared.into_iter().collect())
    }
}

pub fn compose_with_frame(frame: &Frame, h: &CmInstance, identify_r0_b0: bool) -> Result<Composed> {
    if frame.k != h.k {
        return Err(Error::Invalid(format!("k mismatch: frame has {}, H has {}", frame.k, h.k)));
    }
    if let (Some(om), Some(wv)) = (&frame.omega, &h.w) {
        if om.pow(4) != *wv {
            return Err(Error::Invalid(format!("w = {wv} is not omega^4 = {}", om.pow(4))));
        }
    }
    let hg = h.graph();
    let mut fr = frame.clone();
    let mut h_to_frame = BTreeMap::new();
    for (fq, hq) in frame.q.iter().zip(&h.q) {
        for (&fe, &he) in fq.edges.iter().zip(&hq.edges) {
            fr.instance.base.graph.set_edge_weight(fe, hg.edge(he).weight.compose_pow(4));
            h_to_frame.insert(he, fe);
        }
    }
    let fg = fr.graph();
    let mut g = WeightedMultigraph::new();
    fn merge(name: &str, on: bool) -> &str {
        if on && name == "b0" {
            "r0"
        } else {
            name
        }
    }
    let merged = |name: &str| merge(name, identify_r0_b0).to_string();
    for v in fg.vertices() {
        if merged(&v.name) == v.name {
            g.add_vertex_with(v.name.clone(), v.label.clone(), v.color)?;
        }
    }
    let fmap = |g: &WeightedMultigraph, v: VertexId| g.vid(&merged(fg.name(v)));
    let mut frame_edge = vec![None; fg.edge_count()];
    for (e, ed) in fg.edges().iter().enumerate() {
        if e == frame.r {
            continue;
        }
        let (u, v) = (fmap(&g, ed.u), fmap(&g, ed.v));
        frame_edge[e] = Some(g.push_edge(crate::graph::Edge { u, v, ..ed.clone() })?);
    }
    let hname = |v: VertexId| -> String {
        let n = hg.name(v);
        match n {
            "b" => "d2".into(),
            "b'" => "c2".into(),
            "tr" => "c1".into(),
            "bl" => "c3".into(),
            _ => match n.strip_prefix("a_") {
                Some(i) => format!("r0_{i}"),
                None => n.to_string(),
            },
        }
    };
    for v in 0..hg.vertex_count() {
        g.ensure_vertex(&hname(v), hg.vertex(v).color);
    }
    let mut h_edge = Vec::with_capacity(hg.edge_count());
    for (e, ed) in hg.edges().iter().enumerate() {
        let id = match h_to_frame.get(&e) {
            Some(&fe) => frame_edge[fe].expect("Q edges survive"),
            None => {
                let (u, v) = (g.vid(&hname(ed.u)), g.vid(&hname(ed.v)));
                g.add_edge(u, v, ed.weight.compose_pow(4))?
            }
        };
        h_edge.push(id);
    }
    let r = h.r.iter().map(|&e| h_edge[e]).collect();
    let mut anchors: Vec<VertexId> = Vec::new();
    for &a in &frame.instance.base.anchors {
        let v = fmap(&g, a);
        if !anchors.contains(&v) {
            anchors.push(v);
        }
    }
    let shared = identify_r0_b0.then(|| g.vid("r0"));
    let color = |c: Color| -> BTreeSet<VertexId> { (0..g.vertex_count()).filter(|&v| g.vertex(v).color == c).collect() };
    let (mut part1, mut part2) = (color(Color::Red), color(Color::Blue));
    if let Some(s) = shared {
        part1.insert(s);
        part2.insert(s);
    }
    if let Some(om) = &frame.omega {
        let m = BigInt::from(g.edge_count());
        if *om <= &m * &m {
            return Err(Error::Invalid(format!("omega = {om} must exceed m^2 = {}", &m * &m)));
        }
    }
    let base = AnchoredInstance::new(g, anchors)?;
    Ok(Composed { k: h.k, instance: PPInstance { base, part1, part2 }, shared, frame: fr, frame_edge, h_edge, r })
}

/// Weights of a pasted drawing and its two halves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PasteReport {
    pub pasted: OmegaPoly,
    pub frame_normal: OmegaPoly,
    pub h_part: OmegaPoly,
    /// The R×Q crossings of the frame's normal drawing, which the drawing
    /// of H replaces.
    pub double_counted: OmegaPoly,
}

/// The frame's normal drawing with a drawing of H placed in the gadget
/// region. Q end edges meet P2 on the port side.
pub fn paste_drawing(c: &Composed, h: &CmInstance, h_drawing: &Planarization) -> Result<(Planarization, PasteReport)> {
    let f = &c.frame;
    let fnorm = normal_drawing(f);
    let mut lists: Vec<Vec<EdgeId>> = vec![Vec::new(); c.graph().edge_count()];
    for (e, l) in fnorm.crossings.iter().enumerate() {
        if let Some(ce) = c.frame_edge[e] {
            lists[ce] = l.iter().filter(|&&x| x != f.r).map(|&x| c.frame_edge[x].expect("not R")).collect();
        }
    }
    let mut last_edges = BTreeSet::new();
    for qp in &h.q {
        last_edges.insert(*qp.edges.last().expect("nonempty"));
    }
    for (e, l) in h_drawing.crossings.iter().enumerate() {
        let ce = c.h_edge[e];
        let mapped: Vec<EdgeId> = l.iter().map(|&x| c.h_edge[x]).collect();
        if last_edges.contains(&e) {
            let mut v = mapped;
            v.append(&mut lists[ce]);
            lists[ce] = v;
        } else {
            lists[ce].extend(mapped);
        }
    }
    let p = Planarization { crossings: lists };
    let double_counted = fnorm.crossings[f.r].iter().map(|&x| &f.graph().edge(f.r).weight * &f.graph().edge(x).weight).sum();
    let report = PasteReport {
        pasted: p.weight(c.graph())?,
        frame_normal: fnorm.weight(f.graph())?,
        h_part: h_drawing.weight(h.graph())?.compose_pow(4),
        double_counted,
    };
    Ok((p, report))
}

/// Whether a truth assignment satisfies clause row `i` of `h`.
pub fn row_satisfied(h: &CmInstance, i: usize, assignment: &[bool]) -> bool {
    h.formula.clauses[i - 1].iter().any(|&l| lit_true(l, assignment))
}
