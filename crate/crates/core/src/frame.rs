//! The frame gadget: a PP anchored graph with a closed-form optimum.
//!
//! Red part: path P0 over cycle C0, joined by straps, plus the path family
//! Q hanging off P0. Blue part: path P1 under path P2, joined by vertical
//! edges, plus the top edges through d0, d1, d2, d4 and the heavy edge R.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::drawing::Planarization;
use crate::error::{Error, Result};
use crate::graph::{AnchoredInstance, Color, EdgeId, PPInstance, VertexId, WeightedMultigraph};
use crate::io::{Document, Features};
use crate::poly::{ratio, OmegaPoly};
pub use crate::qgrid::QPath;
use crate::qgrid::{add_q_grid, RowKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameParams {
    pub k: usize,
    /// Concrete value of ω, or `None` to keep weights symbolic.
    pub omega: Option<BigInt>,
}

impl FrameParams {
    pub fn symbolic(k: usize) -> Self {
        FrameParams { k, omega: None }
    }

    pub fn check(&self) -> Result<()> {
        if self.k < 2 {
            return Err(Error::Invalid(format!("frame needs k >= 2, got {}", self.k)));
        }
        if let Some(w) = &self.omega {
            let step = BigInt::from(omega_step(self.k));
            if w <= &BigInt::zero() || !(w % &step).is_zero() {
                return Err(Error::Invalid(format!("omega must be a positive multiple of {step}")));
            }
        }
        Ok(())
    }
}

/// Smallest ω making every frame weight integral.
pub fn omega_step(k: usize) -> u64 {
    5 * (5 * k as u64 + 7)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    pub k: usize,
    pub omega: Option<BigInt>,
    pub instance: PPInstance,
    /// P0 edges from r0 to r4.
    pub p0: Vec<EdgeId>,
    /// P1 edges from b0 to b4.
    pub p1: Vec<EdgeId>,
    /// P2 edges from c0 to c4.
    pub p2: Vec<EdgeId>,
    /// C0 edges from r2 around the cycle back to r2.
    pub c0: Vec<EdgeId>,
    /// Edges from P1 up to P2, left to right.
    pub blue_verticals: Vec<EdgeId>,
    /// Edges from P0 down to C0, left to right.
    pub red_verticals: Vec<EdgeId>,
    pub r: EdgeId,
    pub top: Vec<EdgeId>,
    pub q: Vec<QPath>,
}

/// Weight of the P0 edge at distance `i` from r1r3.
pub fn p0_weight(k: usize, i: usize) -> Result<OmegaPoly> {
    if i > 2 * k + 1 {
        return Err(Error::Invalid(format!("P0 index {i} out of range 0..={}", 2 * k + 1)));
    }
    let d = 5 * k as i64 + 7;
    let i = i as i64;
    Ok(OmegaPoly::pow(41) + OmegaPoly::term(i * (i + 1), d, 30))
}

/// Weight of the P1 edge at distance `i` from b2.
pub fn p1_weight(k: usize, i: usize) -> Result<OmegaPoly> {
    if i > 2 * k + 1 {
        return Err(Error::Invalid(format!("P1 index {i} out of range 0..={}", 2 * k + 1)));
    }
    let d = 5 * k as i64 + 7;
    let mut w = OmegaPoly::pow(49) + OmegaPoly::term((i * (i + 2)) as i64, d, 30);
    if i > k {
        w += OmegaPoly::term(2, 5, 35);
    }
    Ok(w)
}

pub fn c1(k: usize) -> BigRational {
    let k = k as i64;
    ratio(2 * (30 * k * k + 58 * k + 20), 5 * (5 * k + 7))
}

pub fn c2(k: usize) -> BigRational {
    let k = k as i64;
    ratio(2 * (16 * k * k * k + 39 * k * k + 20 * k), 3 * (5 * k + 7))
}

/// The optimum of the frame.
pub fn gamma(k: usize) -> OmegaPoly {
    let k = k as i64;
    let mut g = OmegaPoly::constant(2) * OmegaPoly::pow(90) - OmegaPoly::pow(89);
    g += OmegaPoly::term(4 * k + 2, 1, 79);
    g += OmegaPoly::term(2, 1, 76) - OmegaPoly::pow(75);
    g += OmegaPoly::term(4 * k, 1, 71);
    g += OmegaPoly::monomial(c1(k as usize), 65);
    g += OmegaPoly::monomial(c2(k as usize), 60);
    g += OmegaPoly::term(3 * k, 1, 52) - OmegaPoly::term(k, 1, 48);
    g += OmegaPoly::term(6 * k, 1, 42) + OmegaPoly::term(12 * k, 5, 39);
    g
}

pub fn gamma_plus(k: usize) -> OmegaPoly {
    gamma(k) + OmegaPoly::pow(34) - OmegaPoly::pow(30) - OmegaPoly::one()
}

struct Builder {
    g: WeightedMultigraph,
    color: Color,
}

impl Builder {
    fn v(&mut self, name: &str) -> VertexId {
        self.g.ensure_vertex(name, self.color)
    }

    fn e(&mut self, a: &str, b: &str, w: OmegaPoly) -> EdgeId {
        let (u, v) = (self.v(a), self.v(b));
        self.g.add_edge(u, v, w).expect("frame edges join distinct vertices")
    }

    fn path(&mut self, names: &[String], w: impl Fn(usize) -> OmegaPoly) -> Vec<EdgeId> {
        names.windows(2).enumerate().map(|(i, p)| self.e(&p[0], &p[1], w(i))).collect()
    }
}

/// Distance of edge `m` from the middle of its path, where the middle sits
/// at `twice_center / 2` in edge units.
fn mirrored(k: usize, m: usize, twice_center: usize, f: fn(usize, usize) -> Result<OmegaPoly>) -> OmegaPoly {
    let i = (2 * m + 1).abs_diff(twice_center) / 2;
    f(k, i).expect("schedule index in range")
}

pub fn build_frame(p: FrameParams) -> Result<Frame> {
    p.check()?;
    let k = p.k;
    let n = |s: &str, i: usize| format!("{s}_{i}");
    let mut b = Builder { g: WeightedMultigraph::new(), color: Color::Red };

    // P0 and C0 with the red verticals between them.
    let mut p0n = vec!["r0".to_string()];
    p0n.extend((1..=2 * k).map(|i| n("r0", i)));
    p0n.extend(["r1".to_string(), "r3".to_string()]);
    p0n.extend((2 * k + 1..=4 * k).map(|i| n("r0", i)));
    p0n.push("r4".into());
    let p0 = b.path(&p0n, |m| mirrored(k, m, 4 * k + 3, p0_weight));

    let mut c0n = vec!["r2".to_string()];
    c0n.extend((1..=2 * k).map(|i| n("s0", i)));
    c0n.extend(["r1'".to_string(), "r3'".to_string()]);
    c0n.extend((2 * k + 1..=4 * k).map(|i| n("s0", i)));
    c0n.push("r2".into());
    let c0 = b.path(&c0n, |_| OmegaPoly::pow(49));

    let heavy_strap = OmegaPoly::pow(41) - OmegaPoly::pow(40);
    let mut red_verticals = Vec::new();
    for i in 1..=2 * k {
        red_verticals.push(b.e(&n("r0", i), &n("s0", i), OmegaPoly::pow(30)));
    }
    red_verticals.push(b.e("r1", "r1'", heavy_strap.clone()));
    red_verticals.push(b.e("r3", "r3'", heavy_strap));
    for i in 2 * k + 1..=4 * k {
        red_verticals.push(b.e(&n("r0", i), &n("s0", i), OmegaPoly::pow(30)));
    }

    // Q paths: the shared red grid with light interior rows.
    let mut rows = vec![RowKind::Light; k];
    rows[k - 1] = RowKind::Corridor;
    let q = add_q_grid(&mut b.g, &|i| n("r0", i), &OmegaPoly::pow(4), &rows);
    let red: BTreeSet<VertexId> = (0..b.g.vertex_count()).collect();

    // P1, P2 and the blue verticals.
    b.color = Color::Blue;
    let seg = |s: &str, lo: usize, hi: usize| (lo..=hi).map(move |i| format!("{s}_{i}")).collect::<Vec<_>>();
    let mut bases = Vec::new();
    let mut tops = Vec::new();
    for q in 0..4 {
        bases.extend(seg("b0", q * k + 1, q * k + k));
        tops.extend(seg("c0", q * k + 1, q * k + k));
        if q < 3 {
            bases.push(format!("b{}", q + 1));
            tops.push(format!("c{}", q + 1));
        }
    }
    tops[0] = "c0".into();
    let last = tops.len() - 1;
    tops[last] = "c4".into();
    let mut p1n = vec!["b0".to_string()];
    p1n.extend(bases.iter().cloned());
    p1n.push("b4".into());
    let p1 = b.path(&p1n, |m| mirrored(k, m, 4 * k + 4, p1_weight));
    let light = OmegaPoly::pow(38);
    let heavy = OmegaPoly::pow(38) + OmegaPoly::term(4, 5, 35);
    let p2 = b.path(&tops, |m| if (k..=3 * k + 1).contains(&m) { light.clone() } else { heavy.clone() });
    let mut blue_verticals = Vec::new();
    for (m, (lo, hi)) in bases.iter().zip(&tops).enumerate() {
        let w = if m == 2 * k + 1 {
            OmegaPoly::pow(48) + OmegaPoly::term(2, 1, 38) - OmegaPoly::pow(34)
        } else if m == k || m == 3 * k + 2 {
            OmegaPoly::pow(35)
        } else {
            OmegaPoly::pow(30)
        };
        blue_verticals.push(b.e(lo, hi, w));
    }
    let r = b.e("c2", "d2", OmegaPoly::pow(48));
    let top = [("c0", "d0"), ("d0", "d1"), ("d0", "d2"), ("d1", "d2"), ("d1", "d4"), ("d2", "d4"), ("d4", "c4")]
        .iter()
        .map(|(u, v)| b.e(u, v, OmegaPoly::pow(49)))
        .collect();

    let g = b.g;
    let blue: BTreeSet<VertexId> = (0..g.vertex_count()).filter(|v| !red.contains(v)).collect();
    let anchors = ["r2", "b4", "r4", "d1", "r0", "b0"].iter().map(|s| g.vid(s)).collect();
    let base = AnchoredInstance::new(g, anchors)?;
    Ok(Frame {
        k,
        omega: p.omega,
        instance: PPInstance { base, part1: red, part2: blue },
        p0,
        p1,
        p2,
        c0,
        blue_verticals,
        red_verticals,
        r,
        top,
        q,
    })
}

impl Frame {
    pub fn graph(&self) -> &WeightedMultigraph {
        self.instance.graph()
    }

    /// Vertex names and edge indices grouped by role.
    pub fn features(&self) -> Features {
        let g = self.graph();
        let mut f = Features::default();
        let names = |edges: &[EdgeId]| {
            let mut out: Vec<String> = Vec::new();
            for &e in edges {
                for v in [g.edge(e).u, g.edge(e).v] {
                    let s = g.name(v).to_string();
                    if !out.contains(&s) {
                        out.push(s);
                    }
                }
            }
            out
        };
        let mut edges: BTreeMap<String, Vec<EdgeId>> = BTreeMap::new();
        edges.insert("P0".into(), self.p0.clone());
        edges.insert("P1".into(), self.p1.clone());
        edges.insert("P2".into(), self.p2.clone());
        edges.insert("C0".into(), self.c0.clone());
        edges.insert("R".into(), vec![self.r]);
        edges.insert("top".into(), self.top.clone());
        edges.insert("red_verticals".into(), self.red_verticals.clone());
        edges.insert("blue_verticals".into(), self.blue_verticals.clone());
        for qp in &self.q {
            edges.insert(format!("Q{}_{}", qp.family, qp.index), qp.edges.clone());
        }
        for (name, es) in &edges {
            if ["P0", "P1", "P2", "C0", "R"].contains(&name.as_str()) {
                f.vertices.insert(name.clone(), names(es));
            }
        }
        f.vertices.insert("B1".into(), vec!["r0".into(), "r2".into(), "r4".into()]);
        f.vertices.insert("B2".into(), vec!["b0".into(), "d1".into(), "b4".into()]);
        f.edges = edges;
        f
    }

    pub fn document(&self) -> Document {
        let mut d = Document::from_pp(&self.instance);
        d.features = self.features();
        d.meta = Some(serde_json::json!({
            "kind": "frame",
            "k": self.k,
            "omega": self.omega.as_ref().map(|o| o.to_string()),
        }));
        d
    }

    fn port_gap(&self, i: usize) -> usize {
        if i <= 2 * self.k {
            i - 1
        } else {
            i + 1
        }
    }

    /// Vertex r0^i of P0.
    pub fn port(&self, i: usize) -> VertexId {
        self.graph().vid(&format!("r0_{i}"))
    }
}

/// The drawing realizing the optimum, up to the documented ω^48 residue.
pub fn normal_drawing(f: &Frame) -> Planarization {
    let m = f.graph().edge_count();
    let mut pairs = Vec::new();
    for (a, b) in f.p0.iter().zip(&f.blue_verticals) {
        pairs.push((*a, *b));
    }
    for (n, &rv) in f.red_verticals.iter().enumerate() {
        pairs.push((f.p1[n + 1], rv));
    }
    let mut on_p2: BTreeMap<usize, Vec<(u8, EdgeId)>> = BTreeMap::new();
    for qp in &f.q {
        on_p2.entry(f.port_gap(qp.ports.0)).or_default().push((qp.family, qp.edges[0]));
        on_p2.entry(f.port_gap(qp.ports.1)).or_default().push((qp.family, *qp.edges.last().expect("nonempty")));
    }
    for (gap, mut list) in on_p2 {
        // Left ports nest Q3 outside Q2, right ports the reverse.
        if gap < 2 * f.k + 1 {
            list.sort_by_key(|&(fam, _)| std::cmp::Reverse(fam));
        } else {
            list.sort_by_key(|&(fam, _)| fam);
        }
        for (_, e) in list {
            pairs.push((f.p2[gap], e));
        }
    }
    // R runs from c2 down to d2 through the diagonal of the grid.
    for i in (1..=f.k).rev() {
        for fam in [2, 1, 3] {
            let qp = f.q.iter().find(|q| q.family == fam && q.index == i).expect("all Q paths exist");
            pairs.push((f.r, qp.r_edge));
        }
    }
    let mut p = Planarization::from_pairs(m, &pairs);
    // A last edge meets R before P2 on its way to the port.
    for qp in &f.q {
        let last = *qp.edges.last().expect("nonempty");
        if last == qp.r_edge {
            p.crossings[last].reverse();
        }
    }
    p
}

/// Local rearrangements of the normal drawing in the right half of the
/// frame. Indices count outward from the center: `f1(j)` is the blue
/// vertical at the j-th P1 vertex right of b2, `f0(i)` the strap at
/// r0^{2k+i}.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Move {
    Null,
    /// f1(i) leaves P0 on the next edge outward, crossing f0(i).
    BlueOverRed(usize),
    /// f0(i) reaches P1 on the next edge outward, crossing f1(i+1).
    RedOverBlue(usize),
    /// f0(i) and f1(i) pass each other: f0(i) lands one edge inward.
    SwapInner(usize),
    /// f0(i) and f1(i+1) pass each other: f0(i) lands one edge outward.
    SwapOuter(usize),
}

impl Frame {
    fn f0(&self, i: usize) -> EdgeId {
        self.red_verticals[2 * self.k + 1 + i]
    }

    fn f1(&self, j: usize) -> EdgeId {
        self.blue_verticals[2 * self.k + 1 + j]
    }

    fn p0_right(&self, j: usize) -> EdgeId {
        self.p0[2 * self.k + 1 + j]
    }

    fn p1_right(&self, t: usize) -> EdgeId {
        self.p1[2 * self.k + 2 + t]
    }

    /// Q end-edges at r0^{2k+i}, each oriented towards the port.
    fn right_port_edges(&self, i: usize) -> Vec<(u8, EdgeId)> {
        let port = 2 * self.k + i;
        let mut out: Vec<(u8, EdgeId)> = self
            .q
            .iter()
            .filter(|q| q.ports.1 == port)
            .map(|q| (q.family, *q.edges.last().expect("nonempty")))
            .collect();
        out.sort_unstable();
        out
    }

    /// Let the blue vertical `b` pass the port r0^{2k+i} between P0 and P2,
    /// crossing the Q end-edges there.
    fn pass_port(&self, p: &mut Planarization, b: EdgeId, i: usize, rightward: bool) {
        let mut ends = self.right_port_edges(i);
        if rightward {
            ends.reverse();
        }
        for (_, q) in ends {
            p.crossings[b].push(q);
            p.crossings[q].push(b);
        }
    }

    /// Lower bound the penalty of `mv` must meet.
    pub fn penalty_bound(&self, mv: Move) -> Result<OmegaPoly> {
        self.check_move(mv)?;
        let d = 5 * self.k as i64 + 7;
        let b3c3 = self.k + 1;
        Ok(match mv {
            Move::Null => OmegaPoly::zero(),
            Move::SwapInner(i) if i == b3c3 => OmegaPoly::term(1, 5 * d, 65),
            Move::SwapOuter(i) if i + 1 == b3c3 => OmegaPoly::term(4, 5 * d, 65),
            _ => OmegaPoly::term(1, d, 60),
        })
    }

    fn check_move(&self, mv: Move) -> Result<()> {
        let ok = match mv {
            Move::Null => true,
            Move::BlueOverRed(i) | Move::RedOverBlue(i) | Move::SwapInner(i) | Move::SwapOuter(i) => {
                (1..=2 * self.k).contains(&i)
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Invalid(format!("uncatalogued move {mv:?}")))
        }
    }

    /// The normal drawing rewritten by `mv`.
    pub fn perturbed_drawing(&self, mv: Move) -> Result<Planarization> {
        self.check_move(mv)?;
        let mut p = normal_drawing(self);
        let relink = |p: &mut Planarization, e: EdgeId, from: EdgeId, to: EdgeId| {
            for x in p.crossings[e].iter_mut() {
                if *x == from {
                    *x = to;
                }
            }
            p.crossings[from].retain(|&y| y != e);
        };
        // Insert `e` into the crossing list of `path` just before `next`,
        // or at the end when `next` is absent.
        let place = |p: &mut Planarization, path: EdgeId, e: EdgeId, next: Option<EdgeId>| {
            let list = &mut p.crossings[path];
            match next.and_then(|n| list.iter().position(|&y| y == n)) {
                Some(at) => list.insert(at, e),
                None => list.push(e),
            }
        };
        let k2 = 2 * self.k;
        match mv {
            Move::Null => {}
            Move::BlueOverRed(i) => {
                let (b, r) = (self.f1(i), self.f0(i));
                relink(&mut p, b, self.p0_right(i), self.p0_right(i + 1));
                place(&mut p, self.p0_right(i + 1), b, Some(self.f1(i + 1)));
                p.crossings[b].insert(0, r);
                p.crossings[r].insert(0, b);
                self.pass_port(&mut p, b, i, true);
            }
            Move::RedOverBlue(i) => {
                let (r, b) = (self.f0(i), self.f1(i + 1));
                relink(&mut p, r, self.p1_right(i), self.p1_right(i + 1));
                place(&mut p, self.p1_right(i + 1), r, (i < k2).then(|| self.f0(i + 1)));
                p.crossings[r].insert(0, b);
                p.crossings[b].insert(0, r);
            }
            Move::SwapInner(i) => {
                let (r, b) = (self.f0(i), self.f1(i));
                relink(&mut p, r, self.p1_right(i), self.p1_right(i - 1));
                place(&mut p, self.p1_right(i - 1), r, None);
                relink(&mut p, b, self.p0_right(i), self.p0_right(i + 1));
                place(&mut p, self.p0_right(i + 1), b, Some(self.f1(i + 1)));
                self.pass_port(&mut p, b, i, true);
            }
            Move::SwapOuter(i) => {
                let (r, b) = (self.f0(i), self.f1(i + 1));
                relink(&mut p, r, self.p1_right(i), self.p1_right(i + 1));
                place(&mut p, self.p1_right(i + 1), r, (i < k2).then(|| self.f0(i + 1)));
                relink(&mut p, b, self.p0_right(i + 1), self.p0_right(i));
                place(&mut p, self.p0_right(i), b, None);
                self.pass_port(&mut p, b, i, false);
            }
        }
        Ok(p)
    }

    /// Weight of the perturbed drawing minus the weight of the normal one.
    pub fn perturbation_penalty(&self, mv: Move) -> Result<OmegaPoly> {
        let g = self.graph();
        let moved = self.perturbed_drawing(mv)?.weight(g)?;
        Ok(moved - normal_drawing(self).weight(g)?)
    }
}
