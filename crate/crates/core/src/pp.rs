//! Structural validation of PP (planar pair) anchored instances.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::graph::{PPInstance, VertexId};
use crate::planarity::is_anchored_planar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PpViolation {
    Overlap { vertex: String },
    Uncovered { vertex: String },
    CrossPartEdge { edge: usize, u: String, v: String },
    NotAnchoredPlanar { part: u8 },
    AnchorRepeated { vertex: String },
}

impl fmt::Display for PpViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PpViolation::Overlap { vertex } => write!(f, "vertex `{vertex}` is in both parts"),
            PpViolation::Uncovered { vertex } => write!(f, "vertex `{vertex}` is in no part"),
            PpViolation::CrossPartEdge { edge, u, v } => {
                write!(f, "cross-part edge {edge} ({u}-{v})")
            }
            PpViolation::NotAnchoredPlanar { part } => write!(f, "part {part} is not anchored planar"),
            PpViolation::AnchorRepeated { vertex } => write!(f, "anchor `{vertex}` repeated"),
        }
    }
}

/// Every violated PP invariant; empty means valid. Vertices listed in
/// `shared` may lie in both parts (used for a merged anchor).
pub fn validate_pp_with(inst: &PPInstance, shared: &BTreeSet<VertexId>) -> Vec<PpViolation> {
    let g = inst.graph();
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for &a in &inst.base.anchors {
        if !seen.insert(a) {
            out.push(PpViolation::AnchorRepeated { vertex: g.name(a).to_string() });
        }
    }
    for v in 0..g.vertex_count() {
        let (p1, p2) = (inst.part1.contains(&v), inst.part2.contains(&v));
        if p1 && p2 && !shared.contains(&v) {
            out.push(PpViolation::Overlap { vertex: g.name(v).to_string() });
        }
        if !p1 && !p2 {
            out.push(PpViolation::Uncovered { vertex: g.name(v).to_string() });
        }
    }
    for (i, e) in g.edges().iter().enumerate() {
        let in1 = inst.part1.contains(&e.u) && inst.part1.contains(&e.v);
        let in2 = inst.part2.contains(&e.u) && inst.part2.contains(&e.v);
        if !in1 && !in2 {
            out.push(PpViolation::CrossPartEdge {
                edge: i,
                u: g.name(e.u).to_string(),
                v: g.name(e.v).to_string(),
            });
        }
    }
    for (idx, part) in inst.parts().into_iter().enumerate() {
        let (sub, _) = inst.base.restrict(part);
        if !is_anchored_planar(&sub) {
            out.push(PpViolation::NotAnchoredPlanar { part: idx as u8 + 1 });
        }
    }
    out
}

pub fn validate_pp(inst: &PPInstance) -> Vec<PpViolation> {
    validate_pp_with(inst, &BTreeSet::new())
}
