//! Exact solvers and the polynomial special cases.

mod exact;
mod flow;
mod heuristic;

pub use exact::{
    crossing_number_exact, decide_crossing_le, minimize_witness, SolveOptions, SolveResult, SolveStats,
    SolveStatus,
};
pub use flow::{min_cut, min_cut_between_sets, pp_special_case};

use crate::drawing::Planarization;
use crate::error::Result;
use crate::graph::AnchoredInstance;
use crate::planarity::augment_anchored;

/// Anchored crossing number through the hub-and-cycle augmentation. The
/// witness refers to the edges of the original instance.
pub fn anchored_crossing_number_exact(a: &AnchoredInstance, opts: &SolveOptions) -> Result<SolveResult> {
    if a.anchors.is_empty() {
        return Ok(crossing_number_exact(&a.graph, opts));
    }
    let aug = augment_anchored(a)?;
    let mut r = crossing_number_exact(&aug.graph, opts);
    r.witness = r.witness.map(|p| Planarization {
        crossings: p.crossings[..aug.original_edges].to_vec(),
    });
    Ok(r)
}

/// Check an anchored witness by re-augmenting.
pub fn verify_anchored_drawing(a: &AnchoredInstance, p: &Planarization) -> bool {
    if a.anchors.is_empty() {
        return crate::drawing::verify_drawing(&a.graph, p);
    }
    let Ok(aug) = augment_anchored(a) else {
        return false;
    };
    let mut full = p.clone();
    full.crossings.resize(aug.graph.edge_count(), Vec::new());
    crate::drawing::verify_drawing(&aug.graph, &full)
}
