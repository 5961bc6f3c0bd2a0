//! Minimum cuts with polynomial capacities and the two-anchor special case.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{PPInstance, VertexId, WeightedMultigraph};
use crate::poly::OmegaPoly;
use crate::pp::validate_pp;

/// Edmonds-Karp on an undirected graph. Capacities are compared at large
/// `w`, which is an ordered ring, so shortest augmenting paths terminate.
fn max_flow(n: usize, arcs: &[(usize, usize, OmegaPoly)], s: usize, t: usize) -> OmegaPoly {
    let mut to = Vec::with_capacity(2 * arcs.len());
    let mut cap = Vec::with_capacity(2 * arcs.len());
    let mut adj = vec![Vec::new(); n];
    for (a, b, c) in arcs {
        adj[*a].push(to.len());
        to.push(*b);
        cap.push(c.clone());
        adj[*b].push(to.len());
        to.push(*a);
        cap.push(c.clone());
    }
    let mut total = OmegaPoly::zero();
    loop {
        let mut via = vec![usize::MAX; n];
        let mut seen = vec![false; n];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            if x == t {
                break;
            }
            for &arc in &adj[x] {
                let y = to[arc];
                if !seen[y] && cap[arc].is_positive() {
                    seen[y] = true;
                    via[y] = arc;
                    queue.push_back(y);
                }
            }
        }
        if !seen[t] {
            return total;
        }
        let mut bottleneck: Option<OmegaPoly> = None;
        let mut y = t;
        while y != s {
            let arc = via[y];
            if bottleneck.as_ref().is_none_or(|b| cap[arc] < *b) {
                bottleneck = Some(cap[arc].clone());
            }
            y = to[arc ^ 1];
        }
        let f = bottleneck.expect("path has arcs");
        let mut y = t;
        while y != s {
            let arc = via[y];
            cap[arc] -= &f;
            cap[arc ^ 1] += &f;
            y = to[arc ^ 1];
        }
        total += f;
    }
}

/// Minimum total weight of an edge set separating `s` from `t`.
pub fn min_cut(g: &WeightedMultigraph, s: VertexId, t: VertexId) -> Result<OmegaPoly> {
    if s == t {
        return Err(Error::Invalid("min cut needs two distinct terminals".into()));
    }
    min_cut_between_sets(g, &[s], &[t])
}

/// Minimum cut between two vertex groups, each contracted to a terminal.
pub fn min_cut_between_sets(g: &WeightedMultigraph, left: &[VertexId], right: &[VertexId]) -> Result<OmegaPoly> {
    if left.iter().any(|x| right.contains(x)) {
        return Err(Error::Invalid("terminal groups overlap".into()));
    }
    let n = g.vertex_count();
    let (s, t) = (n, n + 1);
    let infinite = g.total_weight() + OmegaPoly::one();
    let mut arcs: Vec<(usize, usize, OmegaPoly)> =
        g.edges().iter().map(|e| (e.u, e.v, e.weight.clone())).collect();
    for &x in left {
        arcs.push((s, x, infinite.clone()));
    }
    for &x in right {
        arcs.push((x, t, infinite.clone()));
    }
    Ok(max_flow(n + 2, &arcs, s, t))
}

/// Anchored crossing number of a PP instance when one side has at most two
/// anchors; `None` in the hard regime.
pub fn pp_special_case(inst: &PPInstance) -> Result<Option<OmegaPoly>> {
    let violations = validate_pp(inst);
    if let Some(v) = violations.first() {
        return Err(Error::Invalid(format!("not a PP instance: {v}")));
    }
    let a1 = inst.base.anchors_in(&inst.part1);
    let a2 = inst.base.anchors_in(&inst.part2);
    if a1.len().min(a2.len()) <= 1 {
        return Ok(Some(OmegaPoly::zero()));
    }
    if a1.len().min(a2.len()) > 2 {
        return Ok(None);
    }
    let (small, other_part, small_part) = if a1.len() == 2 {
        (a1, &inst.part2, &inst.part1)
    } else {
        (a2, &inst.part1, &inst.part2)
    };
    let (x, y) = (small[0], small[1]);
    // Split the other part's anchors by the two boundary arcs between x and y.
    let anchors = &inst.base.anchors;
    let px = anchors.iter().position(|&a| a == x).unwrap();
    let py = anchors.iter().position(|&a| a == y).unwrap();
    let (lo, hi) = (px.min(py), px.max(py));
    let mut left = Vec::new();
    let mut right = Vec::new();
    for (i, &a) in anchors.iter().enumerate() {
        if other_part.contains(&a) && a != x && a != y {
            if lo < i && i < hi {
                left.push(a);
            } else {
                right.push(a);
            }
        }
    }
    if left.is_empty() || right.is_empty() {
        return Ok(Some(OmegaPoly::zero()));
    }
    let (gs, ms) = inst.graph().induced(small_part);
    let cut_small = min_cut(&gs, ms[&x], ms[&y])?;
    let (go, mo) = inst.graph().induced(other_part);
    let l: Vec<_> = left.iter().map(|a| mo[a]).collect();
    let r: Vec<_> = right.iter().map(|a| mo[a]).collect();
    let cut_other = min_cut_between_sets(&go, &l, &r)?;
    Ok(Some(cut_small * cut_other))
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_paths_and_single_edge() {
        let mut g = WeightedMultigraph::new();
        for n in ["s", "a", "b", "t"] {
            g.add_vertex(n).unwrap();
        }
        g.add_edge(0, 1, OmegaPoly::one()).unwrap();
        g.add_edge(1, 3, OmegaPoly::one()).unwrap();
        g.add_edge(0, 2, OmegaPoly::one()).unwrap();
        g.add_edge(2, 3, OmegaPoly::one()).unwrap();
        assert_eq!(min_cut(&g, 0, 3).unwrap(), OmegaPoly::constant(2));

        let mut h = WeightedMultigraph::new();
        h.add_vertex("s").unwrap();
        h.add_vertex("t").unwrap();
        h.add_vertex("z").unwrap();
        h.add_edge(0, 1, OmegaPoly::pow(5)).unwrap();
        assert_eq!(min_cut(&h, 0, 1).unwrap(), OmegaPoly::pow(5));
        assert_eq!(min_cut(&h, 0, 2).unwrap(), OmegaPoly::zero());
        assert!(min_cut(&h, 0, 0).is_err());
    }

    #[test]
    fn polynomial_bottleneck() {
        let mut g = WeightedMultigraph::new();
        for n in ["s", "m", "t"] {
            g.add_vertex(n).unwrap();
        }
        g.add_edge(0, 1, OmegaPoly::pow(3)).unwrap();
        g.add_edge(1, 2, OmegaPoly::pow(3) - OmegaPoly::one()).unwrap();
        g.add_edge(0, 2, OmegaPoly::pow(1)).unwrap();
        assert_eq!(min_cut(&g, 0, 2).unwrap(), OmegaPoly::pow(3) + OmegaPoly::pow(1) - OmegaPoly::one());
    }
}
