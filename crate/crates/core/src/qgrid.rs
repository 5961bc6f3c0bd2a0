//! The red grid of Q paths shared by the frame and the satisfiability
//! gadget. Column j carries two parallel paths Q^2_j, Q^3_j with private
//! vertices `x2_i_j`, `x3_i_j`; row i runs Q^1_i through both of them in
//! every column, `x3` first.

use crate::graph::{Color, EdgeId, WeightedMultigraph};
use crate::poly::OmegaPoly;

/// One Q path: its edges from the first port to the second.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPath {
    /// 1 for rows, 2 and 3 for the two copies of a column.
    pub family: u8,
    pub index: usize,
    pub edges: Vec<EdgeId>,
    /// The edge that crosses R in the canonical drawings.
    pub r_edge: EdgeId,
    pub ports: (usize, usize),
}

/// Interior weights of a row.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowKind {
    /// Every interior edge is light (unit - 1).
    Light,
    /// Only the edges between `x3` and `x2` are light.
    Clause,
    /// No light edges.
    Corridor,
}

/// Adds the grid for `rows.len()` rows and columns. `port(i)` names anchor
/// i in 1..=4k; `unit` is the weight of an ordinary grid edge.
pub fn add_q_grid(g: &mut WeightedMultigraph, port: &dyn Fn(usize) -> String, unit: &OmegaPoly, rows: &[RowKind]) -> Vec<QPath> {
    let k = rows.len();
    let light = unit - &OmegaPoly::one();
    let mut path = |names: &[String], w: &dyn Fn(usize) -> OmegaPoly| -> Vec<EdgeId> {
        let ids: Vec<_> = names.iter().map(|n| g.ensure_vertex(n, Color::Red)).collect();
        ids.windows(2).enumerate().map(|(m, p)| g.add_edge(p[0], p[1], w(m)).expect("grid edges join distinct vertices")).collect()
    };
    let x = |f: u8, i: usize, j: usize| format!("x{f}_{i}_{j}");
    let mut q = Vec::new();
    for (i, kind) in (1..=k).zip(rows) {
        let mut names = vec![port(i)];
        for j in 1..=k {
            names.push(x(3, i, j));
            names.push(x(2, i, j));
        }
        names.push(port(3 * k + 1 - i));
        let last = 2 * k;
        let w = |m: usize| match kind {
            _ if m == 0 || m == last => unit.clone(),
            RowKind::Light => light.clone(),
            RowKind::Clause if m % 2 == 1 => light.clone(),
            _ => unit.clone(),
        };
        let edges = path(&names, &w);
        let r_edge = edges[2 * i - 1];
        q.push(QPath { family: 1, index: i, edges, r_edge, ports: (i, 3 * k + 1 - i) });
    }
    for f in [2u8, 3] {
        for j in 1..=k {
            let mut names = vec![port(k + j)];
            names.extend((1..=k).rev().map(|i| x(f, i, j)));
            names.push(port(4 * k + 1 - j));
            let edges = path(&names, &|_| unit.clone());
            let r_edge = if f == 2 { edges[k - j] } else { edges[k - j + 1] };
            q.push(QPath { family: f, index: j, edges, r_edge, ports: (k + j, 4 * k + 1 - j) });
        }
    }
    q
}
