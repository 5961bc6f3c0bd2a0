//! Exact weighted crossing number by branch-and-bound over planarizations.
//!
//! A search node fixes a set of crossings as dummy vertices. If the derived
//! graph is nonplanar it contains a Kuratowski subdivision, and by the weak
//! Hanani-Tutte theorem every drawing crosses two of its independent branch
//! paths. The node branches on those segment pairs; later siblings exclude
//! the pairs taken by earlier ones. Lower bounds add up subdivisions whose
//! candidate pair sets are disjoint.

use std::cmp::Ordering;
use std::collections::{BTreeSet, BinaryHeap, HashMap, HashSet, VecDeque};
use std::time::{Duration, Instant};

use log::debug;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::drawing::{verify_drawing, Planarization};
use crate::graph::{EdgeId, VertexId, WeightedMultigraph};
use crate::planarity;
use crate::poly::OmegaPoly;

use super::heuristic::insertion_drawing;

#[derive(Clone, Debug, Default)]
pub struct SolveOptions {
    /// Stop exploring anything heavier than this.
    pub budget: Option<OmegaPoly>,
    /// Return as soon as a drawing within the budget is known.
    pub stop_within_budget: bool,
    pub node_limit: Option<u64>,
    pub time_limit: Option<Duration>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveStatus {
    Optimal,
    WithinBudget,
    ExceedsBudget,
    Unknown,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SolveStats {
    pub nodes: u64,
    pub planarity_tests: u64,
    pub elapsed_ms: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct SolveResult {
    pub status: SolveStatus,
    pub value: Option<OmegaPoly>,
    pub witness: Option<Planarization>,
    pub stats: SolveStats,
}

impl SolveResult {
    pub fn optimal_value(&self) -> Option<&OmegaPoly> {
        match self.status {
            SolveStatus::Optimal => self.value.as_ref(),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
struct Seg {
    a: VertexId,
    b: VertexId,
    origin: EdgeId,
    parent: Option<usize>,
    alive: bool,
}

#[derive(Clone, Debug)]
struct Node {
    segs: Vec<Seg>,
    vertex_count: usize,
    crossed: BTreeSet<(EdgeId, EdgeId)>,
    excluded: Vec<(usize, usize)>,
    cost: OmegaPoly,
}

#[derive(Clone, Debug)]
struct Candidate {
    s: usize,
    t: usize,
    cost: OmegaPoly,
}

enum Stop {
    Limit,
    Done,
}

struct Search<'a> {
    g: &'a WeightedMultigraph,
    opts: &'a SolveOptions,
    start: Instant,
    stats: SolveStats,
    best: Option<(OmegaPoly, Planarization)>,
}

pub fn crossing_number_exact(g: &WeightedMultigraph, opts: &SolveOptions) -> SolveResult {
    let mut search = Search { g, opts, start: Instant::now(), stats: SolveStats::default(), best: None };
    let root = Node {
        segs: g
            .edges()
            .iter()
            .enumerate()
            .map(|(i, e)| Seg { a: e.u, b: e.v, origin: i, parent: None, alive: true })
            .collect(),
        vertex_count: g.vertex_count(),
        crossed: BTreeSet::new(),
        excluded: Vec::new(),
        cost: OmegaPoly::zero(),
    };
    let outcome = search.run(root);
    search.stats.elapsed_ms = search.start.elapsed().as_millis();
    let stats = search.stats.clone();
    match (outcome, search.best) {
        (Err(Stop::Limit), best) => SolveResult {
            status: SolveStatus::Unknown,
            value: None,
            witness: best.map(|b| b.1),
            stats,
        },
        (Err(Stop::Done), Some((v, w))) => {
            SolveResult { status: SolveStatus::WithinBudget, value: Some(v), witness: Some(w), stats }
        }
        (Ok(()), Some((v, w))) => {
            SolveResult { status: SolveStatus::Optimal, value: Some(v), witness: Some(w), stats }
        }
        (_, None) => SolveResult { status: SolveStatus::ExceedsBudget, value: None, witness: None, stats },
    }
}

/// True iff the weighted crossing number is at most `k`; `None` on a limit.
pub fn decide_crossing_le(g: &WeightedMultigraph, k: &OmegaPoly, opts: &SolveOptions) -> Option<bool> {
    let opts = SolveOptions { budget: Some(k.clone()), stop_within_budget: true, ..opts.clone() };
    match crossing_number_exact(g, &opts).status {
        SolveStatus::Optimal | SolveStatus::WithinBudget => Some(true),
        SolveStatus::ExceedsBudget => Some(false),
        SolveStatus::Unknown => None,
    }
}

/// Open node ordered by bound, then deeper first, then creation order.
struct Open {
    bound: OmegaPoly,
    seq: u64,
    node: Node,
}

impl PartialEq for Open {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Open {}

impl PartialOrd for Open {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Open {
    fn cmp(&self, other: &Self) -> Ordering {
        // BinaryHeap pops the maximum, so smaller bounds compare greater.
        other
            .bound
            .cmp(&self.bound)
            .then_with(|| self.node.cost.cmp(&other.node.cost))
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

impl<'a> Search<'a> {
    fn run(&mut self, root: Node) -> Result<(), Stop> {
        self.seed()?;
        let mut heap = BinaryHeap::new();
        let mut seq = 0u64;
        heap.push(Open { bound: OmegaPoly::zero(), seq, node: root });
        while let Some(Open { bound, node, .. }) = heap.pop() {
            if self.prune(&bound) {
                // Everything left is at least as heavy.
                break;
            }
            self.stats.nodes += 1;
            if let Some(limit) = self.opts.node_limit {
                if self.stats.nodes > limit {
                    return Err(Stop::Limit);
                }
            }
            if let Some(limit) = self.opts.time_limit {
                if self.start.elapsed() > limit {
                    return Err(Stop::Limit);
                }
            }
            let alive: Vec<usize> = (0..node.segs.len()).filter(|&i| node.segs[i].alive).collect();
            let Some(kernel) = self.nonplanar_core(&node, &alive) else {
                self.leaf(&node)?;
                continue;
            };
            let first = self.candidates(&node, &kernel);
            if first.is_empty() {
                continue;
            }
            let Some((lb, candidates)) = self.lower_bound(&node, &alive, &kernel, first) else {
                continue;
            };
            let own = &node.cost + &lb;
            if self.prune(&own) {
                continue;
            }
            let bound = if own > bound { own } else { bound };
            for (i, c) in candidates.iter().enumerate() {
                let child_cost = &node.cost + &c.cost;
                if self.prune(&child_cost) {
                    break;
                }
                let mut child = node.clone();
                for prev in &candidates[..i] {
                    child.excluded.push((prev.s, prev.t));
                }
                apply_crossing(&mut child, self.g, c);
                seq += 1;
                let key = if child_cost > bound { child_cost } else { bound.clone() };
                heap.push(Open { bound: key, seq, node: child });
            }
        }
        Ok(())
    }

    /// Seed the incumbent with an insertion heuristic drawing.
    fn seed(&mut self) -> Result<(), Stop> {
        const ROUNDS: usize = 8;
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let Some((cost, p)) = insertion_drawing(self.g, ROUNDS, &mut rng) else {
            return Ok(());
        };
        if self.opts.budget.as_ref().is_some_and(|b| &cost > b) {
            return Ok(());
        }
        debug!("heuristic incumbent {}", cost);
        self.best = Some((cost, p));
        if self.opts.stop_within_budget {
            return Err(Stop::Done);
        }
        Ok(())
    }

    fn prune(&self, at_least: &OmegaPoly) -> bool {
        if let Some(budget) = &self.opts.budget {
            if at_least > budget {
                return true;
            }
        }
        match &self.best {
            Some((v, _)) => at_least >= v,
            None => false,
        }
    }

    fn leaf(&mut self, node: &Node) -> Result<(), Stop> {
        if self.best.as_ref().is_some_and(|(v, _)| &node.cost >= v) {
            return Ok(());
        }
        // Touching points can survive in a planar derived graph; dropping
        // every removable crossing leaves a genuine drawing that is no worse.
        let p = minimize_witness(self.g, planarization_of(self.g, node));
        let cost = p.weight(self.g).expect("witness edges exist");
        debug!("incumbent {} after {} nodes", cost, self.stats.nodes);
        debug_assert!(verify_drawing(self.g, &p));
        self.best = Some((cost, p));
        if self.opts.stop_within_budget {
            return Err(Stop::Done);
        }
        Ok(())
    }

    fn ends(&self, node: &Node, segs: &[usize]) -> Vec<(VertexId, VertexId)> {
        segs.iter().map(|&s| (node.segs[s].a, node.segs[s].b)).collect()
    }

    fn is_planar(&mut self, node: &Node, segs: &[usize]) -> bool {
        self.stats.planarity_tests += 1;
        planarity::is_planar_edges(node.vertex_count, &self.ends(node, segs))
    }

    /// A minimal nonplanar subset of `active` (segment ids), or `None` if the
    /// segments are planar. Crossable light segments are removed first.
    fn nonplanar_core(&mut self, node: &Node, active: &[usize]) -> Option<Vec<usize>> {
        if self.is_planar(node, active) {
            return None;
        }
        let g = self.g;
        let mut order = active.to_vec();
        order.sort_by(|&x, &y| {
            let (ex, ey) = (g.edge(node.segs[x].origin), g.edge(node.segs[y].origin));
            ex.forbidden
                .cmp(&ey.forbidden)
                .then_with(|| ex.weight.cmp(&ey.weight))
                .then(x.cmp(&y))
        });
        let mut current: BTreeSet<usize> = active.iter().copied().collect();
        self.shrink(node, &mut current, &order);
        Some(current.into_iter().collect())
    }

    fn shrink(&mut self, node: &Node, current: &mut BTreeSet<usize>, chunk: &[usize]) {
        if chunk.is_empty() {
            return;
        }
        for s in chunk {
            current.remove(s);
        }
        let rest: Vec<usize> = current.iter().copied().collect();
        if !self.is_planar(node, &rest) {
            return;
        }
        for s in chunk {
            current.insert(*s);
        }
        if chunk.len() == 1 {
            return;
        }
        let mid = chunk.len() / 2;
        self.shrink(node, current, &chunk[..mid]);
        self.shrink(node, current, &chunk[mid..]);
    }

    /// Eligible segment pairs on independent branch paths of `kernel`,
    /// cheapest first.
    fn candidates(&self, node: &Node, kernel: &[usize]) -> Vec<Candidate> {
        let g = self.g;
        let paths = branch_paths(node, kernel);
        let mut out = Vec::new();
        for (i, p) in paths.iter().enumerate() {
            for q in &paths[i + 1..] {
                if p.ends.0 == q.ends.0 || p.ends.0 == q.ends.1 || p.ends.1 == q.ends.0 || p.ends.1 == q.ends.1 {
                    continue;
                }
                for &s in &p.segs {
                    for &t in &q.segs {
                        if eligible(g, node, s, t) {
                            let (e, f) = (node.segs[s].origin, node.segs[t].origin);
                            let (s, t) = (s.min(t), s.max(t));
                            out.push(Candidate { s, t, cost: &g.edge(e).weight * &g.edge(f).weight });
                        }
                    }
                }
            }
        }
        out.sort_by(|x, y| {
            let key = |c: &Candidate| {
                let (e, f) = (node.segs[c.s].origin, node.segs[c.t].origin);
                (e.min(f), e.max(f), c.s, c.t)
            };
            x.cost.cmp(&y.cost).then_with(|| key(x).cmp(&key(y)))
        });
        out
    }

    /// Greedy packing of subdivisions with pairwise disjoint candidate sets.
    /// Further subdivisions are searched for after deleting branch paths of
    /// those already found. Returns the bound and the smallest candidate
    /// list seen (the branching set), or `None` if some subdivision has no
    /// eligible pair.
    fn lower_bound(
        &mut self,
        node: &Node,
        alive: &[usize],
        first: &[usize],
        first_candidates: Vec<Candidate>,
    ) -> Option<(OmegaPoly, Vec<Candidate>)> {
        const TRIES: usize = 10;
        let g = self.g;
        let crossable = |s: &usize| !g.edge(node.segs[*s].origin).forbidden;
        let mut lb = first_candidates[0].cost.clone();
        let mut used: HashSet<(usize, usize)> = first_candidates.iter().map(|c| (c.s, c.t)).collect();
        let mut queue: VecDeque<BTreeSet<usize>> = VecDeque::new();
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut push_children = |queue: &mut VecDeque<BTreeSet<usize>>, base: &BTreeSet<usize>, core: &[usize]| {
            for p in branch_paths(node, core) {
                let segs: Vec<usize> = p.segs.iter().copied().filter(crossable).collect();
                if segs.is_empty() || segs.iter().all(|s| base.contains(s)) {
                    continue;
                }
                let mut r = base.clone();
                r.extend(segs);
                if seen.insert(r.iter().copied().collect()) {
                    queue.push_back(r);
                }
            }
        };
        push_children(&mut queue, &BTreeSet::new(), first);
        let mut branch = first_candidates;
        let mut tries = 0;
        while let Some(removed) = queue.pop_front() {
            if tries == TRIES || self.prune(&(&node.cost + &lb)) {
                break;
            }
            tries += 1;
            let rest: Vec<usize> = alive.iter().copied().filter(|s| !removed.contains(s)).collect();
            let Some(core) = self.nonplanar_core(node, &rest) else {
                continue;
            };
            let cands = self.candidates(node, &core);
            if cands.is_empty() {
                return None;
            }
            if cands.iter().all(|c| !used.contains(&(c.s, c.t))) {
                lb += &cands[0].cost;
                used.extend(cands.iter().map(|c| (c.s, c.t)));
            }
            if cands.len() < branch.len() {
                branch = cands;
            }
            push_children(&mut queue, &removed, &core);
        }
        Some((lb, branch))
    }
}

struct BranchPath {
    ends: (VertexId, VertexId),
    segs: Vec<usize>,
}

/// Split a Kuratowski subdivision into paths between vertices of degree
/// at least three.
fn branch_paths(node: &Node, core: &[usize]) -> Vec<BranchPath> {
    let mut inc: HashMap<VertexId, Vec<usize>> = HashMap::new();
    for &s in core {
        inc.entry(node.segs[s].a).or_default().push(s);
        inc.entry(node.segs[s].b).or_default().push(s);
    }
    let is_branch = |v: VertexId| inc[&v].len() != 2;
    let mut used: HashSet<usize> = HashSet::new();
    let mut out = Vec::new();
    let mut starts: Vec<VertexId> = inc.keys().copied().filter(|&v| is_branch(v)).collect();
    starts.sort_unstable();
    for start in starts {
        for &first in &inc[&start] {
            if used.contains(&first) {
                continue;
            }
            let mut segs = vec![first];
            used.insert(first);
            let mut at = other_end(node, first, start);
            let mut last = first;
            while !is_branch(at) {
                let next = *inc[&at].iter().find(|&&s| s != last).expect("degree two");
                used.insert(next);
                segs.push(next);
                last = next;
                at = other_end(node, next, at);
            }
            out.push(BranchPath { ends: (start, at), segs });
        }
    }
    out
}

fn other_end(node: &Node, s: usize, x: VertexId) -> VertexId {
    if node.segs[s].a == x {
        node.segs[s].b
    } else {
        node.segs[s].a
    }
}

fn is_ancestor_or_self(node: &Node, anc: usize, mut s: usize) -> bool {
    loop {
        if s == anc {
            return true;
        }
        match node.segs[s].parent {
            Some(p) => s = p,
            None => return false,
        }
    }
}

fn eligible(g: &WeightedMultigraph, node: &Node, s: usize, t: usize) -> bool {
    let (e, f) = (node.segs[s].origin, node.segs[t].origin);
    if e == f {
        return false;
    }
    let (ee, ff) = (g.edge(e), g.edge(f));
    if ee.forbidden || ff.forbidden || ee.adjacent_to(ff) {
        return false;
    }
    if node.crossed.contains(&(e.min(f), e.max(f))) {
        return false;
    }
    !node.excluded.iter().any(|&(x, y)| {
        (is_ancestor_or_self(node, x, s) && is_ancestor_or_self(node, y, t))
            || (is_ancestor_or_self(node, x, t) && is_ancestor_or_self(node, y, s))
    })
}

fn apply_crossing(node: &mut Node, g: &WeightedMultigraph, c: &Candidate) {
    let x = node.vertex_count;
    node.vertex_count += 1;
    for s in [c.s, c.t] {
        node.segs[s].alive = false;
        let Seg { a, b, origin, .. } = node.segs[s];
        node.segs.push(Seg { a, b: x, origin, parent: Some(s), alive: true });
        node.segs.push(Seg { a: x, b, origin, parent: Some(s), alive: true });
    }
    let (e, f) = (node.segs[c.s].origin, node.segs[c.t].origin);
    node.crossed.insert((e.min(f), e.max(f)));
    node.cost += &g.edge(e).weight * &g.edge(f).weight;
}

/// Read the crossing order along every edge off the segment paths.
fn planarization_of(g: &WeightedMultigraph, node: &Node) -> Planarization {
    let n0 = g.vertex_count();
    // Partner of each dummy, per origin edge.
    let mut by_origin: Vec<Vec<(VertexId, VertexId)>> = vec![Vec::new(); g.edge_count()];
    for s in node.segs.iter().filter(|s| s.alive) {
        by_origin[s.origin].push((s.a, s.b));
    }
    let mut dummy_edges: Vec<Vec<EdgeId>> = vec![Vec::new(); node.vertex_count - n0];
    for (e, segs) in by_origin.iter().enumerate() {
        for &(a, b) in segs {
            for x in [a, b] {
                if x >= n0 && !dummy_edges[x - n0].contains(&e) {
                    dummy_edges[x - n0].push(e);
                }
            }
        }
    }
    let mut p = Planarization::empty(g.edge_count());
    for (e, segs) in by_origin.iter().enumerate() {
        let target = g.edge(e).v;
        let mut at = g.edge(e).u;
        let mut used = vec![false; segs.len()];
        while at != target {
            let i = (0..segs.len())
                .find(|&i| !used[i] && (segs[i].0 == at || segs[i].1 == at))
                .expect("segments of an edge form a path");
            used[i] = true;
            at = if segs[i].0 == at { segs[i].1 } else { segs[i].0 };
            if at >= n0 {
                let pair = &dummy_edges[at - n0];
                let partner = if pair[0] == e { pair[1] } else { pair[0] };
                p.crossings[e].push(partner);
            }
        }
    }
    p
}

/// Drop crossings while the derived graph stays planar. A crossing that
/// survives is needed in every embedding, hence transversal.
pub fn minimize_witness(g: &WeightedMultigraph, mut p: Planarization) -> Planarization {
    loop {
        let mut changed = false;
        for pair in p.pairs() {
            let mut trial = p.clone();
            trial.crossings[pair.a].retain(|&f| f != pair.b);
            trial.crossings[pair.b].retain(|&f| f != pair.a);
            let d = trial.derived_graph(g);
            if planarity::is_planar_edges(d.vertex_count, &d.ends) {
                p = trial;
                changed = true;
                break;
            }
        }
        if !changed {
            return p;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drawing::verify_drawing;

    fn complete(n: usize) -> WeightedMultigraph {
        let mut g = WeightedMultigraph::new();
        for i in 0..n {
            g.add_vertex(format!("v{i}")).unwrap();
        }
        for i in 0..n {
            for j in i + 1..n {
                g.add_edge(i, j, OmegaPoly::one()).unwrap();
            }
        }
        g
    }

    #[test]
    fn k5_and_k6() {
        let r = crossing_number_exact(&complete(5), &SolveOptions::default());
        assert_eq!(r.status, SolveStatus::Optimal);
        assert_eq!(r.value, Some(OmegaPoly::one()));
        assert!(verify_drawing(&complete(5), r.witness.as_ref().unwrap()));
        let r6 = crossing_number_exact(&complete(6), &SolveOptions::default());
        assert_eq!(r6.value, Some(OmegaPoly::constant(3)));
        assert!(verify_drawing(&complete(6), r6.witness.as_ref().unwrap()));
    }

    #[test]
    fn planar_is_zero() {
        let r = crossing_number_exact(&complete(4), &SolveOptions::default());
        assert_eq!(r.value, Some(OmegaPoly::zero()));
    }

    #[test]
    fn decisions() {
        let k5 = complete(5);
        let o = SolveOptions::default();
        assert_eq!(decide_crossing_le(&k5, &OmegaPoly::zero(), &o), Some(false));
        assert_eq!(decide_crossing_le(&k5, &OmegaPoly::one(), &o), Some(true));
        assert_eq!(decide_crossing_le(&complete(4), &OmegaPoly::zero(), &o), Some(true));
    }

    #[test]
    fn node_limit_reports_unknown() {
        let o = SolveOptions { node_limit: Some(1), ..Default::default() };
        let r = crossing_number_exact(&complete(6), &o);
        assert_eq!(r.status, SolveStatus::Unknown);
        assert!(r.value.is_none());
    }
}
