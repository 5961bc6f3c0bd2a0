//! Left-right planarity test with embedding extraction.
//!
//! Works on a simple graph given as an edge list. All recursion is unrolled
//! onto explicit stacks so deep DFS trees (walls, long paths) are fine.

const NONE: usize = usize::MAX;

#[derive(Clone, Copy, Debug)]
struct Interval {
    low: usize,
    high: usize,
}

impl Interval {
    const EMPTY: Interval = Interval { low: NONE, high: NONE };

    fn is_empty(&self) -> bool {
        self.low == NONE && self.high == NONE
    }
}

#[derive(Clone, Copy, Debug)]
struct ConflictPair {
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }
}

struct State<'a> {
    n: usize,
    edges: &'a [(usize, usize)],
    adj: Vec<Vec<(usize, usize)>>,
    // Orientation.
    src: Vec<usize>,
    tgt: Vec<usize>,
    oriented: Vec<bool>,
    out: Vec<Vec<usize>>,
    height: Vec<usize>,
    parent_edge: Vec<usize>,
    roots: Vec<usize>,
    lowpt: Vec<usize>,
    lowpt2: Vec<usize>,
    nesting_depth: Vec<i64>,
    // Testing.
    ref_: Vec<usize>,
    side: Vec<i8>,
    lowpt_edge: Vec<usize>,
    stack_bottom: Vec<usize>,
    s: Vec<ConflictPair>,
}

/// Cyclic edge order around every vertex of a planar embedding, or `None`.
///
/// `rotation[v]` lists indices into `edges`. Loops and parallel edges are
/// not allowed.
pub fn planar_rotation(n: usize, edges: &[(usize, usize)]) -> Option<Vec<Vec<usize>>> {
    let mut st = test(n, edges)?;
    for e in 0..edges.len() {
        let s = st.sign(e) as i64;
        st.nesting_depth[e] *= s;
    }
    let mut ordered = st.out.clone();
    for list in ordered.iter_mut() {
        list.sort_by_key(|&e| st.nesting_depth[e]);
    }
    Some(st.embed(&ordered))
}

/// Verdict only, without building the embedding.
pub fn is_planar(n: usize, edges: &[(usize, usize)]) -> bool {
    test(n, edges).is_some()
}

fn test(n: usize, edges: &[(usize, usize)]) -> Option<State<'_>> {
    if n > 2 && edges.len() > 3 * n - 6 {
        return None;
    }
    let mut st = State::new(n, edges);
    for v in 0..n {
        if st.height[v] == NONE {
            st.height[v] = 0;
            st.roots.push(v);
            st.dfs_orientation(v);
        }
    }
    let mut ordered = st.out.clone();
    for list in ordered.iter_mut() {
        list.sort_by_key(|&e| st.nesting_depth[e]);
    }
    for &r in &st.roots.clone() {
        if !st.dfs_testing(r, &ordered) {
            return None;
        }
    }
    Some(st)
}

impl<'a> State<'a> {
    fn new(n: usize, edges: &'a [(usize, usize)]) -> Self {
        let m = edges.len();
        let mut adj = vec![Vec::new(); n];
        for (i, &(u, v)) in edges.iter().enumerate() {
            debug_assert_ne!(u, v, "loop in simple graph");
            adj[u].push((v, i));
            adj[v].push((u, i));
        }
        State {
            n,
            edges,
            adj,
            src: vec![NONE; m],
            tgt: vec![NONE; m],
            oriented: vec![false; m],
            out: vec![Vec::new(); n],
            height: vec![NONE; n],
            parent_edge: vec![NONE; n],
            roots: Vec::new(),
            lowpt: vec![0; m],
            lowpt2: vec![0; m],
            nesting_depth: vec![0; m],
            ref_: vec![NONE; m],
            side: vec![1; m],
            lowpt_edge: vec![NONE; m],
            stack_bottom: vec![0; m],
            s: Vec::new(),
        }
    }

    fn dfs_orientation(&mut self, root: usize) {
        let mut stack = vec![root];
        let mut ind = vec![0usize; self.n];
        let mut skip_init = vec![false; self.edges.len()];
        while let Some(v) = stack.pop() {
            let e = self.parent_edge[v];
            while ind[v] < self.adj[v].len() {
                let (w, vw) = self.adj[v][ind[v]];
                if !skip_init[vw] {
                    if self.oriented[vw] {
                        ind[v] += 1;
                        continue;
                    }
                    self.oriented[vw] = true;
                    self.src[vw] = v;
                    self.tgt[vw] = w;
                    self.out[v].push(vw);
                    self.lowpt[vw] = self.height[v];
                    self.lowpt2[vw] = self.height[v];
                    if self.height[w] == NONE {
                        self.parent_edge[w] = vw;
                        self.height[w] = self.height[v] + 1;
                        stack.push(v);
                        stack.push(w);
                        skip_init[vw] = true;
                        break;
                    }
                    self.lowpt[vw] = self.height[w];
                }
                self.nesting_depth[vw] = 2 * self.lowpt[vw] as i64;
                if self.lowpt2[vw] < self.height[v] {
                    self.nesting_depth[vw] += 1;
                }
                if e != NONE {
                    if self.lowpt[vw] < self.lowpt[e] {
                        self.lowpt2[e] = self.lowpt[e].min(self.lowpt2[vw]);
                        self.lowpt[e] = self.lowpt[vw];
                    } else if self.lowpt[vw] > self.lowpt[e] {
                        self.lowpt2[e] = self.lowpt2[e].min(self.lowpt[vw]);
                    } else {
                        self.lowpt2[e] = self.lowpt2[e].min(self.lowpt2[vw]);
                    }
                }
                ind[v] += 1;
            }
        }
    }

    fn dfs_testing(&mut self, root: usize, ordered: &[Vec<usize>]) -> bool {
        let mut stack = vec![root];
        let mut ind = vec![0usize; self.n];
        let mut skip_init = vec![false; self.edges.len()];
        while let Some(v) = stack.pop() {
            let e = self.parent_edge[v];
            let mut skip_final = false;
            while ind[v] < ordered[v].len() {
                let ei = ordered[v][ind[v]];
                let w = self.tgt[ei];
                if !skip_init[ei] {
                    self.stack_bottom[ei] = self.s.len();
                    if ei == self.parent_edge[w] {
                        stack.push(v);
                        stack.push(w);
                        skip_init[ei] = true;
                        skip_final = true;
                        break;
                    }
                    self.lowpt_edge[ei] = ei;
                    self.s.push(ConflictPair {
                        left: Interval::EMPTY,
                        right: Interval { low: ei, high: ei },
                    });
                }
                if self.lowpt[ei] < self.height[v] {
                    if ei == ordered[v][0] {
                        self.lowpt_edge[e] = self.lowpt_edge[ei];
                    } else if !self.add_constraints(ei, e) {
                        return false;
                    }
                }
                ind[v] += 1;
            }
            if !skip_final && e != NONE {
                self.remove_back_edges(e);
            }
        }
        true
    }

    fn conflicting(&self, i: &Interval, b: usize) -> bool {
        !i.is_empty() && self.lowpt[i.high] > self.lowpt[b]
    }

    fn lowest(&self, p: &ConflictPair) -> usize {
        if p.left.is_empty() {
            return self.lowpt[p.right.low];
        }
        if p.right.is_empty() {
            return self.lowpt[p.left.low];
        }
        self.lowpt[p.left.low].min(self.lowpt[p.right.low])
    }

    fn add_constraints(&mut self, ei: usize, e: usize) -> bool {
        let mut p = ConflictPair { left: Interval::EMPTY, right: Interval::EMPTY };
        loop {
            let mut q = self.s.pop().expect("conflict stack underflow");
            if !q.left.is_empty() {
                q.swap();
            }
            if !q.left.is_empty() {
                return false;
            }
            if self.lowpt[q.right.low] > self.lowpt[e] {
                if p.right.is_empty() {
                    p.right = q.right;
                } else {
                    self.ref_[p.right.low] = q.right.high;
                }
                p.right.low = q.right.low;
            } else {
                self.ref_[q.right.low] = self.lowpt_edge[e];
            }
            if self.s.len() == self.stack_bottom[ei] {
                break;
            }
        }
        while let Some(top) = self.s.last() {
            if !(self.conflicting(&top.left, ei) || self.conflicting(&top.right, ei)) {
                break;
            }
            let mut q = self.s.pop().unwrap();
            if self.conflicting(&q.right, ei) {
                q.swap();
            }
            if self.conflicting(&q.right, ei) {
                return false;
            }
            if p.right.low != NONE {
                self.ref_[p.right.low] = q.right.high;
            }
            if q.right.low != NONE {
                p.right.low = q.right.low;
            }
            if p.left.is_empty() {
                p.left = q.left;
            } else {
                self.ref_[p.left.low] = q.left.high;
            }
            p.left.low = q.left.low;
        }
        if !(p.left.is_empty() && p.right.is_empty()) {
            self.s.push(p);
        }
        true
    }

    fn remove_back_edges(&mut self, e: usize) {
        let u = self.src[e];
        while let Some(top) = self.s.last() {
            if self.lowest(top) != self.height[u] {
                break;
            }
            let p = self.s.pop().unwrap();
            if p.left.low != NONE {
                self.side[p.left.low] = -1;
            }
        }
        if let Some(mut p) = self.s.pop() {
            while p.left.high != NONE && self.tgt[p.left.high] == u {
                p.left.high = self.ref_[p.left.high];
            }
            if p.left.high == NONE && p.left.low != NONE {
                self.ref_[p.left.low] = p.right.low;
                self.side[p.left.low] = -1;
                p.left.low = NONE;
            }
            while p.right.high != NONE && self.tgt[p.right.high] == u {
                p.right.high = self.ref_[p.right.high];
            }
            if p.right.high == NONE && p.right.low != NONE {
                self.ref_[p.right.low] = p.left.low;
                self.side[p.right.low] = -1;
                p.right.low = NONE;
            }
            self.s.push(p);
        }
        if self.lowpt[e] < self.height[u] {
            let top = self.s.last().expect("return edge without conflict pair");
            let (hl, hr) = (top.left.high, top.right.high);
            if hl != NONE && (hr == NONE || self.lowpt[hl] > self.lowpt[hr]) {
                self.ref_[e] = hl;
            } else {
                self.ref_[e] = hr;
            }
        }
    }

    fn sign(&mut self, e: usize) -> i8 {
        let mut chain = vec![e];
        let mut x = e;
        while self.ref_[x] != NONE {
            x = self.ref_[x];
            chain.push(x);
        }
        for i in (0..chain.len() - 1).rev() {
            let (a, b) = (chain[i], chain[i + 1]);
            self.side[a] *= self.side[b];
            self.ref_[a] = NONE;
        }
        self.side[e]
    }

    /// Darts: `2e` sits at `src[e]`, `2e + 1` at `tgt[e]`.
    fn embed(&self, ordered: &[Vec<usize>]) -> Vec<Vec<usize>> {
        let m = self.edges.len();
        let mut emb = DartRing::new(self.n, 2 * m);
        for (v, order) in ordered.iter().enumerate().take(self.n) {
            let mut prev = NONE;
            for &e in order {
                emb.insert_cw_after(v, 2 * e, prev);
                prev = 2 * e;
            }
        }
        let mut left_ref = vec![NONE; self.n];
        let mut right_ref = vec![NONE; self.n];
        let mut ind = vec![0usize; self.n];
        for &root in &self.roots {
            let mut stack = vec![root];
            while let Some(v) = stack.pop() {
                while ind[v] < ordered[v].len() {
                    let ei = ordered[v][ind[v]];
                    ind[v] += 1;
                    let w = self.tgt[ei];
                    if ei == self.parent_edge[w] {
                        emb.insert_first(w, 2 * ei + 1);
                        left_ref[v] = 2 * ei;
                        right_ref[v] = 2 * ei;
                        stack.push(v);
                        stack.push(w);
                        break;
                    }
                    if self.side[ei] == 1 {
                        emb.insert_cw_after(w, 2 * ei + 1, right_ref[w]);
                    } else {
                        emb.insert_ccw_before(w, 2 * ei + 1, left_ref[w]);
                        left_ref[w] = 2 * ei + 1;
                    }
                }
            }
        }
        (0..self.n).map(|v| emb.cycle(v).into_iter().map(|d| d / 2).collect()).collect()
    }
}

/// Doubly linked cyclic dart lists, one per vertex.
struct DartRing {
    cw: Vec<usize>,
    ccw: Vec<usize>,
    first: Vec<usize>,
}

impl DartRing {
    fn new(n: usize, darts: usize) -> Self {
        DartRing { cw: vec![NONE; darts], ccw: vec![NONE; darts], first: vec![NONE; n] }
    }

    fn insert_cw_after(&mut self, v: usize, d: usize, reference: usize) {
        if reference == NONE {
            if self.first[v] == NONE {
                self.cw[d] = d;
                self.ccw[d] = d;
                self.first[v] = d;
                return;
            }
            let f = self.first[v];
            return self.insert_cw_after(v, d, self.ccw[f]);
        }
        let next = self.cw[reference];
        self.cw[reference] = d;
        self.ccw[d] = reference;
        self.cw[d] = next;
        self.ccw[next] = d;
    }

    fn insert_ccw_before(&mut self, v: usize, d: usize, reference: usize) {
        if reference == NONE {
            return self.insert_cw_after(v, d, NONE);
        }
        let prev = self.ccw[reference];
        self.insert_cw_after(v, d, prev);
        if self.first[v] == reference {
            self.first[v] = d;
        }
    }

    fn insert_first(&mut self, v: usize, d: usize) {
        let f = self.first[v];
        if f == NONE {
            self.insert_cw_after(v, d, NONE);
        } else {
            self.insert_ccw_before(v, d, f);
        }
    }

    fn cycle(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let f = self.first[v];
        if f == NONE {
            return out;
        }
        let mut d = f;
        loop {
            out.push(d);
            d = self.cw[d];
            if d == f {
                break;
            }
        }
        out
    }
}
