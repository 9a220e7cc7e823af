//! Left-right planarity test with embedding.
//!
//! DFS orientation, then the conflict-pair test, then a second pass that
//! assigns sides to back edges and builds clockwise neighbour lists.

const NONE: usize = usize::MAX;

#[derive(Clone, Copy)]
struct Interval {
    low: usize,
    high: usize,
}

impl Interval {
    const EMPTY: Interval = Interval {
        low: NONE,
        high: NONE,
    };

    fn is_empty(&self) -> bool {
        self.low == NONE && self.high == NONE
    }
}

#[derive(Clone, Copy)]
struct ConflictPair {
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }
}

struct Lr<'a> {
    adj: &'a [Vec<usize>],
    n: usize,
    height: Vec<usize>,
    parent_edge: Vec<usize>,
    roots: Vec<usize>,
    src: Vec<usize>,
    dst: Vec<usize>,
    lowpt: Vec<usize>,
    lowpt2: Vec<usize>,
    nesting: Vec<i64>,
    reference: Vec<usize>,
    side: Vec<i8>,
    stack_bottom: Vec<usize>,
    lowpt_edge: Vec<usize>,
    out: Vec<Vec<usize>>,
    pair_edge: Vec<usize>,
    stack: Vec<ConflictPair>,
    left_ref: Vec<usize>,
    right_ref: Vec<usize>,
    rotation: Vec<Vec<usize>>,
}

/// Returns clockwise neighbour lists when the graph is planar.
pub(crate) fn embed(adj: &[Vec<usize>]) -> Option<Vec<Vec<usize>>> {
    run(adj, true)
}

pub(crate) fn is_planar(adj: &[Vec<usize>]) -> bool {
    run(adj, false).is_some()
}

fn run(adj: &[Vec<usize>], build: bool) -> Option<Vec<Vec<usize>>> {
    let n = adj.len();
    let m: usize = adj.iter().map(Vec::len).sum::<usize>() / 2;
    if n > 2 && m > 3 * n - 6 {
        return None;
    }
    let mut lr = Lr {
        adj,
        n,
        height: vec![NONE; n],
        parent_edge: vec![NONE; n],
        roots: Vec::new(),
        src: Vec::with_capacity(m),
        dst: Vec::with_capacity(m),
        lowpt: Vec::with_capacity(m),
        lowpt2: Vec::with_capacity(m),
        nesting: Vec::with_capacity(m),
        reference: vec![NONE; m],
        side: vec![1; m],
        stack_bottom: vec![0; m],
        lowpt_edge: vec![NONE; m],
        out: vec![Vec::new(); n],
        pair_edge: vec![NONE; n * n],
        stack: Vec::new(),
        left_ref: vec![NONE; n],
        right_ref: vec![NONE; n],
        rotation: Vec::new(),
    };
    for v in 0..n {
        if lr.height[v] == NONE {
            lr.height[v] = 0;
            lr.roots.push(v);
            lr.orient(v);
        }
    }
    for v in 0..n {
        let mut out = std::mem::take(&mut lr.out[v]);
        out.sort_by_key(|&e| lr.nesting[e]);
        lr.out[v] = out;
    }
    for i in 0..lr.roots.len() {
        let r = lr.roots[i];
        if !lr.test(r) {
            return None;
        }
    }
    if !build {
        return Some(Vec::new());
    }
    for e in 0..lr.src.len() {
        let s = lr.sign(e) as i64;
        lr.nesting[e] *= s;
    }
    lr.rotation = vec![Vec::new(); n];
    for v in 0..n {
        let mut out = std::mem::take(&mut lr.out[v]);
        out.sort_by_key(|&e| lr.nesting[e]);
        lr.rotation[v] = out.iter().map(|&e| lr.dst[e]).collect();
        lr.out[v] = out;
    }
    for i in 0..lr.roots.len() {
        let r = lr.roots[i];
        lr.place(r);
    }
    Some(lr.rotation)
}

impl Lr<'_> {
    fn orient(&mut self, v: usize) {
        let e = self.parent_edge[v];
        for &w in &self.adj[v] {
            if self.pair_edge[v * self.n + w] != NONE {
                continue;
            }
            let vw = self.src.len();
            self.src.push(v);
            self.dst.push(w);
            self.pair_edge[v * self.n + w] = vw;
            self.pair_edge[w * self.n + v] = vw;
            self.out[v].push(vw);
            self.lowpt.push(self.height[v]);
            self.lowpt2.push(self.height[v]);
            self.nesting.push(0);
            if self.height[w] == NONE {
                self.parent_edge[w] = vw;
                self.height[w] = self.height[v] + 1;
                self.orient(w);
            } else {
                self.lowpt[vw] = self.height[w];
            }
            self.nesting[vw] = 2 * self.lowpt[vw] as i64;
            if self.lowpt2[vw] < self.height[v] {
                self.nesting[vw] += 1;
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
        }
    }

    fn test(&mut self, v: usize) -> bool {
        let e = self.parent_edge[v];
        let first = self.out[v].first().copied();
        for i in 0..self.out[v].len() {
            let ei = self.out[v][i];
            let w = self.dst[ei];
            self.stack_bottom[ei] = self.stack.len();
            if ei == self.parent_edge[w] {
                if !self.test(w) {
                    return false;
                }
            } else {
                self.lowpt_edge[ei] = ei;
                self.stack.push(ConflictPair {
                    left: Interval::EMPTY,
                    right: Interval { low: ei, high: ei },
                });
            }
            if self.lowpt[ei] < self.height[v] {
                if Some(ei) == first {
                    self.lowpt_edge[e] = self.lowpt_edge[ei];
                } else if !self.add_constraints(ei, e) {
                    return false;
                }
            }
        }
        if e != NONE {
            self.remove_back_edges(e);
        }
        true
    }

    fn conflicting(&self, i: &Interval, b: usize) -> bool {
        !i.is_empty() && self.lowpt[i.high] > self.lowpt[b]
    }

    fn add_constraints(&mut self, ei: usize, e: usize) -> bool {
        let mut p = ConflictPair {
            left: Interval::EMPTY,
            right: Interval::EMPTY,
        };
        loop {
            let mut q = self.stack.pop().expect("return edge pushed a conflict pair");
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
                    self.reference[p.right.low] = q.right.high;
                }
                p.right.low = q.right.low;
            } else {
                self.reference[q.right.low] = self.lowpt_edge[e];
            }
            if self.stack.len() == self.stack_bottom[ei] {
                break;
            }
        }
        while let Some(top) = self.stack.last() {
            if !(self.conflicting(&top.left, ei) || self.conflicting(&top.right, ei)) {
                break;
            }
            let mut q = self.stack.pop().unwrap();
            if self.conflicting(&q.right, ei) {
                q.swap();
            }
            if self.conflicting(&q.right, ei) {
                return false;
            }
            if p.right.low != NONE {
                self.reference[p.right.low] = q.right.high;
            }
            if q.right.low != NONE {
                p.right.low = q.right.low;
            }
            if p.left.is_empty() {
                p.left = q.left;
            } else {
                self.reference[p.left.low] = q.left.high;
            }
            p.left.low = q.left.low;
        }
        if !(p.left.is_empty() && p.right.is_empty()) {
            self.stack.push(p);
        }
        true
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

    fn remove_back_edges(&mut self, e: usize) {
        let u = self.src[e];
        while let Some(top) = self.stack.last() {
            if self.lowest(top) != self.height[u] {
                break;
            }
            let p = self.stack.pop().unwrap();
            if p.left.low != NONE {
                self.side[p.left.low] = -1;
            }
        }
        if let Some(mut p) = self.stack.pop() {
            while p.left.high != NONE && self.dst[p.left.high] == u {
                p.left.high = self.reference[p.left.high];
            }
            if p.left.high == NONE && p.left.low != NONE {
                self.reference[p.left.low] = p.right.low;
                self.side[p.left.low] = -1;
                p.left.low = NONE;
            }
            while p.right.high != NONE && self.dst[p.right.high] == u {
                p.right.high = self.reference[p.right.high];
            }
            if p.right.high == NONE && p.right.low != NONE {
                self.reference[p.right.low] = p.left.low;
                self.side[p.right.low] = -1;
                p.right.low = NONE;
            }
            self.stack.push(p);
        }
        if self.lowpt[e] < self.height[u] {
            let top = self.stack.last().expect("return edge keeps a conflict pair");
            let (hl, hr) = (top.left.high, top.right.high);
            self.reference[e] = if hl != NONE && (hr == NONE || self.lowpt[hl] > self.lowpt[hr]) {
                hl
            } else {
                hr
            };
        }
    }

    fn sign(&mut self, e: usize) -> i8 {
        let mut chain = Vec::new();
        let mut x = e;
        while self.reference[x] != NONE {
            chain.push(x);
            x = self.reference[x];
        }
        let mut s = self.side[x];
        for &y in chain.iter().rev() {
            self.side[y] *= s;
            self.reference[y] = NONE;
            s = self.side[y];
        }
        self.side[e]
    }

    fn place(&mut self, v: usize) {
        for i in 0..self.out[v].len() {
            let ei = self.out[v][i];
            let w = self.dst[ei];
            if ei == self.parent_edge[w] {
                self.rotation[w].insert(0, v);
                self.left_ref[v] = w;
                self.right_ref[v] = w;
                self.place(w);
            } else if self.side[ei] == 1 {
                let at = position(&self.rotation[w], self.right_ref[w]);
                self.rotation[w].insert(at + 1, v);
            } else {
                let at = position(&self.rotation[w], self.left_ref[w]);
                self.rotation[w].insert(at, v);
                self.left_ref[w] = v;
            }
        }
    }
}

fn position(list: &[usize], x: usize) -> usize {
    list.iter()
        .position(|&y| y == x)
        .expect("reference neighbour is already placed")
}
