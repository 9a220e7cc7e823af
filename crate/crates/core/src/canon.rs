//! Canonical labelling by colour refinement and individualisation.
//!
//! The search tree is the usual one: refine the ordered vertex partition to an
//! equitable one, individualise each vertex of the first non-singleton cell
//! in turn, and recurse. Each leaf is a relabelling; the canonical form is
//! the least adjacency code over the leaves. Subtrees are skipped when a
//! known automorphism fixing the current prefix maps an explored vertex onto
//! the candidate (twin transpositions are recognised directly).

use smallvec::SmallVec;

use crate::graph::{bits, Adjacency, Graph, Rows};

type Code = SmallVec<[u64; 2]>;
type Cells = SmallVec<[u64; 16]>;

/// Relabelling-invariant code of a graph: the vertex count plus the upper
/// triangle of the canonically relabelled adjacency matrix, in graph6 bit
/// order, packed most significant bit first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CanonicalForm {
    n: usize,
    code: Code,
}

impl CanonicalForm {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn words(&self) -> &[u64] {
        &self.code
    }

    /// The canonical representative itself.
    pub fn to_graph(&self) -> Graph {
        let mut rows: Rows = smallvec::smallvec![0; self.n];
        let mut k = 0;
        for j in 1..self.n {
            for i in 0..j {
                if self.code[k / 64] >> (63 - k % 64) & 1 == 1 {
                    rows[i] |= 1 << j;
                    rows[j] |= 1 << i;
                }
                k += 1;
            }
        }
        Graph::from_rows(rows)
    }

    pub fn graph6(&self) -> String {
        crate::graph6::encode(&self.to_graph())
    }
}

/// Canonical form together with the relabelling that produces it.
#[derive(Clone, Debug)]
pub struct Labeling {
    pub form: CanonicalForm,
    /// `perm[v]` is the canonical label of vertex `v`.
    pub perm: SmallVec<[u8; 16]>,
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    canonical_labeling(g).form
}

pub fn canonical_graph(g: &Graph) -> Graph {
    canonical_form(g).to_graph()
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.order() == b.order() && a.size() == b.size() && canonical_form(a) == canonical_form(b)
}

pub fn canonical_labeling(g: &Graph) -> Labeling {
    let n = g.order();
    if n == 0 {
        return Labeling {
            form: CanonicalForm {
                n: 0,
                code: Code::new(),
            },
            perm: SmallVec::new(),
        };
    }
    let mut search = Search {
        g,
        best: None,
        automorphisms: Vec::new(),
    };
    let mut prefix = SmallVec::new();
    search.descend(degree_partition(g), &mut prefix);
    let (code, perm) = search.best.expect("search visits at least one leaf");
    Labeling {
        form: CanonicalForm { n, code },
        perm,
    }
}

/// Least code over all `n!` relabellings. Exponential; used as a reference
/// for small graphs.
pub fn canonical_form_exhaustive(g: &Graph) -> CanonicalForm {
    let n = g.order();
    assert!(n <= 10, "exhaustive canonical form is limited to 10 vertices");
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = code_of(g, &perm);
    // Heap's algorithm
    let mut c = vec![0usize; n];
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            let code = code_of(g, &perm);
            if code < best {
                best = code;
            }
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    CanonicalForm { n, code: best }
}

/// Code of the graph relabelled by `perm` (vertex `v` gets label `perm[v]`).
fn code_of<P: Copy + Into<usize>>(g: &Graph, perm: &[P]) -> Code {
    let n = g.order();
    let mut rows: SmallVec<[u64; 16]> = smallvec::smallvec![0; n];
    for v in 0..n {
        let mut r = 0u64;
        for w in bits(g.row(v)) {
            r |= 1 << perm[w].into();
        }
        rows[perm[v].into()] = r;
    }
    pack_rows(&rows)
}

fn pack_rows(rows: &[u64]) -> Code {
    let n = rows.len();
    let total = n * n.saturating_sub(1) / 2;
    let mut code: Code = smallvec::smallvec![0; total.div_ceil(64)];
    let mut pos = 0usize;
    for (j, &row) in rows.iter().enumerate().skip(1) {
        // bits x(0,j) .. x(j-1,j), first one most significant
        let chunk = (row & ((1u64 << j) - 1)).reverse_bits() >> (64 - j);
        let word = pos / 64;
        let used = pos % 64;
        let free = 64 - used;
        if j <= free {
            code[word] |= chunk << (free - j);
        } else {
            let spill = j - free;
            code[word] |= chunk >> spill;
            code[word + 1] |= chunk << (64 - spill);
        }
        pos += j;
    }
    code
}

fn degree_partition(g: &Graph) -> Cells {
    let n = g.order();
    let mut by_degree = [0u64; 65];
    for v in 0..n {
        by_degree[g.degree(v)] |= 1 << v;
    }
    by_degree.iter().copied().filter(|&m| m != 0).collect()
}

/// Refine to the coarsest equitable ordered partition. Cells are split by the
/// vector of neighbour counts into every cell, ordered lexicographically, so
/// the result commutes with relabelling.
fn refine(g: &Graph, cells: &mut Cells) {
    loop {
        if cells.len() == g.order() {
            return;
        }
        let mut next = Cells::new();
        let snapshot = cells.clone();
        for &cell in snapshot.iter() {
            if cell.count_ones() == 1 {
                next.push(cell);
                continue;
            }
            let mut keyed: SmallVec<[(SmallVec<[u8; 16]>, usize); 16]> = bits(cell)
                .map(|v| {
                    let sig = snapshot
                        .iter()
                        .map(|&c| (g.row(v) & c).count_ones() as u8)
                        .collect();
                    (sig, v)
                })
                .collect();
            keyed.sort_unstable();
            let mut mask = 0u64;
            for k in 0..keyed.len() {
                if k > 0 && keyed[k].0 != keyed[k - 1].0 {
                    next.push(mask);
                    mask = 0;
                }
                mask |= 1 << keyed[k].1;
            }
            next.push(mask);
        }
        let stable = next.len() == cells.len();
        *cells = next;
        if stable {
            return;
        }
    }
}

struct Search<'a> {
    g: &'a Graph,
    best: Option<(Code, SmallVec<[u8; 16]>)>,
    automorphisms: Vec<SmallVec<[u8; 64]>>,
}

const MAX_STORED_AUTOMORPHISMS: usize = 64;

impl Search<'_> {
    fn descend(&mut self, mut cells: Cells, prefix: &mut SmallVec<[u8; 16]>) {
        refine(self.g, &mut cells);
        let Some(target) = cells.iter().position(|c| c.count_ones() > 1) else {
            self.leaf(&cells);
            return;
        };
        let cell = cells[target];
        let mut tried: SmallVec<[usize; 16]> = SmallVec::new();
        for v in bits(cell) {
            if self.equivalent_to_tried(v, &tried, prefix) {
                continue;
            }
            tried.push(v);
            let mut child = Cells::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target]);
            child.push(1 << v);
            child.push(cell & !(1 << v));
            child.extend_from_slice(&cells[target + 1..]);
            prefix.push(v as u8);
            self.descend(child, prefix);
            prefix.pop();
        }
    }

    fn equivalent_to_tried(&self, v: usize, tried: &[usize], prefix: &[u8]) -> bool {
        if tried.is_empty() {
            return false;
        }
        let g = self.g;
        let twin = tried
            .iter()
            .any(|&w| g.row(v) & !(1 << w) == g.row(w) & !(1 << v));
        if twin {
            return true;
        }
        let usable: SmallVec<[&SmallVec<[u8; 64]>; 8]> = self
            .automorphisms
            .iter()
            .filter(|a| prefix.iter().all(|&p| a[p as usize] == p))
            .collect();
        if usable.is_empty() {
            return false;
        }
        let mut orbit = tried.iter().fold(0u64, |m, &w| m | 1 << w);
        loop {
            let mut grown = orbit;
            for a in &usable {
                for x in bits(orbit) {
                    grown |= 1 << a[x];
                }
            }
            if grown == orbit {
                break;
            }
            orbit = grown;
        }
        orbit >> v & 1 == 1
    }

    fn leaf(&mut self, cells: &Cells) {
        let n = self.g.order();
        let mut perm: SmallVec<[u8; 16]> = smallvec::smallvec![0; n];
        for (label, &cell) in cells.iter().enumerate() {
            perm[cell.trailing_zeros() as usize] = label as u8;
        }
        let code = code_of(self.g, &perm);
        match &self.best {
            None => self.best = Some((code, perm)),
            Some((best, _)) if code < *best => self.best = Some((code, perm)),
            Some((best, best_perm)) if code == *best => {
                if self.automorphisms.len() < MAX_STORED_AUTOMORPHISMS {
                    let mut inverse: SmallVec<[u8; 16]> = smallvec::smallvec![0; n];
                    for v in 0..n {
                        inverse[best_perm[v] as usize] = v as u8;
                    }
                    let aut: SmallVec<[u8; 64]> =
                        (0..n).map(|v| inverse[perm[v] as usize]).collect();
                    self.automorphisms.push(aut);
                }
            }
            Some(_) => {}
        }
    }
}
