//! Exact planar Turán numbers by canonical augmentation.
//!
//! Graphs on `n` vertices are generated edge by edge from the empty graph.
//! A child `h = g + uv` is kept only when deleting a canonically chosen edge
//! of `h` gives a graph isomorphic to `g`, and children of one parent are
//! deduplicated by canonical form, so each isomorphism class is visited
//! once. Being planar and being free of a family are both closed under
//! deleting edges, so only edges addable to the parent are tried for its
//! children, and a subtree is cut when its edge count plus the number of
//! addable edges cannot reach a lower bound found by greedy descents.
//!
//! The tree is split into units at the first level holding at least
//! [`SPLIT_LEVEL_SIZE`] nodes. Units run on a rayon pool and their tallies
//! are combined in unit order, so results do not depend on scheduling.

use std::collections::{BTreeMap, HashSet};
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;
use thiserror::Error;

use crate::bounds::bound_formula;
use crate::canon::{canonical_form, canonical_labeling, CanonicalForm};
use crate::detect::{free_after_edge_addition, ForbiddenFamily};
use crate::graph::{bits, Adjacency, Graph};
use crate::graph6;
use crate::planar;

/// Orders accepted without the override.
pub const MAX_ORDER: usize = 11;
/// Minimum number of nodes in the level where the tree is split into units.
pub const SPLIT_LEVEL_SIZE: usize = 64;
const GREEDY_DESCENTS: usize = 32;
const CHECKPOINT_FORMAT: &str = "planar-turan-checkpoint";
const CHECKPOINT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("n = {n} is outside {min}..={max}")]
    OrderOutOfRange { n: usize, min: usize, max: usize },
    #[error("checkpoint {}: {message}", path.display())]
    Checkpoint { path: PathBuf, message: String },
    #[error("checkpoint i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("thread pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

#[derive(Debug, Clone, Default)]
pub struct SearchConfig {
    /// Worker threads; 0 uses every available core.
    pub threads: usize,
    /// Wall-clock budget. When it runs out the result is marked
    /// non-exhaustive.
    pub budget: Option<Duration>,
    /// Line-JSON file recording finished units; an existing file is resumed.
    pub checkpoint: Option<PathBuf>,
    /// Permit `n` above [`MAX_ORDER`] (up to 64).
    pub allow_large: bool,
}

impl SearchConfig {
    pub fn with_threads(threads: usize) -> Self {
        SearchConfig {
            threads,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalResult {
    pub n: usize,
    pub family: String,
    /// Largest edge count found; exact when `exhaustive`.
    pub value: usize,
    /// graph6 of the least canonical form among maximizers.
    pub witness: String,
    /// Maximizers up to isomorphism.
    pub maximizers: u64,
    pub nodes_explored: u64,
    /// Greedy lower bound used for pruning.
    pub lower_bound: usize,
    pub exhaustive: bool,
    pub elapsed_ms: u64,
}

impl ExtremalResult {
    pub fn witness_graph(&self) -> Graph {
        graph6::decode_graph(&self.witness).expect("witness is valid graph6")
    }
}

#[derive(Clone)]
struct Node {
    g: Graph,
    canon: CanonicalForm,
    candidates: Vec<(u8, u8)>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
struct Tally {
    best: Option<usize>,
    witness: Option<CanonicalForm>,
    maximizers: u64,
    nodes: u64,
}

impl Tally {
    fn record(&mut self, m: usize, canon: &CanonicalForm) {
        self.nodes += 1;
        match self.best {
            Some(b) if m < b => {}
            Some(b) if m == b => {
                self.maximizers += 1;
                if self.witness.as_ref().is_none_or(|w| canon < w) {
                    self.witness = Some(canon.clone());
                }
            }
            _ => {
                self.best = Some(m);
                self.maximizers = 1;
                self.witness = Some(canon.clone());
            }
        }
    }

    fn merge(&mut self, other: &Tally) {
        self.nodes += other.nodes;
        match (self.best, other.best) {
            (_, None) => {}
            (Some(a), Some(b)) if b < a => {}
            (Some(a), Some(b)) if a == b => {
                self.maximizers += other.maximizers;
                if other.witness < self.witness {
                    self.witness = other.witness.clone();
                }
            }
            _ => {
                self.best = other.best;
                self.maximizers = other.maximizers;
                self.witness = other.witness.clone();
            }
        }
    }
}

struct Interrupted;

struct Clock<'a> {
    deadline: Option<Instant>,
    stop: &'a AtomicBool,
}

impl Clock<'_> {
    fn tick(&self) -> Result<(), Interrupted> {
        if self.stop.load(Ordering::Relaxed) {
            return Err(Interrupted);
        }
        if self.deadline.is_some_and(|d| Instant::now() >= d) {
            self.stop.store(true, Ordering::Relaxed);
            return Err(Interrupted);
        }
        Ok(())
    }
}

struct Engine<'a> {
    n: usize,
    family: &'a ForbiddenFamily,
    lower_bound: usize,
    max_edges: usize,
}

type EdgeKey = (u32, u32, u32);

fn edge_key(h: &Graph, a: usize, b: usize) -> EdgeKey {
    let (da, db) = (h.degree(a) as u32, h.degree(b) as u32);
    (da + db, da.min(db), (h.row(a) & h.row(b)).count_ones())
}

fn planar_with(g: &Graph, u: usize, v: usize) -> bool {
    let n = g.order();
    let m = g.size() + 1;
    // K5 and K3,3 subdivisions need at least 9 edges
    if m <= 8 || n <= 4 {
        return true;
    }
    if m > 3 * n - 6 {
        return false;
    }
    planar::is_planar(&g.with_edge(u, v))
}

impl<'a> Engine<'a> {
    fn new(n: usize, family: &'a ForbiddenFamily) -> Self {
        let max_edges = if n >= 3 { 3 * n - 6 } else { n * n.saturating_sub(1) / 2 };
        Engine {
            n,
            family,
            lower_bound: 0,
            max_edges,
        }
    }

    fn all_pairs(&self) -> Vec<(u8, u8)> {
        let n = self.n as u8;
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
    }

    fn addable(&self, g: &Graph, candidates: &[(u8, u8)]) -> Vec<(u8, u8)> {
        candidates
            .iter()
            .copied()
            .filter(|&(u, v)| {
                let (u, v) = (u as usize, v as usize);
                free_after_edge_addition(g, self.family, u, v) && planar_with(g, u, v)
            })
            .collect()
    }

    /// Best edge count over seeded random maximal graphs.
    fn greedy_lower_bound(&self) -> usize {
        let mut rng = ChaCha8Rng::seed_from_u64(0x9e37_79b9_7f4a_7c15 ^ self.n as u64);
        let mut best = 0;
        for _ in 0..GREEDY_DESCENTS {
            let mut order = self.all_pairs();
            order.shuffle(&mut rng);
            let mut g = Graph::empty(self.n).expect("n <= 64");
            for (u, v) in order {
                let (u, v) = (u as usize, v as usize);
                if free_after_edge_addition(&g, self.family, u, v) && planar_with(&g, u, v) {
                    g = g.with_edge(u, v);
                }
            }
            best = best.max(g.size());
        }
        best
    }

    fn root(&self) -> Node {
        let g = Graph::empty(self.n).expect("n <= 64");
        Node {
            canon: canonical_form(&g),
            g,
            candidates: self.all_pairs(),
        }
    }

    /// Canonical form of `h = parent + uv` when `uv` is a canonical last edge
    /// of `h` up to isomorphism.
    fn accept(&self, parent: &Node, h: &Graph, u: usize, v: usize) -> Option<CanonicalForm> {
        let key = edge_key(h, u, v);
        let mut ties: SmallVec<[(usize, usize); 16]> = SmallVec::new();
        for a in 0..self.n {
            for b in bits(h.row(a) >> (a + 1)).map(|x| x + a + 1) {
                let k = edge_key(h, a, b);
                if k > key {
                    return None;
                }
                if k == key {
                    ties.push((a, b));
                }
            }
        }
        let lab = canonical_labeling(h);
        if ties.len() == 1 {
            return Some(lab.form);
        }
        let (a, b) = ties
            .iter()
            .copied()
            .max_by_key(|&(a, b)| {
                let (x, y) = (lab.perm[a], lab.perm[b]);
                (x.max(y), x.min(y))
            })
            .expect("uv is among the ties");
        if (a, b) == (u, v) || canonical_form(&h.without_edge(a, b)) == parent.canon {
            Some(lab.form)
        } else {
            None
        }
    }

    fn children(&self, node: &Node, addable: &[(u8, u8)]) -> Vec<Node> {
        let mut seen: HashSet<CanonicalForm> = HashSet::new();
        let mut out = Vec::new();
        for &(u, v) in addable {
            let h = node.g.with_edge(u as usize, v as usize);
            let Some(form) = self.accept(node, &h, u as usize, v as usize) else {
                continue;
            };
            if !seen.insert(form.clone()) {
                continue;
            }
            let candidates = addable.iter().copied().filter(|&e| e != (u, v)).collect();
            out.push(Node {
                g: h,
                canon: form,
                candidates,
            });
        }
        out
    }

    /// Records `node` and returns its children unless the subtree is cut.
    fn expand(&self, node: &Node, tally: &mut Tally) -> Vec<Node> {
        tally.record(node.g.size(), &node.canon);
        let addable = self.addable(&node.g, &node.candidates);
        let reach = (node.g.size() + addable.len()).min(self.max_edges);
        if reach < self.lower_bound {
            return Vec::new();
        }
        self.children(node, &addable)
    }

    fn visit(
        &self,
        node: &Node,
        tally: &mut Tally,
        sink: &mut Option<&mut Vec<CanonicalForm>>,
        clock: &Clock,
    ) -> Result<(), Interrupted> {
        clock.tick()?;
        if let Some(s) = sink {
            s.push(node.canon.clone());
        }
        for child in self.expand(node, tally) {
            self.visit(&child, tally, sink, clock)?;
        }
        Ok(())
    }

    /// Expands level by level until a level holds enough nodes to share out.
    fn split(&self, tally: &mut Tally, sink: &mut Option<&mut Vec<CanonicalForm>>) -> Vec<Node> {
        let mut level = vec![self.root()];
        while !level.is_empty() && level.len() < SPLIT_LEVEL_SIZE {
            let mut next = Vec::new();
            for node in &level {
                if let Some(s) = sink {
                    s.push(node.canon.clone());
                }
                next.extend(self.expand(node, tally));
            }
            level = next;
        }
        level
    }
}

fn check_order(n: usize, min: usize, allow_large: bool) -> Result<(), SearchError> {
    let max = if allow_large { 64 } else { MAX_ORDER };
    if n < min || n > max {
        return Err(SearchError::OrderOutOfRange { n, min, max });
    }
    Ok(())
}

/// Exact `ex_P(n, F)`: the most edges in a planar `F`-free graph on `n`
/// vertices.
pub fn ex_planar(
    n: usize,
    family: &ForbiddenFamily,
    config: &SearchConfig,
) -> Result<ExtremalResult, SearchError> {
    check_order(n, 3, config.allow_large)?;
    let start = Instant::now();
    let stop = AtomicBool::new(false);
    let clock = Clock {
        deadline: config.budget.map(|b| start + b),
        stop: &stop,
    };
    let mut engine = Engine::new(n, family);
    engine.lower_bound = engine.greedy_lower_bound();
    let mut tally = Tally::default();
    let units = engine.split(&mut tally, &mut None);

    let mut checkpoint = match &config.checkpoint {
        Some(path) => Some(Checkpoint::open(path, n, family, engine.lower_bound, units.len())?),
        None => None,
    };
    let resumed = checkpoint.as_ref().map(|c| c.done.clone()).unwrap_or_default();
    let writer = checkpoint.as_mut().map(|c| Mutex::new(&mut c.file));

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads)
        .build()?;
    let outcomes: Vec<(Tally, bool, Option<std::io::Error>)> = pool.install(|| {
        units
            .par_iter()
            .enumerate()
            .map(|(i, unit)| {
                if let Some(t) = resumed.get(&i) {
                    return (t.clone(), true, None);
                }
                let mut t = Tally::default();
                let complete = engine.visit(unit, &mut t, &mut None, &clock).is_ok();
                let mut err = None;
                if complete {
                    if let Some(w) = &writer {
                        let mut file = w.lock().expect("checkpoint lock");
                        err = append_record(&mut file, i, &t).err();
                    }
                }
                (t, complete, err)
            })
            .collect()
    });
    let mut exhaustive = true;
    for (t, complete, err) in &outcomes {
        if let Some(e) = err {
            return Err(SearchError::Io(std::io::Error::new(e.kind(), e.to_string())));
        }
        tally.merge(t);
        exhaustive &= *complete;
    }
    let witness = tally.witness.expect("the root is always recorded");
    Ok(ExtremalResult {
        n,
        family: family.label(),
        value: tally.best.unwrap_or(0),
        witness: witness.graph6(),
        maximizers: tally.maximizers,
        nodes_explored: tally.nodes,
        lower_bound: engine.lower_bound,
        exhaustive,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// Every planar `F`-free graph on `n` vertices, once per isomorphism class,
/// as canonical representatives in generation order.
pub fn enumerate_planar_free(n: usize, family: &ForbiddenFamily) -> Result<Vec<Graph>, SearchError> {
    check_order(n, 0, false)?;
    let stop = AtomicBool::new(false);
    let clock = Clock {
        deadline: None,
        stop: &stop,
    };
    let engine = Engine::new(n, family);
    let mut forms = Vec::new();
    let mut tally = Tally::default();
    let units = engine.split(&mut tally, &mut Some(&mut forms));
    for unit in &units {
        let _ = engine.visit(unit, &mut tally, &mut Some(&mut forms), &clock);
    }
    Ok(forms.iter().map(CanonicalForm::to_graph).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundStatus {
    /// Value equals the bound.
    Tight,
    /// Value is the floor of a fractional bound.
    Floor,
    /// Value is below the floor.
    Strict,
    /// Value exceeds the bound.
    Violation,
    /// `n` is below the bound's range of validity.
    NotApplicable,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundRow {
    pub n: usize,
    pub value: usize,
    pub exhaustive: bool,
    /// Exact bound as `p/q`, when applicable.
    pub bound: Option<String>,
    pub floor: Option<i64>,
    pub status: BoundStatus,
    pub witness: String,
}

/// Compares `ex_planar` with the family's bound formula for each `n` in
/// `lo..=hi`.
pub fn verify_bound_range(
    family: &ForbiddenFamily,
    lo: usize,
    hi: usize,
    config: &SearchConfig,
) -> Result<Vec<BoundRow>, SearchError> {
    let formula = bound_formula(family);
    (lo..=hi)
        .map(|n| {
            let r = ex_planar(n, family, config)?;
            let applicable = formula.filter(|f| n >= f.n_min);
            let (bound, floor, status) = match applicable {
                None => (None, None, BoundStatus::NotApplicable),
                Some(f) => {
                    let exact = f.value(n);
                    let floor = f.floor(n);
                    let v = r.value as i64;
                    let status = if !f.admits(r.value, n) {
                        BoundStatus::Violation
                    } else if exact.is_integer() && v == *exact.numer() {
                        BoundStatus::Tight
                    } else if v == floor {
                        BoundStatus::Floor
                    } else {
                        BoundStatus::Strict
                    };
                    (Some(exact.to_string()), Some(floor), status)
                }
            };
            Ok(BoundRow {
                n,
                value: r.value,
                exhaustive: r.exhaustive,
                bound,
                floor,
                status,
                witness: r.witness,
            })
        })
        .collect()
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
struct CheckpointHeader {
    format: String,
    version: u32,
    n: usize,
    family: String,
    lower_bound: usize,
    units: usize,
}

#[derive(Debug, Serialize, Deserialize)]
struct UnitRecord {
    unit: usize,
    best: Option<usize>,
    witness: Option<String>,
    maximizers: u64,
    nodes: u64,
}

struct Checkpoint {
    file: File,
    done: BTreeMap<usize, Tally>,
}

impl Checkpoint {
    /// Opens or creates the checkpoint. A torn final line is dropped; the
    /// file is rewritten from its valid records before appending.
    fn open(
        path: &Path,
        n: usize,
        family: &ForbiddenFamily,
        lower_bound: usize,
        units: usize,
    ) -> Result<Self, SearchError> {
        let header = CheckpointHeader {
            format: CHECKPOINT_FORMAT.to_string(),
            version: CHECKPOINT_VERSION,
            n,
            family: family.label(),
            lower_bound,
            units,
        };
        let bad = |message: String| SearchError::Checkpoint {
            path: path.to_path_buf(),
            message,
        };
        let mut done = BTreeMap::new();
        if path.exists() {
            let lines: Vec<String> = BufReader::new(File::open(path)?)
                .lines()
                .collect::<Result<_, _>>()?;
            if let Some(first) = lines.first() {
                let found: CheckpointHeader = serde_json::from_str(first)
                    .map_err(|e| bad(format!("unreadable header: {e}")))?;
                if found != header {
                    return Err(bad(format!(
                        "written for n = {}, family {}, lower bound {}, {} units; \
                         this run has n = {n}, family {}, lower bound {lower_bound}, {units} units",
                        found.n,
                        found.family,
                        found.lower_bound,
                        found.units,
                        family.label()
                    )));
                }
                for (i, line) in lines.iter().enumerate().skip(1) {
                    let rec: UnitRecord = match serde_json::from_str(line) {
                        Ok(r) => r,
                        Err(_) if i + 1 == lines.len() => break,
                        Err(e) => return Err(bad(format!("line {}: {e}", i + 1))),
                    };
                    if rec.unit >= units {
                        return Err(bad(format!("line {}: unit {} out of range", i + 1, rec.unit)));
                    }
                    let witness = match rec.witness {
                        Some(s) => Some(canonical_form(
                            &graph6::decode_graph(&s).map_err(|e| bad(format!("line {}: {e}", i + 1)))?,
                        )),
                        None => None,
                    };
                    done.insert(
                        rec.unit,
                        Tally {
                            best: rec.best,
                            witness,
                            maximizers: rec.maximizers,
                            nodes: rec.nodes,
                        },
                    );
                }
            }
        }
        let mut file = OpenOptions::new()
            .create(true)
            .write(true)
            .truncate(true)
            .open(path)?;
        writeln!(file, "{}", serde_json::to_string(&header).expect("header serializes"))?;
        for (&i, t) in &done {
            append_record(&mut file, i, t)?;
        }
        file.flush()?;
        Ok(Checkpoint { file, done })
    }
}

fn append_record(file: &mut File, unit: usize, t: &Tally) -> std::io::Result<()> {
    let rec = UnitRecord {
        unit,
        best: t.best,
        witness: t.witness.as_ref().map(CanonicalForm::graph6),
        maximizers: t.maximizers,
        nodes: t.nodes,
    };
    writeln!(file, "{}", serde_json::to_string(&rec).expect("record serializes"))?;
    file.flush()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detect::is_family_free;

    fn fam(tag: &str) -> ForbiddenFamily {
        tag.parse().unwrap()
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_planar_free(3, &fam("none")).unwrap().len(), 4);
        assert_eq!(enumerate_planar_free(4, &fam("theta4")).unwrap().len(), 9);
        assert_eq!(enumerate_planar_free(4, &fam("none")).unwrap().len(), 11);
        // graphs on 5 vertices: 34, of which K5 is the only non-planar one
        assert_eq!(enumerate_planar_free(5, &fam("none")).unwrap().len(), 33);
    }

    #[test]
    fn enumeration_is_isomorph_free_and_valid() {
        let f = fam("c4");
        let graphs = enumerate_planar_free(6, &f).unwrap();
        let forms: HashSet<CanonicalForm> = graphs.iter().map(canonical_form).collect();
        assert_eq!(forms.len(), graphs.len());
        assert!(graphs.iter().all(|g| is_family_free(g, &f) && planar::is_planar(g)));
    }

    #[test]
    fn base_values() {
        let cfg = SearchConfig::with_threads(1);
        assert_eq!(ex_planar(4, &fam("theta4"), &cfg).unwrap().value, 4);
        assert_eq!(ex_planar(5, &fam("theta5"), &cfg).unwrap().value, 7);
        assert_eq!(ex_planar(6, &fam("theta6"), &cfg).unwrap().value, 10);
    }

    #[test]
    fn order_guard() {
        let cfg = SearchConfig::default();
        assert!(matches!(
            ex_planar(12, &fam("theta6"), &cfg),
            Err(SearchError::OrderOutOfRange { n: 12, .. })
        ));
        assert!(matches!(
            ex_planar(2, &fam("theta6"), &cfg),
            Err(SearchError::OrderOutOfRange { n: 2, .. })
        ));
    }

    #[test]
    fn tally_merge_is_order_independent() {
        let a = canonical_form(&Graph::path(4).unwrap());
        let b = canonical_form(&Graph::cycle(4).unwrap());
        let mut x = Tally::default();
        x.record(3, &a);
        let mut y = Tally::default();
        y.record(3, &b);
        y.record(2, &b);
        let mut xy = x.clone();
        xy.merge(&y);
        let mut yx = y.clone();
        yx.merge(&x);
        assert_eq!(xy, yx);
        assert_eq!(xy.maximizers, 2);
        assert_eq!(xy.nodes, 3);
    }

    /// Every labelled graph, filtered directly.
    fn brute_force(n: usize, f: &ForbiddenFamily) -> (usize, HashSet<CanonicalForm>) {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let mut best = 0;
        let mut classes = HashSet::new();
        for mask in 0u32..1 << pairs.len() {
            let edges: Vec<_> = bits(mask as u64).map(|i| pairs[i]).collect();
            let g = Graph::from_edges(n, &edges).unwrap();
            if planar::is_planar(&g) && is_family_free(&g, f) {
                best = best.max(edges.len());
                classes.insert(crate::canon::canonical_form_exhaustive(&g));
            }
        }
        (best, classes)
    }

    #[test]
    fn agrees_with_brute_force() {
        for tag in ["theta4", "theta5", "c4", "c5", "k5m", "c3+theta4"] {
            let f = fam(tag);
            for n in 3..=5 {
                let (best, classes) = brute_force(n, &f);
                let r = ex_planar(n, &f, &SearchConfig::with_threads(1)).unwrap();
                assert_eq!(r.value, best, "{tag} n={n}");
                let listed = enumerate_planar_free(n, &f).unwrap();
                assert_eq!(listed.len(), classes.len(), "{tag} n={n}");
                let maximizers = classes.iter().filter(|c| c.to_graph().size() == best).count();
                assert_eq!(r.maximizers as usize, maximizers, "{tag} n={n}");
            }
        }
    }
}
