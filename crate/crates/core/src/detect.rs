//! Forbidden subgraph detection: cycles, theta graphs and K5 minus an edge.
//!
//! Containment is ordinary (not induced) subgraph containment. A theta graph
//! on `k` vertices is a `k`-cycle together with any chord, so detection
//! enumerates `k`-cycles and looks for a chord with bit-set lookups.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::graph::{bits, Adjacency, Graph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DetectError {
    #[error("cycle length {0} is below 3")]
    CycleTooShort(usize),
    #[error("theta order {0} is below 4")]
    ThetaTooSmall(usize),
    #[error("unknown family tag `{0}`")]
    UnknownTag(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pattern {
    Cycle(usize),
    Theta(usize),
    K5Minus,
}

impl Pattern {
    /// Concrete graphs for this pattern. A theta graph expands into one graph
    /// per chord distance `2..=k/2`.
    pub fn expand(&self) -> Vec<Graph> {
        match *self {
            Pattern::Cycle(k) => vec![Graph::cycle(k).expect("k <= 64")],
            Pattern::Theta(k) => (2..=k / 2)
                .map(|d| Graph::cycle(k).and_then(|c| c.add_edge(0, d)).expect("k <= 64"))
                .collect(),
            Pattern::K5Minus => vec![crate::constructions::k5_minus()],
        }
    }

    pub fn tag(&self) -> String {
        match self {
            Pattern::Cycle(k) => format!("c{k}"),
            Pattern::Theta(k) => format!("theta{k}"),
            Pattern::K5Minus => "k5m".to_string(),
        }
    }

    fn parse(tag: &str) -> Result<Self, DetectError> {
        let unknown = || DetectError::UnknownTag(tag.to_string());
        if tag == "k5m" || tag == "k5minus" {
            return Ok(Pattern::K5Minus);
        }
        if let Some(k) = tag.strip_prefix("theta") {
            let k: usize = k.parse().map_err(|_| unknown())?;
            if k < 4 {
                return Err(DetectError::ThetaTooSmall(k));
            }
            return Ok(Pattern::Theta(k));
        }
        if let Some(k) = tag.strip_prefix('c') {
            let k: usize = k.parse().map_err(|_| unknown())?;
            if k < 3 {
                return Err(DetectError::CycleTooShort(k));
            }
            return Ok(Pattern::Cycle(k));
        }
        Err(unknown())
    }
}

impl Serialize for Pattern {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.tag())
    }
}

/// A set of forbidden patterns. Tags: `theta4`, `c5`, `k5m`, `none`, and
/// unions joined with `+` such as `theta6+k5m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ForbiddenFamily {
    members: Vec<Pattern>,
}

impl ForbiddenFamily {
    pub fn new(members: impl IntoIterator<Item = Pattern>) -> Self {
        let mut members: Vec<Pattern> = members.into_iter().collect();
        members.sort();
        members.dedup();
        ForbiddenFamily { members }
    }

    pub fn none() -> Self {
        ForbiddenFamily::new([])
    }

    pub fn theta(k: usize) -> Result<Self, DetectError> {
        if k < 4 {
            return Err(DetectError::ThetaTooSmall(k));
        }
        Ok(ForbiddenFamily::new([Pattern::Theta(k)]))
    }

    pub fn cycle(k: usize) -> Result<Self, DetectError> {
        if k < 3 {
            return Err(DetectError::CycleTooShort(k));
        }
        Ok(ForbiddenFamily::new([Pattern::Cycle(k)]))
    }

    pub fn k5_minus() -> Self {
        ForbiddenFamily::new([Pattern::K5Minus])
    }

    pub fn union(&self, other: &ForbiddenFamily) -> Self {
        ForbiddenFamily::new(self.members.iter().chain(&other.members).copied())
    }

    pub fn members(&self) -> &[Pattern] {
        &self.members
    }

    pub fn label(&self) -> String {
        if self.members.is_empty() {
            return "none".to_string();
        }
        let tags: Vec<String> = self.members.iter().map(Pattern::tag).collect();
        tags.join("+")
    }

    /// Every concrete forbidden graph.
    pub fn expand(&self) -> Vec<Graph> {
        self.members.iter().flat_map(Pattern::expand).collect()
    }
}

impl FromStr for ForbiddenFamily {
    type Err = DetectError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().to_ascii_lowercase();
        if s == "none" || s.is_empty() {
            return Ok(ForbiddenFamily::none());
        }
        let members = s
            .split('+')
            .map(|t| Pattern::parse(t.trim()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ForbiddenFamily::new(members))
    }
}

impl fmt::Display for ForbiddenFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl Serialize for ForbiddenFamily {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.label())
    }
}

/// An embedded copy of a pattern. For cycles and theta graphs `vertices`
/// lists the cycle in order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub pattern: Pattern,
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

impl Witness {
    fn cycle(pattern: Pattern, cycle: &[usize], chord: Option<(usize, usize)>) -> Self {
        let k = cycle.len();
        let mut edges: Vec<(usize, usize)> = (0..k).map(|i| (cycle[i], cycle[(i + 1) % k])).collect();
        edges.extend(chord);
        Witness {
            pattern,
            vertices: cycle.to_vec(),
            edges,
        }
    }

    /// Checks the copy edge by edge against `g`.
    pub fn verify<A: Adjacency>(&self, g: &A) -> bool {
        let vs = &self.vertices;
        let distinct = vs.iter().enumerate().all(|(i, v)| !vs[..i].contains(v));
        let inside = vs.iter().all(|&v| v < g.order());
        if !distinct || !inside {
            return false;
        }
        if !self.edges.iter().all(|&(a, b)| vs.contains(&a) && vs.contains(&b) && g.has_edge(a, b)) {
            return false;
        }
        let k = vs.len();
        let cycle_ok = || (0..k).all(|i| self.edges.contains(&(vs[i], vs[(i + 1) % k])));
        match self.pattern {
            Pattern::Cycle(len) => k == len && self.edges.len() == k && cycle_ok(),
            Pattern::Theta(len) => {
                if k != len || self.edges.len() != k + 1 || !cycle_ok() {
                    return false;
                }
                let (a, b) = self.edges[k];
                let (i, j) = (
                    vs.iter().position(|&x| x == a).unwrap(),
                    vs.iter().position(|&x| x == b).unwrap(),
                );
                let d = i.abs_diff(j);
                d >= 2 && d <= k - 2
            }
            Pattern::K5Minus => {
                let mut es: Vec<(usize, usize)> =
                    self.edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
                es.sort_unstable();
                es.dedup();
                k == 5 && es.len() >= 9 && es.iter().all(|&(a, b)| a != b)
            }
        }
    }
}

fn lists<A: Adjacency>(g: &A) -> Vec<Vec<usize>> {
    (0..g.order()).map(|v| g.neighbors(v).collect()).collect()
}

/// Walks every `k`-cycle once per starting vertex, with the start the least
/// vertex of the cycle, calling `found` on each until it returns true.
fn search_cycles<A: Adjacency>(
    g: &A,
    k: usize,
    found: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    let adj = lists(g);
    let n = g.order();
    let mut on_path = vec![false; n];
    let mut path = Vec::with_capacity(k);
    for s in 0..n {
        path.push(s);
        on_path[s] = true;
        let hit = extend(g, &adj, k, &mut path, &mut on_path, found);
        on_path[s] = false;
        path.pop();
        if hit {
            return true;
        }
    }
    false
}

fn extend<A: Adjacency>(
    g: &A,
    adj: &[Vec<usize>],
    k: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    found: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    let s = path[0];
    let cur = *path.last().unwrap();
    if path.len() == k {
        return g.has_edge(cur, s) && found(path);
    }
    for &w in &adj[cur] {
        if w <= s || on_path[w] {
            continue;
        }
        path.push(w);
        on_path[w] = true;
        let hit = extend(g, adj, k, path, on_path, found);
        on_path[w] = false;
        path.pop();
        if hit {
            return true;
        }
    }
    false
}

/// A `k`-cycle, or `None`. Lengths beyond the order are simply absent.
pub fn find_cycle<A: Adjacency>(g: &A, k: usize) -> Result<Option<Witness>, DetectError> {
    if k < 3 {
        return Err(DetectError::CycleTooShort(k));
    }
    if k > g.order() {
        return Ok(None);
    }
    let mut witness = None;
    search_cycles(g, k, &mut |cycle| {
        witness = Some(Witness::cycle(Pattern::Cycle(k), cycle, None));
        true
    });
    Ok(witness)
}

fn chord_of<A: Adjacency>(g: &A, cycle: &[usize]) -> Option<(usize, usize)> {
    let k = cycle.len();
    for i in 0..k {
        for j in i + 2..k {
            if i == 0 && j == k - 1 {
                continue;
            }
            if g.has_edge(cycle[i], cycle[j]) {
                return Some((cycle[i], cycle[j]));
            }
        }
    }
    None
}

/// A `k`-cycle with a chord, or `None`.
pub fn find_theta<A: Adjacency>(g: &A, k: usize) -> Result<Option<Witness>, DetectError> {
    if k < 4 {
        return Err(DetectError::ThetaTooSmall(k));
    }
    if k > g.order() {
        return Ok(None);
    }
    let mut witness = None;
    search_cycles(g, k, &mut |cycle| match chord_of(g, cycle) {
        Some(chord) => {
            witness = Some(Witness::cycle(Pattern::Theta(k), cycle, Some(chord)));
            true
        }
        None => false,
    });
    Ok(witness)
}

/// Five vertices spanning at least nine edges. Every such set has three
/// mutually adjacent vertices joined to both of the other two, so triangles
/// with two common neighbours are searched.
pub fn find_k5_minus<A: Adjacency>(g: &A) -> Option<Witness> {
    let adj = lists(g);
    for (a, na) in adj.iter().enumerate() {
        for &b in na.iter().filter(|&&b| b > a) {
            for &c in na.iter().filter(|&&c| c > b && g.has_edge(b, c)) {
                let common: Vec<usize> = na
                    .iter()
                    .copied()
                    .filter(|&x| x != b && x != c && g.has_edge(b, x) && g.has_edge(c, x))
                    .take(2)
                    .collect();
                if let [x, y] = common[..] {
                    let vertices = vec![a, b, c, x, y];
                    let edges = vec![
                        (a, b), (b, c), (a, c),
                        (x, a), (x, b), (x, c),
                        (y, a), (y, b), (y, c),
                    ];
                    return Some(Witness {
                        pattern: Pattern::K5Minus,
                        vertices,
                        edges,
                    });
                }
            }
        }
    }
    None
}

pub fn find_pattern<A: Adjacency>(g: &A, pattern: Pattern) -> Option<Witness> {
    match pattern {
        Pattern::Cycle(k) => find_cycle(g, k).expect("validated pattern"),
        Pattern::Theta(k) => find_theta(g, k).expect("validated pattern"),
        Pattern::K5Minus => find_k5_minus(g),
    }
}

/// First witness over the family's members, in member order.
pub fn family_witness<A: Adjacency>(g: &A, family: &ForbiddenFamily) -> Option<Witness> {
    family.members().iter().find_map(|&p| find_pattern(g, p))
}

pub fn is_family_free<A: Adjacency>(g: &A, family: &ForbiddenFamily) -> bool {
    family_witness(g, family).is_none()
}

/// Whether `g + uv` is still free, given that `g` is free and `uv` is a
/// non-edge. Only copies through the new edge are examined.
pub fn free_after_edge_addition(g: &Graph, family: &ForbiddenFamily, u: usize, v: usize) -> bool {
    debug_assert!(u != v && !g.has_edge(u, v));
    family.members().iter().all(|&p| match p {
        Pattern::Cycle(k) => k > g.order() || !path_with_vertices(g, u, v, k),
        Pattern::Theta(k) => k > g.order() || !chorded_cycle_through(&g.with_edge(u, v), u, k),
        Pattern::K5Minus => !k5_minus_through(g, u, v),
    })
}

/// A `u`-`v` path on exactly `k` vertices.
fn path_with_vertices(g: &Graph, u: usize, v: usize, k: usize) -> bool {
    fn walk(g: &Graph, cur: usize, target: usize, edges_left: usize, seen: u64) -> bool {
        if edges_left == 1 {
            return g.row(cur) >> target & 1 == 1;
        }
        let next = g.row(cur) & !seen & !(1 << target);
        bits(next).any(|w| walk(g, w, target, edges_left - 1, seen | 1 << w))
    }
    walk(g, u, v, k - 1, 1 << u)
}

/// A `k`-cycle through `u` with a chord.
fn chorded_cycle_through(h: &Graph, u: usize, k: usize) -> bool {
    fn walk(h: &Graph, path: &mut [usize; 64], len: usize, k: usize, seen: u64) -> bool {
        let cur = path[len - 1];
        if len == k {
            if h.row(cur) >> path[0] & 1 == 0 {
                return false;
            }
            return (0..k).any(|i| {
                let prev = path[(i + k - 1) % k];
                let next = path[(i + 1) % k];
                h.row(path[i]) & seen & !(1 << prev | 1 << next) != 0
            });
        }
        for w in bits(h.row(cur) & !seen) {
            path[len] = w;
            if walk(h, path, len + 1, k, seen | 1 << w) {
                return true;
            }
        }
        false
    }
    let mut path = [0usize; 64];
    path[0] = u;
    walk(h, &mut path, 1, k, 1 << u)
}

/// A K5 minus an edge in `g + uv` that uses the new edge.
fn k5_minus_through(g: &Graph, u: usize, v: usize) -> bool {
    let h = g.with_edge(u, v);
    let pair = 1u64 << u | 1 << v;
    let cand: Vec<usize> = bits((h.row(u) | h.row(v)) & !pair).collect();
    for (i, &a) in cand.iter().enumerate() {
        for (j, &b) in cand.iter().enumerate().skip(i + 1) {
            for &c in &cand[j + 1..] {
                let set = pair | 1 << a | 1 << b | 1 << c;
                let twice: u32 = bits(set).map(|x| (h.row(x) & set).count_ones()).sum();
                if twice >= 18 {
                    return true;
                }
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{fig3_graph, k5_minus};
    use proptest::prelude::*;

    /// Reference detector: try every injective map of every pattern graph.
    fn contains_naive(g: &Graph, pattern: &Graph) -> bool {
        let (n, p) = (g.order(), pattern.order());
        if p > n {
            return false;
        }
        let pedges = pattern.edges();
        let mut map = vec![usize::MAX; p];
        fn rec(g: &Graph, pedges: &[(usize, usize)], map: &mut Vec<usize>, i: usize, used: u64) -> bool {
            if i == map.len() {
                return pedges.iter().all(|&(a, b)| g.has_edge(map[a], map[b]));
            }
            for x in 0..g.order() {
                if used >> x & 1 == 1 {
                    continue;
                }
                map[i] = x;
                // early edge check against already mapped vertices
                let ok = pedges
                    .iter()
                    .all(|&(a, b)| !(a <= i && b <= i) || g.has_edge(map[a], map[b]));
                if ok && rec(g, pedges, map, i + 1, used | 1 << x) {
                    return true;
                }
            }
            false
        }
        rec(g, &pedges, &mut map, 0, 0)
    }

    fn random_graph(n: usize, seed: u64, density: u64) -> Graph {
        let mut x = seed | 1;
        let mut edges = Vec::new();
        for j in 1..n {
            for i in 0..j {
                x ^= x << 13;
                x ^= x >> 7;
                x ^= x << 17;
                if x % 100 < density {
                    edges.push((i, j));
                }
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn theta_expansion_counts() {
        assert_eq!(Pattern::Theta(4).expand().len(), 1);
        assert_eq!(Pattern::Theta(5).expand().len(), 1);
        assert_eq!(Pattern::Theta(6).expand().len(), 2);
        assert_eq!(Pattern::Theta(4).expand()[0].size(), 5);
    }

    #[test]
    fn tags_round_trip() {
        for tag in ["theta4", "theta5", "theta6", "c4", "c5", "c6", "k5m", "k5m+theta6", "none"] {
            let fam: ForbiddenFamily = tag.parse().unwrap();
            let again: ForbiddenFamily = fam.label().parse().unwrap();
            assert_eq!(fam, again);
        }
        assert_eq!("theta6+k5m".parse::<ForbiddenFamily>().unwrap().label(), "theta6+k5m");
        assert!("theta3".parse::<ForbiddenFamily>().is_err());
        assert!("c2".parse::<ForbiddenFamily>().is_err());
        assert!("k6".parse::<ForbiddenFamily>().is_err());
    }

    #[test]
    fn cycle_examples() {
        let c6 = Graph::cycle(6).unwrap();
        let w = find_cycle(&c6, 6).unwrap().unwrap();
        assert!(w.verify(&c6));
        assert_eq!(find_cycle(&Graph::complete(4).unwrap(), 5), Ok(None));
        assert_eq!(find_cycle(&fig3_graph(), 6), Ok(None));
        assert_eq!(find_cycle(&c6, 2), Err(DetectError::CycleTooShort(2)));
    }

    #[test]
    fn theta_examples() {
        let k4 = Graph::complete(4).unwrap();
        let w = find_theta(&k4, 4).unwrap().unwrap();
        assert!(w.verify(&k4));
        assert_eq!(find_theta(&fig3_graph(), 6), Ok(None));
        assert!(find_theta(&k5_minus(), 5).unwrap().is_some());
        assert_eq!(find_theta(&k4, 3), Err(DetectError::ThetaTooSmall(3)));
    }

    #[test]
    fn k5_minus_examples() {
        let w = find_k5_minus(&k5_minus()).unwrap();
        assert!(w.verify(&k5_minus()));
        assert!(find_k5_minus(&fig3_graph()).is_some());
        let q3 = Graph::from_edges(
            8,
            &[
                (0, 1), (1, 2), (2, 3), (3, 0),
                (4, 5), (5, 6), (6, 7), (7, 4),
                (0, 4), (1, 5), (2, 6), (3, 7),
            ],
        )
        .unwrap();
        assert!(find_k5_minus(&q3).is_none());
    }

    #[test]
    fn family_checks() {
        let theta6: ForbiddenFamily = "theta6".parse().unwrap();
        assert!(is_family_free(&Graph::cycle(6).unwrap(), &theta6));
        assert!(!is_family_free(&Graph::complete(6).unwrap(), &theta6));
    }

    #[test]
    fn agrees_with_naive_oracle_up_to_seven_vertices() {
        let patterns = [
            Pattern::Cycle(3), Pattern::Cycle(4), Pattern::Cycle(5), Pattern::Cycle(6),
            Pattern::Theta(4), Pattern::Theta(5), Pattern::Theta(6), Pattern::K5Minus,
        ];
        for n in 4..=7 {
            for seed in 0..150u64 {
                let g = random_graph(n, seed * 7919 + n as u64, 25 + seed % 50);
                for p in patterns {
                    let fast = find_pattern(&g, p);
                    let slow = p.expand().iter().any(|h| contains_naive(&g, h));
                    assert_eq!(fast.is_some(), slow, "{p:?} on {g:?}");
                    if let Some(w) = fast {
                        assert!(w.verify(&g));
                    }
                }
            }
        }
    }

    #[test]
    fn incremental_check_matches_full_check() {
        let families: Vec<ForbiddenFamily> = ["theta4", "theta5", "theta6", "c4", "c5", "c6", "k5m"]
            .iter()
            .map(|t| t.parse().unwrap())
            .collect();
        for seed in 0..300u64 {
            let n = 5 + (seed % 5) as usize;
            let base = random_graph(n, seed + 17, 30);
            for fam in &families {
                // strip edges until free, then try adding each non-edge
                let mut g = base.clone();
                while let Some(w) = family_witness(&g, fam) {
                    let (a, b) = w.edges[0];
                    g = g.remove_edge(a, b).unwrap();
                }
                for u in 0..n {
                    for v in u + 1..n {
                        if g.has_edge(u, v) {
                            continue;
                        }
                        let full = is_family_free(&g.add_edge(u, v).unwrap(), fam);
                        assert_eq!(free_after_edge_addition(&g, fam, u, v), full, "{fam} {g:?} + {u}{v}");
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn cycle_absence_implies_theta_absence(n in 4usize..9, seed in any::<u64>(), k in 4usize..7) {
            let g = random_graph(n, seed, 45);
            if find_cycle(&g, k).unwrap().is_none() {
                prop_assert!(find_theta(&g, k).unwrap().is_none());
            }
        }

        #[test]
        fn freeness_is_closed_under_deletion(n in 5usize..9, seed in any::<u64>(), drop in 0usize..20) {
            let fam: ForbiddenFamily = "theta5".parse().unwrap();
            let mut g = random_graph(n, seed, 35);
            while let Some(w) = family_witness(&g, &fam) {
                let (a, b) = w.edges[0];
                g = g.remove_edge(a, b).unwrap();
            }
            let edges = g.edges();
            if !edges.is_empty() {
                let (a, b) = edges[drop % edges.len()];
                prop_assert!(is_family_free(&g.remove_edge(a, b).unwrap(), &fam));
            }
        }
    }
}
