//! Kuratowski subgraphs of non-planar graphs.

use serde::Serialize;

use super::lr;
use crate::graph::Adjacency;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum KuratowskiKind {
    #[serde(rename = "K5")]
    K5,
    #[serde(rename = "K3,3")]
    K33,
}

/// A subdivision of K5 or K3,3 contained in the graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KuratowskiWitness {
    pub kind: KuratowskiKind,
    pub branch_vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

impl KuratowskiWitness {
    /// Edges exist in `g` and form a subdivision of the claimed kind.
    pub fn verify<A: Adjacency>(&self, g: &A) -> bool {
        if !self.edges.iter().all(|&(u, v)| g.has_edge(u, v)) {
            return false;
        }
        let n = g.order();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let branch_degree = match self.kind {
            KuratowskiKind::K5 => 4,
            KuratowskiKind::K33 => 3,
        };
        let is_branch = |v: usize| self.branch_vertices.contains(&v);
        for (v, list) in adj.iter().enumerate() {
            let expected = if is_branch(v) {
                branch_degree
            } else if list.is_empty() {
                0
            } else {
                2
            };
            if list.len() != expected {
                return false;
            }
        }
        // trace each branch path and record which branch pairs it joins
        let mut joined = Vec::new();
        for &b in &self.branch_vertices {
            for &first in &adj[b] {
                let (mut prev, mut cur) = (b, first);
                while !is_branch(cur) {
                    let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
                    (prev, cur) = (cur, next);
                }
                if cur == b {
                    return false;
                }
                joined.push((b.min(cur), b.max(cur)));
            }
        }
        joined.sort_unstable();
        joined.dedup();
        let bs = &self.branch_vertices;
        match self.kind {
            KuratowskiKind::K5 => bs.len() == 5 && joined.len() == 10,
            KuratowskiKind::K33 => {
                if bs.len() != 6 || joined.len() != 9 {
                    return false;
                }
                // two-colour the branch graph
                let mut colour = vec![None; n];
                colour[bs[0]] = Some(0);
                let mut changed = true;
                while changed {
                    changed = false;
                    for &(a, b) in &joined {
                        match (colour[a], colour[b]) {
                            (Some(x), None) => {
                                colour[b] = Some(1 - x);
                                changed = true;
                            }
                            (None, Some(x)) => {
                                colour[a] = Some(1 - x);
                                changed = true;
                            }
                            (Some(x), Some(y)) if x == y => return false,
                            _ => {}
                        }
                    }
                }
                bs.iter().filter(|&&b| colour[b] == Some(0)).count() == 3
            }
        }
    }
}

/// Deletes edges while the remainder stays non-planar; what is left is a
/// minimal non-planar subgraph, hence a Kuratowski subdivision.
pub(super) fn find(adj: &[Vec<usize>]) -> KuratowskiWitness {
    let n = adj.len();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (u, list) in adj.iter().enumerate() {
        for &v in list {
            if u < v {
                edges.push((u, v));
            }
        }
    }
    let mut keep = vec![true; edges.len()];
    for i in 0..edges.len() {
        keep[i] = false;
        let mut trial = vec![Vec::new(); n];
        for (j, &(u, v)) in edges.iter().enumerate() {
            if keep[j] {
                trial[u].push(v);
                trial[v].push(u);
            }
        }
        if lr::is_planar(&trial) {
            keep[i] = true;
        }
    }
    let edges: Vec<(usize, usize)> = edges
        .into_iter()
        .zip(keep)
        .filter_map(|(e, k)| k.then_some(e))
        .collect();
    let mut degree = vec![0; n];
    for &(u, v) in &edges {
        degree[u] += 1;
        degree[v] += 1;
    }
    let branch_vertices: Vec<usize> = (0..n).filter(|&v| degree[v] > 2).collect();
    let kind = if branch_vertices.iter().all(|&v| degree[v] == 4) && branch_vertices.len() == 5 {
        KuratowskiKind::K5
    } else {
        KuratowskiKind::K33
    };
    KuratowskiWitness {
        kind,
        branch_vertices,
        edges,
    }
}
