//! Planarity, plane embeddings as rotation systems, and faces.
//!
//! Rotation lists are clockwise. The face to the left of dart `(u, v)`
//! continues with `(v, w)` where `w` follows `u` in the rotation at `v`.

mod audit;
mod kuratowski;
mod lr;
mod profile;
pub mod random;
mod rotation_format;

use std::collections::HashMap;

use thiserror::Error;

use crate::graph::{Adjacency, Graph, GraphError, SparseGraph};
use crate::structure;

pub use audit::{
    audit_observation1, audit_theorem_inequalities, AuditError, AuditReport, Check, Hypothesis,
    Relation,
};
pub use kuratowski::{KuratowskiKind, KuratowskiWitness};
pub use profile::{EdgeSides, FaceProfile};
pub(crate) use rotation_format::is_face_walk;
pub use rotation_format::{parse_rotation, write_rotation, OuterSpec, RotationDocument, RotationError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbeddingError {
    #[error("vertex {vertex} lists neighbour {neighbor} outside 0..{order}")]
    VertexOutOfRange {
        vertex: usize,
        neighbor: usize,
        order: usize,
    },
    #[error("vertex {0} lists itself")]
    SelfLoop(usize),
    #[error("vertex {vertex} lists neighbour {neighbor} twice")]
    RepeatedNeighbor { vertex: usize, neighbor: usize },
    #[error("{u} lists {v} but {v} does not list {u}")]
    Asymmetric { u: usize, v: usize },
    #[error("rotation system is not planar: {faces} faces where Euler requires {expected}")]
    NotPlanar { faces: usize, expected: usize },
    #[error("({0}, {1}) is not an edge of the embedding")]
    MissingDart(usize, usize),
    #[error("face index {index} out of range ({count} faces)")]
    FaceOutOfRange { index: usize, count: usize },
}

/// A planar rotation system with an optional designated outer face, given by
/// one of its darts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneEmbedding {
    rotation: Vec<Vec<usize>>,
    edges: usize,
    outer: Option<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    /// Closed boundary walks as vertex sequences. Only the outer face of a
    /// disconnected graph has more than one; an isolated vertex appears as a
    /// one-vertex walk of length zero.
    pub walks: Vec<Vec<usize>>,
    /// Number of darts on the boundary.
    pub size: usize,
}

#[derive(Debug, Clone)]
pub struct Faces {
    pub faces: Vec<Face>,
    pub outer: usize,
    dart_face: HashMap<(usize, usize), usize>,
}

impl Faces {
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// Face to the left of dart `(u, v)`.
    pub fn face_of(&self, u: usize, v: usize) -> Option<usize> {
        self.dart_face.get(&(u, v)).copied()
    }
}

pub enum Planarity {
    Planar(PlaneEmbedding),
    NonPlanar(NonPlanarVerdict),
}

impl Planarity {
    pub fn embedding(self) -> Option<PlaneEmbedding> {
        match self {
            Planarity::Planar(emb) => Some(emb),
            Planarity::NonPlanar(_) => None,
        }
    }

    pub fn is_planar(&self) -> bool {
        matches!(self, Planarity::Planar(_))
    }
}

#[derive(Debug, Clone)]
pub struct NonPlanarVerdict {
    pub witness: KuratowskiWitness,
}

fn adjacency_lists<A: Adjacency>(g: &A) -> Vec<Vec<usize>> {
    (0..g.order()).map(|v| g.neighbors(v).collect()).collect()
}

pub fn is_planar<A: Adjacency>(g: &A) -> bool {
    lr::is_planar(&adjacency_lists(g))
}

pub fn test_planarity<A: Adjacency>(g: &A) -> Planarity {
    let adj = adjacency_lists(g);
    match lr::embed(&adj) {
        Some(rotation) => Planarity::Planar(PlaneEmbedding {
            rotation,
            edges: g.size(),
            outer: None,
        }),
        None => Planarity::NonPlanar(NonPlanarVerdict {
            witness: kuratowski::find(&adj),
        }),
    }
}

/// Embedding of a planar graph, or `None`.
pub fn embed<A: Adjacency>(g: &A) -> Option<PlaneEmbedding> {
    let adj = adjacency_lists(g);
    lr::embed(&adj).map(|rotation| PlaneEmbedding {
        rotation,
        edges: g.size(),
        outer: None,
    })
}

impl PlaneEmbedding {
    /// Validates symmetry and genus zero.
    pub fn from_rotation(rotation: Vec<Vec<usize>>) -> Result<Self, EmbeddingError> {
        let n = rotation.len();
        let mut darts = 0;
        for (v, list) in rotation.iter().enumerate() {
            for (i, &w) in list.iter().enumerate() {
                if w >= n {
                    return Err(EmbeddingError::VertexOutOfRange {
                        vertex: v,
                        neighbor: w,
                        order: n,
                    });
                }
                if w == v {
                    return Err(EmbeddingError::SelfLoop(v));
                }
                if list[..i].contains(&w) {
                    return Err(EmbeddingError::RepeatedNeighbor {
                        vertex: v,
                        neighbor: w,
                    });
                }
            }
            darts += list.len();
        }
        for (v, list) in rotation.iter().enumerate() {
            for &w in list {
                if !rotation[w].contains(&v) {
                    return Err(EmbeddingError::Asymmetric { u: v, v: w });
                }
            }
        }
        let emb = PlaneEmbedding {
            rotation,
            edges: darts / 2,
            outer: None,
        };
        let c = structure::components(&emb.graph()).len();
        let expected = (1 + c + emb.edges).saturating_sub(n).max(1);
        let faces = emb.faces().len();
        if faces != expected {
            return Err(EmbeddingError::NotPlanar { faces, expected });
        }
        Ok(emb)
    }

    pub fn order(&self) -> usize {
        self.rotation.len()
    }

    pub fn size(&self) -> usize {
        self.edges
    }

    /// Clockwise neighbours of `v`.
    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rotation
    }

    pub fn graph(&self) -> SparseGraph {
        let mut g = SparseGraph::empty(self.order());
        for (u, list) in self.rotation.iter().enumerate() {
            for &v in list {
                if u < v {
                    g.insert_edge(u, v).expect("rotation is a simple graph");
                }
            }
        }
        g
    }

    pub fn to_graph(&self) -> Result<Graph, GraphError> {
        self.graph().to_graph()
    }

    pub fn outer_dart(&self) -> Option<(usize, usize)> {
        self.outer
    }

    pub fn with_outer_dart(mut self, u: usize, v: usize) -> Result<Self, EmbeddingError> {
        if u >= self.order() || !self.rotation[u].contains(&v) {
            return Err(EmbeddingError::MissingDart(u, v));
        }
        self.outer = Some((u, v));
        Ok(self)
    }

    /// Designate face `index` (as numbered by [`PlaneEmbedding::faces`]) as
    /// the outer face.
    pub fn with_outer_face(self, index: usize) -> Result<Self, EmbeddingError> {
        let faces = self.faces();
        let face = faces.faces.get(index).ok_or(EmbeddingError::FaceOutOfRange {
            index,
            count: faces.len(),
        })?;
        match face.walks.iter().find(|w| w.len() >= 2) {
            Some(w) => {
                let (u, v) = (w[0], w[1]);
                self.with_outer_dart(u, v)
            }
            None => Ok(self),
        }
    }

    /// Next dart along the face to the left of `(u, v)`.
    pub fn successor(&self, u: usize, v: usize) -> (usize, usize) {
        let list = &self.rotation[v];
        let i = list
            .iter()
            .position(|&x| x == u)
            .expect("dart belongs to the embedding");
        (v, list[(i + 1) % list.len()])
    }

    /// The mirror image: every rotation reversed.
    pub fn mirrored(&self) -> PlaneEmbedding {
        PlaneEmbedding {
            rotation: self
                .rotation
                .iter()
                .map(|l| l.iter().rev().copied().collect())
                .collect(),
            edges: self.edges,
            outer: self.outer.map(|(u, v)| (v, u)),
        }
    }

    /// Boundary walk of the face left of `(u, v)`, starting at `u`.
    pub fn face_walk(&self, u: usize, v: usize) -> Vec<usize> {
        let mut walk = Vec::new();
        let (mut a, mut b) = (u, v);
        loop {
            walk.push(a);
            (a, b) = self.successor(a, b);
            if (a, b) == (u, v) {
                return walk;
            }
        }
    }

    /// Faces in order of their first dart (by tail, then rotation position).
    /// In each component the face holding the designated outer dart, or else
    /// the longest walk, is outer; the outer walks of all components form a
    /// single face.
    pub fn faces(&self) -> Faces {
        let n = self.order();
        let mut dart_walk: HashMap<(usize, usize), usize> = HashMap::with_capacity(2 * self.edges);
        let mut walks: Vec<Vec<usize>> = Vec::new();
        for u in 0..n {
            for &v in &self.rotation[u] {
                if dart_walk.contains_key(&(u, v)) {
                    continue;
                }
                let walk = self.face_walk(u, v);
                let id = walks.len();
                for i in 0..walk.len() {
                    dart_walk.insert((walk[i], walk[(i + 1) % walk.len()]), id);
                }
                walks.push(walk);
            }
        }
        let comps = structure::components(&self.graph());
        let mut comp_of = vec![0; n];
        for (c, comp) in comps.iter().enumerate() {
            for &v in comp {
                comp_of[v] = c;
            }
        }
        if comps.len() <= 1 && !walks.is_empty() {
            let outer = self
                .outer
                .and_then(|d| dart_walk.get(&d).copied())
                .unwrap_or_else(|| longest(&walks, 0..walks.len()));
            let faces = walks
                .into_iter()
                .map(|w| Face {
                    size: w.len(),
                    walks: vec![w],
                })
                .collect();
            return Faces {
                faces,
                outer,
                dart_face: dart_walk,
            };
        }
        // one outer walk per nontrivial component, merged
        let designated = self.outer.and_then(|d| dart_walk.get(&d).copied());
        let mut is_outer = vec![false; walks.len()];
        for comp in &comps {
            let c = comp_of[comp[0]];
            let members: Vec<usize> = (0..walks.len())
                .filter(|&w| comp_of[walks[w][0]] == c)
                .collect();
            if members.is_empty() {
                continue;
            }
            let pick = match designated {
                Some(d) if members.contains(&d) => d,
                _ => longest(&walks, members.iter().copied()),
            };
            is_outer[pick] = true;
        }
        let mut faces = Vec::new();
        let mut walk_face = vec![0; walks.len()];
        let mut outer = None;
        for (w, walk) in walks.iter().enumerate() {
            if is_outer[w] {
                match outer {
                    None => {
                        outer = Some(faces.len());
                        walk_face[w] = faces.len();
                        faces.push(Face {
                            walks: vec![walk.clone()],
                            size: walk.len(),
                        });
                    }
                    Some(o) => {
                        walk_face[w] = o;
                        let face: &mut Face = &mut faces[o];
                        face.walks.push(walk.clone());
                        face.size += walk.len();
                    }
                }
            } else {
                walk_face[w] = faces.len();
                faces.push(Face {
                    walks: vec![walk.clone()],
                    size: walk.len(),
                });
            }
        }
        let outer = match outer {
            Some(o) => o,
            None => {
                faces.push(Face {
                    walks: Vec::new(),
                    size: 0,
                });
                faces.len() - 1
            }
        };
        for (v, list) in self.rotation.iter().enumerate() {
            if list.is_empty() {
                faces[outer].walks.push(vec![v]);
            }
        }
        let dart_face = dart_walk
            .into_iter()
            .map(|(d, w)| (d, walk_face[w]))
            .collect();
        Faces {
            faces,
            outer,
            dart_face,
        }
    }
}

fn longest(walks: &[Vec<usize>], candidates: impl Iterator<Item = usize>) -> usize {
    let mut best: Option<usize> = None;
    for w in candidates {
        if best.is_none_or(|b| walks[w].len() > walks[b].len()) {
            best = Some(w);
        }
    }
    best.expect("at least one walk")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cube() -> Graph {
        Graph::from_edges(
            8,
            &[
                (0, 1), (1, 2), (2, 3), (3, 0),
                (4, 5), (5, 6), (6, 7), (7, 4),
                (0, 4), (1, 5), (2, 6), (3, 7),
            ],
        )
        .unwrap()
    }

    fn euler_holds(emb: &PlaneEmbedding) -> bool {
        let c = structure::components(&emb.graph()).len();
        emb.order() + emb.faces().len() == emb.size() + 1 + c
    }

    #[test]
    fn small_verdicts() {
        assert!(!is_planar(&Graph::complete(5).unwrap()));
        let k33 = Graph::from_edges(
            6,
            &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)],
        )
        .unwrap();
        assert!(!is_planar(&k33));
        let k4 = embed(&Graph::complete(4).unwrap()).unwrap();
        let faces = k4.faces();
        assert_eq!(faces.len(), 4);
        assert!(faces.faces.iter().all(|f| f.size == 3));
    }

    #[test]
    fn cycle_and_cube_faces() {
        let c6 = embed(&Graph::cycle(6).unwrap()).unwrap();
        let faces = c6.faces();
        assert_eq!(faces.len(), 2);
        assert!(faces.faces.iter().all(|f| f.size == 6));
        let q3 = embed(&cube()).unwrap();
        let faces = q3.faces();
        assert_eq!(faces.len(), 6);
        assert!(faces.faces.iter().all(|f| f.size == 4));
    }

    #[test]
    fn hand_written_cube_rotation() {
        // top square 0..3 clockwise seen from above, bottom square 4..7 below it
        let rot = vec![
            vec![1, 4, 3],
            vec![2, 5, 0],
            vec![3, 6, 1],
            vec![0, 7, 2],
            vec![0, 5, 7],
            vec![1, 6, 4],
            vec![2, 7, 5],
            vec![3, 4, 6],
        ];
        let emb = PlaneEmbedding::from_rotation(rot).unwrap();
        let faces = emb.faces();
        assert_eq!(faces.len(), 6);
        // successor rule: after (0, 1) comes (1, w) with w after 0 at 1
        assert_eq!(emb.successor(0, 1), (1, 2));
        assert_eq!(emb.face_walk(0, 1), vec![0, 1, 2, 3]);
    }

    #[test]
    fn rejects_bad_rotations() {
        assert_eq!(
            PlaneEmbedding::from_rotation(vec![vec![1], vec![]]),
            Err(EmbeddingError::Asymmetric { u: 0, v: 1 })
        );
        assert_eq!(
            PlaneEmbedding::from_rotation(vec![vec![0]]),
            Err(EmbeddingError::SelfLoop(0))
        );
        // K4 with one vertex's rotation reversed is a torus embedding
        let k4 = embed(&Graph::complete(4).unwrap()).unwrap();
        let mut rot = k4.rotations().to_vec();
        rot[0].reverse();
        assert!(matches!(
            PlaneEmbedding::from_rotation(rot),
            Err(EmbeddingError::NotPlanar { .. })
        ));
    }

    #[test]
    fn disconnected_faces_merge_outer_walks() {
        let k4 = Graph::complete(4).unwrap();
        let g = k4.disjoint_union(&Graph::cycle(3).unwrap()).unwrap();
        let g = g.disjoint_union(&Graph::empty(1).unwrap()).unwrap();
        let emb = embed(&g).unwrap();
        let faces = emb.faces();
        // 4 + 2 faces, two outer walks merged, plus nothing for the isolated vertex
        assert_eq!(faces.len(), 5);
        assert!(euler_holds(&emb));
        let outer = &faces.faces[faces.outer];
        assert_eq!(outer.walks.len(), 3);
        assert_eq!(outer.size, 6);
        let empty = embed(&Graph::empty(3).unwrap()).unwrap();
        assert_eq!(empty.faces().len(), 1);
        assert!(euler_holds(&empty));
    }

    #[test]
    fn outer_designation() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (2, 4), (4, 0)])
            .unwrap();
        let emb = embed(&g).unwrap();
        let faces = emb.faces();
        let f = faces.face_of(0, 1).unwrap();
        let emb = emb.with_outer_dart(0, 1).unwrap();
        assert_eq!(emb.faces().outer, f);
        for i in 0..faces.len() {
            let e = emb.clone().with_outer_face(i).unwrap();
            assert_eq!(e.faces().outer, i);
        }
    }

    #[test]
    fn exhaustive_small_graphs_against_euler() {
        // every graph on 6 vertices: embeddings satisfy Euler, and the
        // verdict agrees with the edge count and K5 / K3,3 witnesses
        let pairs: Vec<(usize, usize)> =
            (1..6).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
        let mut nonplanar = 0;
        for mask in 0u32..1 << pairs.len() {
            let edges: Vec<_> = (0..pairs.len())
                .filter(|&k| mask >> k & 1 == 1)
                .map(|k| pairs[k])
                .collect();
            let g = Graph::from_edges(6, &edges).unwrap();
            match test_planarity(&g) {
                Planarity::Planar(emb) => {
                    assert!(euler_holds(&emb), "{edges:?}");
                    let rebuilt = PlaneEmbedding::from_rotation(emb.rotations().to_vec());
                    assert!(rebuilt.is_ok());
                }
                Planarity::NonPlanar(v) => {
                    nonplanar += 1;
                    assert!(v.witness.verify(&g));
                }
            }
        }
        // count from an independent planarity implementation
        assert_eq!(nonplanar, 697);
    }

    #[test]
    fn strided_seven_vertex_sample() {
        let pairs: Vec<(usize, usize)> =
            (1..7).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
        let mut nonplanar = 0;
        for mask in (0u32..1 << pairs.len()).step_by(97) {
            let edges: Vec<_> = (0..pairs.len())
                .filter(|&k| mask >> k & 1 == 1)
                .map(|k| pairs[k])
                .collect();
            let g = Graph::from_edges(7, &edges).unwrap();
            match embed(&g) {
                Some(emb) => assert!(euler_holds(&emb)),
                None => nonplanar += 1,
            }
        }
        assert_eq!(nonplanar, 2808);
    }
}
