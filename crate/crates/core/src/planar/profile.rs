//! Face-size statistics of an embedding.

use std::collections::BTreeMap;

use serde::ser::{Serialize, SerializeStruct, Serializer};

use super::{Faces, PlaneEmbedding};

/// The faces on the two sides of one edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeSides {
    pub edge: (usize, usize),
    /// Face left of `(u, v)` and face left of `(v, u)`.
    pub faces: (usize, usize),
    /// The two face sizes, smaller first.
    pub sizes: (usize, usize),
}

/// `f_i`: number of `i`-faces; `e_i`: edges on at least one `i`-face;
/// `e_ij`: edges with an `i`-face on one side and a `j`-face on the other.
/// A bridge inside an `i`-face counts towards `e_ii`.
#[derive(Debug, Clone)]
pub struct FaceProfile {
    pub order: usize,
    pub size: usize,
    pub faces: Faces,
    pub f: BTreeMap<usize, usize>,
    pub e: BTreeMap<usize, usize>,
    pub e_pair: BTreeMap<(usize, usize), usize>,
    pub sides: Vec<EdgeSides>,
}

impl FaceProfile {
    pub fn new(emb: &PlaneEmbedding) -> Self {
        Self::with_faces(emb, emb.faces())
    }

    pub(crate) fn with_faces(emb: &PlaneEmbedding, faces: Faces) -> Self {
        let mut f = BTreeMap::new();
        for face in &faces.faces {
            *f.entry(face.size).or_insert(0) += 1;
        }
        let mut e = BTreeMap::new();
        let mut e_pair = BTreeMap::new();
        let mut sides = Vec::with_capacity(emb.size());
        for u in 0..emb.order() {
            for &v in emb.rotation(u) {
                if u > v {
                    continue;
                }
                let a = faces.face_of(u, v).expect("every dart lies on a face");
                let b = faces.face_of(v, u).expect("every dart lies on a face");
                let (i, j) = (faces.faces[a].size, faces.faces[b].size);
                let sizes = (i.min(j), i.max(j));
                *e.entry(i).or_insert(0) += 1;
                if j != i {
                    *e.entry(j).or_insert(0) += 1;
                }
                *e_pair.entry(sizes).or_insert(0) += 1;
                sides.push(EdgeSides {
                    edge: (u, v),
                    faces: (a, b),
                    sizes,
                });
            }
        }
        FaceProfile {
            order: emb.order(),
            size: emb.size(),
            faces,
            f,
            e,
            e_pair,
            sides,
        }
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn f(&self, i: usize) -> usize {
        self.f.get(&i).copied().unwrap_or(0)
    }

    pub fn e(&self, i: usize) -> usize {
        self.e.get(&i).copied().unwrap_or(0)
    }

    pub fn e_pair(&self, i: usize, j: usize) -> usize {
        self.e_pair
            .get(&(i.min(j), i.max(j)))
            .copied()
            .unwrap_or(0)
    }

    /// Edges of `E_{i,j}`.
    pub fn edges_in(&self, i: usize, j: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        let key = (i.min(j), i.max(j));
        self.sides
            .iter()
            .filter(move |s| s.sizes == key)
            .map(|s| s.edge)
    }

    /// Face sizes present, ascending.
    pub fn sizes(&self) -> impl Iterator<Item = usize> + '_ {
        self.f.keys().copied()
    }

    /// Boundary edges of face `index` lying in `E_{i,j}`. Each edge counted
    /// once even if the face runs along both of its sides.
    pub fn face_edges_in(&self, index: usize, i: usize, j: usize) -> usize {
        let key = (i.min(j), i.max(j));
        self.sides
            .iter()
            .filter(|s| s.sizes == key && (s.faces.0 == index || s.faces.1 == index))
            .count()
    }
}

impl Serialize for FaceProfile {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(serde::Serialize)]
        struct Pair {
            i: usize,
            j: usize,
            count: usize,
        }
        let walks: Vec<&Vec<Vec<usize>>> = self.faces.faces.iter().map(|f| &f.walks).collect();
        let pairs: Vec<Pair> = self
            .e_pair
            .iter()
            .map(|(&(i, j), &count)| Pair { i, j, count })
            .collect();
        let mut s = serializer.serialize_struct("FaceProfile", 7)?;
        s.serialize_field("n", &self.order)?;
        s.serialize_field("e", &self.size)?;
        s.serialize_field("f", &self.face_count())?;
        s.serialize_field("f_i", &self.f)?;
        s.serialize_field("e_i", &self.e)?;
        s.serialize_field("e_ij", &pairs)?;
        s.serialize_field("outer_face", &self.faces.outer)?;
        s.serialize_field("face_walks", &walks)?;
        s.end()
    }
}
