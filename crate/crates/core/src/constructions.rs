//! Extremal constructions and their equality certificates.
//!
//! The Θ4 and Θ5 families are built from a base plane graph by repeatedly
//! wrapping it in an annulus gadget: the gadget's inner boundary is glued
//! onto the current outer face and its outer boundary becomes the new outer
//! face. Base graphs and gadgets ship as rotation files under `data/`.

use serde::Serialize;
use thiserror::Error;

use crate::detect::{is_family_free, ForbiddenFamily, Pattern};
use crate::graph::Graph;
use crate::planar::{
    parse_rotation, EmbeddingError, FaceProfile, PlaneEmbedding, RotationError,
};
use crate::structure;

const THETA4_BASE: &str = include_str!("../data/theta4_base.rot");
const THETA4_GADGET: &str = include_str!("../data/theta4_gadget.rot");
const THETA5_BASE: &str = include_str!("../data/theta5_base.rot");
const THETA5_GADGET: &str = include_str!("../data/theta5_gadget.rot");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("outer face has {outer} boundary vertices but the gadget's inner boundary has {inner}")]
    BoundaryMismatch { outer: usize, inner: usize },
    #[error("embedding has no designated outer face")]
    NoOuterFace,
    #[error("outer face is not bounded by a cycle")]
    OuterNotCycle,
    #[error("gadget {0} boundary is not a face of the gadget")]
    GadgetBoundary(&'static str),
    #[error("no certificate for family `{0}`")]
    UnsupportedFamily(String),
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
    #[error(transparent)]
    Rotation(#[from] RotationError),
}

/// K5 without the edge 01.
pub fn k5_minus() -> Graph {
    Graph::complete(5)
        .and_then(|k| k.remove_edge(0, 1))
        .expect("K5 has edge 01")
}

/// Two copies of K5 minus an edge sharing one vertex, which has degree 3 in
/// each copy: block `{0,1,2,3,4}` without `01`, block `{0,5,6,7,8}` without
/// `05`.
pub fn fig3_graph() -> Graph {
    let mut edges = Vec::new();
    for block in [[0, 1, 2, 3, 4], [0, 5, 6, 7, 8]] {
        for i in 0..5 {
            for j in i + 1..5 {
                if (i, j) != (0, 1) {
                    edges.push((block[i], block[j]));
                }
            }
        }
    }
    Graph::from_edges(9, &edges).expect("valid edge list")
}

/// A plane annulus: `inner` and `outer` are two boundary cycles. Walking
/// `inner` backwards traces the face it bounds; `outer` is traced forwards.
#[derive(Debug, Clone)]
pub struct AnnulusGadget {
    embedding: PlaneEmbedding,
    inner: Vec<usize>,
    outer: Vec<usize>,
}

impl AnnulusGadget {
    pub fn new(
        embedding: PlaneEmbedding,
        inner: Vec<usize>,
        outer: Vec<usize>,
    ) -> Result<Self, ConstructionError> {
        let mut hole: Vec<usize> = inner.iter().rev().copied().collect();
        if !hole.is_empty() {
            hole.rotate_right(1);
        }
        if inner.len() < 3 || !crate::planar::is_face_walk(&embedding, &hole) {
            return Err(ConstructionError::GadgetBoundary("inner"));
        }
        if outer.len() < 3 || !crate::planar::is_face_walk(&embedding, &outer) {
            return Err(ConstructionError::GadgetBoundary("outer"));
        }
        if outer.iter().any(|v| inner.contains(v)) {
            return Err(ConstructionError::GadgetBoundary("outer"));
        }
        Ok(AnnulusGadget {
            embedding,
            inner,
            outer,
        })
    }

    /// Reads a gadget file with `# inner:` and `# outer:` walks.
    pub fn parse(text: &str) -> Result<Self, ConstructionError> {
        let doc = parse_rotation(text)?;
        let inner = doc.inner.ok_or(ConstructionError::GadgetBoundary("inner"))?;
        let outer = match doc.outer {
            Some(crate::planar::OuterSpec::Walk(w)) => w,
            _ => return Err(ConstructionError::GadgetBoundary("outer")),
        };
        AnnulusGadget::new(doc.embedding, inner, outer)
    }

    pub fn embedding(&self) -> &PlaneEmbedding {
        &self.embedding
    }

    pub fn inner(&self) -> &[usize] {
        &self.inner
    }

    pub fn outer(&self) -> &[usize] {
        &self.outer
    }

    pub fn theta4() -> Self {
        AnnulusGadget::parse(THETA4_GADGET).expect("bundled gadget is valid")
    }

    pub fn theta5() -> Self {
        AnnulusGadget::parse(THETA5_GADGET).expect("bundled gadget is valid")
    }
}

/// Glues `gadget` around `current`: `inner[j]` is identified with the `j`-th
/// vertex of the outer walk starting at the tail of the outer dart. Gadget
/// vertices off the inner boundary are numbered after the existing ones, in
/// order. The gadget's outer boundary becomes the outer face.
pub fn compose_annulus(
    current: &PlaneEmbedding,
    gadget: &AnnulusGadget,
) -> Result<PlaneEmbedding, ConstructionError> {
    let (a, b) = current.outer_dart().ok_or(ConstructionError::NoOuterFace)?;
    let walk = current.face_walk(a, b);
    let len = walk.len();
    if len != gadget.inner.len() {
        return Err(ConstructionError::BoundaryMismatch {
            outer: len,
            inner: gadget.inner.len(),
        });
    }
    let mut sorted = walk.clone();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(ConstructionError::OuterNotCycle);
    }
    let n = current.order();
    let gemb = &gadget.embedding;
    let mut label = vec![usize::MAX; gemb.order()];
    for (j, &g) in gadget.inner.iter().enumerate() {
        label[g] = walk[j];
    }
    let mut next = n;
    for l in label.iter_mut() {
        if *l == usize::MAX {
            *l = next;
            next += 1;
        }
    }
    let mut rotation: Vec<Vec<usize>> = current.rotations().to_vec();
    rotation.resize(next, Vec::new());
    for (j, &o) in walk.iter().enumerate() {
        let succ = walk[(j + 1) % len];
        let gi = gadget.inner[j];
        let g_prev = gadget.inner[(j + len - 1) % len];
        let g_next = gadget.inner[(j + 1) % len];
        let own = current.rotation(o);
        let start = own.iter().position(|&x| x == succ).expect("outer walk edge");
        let mut merged: Vec<usize> = (0..own.len()).map(|i| own[(start + i) % own.len()]).collect();
        let grot = gemb.rotation(gi);
        let from = grot.iter().position(|&x| x == g_prev).expect("inner boundary edge");
        for i in 1..grot.len() {
            let x = grot[(from + i) % grot.len()];
            if x == g_next {
                break;
            }
            merged.push(label[x]);
        }
        rotation[o] = merged;
    }
    for g in 0..gemb.order() {
        if gadget.inner.contains(&g) {
            continue;
        }
        rotation[label[g]] = gemb.rotation(g).iter().map(|&x| label[x]).collect();
    }
    let emb = PlaneEmbedding::from_rotation(rotation)?;
    Ok(emb.with_outer_dart(label[gadget.outer[0]], label[gadget.outer[1]])?)
}

fn base(text: &str) -> PlaneEmbedding {
    parse_rotation(text).expect("bundled base graph is valid").embedding
}

fn layered(base_text: &str, gadget: AnnulusGadget, k: usize) -> PlaneEmbedding {
    let mut emb = base(base_text);
    for _ in 0..k {
        emb = compose_annulus(&emb, &gadget).expect("bundled boundaries agree");
    }
    emb
}

/// Θ4-free plane graph on `20k + 12` vertices with `48k + 24` edges.
pub fn theta4_extremal(k: usize) -> PlaneEmbedding {
    layered(THETA4_BASE, AnnulusGadget::theta4(), k)
}

/// Θ5-free plane graph on `120k + 50` vertices with `300k + 120` edges.
pub fn theta5_extremal(k: usize) -> PlaneEmbedding {
    layered(THETA5_BASE, AnnulusGadget::theta5(), k)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Condition {
    pub name: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExtremalCertificate {
    pub family: ForbiddenFamily,
    pub n: usize,
    pub e: usize,
    pub conditions: Vec<Condition>,
    pub passed: bool,
    /// Whether `e` equals the extremal edge count for `n`.
    pub attains_bound: bool,
}

impl ExtremalCertificate {
    /// A passing certificate must attain the bound.
    pub fn consistent(&self) -> bool {
        !self.passed || self.attains_bound
    }

    pub fn condition(&self, name: &str) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.name == name)
    }
}

fn condition(name: &str, holds: bool, detail: Option<String>) -> Condition {
    Condition {
        name: name.to_string(),
        holds,
        detail: if holds { None } else { detail },
    }
}

/// Structural characterisation of equality for Θ4 (every edge between a
/// 3-face and a 4-face) and Θ5 (every 3-face has exactly two edges shared
/// with 3-faces, every edge between a 3-face and a 5-face or two 3-faces).
pub fn check_extremal_certificate(
    emb: &PlaneEmbedding,
    family: &ForbiddenFamily,
) -> Result<ExtremalCertificate, ConstructionError> {
    let k = match family.members() {
        [Pattern::Theta(k @ (4 | 5))] => *k,
        _ => return Err(ConstructionError::UnsupportedFamily(family.label())),
    };
    let g = emb.graph();
    let (n, e) = (emb.order(), emb.size());
    let profile = FaceProfile::new(emb);
    let mut conditions = vec![
        condition("connected", structure::is_connected(&g), None),
        condition(&format!("theta{k}-free"), is_family_free(&g, family), None),
    ];
    let attains_bound = if k == 4 {
        let bad = profile.sides.iter().find(|s| s.sizes != (3, 4));
        conditions.push(condition(
            "every edge on one 3-face and one 4-face",
            bad.is_none(),
            bad.map(|s| format!("edge {:?} has sides {:?}", s.edge, s.sizes)),
        ));
        n >= 2 && 5 * e == 12 * (n - 2)
    } else {
        let bad_face = (0..profile.face_count()).find(|&i| {
            profile.faces.faces[i].size == 3 && profile.face_edges_in(i, 3, 3) != 2
        });
        conditions.push(condition(
            "every 3-face has exactly two edges in E33",
            bad_face.is_none(),
            bad_face.map(|i| format!("face {i}: {:?}", profile.faces.faces[i].walks)),
        ));
        let bad = profile
            .sides
            .iter()
            .find(|s| s.sizes != (3, 5) && s.sizes != (3, 3));
        conditions.push(condition(
            "every edge in E35 or E33",
            bad.is_none(),
            bad.map(|s| format!("edge {:?} has sides {:?}", s.edge, s.sizes)),
        ));
        n >= 2 && 2 * e == 5 * (n - 2)
    };
    let passed = conditions.iter().all(|c| c.holds);
    Ok(ExtremalCertificate {
        family: family.clone(),
        n,
        e,
        conditions,
        passed,
        attains_bound,
    })
}
