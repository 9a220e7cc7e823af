//! Text format for rotation systems.
//!
//! ```text
//! # optional comments
//! # outer: 3            (face index, or a boundary walk `# outer: 0 1 2 3`)
//! # inner: 4 5 6 7      (gadgets only)
//! 0: 1 2 3
//! 1: 0 3 2
//! ```
//!
//! One line per vertex listing its neighbours in clockwise order.

use thiserror::Error;

use super::{EmbeddingError, PlaneEmbedding};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RotationError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: vertex {vertex} listed twice")]
    DuplicateVertex { line: usize, vertex: usize },
    #[error("no line for vertex {0}")]
    MissingVertex(usize),
    #[error("`{0}` walk is not a face boundary of the embedding")]
    NotAFace(&'static str),
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OuterSpec {
    Face(usize),
    Walk(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationDocument {
    /// Outer face already applied.
    pub embedding: PlaneEmbedding,
    pub outer: Option<OuterSpec>,
    pub inner: Option<Vec<usize>>,
}

fn numbers(s: &str, line: usize) -> Result<Vec<usize>, RotationError> {
    s.split_whitespace()
        .map(|t| {
            t.parse().map_err(|_| RotationError::Syntax {
                line,
                message: format!("`{t}` is not a vertex number"),
            })
        })
        .collect()
}

pub fn parse_rotation(text: &str) -> Result<RotationDocument, RotationError> {
    let mut lists: Vec<Option<Vec<usize>>> = Vec::new();
    let mut outer = None;
    let mut inner = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let s = raw.trim();
        if s.is_empty() {
            continue;
        }
        if let Some(comment) = s.strip_prefix('#') {
            let comment = comment.trim();
            if let Some(rest) = comment.strip_prefix("outer:") {
                let vs = numbers(rest, line)?;
                outer = Some(match vs[..] {
                    [i] => OuterSpec::Face(i),
                    [] => {
                        return Err(RotationError::Syntax {
                            line,
                            message: "empty outer annotation".to_string(),
                        })
                    }
                    _ => OuterSpec::Walk(vs),
                });
            } else if let Some(rest) = comment.strip_prefix("inner:") {
                inner = Some(numbers(rest, line)?);
            }
            continue;
        }
        let (head, tail) = s.split_once(':').ok_or_else(|| RotationError::Syntax {
            line,
            message: "expected `v: n1 n2 ...`".to_string(),
        })?;
        let v: usize = head.trim().parse().map_err(|_| RotationError::Syntax {
            line,
            message: format!("`{}` is not a vertex number", head.trim()),
        })?;
        if v >= lists.len() {
            lists.resize(v + 1, None);
        }
        if lists[v].is_some() {
            return Err(RotationError::DuplicateVertex { line, vertex: v });
        }
        lists[v] = Some(numbers(tail, line)?);
    }
    let rotation = lists
        .into_iter()
        .enumerate()
        .map(|(v, l)| l.ok_or(RotationError::MissingVertex(v)))
        .collect::<Result<Vec<_>, _>>()?;
    let mut embedding = PlaneEmbedding::from_rotation(rotation)?;
    match &outer {
        Some(OuterSpec::Face(i)) => embedding = embedding.with_outer_face(*i)?,
        Some(OuterSpec::Walk(w)) => {
            if !is_face_walk(&embedding, w) {
                return Err(RotationError::NotAFace("outer"));
            }
            embedding = embedding.with_outer_dart(w[0], w[1])?;
        }
        None => {}
    }
    Ok(RotationDocument {
        embedding,
        outer,
        inner,
    })
}

/// `walk` is exactly the boundary walk of one face, starting anywhere.
pub(crate) fn is_face_walk(emb: &PlaneEmbedding, walk: &[usize]) -> bool {
    if walk.len() < 2 || walk.iter().any(|&v| v >= emb.order()) {
        return false;
    }
    if !emb.rotation(walk[0]).contains(&walk[1]) {
        return false;
    }
    emb.face_walk(walk[0], walk[1]) == walk
}

/// Writes the rotation, preceded by an optional comment and the index of
/// the outer face.
pub fn write_rotation(emb: &PlaneEmbedding, comment: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(c) = comment {
        for l in c.lines() {
            out.push_str(&format!("# {l}\n"));
        }
    }
    out.push_str(&format!("# outer: {}\n", emb.faces().outer));
    for v in 0..emb.order() {
        let list: Vec<String> = emb.rotation(v).iter().map(|w| w.to_string()).collect();
        if list.is_empty() {
            out.push_str(&format!("{v}:\n"));
        } else {
            out.push_str(&format!("{v}: {}\n", list.join(" ")));
        }
    }
    out
}
