//! Integer audits of face-counting identities and inequalities.
//!
//! Each check is `lhs relation rhs` over exact integers; fractions are
//! cleared by cross-multiplication.

use serde::Serialize;
use thiserror::Error;

use super::{FaceProfile, PlaneEmbedding};
use crate::detect::{is_family_free, ForbiddenFamily, Pattern};
use crate::structure;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AuditError {
    #[error("audit needs at least 3 vertices and 2 edges (got n = {n}, e = {e})")]
    TooSmall { n: usize, e: usize },
    #[error("no inequality audit for family `{0}`")]
    UnsupportedFamily(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "==")]
    Eq,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
}

impl Relation {
    fn holds(self, lhs: i64, rhs: i64) -> bool {
        match self {
            Relation::Eq => lhs == rhs,
            Relation::Le => lhs <= rhs,
            Relation::Ge => lhs >= rhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub lhs: i64,
    pub rhs: i64,
    pub relation: Relation,
    pub pass: bool,
}

impl Check {
    fn new(name: impl Into<String>, lhs: i64, relation: Relation, rhs: i64) -> Self {
        Check {
            name: name.into(),
            lhs,
            rhs,
            relation,
            pass: relation.holds(lhs, rhs),
        }
    }

    /// Both sides equal.
    pub fn tight(&self) -> bool {
        self.lhs == self.rhs
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hypothesis {
    pub name: String,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct AuditReport {
    pub subject: String,
    pub n: usize,
    pub e: usize,
    pub f: usize,
    pub outer_face: usize,
    pub hypotheses: Vec<Hypothesis>,
    /// False when a hypothesis fails; the checks are then not evaluated.
    pub applicable: bool,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.applicable && self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

fn int(x: usize) -> i64 {
    x as i64
}

/// Face-count identities on any plane graph with `n >= 3`, `e >= 2`:
/// (a) `e_ii <= e_i <= e`, (b) `i f_i = e_i + e_ii`,
/// (c) `sum e_i - sum_{i<j} e_ij = e`, and (d) on 2-connected graphs every
/// face is bounded by a cycle.
pub fn audit_observation1(emb: &PlaneEmbedding) -> Result<AuditReport, AuditError> {
    let (n, e) = (emb.order(), emb.size());
    if n < 3 || e < 2 {
        return Err(AuditError::TooSmall { n, e });
    }
    let p = FaceProfile::new(emb);
    let two_connected = structure::is_two_connected(&emb.graph());
    let mut checks = Vec::new();
    for i in p.sizes() {
        checks.push(Check::new(format!("a: e_{i},{i} <= e_{i}"), int(p.e_pair(i, i)), Relation::Le, int(p.e(i))));
        checks.push(Check::new(format!("a: e_{i} <= e"), int(p.e(i)), Relation::Le, int(e)));
        checks.push(Check::new(
            format!("b: {i} f_{i} = e_{i} + e_{i},{i}"),
            int(i * p.f(i)),
            Relation::Eq,
            int(p.e(i) + p.e_pair(i, i)),
        ));
    }
    let sum_e: usize = p.e.values().sum();
    let sum_mixed: usize = p.e_pair.iter().filter(|((i, j), _)| i < j).map(|(_, c)| c).sum();
    checks.push(Check::new(
        "c: sum e_i - sum_{i<j} e_ij = e",
        int(sum_e) - int(sum_mixed),
        Relation::Eq,
        int(e),
    ));
    let walk_total: usize = p.faces.faces.iter().map(|f| f.size).sum();
    checks.push(Check::new("sum of face lengths = 2e", int(walk_total), Relation::Eq, int(2 * e)));
    let c = structure::components(&emb.graph()).len();
    checks.push(Check::new(
        "euler: n - e + f = 1 + components",
        int(n) - int(e) + int(p.face_count()),
        Relation::Eq,
        int(1 + c),
    ));
    let mut notes = Vec::new();
    if two_connected {
        let non_cycles = p
            .faces
            .faces
            .iter()
            .filter(|f| {
                f.walks.len() != 1 || {
                    let mut w = f.walks[0].clone();
                    w.sort_unstable();
                    w.windows(2).any(|x| x[0] == x[1])
                }
            })
            .count();
        checks.push(Check::new("d: faces not bounded by a cycle", int(non_cycles), Relation::Eq, 0));
    } else {
        notes.push("d: vacuous, graph is not 2-connected".to_string());
    }
    Ok(AuditReport {
        subject: "face-identities".to_string(),
        n,
        e,
        f: p.face_count(),
        outer_face: p.faces.outer,
        hypotheses: vec![Hypothesis {
            name: "2-connected".to_string(),
            holds: two_connected,
        }],
        applicable: true,
        checks,
        notes,
    })
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Chain {
    Theta4,
    Theta5,
    Theta6,
    Theta6K5,
}

fn chain_for(family: &ForbiddenFamily) -> Option<Chain> {
    match family.members() {
        [Pattern::Theta(4)] => Some(Chain::Theta4),
        [Pattern::Theta(5)] => Some(Chain::Theta5),
        [Pattern::Theta(6)] => Some(Chain::Theta6),
        [Pattern::Theta(6), Pattern::K5Minus] => Some(Chain::Theta6K5),
        _ => None,
    }
}

/// Inequality chains for Θ4, Θ5, Θ6 and Θ6 with K5 minus an edge, evaluated
/// on one embedding. Hypotheses (freeness, minimum degree, connectivity,
/// order) are checked first and reported; if any fails the checks are
/// skipped. For the Θ6 families the outer face is moved to a largest face.
pub fn audit_theorem_inequalities(
    emb: &PlaneEmbedding,
    family: &ForbiddenFamily,
) -> Result<AuditReport, AuditError> {
    let chain = chain_for(family).ok_or_else(|| AuditError::UnsupportedFamily(family.label()))?;
    let (n, e) = (emb.order(), emb.size());
    if n < 3 || e < 2 {
        return Err(AuditError::TooSmall { n, e });
    }
    let g = emb.graph();
    let mut emb = emb.clone();
    let mut notes = Vec::new();
    let mut hypotheses = vec![
        Hypothesis {
            name: format!("{}-free", family.label()),
            holds: is_family_free(&g, family),
        },
        Hypothesis {
            name: "min degree >= 3".to_string(),
            holds: structure::min_degree(&g).is_ok_and(|d| d >= 3),
        },
    ];
    let min_n = match chain {
        Chain::Theta4 => 5,
        Chain::Theta5 => 6,
        Chain::Theta6 | Chain::Theta6K5 => 7,
    };
    hypotheses.push(Hypothesis {
        name: format!("n >= {min_n}"),
        holds: n >= min_n,
    });
    match chain {
        Chain::Theta4 | Chain::Theta5 => hypotheses.push(Hypothesis {
            name: "connected".to_string(),
            holds: structure::is_connected(&g),
        }),
        Chain::Theta6 | Chain::Theta6K5 => {
            hypotheses.push(Hypothesis {
                name: "2-connected".to_string(),
                holds: structure::is_two_connected(&g),
            });
            let faces = emb.faces();
            let largest = (0..faces.len())
                .max_by_key(|&i| (faces.faces[i].size, std::cmp::Reverse(i)))
                .unwrap_or(0);
            if largest != faces.outer {
                emb = emb.with_outer_face(largest).expect("face index from this embedding");
                notes.push(format!("outer face moved to face {largest}"));
            }
            hypotheses.push(Hypothesis {
                name: "outer face is neither a 3-face nor a 4-face".to_string(),
                holds: faces.faces[largest].size >= 5,
            });
        }
    }
    let p = FaceProfile::new(&emb);
    let applicable = hypotheses.iter().all(|h| h.holds);
    let mut report = AuditReport {
        subject: family.label(),
        n,
        e,
        f: p.face_count(),
        outer_face: p.faces.outer,
        hypotheses,
        applicable,
        checks: Vec::new(),
        notes,
    };
    if !applicable {
        report.notes.push("hypotheses fail: checks not evaluated".to_string());
        return Ok(report);
    }
    let (n, e, f) = (int(n), int(e), int(p.face_count()));
    let fi = |i| int(p.f(i));
    let ei = |i| int(p.e(i));
    let eij = |i, j| int(p.e_pair(i, j));
    let (f3, f4, f5) = (fi(3), fi(4), fi(5));
    let (e3, e4, e5) = (ei(3), ei(4), ei(5));
    let mut checks = Vec::new();
    let mut add = |name: &str, lhs: i64, rel: Relation, rhs: i64| checks.push(Check::new(name, lhs, rel, rhs));
    match chain {
        Chain::Theta4 => {
            add("2e >= 4f - f3", 2 * e, Relation::Ge, 4 * f - f3);
            add("e33 = 0", eij(3, 3), Relation::Eq, 0);
            add("e3 = 3 f3", e3, Relation::Eq, 3 * f3);
            add("e3 <= e", e3, Relation::Le, e);
            add("12f <= 7e", 12 * f, Relation::Le, 7 * e);
            add("5e <= 12(n-2)", 5 * e, Relation::Le, 12 * (n - 2));
        }
        Chain::Theta5 => {
            add("2e >= 5f - 2f3 - f4", 2 * e, Relation::Ge, 5 * f - 2 * f3 - f4);
            add("e33 <= f3", eij(3, 3), Relation::Le, f3);
            add("3f3 = e3 + e33", 3 * f3, Relation::Eq, e3 + eij(3, 3));
            add("2f3 <= e3", 2 * f3, Relation::Le, e3);
            add("e34 = 0", eij(3, 4), Relation::Eq, 0);
            add("e3 + e4 <= e", e3 + e4, Relation::Le, e);
            add("4f4 <= 2e4", 4 * f4, Relation::Le, 2 * e4);
            add("2e4 <= 2(e - e3)", 2 * e4, Relation::Le, 2 * (e - e3));
            add("e3 <= e", e3, Relation::Le, e);
            add("5f <= 3e", 5 * f, Relation::Le, 3 * e);
            add("2e <= 5(n-2)", 2 * e, Relation::Le, 5 * (n - 2));
        }
        Chain::Theta6 => {
            add("2e >= 6f - 3f3 - 2f4 - f5", 2 * e, Relation::Ge, 6 * f - 3 * f3 - 2 * f4 - f5);
            add("5 e33 <= 6 f3", 5 * eij(3, 3), Relation::Le, 6 * f3);
            add("9 f3 <= 5 e3", 9 * f3, Relation::Le, 5 * e3);
            add("e44 = 0", eij(4, 4), Relation::Eq, 0);
            add("4f4 = e4", 4 * f4, Relation::Eq, e4);
            add("e >= e3 + e4 - e34", e, Relation::Ge, e3 + e4 - eij(3, 4));
            add("e34 <= e - e3", eij(3, 4), Relation::Le, e - e3);
            add("4f4 <= 2(e - e3)", 4 * f4, Relation::Le, 2 * (e - e3));
            add("e35 = 0", eij(3, 5), Relation::Eq, 0);
            add("5f5 = e5 + e55", 5 * f5, Relation::Eq, e5 + eij(5, 5));
            add("5f5 <= 2(e - e3)", 5 * f5, Relation::Le, 2 * (e - e3));
            add("e3 <= e", e3, Relation::Le, e);
            add("18f <= 11e", 18 * f, Relation::Le, 11 * e);
            add("7e <= 18(n-2)", 7 * e, Relation::Le, 18 * (n - 2));
        }
        Chain::Theta6K5 => {
            add("e33 <= f3", eij(3, 3), Relation::Le, f3);
            add("2f3 <= e3", 2 * f3, Relation::Le, e3);
            add("4f4 <= 2(e - e3)", 4 * f4, Relation::Le, 2 * (e - e3));
            add("5f5 <= 2(e - e3)", 5 * f5, Relation::Le, 2 * (e - e3));
            add("12f <= 7e", 12 * f, Relation::Le, 7 * e);
            add("5e <= 12(n-2)", 5 * e, Relation::Le, 12 * (n - 2));
        }
    }
    report.checks = checks;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Adjacency, Graph};
    use crate::planar::embed;

    #[test]
    fn k4_identities_pass() {
        let r = audit_observation1(&embed(&Graph::complete(4).unwrap()).unwrap()).unwrap();
        assert!(r.passed());
        assert!(r.check("d: faces not bounded by a cycle").is_some());
    }

    #[test]
    fn precondition() {
        let emb = embed(&Graph::path(2).unwrap()).unwrap();
        assert_eq!(
            audit_observation1(&emb).unwrap_err(),
            AuditError::TooSmall { n: 2, e: 1 }
        );
        let c4: ForbiddenFamily = "c4".parse().unwrap();
        let k4 = embed(&Graph::complete(4).unwrap()).unwrap();
        assert!(matches!(
            audit_theorem_inequalities(&k4, &c4),
            Err(AuditError::UnsupportedFamily(_))
        ));
    }

    #[test]
    fn failed_hypothesis_skips_checks() {
        let k4 = embed(&Graph::complete(4).unwrap()).unwrap();
        let r = audit_theorem_inequalities(&k4, &"theta4".parse().unwrap()).unwrap();
        assert!(!r.applicable);
        assert!(r.checks.is_empty());
        assert!(!r.passed());
    }

    #[test]
    fn dodecahedron_theta5() {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, 5 + 2 * i));
            edges.push((15 + i, 15 + (i + 1) % 5));
        }
        for i in 0..10 {
            edges.push((5 + i, 5 + (i + 1) % 10));
        }
        for i in 0..5 {
            edges.push((6 + 2 * i, 15 + i));
        }
        let g = Graph::from_edges(20, &edges).unwrap();
        assert_eq!(g.size(), 30);
        let r = audit_theorem_inequalities(&embed(&g).unwrap(), &"theta5".parse().unwrap()).unwrap();
        assert!(r.applicable, "{r:?}");
        assert!(r.passed(), "{r:?}");
        assert!(!r.check("2e <= 5(n-2)").unwrap().tight());
    }
}
