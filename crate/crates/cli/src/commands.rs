use std::fmt::Write as _;
use std::io::Read;
use std::path::Path;
use std::time::Duration;

use planar_turan::bounds::bound_formula;
use planar_turan::constructions::{
    check_extremal_certificate, fig3_graph, k5_minus, theta4_extremal, theta5_extremal, ConstructionError,
    ExtremalCertificate,
};
use planar_turan::detect::{family_witness, DetectError, ForbiddenFamily, Witness};
use planar_turan::graph6::{self, Graph6Error};
use planar_turan::planar::{
    audit_observation1, audit_theorem_inequalities, parse_rotation, random::random_plane_graph, test_planarity,
    write_rotation, AuditError, AuditReport, FaceProfile, KuratowskiWitness, Planarity, PlaneEmbedding,
    RotationError,
};
use planar_turan::search::{
    enumerate_planar_free, ex_planar, verify_bound_range, BoundRow, BoundStatus, SearchConfig, SearchError,
};
use planar_turan::{Adjacency, Graph};
use serde::Serialize;
use thiserror::Error;

use crate::args::*;
use crate::report::RunReport;

/// Input or usage problems; all map to exit code 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("graph6: {0}")]
    Graph6(#[from] Graph6Error),
    #[error("rotation: {0}")]
    Rotation(#[from] RotationError),
    #[error("{}: {source}", path.display())]
    Io {
        path: std::path::PathBuf,
        source: std::io::Error,
    },
    #[error("graph is not planar: {} subdivision on branch vertices {:?}", kind_name(witness), witness.branch_vertices)]
    NonPlanar { witness: KuratowskiWitness },
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Audit(#[from] AuditError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Detect(#[from] DetectError),
    #[error("{0}")]
    Usage(String),
}

fn kind_name(w: &KuratowskiWitness) -> String {
    serde_json::to_value(w.kind)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}

/// What a successful run prints, and whether the tested property held.
pub struct Outcome {
    pub stdout: String,
    pub holds: bool,
}

impl Outcome {
    fn holds(stdout: String) -> Self {
        Outcome { stdout, holds: true }
    }

    pub fn exit(&self) -> u8 {
        if self.holds {
            0
        } else {
            1
        }
    }
}

pub fn run(command: Command) -> Result<Outcome, CliError> {
    match command {
        Command::Construct(a) => construct(a),
        Command::Check(a) => check(a),
        Command::Audit(a) => audit(a),
        Command::Search(a) => search(a),
        Command::Table(a) => table(a),
        Command::Convert(a) => convert(a),
        Command::Enumerate(a) => enumerate(a),
    }
}

fn read_input(path: &Path) -> Result<String, CliError> {
    let io = |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    };
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(io)
    }
}

fn embed_or_explain<A: Adjacency>(g: &A) -> Result<PlaneEmbedding, CliError> {
    match test_planarity(g) {
        Planarity::Planar(emb) => Ok(emb),
        Planarity::NonPlanar(v) => Err(CliError::NonPlanar { witness: v.witness }),
    }
}

fn line(s: String) -> String {
    if s.ends_with('\n') {
        s
    } else {
        s + "\n"
    }
}

fn construct(a: ConstructArgs) -> Result<Outcome, CliError> {
    let emb = match (a.family, a.named) {
        (Some(ConstructionFamily::Theta4), _) => theta4_extremal(a.k.unwrap_or(0)),
        (Some(ConstructionFamily::Theta5), _) => theta5_extremal(a.k.unwrap_or(0)),
        (None, Some(Named::Fig3)) => embed_or_explain(&fig3_graph())?,
        (None, Some(Named::K5minus)) => embed_or_explain(&k5_minus())?,
        (None, None) => return Err(CliError::Usage("give --family or --named".into())),
    };
    let out = match a.format {
        Format::Graph6 => graph6::encode(&emb.graph()),
        Format::Rotation => write_rotation(&emb, None),
    };
    Ok(Outcome::holds(line(out)))
}

#[derive(Serialize)]
struct CheckResult<'a> {
    family: &'a ForbiddenFamily,
    n: usize,
    e: usize,
    free: bool,
    witness: Option<Witness>,
}

fn check(a: CheckArgs) -> Result<Outcome, CliError> {
    let input = a.graph6.trim();
    let g = graph6::decode(input)?;
    let witness = family_witness(&g, &a.family);
    let result = CheckResult {
        family: &a.family,
        n: g.order(),
        e: g.size(),
        free: witness.is_none(),
        witness,
    };
    let holds = result.free;
    let stdout = if a.json {
        RunReport::new(input.as_bytes(), u8::from(!holds), &result).to_json()
    } else {
        match &result.witness {
            None => "free".to_string(),
            Some(w) => {
                let vs: Vec<String> = w.vertices.iter().map(usize::to_string).collect();
                format!("{} {}", w.pattern.tag(), vs.join(" "))
            }
        }
    };
    Ok(Outcome {
        stdout: line(stdout),
        holds,
    })
}

#[derive(Serialize)]
struct AuditResult {
    profile: FaceProfile,
    identities: AuditReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    inequalities: Option<AuditReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<ExtremalCertificate>,
    passed: bool,
}

fn audit(a: AuditArgs) -> Result<Outcome, CliError> {
    let (input, emb) = match (&a.source.graph6, &a.source.rotation, a.source.random) {
        (Some(s), _, _) => {
            let s = s.trim();
            (s.to_string(), embed_or_explain(&graph6::decode(s)?)?)
        }
        (_, Some(path), _) => {
            let text = read_input(path)?;
            let emb = parse_rotation(&text)?.embedding;
            (text, emb)
        }
        (_, _, Some(n)) => (format!("random {n} {}", a.seed), random_plane_graph(n, a.seed)),
        _ => return Err(CliError::Usage("give --graph6, --rotation or --random".into())),
    };
    let identities = audit_observation1(&emb)?;
    let inequalities = a
        .family
        .as_ref()
        .map(|f| audit_theorem_inequalities(&emb, f))
        .transpose()?;
    let certificate = match (&a.family, a.certificate) {
        (Some(f), true) => Some(check_extremal_certificate(&emb, f)?),
        _ => None,
    };
    // an inapplicable inequality report checks nothing, so it cannot fail
    let passed = identities.passed()
        && inequalities.as_ref().is_none_or(|r| r.checks.iter().all(|c| c.pass))
        && certificate.as_ref().is_none_or(|c| c.passed);
    let result = AuditResult {
        profile: FaceProfile::new(&emb),
        identities,
        inequalities,
        certificate,
        passed,
    };
    Ok(Outcome {
        stdout: line(RunReport::new(input.as_bytes(), u8::from(!passed), &result).to_json()),
        holds: passed,
    })
}

fn search(a: SearchArgs) -> Result<Outcome, CliError> {
    let budget = match a.budget {
        Some(s) if !(s.is_finite() && s >= 0.0) => {
            return Err(CliError::Usage(format!("budget must be a non-negative number of seconds, got {s}")))
        }
        Some(s) => Some(Duration::from_secs_f64(s)),
        None => None,
    };
    let config = SearchConfig {
        threads: a.threads,
        budget,
        checkpoint: a.checkpoint,
        allow_large: a.allow_large,
    };
    let r = ex_planar(a.n, &a.family, &config)?;
    let input = format!("search {} {}", a.n, a.family);
    let holds = r.exhaustive;
    Ok(Outcome {
        stdout: line(RunReport::new(input.as_bytes(), u8::from(!holds), &r).to_json()),
        holds,
    })
}

fn default_start(family: &ForbiddenFamily) -> usize {
    let smallest = family
        .expand()
        .iter()
        .map(Graph::order)
        .min()
        .unwrap_or(3);
    let threshold = bound_formula(family).map_or(smallest, |f| f.n_min);
    smallest.min(threshold).max(3)
}

fn status_word(s: BoundStatus) -> &'static str {
    match s {
        BoundStatus::Tight => "tight",
        BoundStatus::Floor => "floor",
        BoundStatus::Strict => "strict",
        BoundStatus::Violation => "VIOLATION",
        BoundStatus::NotApplicable => "n/a",
    }
}

/// Aligned text view of the rows; `*` marks a non-exhaustive value.
pub fn render_table(family: &ForbiddenFamily, rows: &[BoundRow]) -> String {
    let formula = bound_formula(family).map_or_else(|| "none".to_string(), |f| f.to_string());
    let mut out = format!("family {family}, bound {formula}\n");
    let _ = writeln!(out, "{:>3}  {:>4}  {:>8}  {:>5}  status", "n", "ex", "bound", "floor");
    for r in rows {
        let value = format!("{}{}", r.value, if r.exhaustive { "" } else { "*" });
        let bound = r.bound.clone().unwrap_or_else(|| "-".into());
        let floor = r.floor.map_or_else(|| "-".into(), |f| f.to_string());
        let _ = writeln!(
            out,
            "{:>3}  {:>4}  {:>8}  {:>5}  {}",
            r.n,
            value,
            bound,
            floor,
            status_word(r.status)
        );
    }
    out
}

fn table(a: TableArgs) -> Result<Outcome, CliError> {
    let from = a.from.unwrap_or_else(|| default_start(&a.family));
    if from > a.to {
        return Err(CliError::Usage(format!("empty range {from}..={}", a.to)));
    }
    let rows = verify_bound_range(&a.family, from, a.to, &SearchConfig::with_threads(a.threads))?;
    let holds = rows
        .iter()
        .all(|r| r.exhaustive && r.status != BoundStatus::Violation);
    let stdout = if a.json {
        let input = format!("table {} {from} {}", a.family, a.to);
        line(RunReport::new(input.as_bytes(), u8::from(!holds), &rows).to_json())
    } else {
        render_table(&a.family, &rows)
    };
    Ok(Outcome { stdout, holds })
}

fn convert(a: ConvertArgs) -> Result<Outcome, CliError> {
    let out = match (&a.input.graph6, &a.input.rotation) {
        (Some(s), _) => {
            let g = graph6::decode(s.trim())?;
            write_rotation(&embed_or_explain(&g)?, None)
        }
        (_, Some(path)) => {
            let doc = parse_rotation(&read_input(path)?)?;
            graph6::encode(&doc.embedding.graph())
        }
        _ => return Err(CliError::Usage("give --graph6 or --rotation".into())),
    };
    Ok(Outcome::holds(line(out)))
}

fn enumerate(a: EnumerateArgs) -> Result<Outcome, CliError> {
    let graphs = enumerate_planar_free(a.n, &a.family)?;
    let stdout = if a.count {
        format!("{}\n", graphs.len())
    } else {
        graphs
            .iter()
            .map(|g| graph6::encode(g) + "\n")
            .collect()
    };
    Ok(Outcome::holds(stdout))
}
