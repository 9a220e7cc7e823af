use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use planar_turan::detect::ForbiddenFamily;

#[derive(Debug, Parser)]
#[command(name = "planar-turan", version, about = "Planar Turán numbers for theta graphs and short cycles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build an extremal construction or a named graph.
    Construct(ConstructArgs),
    /// Test a graph for a forbidden family; exit 1 prints a copy.
    Check(CheckArgs),
    /// Face-counting audit of a plane embedding (JSON).
    Audit(AuditArgs),
    /// Exact ex_P(n, F) by exhaustive search (JSON).
    Search(SearchArgs),
    /// ex_P(n, F) against the bound formula over a range of n.
    Table(TableArgs),
    /// graph6 to rotation text and back.
    Convert(ConvertArgs),
    /// List every F-free planar graph on n vertices up to isomorphism.
    Enumerate(EnumerateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Graph6,
    Rotation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Named {
    Fig3,
    K5minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConstructionFamily {
    Theta4,
    Theta5,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[arg(long, conflicts_with = "named", required_unless_present = "named", requires = "k")]
    pub family: Option<ConstructionFamily>,
    /// Number of gadget layers.
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub named: Option<Named>,
    #[arg(long, value_enum, default_value = "graph6")]
    pub format: Format,
}

fn family(s: &str) -> Result<ForbiddenFamily, String> {
    s.parse().map_err(|e: planar_turan::detect::DetectError| e.to_string())
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Family tag, e.g. theta6, c5 or theta6+k5m.
    #[arg(long, value_parser = family)]
    pub family: ForbiddenFamily,
    pub graph6: String,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
#[group(id = "input", required = true, multiple = false)]
pub struct InputArgs {
    #[arg(long)]
    pub graph6: Option<String>,
    /// Rotation file, `-` for stdin.
    #[arg(long)]
    pub rotation: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AuditArgs {
    #[command(flatten)]
    pub source: AuditSource,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Also run the inequality chain for this family.
    #[arg(long, value_parser = family)]
    pub family: Option<ForbiddenFamily>,
    /// Also check the equality certificate (theta4, theta5).
    #[arg(long, requires = "family")]
    pub certificate: bool,
}

#[derive(Debug, Args)]
#[group(id = "source", required = true, multiple = false)]
pub struct AuditSource {
    #[arg(long)]
    pub graph6: Option<String>,
    /// Rotation file, `-` for stdin.
    #[arg(long)]
    pub rotation: Option<PathBuf>,
    /// Audit a seeded random plane graph on this many vertices.
    #[arg(long)]
    pub random: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_parser = family)]
    pub family: ForbiddenFamily,
    /// Worker threads, 0 for all cores.
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
    #[arg(long)]
    pub checkpoint: Option<PathBuf>,
    /// Wall-clock budget in seconds.
    #[arg(long)]
    pub budget: Option<f64>,
    /// Allow n above the default guard.
    #[arg(long)]
    pub allow_large: bool,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long, value_parser = family)]
    pub family: ForbiddenFamily,
    #[arg(long)]
    pub from: Option<usize>,
    #[arg(long)]
    pub to: usize,
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct ConvertArgs {
    #[command(flatten)]
    pub input: InputArgs,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_parser = family)]
    pub family: ForbiddenFamily,
    /// Print only the number of graphs.
    #[arg(long)]
    pub count: bool,
}
