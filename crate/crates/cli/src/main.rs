//! `coverlab`: command-line access to unfoldings, universal covers,
//! coverings and their spectra.
//!
//! Exit codes: 0 for success or an affirmative verdict, 1 for a negative
//! verdict, 2 for usage or input errors.

mod commands;
mod document;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}: {1}")]
    Io(String, String),
    #[error("{path}: invalid input\n  {}", .errors.join("\n  "))]
    Invalid { path: String, errors: Vec<String> },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lib(#[from] coverlab::Error),
}

#[derive(Parser)]
#[command(name = "coverlab", version, about = "Unfoldings, universal covers and coverings of weighted graphs")]
struct Cli {
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    text: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Truncated unfolding tree of a digraph from its root or a given vertex.
    Unfold {
        file: PathBuf,
        #[arg(long)]
        root: Option<String>,
        /// Defaults to |V|-1.
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Whether two vertices of a digraph have isomorphic unfoldings.
    UnfEquiv { file: PathBuf, x: String, y: String },
    /// Smallest digraph the input unfolds onto.
    QuotientDigraph {
        file: PathBuf,
        #[arg(long)]
        root: Option<String>,
    },
    /// A digraph unfolding onto both inputs, if their roots are equivalent.
    CommonUnfolding { g: PathBuf, h: PathBuf },
    /// Truncated universal cover of a graph seen from a vertex.
    Uc {
        file: PathBuf,
        vertex: String,
        /// Defaults to |V|-1.
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Whether a homomorphism file describes a covering G -> H.
    CoverCheck { g: PathBuf, h: PathBuf, hom: PathBuf },
    /// Minimal base covered by the graph.
    Minimize { file: PathBuf },
    /// Whether two connected graphs have the same universal cover.
    SameUc { g: PathBuf, h: PathBuf },
    /// Compares depth-bounded tree equality with the refinement verdict.
    Norris { file: PathBuf, x: String, y: String },
    /// Degree partition and matrix of an unweighted graph.
    DegreeMatrix { file: PathBuf },
    /// Solves for finite-cover sheet counts, optionally building the cover.
    FiniteCover {
        file: PathBuf,
        #[arg(long)]
        build: bool,
        /// Build a cover without loops (via the product with K2).
        #[arg(long, requires = "build")]
        loop_free: bool,
    },
    /// Common covers of G and H from coverings a: G -> M and b: H -> M.
    CommonCover { g: PathBuf, h: PathBuf, m: PathBuf, a: PathBuf, b: PathBuf },
    /// Product with K2 and its projection.
    Kronecker { file: PathBuf },
    /// Weight matrix and det(M - xI).
    Charpoly { file: PathBuf },
    /// Whether the characteristic polynomial of H divides that of G.
    CharpolyDivides {
        g: PathBuf,
        h: PathBuf,
        /// Covering G -> H used to exhibit the block factorisation.
        #[arg(long)]
        hom: Option<PathBuf>,
    },
    /// Whether a leader can be elected in an anonymous network.
    Election { file: PathBuf },
    /// Checks a document and prints its canonical form.
    Validate { file: PathBuf },
}

fn run(cmd: Command) -> Result<report::Report, CliError> {
    use commands::*;
    match cmd {
        Command::Unfold { file, root, depth } => unfold(&file, root, depth),
        Command::UnfEquiv { file, x, y } => unf_equiv(&file, &x, &y),
        Command::QuotientDigraph { file, root } => quotient_digraph(&file, root),
        Command::CommonUnfolding { g, h } => common_unfolding(&g, &h),
        Command::Uc { file, vertex, depth } => uc(&file, &vertex, depth),
        Command::CoverCheck { g, h, hom } => cover_check(&g, &h, &hom),
        Command::Minimize { file } => minimize(&file),
        Command::SameUc { g, h } => same_uc(&g, &h),
        Command::Norris { file, x, y } => norris(&file, &x, &y),
        Command::DegreeMatrix { file } => degree_matrix(&file),
        Command::FiniteCover { file, build, loop_free } => finite_cover(&file, build, loop_free),
        Command::CommonCover { g, h, m, a, b } => common_cover(&g, &h, &m, &a, &b),
        Command::Kronecker { file } => kronecker(&file),
        Command::Charpoly { file } => charpoly(&file),
        Command::CharpolyDivides { g, h, hom } => charpoly_divides(&g, &h, hom.as_deref()),
        Command::Election { file } => election(&file),
        Command::Validate { file } => validate(&file),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(r) => {
            print!("{}", if cli.text { r.text() } else { r.json() });
            ExitCode::from(r.code)
        }
        Err(e) => {
            eprintln!("coverlab: {e}");
            ExitCode::from(2)
        }
    }
}
