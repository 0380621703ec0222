//! `galeforge`: enumerate 3-trees, build and check their Gale diagrams,
//! list faces, run the verification sweep and render diagrams as SVG.
//!
//! Exit codes: 0 success, 1 a check or verification failed, 2 bad input.

mod commands;
mod svg;
mod sweep;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Largest `d` accepted anywhere on the command line.
pub const MAX_D: usize = 8;

#[derive(Parser, Debug)]
#[command(name = "galeforge", version, about = "Neighborly polytopes with D+4 vertices via plane Gale diagrams")]
pub struct Cli {
    /// Worker threads (overrides GALEFORGE_THREADS; default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Enumerate or count 3-trees.
    #[command(subcommand)]
    Trees(TreesCmd),
    /// Build, check and decompose Gale diagrams.
    #[command(subcommand)]
    Diagram(DiagramCmd),
    /// Faces and non-faces of the polytope of a diagram.
    #[command(subcommand)]
    Faces(FacesCmd),
    /// Run every consistency check over all trees with d in a range.
    Verify(VerifyArgs),
    /// Render artifacts.
    #[command(subcommand)]
    Export(ExportCmd),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TreeFormat {
    Tree,
    Dot,
}

#[derive(Subcommand, Debug)]
pub enum TreesCmd {
    /// All 3-trees with the given number of leaves, up to mirror.
    Enumerate {
        #[arg(long)]
        leaves: usize,
        #[arg(long, value_enum, default_value = "tree")]
        format: TreeFormat,
        #[arg(long)]
        out: Option<String>,
    },
    /// Number of T-diagrams (3-trees with d + 3 leaves), from the formula.
    Count {
        #[arg(long)]
        d: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum DiagramCmd {
    /// Build the diagram of a tree given in text form (`-` reads stdin).
    Build {
        #[arg(long)]
        tree: String,
        #[arg(long)]
        out: Option<String>,
        /// Also write the tree-vertex → diagram-label map here.
        #[arg(long)]
        correspondence: Option<String>,
    },
    /// Report which diagram classes a diagram belongs to.
    Check { path: String },
    /// Recover the characteristic tree of a T-diagram.
    ExtractTree { path: String },
}

#[derive(Subcommand, Debug)]
pub enum FacesCmd {
    /// Faces, one per line, by size then label order.
    List {
        path: String,
        #[arg(long)]
        size: Option<usize>,
    },
    /// Face numbers f_0 .. f_{D-1}.
    Fvector { path: String },
    /// Faces through one vertex, by size.
    Local {
        path: String,
        #[arg(long)]
        vertex: String,
    },
    /// Non-faces with d + 1 .. D vertices; only the smallest with --minimal.
    Nonfaces {
        path: String,
        #[arg(long)]
        minimal: bool,
    },
    /// The 3-tree of a T-polytope given by its face lattice (or a diagram).
    Identify { path: String },
    /// The face lattice of a diagram as JSON.
    Lattice { path: String },
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 2)]
    pub d_min: usize,
    #[arg(long, default_value_t = 4)]
    pub d_max: usize,
    /// Also compare against the explicit-polytope oracle.
    #[arg(long)]
    pub oracle: bool,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Write the full report as JSON.
    #[arg(long)]
    pub json: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum ExportCmd {
    /// Draw a diagram.
    Svg {
        path: String,
        #[arg(long)]
        out: String,
    },
}

/// How a successful run ended.
#[derive(Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// A check ran and found a problem.
    Failed,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match commands::run(cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
