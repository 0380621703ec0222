use std::collections::BTreeSet;
use std::fs;
use std::io::{self, Read, Write};

use anyhow::{bail, Context, Result};
use galeforge::construct::{build_diagram, extract_tree};
use galeforge::faces::{enumerate_minimal_nonfaces, face_lattice, identify_tree, FaceLattice};
use galeforge::subset::masks_of_size;
use galeforge::trees::{count_t_diagrams, enumerate_trees};
use galeforge::{Diagram, ThreeTree, VertexSubset};

use crate::{svg, sweep, Cli, Command, DiagramCmd, ExportCmd, FacesCmd, Status, TreeFormat, TreesCmd, MAX_D};

pub fn run(cli: Cli) -> Result<Status> {
    let threads = thread_count(cli.threads)?;
    match cli.command {
        Command::Trees(cmd) => trees(cmd),
        Command::Diagram(cmd) => diagram(cmd),
        Command::Faces(cmd) => faces(cmd),
        Command::Verify(args) => sweep::run(&args, threads),
        Command::Export(ExportCmd::Svg { path, out }) => {
            let x = load_diagram(&path)?;
            write_output(Some(&out), &svg::render(&x))?;
            Ok(Status::Ok)
        }
    }
}

/// `--threads`, else `GALEFORGE_THREADS`, else `None` (all cores).
fn thread_count(flag: Option<usize>) -> Result<Option<usize>> {
    let n = match flag {
        Some(n) => Some(n),
        None => match std::env::var("GALEFORGE_THREADS") {
            Ok(s) => Some(s.trim().parse::<usize>().with_context(|| format!("GALEFORGE_THREADS={s:?} is not a count"))?),
            Err(_) => None,
        },
    };
    if n == Some(0) {
        bail!("thread count must be positive");
    }
    Ok(n)
}

pub fn check_d(d: usize) -> Result<()> {
    if d > MAX_D {
        bail!("d = {d} is outside 0..={MAX_D}");
    }
    Ok(())
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading stdin")?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

/// Writes to `out`, or stdout when absent.
pub fn write_output(out: Option<&str>, content: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, content).with_context(|| format!("writing {path}")),
        None => match io::stdout().lock().write_all(content.as_bytes()) {
            // a closed pipe (e.g. `| head`) is the reader's choice, not an error
            Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
            r => r.context("writing stdout"),
        },
    }
}

/// Prints one line-terminated block to stdout.
fn emit(s: impl Into<String>) -> Result<()> {
    write_output(None, &with_newline(s.into()))
}

fn load_diagram(path: &str) -> Result<Diagram> {
    Ok(Diagram::from_json_str(&read_input(path)?).with_context(|| format!("parsing diagram {path}"))?)
}

fn with_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn trees(cmd: TreesCmd) -> Result<Status> {
    match cmd {
        TreesCmd::Enumerate { leaves, format, out } => {
            if leaves < 3 || leaves > MAX_D + 3 {
                bail!("--leaves must be in 3..={}", MAX_D + 3);
            }
            let body: String = enumerate_trees(leaves)?
                .iter()
                .map(|t| match format {
                    TreeFormat::Tree => format!("{}\n", t.to_text()),
                    TreeFormat::Dot => with_newline(t.to_dot()),
                })
                .collect();
            write_output(out.as_deref(), &body)?;
        }
        TreesCmd::Count { d } => {
            check_d(d)?;
            emit(count_t_diagrams(d as i64)?.to_string())?;
        }
    }
    Ok(Status::Ok)
}

fn diagram(cmd: DiagramCmd) -> Result<Status> {
    match cmd {
        DiagramCmd::Build { tree, out, correspondence } => {
            let text = read_input(&tree)?;
            let t = ThreeTree::parse(text.trim()).with_context(|| format!("parsing tree {tree}"))?;
            check_d(t.num_leaves().saturating_sub(3))?;
            let (x, c) = build_diagram(&t)?;
            write_output(out.as_deref(), &with_newline(x.to_json_string()))?;
            if let Some(path) = correspondence {
                write_output(Some(&path), &with_newline(c.to_json_string()))?;
            }
            Ok(Status::Ok)
        }
        DiagramCmd::Check { path } => {
            let x = load_diagram(&path)?;
            let report = serde_json::json!({
                "d": x.d(),
                "points": x.len(),
                "polytope_diagram": x.is_polytope_diagram(),
                "neighborly": x.is_neighborly_diagram(),
                "t_diagram": x.is_t_diagram(),
                "t_polytope_diagram": x.is_t_polytope_diagram(),
            });
            emit(serde_json::to_string_pretty(&report)?)?;
            Ok(if x.is_t_polytope_diagram() { Status::Ok } else { Status::Failed })
        }
        DiagramCmd::ExtractTree { path } => {
            let x = load_diagram(&path)?;
            let (t, _) = extract_tree(&x)?;
            emit(t.to_text())?;
            Ok(Status::Ok)
        }
    }
}

fn sorted_label_lists(l: &FaceLattice, masks: impl IntoIterator<Item = u32>) -> Vec<Vec<String>> {
    let mut v: Vec<Vec<String>> = masks.into_iter().map(|m| l.labels_of(m)).collect();
    v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    v
}

fn faces(cmd: FacesCmd) -> Result<Status> {
    match cmd {
        FacesCmd::List { path, size } => {
            let l = face_lattice(&load_diagram(&path)?)?;
            let dim = 2 * l.d();
            let sizes = match size {
                Some(t) if t == 0 || t > dim => bail!("--size must be in 1..={dim}"),
                Some(t) => t..=t,
                None => 1..=dim,
            };
            let body: String = sorted_label_lists(&l, sizes.flat_map(|t| l.faces(t).iter().copied()))
                .into_iter()
                .map(|f| format!("{}\n", f.join(" ")))
                .collect();
            write_output(None, &body)?;
        }
        FacesCmd::Fvector { path } => {
            let l = face_lattice(&load_diagram(&path)?)?;
            emit(serde_json::to_string(&l.f_vector())?)?;
        }
        FacesCmd::Local { path, vertex } => {
            let x = load_diagram(&path)?;
            let v = x.index_of(&vertex)?;
            let counts = face_lattice(&x)?.local_counts(v);
            emit(serde_json::to_string_pretty(&counts)?)?;
        }
        FacesCmd::Nonfaces { path, minimal } => {
            let x = load_diagram(&path)?;
            let l = face_lattice(&x)?;
            let masks: BTreeSet<u32> = if minimal {
                enumerate_minimal_nonfaces(&x).into_iter().map(|m: VertexSubset| m.0).collect()
            } else {
                (x.d() + 1..=2 * x.d())
                    .flat_map(|t| masks_of_size(x.len(), t))
                    .filter(|&m| !l.contains(m))
                    .collect()
            };
            emit(serde_json::to_string_pretty(&sorted_label_lists(&l, masks))?)?;
        }
        FacesCmd::Identify { path } => {
            let l = load_lattice(&path)?;
            check_d(l.d())?;
            emit(identify_tree(&l, l.d())?.to_text())?;
        }
        FacesCmd::Lattice { path } => {
            let l = face_lattice(&load_diagram(&path)?)?;
            emit(l.to_json_string())?;
        }
    }
    Ok(Status::Ok)
}

/// A lattice document, or a diagram whose lattice is computed.
fn load_lattice(path: &str) -> Result<FaceLattice> {
    let text = read_input(path)?;
    let value: serde_json::Value = serde_json::from_str(&text).with_context(|| format!("parsing {path}"))?;
    if value.get("facets").is_some() {
        Ok(FaceLattice::from_json_str(&text)?)
    } else {
        Ok(face_lattice(&Diagram::from_json_value(value)?)?)
    }
}
