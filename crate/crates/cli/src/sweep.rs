//! The `verify` subcommand: per-tree checks fan out over a thread pool and
//! are merged back in enumeration order, so output never depends on the
//! thread count.

use anyhow::{bail, Context, Result};
use galeforge::oracle::DEFAULT_SEED;
use galeforge::trees::enumerate_trees;
use galeforge::verify::{verify_counts, verify_level, verify_tree, LevelContext, Verification, VerifyOptions};
use rayon::prelude::*;

use crate::commands::{check_d, write_output};
use crate::{Status, VerifyArgs};

pub fn run(args: &VerifyArgs, threads: Option<usize>) -> Result<Status> {
    check_d(args.d_max)?;
    if args.d_min > args.d_max {
        bail!("--d-min {} exceeds --d-max {}", args.d_min, args.d_max);
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().context("starting worker threads")?;
    let opts = VerifyOptions { oracle: args.oracle, seed: args.seed.unwrap_or(DEFAULT_SEED) };

    let mut all = Verification::default();
    for d in args.d_min..=args.d_max {
        all.merge(verify_counts(d));
        let ctx = LevelContext::new(d)?;
        let trees = enumerate_trees(d + 3)?;
        let per_tree: Vec<Verification> = pool.install(|| trees.par_iter().map(|t| verify_tree(t, &ctx, &opts)).collect());
        for v in per_tree {
            all.merge(v);
        }
        all.merge(verify_level(d));
    }

    let mut out = String::new();
    for (name, tally) in &all.checks {
        let verdict = if tally.failures.is_empty() { "PASS" } else { "FAIL" };
        out.push_str(&format!("{verdict} {name} ({} cases, {} failed)\n", tally.cases, tally.failures.len()));
        for f in &tally.failures {
            out.push_str(&format!("    {f}\n"));
        }
    }
    out.push_str(&format!(
        "{} checks, {} failures\n",
        all.checks.values().map(|t| t.cases).sum::<usize>(),
        all.failure_count()
    ));
    write_output(None, &out)?;
    if let Some(path) = &args.json {
        write_output(Some(path), &format!("{}\n", all.to_json_string()))?;
    }
    Ok(if all.ok() { Status::Ok } else { Status::Failed })
}
