//! Acceptance suite: one PASS/FAIL line per criterion, with the runtime
//! budget of each criterion pinned. Runs as a plain binary so the report
//! reads top to bottom; exits nonzero if any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use galeforge::construct::{
    build_diagram, build_diagram_with, comb_equivalent, diagonal_equivalent, extract_tree_with, BuildOptions,
    WhiteChoice,
};
use galeforge::faces::{
    closed_form_black_black, closed_form_black_white_via, corresponding_pairs,
    cyclic_diagram, face_lattice, lune_nonfaces, lunes_containing_white_avoiding,
    recover_colors, remarkable_edges, NonfaceTable, TreeCatalog,
};
use galeforge::oracle::{verify_against_oracle, verify_against_oracle_sampled};
use galeforge::subset::{binomial, masks_of_size};
use galeforge::trees::{count_t_diagrams, enumerate_trees, ThreeTree};
use galeforge::{Diagram, Point2, Rational, VertexSubset};

/// Tree counts for d = 1..=6.
const TREE_COUNTS: [usize; 6] = [1, 1, 3, 4, 12, 27];
const ORACLE_SEED: u64 = 0x5eed_6a1e;
const ORACLE_SAMPLES: usize = 10_000;

struct Outcome {
    failures: Vec<String>,
    cases: usize,
}

impl Outcome {
    fn new() -> Self {
        Outcome { failures: Vec::new(), cases: 0 }
    }

    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(detail());
        }
    }
}

fn built(d: usize) -> Vec<(ThreeTree, Diagram)> {
    enumerate_trees(d + 3)
        .expect("enumeration")
        .into_iter()
        .map(|t| {
            let (x, _) = build_diagram(&t).expect("build");
            (t, x)
        })
        .collect()
}

fn unordered(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (a.into(), b.into())
    } else {
        (b.into(), a.into())
    }
}

fn face(x: &Diagram, m: u32) -> bool {
    x.is_face(VertexSubset(m)).expect("subset in range")
}

/// Minimal non-faces straight from the face test.
fn brute_table(x: &Diagram) -> NonfaceTable {
    NonfaceTable::from_sets(masks_of_size(x.len(), x.d() + 1).filter(|&m| !face(x, m)))
}

fn tree_counts() -> Outcome {
    let mut o = Outcome::new();
    for d in 1..=6 {
        let formula = count_t_diagrams(d as i64).expect("formula").to_string();
        let enumerated = enumerate_trees(d + 3).expect("enumeration").len();
        let expected = TREE_COUNTS[d - 1];
        o.check(formula == expected.to_string() && enumerated == expected, || {
            format!("d={d}: formula {formula}, enumeration {enumerated}, expected {expected}")
        });
    }
    o
}

fn round_trip() -> Outcome {
    let mut o = Outcome::new();
    for d in 0..=6 {
        for (t, x) in built(d) {
            for choice in [WhiteChoice::First, WhiteChoice::Last] {
                let back = extract_tree_with(&x, choice).map(|(u, _)| u.is_isomorphic(&t, true));
                o.check(matches!(back, Ok(true)), || format!("d={d} {} ({choice:?}): {back:?}", t.to_text()));
            }
        }
    }
    o
}

fn t_diagrams() -> Outcome {
    let mut o = Outcome::new();
    for d in 2..=5 {
        for (t, x) in built(d) {
            let n = x.len();
            let faces = masks_of_size(n, d).filter(|&m| face(&x, m)).count() as u64;
            o.check(x.is_t_diagram() && faces == binomial(n as u64, d as u64), || {
                format!("d={d} {}: {faces} faces of size {d}", t.to_text())
            });
        }
    }
    o
}

fn nonface_census() -> Outcome {
    let mut o = Outcome::new();
    for d in 2..=4 {
        let expected = (d + 1) * (d + 3) + 1;
        for (t, x) in built(d) {
            // brute force straight from the face test
            let brute: BTreeSet<u32> = masks_of_size(x.len(), d + 1).filter(|&m| !face(&x, m)).collect();
            let images: Vec<u32> = lune_nonfaces(&x).expect("lunes").into_iter().map(|m| m.0).collect();
            let image_set: BTreeSet<u32> = images.iter().copied().collect();
            o.check(
                brute.len() == expected && images.len() == expected && image_set == brute,
                || format!("d={d} {}: brute {}, lune images {}", t.to_text(), brute.len(), image_set.len()),
            );
        }
    }
    o
}

fn closed_forms() -> Outcome {
    let mut o = Outcome::new();
    for d in 1..=4 {
        for (t, x) in built(d) {
            let blacks = x.black_cycle_labels();
            let table = brute_table(&x);
            let n_of = |a: &str, b: &str| table.count_pair(x.index_of(a).unwrap(), x.index_of(b).unwrap());
            for (i, a) in blacks.iter().enumerate() {
                for b in &blacks[i + 1..] {
                    let brute = n_of(a, b);
                    let formula = closed_form_black_black(&x, a, b).expect("formula");
                    o.check(brute == formula, || format!("d={d} {}: N({a},{b}) {brute} vs {formula}", t.to_text()));
                }
            }
            for w in x.whites() {
                let bl = x.label(w).to_string();
                for pj in x.corresponded_blacks(w) {
                    let aj = blacks[pj].clone();
                    for ai in blacks.iter().filter(|&a| *a != aj) {
                        let brute = n_of(ai, &bl);
                        let formula = closed_form_black_white_via(&x, ai, &aj, &bl).expect("formula");
                        let lunes = lunes_containing_white_avoiding(&x, &bl, ai).expect("lunes");
                        o.check(brute == formula && brute == lunes, || {
                            format!("d={d} {}: N({ai},{bl}) {brute} vs lr+a {formula}, lunes {lunes}", t.to_text())
                        });
                    }
                }
            }
        }
    }
    o
}

fn remarkable() -> Outcome {
    let mut o = Outcome::new();
    for d in 2..=5 {
        for t in enumerate_trees(d + 3).expect("enumeration") {
            let (x, c) = build_diagram(&t).expect("build");
            let brute = remarkable_edges(&x);
            let corresponding = corresponding_pairs(&x);
            let leaf_edges: BTreeSet<(String, String)> = t
                .edges()
                .into_iter()
                .filter(|&(a, b)| t.is_leaf(a) || t.is_leaf(b))
                .map(|(a, b)| {
                    unordered(c.diagram_label(t.label(a)).expect("mapped"), c.diagram_label(t.label(b)).expect("mapped"))
                })
                .collect();
            o.check(brute == corresponding && brute == leaf_edges && brute.len() == d + 3, || {
                format!("d={d} {}: {brute:?} / {corresponding:?} / {leaf_edges:?}", t.to_text())
            });
        }
    }
    o
}

fn parity_and_recovery() -> Outcome {
    let mut o = Outcome::new();
    for d in 2..=4 {
        let parity = ((d + 1) % 2) as i64;
        let catalog = TreeCatalog::new(d).expect("catalog");
        for (t, x, lattice) in catalog.diagrams() {
            let table = brute_table(x);
            let n_of = |a: &str, b: &str| table.count_pair(x.index_of(a).unwrap(), x.index_of(b).unwrap()) as i64;
            let blacks = x.black_cycle_labels();
            for w in x.whites() {
                let partners = x.corresponded_blacks(w);
                if partners.len() != 2 {
                    continue;
                }
                let (a1, a2) = (&blacks[partners[0]], &blacks[partners[1]]);
                for (pc, cl) in blacks.iter().enumerate().filter(|(p, _)| !partners.contains(p)) {
                    let diff_c = (n_of(a1, cl) - n_of(a2, cl)).rem_euclid(2);
                    o.check(diff_c != parity, || format!("d={d} {}: black {cl} against ({a1},{a2})", t.to_text()));
                    let b = x.corresponding_white(pc).expect("every black has a white");
                    let bl = x.label(b);
                    let diff_b = (n_of(a1, bl) - n_of(a2, bl)).rem_euclid(2);
                    o.check(diff_b == parity, || format!("d={d} {}: white {bl} against ({a1},{a2})", t.to_text()));
                }
            }
            let colors = recover_colors(lattice, d).expect("colors");
            let wrong: Vec<&str> =
                x.points().iter().filter(|p| colors[&p.label] != p.color).map(|p| p.label.as_str()).collect();
            o.check(wrong.is_empty(), || format!("d={d} {}: miscolored {wrong:?}", t.to_text()));
            let rename: BTreeMap<String, String> =
                lattice.labels().iter().rev().enumerate().map(|(i, s)| (s.clone(), format!("q{i:02}"))).collect();
            let found = catalog.identify(&lattice.relabeled(&rename).expect("rename")).expect("identified");
            o.check(found.is_isomorphic(t, true), || format!("d={d} {}: identified as {}", t.to_text(), found.to_text()));
        }
    }
    o
}

fn oracle() -> Outcome {
    let mut o = Outcome::new();
    for d in 2..=4 {
        for (t, x) in built(d) {
            let report = if d <= 3 {
                verify_against_oracle(&x)
            } else {
                verify_against_oracle_sampled(&x, ORACLE_SAMPLES, ORACLE_SEED)
            };
            match report {
                Ok(r) => {
                    let facets_ok = d != 2 || r.facet_count == 20;
                    let expected_checked = if d <= 3 {
                        (1..=2 * d).map(|k| binomial(x.len() as u64, k as u64) as usize).sum()
                    } else {
                        binomial(x.len() as u64, 2 * d as u64) as usize + ORACLE_SAMPLES
                    };
                    o.check(r.ok && facets_ok && r.checked == expected_checked, || {
                        format!("d={d} {}: facets {}, checked {}, mismatches {:?}", t.to_text(), r.facet_count, r.checked, r.mismatches)
                    });
                }
                Err(e) => o.check(false, || format!("d={d} {}: {e}", t.to_text())),
            }
        }
    }
    o
}

fn local_counts() -> Outcome {
    let mut o = Outcome::new();
    for d in 2..=4 {
        let cyclic = face_lattice(&cyclic_diagram(d).expect("cyclic")).expect("lattice");
        let reference = cyclic.local_counts(0);
        o.check((0..2 * d + 4).all(|v| cyclic.local_counts(v) == reference), || format!("d={d}: cyclic not uniform"));
        for (t, x) in built(d) {
            let l = face_lattice(&x).expect("lattice");
            let uniform = (0..x.len()).all(|v| l.local_counts(v) == reference);
            o.check(uniform && l.f_vector() == cyclic.f_vector(), || {
                format!("d={d} {}: {:?} vs cyclic {:?}", t.to_text(), l.f_vector(), cyclic.f_vector())
            });
            if d == 2 {
                o.check(l.f_vector() == [8, 28, 40, 20], || format!("d=2 f-vector {:?}", l.f_vector()));
            }
        }
    }
    o
}

fn non_transitive() -> Outcome {
    let mut o = Outcome::new();
    for d in 2..=5 {
        for (t, x) in built(d) {
            let mut degree: BTreeMap<String, usize> = BTreeMap::new();
            for (a, b) in remarkable_edges(&x) {
                *degree.entry(a).or_default() += 1;
                *degree.entry(b).or_default() += 1;
            }
            let has = |k| (0..x.len()).any(|i| degree.get(x.label(i)).copied().unwrap_or(0) == k);
            let blacks_one = x.blacks().iter().all(|&i| degree.get(x.label(i)) == Some(&1));
            o.check(has(1) && has(2) && blacks_one, || format!("d={d} {}: degrees {degree:?}", t.to_text()));
        }
    }
    o
}

fn equivalences() -> Outcome {
    let mut o = Outcome::new();
    let alt = BuildOptions {
        initial_epsilon: Rational::new(2, 7),
        base_triangle: [Point2::from_ints(3, -4), Point2::from_ints(-6, 1), Point2::from_ints(9, 9)],
        base_white: Point2::from_ints(2, 1),
        integer_coordinates: false,
    };
    for d in 0..=4 {
        let diagrams = built(d);
        for (i, (_, x)) in diagrams.iter().enumerate() {
            for (j, (_, y)) in diagrams.iter().enumerate() {
                let diag = diagonal_equivalent(x, y).is_some();
                let comb = comb_equivalent(x, y);
                o.check(diag == comb && comb == (i == j), || format!("d={d} pair ({i},{j}): diagonal {diag}, comb {comb}"));
            }
        }
        for (t, x) in &diagrams {
            let (y, _) = build_diagram_with(t, &alt).expect("second realization");
            let same = comb_equivalent(x, &y) && diagonal_equivalent(x, &y).is_some();
            let mirrored = build_diagram(&t.mirror()).map(|(z, _)| comb_equivalent(x, &z)).unwrap_or(false);
            o.check(same && mirrored && y.points() != x.points(), || format!("d={d} {}: realizations differ", t.to_text()));
        }
    }
    o
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, fn() -> Outcome, Duration); 11] = [
        (1, "tree counts: formula = enumeration = 1,1,3,4,12,27 (d=1..6)", tree_counts, Duration::from_secs(10)),
        (2, "round trip extract(build(t)) = t up to mirror (d<=6)", round_trip, Duration::from_secs(60)),
        (3, "built diagrams are T-diagrams and neighborly (d=2..5)", t_diagrams, Duration::from_secs(120)),
        (4, "minimal non-face census (d+1)(d+3)+1 and lune bijection (d=2..4)", nonface_census, Duration::from_secs(120)),
        (5, "closed forms C(l,2)+C(r,2) and lr+a match counts (d<=4)", closed_forms, Duration::from_secs(120)),
        (6, "remarkable edges: brute force = corresponding pairs = leaf edges (d=2..5)", remarkable, Duration::from_secs(120)),
        (7, "parity statements, color recovery, tree identification (d=2..4)", parity_and_recovery, Duration::from_secs(120)),
        (8, "oracle face sets equal; 20 facets at d=2 (d=2..4)", oracle, Duration::from_secs(120)),
        (9, "local face counts uniform and cyclic; f-vectors (d=2..4)", local_counts, Duration::from_secs(120)),
        (10, "a vertex on one and a vertex on two remarkable edges (d=2..5)", non_transitive, Duration::from_secs(120)),
        (11, "diagonal and comb equivalence agree; realizations equivalent (d<=4)", equivalences, Duration::from_secs(120)),
    ];
    let mut all_ok = true;
    for (id, what, run, budget) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let ok = outcome.failures.is_empty() && outcome.cases > 0 && elapsed <= budget;
        all_ok &= ok;
        println!(
            "{} criterion {id:>2}: {what} [{} cases, {:.2}s / {}s]",
            if ok { "PASS" } else { "FAIL" },
            outcome.cases,
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
        for f in outcome.failures.iter().take(10) {
            println!("     {f}");
        }
        if elapsed > budget {
            println!("     over the runtime budget");
        }
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
