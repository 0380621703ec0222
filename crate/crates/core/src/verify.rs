//! The full consistency sweep: every structural claim about T-diagrams
//! checked on every built diagram of a given `d`. Failures are collected,
//! never fatal, so one run reports everything that is broken.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::construct::{
    build_diagram, build_diagram_with, comb_equivalent, diagonal_equivalent, extract_tree_with, BuildOptions,
    Correspondence, WhiteChoice,
};
use crate::diagram::{Diagram, VertexSubset};
use crate::error::Result;
use crate::exactgeom::{Point2, Rational};
use crate::faces::{
    classify_nonface, closed_form_black_black, closed_form_black_white_via, combinatorial_nonface, corresponding_pairs,
    cyclic_diagram, enumerate_minimal_nonfaces, face_lattice, lune_nonfaces, lunes_containing_white_avoiding, pair,
    recover_colors, remarkable_edges, LabelPair, NonfaceClass, NonfaceTable, TreeCatalog,
};
use crate::oracle::{verify_against_oracle, verify_against_oracle_sampled};
use crate::subset::{binomial, masks_of_size};
use crate::trees::{count_t_diagrams, enumerate_trees, ThreeTree};

/// Largest `d` for which the oracle compares every subset.
const ORACLE_EXHAUSTIVE_MAX_D: usize = 3;
/// Random smaller subsets compared by the oracle beyond that.
pub const ORACLE_SAMPLES: usize = 10_000;

/// Known tree counts for `d = 0..=6`, against which both the formula and
/// the enumeration are checked.
pub const KNOWN_TREE_COUNTS: [u64; 7] = [1, 1, 1, 3, 4, 12, 27];

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct Tally {
    pub cases: usize,
    pub failures: Vec<String>,
}

/// Results keyed by `"d<d>/<check>"`.
#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct Verification {
    pub checks: BTreeMap<String, Tally>,
}

impl Verification {
    pub fn record(&mut self, d: usize, check: &str, ok: bool, detail: impl FnOnce() -> String) {
        let tally = self.checks.entry(format!("d{d}/{check}")).or_default();
        tally.cases += 1;
        if !ok {
            tally.failures.push(detail());
        }
    }

    /// Records an error from a check that could not run as a failure.
    fn record_result(&mut self, d: usize, check: &str, r: Result<bool>, detail: impl FnOnce() -> String) {
        match r {
            Ok(ok) => self.record(d, check, ok, detail),
            Err(e) => self.record(d, check, false, || format!("{}: {e}", detail())),
        }
    }

    pub fn merge(&mut self, other: Verification) {
        for (k, t) in other.checks {
            let tally = self.checks.entry(k).or_default();
            tally.cases += t.cases;
            tally.failures.extend(t.failures);
        }
    }

    pub fn ok(&self) -> bool {
        self.checks.values().all(|t| t.failures.is_empty())
    }

    pub fn failure_count(&self) -> usize {
        self.checks.values().map(|t| t.failures.len()).sum()
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("verification serializes")
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub oracle: bool,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { oracle: false, seed: crate::oracle::DEFAULT_SEED }
    }
}

/// Formula against enumeration (and the known values where tabulated).
/// The formula is stated for `d >= 1`.
pub fn verify_counts(d: usize) -> Verification {
    let mut v = Verification::default();
    if d == 0 {
        return v;
    }
    let formula = count_t_diagrams(d as i64);
    let enumerated = enumerate_trees(d + 3).map(|ts| ts.len());
    let ok = match (&formula, &enumerated) {
        (Ok(f), Ok(e)) => {
            f.to_string() == e.to_string()
                && KNOWN_TREE_COUNTS.get(d).is_none_or(|&k| k.to_string() == e.to_string())
        }
        _ => false,
    };
    v.record(d, "tree_count", ok, || format!("formula {formula:?}, enumeration {enumerated:?}"));
    v
}

/// Per-`d` reference data shared by all trees of that size.
#[derive(Clone, Debug)]
pub struct LevelContext {
    pub d: usize,
    /// Local face counts of the cyclic polytope of the same dimension.
    pub cyclic_local: Option<BTreeMap<usize, usize>>,
}

impl LevelContext {
    pub fn new(d: usize) -> Result<LevelContext> {
        let cyclic_local = if d >= 1 { Some(face_lattice(&cyclic_diagram(d)?)?.local_counts(0)) } else { None };
        Ok(LevelContext { d, cyclic_local })
    }
}

/// Every per-diagram check on the diagram built from `t`.
pub fn verify_tree(t: &ThreeTree, ctx: &LevelContext, opts: &VerifyOptions) -> Verification {
    let mut v = Verification::default();
    let d = ctx.d;
    let name = t.to_text();
    let (x, c) = match build_diagram(t) {
        Ok(built) => built,
        Err(e) => {
            v.record(d, "build", false, || format!("{name}: {e}"));
            return v;
        }
    };
    v.record(d, "build", true, String::new);
    check_round_trip(&mut v, d, t, &x, &name);
    check_t_diagram(&mut v, d, &x, &name);
    if d == 0 {
        return v;
    }
    let table = NonfaceTable::from_diagram(&x);
    check_census(&mut v, d, &x, &name);
    check_closed_forms(&mut v, d, &x, &table, &name);
    check_classification(&mut v, d, &x, &name);
    if d >= 2 {
        check_remarkable(&mut v, d, t, &x, &c, &name);
        check_parity(&mut v, d, &x, &table, &name);
    }
    check_lattice(&mut v, ctx, &x, &name);
    if opts.oracle {
        let report = if d <= ORACLE_EXHAUSTIVE_MAX_D {
            verify_against_oracle(&x)
        } else {
            verify_against_oracle_sampled(&x, ORACLE_SAMPLES, opts.seed)
        };
        match report {
            Ok(r) => v.record(d, "oracle", r.ok, || format!("{name}: mismatches {:?}", r.mismatches)),
            Err(e) => v.record(d, "oracle", false, || format!("{name}: {e}")),
        }
    }
    v
}

fn check_round_trip(v: &mut Verification, d: usize, t: &ThreeTree, x: &Diagram, name: &str) {
    for choice in [WhiteChoice::First, WhiteChoice::Last] {
        let r = extract_tree_with(x, choice).map(|(u, _)| u.is_isomorphic(t, true));
        v.record_result(d, "round_trip", r, || format!("{name} ({choice:?})"));
    }
    let text = ThreeTree::parse(&t.to_text()).map(|u| u.is_isomorphic(t, false));
    v.record_result(d, "tree_text", text, || name.to_string());
}

fn check_t_diagram(v: &mut Verification, d: usize, x: &Diagram, name: &str) {
    v.record(d, "t_diagram", x.is_t_diagram(), || format!("{name}: {:?}", x.t_diagram_violation()));
    let faces = masks_of_size(x.len(), d).filter(|&m| x.face_unchecked(VertexSubset(m))).count();
    v.record(d, "neighborly", faces as u64 == binomial(x.len() as u64, d as u64), || {
        format!("{name}: {faces} faces with {d} vertices")
    });
}

fn check_census(v: &mut Verification, d: usize, x: &Diagram, name: &str) {
    let brute = enumerate_minimal_nonfaces(x);
    let expected = (d + 1) * (d + 3) + 1;
    v.record(d, "nonface_census", brute.len() == expected, || {
        format!("{name}: {} minimal non-faces, expected {expected}", brute.len())
    });
    let bijective = lune_nonfaces(x).map(|images| {
        let set: BTreeSet<VertexSubset> = images.iter().copied().collect();
        set.len() == images.len() && set == brute
    });
    v.record_result(d, "lune_bijection", bijective, || name.to_string());
}

fn check_closed_forms(v: &mut Verification, d: usize, x: &Diagram, table: &NonfaceTable, name: &str) {
    let cycle = x.black_cycle();
    for (p, &a) in cycle.iter().enumerate() {
        for &b in &cycle[p + 1..] {
            let brute = table.count_pair(a, b);
            let r = closed_form_black_black(x, x.label(a), x.label(b)).map(|f| f == brute);
            v.record_result(d, "closed_form_black_black", r, || {
                format!("{name}: N({}, {}) = {brute}", x.label(a), x.label(b))
            });
        }
    }
    for w in x.whites() {
        for pj in x.corresponded_blacks(w) {
            let a_j = x.label(x.cycle_at(pj as isize));
            for &a in cycle.iter().filter(|&&a| x.label(a) != a_j) {
                let brute = table.count_pair(a, w);
                let (ai, b) = (x.label(a), x.label(w));
                let r = closed_form_black_white_via(x, ai, a_j, b).map(|f| f == brute);
                v.record_result(d, "closed_form_black_white", r, || format!("{name}: N({ai}, {b}) = {brute} via {a_j}"));
                let lunes = lunes_containing_white_avoiding(x, b, ai).map(|f| f == brute);
                v.record_result(d, "lune_count", lunes, || format!("{name}: lunes with {b} avoiding {ai}"));
            }
        }
    }
}

fn check_remarkable(v: &mut Verification, d: usize, t: &ThreeTree, x: &Diagram, c: &Correspondence, name: &str) {
    let brute = remarkable_edges(x);
    let corresponding = corresponding_pairs(x);
    let from_tree: BTreeSet<LabelPair> = t
        .edges()
        .into_iter()
        .filter(|&(a, b)| t.is_leaf(a) || t.is_leaf(b))
        .filter_map(|(a, b)| Some(pair(c.diagram_label(t.label(a))?, c.diagram_label(t.label(b))?)))
        .collect();
    v.record(d, "remarkable_edges", brute == corresponding && brute == from_tree, || {
        format!("{name}: brute {brute:?}, corresponding {corresponding:?}, tree {from_tree:?}")
    });
    let mut degree: BTreeMap<&str, usize> = BTreeMap::new();
    for (a, b) in &brute {
        *degree.entry(a.as_str()).or_default() += 1;
        *degree.entry(b.as_str()).or_default() += 1;
    }
    let has = |k| degree.values().any(|&n| n == k);
    v.record(d, "non_transitive", has(1) && has(2), || format!("{name}: remarkable degrees {degree:?}"));
}

fn check_classification(v: &mut Verification, d: usize, x: &Diagram, name: &str) {
    for size in d + 2..=2 * d {
        for m in masks_of_size(x.len(), size).map(VertexSubset) {
            let direct_nonface = !x.face_unchecked(m);
            let class = classify_nonface(x, m).map(|c| (c != NonfaceClass::NotANonface) == direct_nonface);
            let combinatorial = combinatorial_nonface(x, m).map(|c| c == direct_nonface);
            let ok = matches!((class, combinatorial), (Ok(true), Ok(true)));
            v.record(d, "nonface_classification", ok, || format!("{name}: {:?}", m.labels(x)));
        }
    }
}

/// For the two blacks `x, y` a white corresponds to, every other black `C`
/// with its corresponding white `B` has `N(x, C) - N(y, C)` of the other
/// parity than `d + 1` and `N(x, B) - N(y, B)` of the same parity.
fn check_parity(v: &mut Verification, d: usize, x: &Diagram, table: &NonfaceTable, name: &str) {
    let n = x.black_cycle().len();
    let diff = |a: usize, b: usize, z: usize| (table.count_pair(a, z) as i64 - table.count_pair(b, z) as i64).rem_euclid(2);
    let target = ((d + 1) % 2) as i64;
    for w in x.whites() {
        let partners = x.corresponded_blacks(w);
        if partners.len() != 2 {
            continue;
        }
        let (a, b) = (x.cycle_at(partners[0] as isize), x.cycle_at(partners[1] as isize));
        for pc in (0..n).filter(|p| !partners.contains(p)) {
            let cblack = x.cycle_at(pc as isize);
            v.record(d, "parity_black", diff(a, b, cblack) != target, || {
                format!("{name}: ({}, {}) against {}", x.label(a), x.label(b), x.label(cblack))
            });
            match x.corresponding_white(pc) {
                Some(bw) if bw != w => v.record(d, "parity_white", diff(a, b, bw) == target, || {
                    format!("{name}: ({}, {}) against {}", x.label(a), x.label(b), x.label(bw))
                }),
                Some(_) => {}
                None => v.record(d, "parity_white", false, || format!("{name}: {} has no white", x.label(cblack))),
            }
        }
    }
}

fn check_lattice(v: &mut Verification, ctx: &LevelContext, x: &Diagram, name: &str) {
    let d = ctx.d;
    let lattice = match face_lattice(x) {
        Ok(l) => l,
        Err(e) => {
            v.record(d, "face_lattice", false, || format!("{name}: {e}"));
            return;
        }
    };
    v.record(d, "face_lattice", lattice.is_downward_closed(), || format!("{name}: not downward closed"));
    let first = lattice.local_counts(0);
    let uniform = (0..x.len()).all(|i| lattice.local_counts(i) == first);
    let cyclic = ctx.cyclic_local.as_ref().is_some_and(|c| *c == first);
    v.record(d, "local_face_counts", uniform && cyclic, || {
        format!("{name}: uniform {uniform}, {first:?} vs cyclic {:?}", ctx.cyclic_local)
    });
    if d >= 2 {
        let colors = recover_colors(&lattice, d)
            .map(|cs| x.points().iter().all(|p| cs.get(&p.label) == Some(&p.color)));
        v.record_result(d, "recover_colors", colors, || name.to_string());
    }
}

/// Catalog identification of relabelled lattices and agreement of the two
/// equivalence notions on all pairs.
pub fn verify_level(d: usize) -> Verification {
    let mut v = Verification::default();
    let trees = match enumerate_trees(d + 3) {
        Ok(ts) => ts,
        Err(e) => {
            v.record(d, "enumerate", false, || e.to_string());
            return v;
        }
    };
    let built: Vec<Diagram> = trees.iter().filter_map(|t| build_diagram(t).ok().map(|(x, _)| x)).collect();
    if built.len() != trees.len() {
        v.record(d, "enumerate", false, || "some trees failed to build".into());
        return v;
    }
    if d >= 2 {
        check_identification(&mut v, d);
    }
    for (i, x) in built.iter().enumerate() {
        for (j, y) in built.iter().enumerate() {
            let diag = diagonal_equivalent(x, y).is_some();
            let comb = comb_equivalent(x, y);
            v.record(d, "equivalence_agreement", diag == comb && diag == (i == j), || {
                format!("trees {i}, {j}: diagonal {diag}, comb {comb}")
            });
        }
    }
    let alt = alternative_options();
    for (t, x) in trees.iter().zip(&built) {
        let r = build_diagram_with(t, &alt).map(|(y, _)| comb_equivalent(x, &y) && comb_equivalent(x, &y.reflected()));
        v.record_result(d, "independent_realization", r, || t.to_text());
    }
    v
}

/// A second, unrelated set of construction choices.
pub fn alternative_options() -> BuildOptions {
    BuildOptions {
        initial_epsilon: Rational::new(1, 3),
        base_triangle: [Point2::from_ints(-5, 2), Point2::from_ints(7, -3), Point2::from_ints(1, 11)],
        base_white: Point2::from_ints(1, 3),
        integer_coordinates: false,
    }
}

fn check_identification(v: &mut Verification, d: usize) {
    let catalog = match TreeCatalog::new(d) {
        Ok(c) => c,
        Err(e) => {
            v.record(d, "identify_tree", false, || e.to_string());
            return;
        }
    };
    for (k, (t, _, l)) in catalog.diagrams().enumerate() {
        // reverse the label order so nothing depends on naming
        let rename: BTreeMap<String, String> =
            l.labels().iter().rev().enumerate().map(|(i, s)| (s.clone(), format!("p{i:02}"))).collect();
        let r = l
            .relabeled(&rename)
            .and_then(|shuffled| catalog.identify(&shuffled))
            .map(|found| found.is_isomorphic(t, true));
        v.record_result(d, "identify_tree", r, || format!("catalog entry {k}: {}", t.to_text()));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_levels_pass() {
        let opts = VerifyOptions { oracle: true, ..VerifyOptions::default() };
        let mut all = Verification::default();
        for d in 0..=3 {
            all.merge(verify_counts(d));
            let ctx = LevelContext::new(d).unwrap();
            for t in enumerate_trees(d + 3).unwrap() {
                all.merge(verify_tree(&t, &ctx, &opts));
            }
            all.merge(verify_level(d));
        }
        assert!(all.ok(), "{}", all.to_json_string());
        assert!(all.checks["d3/parity_white"].cases > 0);
        assert!(all.checks["d2/oracle"].cases == 1);
    }

    #[test]
    fn failures_are_collected() {
        let mut v = Verification::default();
        v.record(2, "x", false, || "first".into());
        v.record(2, "x", true, String::new);
        let mut w = Verification::default();
        w.record(2, "x", false, || "second".into());
        v.merge(w);
        assert_eq!(v.checks["d2/x"].cases, 3);
        assert_eq!(v.failure_count(), 2);
        assert!(!v.ok());
    }
}
