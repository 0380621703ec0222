//! Faces and non-faces of T-polytopes read off their T-diagrams: lunes,
//! minimal non-faces, the closed-form non-face counts, remarkable edges,
//! face lattices and combinatorial reconstruction.
//!
//! A *lune* is a run of consecutive blacks `A_i, ..., A_j` (clockwise) or
//! the whole black polygon. Its complement in the diagram's black cycle and
//! the whites inside it make up exactly one minimal non-face.

mod lattice;
mod recover;

use std::collections::BTreeSet;

use crate::diagram::{Color, Diagram, VertexSubset};
use crate::error::{GaleError, Result};
use crate::exactgeom::{point_in_convex_polygon_strict, Point2};
use crate::subset::{binomial, masks_of_size};

pub use lattice::{cyclic_diagram, face_lattice, local_face_counts, FaceLattice, LatticeDoc};
pub use recover::{identify_tree, recover_colors, TreeCatalog};

/// Consecutive blacks from cycle position `start` to `end` clockwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lune {
    pub start: usize,
    pub end: usize,
    pub whole_polygon: bool,
}

impl Lune {
    /// The lune with `k` vertices starting at `start` on an `n`-gon.
    pub fn new(n: usize, start: usize, k: usize) -> Result<Lune> {
        if k < 2 || k > n || start >= n {
            return Err(GaleError::Precondition(format!("no lune with {k} vertices on a {n}-gon")));
        }
        if k == n {
            return Ok(Lune::whole(n));
        }
        Ok(Lune { start, end: (start + k - 1) % n, whole_polygon: false })
    }

    pub fn whole(n: usize) -> Lune {
        Lune { start: 0, end: n - 1, whole_polygon: true }
    }

    /// Cycle positions of the lune's vertices, clockwise.
    pub fn positions(&self, n: usize) -> Vec<usize> {
        if self.whole_polygon {
            return (0..n).collect();
        }
        let k = (self.end + n - self.start) % n + 1;
        (0..k).map(|s| (self.start + s) % n).collect()
    }

    pub fn vertex_count(&self, n: usize) -> usize {
        if self.whole_polygon {
            n
        } else {
            (self.end + n - self.start) % n + 1
        }
    }
}

/// All `(d + 1)(d + 3) + 1` lunes of the black polygon.
pub fn all_lunes(x: &Diagram) -> Vec<Lune> {
    let n = x.black_cycle().len();
    let mut out: Vec<Lune> =
        (0..n).flat_map(|s| (2..n).map(move |k| Lune::new(n, s, k).expect("valid"))).collect();
    out.push(Lune::whole(n));
    out
}

fn require_t_diagram(x: &Diagram) -> Result<()> {
    match x.t_diagram_violation() {
        Some(why) => Err(GaleError::NotTDiagram(why)),
        None => Ok(()),
    }
}

/// Whites strictly inside the convex hull of the lune's vertices.
fn whites_inside_lune(x: &Diagram, lune: &Lune) -> Vec<usize> {
    let n = x.black_cycle().len();
    let polygon: Vec<Point2> =
        lune.positions(n).into_iter().map(|p| x.position(x.cycle_at(p as isize)).clone()).collect();
    x.whites().into_iter().filter(|&w| point_in_convex_polygon_strict(x.position(w), &polygon)).collect()
}

/// The minimal non-face cut out by a lune: the blacks outside it together
/// with the whites strictly inside it.
pub fn minimal_nonface_of_lune(x: &Diagram, lune: &Lune) -> Result<VertexSubset> {
    require_t_diagram(x)?;
    Ok(lune_nonface(x, lune))
}

fn lune_nonface(x: &Diagram, lune: &Lune) -> VertexSubset {
    let n = x.black_cycle().len();
    let on: BTreeSet<usize> = lune.positions(n).into_iter().collect();
    let mut idx: Vec<usize> = (0..n).filter(|p| !on.contains(p)).map(|p| x.cycle_at(p as isize)).collect();
    idx.extend(whites_inside_lune(x, lune));
    VertexSubset::from_indices(&idx)
}

/// Images of all lunes, in the order of [`all_lunes`].
pub fn lune_nonfaces(x: &Diagram) -> Result<Vec<VertexSubset>> {
    require_t_diagram(x)?;
    Ok(all_lunes(x).iter().map(|l| lune_nonface(x, l)).collect())
}

/// All `(d + 1)`-subsets that are not faces, by direct test.
pub fn enumerate_minimal_nonfaces(x: &Diagram) -> BTreeSet<VertexSubset> {
    masks_of_size(x.len(), x.d() + 1)
        .map(VertexSubset)
        .filter(|&m| !x.face_unchecked(m))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NonfaceClass {
    NotANonface,
    Minimal,
    NonSpecial,
    Special,
}

/// Classifies a vertex set with `d + 1 <= |m| <= 2d` by the face test.
/// Larger non-faces are special when their complement has at most one
/// black or no white.
pub fn classify_nonface(x: &Diagram, m: VertexSubset) -> Result<NonfaceClass> {
    let (min, max) = (x.d() + 1, 2 * x.d());
    if m.len() < min || m.len() > max {
        return Err(GaleError::SubsetSize { size: m.len(), min, max });
    }
    if x.face_unchecked(m) {
        return Ok(NonfaceClass::NotANonface);
    }
    if m.len() == min {
        return Ok(NonfaceClass::Minimal);
    }
    let (blacks, whites) = complement_colors(x, m);
    Ok(if blacks.len() <= 1 || whites.is_empty() { NonfaceClass::Special } else { NonfaceClass::NonSpecial })
}

fn complement_colors(x: &Diagram, m: VertexSubset) -> (Vec<usize>, Vec<usize>) {
    let rest = VertexSubset(x.full().0 & !m.0);
    rest.indices().into_iter().partition(|&i| x.color(i) == Color::Black)
}

/// Non-face test for a t-diagram without the intersection test: the
/// complement has at most one black, or no white, or at least two blacks
/// and whites that all sit in a single piece of the black polygon left
/// after cutting away the hull of the complement's blacks.
pub fn combinatorial_nonface(x: &Diagram, m: VertexSubset) -> Result<bool> {
    require_t_diagram(x)?;
    let (blacks, whites) = complement_colors(x, m);
    if blacks.len() <= 1 || whites.is_empty() {
        return Ok(true);
    }
    let n = x.black_cycle().len();
    let mut kept: Vec<usize> = blacks.iter().map(|&b| x.cycle_position(b).expect("on cycle")).collect();
    kept.sort_unstable();
    // the hull of the kept blacks, clockwise
    let hull: Vec<Point2> = kept.iter().map(|&p| x.position(x.cycle_at(p as isize)).clone()).collect();
    let mut pieces = BTreeSet::new();
    for &w in &whites {
        if point_in_convex_polygon_strict(x.position(w), &hull) {
            return Ok(false);
        }
        let piece = (0..kept.len()).find(|&s| {
            let (a, b) = (kept[s], kept[(s + 1) % kept.len()]);
            let k = (b + n - a) % n + 1;
            k >= 3 && {
                let lune = Lune::new(n, a, k).expect("valid");
                whites_inside_lune(x, &lune).contains(&w)
            }
        });
        match piece {
            Some(s) => {
                pieces.insert(s);
            }
            None => return Err(GaleError::Internal(format!("white {} lies in no piece", x.label(w)))),
        }
    }
    Ok(pieces.len() == 1)
}

/// Counts of minimal non-faces containing given sets, precomputed once.
#[derive(Clone, Debug)]
pub struct NonfaceTable {
    sets: Vec<u32>,
}

impl NonfaceTable {
    pub fn from_diagram(x: &Diagram) -> Self {
        NonfaceTable { sets: enumerate_minimal_nonfaces(x).into_iter().map(|m| m.0).collect() }
    }

    pub fn from_sets(sets: impl IntoIterator<Item = u32>) -> Self {
        NonfaceTable { sets: sets.into_iter().collect() }
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn count_containing(&self, mask: u32) -> usize {
        self.sets.iter().filter(|&&s| s & mask == mask).count()
    }

    pub fn count_pair(&self, a: usize, b: usize) -> usize {
        self.count_containing((1 << a) | (1 << b))
    }
}

/// Number of minimal non-faces containing all of `labels`.
pub fn count_nonfaces_containing<S: AsRef<str>>(x: &Diagram, labels: &[S]) -> Result<usize> {
    if labels.is_empty() {
        return Err(GaleError::Precondition("the label set must be nonempty".into()));
    }
    let mask = VertexSubset::from_labels(x, labels)?;
    Ok(NonfaceTable::from_diagram(x).count_containing(mask.0))
}

/// Blacks strictly between two blacks on the counterclockwise (`l`) and
/// clockwise (`r`) paths; `l + r = d + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PathStats {
    pub l: usize,
    pub r: usize,
}

fn black_position(x: &Diagram, label: &str) -> Result<usize> {
    let i = x.index_of(label)?;
    if x.color(i) != Color::Black {
        return Err(GaleError::Precondition(format!("{label} is not black")));
    }
    x.require_cycle_position(label)
}

fn white_index(x: &Diagram, label: &str) -> Result<usize> {
    let i = x.index_of(label)?;
    if x.color(i) != Color::White {
        return Err(GaleError::Precondition(format!("{label} is not white")));
    }
    Ok(i)
}

pub(crate) fn path_stats_at(n: usize, pi: usize, pj: usize) -> PathStats {
    let r = (pj + n - pi) % n - 1;
    PathStats { l: n - 2 - r, r }
}

pub fn path_stats(x: &Diagram, a_i: &str, a_j: &str) -> Result<PathStats> {
    let (pi, pj) = (black_position(x, a_i)?, black_position(x, a_j)?);
    if pi == pj {
        return Err(GaleError::Precondition("path endpoints must differ".into()));
    }
    Ok(path_stats_at(x.black_cycle().len(), pi, pj))
}

/// `C(l, 2) + C(r, 2)`: minimal non-faces through two blacks.
pub fn closed_form_black_black(x: &Diagram, a_i: &str, a_j: &str) -> Result<usize> {
    let s = path_stats(x, a_i, a_j)?;
    Ok((binomial(s.l as u64, 2) + binomial(s.r as u64, 2)) as usize)
}

/// Cycle position `k` such that the white lies in `A_j A_k A_{k+1}`.
fn home_pair(x: &Diagram, pj: usize, w: usize) -> Result<usize> {
    let n = x.black_cycle().len();
    if !x.corresponded_blacks(w).contains(&pj) {
        return Err(GaleError::Precondition(format!(
            "{} does not correspond to {}",
            x.label(w),
            x.label(x.cycle_at(pj as isize))
        )));
    }
    let hits: Vec<usize> = (0..n)
        .filter(|&k| k != pj && (k + 1) % n != pj)
        .filter(|&k| x.white_in_triangle(w, x.cycle_at(pj as isize), x.cycle_at(k as isize), x.cycle_at(k as isize + 1)))
        .collect();
    match hits.as_slice() {
        [k] => Ok(*k),
        _ => Err(GaleError::Internal(format!("{} has {} home triangles", x.label(w), hits.len()))),
    }
}

/// The triangle `A_j A_k A_{k+1}` on consecutive `A_k, A_{k+1}` that holds
/// white `b`, where `b` corresponds to `a_j`.
pub fn home_triangle(x: &Diagram, a_j: &str, b: &str) -> Result<(String, String, String)> {
    require_t_diagram(x)?;
    let pj = black_position(x, a_j)?;
    let k = home_pair(x, pj, white_index(x, b)?)?;
    let label = |p: usize| x.label(x.cycle_at(p as isize)).to_string();
    Ok((a_j.to_string(), label(k), label(k + 1)))
}

pub(crate) fn a_statistic_at(n: usize, pi: usize, pj: usize, k: usize) -> usize {
    let k1 = (k + 1) % n;
    if pi == k || pi == k1 {
        return 0;
    }
    for dir in [1, n - 1] {
        let mut pos = pi;
        for steps in 1..n {
            pos = (pos + dir) % n;
            if pos == pj {
                break;
            }
            if pos == k || pos == k1 {
                return steps;
            }
        }
    }
    unreachable!("the home pair lies on one of the two paths")
}

/// Vertices on the path from `A_i` towards `A_j` up to the first vertex of
/// the home pair of `b` (counting it, not counting `A_i`); zero when `A_i`
/// is in the home pair.
pub fn a_statistic(x: &Diagram, a_i: &str, a_j: &str, b: &str) -> Result<usize> {
    require_t_diagram(x)?;
    let (pi, pj) = (black_position(x, a_i)?, black_position(x, a_j)?);
    if pi == pj {
        return Err(GaleError::Precondition("A_i and A_j must differ".into()));
    }
    let k = home_pair(x, pj, white_index(x, b)?)?;
    Ok(a_statistic_at(x.black_cycle().len(), pi, pj, k))
}

/// `l r + a` for a black `A_i` and a white `b` corresponding to `a_j`.
pub fn closed_form_black_white_via(x: &Diagram, a_i: &str, a_j: &str, b: &str) -> Result<usize> {
    let s = path_stats(x, a_i, a_j)?;
    Ok(s.l * s.r + a_statistic(x, a_i, a_j, b)?)
}

/// `l r + a`, taking for `A_j` the first black (clockwise from `A_1`) other
/// than `A_i` that `b` corresponds to.
pub fn closed_form_black_white(x: &Diagram, a_i: &str, b: &str) -> Result<usize> {
    require_t_diagram(x)?;
    let pi = black_position(x, a_i)?;
    let w = white_index(x, b)?;
    let pj = x
        .corresponded_blacks(w)
        .into_iter()
        .find(|&p| p != pi)
        .ok_or_else(|| GaleError::Precondition(format!("{b} corresponds to no black other than {a_i}")))?;
    let a_j = x.label(x.cycle_at(pj as isize)).to_string();
    closed_form_black_white_via(x, a_i, &a_j, b)
}

/// Lunes strictly containing `b` that avoid `a_i`.
pub fn lunes_containing_white_avoiding(x: &Diagram, b: &str, a_i: &str) -> Result<usize> {
    require_t_diagram(x)?;
    let w = white_index(x, b)?;
    let pi = black_position(x, a_i)?;
    let n = x.black_cycle().len();
    Ok(all_lunes(x)
        .iter()
        .filter(|l| !l.positions(n).contains(&pi) && whites_inside_lune(x, l).contains(&w))
        .count())
}

/// Unordered label pair, smaller label first.
pub type LabelPair = (String, String);

pub(crate) fn pair(a: &str, b: &str) -> LabelPair {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

/// Edges contained in no minimal non-face.
pub fn remarkable_edges(x: &Diagram) -> BTreeSet<LabelPair> {
    let table = NonfaceTable::from_diagram(x);
    let mut out = BTreeSet::new();
    for a in 0..x.len() {
        for b in a + 1..x.len() {
            let edge = VertexSubset::from_indices(&[a, b]);
            if table.count_containing(edge.0) == 0 && (x.d() == 0 || x.face_unchecked(edge)) {
                out.insert(pair(x.label(a), x.label(b)));
            }
        }
    }
    out
}

/// Pairs of a black and the white inside its boundary triangle.
pub fn corresponding_pairs(x: &Diagram) -> BTreeSet<LabelPair> {
    (0..x.black_cycle().len())
        .filter_map(|p| x.corresponding_white(p).map(|w| pair(x.label(x.cycle_at(p as isize)), x.label(w))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::build_diagram;
    use crate::trees::enumerate_trees;

    fn built(leaves: usize) -> Vec<Diagram> {
        enumerate_trees(leaves).unwrap().iter().map(|t| build_diagram(t).unwrap().0).collect()
    }

    #[test]
    fn lune_geometry() {
        let l = Lune::new(5, 3, 3).unwrap();
        assert_eq!(l.positions(5), vec![3, 4, 0]);
        assert_eq!(l.end, 0);
        assert!(Lune::new(5, 0, 5).unwrap().whole_polygon);
        assert!(Lune::new(5, 0, 1).is_err());
    }

    #[test]
    fn minimal_nonfaces_match_lunes() {
        for d in 2..=3 {
            for x in built(d + 3) {
                let brute = enumerate_minimal_nonfaces(&x);
                assert_eq!(brute.len(), (d + 1) * (d + 3) + 1);
                let lunes: BTreeSet<VertexSubset> = lune_nonfaces(&x).unwrap().into_iter().collect();
                assert_eq!(lunes, brute);
                for m in lune_nonfaces(&x).unwrap() {
                    assert_eq!(m.len(), d + 1);
                }
            }
        }
    }

    #[test]
    fn whole_polygon_and_side_lunes() {
        let x = &built(5)[0];
        let whole = minimal_nonface_of_lune(x, &Lune::whole(5)).unwrap();
        assert_eq!(whole, VertexSubset::from_indices(&x.whites()));
        let side = minimal_nonface_of_lune(x, &Lune::new(5, 0, 2).unwrap()).unwrap();
        assert!(side.indices().iter().all(|&i| x.color(i) == Color::Black));
        assert_eq!(side.len(), 3);
    }

    #[test]
    fn path_stats_on_a_pentagon() {
        let x = &built(5)[0];
        assert_eq!(path_stats(x, "A1", "A2").unwrap(), PathStats { l: 3, r: 0 });
        assert_eq!(path_stats(x, "A1", "A3").unwrap(), PathStats { l: 2, r: 1 });
        assert!(path_stats(x, "A1", "A1").is_err());
        assert_eq!(closed_form_black_black(x, "A1", "A3").unwrap(), 1);
        assert_eq!(closed_form_black_black(x, "A1", "A2").unwrap(), 3);
    }

    #[test]
    fn a_statistic_on_a_pentagon() {
        // i = 0, j = 2, home pair (3, 4): walking 0 -> 4 meets 4 first
        assert_eq!(a_statistic_at(5, 0, 2, 3), 1);
        assert_eq!(a_statistic_at(5, 0, 2, 0), 0);
        assert_eq!(a_statistic_at(5, 0, 2, 4), 0);
        assert_eq!(a_statistic_at(7, 0, 2, 4), 2);
    }

    #[test]
    fn closed_forms_match_counts() {
        for d in 2..=3 {
            for x in built(d + 3) {
                let table = NonfaceTable::from_diagram(&x);
                let cycle = x.black_cycle().to_vec();
                for &a in &cycle {
                    for &b in &cycle {
                        if a != b {
                            assert_eq!(
                                closed_form_black_black(&x, x.label(a), x.label(b)).unwrap(),
                                table.count_pair(a, b)
                            );
                        }
                    }
                    for w in x.whites() {
                        for pj in x.corresponded_blacks(w) {
                            let aj = x.cycle_at(pj as isize);
                            if aj == a {
                                continue;
                            }
                            let (la, lj, lw) = (x.label(a), x.label(aj), x.label(w));
                            let formula = closed_form_black_white_via(&x, la, lj, lw).unwrap();
                            assert_eq!(formula, table.count_pair(a, w));
                            assert_eq!(formula, lunes_containing_white_avoiding(&x, lw, la).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn home_triangle_of_the_base_diagram() {
        let t = &enumerate_trees(3).unwrap()[0];
        let (x, _) = build_diagram(t).unwrap();
        assert_eq!(home_triangle(&x, "A1", "B1").unwrap(), ("A1".into(), "A2".into(), "A3".into()));
        assert_eq!(home_triangle(&x, "A2", "B1").unwrap(), ("A2".into(), "A3".into(), "A1".into()));
    }

    #[test]
    fn remarkable_edges_are_corresponding_pairs() {
        for d in 2..=3 {
            for x in built(d + 3) {
                let r = remarkable_edges(&x);
                assert_eq!(r, corresponding_pairs(&x));
                assert_eq!(r.len(), d + 3);
            }
        }
    }

    #[test]
    fn classification_agrees_with_face_test() {
        let x = &built(6)[1];
        let d = x.d();
        for size in d + 1..=2 * d {
            for m in masks_of_size(x.len(), size).map(VertexSubset) {
                let class = classify_nonface(x, m).unwrap();
                let nonface = !x.face_unchecked(m);
                assert_eq!(class != NonfaceClass::NotANonface, nonface);
                if size > d + 1 {
                    assert_eq!(combinatorial_nonface(x, m).unwrap(), nonface);
                }
            }
        }
        assert!(classify_nonface(x, VertexSubset::from_indices(&[0, 1])).is_err());
        let mut whites_plus_black = x.whites();
        whites_plus_black.push(x.blacks()[0]);
        assert_eq!(classify_nonface(x, VertexSubset::from_indices(&whites_plus_black)).unwrap(), NonfaceClass::Special);
    }

    #[test]
    fn count_requires_labels() {
        let x = &built(5)[0];
        assert!(count_nonfaces_containing::<&str>(x, &[]).is_err());
        assert_eq!(count_nonfaces_containing(x, &["A1", "A3"]).unwrap(), 1);
    }
}
