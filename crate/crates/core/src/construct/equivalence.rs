//! Label bijections between diagrams: diagonal equivalence (same black
//! cycle, same white-in-black-triangle incidences) and combinatorial
//! equivalence (all triple orientations preserved, or all reversed).

use std::collections::{BTreeMap, BTreeSet};

use crate::diagram::Diagram;
use crate::exactgeom::{general_position, orient, Point2};
use crate::subset::combinations;

/// Map from labels of the first diagram to labels of the second.
pub type LabelMap = BTreeMap<String, String>;

type Triple = [usize; 3];

/// For each white (by point index), the black triangles containing it, as
/// sorted triples of cycle positions.
fn white_signatures(x: &Diagram) -> BTreeMap<usize, BTreeSet<Triple>> {
    let cycle = x.black_cycle();
    let mut out: BTreeMap<usize, BTreeSet<Triple>> = x.whites().into_iter().map(|w| (w, BTreeSet::new())).collect();
    for tri in combinations(cycle.len(), 3) {
        for w in x.whites_in_triangle(cycle[tri[0]], cycle[tri[1]], cycle[tri[2]]) {
            out.get_mut(&w).expect("white").insert([tri[0], tri[1], tri[2]]);
        }
    }
    out
}

/// The `2n` dihedral maps of cycle positions.
fn alignments(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..2).flat_map(move |reflect| {
        (0..n).map(move |shift| {
            (0..n).map(|k| if reflect == 0 { (shift + k) % n } else { (shift + n - k) % n }).collect()
        })
    })
}

fn map_signature(sig: &BTreeSet<Triple>, f: &[usize]) -> BTreeSet<Triple> {
    sig.iter()
        .map(|t| {
            let mut m = [f[t[0]], f[t[1]], f[t[2]]];
            m.sort_unstable();
            m
        })
        .collect()
}

/// A bijection preserving colors, the unoriented black cycle and the
/// white-in-black-triangle incidences, if one exists.
pub fn diagonal_equivalent(x: &Diagram, y: &Diagram) -> Option<LabelMap> {
    if x.d() != y.d() || !x.is_t_diagram() || !y.is_t_diagram() {
        return None;
    }
    let sx = white_signatures(x);
    let sy: BTreeMap<BTreeSet<Triple>, usize> = white_signatures(y).into_iter().map(|(w, s)| (s, w)).collect();
    let (cx, cy) = (x.black_cycle(), y.black_cycle());
    'align: for f in alignments(cx.len()) {
        let mut map = LabelMap::new();
        for (k, &b) in cx.iter().enumerate() {
            map.insert(x.label(b).to_string(), y.label(cy[f[k]]).to_string());
        }
        for (&w, sig) in &sx {
            match sy.get(&map_signature(sig, &f)) {
                Some(&v) => {
                    map.insert(x.label(w).to_string(), y.label(v).to_string());
                }
                None => continue 'align,
            }
        }
        // in a t-diagram signatures are nonempty and pairwise distinct
        let images: BTreeSet<&String> = map.values().collect();
        if images.len() == x.len() {
            return Some(map);
        }
    }
    None
}

/// Whether some color-preserving bijection preserves every triple
/// orientation, or reverses every one.
pub fn comb_equivalent(x: &Diagram, y: &Diagram) -> bool {
    comb_equivalence(x, y).is_some()
}

/// The bijection witnessing [`comb_equivalent`].
pub fn comb_equivalence(x: &Diagram, y: &Diagram) -> Option<LabelMap> {
    if x.len() != y.len() || x.blacks().len() != y.blacks().len() {
        return None;
    }
    let px: Vec<Point2> = x.points().iter().map(|p| p.position.clone()).collect();
    let py: Vec<Point2> = y.points().iter().map(|p| p.position.clone()).collect();
    if !general_position(&px) || !general_position(&py) {
        return None;
    }
    let to_map = |assign: Vec<usize>| -> LabelMap {
        assign.iter().enumerate().map(|(i, &j)| (x.label(i).to_string(), y.label(j).to_string())).collect()
    };
    let (cx, cy) = (x.black_cycle(), y.black_cycle());
    if !cx.is_empty() && cx.len() == cy.len() {
        // blacks pinned by a cycle alignment, whites narrowed by the
        // triangles containing them
        let sx = white_signatures(x);
        let sy = white_signatures(y);
        for f in alignments(cx.len()) {
            let mut order = Vec::new();
            let mut cands = vec![Vec::new(); x.len()];
            for (k, &b) in cx.iter().enumerate() {
                order.push(b);
                cands[b] = vec![cy[f[k]]];
            }
            for (&w, sig) in &sx {
                let mapped = map_signature(sig, &f);
                order.push(w);
                cands[w] = sy.iter().filter(|(_, s)| **s == mapped).map(|(&v, _)| v).collect();
            }
            for flip in [false, true] {
                if let Some(a) = search(&px, &py, &order, &cands, flip) {
                    return Some(to_map(a));
                }
            }
        }
        return None;
    }
    let order: Vec<usize> = (0..x.len()).collect();
    let cands: Vec<Vec<usize>> =
        (0..x.len()).map(|i| (0..y.len()).filter(|&j| y.color(j) == x.color(i)).collect()).collect();
    [false, true].into_iter().find_map(|flip| search(&px, &py, &order, &cands, flip)).map(to_map)
}

/// Backtracking over `order`, assigning each point one of its candidates so
/// that every triple orientation matches (reversed when `flip`).
fn search(px: &[Point2], py: &[Point2], order: &[usize], cands: &[Vec<usize>], flip: bool) -> Option<Vec<usize>> {
    let mut assign = vec![usize::MAX; px.len()];
    let mut used = vec![false; py.len()];
    fn go(
        s: usize,
        px: &[Point2],
        py: &[Point2],
        order: &[usize],
        cands: &[Vec<usize>],
        flip: bool,
        assign: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if s == order.len() {
            return true;
        }
        let i = order[s];
        for &j in &cands[i] {
            if used[j] {
                continue;
            }
            let consistent = (0..s).all(|a| {
                (a + 1..s).all(|b| {
                    let (ia, ib) = (order[a], order[b]);
                    let ox = orient(&px[ia], &px[ib], &px[i]);
                    let oy = orient(&py[assign[ia]], &py[assign[ib]], &py[j]);
                    if flip {
                        ox == oy.reversed()
                    } else {
                        ox == oy
                    }
                })
            });
            if !consistent {
                continue;
            }
            assign[i] = j;
            used[j] = true;
            if go(s + 1, px, py, order, cands, flip, assign, used) {
                return true;
            }
            used[j] = false;
            assign[i] = usize::MAX;
        }
        false
    }
    go(0, px, py, order, cands, flip, &mut assign, &mut used).then_some(assign)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{build_diagram, build_diagram_with, BuildOptions};
    use crate::diagram::Color;
    use crate::exactgeom::Rational;
    use crate::trees::enumerate_trees;

    fn colors_preserved(x: &Diagram, y: &Diagram, map: &LabelMap) -> bool {
        map.iter().all(|(a, b)| {
            matches!((x.index_of(a), y.index_of(b)), (Ok(i), Ok(j)) if x.color(i) == y.color(j))
        })
    }

    fn alt_options() -> BuildOptions {
        BuildOptions {
            initial_epsilon: Rational::new(1, 5),
            base_triangle: [Point2::from_ints(0, 0), Point2::from_ints(12, 0), Point2::from_ints(0, 12)],
            base_white: Point2::from_ints(3, 2),
            integer_coordinates: false,
        }
    }

    #[test]
    fn identity_and_reflection() {
        for t in enumerate_trees(6).unwrap() {
            let (x, _) = build_diagram(&t).unwrap();
            let id = diagonal_equivalent(&x, &x).unwrap();
            assert!(id.iter().all(|(a, b)| a == b));
            let r = x.reflected();
            assert!(diagonal_equivalent(&x, &r).is_some());
            assert!(comb_equivalent(&x, &r));
            let m = comb_equivalence(&x, &r).unwrap();
            assert!(colors_preserved(&x, &r, &m));
        }
    }

    #[test]
    fn different_trees_are_not_equivalent() {
        let built: Vec<Diagram> = enumerate_trees(7).unwrap().iter().map(|t| build_diagram(t).unwrap().0).collect();
        for (a, x) in built.iter().enumerate() {
            for (b, y) in built.iter().enumerate() {
                assert_eq!(diagonal_equivalent(x, y).is_some(), a == b);
                assert_eq!(comb_equivalent(x, y), a == b);
            }
        }
    }

    #[test]
    fn alternative_realizations_are_equivalent() {
        for t in enumerate_trees(7).unwrap() {
            let (x, _) = build_diagram(&t).unwrap();
            let (y, _) = build_diagram_with(&t, &alt_options()).unwrap();
            assert_ne!(x, y);
            assert!(comb_equivalent(&x, &y));
            assert!(diagonal_equivalent(&x, &y).is_some());
        }
    }

    #[test]
    fn generic_search_handles_non_convex_blacks() {
        use crate::diagram::DiagramPoint;
        let pt = |l: &str, c, x, y| DiagramPoint::new(l, c, Point2::from_ints(x, y));
        let points = vec![
            pt("A1", Color::Black, 0, 0),
            pt("A2", Color::Black, 6, 0),
            pt("A3", Color::Black, 0, 6),
            pt("A4", Color::Black, 1, 1),
            pt("B1", Color::White, 3, 1),
            pt("B2", Color::White, 1, 3),
        ];
        let x = Diagram::new(1, points).unwrap();
        assert!(x.black_cycle().is_empty());
        assert!(comb_equivalent(&x, &x));
        let m = comb_equivalence(&x, &x.reflected()).unwrap();
        assert!(colors_preserved(&x, &x.reflected(), &m));
        assert!(diagonal_equivalent(&x, &x).is_none());
        let cyc = crate::faces::cyclic_diagram(1).unwrap();
        assert!(!comb_equivalent(&x, &cyc));
    }
}
