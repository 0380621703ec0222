//! Exact-coordinate synthesis of a t-diagram from a 3-tree.
//!
//! Peel a cherry off the tree, realise the smaller tree, then split the
//! black of the contracted leaf into two nearby blacks on a supporting line
//! and drop a new white into the sliver between them.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::{characteristic_violation, Correspondence};
use crate::diagram::{Color, Diagram, DiagramPoint};
use crate::error::{GaleError, Result};
use crate::exactgeom::{orient, Orientation, Point2, Rational};
use crate::trees::ThreeTree;

/// Free choices of the construction. Any choice satisfying the same sign
/// conditions yields a combinatorially equivalent diagram.
#[derive(Clone, Debug)]
pub struct BuildOptions {
    /// First ε tried when splitting a black; halved until valid.
    pub initial_epsilon: Rational,
    /// Base triangle, in any orientation.
    pub base_triangle: [Point2; 3],
    /// White point strictly inside the base triangle.
    pub base_white: Point2,
    /// Scale the finished diagram to integer coordinates.
    pub integer_coordinates: bool,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            initial_epsilon: Rational::one(),
            base_triangle: [Point2::from_ints(0, 0), Point2::from_ints(8, 0), Point2::from_ints(0, 8)],
            base_white: Point2::from_ints(1, 1),
            integer_coordinates: true,
        }
    }
}

/// Diagram under construction, keyed by tree labels.
struct Partial {
    /// Blacks in clockwise order with their leaf labels.
    blacks: Vec<(Point2, String)>,
    /// Whites in creation order with their internal-vertex labels.
    whites: Vec<(Point2, String)>,
}

impl Partial {
    fn all_points(&self) -> impl Iterator<Item = &Point2> {
        self.blacks.iter().map(|b| &b.0).chain(self.whites.iter().map(|w| &w.0))
    }
}

pub fn build_diagram(t: &ThreeTree) -> Result<(Diagram, Correspondence)> {
    build_diagram_with(t, &BuildOptions::default())
}

/// Builds a t-diagram for which `t` is characteristic. Blacks are labelled
/// `A1, A2, ...` clockwise, whites `B1, B2, ...` in creation order.
pub fn build_diagram_with(t: &ThreeTree, opts: &BuildOptions) -> Result<(Diagram, Correspondence)> {
    if !opts.initial_epsilon.is_positive() {
        return Err(GaleError::Precondition("initial epsilon must be positive".into()));
    }
    let partial = realize(t, opts)?;
    let scale = if opts.integer_coordinates {
        let lcm = partial
            .all_points()
            .flat_map(|p| [p.x.denom(), p.y.denom()])
            .fold(BigInt::one(), |acc, d| acc.lcm(&d));
        Rational::from_bigints(lcm, BigInt::one())?
    } else {
        Rational::one()
    };
    let mut points = Vec::with_capacity(t.len());
    let mut pairs = BTreeMap::new();
    for (k, (p, leaf)) in partial.blacks.iter().enumerate() {
        let label = format!("A{}", k + 1);
        pairs.insert(leaf.clone(), label.clone());
        points.push(DiagramPoint::new(label, Color::Black, p.scale(&scale)));
    }
    for (k, (p, vertex)) in partial.whites.iter().enumerate() {
        let label = format!("B{}", k + 1);
        pairs.insert(vertex.clone(), label.clone());
        points.push(DiagramPoint::new(label, Color::White, p.scale(&scale)));
    }
    let d = partial.blacks.len() - 3;
    let x = Diagram::new(d, points)?;
    let c = Correspondence::new(pairs)?;
    if let Some(why) = x.t_diagram_violation() {
        return Err(GaleError::Internal(format!("built diagram is not a t-diagram: {why}")));
    }
    if let Some(why) = characteristic_violation(t, &x, &c) {
        return Err(GaleError::Internal(format!("tree is not characteristic for the built diagram: {why}")));
    }
    Ok((x, c))
}

fn realize(t: &ThreeTree, opts: &BuildOptions) -> Result<Partial> {
    if t.num_leaves() == 3 {
        return base_case(t, opts);
    }
    let v = choose_pre_leaf(t)?;
    let smaller = t.contract_cherry(v)?;
    let mut partial = realize(&smaller, opts)?;
    let (first, second) = cherry_in_walk_order(t, v);
    let label_v = t.label(v);
    let i = partial
        .blacks
        .iter()
        .position(|b| b.1 == label_v)
        .ok_or_else(|| GaleError::Internal(format!("leaf {label_v} has no black")))?;
    split_black(&mut partial, i, opts)?;
    partial.blacks[i].1 = t.label(first).to_string();
    partial.blacks[i + 1].1 = t.label(second).to_string();
    partial.whites.last_mut().expect("new white").1 = label_v.to_string();
    Ok(partial)
}

fn base_case(t: &ThreeTree, opts: &BuildOptions) -> Result<Partial> {
    let [a, b, c] = opts.base_triangle.clone();
    let tri = match orient(&a, &b, &c) {
        Orientation::Clockwise => [a, b, c],
        Orientation::CounterClockwise => [a, c, b],
        Orientation::Collinear => return Err(GaleError::DegenerateTriangle),
    };
    if !crate::exactgeom::point_in_triangle_strict(&opts.base_white, &tri[0], &tri[1], &tri[2])? {
        return Err(GaleError::Precondition("base white must lie inside the base triangle".into()));
    }
    let walk = t.leaf_walk();
    let center = t.internal_vertices()[0];
    Ok(Partial {
        blacks: tri.into_iter().zip(walk).map(|(p, v)| (p, t.label(v).to_string())).collect(),
        whites: vec![(opts.base_white.clone(), t.label(center).to_string())],
    })
}

/// Pre-leaf vertex whose contraction has the least code, ties by label.
fn choose_pre_leaf(t: &ThreeTree) -> Result<usize> {
    t.pre_leaf_vertices()
        .into_iter()
        .map(|v| Ok((t.contract_cherry(v)?.canonical_code(false), t.label(v).to_string(), v)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .min()
        .map(|(_, _, v)| v)
        .ok_or_else(|| GaleError::Internal("tree has no pre-leaf vertex".into()))
}

/// The two leaves at pre-leaf `v` in the order the boundary walk meets
/// them: it enters `v` from its internal neighbour and leaves by rotation
/// successors. Requires at least four leaves, so `v` has exactly two.
fn cherry_in_walk_order(t: &ThreeTree, v: usize) -> (usize, usize) {
    let nbrs = t.neighbors(v);
    let parent = (0..3).find(|&j| !t.is_leaf(nbrs[j])).expect("pre-leaf vertex has an internal neighbour");
    (nbrs[(parent + 1) % 3], nbrs[(parent + 2) % 3])
}

/// Splits black `i` into `A_i` and a new black right after it (clockwise),
/// and appends the new white between them.
fn split_black(partial: &mut Partial, i: usize, opts: &BuildOptions) -> Result<()> {
    let n = partial.blacks.len();
    let a_prev = partial.blacks[(i + n - 1) % n].0.clone();
    let a_i = partial.blacks[i].0.clone();
    let a_next = partial.blacks[(i + 1) % n].0.clone();
    // the line through A_i parallel to the chord A_{i-1}A_{i+1} supports
    // the polygon at A_i only
    let u = a_next.sub(&a_prev);
    let mut eps = opts.initial_epsilon.clone();
    let half = Rational::new(1, 2);
    let a_new = loop {
        let cand = a_i.add(&u.scale(&eps));
        if split_is_valid(partial, i, &cand) {
            break cand;
        }
        eps = &eps * &half;
        if eps.bits() > 4096 {
            return Err(GaleError::Internal("no valid split point found".into()));
        }
    };
    let white = sliver_point(partial, &a_prev, &a_i, &a_new, &a_next)?;
    partial.blacks.insert(i + 1, (a_new, String::new()));
    partial.whites.push((white, String::new()));
    Ok(())
}

fn split_is_valid(partial: &Partial, i: usize, cand: &Point2) -> bool {
    let a_i = &partial.blacks[i].0;
    // convex position in the intended order
    let mut cycle: Vec<&Point2> = partial.blacks.iter().map(|b| &b.0).collect();
    cycle.insert(i + 1, cand);
    let m = cycle.len();
    for p in 0..m {
        for q in p + 1..m {
            for r in q + 1..m {
                if orient(cycle[p], cycle[q], cycle[r]) != Orientation::Clockwise {
                    return false;
                }
            }
        }
    }
    // every white stays on the same side of every line through a black
    for (w, _) in &partial.whites {
        for (k, (p, _)) in partial.blacks.iter().enumerate() {
            if k != i && orient(p, cand, w) != orient(p, a_i, w) {
                return false;
            }
        }
    }
    let pts: Vec<&Point2> = partial.all_points().collect();
    no_collinear_with(&pts, cand)
}

/// Whether `p` avoids every line through two of `pts`.
fn no_collinear_with(pts: &[&Point2], p: &Point2) -> bool {
    for a in 0..pts.len() {
        if pts[a] == p {
            return false;
        }
        for b in a + 1..pts.len() {
            if orient(pts[a], pts[b], p) == Orientation::Collinear {
                return false;
            }
        }
    }
    true
}

/// A point in general position inside both triangles `A_{i-1} A_i A'` and
/// `A_i A' A_{i+1}`.
fn sliver_point(partial: &Partial, a_prev: &Point2, a_i: &Point2, a_new: &Point2, a_next: &Point2) -> Result<Point2> {
    let region = clip_convex(&[a_prev.clone(), a_i.clone(), a_new.clone()], &[
        a_i.clone(),
        a_new.clone(),
        a_next.clone(),
    ]);
    if region.len() < 3 {
        return Err(GaleError::Internal("split triangles do not overlap".into()));
    }
    let mut pts: Vec<&Point2> = partial.all_points().collect();
    pts.push(a_new);
    let target = a_i.midpoint(a_new);
    let mut b = Point2::centroid(&region);
    for _ in 0..256 {
        if no_collinear_with(&pts, &b) {
            return Ok(b);
        }
        b = b.midpoint(&target);
    }
    Err(GaleError::Internal("could not place the new white in general position".into()))
}

/// Intersection of two convex polygons (Sutherland–Hodgman), as a vertex
/// list; `clip` may have either orientation.
fn clip_convex(subject: &[Point2], clip: &[Point2]) -> Vec<Point2> {
    let sense = orient(&clip[0], &clip[1], &clip[2]);
    let inside = |a: &Point2, b: &Point2, p: &Point2| orient(a, b, p) != sense.reversed();
    let mut out = subject.to_vec();
    for e in 0..clip.len() {
        let (a, b) = (&clip[e], &clip[(e + 1) % clip.len()]);
        let input = std::mem::take(&mut out);
        for k in 0..input.len() {
            let (p, q) = (&input[k], &input[(k + 1) % input.len()]);
            let (pin, qin) = (inside(a, b, p), inside(a, b, q));
            if pin {
                out.push(p.clone());
            }
            if pin != qin {
                out.push(line_intersection(a, b, p, q));
            }
        }
    }
    out.dedup();
    if out.len() > 1 && out.first() == out.last() {
        out.pop();
    }
    out
}

/// Intersection of line `ab` with segment `pq` (assumed to cross it).
fn line_intersection(a: &Point2, b: &Point2, p: &Point2, q: &Point2) -> Point2 {
    let ab = b.sub(a);
    let s = ab.cross(&p.sub(a));
    let t = ab.cross(&q.sub(a));
    let lambda = &s / &(&s - &t);
    p.add(&q.sub(p).scale(&lambda))
}
