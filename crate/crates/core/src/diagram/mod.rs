//! Plane Gale diagrams: colored point sets, the black/white intersection
//! property, the face criterion, and the t-/T-diagram recognizers.
//!
//! Blacks of a t-diagram are indexed by their position on the clockwise
//! black cycle; positions are taken modulo the cycle length, so position
//! `-1` is the last black.

mod io;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{GaleError, Result};
use crate::exactgeom::{
    convex_position_cyclic, general_position, orient, point_in_convex_polygon_strict,
    point_in_triangle_strict, relint_intersect, Orientation, Point2,
};
use crate::subset::{combinations, indices_of, masks_of_size};

pub use io::DiagramDoc;

/// Largest supported point count; subsets are `u32` masks.
pub const MAX_POINTS: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Black,
    White,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramPoint {
    pub label: String,
    pub color: Color,
    pub position: Point2,
}

impl DiagramPoint {
    pub fn new(label: impl Into<String>, color: Color, position: Point2) -> Self {
        DiagramPoint { label: label.into(), color, position }
    }
}

/// A plane diagram of `2d + 4` colored points that affinely span the plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    d: usize,
    points: Vec<DiagramPoint>,
    /// Indices of the black points in clockwise hull order; empty when the
    /// blacks are not in convex position.
    black_cycle: Vec<usize>,
}

/// A set of diagram points, stored as a bitmask over point indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSubset(pub u32);

impl VertexSubset {
    pub fn from_labels<S: AsRef<str>>(x: &Diagram, labels: &[S]) -> Result<Self> {
        let mut mask = 0u32;
        for l in labels {
            mask |= 1 << x.index_of(l.as_ref())?;
        }
        Ok(VertexSubset(mask))
    }

    pub fn from_indices(indices: &[usize]) -> Self {
        VertexSubset(crate::subset::mask_of(indices))
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn contains(&self, index: usize) -> bool {
        self.0 & (1 << index) != 0
    }

    pub fn indices(&self) -> Vec<usize> {
        indices_of(self.0)
    }

    pub fn labels(&self, x: &Diagram) -> Vec<String> {
        self.indices().into_iter().map(|i| x.points[i].label.clone()).collect()
    }

    pub fn is_subset_of(&self, other: &VertexSubset) -> bool {
        self.0 & !other.0 == 0
    }
}

impl Diagram {
    /// Builds a diagram, computing the clockwise black cycle (rotated to
    /// start at the first black in `points`) when the blacks are in convex
    /// position.
    pub fn new(d: usize, points: Vec<DiagramPoint>) -> Result<Self> {
        let expected = 2 * d + 4;
        if points.len() != expected {
            return Err(GaleError::Parse(format!(
                "a diagram with d = {d} has {expected} points, got {}",
                points.len()
            )));
        }
        if expected > MAX_POINTS {
            return Err(GaleError::Precondition(format!("at most {MAX_POINTS} points are supported")));
        }
        let mut seen = BTreeSet::new();
        for p in &points {
            if !seen.insert(p.label.as_str()) {
                return Err(GaleError::DuplicateLabel(p.label.clone()));
            }
        }
        let spans = combinations(points.len(), 3).any(|c| {
            orient(&points[c[0]].position, &points[c[1]].position, &points[c[2]].position)
                != Orientation::Collinear
        });
        if !spans {
            return Err(GaleError::NotSpanning);
        }
        let blacks: Vec<usize> = (0..points.len()).filter(|&i| points[i].color == Color::Black).collect();
        let black_cycle = if blacks.len() >= 3 && general_position(&positions(&points, &blacks)) {
            convex_position_cyclic(&positions(&points, &blacks))?
                .map(|cyc| cyc.into_iter().map(|k| blacks[k]).collect())
                .unwrap_or_default()
        } else {
            Vec::new()
        };
        Ok(Diagram { d, points, black_cycle })
    }

    /// Like [`Diagram::new`] but with a declared black cycle, which must be
    /// a rotation of the computed clockwise order.
    pub fn with_black_cycle<S: AsRef<str>>(d: usize, points: Vec<DiagramPoint>, cycle: &[S]) -> Result<Self> {
        let mut x = Diagram::new(d, points)?;
        if cycle.is_empty() {
            return Ok(x);
        }
        let declared: Vec<usize> = cycle.iter().map(|l| x.index_of(l.as_ref())).collect::<Result<_>>()?;
        let n = x.black_cycle.len();
        let matches = n == declared.len()
            && n > 0
            && (0..n).any(|shift| (0..n).all(|k| x.black_cycle[(k + shift) % n] == declared[k]));
        if !matches {
            return Err(GaleError::Parse(
                "black_cycle is not the clockwise order of the black points".into(),
            ));
        }
        x.black_cycle = declared;
        Ok(x)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn points(&self) -> &[DiagramPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, index: usize) -> &DiagramPoint {
        &self.points[index]
    }

    pub fn position(&self, index: usize) -> &Point2 {
        &self.points[index].position
    }

    pub fn label(&self, index: usize) -> &str {
        &self.points[index].label
    }

    pub fn color(&self, index: usize) -> Color {
        self.points[index].color
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.points
            .iter()
            .position(|p| p.label == label)
            .ok_or_else(|| GaleError::UnknownLabel(label.to_string()))
    }

    pub fn full(&self) -> VertexSubset {
        VertexSubset(((1u64 << self.points.len()) - 1) as u32)
    }

    pub fn blacks(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.color(i) == Color::Black).collect()
    }

    pub fn whites(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.color(i) == Color::White).collect()
    }

    /// Point indices of the blacks in clockwise order (empty if the blacks
    /// are not in convex position).
    pub fn black_cycle(&self) -> &[usize] {
        &self.black_cycle
    }

    pub fn black_cycle_labels(&self) -> Vec<String> {
        self.black_cycle.iter().map(|&i| self.label(i).to_string()).collect()
    }

    /// Point index of the black at cyclic position `pos`.
    pub fn cycle_at(&self, pos: isize) -> usize {
        let n = self.black_cycle.len() as isize;
        self.black_cycle[pos.rem_euclid(n) as usize]
    }

    pub fn cycle_position(&self, index: usize) -> Option<usize> {
        self.black_cycle.iter().position(|&i| i == index)
    }

    pub(crate) fn require_cycle_position(&self, label: &str) -> Result<usize> {
        let idx = self.index_of(label)?;
        self.cycle_position(idx)
            .ok_or_else(|| GaleError::Precondition(format!("{label} is not a black point on the cycle")))
    }

    /// Black and white points of `m`.
    fn split_colors(&self, m: VertexSubset) -> (Vec<Point2>, Vec<Point2>) {
        let mut blacks = Vec::new();
        let mut whites = Vec::new();
        for i in m.indices() {
            match self.color(i) {
                Color::Black => blacks.push(self.position(i).clone()),
                Color::White => whites.push(self.position(i).clone()),
            }
        }
        (blacks, whites)
    }

    /// Black-white property: the relative interiors of the black hull and
    /// the white hull of `m` intersect.
    pub fn bw_property(&self, m: VertexSubset) -> bool {
        let (blacks, whites) = self.split_colors(m);
        relint_intersect(&blacks, &whites)
    }

    /// Face criterion: `m` spans a face iff its complement has the
    /// black-white property. Defined for `1 <= |m| <= 2d`.
    pub fn is_face(&self, m: VertexSubset) -> Result<bool> {
        let max = 2 * self.d;
        if m.is_empty() || m.len() > max {
            return Err(GaleError::SubsetSize { size: m.len(), min: 1, max });
        }
        Ok(self.face_unchecked(m))
    }

    pub(crate) fn face_unchecked(&self, m: VertexSubset) -> bool {
        self.bw_property(VertexSubset(self.full().0 & !m.0))
    }

    pub fn is_polytope_diagram(&self) -> bool {
        (0..self.len()).all(|i| self.bw_property(VertexSubset(self.full().0 & !(1 << i))))
    }

    /// Every `d`-subset is a face. Vacuously true for `d = 0`.
    pub fn is_neighborly_diagram(&self) -> bool {
        if self.d == 0 {
            return true;
        }
        masks_of_size(self.len(), self.d).all(|m| self.face_unchecked(VertexSubset(m)))
    }

    /// General position, `d + 3` blacks in convex position, every white
    /// strictly inside the black polygon, and exactly one white strictly
    /// inside every black triangle.
    pub fn is_t_diagram(&self) -> bool {
        self.t_diagram_violation().is_none()
    }

    pub(crate) fn t_diagram_violation(&self) -> Option<String> {
        let all: Vec<Point2> = self.points.iter().map(|p| p.position.clone()).collect();
        if !general_position(&all) {
            return Some("points are not in general position".into());
        }
        let blacks = self.blacks();
        if blacks.len() != self.d + 3 {
            return Some(format!("expected {} black points, found {}", self.d + 3, blacks.len()));
        }
        if self.black_cycle.len() != blacks.len() {
            return Some("black points are not in convex position".into());
        }
        let polygon: Vec<Point2> = self.black_cycle.iter().map(|&i| self.position(i).clone()).collect();
        let whites = self.whites();
        if let Some(&w) = whites.iter().find(|&&w| !point_in_convex_polygon_strict(self.position(w), &polygon)) {
            return Some(format!("white {} lies outside the black polygon", self.label(w)));
        }
        for tri in combinations(blacks.len(), 3) {
            let inside = self.whites_in_triangle(blacks[tri[0]], blacks[tri[1]], blacks[tri[2]]);
            if inside.len() != 1 {
                return Some(format!(
                    "triangle {}{}{} contains {} whites",
                    self.label(blacks[tri[0]]),
                    self.label(blacks[tri[1]]),
                    self.label(blacks[tri[2]]),
                    inside.len()
                ));
            }
        }
        None
    }

    /// t-diagram with `d >= 2` that is a Gale diagram of a neighborly
    /// polytope: a T-diagram.
    pub fn is_t_polytope_diagram(&self) -> bool {
        self.d >= 2 && self.is_t_diagram() && self.is_polytope_diagram() && self.is_neighborly_diagram()
    }

    /// Whites strictly inside the triangle on three points.
    pub fn whites_in_triangle(&self, a: usize, b: usize, c: usize) -> Vec<usize> {
        let (pa, pb, pc) = (self.position(a), self.position(b), self.position(c));
        self.whites()
            .into_iter()
            .filter(|&w| point_in_triangle_strict(self.position(w), pa, pb, pc).unwrap_or(false))
            .collect()
    }

    pub fn white_in_triangle(&self, w: usize, a: usize, b: usize, c: usize) -> bool {
        point_in_triangle_strict(self.position(w), self.position(a), self.position(b), self.position(c))
            .unwrap_or(false)
    }

    /// The white inside the boundary triangle `A_{i-1} A_i A_{i+1}` of the
    /// black at cycle position `pos`.
    pub fn corresponding_white(&self, pos: usize) -> Option<usize> {
        let p = pos as isize;
        let inside = self.whites_in_triangle(self.cycle_at(p - 1), self.cycle_at(p), self.cycle_at(p + 1));
        match inside.as_slice() {
            [w] => Some(*w),
            _ => None,
        }
    }

    /// Cycle positions of the blacks that white `w` corresponds to.
    pub fn corresponded_blacks(&self, w: usize) -> Vec<usize> {
        (0..self.black_cycle.len())
            .filter(|&pos| {
                let p = pos as isize;
                self.white_in_triangle(w, self.cycle_at(p - 1), self.cycle_at(p), self.cycle_at(p + 1))
            })
            .collect()
    }

    /// Cycle position `i` of the side `A_i A_{i+1}` white `w` is adjacent to.
    pub fn adjacent_side(&self, w: usize) -> Option<usize> {
        let n = self.black_cycle.len();
        if n < 3 {
            return None;
        }
        let corr = self.corresponded_blacks(w);
        (0..n).find(|&i| corr.contains(&i) && corr.contains(&((i + 1) % n)))
    }

    /// Removes a black and its corresponding white, giving a t-diagram with
    /// `d - 1`.
    pub fn remove_pair(&self, black: &str, white: &str) -> Result<Diagram> {
        if self.len() <= 4 {
            return Err(GaleError::TooFewPoints { needed: 6, got: self.len() });
        }
        if let Some(why) = self.t_diagram_violation() {
            return Err(GaleError::NotTDiagram(why));
        }
        let pos = self.require_cycle_position(black)?;
        let w = self.index_of(white)?;
        if self.color(w) != Color::White || self.corresponding_white(pos) != Some(w) {
            return Err(GaleError::Precondition(format!("{white} does not correspond to {black}")));
        }
        let a = self.black_cycle[pos];
        let keep: Vec<usize> = (0..self.len()).filter(|&i| i != a && i != w).collect();
        let remap = |i: usize| keep.iter().position(|&k| k == i).expect("kept index");
        let points = keep.iter().map(|&i| self.points[i].clone()).collect();
        let black_cycle = self.black_cycle.iter().filter(|&&i| i != a).map(|&i| remap(i)).collect();
        Ok(Diagram { d: self.d - 1, points, black_cycle })
    }

    /// Mirror image across the vertical axis.
    pub fn reflected(&self) -> Diagram {
        let points = self
            .points
            .iter()
            .map(|p| {
                DiagramPoint::new(p.label.clone(), p.color, Point2::new(-&p.position.x, p.position.y.clone()))
            })
            .collect();
        let mut cycle = self.black_cycle.clone();
        if cycle.len() > 1 {
            cycle[1..].reverse();
        }
        Diagram { d: self.d, points, black_cycle: cycle }
    }

    /// Same diagram with the points listed in a new order and relabeled.
    pub fn relabeled(&self, order: &[usize], labels: &[String]) -> Result<Diagram> {
        let points = order
            .iter()
            .zip(labels)
            .map(|(&i, l)| DiagramPoint::new(l.clone(), self.points[i].color, self.points[i].position.clone()))
            .collect();
        let cycle: Vec<String> = self
            .black_cycle
            .iter()
            .map(|&i| labels[order.iter().position(|&k| k == i).expect("permutation")].clone())
            .collect();
        Diagram::with_black_cycle(self.d, points, &cycle)
    }
}

fn positions(points: &[DiagramPoint], idx: &[usize]) -> Vec<Point2> {
    idx.iter().map(|&i| points[i].position.clone()).collect()
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_json_string())
    }
}
