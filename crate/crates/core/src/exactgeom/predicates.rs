use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::Rational;
use crate::error::{GaleError, Result};
use crate::subset::combinations;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point2 {
    pub x: Rational,
    pub y: Rational,
}

impl Point2 {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point2 { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point2::new(Rational::from_int(x), Rational::from_int(y))
    }

    pub fn sub(&self, other: &Point2) -> Point2 {
        Point2::new(&self.x - &other.x, &self.y - &other.y)
    }

    pub fn add(&self, other: &Point2) -> Point2 {
        Point2::new(&self.x + &other.x, &self.y + &other.y)
    }

    pub fn scale(&self, k: &Rational) -> Point2 {
        Point2::new(&self.x * k, &self.y * k)
    }

    pub fn midpoint(&self, other: &Point2) -> Point2 {
        let half = Rational::new(1, 2);
        self.add(other).scale(&half)
    }

    /// Cross product `self × other` of the two vectors.
    pub fn cross(&self, other: &Point2) -> Rational {
        &self.x * &other.y - &self.y * &other.x
    }

    pub fn centroid(points: &[Point2]) -> Point2 {
        assert!(!points.is_empty());
        let n = Rational::from_int(points.len() as i64);
        let sx: Rational = points.iter().map(|p| &p.x).sum();
        let sy: Rational = points.iter().map(|p| &p.y).sum();
        Point2::new(&sx / &n, &sy / &n)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    CounterClockwise,
    Clockwise,
    Collinear,
}

impl Orientation {
    pub fn reversed(self) -> Orientation {
        match self {
            Orientation::CounterClockwise => Orientation::Clockwise,
            Orientation::Clockwise => Orientation::CounterClockwise,
            Orientation::Collinear => Orientation::Collinear,
        }
    }
}

/// Sign of `det(q - p, r - p)`.
pub fn orient(p: &Point2, q: &Point2, r: &Point2) -> Orientation {
    let small = |a: &Point2| Some((a.x.as_small_int()? as i128, a.y.as_small_int()? as i128));
    // integers below 2^62 keep the determinant inside i128
    let sign = match (small(p), small(q), small(r)) {
        (Some(p), Some(q), Some(r)) => ((q.0 - p.0) * (r.1 - p.1) - (q.1 - p.1) * (r.0 - p.0)).signum() as i32,
        _ => q.sub(p).cross(&r.sub(p)).signum(),
    };
    match sign {
        1 => Orientation::CounterClockwise,
        -1 => Orientation::Clockwise,
        _ => Orientation::Collinear,
    }
}

pub fn point_in_triangle_strict(p: &Point2, a: &Point2, b: &Point2, c: &Point2) -> Result<bool> {
    let o = orient(a, b, c);
    if o == Orientation::Collinear {
        return Err(GaleError::DegenerateTriangle);
    }
    Ok(orient(a, b, p) == o && orient(b, c, p) == o && orient(c, a, p) == o)
}

/// Strict interior test for a convex polygon listed in clockwise order.
/// Polygons with fewer than three vertices have empty interior.
pub fn point_in_convex_polygon_strict(p: &Point2, polygon_cw: &[Point2]) -> bool {
    let n = polygon_cw.len();
    if n < 3 {
        return false;
    }
    (0..n).all(|i| orient(&polygon_cw[i], &polygon_cw[(i + 1) % n], p) == Orientation::Clockwise)
}

pub fn general_position(points: &[Point2]) -> bool {
    let n = points.len();
    for i in 0..n {
        for j in i + 1..n {
            if points[i] == points[j] {
                return false;
            }
            for k in j + 1..n {
                if orient(&points[i], &points[j], &points[k]) == Orientation::Collinear {
                    return false;
                }
            }
        }
    }
    true
}

/// Clockwise hull order of `points` (starting at index 0's rotation) when
/// every point is a hull vertex, `None` otherwise.
pub fn convex_position_cyclic(points: &[Point2]) -> Result<Option<Vec<usize>>> {
    let n = points.len();
    if n < 3 {
        return Err(GaleError::TooFewPoints { needed: 3, got: n });
    }
    let start = (0..n).min_by(|&a, &b| points[a].cmp(&points[b])).expect("nonempty");
    let mut rest: Vec<usize> = (0..n).filter(|&i| i != start).collect();
    // All other points lie in the closed half-plane right of `start`, so the
    // turn direction is a total order on them (up to collinear ties, which
    // the final scan rejects).
    rest.sort_by(|&a, &b| {
        if a == b {
            return Ordering::Equal;
        }
        match orient(&points[start], &points[a], &points[b]) {
            Orientation::Clockwise => Ordering::Less,
            Orientation::CounterClockwise => Ordering::Greater,
            Orientation::Collinear => a.cmp(&b),
        }
    });
    let mut cycle = Vec::with_capacity(n);
    cycle.push(start);
    cycle.extend(rest);
    for i in 0..n {
        let o = orient(&points[cycle[i]], &points[cycle[(i + 1) % n]], &points[cycle[(i + 2) % n]]);
        if o != Orientation::Clockwise {
            return Ok(None);
        }
    }
    let pos0 = cycle.iter().position(|&i| i == 0).expect("index 0 present");
    cycle.rotate_left(pos0);
    Ok(Some(cycle))
}

/// Gaussian elimination for a 4-row system restricted to the given columns.
/// Returns the unique solution when the columns are independent and the
/// system is consistent.
fn solve_support(columns: &[[Rational; 4]], support: &[usize], rhs: &[Rational; 4]) -> Option<Vec<Rational>> {
    let k = support.len();
    let mut m: Vec<Vec<Rational>> = (0..4)
        .map(|r| {
            let mut row: Vec<Rational> = support.iter().map(|&c| columns[c][r].clone()).collect();
            row.push(rhs[r].clone());
            row
        })
        .collect();
    let mut row = 0;
    for col in 0..k {
        let pivot = (row..4).find(|&r| !m[r][col].is_zero())?;
        m.swap(row, pivot);
        let inv = m[row][col].recip().ok()?;
        for c in col..=k {
            m[row][c] = &m[row][c] * &inv;
        }
        for r in 0..4 {
            if r != row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..=k {
                    let delta = &factor * &m[row][c];
                    m[r][c] -= &delta;
                }
            }
        }
        row += 1;
    }
    if (row..4).any(|r| !m[r][k].is_zero()) {
        return None;
    }
    Some((0..k).map(|r| m[r][k].clone()).collect())
}

/// Decides whether the relative interiors of `Conv(s1)` and `Conv(s2)` meet.
///
/// Two full-dimensional hulls have disjoint interiors iff some line through
/// an edge of one of them weakly separates them; a point misses an open
/// polygon iff some line through it and a polygon point supports the
/// polygon. Other shapes go through [`relint_intersect_by_weights`].
pub fn relint_intersect(s1: &[Point2], s2: &[Point2]) -> bool {
    if s1.is_empty() || s2.is_empty() {
        return false;
    }
    match (affine_dim(s1), affine_dim(s2)) {
        (2, 2) => {
            let through = |s: &[Point2]| {
                s.iter().enumerate().any(|(i, a)| s[i + 1..].iter().any(|b| a != b && weakly_separates(a, b, s1, s2)))
            };
            !through(s1) && !through(s2)
        }
        (0, 2) => !s2.iter().any(|b| *b != s1[0] && weakly_separates(&s1[0], b, s2, &[])),
        (2, 0) => !s1.iter().any(|a| *a != s2[0] && weakly_separates(&s2[0], a, s1, &[])),
        _ => relint_intersect_by_weights(s1, s2),
    }
}

/// 0, 1 or 2: dimension of the affine hull of a nonempty set.
fn affine_dim(s: &[Point2]) -> usize {
    let Some(q) = s.iter().find(|q| **q != s[0]) else { return 0 };
    if s.iter().all(|r| orient(&s[0], q, r) == Orientation::Collinear) {
        1
    } else {
        2
    }
}

/// All of `s1` on one closed side of line `ab` and all of `s2` on the other.
fn weakly_separates(a: &Point2, b: &Point2, s1: &[Point2], s2: &[Point2]) -> bool {
    let side = |s: &[Point2], bad: Orientation| s.iter().all(|p| orient(a, b, p) != bad);
    (side(s1, Orientation::Clockwise) && side(s2, Orientation::CounterClockwise))
        || (side(s1, Orientation::CounterClockwise) && side(s2, Orientation::Clockwise))
}

/// General form of [`relint_intersect`], valid for hulls of any dimension.
///
/// The weights `(alpha, beta) >= 0` with `sum alpha_i s_i = sum beta_j t_j` and
/// `sum alpha = sum beta = 1` form a polytope; a strictly positive point exists
/// iff every coordinate is positive at some vertex, i.e. iff the average of
/// the vertices is strictly positive. Vertices are found by solving the
/// equality system on every support of at most four columns.
pub fn relint_intersect_by_weights(s1: &[Point2], s2: &[Point2]) -> bool {
    if s1.is_empty() || s2.is_empty() {
        return false;
    }
    let n1 = s1.len();
    let n = n1 + s2.len();
    let zero = Rational::zero();
    let one = Rational::one();
    let columns: Vec<[Rational; 4]> = s1
        .iter()
        .map(|p| [p.x.clone(), p.y.clone(), one.clone(), zero.clone()])
        .chain(s2.iter().map(|p| [-&p.x, -&p.y, zero.clone(), one.clone()]))
        .collect();
    let rhs = [zero.clone(), zero, one.clone(), one];
    let mut covered = vec![false; n];
    let mut uncovered = n;
    for size in 2..=n.min(4) {
        for support in combinations(n, size) {
            if support[0] >= n1 || support[size - 1] < n1 {
                continue;
            }
            let Some(x) = solve_support(&columns, &support, &rhs) else {
                continue;
            };
            if x.iter().any(Rational::is_negative) {
                continue;
            }
            for (&c, v) in support.iter().zip(&x) {
                if v.is_positive() && !covered[c] {
                    covered[c] = true;
                    uncovered -= 1;
                }
            }
            if uncovered == 0 {
                return true;
            }
        }
    }
    false
}
