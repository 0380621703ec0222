//! Independent check of the face criterion: turn the plane diagram back into
//! an explicit point configuration in `R^{2d}`, find its facets by sign
//! tests, and compare with the faces the diagram predicts.
//!
//! Nothing here uses the black-white intersection test; the only link to
//! the diagram's own face logic is the final comparison.

pub mod linalg;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::diagram::{Color, Diagram, VertexSubset};
use crate::error::{GaleError, Result};
use crate::exactgeom::Rational;
use crate::subset::{combinations, masks_of_size};
use linalg::{det_sign, integer_row, kernel_basis, mat_vec, rank, solve, Matrix};

/// Default seed for sampled comparisons.
pub const DEFAULT_SEED: u64 = 0x5eed_6a1e;

/// The diagram as `N` vectors in `R^3`: blacks `(x, y, 1)`, whites
/// `(-x, -y, -1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorConfig3 {
    pub labels: Vec<String>,
    /// One column per point.
    pub columns: Vec<[Rational; 3]>,
}

impl VectorConfig3 {
    /// The 3×N matrix.
    pub fn matrix(&self) -> Matrix {
        (0..3).map(|r| self.columns.iter().map(|c| c[r].clone()).collect()).collect()
    }

    pub fn rank(&self) -> usize {
        rank(&self.matrix())
    }
}

/// Labelled points in `R^D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointConfig {
    pub labels: Vec<String>,
    pub points: Vec<Vec<Rational>>,
}

impl PointConfig {
    pub fn dim(&self) -> usize {
        self.points.first().map_or(0, Vec::len)
    }

    fn homogeneous(&self, i: usize) -> Vec<Rational> {
        self.points[i].iter().cloned().chain([Rational::one()]).collect()
    }
}

pub fn lift(x: &Diagram) -> VectorConfig3 {
    let columns = x
        .points()
        .iter()
        .map(|p| {
            let (px, py) = (p.position.x.clone(), p.position.y.clone());
            match p.color {
                Color::Black => [px, py, Rational::one()],
                Color::White => [-px, -py, -Rational::one()],
            }
        })
        .collect();
    VectorConfig3 { labels: x.points().iter().map(|p| p.label.clone()).collect(), columns }
}

/// Strictly positive weights `λ` with `Σ λ_i v_i = 0` and `Σ λ_i = 1`: the
/// average of all basic feasible solutions, which is strictly positive
/// exactly when some strictly positive solution exists.
pub fn positive_dependence(v: &VectorConfig3) -> Result<Vec<Rational>> {
    let n = v.columns.len();
    if v.rank() != 3 {
        return Err(GaleError::NotSpanning);
    }
    let full: Matrix = {
        let mut m = v.matrix();
        m.push(vec![Rational::one(); n]);
        m
    };
    let rhs = [Rational::zero(), Rational::zero(), Rational::zero(), Rational::one()];
    let mut basic: Vec<Vec<Rational>> = Vec::new();
    for size in 1..=4.min(n) {
        for support in combinations(n, size) {
            let sub: Matrix = full.iter().map(|row| support.iter().map(|&j| row[j].clone()).collect()).collect();
            if rank(&sub) != size {
                continue;
            }
            let Some(sol) = solve(&sub, &rhs) else { continue };
            if sol.iter().any(Rational::is_negative) {
                continue;
            }
            let mut lambda = vec![Rational::zero(); n];
            for (k, &j) in support.iter().enumerate() {
                lambda[j] = sol[k].clone();
            }
            if !basic.contains(&lambda) {
                basic.push(lambda);
            }
        }
    }
    if basic.is_empty() {
        return Err(GaleError::NotPolytopeDiagram("no nonnegative dependence".into()));
    }
    let count = Rational::from_int(basic.len() as i64);
    let avg: Vec<Rational> =
        (0..n).map(|j| &basic.iter().map(|b| &b[j]).sum::<Rational>() / &count).collect();
    if let Some(j) = avg.iter().position(|l| !l.is_positive()) {
        return Err(GaleError::NotPolytopeDiagram(format!("{} has zero weight in every dependence", v.labels[j])));
    }
    Ok(avg)
}

/// A point configuration in `R^{2d}` whose Gale diagram is `x`.
///
/// Scale the lifted vectors by a positive dependence so they sum to zero;
/// the kernel of the resulting 3×N matrix contains the all-ones vector, and
/// the other rows of a kernel basis through it give the coordinates.
pub fn gale_inverse(x: &Diagram) -> Result<PointConfig> {
    let v = lift(x);
    let lambda = positive_dependence(&v)?;
    let c: Matrix = v.matrix().into_iter().map(|row| row.iter().zip(&lambda).map(|(a, l)| a * l).collect()).collect();
    let n = x.len();
    let ones = vec![Rational::one(); n];
    let mut basis = kernel_basis(&c);
    if basis.len() != n - 3 {
        return Err(GaleError::Internal("scaled lift does not have rank 3".into()));
    }
    // write 1 in the basis and swap it in for a basis vector it uses
    let bt: Matrix = (0..n).map(|j| basis.iter().map(|b| b[j].clone()).collect()).collect();
    let coeffs = solve(&bt, &ones).ok_or_else(|| GaleError::Internal("all-ones is not a dependence".into()))?;
    let k = coeffs.iter().position(|c| !c.is_zero()).expect("ones is nonzero");
    basis.remove(k);
    let points: Vec<Vec<Rational>> = (0..n).map(|j| basis.iter().map(|b| b[j].clone()).collect()).collect();
    let config = PointConfig { labels: v.labels.clone(), points };

    // the configuration's affine dependences are exactly the row space of c
    let mut homog: Matrix = basis.clone();
    homog.push(ones.clone());
    if rank(&homog) != n - 3 || c.iter().any(|row| mat_vec(&homog, row).iter().any(|e| !e.is_zero())) {
        return Err(GaleError::Internal("inverse configuration fails the dependence check".into()));
    }
    Ok(config)
}

/// `D`-subsets whose homogeneous determinants with every other point share
/// one strict sign. Errors if some `D + 1` points are affinely dependent.
pub fn facets_bruteforce(p: &PointConfig) -> Result<Vec<u32>> {
    let n = p.points.len();
    let dim = p.dim();
    // positive rescaling of a homogeneous vector leaves every sign alone
    let homog: Vec<Vec<BigInt>> = (0..n).map(|i| integer_row(&p.homogeneous(i))).collect();
    let mut out = Vec::new();
    for s in combinations(n, dim) {
        let mut sign = 0;
        let mut common = true;
        for j in (0..n).filter(|j| !s.contains(j)) {
            let rows: Vec<Vec<BigInt>> = s.iter().chain([&j]).map(|&i| homog[i].clone()).collect();
            let sj = det_sign(rows);
            if sj == 0 {
                return Err(GaleError::GeneralPosition(format!("{} lies on the hyperplane of {s:?}", p.labels[j])));
            }
            if sign == 0 {
                sign = sj;
            } else if sj != sign {
                common = false;
            }
        }
        if common {
            out.push(s.iter().fold(0u32, |m, &i| m | (1 << i)));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub diagram: serde_json::Value,
    pub facet_count: usize,
    /// Subsets (as sorted labels) on which the two face tests disagree.
    pub mismatches: Vec<Vec<String>>,
    pub ok: bool,
    /// Subsets compared.
    pub checked: usize,
}

impl OracleReport {
    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn compare(x: &Diagram, facets: &[u32], subsets: impl Iterator<Item = u32>) -> OracleReport {
    let mut mismatches = Vec::new();
    let mut checked = 0;
    for m in subsets {
        checked += 1;
        let oracle = facets.iter().any(|&f| f & m == m);
        if oracle != x.face_unchecked(VertexSubset(m)) {
            let mut labels = VertexSubset(m).labels(x);
            labels.sort();
            mismatches.push(labels);
        }
    }
    mismatches.sort();
    mismatches.dedup();
    OracleReport {
        diagram: x.to_json_value(),
        facet_count: facets.len(),
        ok: mismatches.is_empty(),
        mismatches,
        checked,
    }
}

fn oracle_facets(x: &Diagram) -> Result<Vec<u32>> {
    if x.d() == 0 {
        return Err(GaleError::Precondition("the oracle needs d >= 1".into()));
    }
    facets_bruteforce(&gale_inverse(x)?)
}

/// Compares the face criterion with the oracle on every subset of size
/// `1..=2d`.
pub fn verify_against_oracle(x: &Diagram) -> Result<OracleReport> {
    let facets = oracle_facets(x)?;
    let dim = 2 * x.d();
    Ok(compare(x, &facets, (1..=dim).flat_map(|t| masks_of_size(x.len(), t))))
}

/// Compares on every `2d`-subset plus `samples` seeded random subsets of
/// size `1..2d` (drawn with replacement).
pub fn verify_against_oracle_sampled(x: &Diagram, samples: usize, seed: u64) -> Result<OracleReport> {
    let facets = oracle_facets(x)?;
    let dim = 2 * x.d();
    let n = x.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random = (0..samples).map(move |_| {
        let t = rng.gen_range(1..dim);
        let mut pool: Vec<usize> = (0..n).collect();
        (0..t).fold(0u32, |m, _| m | (1 << pool.swap_remove(rng.gen_range(0..pool.len()))))
    });
    Ok(compare(x, &facets, masks_of_size(n, dim).chain(random)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::build_diagram;
    use crate::diagram::DiagramPoint;
    use crate::exactgeom::Point2;
    use crate::faces::cyclic_diagram;
    use crate::trees::enumerate_trees;

    fn base() -> Diagram {
        let pt = |l: &str, c, x, y| DiagramPoint::new(l, c, Point2::from_ints(x, y));
        Diagram::new(0, vec![
            pt("A1", Color::Black, 0, 0),
            pt("A2", Color::Black, 0, 4),
            pt("A3", Color::Black, 4, 0),
            pt("B1", Color::White, 1, 1),
        ])
        .unwrap()
    }

    #[test]
    fn lift_signs() {
        let v = lift(&base());
        assert_eq!(v.columns[0], [Rational::zero(), Rational::zero(), Rational::one()]);
        let m1 = -Rational::one();
        assert_eq!(v.columns[3], [m1.clone(), m1.clone(), m1]);
        assert_eq!(v.rank(), 3);
    }

    #[test]
    fn dependence_of_the_base_diagram() {
        let v = lift(&base());
        let l = positive_dependence(&v).unwrap();
        assert!(l.iter().all(Rational::is_positive));
        assert_eq!(l.iter().sum::<Rational>(), Rational::one());
        let combo = mat_vec(&v.matrix(), &l);
        assert!(combo.iter().all(Rational::is_zero));
    }

    #[test]
    fn white_outside_has_no_positive_dependence() {
        let pt = |l: &str, c, x, y| DiagramPoint::new(l, c, Point2::from_ints(x, y));
        let x = Diagram::new(0, vec![
            pt("A1", Color::Black, 0, 0),
            pt("A2", Color::Black, 0, 4),
            pt("A3", Color::Black, 4, 0),
            pt("B1", Color::White, 5, 5),
        ])
        .unwrap();
        assert!(matches!(positive_dependence(&lift(&x)), Err(GaleError::NotPolytopeDiagram(_))));
    }

    #[test]
    fn d2_configurations() {
        let t = &enumerate_trees(5).unwrap()[0];
        let (x, _) = build_diagram(t).unwrap();
        let p = gale_inverse(&x).unwrap();
        assert_eq!(p.dim(), 4);
        assert_eq!(p.points.len(), 8);
        let facets = facets_bruteforce(&p).unwrap();
        assert_eq!(facets.len(), 20);
        let covered = facets.iter().fold(0u32, |m, f| m | f);
        assert_eq!(covered, x.full().0);
        assert_eq!(facets_bruteforce(&gale_inverse(&cyclic_diagram(2).unwrap()).unwrap()).unwrap().len(), 20);
    }

    #[test]
    fn oracle_agrees_on_small_diagrams() {
        for t in enumerate_trees(5).unwrap().iter().chain(&enumerate_trees(6).unwrap()) {
            let (x, _) = build_diagram(t).unwrap();
            let r = verify_against_oracle(&x).unwrap();
            assert!(r.ok, "{:?}", r.mismatches);
            assert_eq!(r.checked, (1..=2 * x.d()).map(|k| crate::subset::binomial(x.len() as u64, k as u64) as usize).sum::<usize>());
        }
        let r = verify_against_oracle(&cyclic_diagram(3).unwrap()).unwrap();
        assert!(r.ok);
    }

    #[test]
    fn sampled_report_is_deterministic() {
        let t = &enumerate_trees(6).unwrap()[0];
        let (x, _) = build_diagram(t).unwrap();
        let a = verify_against_oracle_sampled(&x, 500, 7).unwrap();
        let b = verify_against_oracle_sampled(&x, 500, 7).unwrap();
        assert!(a.ok);
        assert_eq!(a.to_json_string(), b.to_json_string());
        let v: serde_json::Value = serde_json::from_str(&a.to_json_string()).unwrap();
        for key in ["diagram", "facet_count", "mismatches", "ok"] {
            assert!(v.get(key).is_some());
        }
    }

    #[test]
    fn degenerate_diagrams_give_degenerate_configurations() {
        // three collinear points: B1 on the segment from A1 to its mirror
        let pt = |l: &str, c, x, y| DiagramPoint::new(l, c, Point2::from_ints(x, y));
        let x = Diagram::new(1, vec![
            pt("A1", Color::Black, 0, 0),
            pt("A2", Color::Black, 0, 6),
            pt("A3", Color::Black, 6, 6),
            pt("A4", Color::Black, 6, 0),
            pt("B1", Color::White, 2, 2),
            pt("B2", Color::White, 4, 4),
        ])
        .unwrap();
        let p = gale_inverse(&x).unwrap();
        assert!(matches!(facets_bruteforce(&p), Err(GaleError::GeneralPosition(_))));
    }
}
