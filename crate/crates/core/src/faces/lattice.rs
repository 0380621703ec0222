//! Face lattices of simplicial polytopes given by their facets, and the
//! cyclic polytope's diagram for comparison.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::NonfaceTable;
use crate::diagram::{Color, Diagram, DiagramPoint, VertexSubset};
use crate::error::{GaleError, Result};
use crate::exactgeom::Point2;
use crate::subset::{indices_of, masks_of_size};

/// Diagrams up to this `d` get a full sweep of every subset when their
/// lattice is built; larger ones a seeded sample.
const FULL_SWEEP_MAX_D: usize = 3;
const SAMPLE_SIZE: usize = 2000;

/// Faces of a simplicial `2d`-polytope, grouped by vertex count. Masks index
/// into `labels`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceLattice {
    d: usize,
    labels: Vec<String>,
    /// `faces_by_size[t]`: faces with `t` vertices, for `t` in `0..=2d`.
    faces_by_size: Vec<BTreeSet<u32>>,
}

/// JSON form: facets only, as sorted label lists.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LatticeDoc {
    pub d: usize,
    pub facets: Vec<Vec<String>>,
}

impl FaceLattice {
    /// Lattice of the simplicial complex generated by `facets`.
    pub fn from_facets(d: usize, labels: Vec<String>, facets: impl IntoIterator<Item = u32>) -> Result<Self> {
        let dim = 2 * d;
        let mut faces_by_size = vec![BTreeSet::new(); dim + 1];
        for f in facets {
            if f.count_ones() as usize != dim || (labels.len() < 32 && f >> labels.len() != 0) {
                return Err(GaleError::Parse(format!("facet with {} vertices, expected {dim}", f.count_ones())));
            }
            faces_by_size[dim].insert(f);
        }
        for t in (0..dim).rev() {
            let next: BTreeSet<u32> = faces_by_size[t + 1]
                .iter()
                .flat_map(|&f| indices_of(f).into_iter().map(move |i| f & !(1 << i)))
                .collect();
            faces_by_size[t] = next;
        }
        Ok(FaceLattice { d, labels, faces_by_size })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels.iter().position(|l| l == label).ok_or_else(|| GaleError::UnknownLabel(label.to_string()))
    }

    pub fn faces(&self, size: usize) -> &BTreeSet<u32> {
        &self.faces_by_size[size]
    }

    pub fn facets(&self) -> &BTreeSet<u32> {
        &self.faces_by_size[2 * self.d]
    }

    pub fn contains(&self, mask: u32) -> bool {
        let t = mask.count_ones() as usize;
        t < self.faces_by_size.len() && self.faces_by_size[t].contains(&mask)
    }

    /// `f_0, ..., f_{2d-1}`: numbers of faces with `1, ..., 2d` vertices.
    pub fn f_vector(&self) -> Vec<usize> {
        self.faces_by_size[1..].iter().map(BTreeSet::len).collect()
    }

    /// Every nonempty subset of a face is a face.
    pub fn is_downward_closed(&self) -> bool {
        (2..self.faces_by_size.len()).all(|t| {
            self.faces_by_size[t]
                .iter()
                .all(|&f| indices_of(f).into_iter().all(|i| self.faces_by_size[t - 1].contains(&(f & !(1 << i)))))
        })
    }

    /// `(d + 1)`-subsets that are not faces.
    pub fn minimal_nonfaces(&self) -> NonfaceTable {
        let faces = &self.faces_by_size[self.d + 1];
        NonfaceTable::from_sets(masks_of_size(self.labels.len(), self.d + 1).filter(|m| !faces.contains(m)))
    }

    /// Number of faces with `t` vertices containing vertex `v`, for every
    /// `t` in `1..=2d`.
    pub fn local_counts(&self, v: usize) -> BTreeMap<usize, usize> {
        (1..self.faces_by_size.len())
            .map(|t| (t, self.faces_by_size[t].iter().filter(|&&f| f & (1 << v) != 0).count()))
            .collect()
    }

    pub fn labels_of(&self, mask: u32) -> Vec<String> {
        let mut v: Vec<String> = indices_of(mask).into_iter().map(|i| self.labels[i].clone()).collect();
        v.sort();
        v
    }

    /// Facets as sorted label lists, sorted.
    pub fn facet_label_sets(&self) -> BTreeSet<Vec<String>> {
        self.facets().iter().map(|&f| self.labels_of(f)).collect()
    }

    /// The same lattice with every label renamed through `rename`.
    pub fn relabeled(&self, rename: &BTreeMap<String, String>) -> Result<FaceLattice> {
        let labels: Vec<String> = self
            .labels
            .iter()
            .map(|l| rename.get(l).cloned().ok_or_else(|| GaleError::UnknownLabel(l.clone())))
            .collect::<Result<_>>()?;
        let distinct: BTreeSet<&String> = labels.iter().collect();
        if distinct.len() != labels.len() {
            return Err(GaleError::Precondition("renaming is not injective".into()));
        }
        Ok(FaceLattice { d: self.d, labels, faces_by_size: self.faces_by_size.clone() })
    }

    pub fn to_doc(&self) -> LatticeDoc {
        LatticeDoc { d: self.d, facets: self.facet_label_sets().into_iter().collect() }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("lattice serializes")
    }

    pub fn from_doc(doc: LatticeDoc) -> Result<FaceLattice> {
        let labels: Vec<String> =
            doc.facets.iter().flatten().cloned().collect::<BTreeSet<String>>().into_iter().collect();
        if labels.len() != 2 * doc.d + 4 {
            return Err(GaleError::Parse(format!(
                "a lattice with d = {} has {} vertices, found {}",
                doc.d,
                2 * doc.d + 4,
                labels.len()
            )));
        }
        let mut facets = Vec::with_capacity(doc.facets.len());
        for f in &doc.facets {
            let set: BTreeSet<&String> = f.iter().collect();
            if set.len() != f.len() {
                return Err(GaleError::Parse("facet with a repeated vertex".into()));
            }
            facets.push(f.iter().fold(0u32, |m, l| m | (1 << labels.iter().position(|x| x == l).expect("known"))));
        }
        FaceLattice::from_facets(doc.d, labels, facets)
    }

    pub fn from_json_str(s: &str) -> Result<FaceLattice> {
        let doc: LatticeDoc = serde_json::from_str(s).map_err(|e| GaleError::Parse(e.to_string()))?;
        FaceLattice::from_doc(doc)
    }
}

/// All faces of the polytope of a polytope diagram: facets by the face
/// criterion on `2d`-subsets, smaller faces by closure, cross-checked
/// against the criterion on every subset (small `d`) or a seeded sample.
pub fn face_lattice(x: &Diagram) -> Result<FaceLattice> {
    if x.d() == 0 {
        return Err(GaleError::Precondition("face lattices need d >= 1".into()));
    }
    if !x.is_polytope_diagram() {
        return Err(GaleError::NotPolytopeDiagram("some point is not a vertex".into()));
    }
    let dim = 2 * x.d();
    let facets: Vec<u32> = masks_of_size(x.len(), dim).filter(|&m| x.face_unchecked(VertexSubset(m))).collect();
    let labels = x.points().iter().map(|p| p.label.clone()).collect();
    let lattice = FaceLattice::from_facets(x.d(), labels, facets)?;
    let check = |m: u32| lattice.contains(m) == x.face_unchecked(VertexSubset(m));
    let ok = if x.d() <= FULL_SWEEP_MAX_D {
        (1..=dim).flat_map(|t| masks_of_size(x.len(), t)).all(check)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x6a1e);
        (0..SAMPLE_SIZE).all(|_| {
            let t = rng.gen_range(1..=dim);
            let mut idx: Vec<usize> = (0..x.len()).collect();
            let mut m = 0u32;
            for _ in 0..t {
                m |= 1 << idx.swap_remove(rng.gen_range(0..idx.len()));
            }
            check(m)
        })
    };
    if !ok {
        return Err(GaleError::Internal("face closure disagrees with the face criterion".into()));
    }
    Ok(lattice)
}

/// Faces through vertex `v`, by size.
pub fn local_face_counts(x: &Diagram, v: &str) -> Result<BTreeMap<usize, usize>> {
    let i = x.index_of(v)?;
    Ok(face_lattice(x)?.local_counts(i))
}

/// Gale diagram of the cyclic `2d`-polytope with `2d + 4` vertices: points
/// `(i, i^2)` with alternating colors. Blacks are `A1, A2, ...` and whites
/// `B1, B2, ...`, each in clockwise order.
pub fn cyclic_diagram(d: usize) -> Result<Diagram> {
    if d == 0 {
        return Err(GaleError::Precondition("the cyclic diagram needs d >= 1".into()));
    }
    let n = 2 * d + 4;
    // decreasing x is clockwise along the parabola
    let mut blacks = Vec::new();
    let mut whites = Vec::new();
    for i in (0..n as i64).rev() {
        let p = Point2::from_ints(i, i * i);
        if i % 2 == 0 {
            blacks.push(DiagramPoint::new(format!("A{}", blacks.len() + 1), Color::Black, p));
        } else {
            whites.push(DiagramPoint::new(format!("B{}", whites.len() + 1), Color::White, p));
        }
    }
    blacks.extend(whites);
    Diagram::new(d, blacks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::build_diagram;
    use crate::subset::binomial;
    use crate::trees::enumerate_trees;

    #[test]
    fn d2_f_vector() {
        let t = &enumerate_trees(5).unwrap()[0];
        let (x, _) = build_diagram(t).unwrap();
        let l = face_lattice(&x).unwrap();
        assert_eq!(l.f_vector(), vec![8, 28, 40, 20]);
        assert!(l.is_downward_closed());
        assert_eq!(l.faces(2).len() as u64, binomial(8, 2));
    }

    #[test]
    fn cyclic_diagram_properties() {
        for d in 1..=3 {
            let x = cyclic_diagram(d).unwrap();
            assert!(x.is_polytope_diagram());
            assert!(x.is_neighborly_diagram());
            assert!(!x.is_t_diagram());
            assert_eq!(x.black_cycle_labels()[0], "A1");
        }
        assert_eq!(face_lattice(&cyclic_diagram(2).unwrap()).unwrap().f_vector(), vec![8, 28, 40, 20]);
        assert!(cyclic_diagram(0).is_err());
    }

    #[test]
    fn local_counts_are_uniform() {
        for t in enumerate_trees(6).unwrap() {
            let (x, _) = build_diagram(&t).unwrap();
            let l = face_lattice(&x).unwrap();
            let first = l.local_counts(0);
            assert!((0..x.len()).all(|v| l.local_counts(v) == first));
            let cyc = face_lattice(&cyclic_diagram(3).unwrap()).unwrap();
            assert_eq!(cyc.local_counts(0), first);
            let dim = 2 * x.d();
            let total: usize = (0..x.len()).map(|v| l.local_counts(v)[&dim]).sum();
            assert_eq!(total, dim * l.facets().len());
        }
    }

    #[test]
    fn json_round_trip() {
        let t = &enumerate_trees(6).unwrap()[2];
        let (x, _) = build_diagram(t).unwrap();
        let l = face_lattice(&x).unwrap();
        let again = FaceLattice::from_json_str(&l.to_json_string()).unwrap();
        assert_eq!(again.facet_label_sets(), l.facet_label_sets());
        assert_eq!(again.f_vector(), l.f_vector());
        assert!(FaceLattice::from_json_str(r#"{"d": 1, "facets": [["a","b","c"]]}"#).is_err());
    }
}
