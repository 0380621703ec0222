//! The bridge between 3-trees and t-diagrams: synthesis of a diagram from a
//! tree, extraction of the characteristic tree, and the equivalence tests
//! that make "unique up to" statements checkable.

mod build;
mod equivalence;
mod extract;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::diagram::{Color, Diagram};
use crate::error::{GaleError, Result};
use crate::subset::combinations;
use crate::trees::{CyclicOrder, ThreeTree};

pub use build::{build_diagram, build_diagram_with, BuildOptions};
pub use equivalence::{comb_equivalent, diagonal_equivalent, LabelMap};
pub use extract::{extract_tree, extract_tree_with, WhiteChoice};

/// Bijection from tree vertex labels to diagram labels.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Correspondence {
    pairs: BTreeMap<String, String>,
}

impl Correspondence {
    pub fn new(pairs: BTreeMap<String, String>) -> Result<Self> {
        let images: BTreeSet<&String> = pairs.values().collect();
        if images.len() != pairs.len() {
            return Err(GaleError::Precondition("correspondence is not injective".into()));
        }
        Ok(Correspondence { pairs })
    }

    /// Tree labels mapped to equal diagram labels.
    pub fn identity(t: &ThreeTree) -> Self {
        Correspondence { pairs: t.labels().iter().map(|l| (l.clone(), l.clone())).collect() }
    }

    pub fn diagram_label(&self, tree_vertex: &str) -> Option<&str> {
        self.pairs.get(tree_vertex).map(String::as_str)
    }

    pub fn tree_vertex(&self, diagram_label: &str) -> Option<&str> {
        self.pairs.iter().find(|(_, v)| v.as_str() == diagram_label).map(|(k, _)| k.as_str())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.pairs.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Swaps the images of two tree vertices.
    pub fn swapped(&self, a: &str, b: &str) -> Result<Correspondence> {
        let (ia, ib) = match (self.pairs.get(a), self.pairs.get(b)) {
            (Some(x), Some(y)) => (x.clone(), y.clone()),
            _ => return Err(GaleError::UnknownLabel(format!("{a} or {b}"))),
        };
        let mut pairs = self.pairs.clone();
        pairs.insert(a.to_string(), ib);
        pairs.insert(b.to_string(), ia);
        Ok(Correspondence { pairs })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("correspondence serializes")
    }
}

/// Whether the three components of `t - b` each contain exactly one of
/// `leaves`.
pub fn disjoint_paths(t: &ThreeTree, b: usize, leaves: [usize; 3]) -> bool {
    if t.is_leaf(b) || leaves.contains(&b) {
        return false;
    }
    let comp = t.components_without(b);
    let c: BTreeSet<usize> = leaves.iter().map(|&l| comp[l]).collect();
    c.len() == 3
}

/// Whether `t` is a characteristic tree of `x` under `c`: leaves map to
/// blacks and internal vertices to whites, the leaf cyclic order is the
/// black cycle up to direction, and a white lies in a black triangle exactly
/// when its tree vertex reaches the three leaves by disjoint paths.
pub fn is_characteristic(t: &ThreeTree, x: &Diagram, c: &Correspondence) -> bool {
    characteristic_violation(t, x, c).is_none()
}

pub(crate) fn characteristic_violation(t: &ThreeTree, x: &Diagram, c: &Correspondence) -> Option<String> {
    if c.len() != t.len() || t.len() != x.len() {
        return Some("vertex counts differ".into());
    }
    // tree index -> diagram index
    let mut to_x = Vec::with_capacity(t.len());
    let mut hit = BTreeSet::new();
    for v in 0..t.len() {
        let Some(label) = c.diagram_label(t.label(v)) else {
            return Some(format!("tree vertex {} is unmapped", t.label(v)));
        };
        let Ok(i) = x.index_of(label) else {
            return Some(format!("unknown diagram label {label}"));
        };
        let want = if t.is_leaf(v) { Color::Black } else { Color::White };
        if x.color(i) != want {
            return Some(format!("{} maps to a point of the wrong color", t.label(v)));
        }
        hit.insert(i);
        to_x.push(i);
    }
    if hit.len() != x.len() {
        return Some("correspondence is not a bijection".into());
    }
    if x.black_cycle().is_empty() {
        return Some("blacks are not in convex position".into());
    }
    let leaf_order: Vec<String> =
        t.leaf_walk().into_iter().map(|v| x.label(to_x[v]).to_string()).collect();
    let leaf_order = CyclicOrder::new(leaf_order).expect("bijective image");
    let cycle = CyclicOrder::new(x.black_cycle_labels()).expect("distinct labels");
    if !leaf_order.eq_unoriented(&cycle) {
        return Some("leaf order differs from the black cycle".into());
    }
    let leaves = t.leaves();
    for b in t.internal_vertices() {
        for tri in combinations(leaves.len(), 3) {
            let l = [leaves[tri[0]], leaves[tri[1]], leaves[tri[2]]];
            let inside = x.white_in_triangle(to_x[b], to_x[l[0]], to_x[l[1]], to_x[l[2]]);
            if inside != disjoint_paths(t, b, l) {
                return Some(format!(
                    "white {} vs triangle {}{}{}",
                    t.label(b),
                    t.label(l[0]),
                    t.label(l[1]),
                    t.label(l[2])
                ));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disjoint_paths_examples() {
        let star = ThreeTree::star("c", ["x", "y", "z"]);
        assert!(disjoint_paths(&star, 0, [1, 2, 3]));

        // caterpillar a-b on u, c on w, d-e on z
        let t = ThreeTree::parse("((a,b)u,c,(d,e)z)w").unwrap();
        let idx = |s: &str| t.index_of(s).unwrap();
        assert!(disjoint_paths(&t, idx("u"), [idx("a"), idx("b"), idx("e")]));
        assert!(!disjoint_paths(&t, idx("u"), [idx("c"), idx("d"), idx("e")]));
        assert!(!disjoint_paths(&t, idx("u"), [idx("a"), idx("d"), idx("e")]));
        assert!(disjoint_paths(&t, idx("w"), [idx("a"), idx("c"), idx("e")]));
    }

    #[test]
    fn correspondence_json_is_a_flat_object() {
        let mut m = BTreeMap::new();
        m.insert("x".to_string(), "A1".to_string());
        m.insert("c".to_string(), "B1".to_string());
        let c = Correspondence::new(m).unwrap();
        let v: serde_json::Value = serde_json::from_str(&c.to_json_string()).unwrap();
        assert_eq!(v["x"], "A1");
        assert_eq!(c.tree_vertex("B1"), Some("c"));
        let mut dup = BTreeMap::new();
        dup.insert("x".to_string(), "A1".to_string());
        dup.insert("y".to_string(), "A1".to_string());
        assert!(Correspondence::new(dup).is_err());
    }
}
