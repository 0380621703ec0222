//! Recovering a T-diagram's combinatorics from the polytope's face lattice
//! alone: point colors from remarkable edges and non-face count parities,
//! then the characteristic tree by matching against the built catalog.

use std::collections::{BTreeMap, BTreeSet};

use super::{face_lattice, FaceLattice, NonfaceTable};
use crate::construct::build_diagram;
use crate::diagram::{Color, Diagram};
use crate::error::{GaleError, Result};
use crate::subset::binomial;
use crate::trees::{enumerate_trees, ThreeTree};

fn not_t(msg: impl Into<String>) -> GaleError {
    GaleError::NotTLattice(msg.into())
}

/// Edges (as index pairs) lying in no minimal non-face.
fn remarkable_pairs(l: &FaceLattice, table: &NonfaceTable) -> Vec<(usize, usize)> {
    let n = l.labels().len();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let m = (1u32 << a) | (1 << b);
            if l.contains(m) && table.count_containing(m) == 0 {
                out.push((a, b));
            }
        }
    }
    out
}

/// Point colors of the T-diagram behind a face lattice.
///
/// A vertex on two remarkable edges is white and its two partners `x < y`
/// are black. On every other remarkable edge, the endpoint `v` for which
/// `N(x, v) - N(y, v)` has parity different from `d + 1` is black, the
/// other white. Vertices on no remarkable edge are white.
pub fn recover_colors(l: &FaceLattice, d: usize) -> Result<BTreeMap<String, Color>> {
    if d != l.d() {
        return Err(GaleError::Precondition(format!("lattice has d = {}, not {d}", l.d())));
    }
    if d < 2 {
        return Err(GaleError::Precondition("color recovery needs d >= 2".into()));
    }
    recover_indices(l, &l.minimal_nonfaces())
        .map(|colors| colors.into_iter().enumerate().map(|(i, c)| (l.labels()[i].clone(), c)).collect())
}

fn recover_indices(l: &FaceLattice, table: &NonfaceTable) -> Result<Vec<Color>> {
    let n = l.labels().len();
    let d = l.d();
    let pairs = remarkable_pairs(l, table);
    let mut partners = vec![Vec::new(); n];
    for &(a, b) in &pairs {
        partners[a].push(b);
        partners[b].push(a);
    }
    let w = (0..n)
        .filter(|&v| partners[v].len() == 2)
        .min_by(|&a, &b| l.labels()[a].cmp(&l.labels()[b]))
        .ok_or_else(|| not_t("no vertex lies on two remarkable edges"))?;
    let (mut x, mut y) = (partners[w][0], partners[w][1]);
    if l.labels()[y] < l.labels()[x] {
        std::mem::swap(&mut x, &mut y);
    }
    let mut colors = vec![Color::White; n];
    colors[x] = Color::Black;
    colors[y] = Color::Black;
    let odd_from_d = |v: usize| {
        let diff = table.count_pair(x, v) as i64 - table.count_pair(y, v) as i64;
        diff.rem_euclid(2) != ((d + 1) % 2) as i64
    };
    for &(a, b) in &pairs {
        if a == w || b == w {
            continue;
        }
        if [a, b].iter().any(|v| *v == x || *v == y) {
            return Err(not_t("a black partner of the two-edge vertex has a second remarkable edge"));
        }
        match (odd_from_d(a), odd_from_d(b)) {
            (true, false) => colors[a] = Color::Black,
            (false, true) => colors[b] = Color::Black,
            _ => return Err(not_t("parities do not single out a black endpoint")),
        }
    }
    let blacks = colors.iter().filter(|&&c| c == Color::Black).count();
    if blacks != d + 3 {
        return Err(not_t(format!("recovered {blacks} blacks, expected {}", d + 3)));
    }
    Ok(colors)
}

/// The black cycle of a T-lattice: adjacent blacks are exactly those pairs
/// in the maximal number `C(d + 1, 2)` of minimal non-faces.
fn black_cycle(l: &FaceLattice, table: &NonfaceTable, colors: &[Color]) -> Result<Vec<usize>> {
    let blacks: Vec<usize> = (0..colors.len()).filter(|&i| colors[i] == Color::Black).collect();
    let max = binomial(l.d() as u64 + 1, 2) as usize;
    let nbrs: BTreeMap<usize, Vec<usize>> = blacks
        .iter()
        .map(|&a| (a, blacks.iter().copied().filter(|&b| b != a && table.count_pair(a, b) == max).collect()))
        .collect();
    if nbrs.values().any(|v: &Vec<usize>| v.len() != 2) {
        return Err(not_t("black adjacency is not a cycle"));
    }
    let mut cycle = vec![blacks[0]];
    let mut prev = blacks[0];
    let mut cur = nbrs[&blacks[0]][0];
    while cur != blacks[0] {
        cycle.push(cur);
        let next = if nbrs[&cur][0] == prev { nbrs[&cur][1] } else { nbrs[&cur][0] };
        prev = cur;
        cur = next;
        if cycle.len() > blacks.len() {
            break;
        }
    }
    if cycle.len() != blacks.len() {
        return Err(not_t("black adjacency splits into several cycles"));
    }
    Ok(cycle)
}

/// A lattice reduced to what the matching needs: colors, black cycle and,
/// per white, its non-face counts against the blacks in cycle order.
struct Profile {
    lattice: FaceLattice,
    cycle: Vec<usize>,
    whites: Vec<usize>,
    signature: BTreeMap<usize, Vec<usize>>,
}

impl Profile {
    fn new(lattice: FaceLattice) -> Result<Profile> {
        let table = lattice.minimal_nonfaces();
        let colors = recover_indices(&lattice, &table)?;
        let cycle = black_cycle(&lattice, &table, &colors)?;
        let whites: Vec<usize> = (0..colors.len()).filter(|&i| colors[i] == Color::White).collect();
        let signature = whites
            .iter()
            .map(|&w| (w, cycle.iter().map(|&a| table.count_pair(a, w)).collect()))
            .collect();
        Ok(Profile { lattice, cycle, whites, signature })
    }

    /// A vertex map onto `other` carrying facets to facets, if any.
    fn isomorphism_to(&self, other: &Profile) -> Option<Vec<usize>> {
        let n = self.cycle.len();
        if n != other.cycle.len() || self.whites.len() != other.whites.len() {
            return None;
        }
        let target: BTreeSet<u32> = other.lattice.facets().clone();
        for reflect in [false, true] {
            for shift in 0..n {
                let f: Vec<usize> = (0..n).map(|k| if reflect { (shift + n - k) % n } else { (shift + k) % n }).collect();
                let mut map = vec![usize::MAX; self.lattice.labels().len()];
                for k in 0..n {
                    map[self.cycle[k]] = other.cycle[f[k]];
                }
                // candidate whites: same counts against corresponding blacks
                let cands: Vec<Vec<usize>> = self
                    .whites
                    .iter()
                    .map(|w| {
                        let sig = &self.signature[w];
                        other
                            .whites
                            .iter()
                            .copied()
                            .filter(|v| {
                                let osig = &other.signature[v];
                                (0..n).all(|k| sig[k] == osig[f[k]])
                            })
                            .collect()
                    })
                    .collect();
                if self.assign_whites(0, &cands, &mut map, &target) {
                    return Some(map);
                }
            }
        }
        None
    }

    fn assign_whites(&self, s: usize, cands: &[Vec<usize>], map: &mut [usize], target: &BTreeSet<u32>) -> bool {
        if s == self.whites.len() {
            return self.lattice.facets().iter().all(|&f| {
                let image = (0..32).filter(|i| f & (1 << i) != 0).fold(0u32, |m, i| m | (1 << map[i]));
                target.contains(&image)
            });
        }
        for &v in &cands[s] {
            if map.contains(&v) {
                continue;
            }
            map[self.whites[s]] = v;
            if self.assign_whites(s + 1, cands, map, target) {
                return true;
            }
            map[self.whites[s]] = usize::MAX;
        }
        false
    }
}

/// Built diagrams of every tree with `d + 3` leaves, with their lattices.
pub struct TreeCatalog {
    d: usize,
    entries: Vec<(ThreeTree, Diagram, Profile)>,
}

impl TreeCatalog {
    pub fn new(d: usize) -> Result<TreeCatalog> {
        if d < 2 {
            return Err(GaleError::Precondition("tree identification needs d >= 2".into()));
        }
        let entries = enumerate_trees(d + 3)?
            .into_iter()
            .map(|t| {
                let (x, _) = build_diagram(&t)?;
                let profile = Profile::new(face_lattice(&x)?)?;
                Ok((t, x, profile))
            })
            .collect::<Result<_>>()?;
        Ok(TreeCatalog { d, entries })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn diagrams(&self) -> impl Iterator<Item = (&ThreeTree, &Diagram, &FaceLattice)> {
        self.entries.iter().map(|(t, x, p)| (t, x, &p.lattice))
    }

    /// The catalog tree whose lattice is isomorphic to `l`.
    pub fn identify(&self, l: &FaceLattice) -> Result<ThreeTree> {
        if l.d() != self.d {
            return Err(GaleError::Precondition(format!("lattice has d = {}, catalog {}", l.d(), self.d)));
        }
        let profile = Profile::new(l.clone())?;
        self.entries
            .iter()
            .find(|(_, _, p)| profile.isomorphism_to(p).is_some())
            .map(|(t, _, _)| t.clone())
            .ok_or(GaleError::NoCatalogMatch)
    }
}

/// The 3-tree (up to mirror) of the T-polytope with face lattice `l`.
pub fn identify_tree(l: &FaceLattice, d: usize) -> Result<ThreeTree> {
    if l.d() != d {
        return Err(GaleError::Precondition(format!("lattice has d = {}, not {d}", l.d())));
    }
    TreeCatalog::new(d)?.identify(l)
}
