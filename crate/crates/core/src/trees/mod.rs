//! 3-trees: trees whose vertices have degree 1 or 3, with a cyclic order
//! (rotation) of the edges at every degree-3 vertex.
//!
//! A tree is stored as a rotation system: `adj[v]` lists the neighbours of
//! `v`, and for an internal vertex that list *is* its cyclic edge order.

mod count;
mod text;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::error::{GaleError, Result};

pub use count::{catalan, count_t_diagrams};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeTree {
    labels: Vec<String>,
    adj: Vec<Vec<usize>>,
}

/// A sequence considered up to rotation. Equality ignores the starting
/// element; [`CyclicOrder::eq_unoriented`] additionally ignores direction.
#[derive(Clone, Debug, Eq)]
pub struct CyclicOrder(Vec<String>);

impl CyclicOrder {
    pub fn new(items: Vec<String>) -> Result<Self> {
        let distinct: BTreeSet<&String> = items.iter().collect();
        if distinct.len() != items.len() {
            return Err(GaleError::Precondition("cyclic order has repeated elements".into()));
        }
        Ok(CyclicOrder(items))
    }

    pub fn as_slice(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> CyclicOrder {
        let mut v = self.0.clone();
        v.reverse();
        CyclicOrder(v)
    }

    /// Rotation starting at the smallest element.
    pub fn normalized(&self) -> Vec<String> {
        let mut v = self.0.clone();
        if let Some(pos) = v.iter().enumerate().min_by(|a, b| a.1.cmp(b.1)).map(|(i, _)| i) {
            v.rotate_left(pos);
        }
        v
    }

    pub fn eq_unoriented(&self, other: &CyclicOrder) -> bool {
        self == other || *self == other.reversed()
    }

    /// Elements that follow each other: `succ[a] = b`.
    pub fn successor_of(&self, item: &str) -> Option<&str> {
        let pos = self.0.iter().position(|s| s == item)?;
        Some(&self.0[(pos + 1) % self.0.len()])
    }
}

impl PartialEq for CyclicOrder {
    fn eq(&self, other: &Self) -> bool {
        self.normalized() == other.normalized()
    }
}

impl ThreeTree {
    /// Validates a rotation system given as per-vertex neighbour lists.
    pub fn new(labels: Vec<String>, adj: Vec<Vec<usize>>) -> Result<Self> {
        let n = labels.len();
        let bad = |msg: String| Err(GaleError::InvalidTree(msg));
        if adj.len() != n {
            return bad("label and adjacency counts differ".into());
        }
        if n < 4 {
            return bad(format!("a 3-tree needs at least 4 vertices, got {n}"));
        }
        let distinct: BTreeSet<&String> = labels.iter().collect();
        if distinct.len() != n {
            return bad("duplicate vertex label".into());
        }
        let mut edges = 0;
        for (v, nbrs) in adj.iter().enumerate() {
            if nbrs.len() != 1 && nbrs.len() != 3 {
                return bad(format!("vertex {} has degree {}", labels[v], nbrs.len()));
            }
            let distinct: BTreeSet<&usize> = nbrs.iter().collect();
            if distinct.len() != nbrs.len() {
                return bad(format!("vertex {} has a repeated neighbour", labels[v]));
            }
            for &u in nbrs {
                if u >= n || u == v || !adj[u].contains(&v) {
                    return bad(format!("edge list at {} is not symmetric", labels[v]));
                }
            }
            edges += nbrs.len();
        }
        if edges / 2 != n - 1 {
            return bad("edge count is not |V| - 1".into());
        }
        let t = ThreeTree { labels, adj };
        if t.component_sizes_without(None).len() != 1 {
            return bad("tree is not connected".into());
        }
        Ok(t)
    }

    /// Builds a tree from vertex labels, undirected edges and the cyclic
    /// neighbour order at each internal vertex.
    pub fn from_parts(
        vertices: &[&str],
        edges: &[(&str, &str)],
        rotation: &BTreeMap<&str, Vec<&str>>,
    ) -> Result<Self> {
        let labels: Vec<String> = vertices.iter().map(|s| s.to_string()).collect();
        let index = |s: &str| {
            labels
                .iter()
                .position(|l| l == s)
                .ok_or_else(|| GaleError::InvalidTree(format!("unknown vertex {s:?}")))
        };
        let mut adj = vec![Vec::new(); labels.len()];
        for &(a, b) in edges {
            let (ia, ib) = (index(a)?, index(b)?);
            adj[ia].push(ib);
            adj[ib].push(ia);
        }
        for (v, nbrs) in adj.iter_mut().enumerate() {
            if nbrs.len() == 3 {
                let order = rotation
                    .get(labels[v].as_str())
                    .ok_or_else(|| GaleError::InvalidTree(format!("no rotation at {}", labels[v])))?;
                let ordered: Vec<usize> = order.iter().map(|s| index(s)).collect::<Result<_>>()?;
                let mut a = ordered.clone();
                a.sort_unstable();
                let mut b = nbrs.clone();
                b.sort_unstable();
                if a != b {
                    return Err(GaleError::InvalidTree(format!(
                        "rotation at {} does not cover its edges",
                        labels[v]
                    )));
                }
                *nbrs = ordered;
            }
        }
        ThreeTree::new(labels, adj)
    }

    /// The 4-vertex tree: a centre joined to three leaves in the given order.
    pub fn star(center: &str, leaves: [&str; 3]) -> ThreeTree {
        let labels = vec![center.to_string(), leaves[0].into(), leaves[1].into(), leaves[2].into()];
        ThreeTree::new(labels, vec![vec![1, 2, 3], vec![0], vec![0], vec![0]]).expect("star is valid")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Neighbours of `v`, in rotation order for internal vertices.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.adj[v].len() == 1
    }

    pub fn leaves(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.is_leaf(v)).collect()
    }

    pub fn internal_vertices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| !self.is_leaf(v)).collect()
    }

    pub fn num_leaves(&self) -> usize {
        self.leaves().len()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (v, nbrs) in self.adj.iter().enumerate() {
            out.extend(nbrs.iter().filter(|&&u| u > v).map(|&u| (v, u)));
        }
        out
    }

    /// The neighbour that follows `from` in the rotation at `v`.
    fn rotation_successor(&self, v: usize, from: usize) -> usize {
        let nbrs = &self.adj[v];
        let k = nbrs.iter().position(|&u| u == from).expect("from is a neighbour");
        nbrs[(k + 1) % nbrs.len()]
    }

    /// Leaves in the order met by the boundary walk of the plane tree:
    /// leaving a vertex by the rotation successor of the edge it was
    /// entered through.
    pub fn leaf_cyclic_order(&self) -> CyclicOrder {
        CyclicOrder(self.leaf_walk().into_iter().map(|v| self.labels[v].clone()).collect())
    }

    pub(crate) fn leaf_walk(&self) -> Vec<usize> {
        let start = self.leaves()[0];
        let mut order = vec![start];
        let (mut prev, mut cur) = (start, self.adj[start][0]);
        loop {
            if self.is_leaf(cur) {
                if cur == start {
                    break;
                }
                order.push(cur);
                std::mem::swap(&mut prev, &mut cur);
                continue;
            }
            let next = self.rotation_successor(cur, prev);
            prev = cur;
            cur = next;
        }
        order
    }

    /// Every rotation reversed.
    pub fn mirror(&self) -> ThreeTree {
        let adj = self
            .adj
            .iter()
            .map(|nbrs| {
                let mut r = nbrs.clone();
                r.reverse();
                r
            })
            .collect();
        ThreeTree { labels: self.labels.clone(), adj }
    }

    /// Internal vertices adjacent to two leaves.
    pub fn pre_leaf_vertices(&self) -> Vec<usize> {
        self.internal_vertices()
            .into_iter()
            .filter(|&v| self.adj[v].iter().filter(|&&u| self.is_leaf(u)).count() >= 2)
            .collect()
    }

    /// Sizes (and members) of the components left after deleting `removed`.
    fn component_sizes_without(&self, removed: Option<usize>) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.len()];
        let mut out = Vec::new();
        for s in 0..self.len() {
            if Some(s) == removed || comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &u in &self.adj[v] {
                    if Some(u) != removed && comp[u] == usize::MAX {
                        comp[u] = id;
                        members.push(u);
                        queue.push_back(u);
                    }
                }
            }
            out.push(members);
        }
        out
    }

    /// Component index of every vertex after deleting `v` (`usize::MAX` for
    /// `v` itself).
    pub fn components_without(&self, v: usize) -> Vec<usize> {
        let mut comp = vec![usize::MAX; self.len()];
        for (id, members) in self.component_sizes_without(Some(v)).into_iter().enumerate() {
            for m in members {
                comp[m] = id;
            }
        }
        comp
    }

    /// Deletes the two leaves hanging off `v`, which becomes a leaf.
    pub fn contract_cherry(&self, v: usize) -> Result<ThreeTree> {
        let leaves: Vec<usize> = self.adj[v].iter().copied().filter(|&u| self.is_leaf(u)).collect();
        if self.is_leaf(v) || leaves.len() < 2 {
            return Err(GaleError::Precondition(format!("{} is not a pre-leaf vertex", self.labels[v])));
        }
        if self.len() == 4 {
            return Err(GaleError::Precondition("cannot contract the 4-vertex tree".into()));
        }
        let (x, y) = (leaves[0], leaves[1]);
        let keep: Vec<usize> = (0..self.len()).filter(|&u| u != x && u != y).collect();
        let remap = |u: usize| keep.iter().position(|&k| k == u).expect("kept");
        let labels = keep.iter().map(|&u| self.labels[u].clone()).collect();
        let adj = keep
            .iter()
            .map(|&u| self.adj[u].iter().filter(|&&w| w != x && w != y).map(|&w| remap(w)).collect())
            .collect();
        ThreeTree::new(labels, adj)
    }

    /// Turns leaf `leaf` into an internal vertex named `new_label` with two
    /// new leaves; the boundary walk meets `first` immediately before
    /// `second`.
    pub fn split_leaf(&self, leaf: usize, new_label: &str, first: &str, second: &str) -> Result<ThreeTree> {
        if !self.is_leaf(leaf) {
            return Err(GaleError::Precondition(format!("{} is not a leaf", self.labels[leaf])));
        }
        let mut labels = self.labels.clone();
        labels[leaf] = new_label.to_string();
        let (a, b) = (labels.len(), labels.len() + 1);
        labels.push(first.to_string());
        labels.push(second.to_string());
        let mut adj = self.adj.clone();
        let parent = adj[leaf][0];
        adj[leaf] = vec![parent, a, b];
        adj.push(vec![leaf]);
        adj.push(vec![leaf]);
        ThreeTree::new(labels, adj)
    }

    /// Nested-parenthesis encoding of the subtree entered from `parent`.
    fn encode_from(&self, v: usize, parent: usize, out: &mut String) {
        if self.is_leaf(v) {
            out.push('.');
            return;
        }
        let nbrs = &self.adj[v];
        let k = nbrs.iter().position(|&u| u == parent).expect("parent is a neighbour");
        out.push('(');
        self.encode_from(nbrs[(k + 1) % 3], v, out);
        out.push(',');
        self.encode_from(nbrs[(k + 2) % 3], v, out);
        out.push(')');
    }

    fn encode_rooted(&self, root: usize, start: usize) -> String {
        let nbrs = &self.adj[root];
        let mut out = String::from("(");
        for k in 0..3 {
            if k > 0 {
                out.push(',');
            }
            self.encode_from(nbrs[(start + k) % 3], root, &mut out);
        }
        out.push(')');
        out
    }

    /// The minimal rooted encoding and where it is attained.
    fn min_rooting(&self) -> (String, usize, usize) {
        let mut best: Option<(String, usize, usize)> = None;
        for r in self.internal_vertices() {
            for s in 0..3 {
                let code = self.encode_rooted(r, s);
                if best.as_ref().is_none_or(|(b, _, _)| code < *b) {
                    best = Some((code, r, s));
                }
            }
        }
        best.expect("a 3-tree has an internal vertex")
    }

    /// Label-free code, equal for two trees iff they are isomorphic as
    /// 3-trees (optionally also allowing the mirror image).
    pub fn canonical_code(&self, up_to_mirror: bool) -> String {
        let own = self.min_rooting().0;
        if !up_to_mirror {
            return own;
        }
        own.min(self.mirror().min_rooting().0)
    }

    pub fn is_isomorphic(&self, other: &ThreeTree, up_to_mirror: bool) -> bool {
        self.canonical_code(up_to_mirror) == other.canonical_code(up_to_mirror)
    }

    /// The tree relabelled in canonical order: internal vertices `v1, v2, ...`
    /// in preorder of the minimal rooting, leaves `x1, x2, ...` in the order
    /// they appear. With `up_to_mirror` the orientation with the smaller
    /// code is used.
    pub fn canonical_form(&self, up_to_mirror: bool) -> ThreeTree {
        let base = if up_to_mirror {
            let m = self.mirror();
            if m.min_rooting().0 < self.min_rooting().0 {
                m
            } else {
                self.clone()
            }
        } else {
            self.clone()
        };
        let (_, root, start) = base.min_rooting();
        let mut order = Vec::with_capacity(base.len());
        base.preorder(root, start, &mut order);
        let (mut vi, mut xi) = (0, 0);
        let mut new_label = vec![String::new(); base.len()];
        for &v in &order {
            new_label[v] = if base.is_leaf(v) {
                xi += 1;
                format!("x{xi}")
            } else {
                vi += 1;
                format!("v{vi}")
            };
        }
        let new_index: Vec<usize> = {
            let mut inv = vec![0; base.len()];
            for (k, &v) in order.iter().enumerate() {
                inv[v] = k;
            }
            inv
        };
        let labels = order.iter().map(|&v| new_label[v].clone()).collect();
        // lists start at the root's start edge, elsewhere at the parent edge
        let adj = order
            .iter()
            .map(|&v| {
                let mut nbrs: Vec<usize> = base.adj[v].iter().map(|&u| new_index[u]).collect();
                let first = if v == root {
                    start
                } else {
                    (0..nbrs.len()).min_by_key(|&k| nbrs[k]).expect("non-empty")
                };
                nbrs.rotate_left(first);
                nbrs
            })
            .collect();
        ThreeTree { labels, adj }
    }

    /// Vertices in preorder of the rooting at `root` starting from
    /// neighbour `start`, children in rotation order after the parent edge.
    fn preorder(&self, root: usize, start: usize, out: &mut Vec<usize>) {
        out.push(root);
        let nbrs = &self.adj[root];
        for k in 0..3 {
            self.preorder_from(nbrs[(start + k) % 3], root, out);
        }
    }

    fn preorder_from(&self, v: usize, parent: usize, out: &mut Vec<usize>) {
        out.push(v);
        if self.is_leaf(v) {
            return;
        }
        let nbrs = &self.adj[v];
        let k = nbrs.iter().position(|&u| u == parent).expect("parent is a neighbour");
        self.preorder_from(nbrs[(k + 1) % 3], v, out);
        self.preorder_from(nbrs[(k + 2) % 3], v, out);
    }

    /// Graphviz rendering: leaves boxed, rotations as comment lines.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph three_tree {\n");
        for v in self.internal_vertices() {
            let order: Vec<&str> = self.adj[v].iter().map(|&u| self.labels[u].as_str()).collect();
            out.push_str(&format!("  // rotation {}: {}\n", self.labels[v], order.join(" ")));
        }
        for v in 0..self.len() {
            let shape = if self.is_leaf(v) { "box" } else { "circle" };
            out.push_str(&format!("  \"{}\" [shape={shape}];\n", self.labels[v]));
        }
        for (a, b) in self.edges() {
            out.push_str(&format!("  \"{}\" -- \"{}\";\n", self.labels[a], self.labels[b]));
        }
        out.push_str("}\n");
        out
    }
}

impl fmt::Display for ThreeTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// All 3-trees with `num_leaves` leaves, one per isomorphism class up to
/// mirror, canonically labelled and sorted by canonical code.
///
/// Grown from the 3-leaf star by repeatedly replacing a leaf with an
/// internal vertex carrying two new leaves.
pub fn enumerate_trees(num_leaves: usize) -> Result<Vec<ThreeTree>> {
    if num_leaves < 3 {
        return Err(GaleError::Precondition(format!("need at least 3 leaves, got {num_leaves}")));
    }
    let star = ThreeTree::star("c", ["a", "b", "e"]);
    let mut level: BTreeMap<String, ThreeTree> = BTreeMap::new();
    level.insert(star.canonical_code(true), star.canonical_form(true));
    for _ in 3..num_leaves {
        let mut next = BTreeMap::new();
        for t in level.values() {
            for leaf in t.leaves() {
                for (p, q) in [("p", "q"), ("q", "p")] {
                    let grown = t.split_leaf(leaf, "_new", p, q)?;
                    next.entry(grown.canonical_code(true)).or_insert_with(|| grown.canonical_form(true));
                }
            }
        }
        level = next;
    }
    Ok(level.into_values().collect())
}
