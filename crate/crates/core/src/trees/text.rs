//! Nested-parenthesis text form: `((x,y),z,w)`.
//!
//! The root is an internal vertex with three children in rotation order;
//! every other internal vertex has two children, which continue its rotation
//! after the edge to the parent. Internal vertices may carry a label after
//! the closing parenthesis (`(x,y)v2`); unlabelled ones are named `v1, v2,
//! ...` in preorder.

use super::ThreeTree;
use crate::error::{GaleError, Result};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    labels: Vec<Option<String>>,
    adj: Vec<Vec<usize>>,
    internal_seen: usize,
    internal_ids: Vec<(usize, usize)>,
}

fn is_label_byte(b: u8) -> bool {
    !matches!(b, b'(' | b')' | b',' | b';') && !b.is_ascii_whitespace()
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(GaleError::Parse(format!("tree text, byte {}: {msg}", self.pos)))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(&format!("expected {:?}", b as char))
        }
    }

    fn label(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && is_label_byte(self.src[self.pos]) {
            self.pos += 1;
        }
        (self.pos > start).then(|| String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn new_vertex(&mut self, label: Option<String>) -> usize {
        self.labels.push(label);
        self.adj.push(Vec::new());
        self.labels.len() - 1
    }

    /// Parses one node whose parent is `parent`; returns its index.
    fn node(&mut self, parent: Option<usize>) -> Result<usize> {
        if self.peek() != Some(b'(') {
            let Some(name) = self.label() else {
                return self.err("expected a leaf label or '('");
            };
            let v = self.new_vertex(Some(name));
            if let Some(p) = parent {
                self.adj[v].push(p);
            }
            return Ok(v);
        }
        self.pos += 1;
        let v = self.new_vertex(None);
        self.internal_seen += 1;
        self.internal_ids.push((v, self.internal_seen));
        if let Some(p) = parent {
            self.adj[v].push(p);
        }
        let arity = if parent.is_some() { 2 } else { 3 };
        for k in 0..arity {
            if k > 0 {
                self.expect(b',')?;
            }
            let c = self.node(Some(v))?;
            self.adj[v].push(c);
        }
        if self.peek() == Some(b',') {
            return self.err(&format!("internal vertex has more than {arity} children"));
        }
        self.expect(b')')?;
        if let Some(name) = self.label() {
            self.labels[v] = Some(name);
        }
        Ok(v)
    }
}

impl ThreeTree {
    pub fn parse(text: &str) -> Result<ThreeTree> {
        let mut p = Parser {
            src: text.as_bytes(),
            pos: 0,
            labels: Vec::new(),
            adj: Vec::new(),
            internal_seen: 0,
            internal_ids: Vec::new(),
        };
        if p.peek() != Some(b'(') {
            return p.err("the root must be an internal vertex");
        }
        p.node(None)?;
        if p.peek() == Some(b';') {
            p.pos += 1;
        }
        if p.peek().is_some() {
            return p.err("trailing input");
        }
        for &(v, k) in &p.internal_ids {
            if p.labels[v].is_none() {
                p.labels[v] = Some(format!("v{k}"));
            }
        }
        let labels = p.labels.into_iter().map(|l| l.expect("assigned")).collect();
        ThreeTree::new(labels, p.adj).map_err(|e| GaleError::Parse(e.to_string()))
    }

    /// Text form rooted at the minimal rooting; internal labels omitted.
    pub fn to_text(&self) -> String {
        let (_, root, start) = self.min_rooting();
        let mut out = String::from("(");
        let nbrs = &self.adj[root];
        for k in 0..3 {
            if k > 0 {
                out.push(',');
            }
            self.write_from(nbrs[(start + k) % 3], root, &mut out);
        }
        out.push(')');
        out
    }

    fn write_from(&self, v: usize, parent: usize, out: &mut String) {
        if self.is_leaf(v) {
            out.push_str(&self.labels[v]);
            return;
        }
        let nbrs = &self.adj[v];
        let k = nbrs.iter().position(|&u| u == parent).expect("parent is a neighbour");
        out.push('(');
        self.write_from(nbrs[(k + 1) % 3], v, out);
        out.push(',');
        self.write_from(nbrs[(k + 2) % 3], v, out);
        out.push(')');
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_example() {
        let t = ThreeTree::parse("((x,y),z,w)").unwrap();
        assert_eq!(t.len(), 6);
        assert_eq!(t.num_leaves(), 4);
        assert_eq!(t.labels(), &["v1", "v2", "x", "y", "z", "w"]);
        let order: Vec<String> = t.leaf_cyclic_order().normalized();
        assert_eq!(order, vec!["w", "x", "y", "z"]);
    }

    #[test]
    fn accepts_internal_labels_and_whitespace() {
        let t = ThreeTree::parse(" ( (x , y)B2 , z, w )B1 ;").unwrap();
        assert_eq!(t.index_of("B1"), Some(0));
        assert_eq!(t.index_of("B2"), Some(1));
    }

    #[test]
    fn rejects_malformed_text() {
        for bad in ["", "x", "(x,y)", "(x,y,z,w)", "((x,y,u),z,w)", "((x,y),z,w", "((x,y),z,w)q)", "((x,x),z,w)"] {
            assert!(ThreeTree::parse(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn text_round_trip_preserves_the_tree() {
        let t = ThreeTree::parse("((a,b),c,(d,(e,f)))").unwrap();
        let again = ThreeTree::parse(&t.to_text()).unwrap();
        assert!(again.is_isomorphic(&t, false));
        assert_eq!(again.leaf_cyclic_order(), t.leaf_cyclic_order());
    }
}
