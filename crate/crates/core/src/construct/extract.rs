//! Characteristic-tree extraction: strip a (black, adjacent white) pair,
//! recurse, then hang the two blacks of the stripped side off the white.

use super::Correspondence;
use crate::diagram::Diagram;
use crate::error::{GaleError, Result};
use crate::trees::ThreeTree;

/// Which side-adjacent white to eliminate at each step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum WhiteChoice {
    #[default]
    First,
    Last,
}

pub fn extract_tree(x: &Diagram) -> Result<(ThreeTree, Correspondence)> {
    extract_tree_with(x, WhiteChoice::First)
}

/// The characteristic tree of a t-diagram. Tree vertices carry the diagram
/// labels, so the correspondence is the identity; the boundary walk of the
/// tree meets the leaves in clockwise black order.
pub fn extract_tree_with(x: &Diagram, choice: WhiteChoice) -> Result<(ThreeTree, Correspondence)> {
    if let Some(why) = x.t_diagram_violation() {
        return Err(GaleError::NotTDiagram(why));
    }
    let t = extract_rec(x, choice)?;
    let c = Correspondence::identity(&t);
    Ok((t, c))
}

fn extract_rec(x: &Diagram, choice: WhiteChoice) -> Result<ThreeTree> {
    if x.d() == 0 {
        let cycle = x.black_cycle_labels();
        let white = x.label(x.whites()[0]);
        return Ok(ThreeTree::star(white, [&cycle[0], &cycle[1], &cycle[2]]));
    }
    let adjacent: Vec<(usize, usize)> =
        x.whites().into_iter().filter_map(|w| x.adjacent_side(w).map(|i| (w, i))).collect();
    let picked = match choice {
        WhiteChoice::First => adjacent.first(),
        WhiteChoice::Last => adjacent.last(),
    };
    let &(w, i) = picked.ok_or_else(|| GaleError::Internal("no white is adjacent to a side".into()))?;
    let a_i = x.label(x.cycle_at(i as isize)).to_string();
    let a_next = x.label(x.cycle_at(i as isize + 1)).to_string();
    let smaller = x.remove_pair(&a_i, x.label(w))?;
    let t = extract_rec(&smaller, choice)?;
    let leaf = t
        .index_of(&a_next)
        .ok_or_else(|| GaleError::Internal(format!("{a_next} missing from the smaller tree")))?;
    t.split_leaf(leaf, x.label(w), &a_i, &a_next)
}
