//! Exact planar geometry over [`Rational`] coordinates.
//!
//! Every predicate here is decided exactly; nothing in the crate touches
//! floating point except SVG rendering.

mod predicates;
mod rational;

pub use predicates::{
    convex_position_cyclic, general_position, orient, point_in_convex_polygon_strict,
    point_in_triangle_strict, relint_intersect, relint_intersect_by_weights, Orientation, Point2,
};
pub use rational::Rational;
