//! Neighborly polytopes with `2d + 4` vertices through their plane Gale
//! diagrams: exact geometry, 3-tree parametrisation, face lattices and a
//! brute-force cross-check.

pub mod construct;
pub mod diagram;
pub mod error;
pub mod exactgeom;
pub mod faces;
pub mod oracle;
pub mod subset;
pub mod trees;
pub mod verify;

pub use diagram::{Color, Diagram, DiagramPoint, VertexSubset};
pub use error::{GaleError, Result};
pub use exactgeom::{Orientation, Point2, Rational};
pub use trees::ThreeTree;
