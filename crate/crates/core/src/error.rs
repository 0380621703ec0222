use thiserror::Error;

#[derive(Debug, Error)]
pub enum GaleError {
    #[error("division by zero")]
    DivisionByZero,

    #[error("degenerate triangle: vertices are collinear")]
    DegenerateTriangle,

    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },

    #[error("points do not affinely span the plane")]
    NotSpanning,

    #[error("unknown label {0:?}")]
    UnknownLabel(String),

    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),

    #[error("subset of size {size} outside the allowed range {min}..={max}")]
    SubsetSize { size: usize, min: usize, max: usize },

    #[error("not a t-diagram: {0}")]
    NotTDiagram(String),

    #[error("not a polytope diagram: {0}")]
    NotPolytopeDiagram(String),

    #[error("points are not in general position: {0}")]
    GeneralPosition(String),

    #[error("invalid 3-tree: {0}")]
    InvalidTree(String),

    #[error("lattice is not the face lattice of a T-polytope: {0}")]
    NotTLattice(String),

    #[error("no catalog tree matches the lattice")]
    NoCatalogMatch,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T, E = GaleError> = std::result::Result<T, E>;
