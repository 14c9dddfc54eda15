use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed gluing table: {0}")]
    MalformedTable(String),
    #[error("gluing at tetrahedron {0} face {1} is not matched by its partner")]
    InvolutionViolation(usize, u8),
    #[error("face {1} of tetrahedron {0} is glued to itself")]
    SelfGluedFaceIdentity(usize, u8),
    #[error("edge class {0} is not on the boundary")]
    EdgeNotOnBoundary(usize),
    #[error("edge class {0} is bounded by a single boundary triangle on both sides")]
    AdjacentTrianglesNotDistinct(usize),
    #[error("boundary component {0} is not a one-vertex torus")]
    NotOneVertexTorus(usize),
    #[error("no boundary component {0}")]
    NoSuchBoundary(usize),
    #[error("vector has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("vectors use different quadrilateral types in tetrahedron {0}")]
    QuadIncompatible(usize),
    #[error("vector is not an admissible normal surface")]
    NotAdmissible,
    #[error("curve is not connected")]
    DisconnectedCurve,
    #[error("slopes live on different boundary components")]
    BoundaryMismatch,
    #[error("slope is trivial")]
    TrivialSlope,
    #[error("surface has a boundary curve on the filled boundary that is not the meridian")]
    NotMeridional,
    #[error("vector does not restrict to meridian disks in the filling")]
    NotCapped,
    #[error("vector is not a nonnegative combination of the basis")]
    Unrepresentable,
    #[error("decomposition search exceeded its budget")]
    DecompositionBudgetExceeded,
    #[error("enumeration exceeded its budget ({0})")]
    ResourceBudgetExceeded(String),
    #[error("{0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
