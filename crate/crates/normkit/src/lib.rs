//! Normal surface machinery for triangulated knot and link manifolds.
//!
//! Coordinates are exact throughout. Cone computations run on arbitrary-precision integers;
//! normal vectors are stored as `u64` per coordinate.

mod cone;
mod ratio;
pub mod bounds;
pub mod error;
pub mod filling;
pub mod fixtures;
pub mod normal;
pub mod search;
pub mod slopes;
pub mod surface;
pub mod tri;

pub use error::{Error, Result};
pub use normal::{ConeBasis, NormalVector};
pub use slopes::Slope;
pub use surface::SurfaceGeometry;
pub use tri::{BoundaryComponent, GluingTable, Triangulation};
