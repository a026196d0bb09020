//! Trigonometry of triangles in the complex Hermitian Cayley-Klein-Dickson spaces.

pub mod algebra;
pub mod classical;
pub mod contraction;
pub mod error;
pub mod group;
pub mod laws;
pub mod scalars;
pub mod triangle;

pub use algebra::{AlgebraElement, CdMat, Generator};
pub use error::{CkdError, Result};
pub use group::{GroupElement, Ray};
pub use scalars::{Cd, CdScalar, SpaceLabels, DEFAULT_TOL};
pub use triangle::{TriangleData, TriangleRecord};
