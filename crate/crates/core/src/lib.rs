//! Exact computation of commutative 2-cocycles and related spaces of
//! bilinear forms on finite-dimensional Lie algebras over `Q` and `F_p`.

pub mod algebra;
pub mod constructors;
pub mod document;
pub mod error;
pub mod forms;
pub mod linalg;
pub mod scalar;
pub mod verify;

pub use algebra::{Algebra, Flags, Subspace};
pub use error::{Error, Result};
pub use scalar::{FieldSpec, Scalar};
