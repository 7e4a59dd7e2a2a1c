//! Exact scalar fields and dense linear algebra over them.

pub mod field;
pub mod matrix;
pub mod poly;
pub mod subspace;
pub mod zpoly;

pub use field::{BaseField, FieldKind, FieldSpec, RatFn, Scalar};
pub use matrix::{Matrix, Rref};
pub use subspace::{unit_vector, Subspace};
