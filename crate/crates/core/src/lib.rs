pub mod algebra;
pub mod automorphisms;
pub mod bch;
pub mod constructions;
pub mod derivations;
pub mod error;
pub mod exactmath;
pub mod exec;
pub mod finite;
pub mod invariants;
pub mod local_rings;

pub use algebra::{verify_automorphism, verify_homomorphism, AdditiveMap, Algebra, AlgebraBuilder, AxiomReport, Element};
pub use error::{Error, Result};
pub use exactmath::{FieldSpec, Matrix, Scalar, Subspace};
pub use exec::Execution;
