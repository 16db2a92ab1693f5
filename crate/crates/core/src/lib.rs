//! Functional codes on Hermitian varieties over GF(q²).
//!
//! The crate is layered: finite-field arithmetic, projective space,
//! Hermitian matrices and varieties, homogeneous forms, the codes they
//! define, closed-form bounds, an exhaustive oracle, and explicit
//! extremal configurations.

pub mod bounds;
pub mod codes;
pub mod error;
pub mod export;
pub mod extremal;
pub mod field;
pub mod forms;
pub mod hermitian;
pub mod linalg;
pub mod oracle;
pub mod proj;

pub use error::{Error, Result};
pub use field::{make_field, FieldCtx, FieldDescriptor, FieldElement};
pub use forms::{HomogeneousForm, MonomialBasis, Shard};
pub use hermitian::{make_standard_cone, HermitianMatrix, HermitianVariety};
pub use linalg::Matrix;
pub use proj::{Hyperplane, ProjPoint};
