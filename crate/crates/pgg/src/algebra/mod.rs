//! Finite-field arithmetic, matrices, canonical subspaces and reflexive /
//! quadratic forms.

pub mod field;
pub mod form;
pub mod matrix;
pub mod subspace;

pub use field::Field;
pub use form::{FormKind, FormSpec};
pub use matrix::Mat;
pub use subspace::Subspace;
