//! Exact linear algebra, symmetric 3x3 matrices and ternary forms.

pub mod form;
pub mod matrix;
pub mod resultant;
pub mod subspace;
pub mod symmat;

pub use form::{interpolate_ternary_form, Interpolated, TernaryForm};
pub use matrix::Matrix;
pub use resultant::{macaulay_resultant, MacaulayResultant};
pub use subspace::LinSubspace;
pub use symmat::SymMat3;
