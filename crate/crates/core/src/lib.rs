//! Geometry of the lagrangian grassmannian of a six-dimensional symplectic
//! space, embedded in `P^13`, and of its codimension-three linear sections.
//!
//! The geometric core is generic over [`Scalar`]: the same routines run on
//! exact rationals ([`Rat`]) and on complex floats of arbitrary precision
//! ([`CBig`]). The aliases below fix the two instantiations used throughout.

pub mod algebra;
pub mod bigfloat;
pub mod error;
pub mod incidence;
pub mod json;
pub mod numeric;
pub mod projection;
pub mod quartic;
pub mod random;
pub mod report;
pub mod scalar;
pub mod section;
pub mod sp3;
pub mod verify;

pub use bigfloat::{with_precision, BigFloat, CBig};
pub use error::{GeomError, Result};
pub use scalar::{Rat, Scalar};

/// Exact point of `P^13`.
pub type RatPoint = sp3::Point13<Rat>;
/// Numeric point of `P^13` at the working precision.
pub type NumPoint13 = sp3::Point13<CBig>;
pub type RatGroupElement = sp3::Sp3Element<Rat>;
pub type RatSubspace = algebra::subspace::LinSubspace<Rat>;
pub type RatForm = algebra::form::TernaryForm<Rat>;
pub type RatLine = incidence::SigmaLine<Rat>;
pub type RatProjection = projection::ProjectionData<Rat>;
