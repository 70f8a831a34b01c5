use thiserror::Error;

use crate::quartic::OrbitClass;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeomError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("evaluator is not a homogeneous form of degree {degree} (mismatch at {point})")]
    NotAForm { degree: u32, point: String },

    #[error("point is not on the grassmannian: kernel of v -> v ^ w has dimension {kernel_dim}, expected 3")]
    NotOnSigma { kernel_dim: usize },

    #[error("subspace is not isotropic")]
    NotIsotropic,

    #[error("expected a lagrangian plane, got a subspace of dimension {dim}")]
    NotLagrangian { dim: usize },

    #[error("wedge-cube action leaves the symmetric slice (matrix is not symplectic?)")]
    SliceNotPreserved,

    #[error("jacobian of the Cramer quadrics has kernel dimension {found}, expected 7")]
    TangentRank { found: usize },

    #[error("point lies in orbit {found:?}, expected {expected:?}")]
    WrongOrbit { expected: OrbitClass, found: OrbitClass },

    #[error("not a line on the grassmannian: lagrangian planes meet in dimension {dim}")]
    NotASigmaLine { dim: usize },

    #[error("lagrangian planes meet in dimension {dim}; a conic vertex needs exactly one common point")]
    NoConicVertex { dim: usize },

    #[error("projection center has dimension {dim}, expected 10")]
    CenterDimension { dim: usize },

    #[error("point lies in the base locus of the double projection")]
    BaseLocus,

    #[error("quartic is degenerate (identically zero)")]
    DegenerateQuartic,

    #[error("root finder did not converge (best residual {residual:e})")]
    NoConvergence { residual: f64 },

    #[error("linear section is not transverse: intersection has dimension {dim}, expected {expected}")]
    NotTransverse { dim: usize, expected: usize },

    #[error("quadric Q_x is not contained in the hyperplane H_c")]
    NotContained,

    #[error("covector is not in the dual plane of the section")]
    NotInDualPlane,

    #[error("singular matrix")]
    Singular,

    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, GeomError>;
