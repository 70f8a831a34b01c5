//! The symplectic space `V6`, the group `Sp3` and the grassmannian of
//! lagrangian planes in `P^13`.

pub mod group;
pub mod point;
pub mod sigma;
pub mod wedge;

pub use group::{
    alpha, alpha_perp, complete_basis, correlation_j, is_isotropic, pull_covector, rho_wedge3, symplectic_completion,
    symplectic_completion_vector, symplectic_gram, Sp3Element,
};
pub use point::{pairing, Point13};
pub use sigma::{exp_map, is_on_sigma, plane_of, plucker, sigma_residual};
