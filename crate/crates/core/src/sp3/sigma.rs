//! The grassmannian of lagrangian planes inside `P^13`.

use crate::algebra::matrix::Matrix;
use crate::algebra::subspace::LinSubspace;
use crate::algebra::symmat::SymMat3;
use crate::error::{GeomError, Result};
use crate::scalar::Scalar;
use crate::sp3::group::is_isotropic;
use crate::sp3::point::Point13;
use crate::sp3::wedge::{embed, extract, wedge3, wedge_with};

/// `(1 : X : adj X : det X)`.
pub fn exp_map<T: Scalar>(x: &SymMat3<T>) -> Point13<T> {
    Point13::from_blocks(T::one(), x, &x.adjugate(), x.determinant())
}

/// The 21 Cramer quadrics: `adj X - u Y` (6), `adj Y - z X` (6), `X Y - u z I` (9).
pub fn sigma_residual<T: Scalar>(p: &Point13<T>) -> Vec<T> {
    let (u, x, y, z) = (p.u(), p.x(), p.y(), p.z());
    let mut out = Vec::with_capacity(21);
    out.extend(x.adjugate().sub(&y.scale(&u)).entries);
    out.extend(y.adjugate().sub(&x.scale(&z)).entries);
    let xy = &x.to_matrix() * &y.to_matrix();
    let uz = u * z;
    for i in 0..3 {
        for j in 0..3 {
            let d = if i == j { uz.clone() } else { T::zero() };
            out.push(xy[(i, j)].clone() - d);
        }
    }
    out
}

/// Largest Cramer residual of the point rescaled to unit size.
pub fn sigma_residual_norm<T: Scalar>(p: &Point13<T>) -> f64 {
    match p.normalized() {
        Ok(n) => crate::scalar::max_modulus(&sigma_residual(&n)),
        Err(_) => 0.0,
    }
}

pub fn is_on_sigma<T: Scalar>(p: &Point13<T>) -> bool {
    let scale = p.max_modulus().powi(2).max(1.0);
    sigma_residual(p).iter().all(|r| r.is_negligible(scale))
}

/// Jacobian of the Cramer quadrics at `p` (21 x 14), by polarization.
pub fn cramer_jacobian<T: Scalar>(p: &Point13<T>) -> Matrix<T> {
    let base = sigma_residual(p);
    let cols: Vec<Vec<T>> = (0..14)
        .map(|k| {
            let e = Point13::<T>::unit(k);
            let shifted = sigma_residual(&p.add(&e));
            let pure = sigma_residual(&e);
            (0..21).map(|q| shifted[q].clone() - base[q].clone() - pure[q].clone()).collect()
        })
        .collect();
    Matrix::from_fn(21, 14, |q, k| cols[k][q].clone())
}

/// Plücker point of a lagrangian plane given by any basis.
pub fn plucker<T: Scalar>(plane: &LinSubspace<T>) -> Result<Point13<T>> {
    if plane.ambient() != 6 || plane.dim() != 3 || !is_isotropic(plane) {
        return Err(GeomError::NotLagrangian { dim: plane.dim() });
    }
    let b = plane.basis();
    plucker_of_basis([&b[0], &b[1], &b[2]])
}

/// Plücker point of `v_1 ^ v_2 ^ v_3` (not normalized, so the basis scaling is kept).
pub fn plucker_of_basis<T: Scalar>(v: [&[T]; 3]) -> Result<Point13<T>> {
    let w = wedge3(v);
    match extract(&w) {
        Ok(c) => Point13::from_slice(&c),
        Err(_) => Err(GeomError::NotLagrangian { dim: 3 }),
    }
}

/// The lagrangian plane of a point of the grassmannian: the kernel of `v -> v ^ w`.
pub fn plane_of<T: Scalar>(p: &Point13<T>) -> Result<LinSubspace<T>> {
    let n = p.normalized()?;
    let k = wedge_with(&embed(&n.coords)).kernel();
    if k.len() != 3 {
        return Err(GeomError::NotOnSigma { kernel_dim: k.len() });
    }
    LinSubspace::span(6, &k)
}
