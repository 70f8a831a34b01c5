//! The `Sp3`-invariant quartic, its gradient, and the orbit stratification.

use serde::{Deserialize, Serialize};

use crate::algebra::matrix::Matrix;
use crate::algebra::subspace::LinSubspace;
use crate::algebra::symmat::{SymMat3, SYM_INDEX};
use crate::error::{GeomError, Result};
use crate::scalar::Scalar;
use crate::sp3::group::symplectic_completion;
use crate::sp3::point::{Point13, U, X0, Y0, Z};
use crate::sp3::sigma::{cramer_jacobian, is_on_sigma, plane_of};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrbitClass {
    Sigma,
    OmegaMinusSigma,
    FMinusOmega,
    Generic,
}

/// Partial derivatives of `sum_ij M_ij(A) M_ij(B)` with respect to the
/// entries of `A` (as a general 3x3 matrix), `M_ij` the unsigned minors.
fn minor_pairing_partials<T: Scalar>(a: &SymMat3<T>, b: &SymMat3<T>) -> Matrix<T> {
    let mut d = Matrix::<T>::zeros(3, 3);
    for i in 0..3 {
        for j in 0..3 {
            let mb = b.minor(i, j);
            let r: Vec<usize> = (0..3).filter(|&k| k != i).collect();
            let c: Vec<usize> = (0..3).filter(|&k| k != j).collect();
            // M_ij(A) = A[r0][c0] A[r1][c1] - A[r0][c1] A[r1][c0]
            let terms = [
                ((r[0], c[0]), a.get(r[1], c[1])),
                ((r[1], c[1]), a.get(r[0], c[0])),
                ((r[0], c[1]), -a.get(r[1], c[0])),
                ((r[1], c[0]), -a.get(r[0], c[1])),
            ];
            for ((p, q), v) in terms {
                d[(p, q)] = d[(p, q)].clone() + v * mb.clone();
            }
        }
    }
    d
}

fn minor_pairing<T: Scalar>(a: &SymMat3<T>, b: &SymMat3<T>) -> T {
    let mut acc = T::zero();
    for i in 0..3 {
        for j in 0..3 {
            acc = acc + a.minor(i, j) * b.minor(i, j);
        }
    }
    acc
}

/// `F = (uz - tr XY)^2 + 4u det Y + 4z det X - 4 sum_ij M_ij(X) M_ij(Y)`.
pub fn f_eval<T: Scalar>(p: &Point13<T>) -> T {
    let (u, x, y, z) = (p.u(), p.x(), p.y(), p.z());
    let s = u.clone() * z.clone() - x.trace_product(&y);
    let four = T::from_i64(4);
    s.clone() * s + four.clone() * u * y.determinant() + four.clone() * z * x.determinant()
        - four * minor_pairing(&x, &y)
}

/// Gradient of `F` with respect to the trace pairing: `dF(p)[v] = pairing(grad, v)`.
///
/// The `X` and `Y` blocks are the symmetric matrices `G` with `dF = tr(G dX)`.
pub fn f_grad<T: Scalar>(p: &Point13<T>) -> Point13<T> {
    let (u, x, y, z) = (p.u(), p.x(), p.y(), p.z());
    let two = T::from_i64(2);
    let four = T::from_i64(4);
    let s = u.clone() * z.clone() - x.trace_product(&y);
    let gu = two.clone() * s.clone() * z.clone() + four.clone() * y.determinant();
    let gz = two.clone() * s.clone() * u.clone() + four.clone() * x.determinant();
    let block = |a: &SymMat3<T>, b: &SymMat3<T>, w: &T| -> SymMat3<T> {
        // d/dA of -(tr AB)^2 part, 4 w det A and -4 sum M(A) M(B)
        let dm = minor_pairing_partials(a, b);
        let general = Matrix::from_fn(3, 3, |i, j| {
            -two.clone() * s.clone() * b.get(j, i) + four.clone() * w.clone() * a.adjugate().get(j, i)
                - four.clone() * dm[(i, j)].clone()
        });
        SymMat3::from_matrix_sym(&general)
    };
    let gx = block(&x, &y, &z);
    let gy = block(&y, &x, &u);
    Point13::from_blocks(gu, &gx, &gy, gz)
}

/// Whether every gradient entry vanishes at the scale of `p`.
pub fn gradient_vanishes<T: Scalar>(p: &Point13<T>) -> bool {
    let scale = p.max_modulus().powi(3).max(1.0);
    f_grad(p).coords.iter().all(|g| g.is_negligible(scale))
}

pub fn classify_orbit<T: Scalar>(p: &Point13<T>) -> OrbitClass {
    if is_on_sigma(p) {
        OrbitClass::Sigma
    } else if gradient_vanishes(p) {
        OrbitClass::OmegaMinusSigma
    } else if f_eval(p).is_negligible(p.max_modulus().powi(4).max(1.0)) {
        OrbitClass::FMinusOmega
    } else {
        OrbitClass::Generic
    }
}

/// The point of the grassmannian attached to `c` in `F - Omega`: its normalized gradient.
pub fn hat_pivot<T: Scalar>(c: &Point13<T>) -> Result<Point13<T>> {
    let found = classify_orbit(c);
    if found != OrbitClass::FMinusOmega {
        return Err(GeomError::WrongOrbit { expected: OrbitClass::FMinusOmega, found });
    }
    f_grad(&c.normalized()?).normalized()
}

/// Tangent space of the grassmannian at `u` (a 7-dimensional subspace of the 14 coordinates).
pub fn tangent_space<T: Scalar>(u: &Point13<T>) -> Result<LinSubspace<T>> {
    let n = u.normalized()?;
    if !is_on_sigma(&n) {
        return Err(GeomError::NotOnSigma { kernel_dim: 0 });
    }
    let k = cramer_jacobian(&n).kernel();
    if k.len() != 7 {
        return Err(GeomError::TangentRank { found: k.len() });
    }
    LinSubspace::span(14, &k)
}

/// Position of a point relative to the cones `K_u` (rank-1 locus) and `D_u`
/// (determinantal cubic) in the tangent space at `u`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConeMembership {
    InKu,
    InDuOnly,
    Outside { in_tangent_space: bool },
}

pub fn cone_membership<T: Scalar>(u: &Point13<T>, v: &Point13<T>) -> Result<ConeMembership> {
    let g = symplectic_completion(&plane_of(u)?)?;
    let w = g.inverse().act(&v.normalized()?)?;
    let scale = w.max_modulus().max(1.0);
    let off_tangent = w.coords[Y0..=Z].iter().any(|c| !c.is_negligible(scale));
    if off_tangent {
        return Ok(ConeMembership::Outside { in_tangent_space: false });
    }
    let x = w.x();
    if x.rank() <= 1 {
        Ok(ConeMembership::InKu)
    } else if x.determinant().is_negligible(scale.powi(3)) {
        Ok(ConeMembership::InDuOnly)
    } else {
        Ok(ConeMembership::Outside { in_tangent_space: true })
    }
}

/// Names of the 14 coordinates, in storage order.
pub fn coordinate_names() -> [String; 14] {
    std::array::from_fn(|k| match k {
        U => "u".to_string(),
        Z => "z".to_string(),
        _ if k < Y0 => {
            let (i, j) = SYM_INDEX[k - X0];
            format!("X{}{}", i + 1, j + 1)
        }
        _ => {
            let (i, j) = SYM_INDEX[k - Y0];
            format!("Y{}{}", i + 1, j + 1)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::form::interpolate_ternary_form;
    use crate::scalar::{rat, Rat};
    use crate::sp3::exp_map;
    use crate::sp3::point::pairing;

    fn y0() -> SymMat3<Rat> {
        SymMat3::from_i64([0, 1, 0, 0, 0, 1])
    }

    #[test]
    fn f_examples() {
        assert_eq!(f_eval(&Point13::<Rat>::unit(0)), rat(0));
        let mut p = Point13::<Rat>::unit(0);
        p.coords[13] = rat(1);
        assert_eq!(f_eval(&p), rat(1));
        let q = Point13::from_blocks(rat(0), &SymMat3::zero(), &SymMat3::from_i64([3, 1, -2, 5, 7, 1]), rat(0));
        assert_eq!(f_eval(&q), rat(0));
    }

    #[test]
    fn gradient_matches_directional_derivatives() {
        // dF(p)[v] is the linear coefficient of F(p + t v)
        let p = Point13::<Rat>::from_i64([2, 1, -1, 3, 0, 2, 1, -2, 1, 0, 4, 1, 3, 5]);
        let v = Point13::<Rat>::from_i64([1, 0, 2, -1, 1, 3, 0, 1, 1, 2, 0, -1, 1, 2]);
        let slope = |t: i64| f_eval(&p.add(&v.scale(&rat(t))));
        // the five-point central difference is exact for quartics
        let d = (rat(8) * (slope(1) - slope(-1)) - (slope(2) - slope(-2))) / rat(12);
        assert_eq!(pairing(&f_grad(&p).coords, &v.coords), d);
    }

    #[test]
    fn euler_identity() {
        let p = Point13::<Rat>::from_i64([1, 2, -3, 1, 0, 5, -2, 1, 1, 4, -1, 2, 3, 7]);
        assert_eq!(pairing(&p.coords, &f_grad(&p).coords), rat(4) * f_eval(&p));
    }

    #[test]
    fn gradient_on_the_canonical_family() {
        let y = SymMat3::<Rat>::from_i64([2, 1, -1, 3, 0, 5]);
        let p = Point13::from_blocks(rat(0), &SymMat3::zero(), &y, rat(7));
        let mut want = Point13::<Rat>::zero();
        want.coords[0] = rat(4) * y.determinant();
        assert_eq!(f_grad(&p), want);
    }

    #[test]
    fn orbit_examples() {
        let x = SymMat3::<Rat>::from_i64([1, 2, 0, -1, 3, 2]);
        assert_eq!(classify_orbit(&exp_map(&x)), OrbitClass::Sigma);
        let rank2 = SymMat3::<Rat>::diag(rat(1), rat(2), rat(0));
        let o = Point13::from_blocks(rat(1), &rank2, &SymMat3::zero(), rat(0));
        assert_eq!(classify_orbit(&o), OrbitClass::OmegaMinusSigma);
        let c = Point13::from_blocks(rat(0), &SymMat3::zero(), &y0(), rat(1));
        assert_eq!(classify_orbit(&c), OrbitClass::FMinusOmega);
        let mut g = Point13::<Rat>::unit(0);
        g.coords[13] = rat(1);
        assert_eq!(classify_orbit(&g), OrbitClass::Generic);
    }

    #[test]
    fn pivot_of_the_canonical_family() {
        let c = Point13::from_blocks(rat(0), &SymMat3::zero(), &y0(), rat(3));
        assert_eq!(hat_pivot(&c).unwrap(), Point13::unit(0));
        assert!(matches!(hat_pivot(&Point13::<Rat>::unit(0)), Err(GeomError::WrongOrbit { .. })));
    }

    #[test]
    fn tangent_spaces_at_the_standard_points() {
        let t = tangent_space(&Point13::<Rat>::unit(0)).unwrap();
        assert_eq!(t, LinSubspace::coordinate(14, &[0, 1, 2, 3, 4, 5, 6]));
        let t = tangent_space(&Point13::<Rat>::unit(13)).unwrap();
        assert_eq!(t, LinSubspace::coordinate(14, &[7, 8, 9, 10, 11, 12, 13]));
    }

    #[test]
    fn quartic_vanishes_on_tangent_spaces() {
        let u = exp_map(&SymMat3::<Rat>::from_i64([1, 2, 0, -1, 3, 2]));
        let t = tangent_space(&u).unwrap();
        assert!(t.contains(&u.coords).unwrap());
        let b = t.basis();
        // restrict to random 3-planes in the tangent space
        for (i, j, k) in [(0, 1, 2), (3, 4, 5), (6, 0, 3), (1, 5, 6)] {
            let r = interpolate_ternary_form(4, |s: &[Rat; 3]| {
                let v: Vec<Rat> = (0..14)
                    .map(|n| {
                        s[0].clone() * b[i][n].clone() + s[1].clone() * b[j][n].clone() + s[2].clone() * b[k][n].clone()
                    })
                    .collect();
                f_eval(&Point13::from_slice(&v).unwrap())
            })
            .unwrap();
            assert!(r.zero);
        }
    }

    #[test]
    fn cone_examples() {
        let o = Point13::<Rat>::unit(0);
        let v1 = Point13::from_blocks(rat(1), &SymMat3::diag(rat(3), rat(0), rat(0)), &SymMat3::zero(), rat(0));
        assert_eq!(cone_membership(&o, &v1).unwrap(), ConeMembership::InKu);
        let v2 = Point13::from_blocks(rat(1), &SymMat3::diag(rat(3), rat(1), rat(0)), &SymMat3::zero(), rat(0));
        assert_eq!(cone_membership(&o, &v2).unwrap(), ConeMembership::InDuOnly);
        assert_eq!(cone_membership(&o, &o).unwrap(), ConeMembership::InKu);
        let v3 = Point13::from_blocks(rat(1), &SymMat3::identity(), &SymMat3::zero(), rat(0));
        assert_eq!(cone_membership(&o, &v3).unwrap(), ConeMembership::Outside { in_tangent_space: true });
        assert_eq!(
            cone_membership(&o, &Point13::unit(13)).unwrap(),
            ConeMembership::Outside { in_tangent_space: false }
        );
    }

    #[test]
    fn names() {
        let n = coordinate_names();
        assert_eq!((n[0].as_str(), n[2].as_str(), n[12].as_str(), n[13].as_str()), ("u", "X12", "Y33", "z"));
    }
}
