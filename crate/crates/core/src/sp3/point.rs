use std::fmt;

use crate::algebra::symmat::SymMat3;
use crate::error::{GeomError, Result};
use crate::scalar::{max_modulus, normalize_projective, proportional, Scalar};

/// Index of `u` in the coordinate vector.
pub const U: usize = 0;
/// Index of `z` in the coordinate vector.
pub const Z: usize = 13;
/// Offset of the `X` block (`X11, X12, X13, X22, X23, X33`).
pub const X0: usize = 1;
/// Offset of the `Y` block.
pub const Y0: usize = 7;

/// Weight of each coordinate in the trace pairing: off-diagonal entries of
/// `X` and `Y` stand for two matrix entries.
pub const PAIRING_WEIGHTS: [i64; 14] = [1, 1, 2, 2, 1, 2, 1, 1, 2, 2, 1, 2, 1, 1];

/// Point of `P^13` with coordinates `(u : X : Y : z)`, `X`, `Y` symmetric.
///
/// Covectors (hyperplanes) use the same type; they act on points through
/// [`pairing`].
#[derive(Clone, PartialEq)]
pub struct Point13<T> {
    pub coords: [T; 14],
}

impl<T: Scalar> Point13<T> {
    pub fn new(coords: [T; 14]) -> Self {
        Point13 { coords }
    }

    pub fn from_slice(v: &[T]) -> Result<Self> {
        if v.len() != 14 {
            return Err(GeomError::DimensionMismatch { expected: 14, found: v.len() });
        }
        Ok(Point13 { coords: std::array::from_fn(|k| v[k].clone()) })
    }

    pub fn from_i64(v: [i64; 14]) -> Self {
        Point13 { coords: v.map(T::from_i64) }
    }

    pub fn zero() -> Self {
        Point13 { coords: std::array::from_fn(|_| T::zero()) }
    }

    pub fn unit(k: usize) -> Self {
        let mut p = Self::zero();
        p.coords[k] = T::one();
        p
    }

    pub fn from_blocks(u: T, x: &SymMat3<T>, y: &SymMat3<T>, z: T) -> Self {
        let mut p = Self::zero();
        p.coords[U] = u;
        p.coords[Z] = z;
        for k in 0..6 {
            p.coords[X0 + k] = x.entries[k].clone();
            p.coords[Y0 + k] = y.entries[k].clone();
        }
        p
    }

    pub fn u(&self) -> T {
        self.coords[U].clone()
    }

    pub fn z(&self) -> T {
        self.coords[Z].clone()
    }

    pub fn x(&self) -> SymMat3<T> {
        SymMat3::new(std::array::from_fn(|k| self.coords[X0 + k].clone()))
    }

    pub fn y(&self) -> SymMat3<T> {
        SymMat3::new(std::array::from_fn(|k| self.coords[Y0 + k].clone()))
    }

    pub fn as_slice(&self) -> &[T] {
        &self.coords
    }

    pub fn to_vec(&self) -> Vec<T> {
        self.coords.to_vec()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_negligible(1.0))
    }

    /// Canonical representative: exact points are divided by their first
    /// nonzero coordinate, numeric ones by the coordinate of largest modulus.
    pub fn normalized(&self) -> Result<Self> {
        let mut c = self.coords.clone();
        if !normalize_projective(&mut c) {
            return Err(GeomError::Input("the zero vector is not a point of P^13".into()));
        }
        Ok(Point13 { coords: c })
    }

    /// Equality as projective points.
    pub fn proj_eq(&self, other: &Self) -> bool {
        proportional(&self.coords, &other.coords)
    }

    pub fn scale(&self, s: &T) -> Self {
        Point13 { coords: self.coords.clone().map(|c| c * s.clone()) }
    }

    pub fn add(&self, other: &Self) -> Self {
        Point13 { coords: std::array::from_fn(|k| self.coords[k].clone() + other.coords[k].clone()) }
    }

    pub fn map<U2: Scalar>(&self, f: impl Fn(&T) -> U2) -> Point13<U2> {
        Point13 { coords: std::array::from_fn(|k| f(&self.coords[k])) }
    }

    pub fn max_modulus(&self) -> f64 {
        max_modulus(&self.coords)
    }
}

/// Trace pairing `c_u p_u + tr(Xc Xp) + tr(Yc Yp) + c_z p_z`.
///
/// This is the standard dot product of the two vectors in `wedge^3 V6`.
pub fn pairing<T: Scalar>(c: &[T], p: &[T]) -> T {
    let mut acc = T::zero();
    for k in 0..14 {
        let term = c[k].clone() * p[k].clone();
        acc = acc + if PAIRING_WEIGHTS[k] == 2 { term.clone() + term } else { term };
    }
    acc
}

/// Covector `c` rewritten as the coordinate vector `w` with `pairing(c, p) = dot(w, p)`.
pub fn pairing_row<T: Scalar>(c: &[T]) -> Vec<T> {
    (0..14).map(|k| c[k].clone() * T::from_i64(PAIRING_WEIGHTS[k])).collect()
}

impl<T: fmt::Debug> fmt::Debug for Point13<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.coords;
        write!(f, "({:?} : {:?} : {:?} : {:?})", c[0], &c[1..7], &c[7..13], c[13])
    }
}
