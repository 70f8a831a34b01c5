use crate::algebra::matrix::{dot, Matrix};
use crate::error::{GeomError, Result};
use crate::scalar::Scalar;

/// Linear subspace of `T^n`, stored as its reduced row echelon basis.
///
/// The echelon basis is canonical, so two exact subspaces are equal exactly
/// when their representations are.
#[derive(Clone, Debug, PartialEq)]
pub struct LinSubspace<T> {
    ambient: usize,
    basis: Vec<Vec<T>>,
}

impl<T: Scalar> LinSubspace<T> {
    /// Span of the given vectors (dependent or zero vectors are allowed).
    pub fn span(ambient: usize, vectors: &[Vec<T>]) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient) {
            return Err(GeomError::DimensionMismatch { expected: ambient, found: v.len() });
        }
        if vectors.is_empty() {
            return Ok(Self::zero(ambient));
        }
        let ech = Matrix::from_rows(vectors).echelon();
        let basis = (0..ech.pivots.len()).map(|i| ech.matrix.row(i).to_vec()).collect();
        Ok(LinSubspace { ambient, basis })
    }

    pub fn zero(ambient: usize) -> Self {
        LinSubspace { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        let id = Matrix::<T>::identity(ambient);
        LinSubspace { ambient, basis: id.row_vecs() }
    }

    /// Coordinate subspace spanned by the unit vectors at `indices`.
    pub fn coordinate(ambient: usize, indices: &[usize]) -> Self {
        let vs: Vec<Vec<T>> = indices.iter().map(|&i| unit(ambient, i)).collect();
        Self::span(ambient, &vs).expect("coordinate indices are in range")
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<T>] {
        &self.basis
    }

    pub fn basis_matrix(&self) -> Matrix<T> {
        if self.basis.is_empty() {
            Matrix::empty(self.ambient)
        } else {
            Matrix::from_rows(&self.basis)
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(GeomError::DimensionMismatch { expected: self.ambient, found: other.ambient });
        }
        Ok(())
    }

    pub fn join(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let all: Vec<Vec<T>> = self.basis.iter().chain(&other.basis).cloned().collect();
        Self::span(self.ambient, &all)
    }

    /// Subspace of coordinate functionals vanishing on `self`.
    pub fn annihilator(&self) -> Self {
        if self.basis.is_empty() {
            return Self::full(self.ambient);
        }
        let k = self.basis_matrix().kernel();
        Self::span(self.ambient, &k).expect("kernel vectors have ambient length")
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.annihilator().join(&other.annihilator())?.annihilator())
    }

    pub fn contains(&self, v: &[T]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(GeomError::DimensionMismatch { expected: self.ambient, found: v.len() });
        }
        let scale = crate::scalar::max_modulus(v).max(1.0);
        Ok(self.residual_of(v).iter().all(|x| x.is_negligible(scale)))
    }

    pub fn contains_subspace(&self, other: &Self) -> Result<bool> {
        self.check(other)?;
        for b in &other.basis {
            if !self.contains(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `v` minus its echelon reduction against the basis.
    fn residual_of(&self, v: &[T]) -> Vec<T> {
        let mut r = v.to_vec();
        for row in &self.basis {
            let p = row.iter().position(|x| !x.is_zero()).expect("basis rows are nonzero");
            let f = r[p].clone();
            if f.is_zero() {
                continue;
            }
            for (x, y) in r.iter_mut().zip(row) {
                *x = x.clone() - f.clone() * y.clone();
            }
        }
        r
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[T]) -> Result<Option<Vec<T>>> {
        if !self.contains(v)? {
            return Ok(None);
        }
        Ok(Some(
            self.basis
                .iter()
                .map(|row| {
                    let p = row.iter().position(|x| !x.is_zero()).expect("nonzero row");
                    v[p].clone()
                })
                .collect(),
        ))
    }

    /// Whether the bilinear form `form(a, b)` vanishes on all pairs of basis vectors.
    pub fn is_isotropic_for(&self, form: impl Fn(&[T], &[T]) -> T) -> bool {
        let scale = self.basis.iter().map(|b| crate::scalar::max_modulus(b)).fold(1.0, f64::max);
        for (i, a) in self.basis.iter().enumerate() {
            for b in &self.basis[i + 1..] {
                if !form(a, b).is_negligible(scale * scale) {
                    return false;
                }
            }
        }
        true
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> LinSubspace<U> {
        let vs: Vec<Vec<U>> = self.basis.iter().map(|b| b.iter().map(&f).collect()).collect();
        LinSubspace::span(self.ambient, &vs).expect("same ambient dimension")
    }

    /// Image of the subspace under a square matrix.
    pub fn image(&self, m: &Matrix<T>) -> Result<Self> {
        if m.cols() != self.ambient {
            return Err(GeomError::DimensionMismatch { expected: self.ambient, found: m.cols() });
        }
        let vs: Vec<Vec<T>> = self.basis.iter().map(|b| m.mul_vec(b)).collect();
        Self::span(m.rows(), &vs)
    }
}

/// Unit vector `e_i` of length `n`.
pub fn unit<T: Scalar>(n: usize, i: usize) -> Vec<T> {
    let mut v = vec![T::zero(); n];
    v[i] = T::one();
    v
}

/// Whether the linear form `dot(f, .)` vanishes on the whole subspace.
pub fn form_vanishes_on<T: Scalar>(f: &[T], s: &LinSubspace<T>) -> bool {
    let scale = crate::scalar::max_modulus(f).max(1.0);
    s.basis().iter().all(|b| dot(f, b).is_negligible(scale))
}
