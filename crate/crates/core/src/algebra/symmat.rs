use crate::algebra::matrix::Matrix;
use crate::scalar::Scalar;

/// Storage order of the upper triangle.
pub const SYM_INDEX: [(usize, usize); 6] = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)];

/// Symmetric 3x3 matrix, stored as `(m11, m12, m13, m22, m23, m33)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMat3<T> {
    pub entries: [T; 6],
}

fn slot(i: usize, j: usize) -> usize {
    let (a, b) = if i <= j { (i, j) } else { (j, i) };
    match (a, b) {
        (0, 0) => 0,
        (0, 1) => 1,
        (0, 2) => 2,
        (1, 1) => 3,
        (1, 2) => 4,
        (2, 2) => 5,
        _ => panic!("index ({i},{j}) out of range for a 3x3 matrix"),
    }
}

impl<T: Scalar> SymMat3<T> {
    pub fn new(entries: [T; 6]) -> Self {
        SymMat3 { entries }
    }

    pub fn zero() -> Self {
        SymMat3 { entries: std::array::from_fn(|_| T::zero()) }
    }

    pub fn identity() -> Self {
        Self::diag(T::one(), T::one(), T::one())
    }

    pub fn diag(a: T, b: T, c: T) -> Self {
        let z = T::zero;
        SymMat3 { entries: [a, z(), z(), b, z(), c] }
    }

    pub fn from_i64(e: [i64; 6]) -> Self {
        SymMat3 { entries: e.map(T::from_i64) }
    }

    /// Symmetric matrix of the quadratic form `sum m_ij x_i x_j`.
    pub fn get(&self, i: usize, j: usize) -> T {
        self.entries[slot(i, j)].clone()
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.entries[slot(i, j)] = v;
    }

    pub fn to_matrix(&self) -> Matrix<T> {
        Matrix::from_fn(3, 3, |i, j| self.get(i, j))
    }

    /// Symmetric part of a 3x3 matrix.
    pub fn from_matrix_sym(m: &Matrix<T>) -> Self {
        let half = T::one() / T::from_i64(2);
        SymMat3 {
            entries: SYM_INDEX.map(|(i, j)| {
                if i == j {
                    m[(i, i)].clone()
                } else {
                    (m[(i, j)].clone() + m[(j, i)].clone()) * half.clone()
                }
            }),
        }
    }

    pub fn determinant(&self) -> T {
        crate::algebra::matrix::det3(|i, j| self.get(i, j))
    }

    /// Unsigned complementary minor: determinant after deleting row `i` and column `j`.
    pub fn minor(&self, i: usize, j: usize) -> T {
        let r: Vec<usize> = (0..3).filter(|&k| k != i).collect();
        let c: Vec<usize> = (0..3).filter(|&k| k != j).collect();
        self.get(r[0], c[0]) * self.get(r[1], c[1]) - self.get(r[0], c[1]) * self.get(r[1], c[0])
    }

    /// Classical adjugate (transposed signed cofactors): `M adj(M) = det(M) I`.
    pub fn adjugate(&self) -> Self {
        SymMat3 {
            entries: SYM_INDEX.map(|(i, j)| {
                let m = self.minor(j, i);
                if (i + j) % 2 == 0 {
                    m
                } else {
                    -m
                }
            }),
        }
    }

    pub fn scale(&self, s: &T) -> Self {
        SymMat3 { entries: self.entries.clone().map(|x| x * s.clone()) }
    }

    pub fn add(&self, other: &Self) -> Self {
        SymMat3 { entries: std::array::from_fn(|k| self.entries[k].clone() + other.entries[k].clone()) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        SymMat3 { entries: std::array::from_fn(|k| self.entries[k].clone() - other.entries[k].clone()) }
    }

    /// `tr(self * other)`, the trace pairing on symmetric matrices.
    pub fn trace_product(&self, other: &Self) -> T {
        let mut acc = T::zero();
        for i in 0..3 {
            for j in 0..3 {
                acc = acc + self.get(i, j) * other.get(j, i);
            }
        }
        acc
    }

    pub fn trace(&self) -> T {
        self.get(0, 0) + self.get(1, 1) + self.get(2, 2)
    }

    /// `x^T M x`.
    pub fn quadratic(&self, x: &[T]) -> T {
        let mut acc = T::zero();
        for i in 0..3 {
            for j in 0..3 {
                acc = acc + self.get(i, j) * x[i].clone() * x[j].clone();
            }
        }
        acc
    }

    pub fn rank(&self) -> usize {
        self.to_matrix().rank()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| x.is_negligible(1.0))
    }
}
