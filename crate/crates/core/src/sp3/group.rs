use crate::algebra::matrix::Matrix;
use crate::algebra::subspace::{unit, LinSubspace};
use crate::error::{GeomError, Result};
use crate::scalar::Scalar;
use crate::sp3::point::Point13;
use crate::sp3::wedge::{embed, extract, wedge3_matrix, SLICE_DIM};

/// Gram matrix of the symplectic form: `J[i][3+i] = 1`, `J[3+i][i] = -1`.
pub fn symplectic_gram<T: Scalar>() -> Matrix<T> {
    Matrix::from_fn(6, 6, |i, j| {
        if j == i + 3 {
            T::one()
        } else if i == j + 3 {
            -T::one()
        } else {
            T::zero()
        }
    })
}

/// `alpha(x, y) = x^T J y = sum_i (x_i y_{3+i} - x_{3+i} y_i)`.
pub fn alpha<T: Scalar>(x: &[T], y: &[T]) -> T {
    (0..3).fold(T::zero(), |acc, i| acc + x[i].clone() * y[i + 3].clone() - x[i + 3].clone() * y[i].clone())
}

/// `J v`, so that `alpha(x, v) = dot(x, J v)`.
fn gram_times<T: Scalar>(v: &[T]) -> Vec<T> {
    let mut out = vec![T::zero(); 6];
    for i in 0..3 {
        out[i] = v[i + 3].clone();
        out[i + 3] = -v[i].clone();
    }
    out
}

/// The functional `y -> alpha(b, y)` as a coordinate row.
pub fn alpha_functional<T: Scalar>(b: &[T]) -> Vec<T> {
    gram_times(b).into_iter().map(|x| -x).collect()
}

/// Symplectic complement `{y : alpha(x, y) = 0 for all x in S}`.
pub fn alpha_perp<T: Scalar>(s: &LinSubspace<T>) -> LinSubspace<T> {
    if s.dim() == 0 {
        return LinSubspace::full(6);
    }
    let rows: Vec<Vec<T>> = s.basis().iter().map(|b| alpha_functional(b)).collect();
    LinSubspace::span(6, &Matrix::from_rows(&rows).kernel()).expect("vectors of length 6")
}

/// Element of `Sp3`: a 6x6 matrix with `g^T J g = J`.
#[derive(Clone, Debug, PartialEq)]
pub struct Sp3Element<T> {
    m: Matrix<T>,
}

impl<T: Scalar> Sp3Element<T> {
    pub fn new(m: Matrix<T>) -> Result<Self> {
        if m.rows() != 6 || m.cols() != 6 {
            return Err(GeomError::DimensionMismatch { expected: 6, found: m.rows() });
        }
        let j = symplectic_gram::<T>();
        let defect = &(&m.transpose() * &j) * &m;
        let scale = m.max_modulus().powi(2).max(1.0);
        for a in 0..6 {
            for b in 0..6 {
                if !(defect[(a, b)].clone() - j[(a, b)].clone()).is_negligible(scale) {
                    return Err(GeomError::Input("matrix is not symplectic".into()));
                }
            }
        }
        Ok(Sp3Element { m })
    }

    pub fn identity() -> Self {
        Sp3Element { m: Matrix::identity(6) }
    }

    /// `x -> x + lambda * alpha(x, v) * v`.
    pub fn transvection(v: &[T], lambda: &T) -> Self {
        let jv = gram_times(v);
        // alpha(x, v) = dot(x, J v)
        let m = Matrix::from_fn(6, 6, |i, j| {
            let id = if i == j { T::one() } else { T::zero() };
            id + lambda.clone() * v[i].clone() * jv[j].clone()
        });
        Sp3Element { m }
    }

    /// The element sending `e_i -> e_{3+i}` and `e_{3+i} -> -e_i`; it induces the correlation.
    pub fn quarter_turn() -> Self {
        Sp3Element { m: symplectic_gram::<T>().transpose() }
    }

    /// `diag(a, a, a, 1/a, 1/a, 1/a)`.
    pub fn torus(a: &T) -> Self {
        let inv = T::one() / a.clone();
        Sp3Element {
            m: Matrix::from_fn(6, 6, |i, j| {
                if i != j {
                    T::zero()
                } else if i < 3 {
                    a.clone()
                } else {
                    inv.clone()
                }
            }),
        }
    }

    /// `diag(A, A^{-T})` for an invertible 3x3 matrix `A`.
    pub fn from_gl3(a: &Matrix<T>) -> Result<Self> {
        let inv_t = a.inverse().ok_or(GeomError::Singular)?.transpose();
        Ok(Sp3Element {
            m: Matrix::from_fn(6, 6, |i, j| match (i < 3, j < 3) {
                (true, true) => a[(i, j)].clone(),
                (false, false) => inv_t[(i - 3, j - 3)].clone(),
                _ => T::zero(),
            }),
        })
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.m
    }

    pub fn apply(&self, v: &[T]) -> Vec<T> {
        self.m.mul_vec(v)
    }

    pub fn compose(&self, other: &Self) -> Self {
        Sp3Element { m: &self.m * &other.m }
    }

    /// `g^{-1} = J^{-1} g^T J`.
    pub fn inverse(&self) -> Self {
        let j = symplectic_gram::<T>();
        let j_inv = j.map(|x| -x.clone());
        Sp3Element { m: &(&j_inv * &self.m.transpose()) * &j }
    }

    /// `g^T`, again symplectic.
    pub fn transpose(&self) -> Self {
        Sp3Element { m: self.m.transpose() }
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Sp3Element<U> {
        Sp3Element { m: self.m.map(f) }
    }

    /// Induced action on a point of `P^13`.
    pub fn act(&self, p: &Point13<T>) -> Result<Point13<T>> {
        let w = wedge3_matrix(&self.m).mul_vec(&embed(&p.coords));
        Point13::from_slice(&extract(&w)?)
    }

    /// Contragredient action on a covector: `pairing(g.c, g.p) = pairing(c, p)`.
    pub fn act_dual(&self, c: &Point13<T>) -> Result<Point13<T>> {
        self.inverse().transpose().act(c)
    }

    pub fn image(&self, s: &LinSubspace<T>) -> LinSubspace<T> {
        s.image(&self.m).expect("6x6 matrix on a subspace of V6")
    }
}

/// The 14x14 matrix of the action of `g` on `P^13`.
pub fn rho_wedge3<T: Scalar>(g: &Sp3Element<T>) -> Result<Matrix<T>> {
    let w = wedge3_matrix(g.matrix());
    let mut cols = Vec::with_capacity(SLICE_DIM);
    for k in 0..SLICE_DIM {
        let e = unit::<T>(SLICE_DIM, k);
        cols.push(extract(&w.mul_vec(&embed(&e)))?);
    }
    Ok(Matrix::from_fn(SLICE_DIM, SLICE_DIM, |i, j| cols[j][i].clone()))
}

/// The correlation `P^13 -> (P^13)^*` induced by `e_i -> e_{3+i}`, `e_{3+i} -> -e_i`.
pub fn correlation_j<T: Scalar>(p: &Point13<T>) -> Point13<T> {
    Sp3Element::quarter_turn().act(p).expect("the quarter turn is symplectic")
}

/// Complete an ordered basis `p_1, p_2, p_3` of a lagrangian plane to a
/// symplectic frame: the returned `g` has `g e_i = p_i`.
pub fn complete_basis<T: Scalar>(p: [&[T]; 3]) -> Result<Sp3Element<T>> {
    for i in 0..3 {
        for j in (i + 1)..3 {
            let s = crate::scalar::max_modulus(p[i]).max(1.0) * crate::scalar::max_modulus(p[j]).max(1.0);
            if !alpha(p[i], p[j]).is_negligible(s) {
                return Err(GeomError::NotIsotropic);
            }
        }
    }
    // rows alpha(p_i, .) as linear functionals
    let rows: Vec<Vec<T>> = p.iter().map(|b| alpha_functional(b)).collect();
    let a = Matrix::from_rows(&rows);
    let mut f: Vec<Vec<T>> = Vec::with_capacity(3);
    for j in 0..3 {
        let rhs = unit::<T>(3, j);
        f.push(a.solve(&rhs).ok_or(GeomError::NotLagrangian { dim: a.rank() })?);
    }
    let half = T::one() / T::from_i64(2);
    let fixed: Vec<Vec<T>> = (0..3)
        .map(|i| {
            let mut v = f[i].clone();
            for k in 0..3 {
                let c = alpha(&f[i], &f[k]) * half.clone();
                for t in 0..6 {
                    v[t] = v[t].clone() - c.clone() * p[k][t].clone();
                }
            }
            v
        })
        .collect();
    let m = Matrix::from_fn(6, 6, |r, c| if c < 3 { p[c][r].clone() } else { fixed[c - 3][r].clone() });
    Sp3Element::new(m)
}

/// Symplectic frame carrying `U_o = span(e_1, e_2, e_3)` onto the plane `P`,
/// with `g e_i` the echelon basis of `P`.
pub fn symplectic_completion<T: Scalar>(plane: &LinSubspace<T>) -> Result<Sp3Element<T>> {
    if plane.dim() != 3 || plane.ambient() != 6 {
        return Err(GeomError::NotLagrangian { dim: plane.dim() });
    }
    let b = plane.basis();
    complete_basis([&b[0], &b[1], &b[2]])
}

/// Extend `x` to an ordered lagrangian basis `(x, v_2, v_3)`.
pub fn lagrangian_through<T: Scalar>(x: &[T]) -> Result<[Vec<T>; 3]> {
    let lx = LinSubspace::span(6, &[x.to_vec()])?;
    if lx.dim() == 0 {
        return Err(GeomError::Input("the zero vector has no lagrangian extension".into()));
    }
    let extend = |s: &LinSubspace<T>| -> Option<Vec<T>> {
        alpha_perp(s).basis().iter().find(|v| !s.contains(v).unwrap_or(true)).cloned()
    };
    let v2 = extend(&lx).ok_or(GeomError::NotIsotropic)?;
    let l2 = lx.join(&LinSubspace::span(6, std::slice::from_ref(&v2))?)?;
    let v3 = extend(&l2).ok_or(GeomError::NotIsotropic)?;
    Ok([x.to_vec(), v2, v3])
}

/// A symplectic `g` with `g e_1 = x`.
pub fn symplectic_completion_vector<T: Scalar>(x: &[T]) -> Result<Sp3Element<T>> {
    let [a, b, c] = lagrangian_through(x)?;
    complete_basis([&a, &b, &c])
}

/// Whether `alpha` vanishes identically on the subspace.
pub fn is_isotropic<T: Scalar>(s: &LinSubspace<T>) -> bool {
    s.is_isotropic_for(|a, b| alpha(a, b))
}

/// Pull a covector back along `g`: `pairing(pull(c), p) = pairing(c, g.p)`.
pub fn pull_covector<T: Scalar>(g: &Sp3Element<T>, c: &Point13<T>) -> Result<Point13<T>> {
    g.transpose().act(c)
}
