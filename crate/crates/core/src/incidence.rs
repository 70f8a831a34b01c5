//! Lines, vertex quadrics and vertex conics on the grassmannian.

use crate::algebra::form::TernaryForm;
use crate::algebra::matrix::Matrix;
use crate::algebra::subspace::LinSubspace;
use crate::algebra::symmat::{SymMat3, SYM_INDEX};
use crate::error::{GeomError, Result};
use crate::quartic::{classify_orbit, f_grad, OrbitClass};
use crate::scalar::{max_modulus, Scalar};
use crate::sp3::group::{
    alpha_perp, complete_basis, is_isotropic, pull_covector, symplectic_completion_vector, Sp3Element,
};
use crate::sp3::point::{pairing, pairing_row, Point13, U, X0, Y0};
use crate::sp3::sigma::{is_on_sigma, plane_of, plucker_of_basis};

/// A line of the grassmannian: the pencil of lagrangian planes through an
/// isotropic line `axis`, all inside `space = axis^perp`.
#[derive(Clone, Debug, PartialEq)]
pub struct SigmaLine<T> {
    pub axis: LinSubspace<T>,
    pub space: LinSubspace<T>,
    pub span: [Point13<T>; 2],
}

impl<T: Scalar> SigmaLine<T> {
    /// `a * span[0] + b * span[1]`.
    pub fn point_at(&self, a: &T, b: &T) -> Point13<T> {
        self.span[0].scale(a).add(&self.span[1].scale(b))
    }

    /// Ordered lagrangian basis `(w, l_1, l_2)` with `(l_1, l_2)` the echelon
    /// basis of the axis and `w` the first vector completing the pencil's first plane.
    pub fn frame(&self) -> Result<Sp3Element<T>> {
        let w = complement(&self.axis, &self.space)?[0].clone();
        let l = self.axis.basis();
        complete_basis([&w, &l[0], &l[1]])
    }
}

/// Vectors of the echelon basis of `space` that extend `axis` to all of `space`.
fn complement<T: Scalar>(axis: &LinSubspace<T>, space: &LinSubspace<T>) -> Result<Vec<Vec<T>>> {
    let mut acc = axis.clone();
    let mut out = Vec::new();
    for b in space.basis() {
        if !acc.contains(b)? {
            acc = acc.join(&LinSubspace::span(acc.ambient(), std::slice::from_ref(b))?)?;
            out.push(b.clone());
        }
    }
    Ok(out)
}

pub fn line_from_axis<T: Scalar>(axis: &LinSubspace<T>) -> Result<SigmaLine<T>> {
    if axis.ambient() != 6 || axis.dim() != 2 {
        return Err(GeomError::NotASigmaLine { dim: axis.dim() });
    }
    if !is_isotropic(axis) {
        return Err(GeomError::NotIsotropic);
    }
    let space = alpha_perp(axis);
    let ws = complement(axis, &space)?;
    let l = axis.basis();
    let mut span = Vec::with_capacity(2);
    for w in &ws {
        span.push(plucker_of_basis([w, &l[0], &l[1]])?.normalized()?);
    }
    let span: [Point13<T>; 2] = span.try_into().map_err(|_| GeomError::NotASigmaLine { dim: ws.len() })?;
    Ok(SigmaLine { axis: axis.clone(), space, span })
}

/// The axis `plane_of(p) ^ plane_of(q)` of the line through `p` and `q`.
pub fn axis_of_line<T: Scalar>(p: &Point13<T>, q: &Point13<T>) -> Result<LinSubspace<T>> {
    let meet = plane_of(p)?.intersect(&plane_of(q)?)?;
    if meet.dim() != 2 {
        return Err(GeomError::NotASigmaLine { dim: meet.dim() });
    }
    Ok(meet)
}

/// Coordinates `(u, X22, X23, X33, Y11)` spanning the quadric of planes through `e_1`.
pub const E1_QUADRIC_COORDS: [usize; 5] = [U, X0 + 3, X0 + 4, X0 + 5, Y0];

/// Matrix of `a0 a4 - a1 a3 + a2^2`, the quadric through `e_1` in the coordinates above.
fn e1_quadric_form<T: Scalar>() -> Matrix<T> {
    let half = T::one() / T::from_i64(2);
    let mut m = Matrix::zeros(5, 5);
    m[(0, 4)] = half.clone();
    m[(4, 0)] = half.clone();
    m[(1, 3)] = -half.clone();
    m[(3, 1)] = -half;
    m[(2, 2)] = T::one();
    m
}

/// The quadric `Q_x` of lagrangian planes through a vector `x`, with its linear span.
#[derive(Clone, Debug, PartialEq)]
pub struct VertexQuadric<T> {
    pub vertex: Vec<T>,
    /// Basis of the span in which `form` is written.
    pub frame: [Point13<T>; 5],
    pub span: LinSubspace<T>,
    /// Symmetric 5x5 matrix of the quadratic form in `frame` coordinates.
    pub form: Matrix<T>,
}

impl<T: Scalar> VertexQuadric<T> {
    pub fn point(&self, a: &[T]) -> Point13<T> {
        (0..5).fold(Point13::zero(), |acc, k| acc.add(&self.frame[k].scale(&a[k])))
    }

    pub fn form_value(&self, a: &[T]) -> T {
        let mut acc = T::zero();
        for i in 0..5 {
            for j in 0..5 {
                acc = acc + self.form[(i, j)].clone() * a[i].clone() * a[j].clone();
            }
        }
        acc
    }

    /// Frame coordinates of a point of the span.
    pub fn coordinates(&self, p: &Point13<T>) -> Option<Vec<T>> {
        let m = Matrix::from_fn(14, 5, |r, k| self.frame[k].coords[r].clone());
        let a = m.solve(&p.coords)?;
        let back = self.point(&a);
        let scale = p.max_modulus().max(1.0);
        back.coords.iter().zip(&p.coords).all(|(x, y)| (x.clone() - y.clone()).is_negligible(scale)).then_some(a)
    }

    pub fn rank(&self) -> usize {
        self.form.rank()
    }

    /// Covectors of hyperplanes containing the span.
    pub fn hyperplanes(&self) -> LinSubspace<T> {
        pairing_annihilator(&self.span)
    }
}

/// Covectors `c` with `pairing(c, v) = 0` for all `v` in `s`.
pub fn pairing_annihilator<T: Scalar>(s: &LinSubspace<T>) -> LinSubspace<T> {
    if s.dim() == 0 {
        return LinSubspace::full(14);
    }
    let rows: Vec<Vec<T>> = s.basis().iter().map(|b| pairing_row(b)).collect();
    LinSubspace::span(14, &Matrix::from_rows(&rows).kernel()).expect("vectors of length 14")
}

pub fn quadric_span<T: Scalar>(x: &[T]) -> Result<VertexQuadric<T>> {
    let g = symplectic_completion_vector(x)?;
    let mut frame = Vec::with_capacity(5);
    for &k in &E1_QUADRIC_COORDS {
        frame.push(g.act(&Point13::unit(k))?);
    }
    let frame: [Point13<T>; 5] = frame.try_into().expect("five frame vectors");
    let span = LinSubspace::span(14, &frame.iter().map(Point13::to_vec).collect::<Vec<_>>())?;
    Ok(VertexQuadric { vertex: x.to_vec(), frame, span, form: e1_quadric_form() })
}

/// Whether the hyperplane of `c` contains the span of `Q_x` (the direct containment test).
pub fn quadric_in_hyperplane<T: Scalar>(c: &Point13<T>, x: &[T]) -> Result<bool> {
    let q = quadric_span(x)?;
    let scale = c.max_modulus().max(1.0);
    Ok(q.frame.iter().all(|f| pairing(&c.coords, &f.coords).is_negligible(scale * f.max_modulus().max(1.0))))
}

/// The common vector of the planes of three points spanning a conic of the grassmannian.
pub fn conic_vertex<T: Scalar>(points: [&Point13<T>; 3]) -> Result<Vec<T>> {
    let mut meet = plane_of(points[0])?;
    for p in &points[1..] {
        meet = meet.intersect(&plane_of(p)?)?;
    }
    if meet.dim() != 1 {
        return Err(GeomError::NoConicVertex { dim: meet.dim() });
    }
    Ok(meet.basis()[0].clone())
}

/// Conic of vertices `x` with `Q_x` inside the hyperplane of `c`.
#[derive(Clone, Debug, PartialEq)]
pub struct VertexConic<T> {
    pub pivot: Point13<T>,
    /// Echelon basis of the plane of the pivot; conic coordinates refer to it.
    pub plane_basis: [Vec<T>; 3],
    /// Symmetric matrix of the conic.
    pub matrix: SymMat3<T>,
    /// Size of the `u` and `X` parts of `c` after moving the pivot to `(1:0:0:0)`
    /// (zero up to rounding).
    pub canonical_residual: f64,
}

impl<T: Scalar> VertexConic<T> {
    pub fn form(&self) -> TernaryForm<T> {
        sym_to_form(&self.matrix)
    }

    /// The vector `sum a_i b_i` of the plane.
    pub fn vector(&self, a: &[T]) -> Vec<T> {
        (0..6).map(|k| (0..3).fold(T::zero(), |acc, i| acc + a[i].clone() * self.plane_basis[i][k].clone())).collect()
    }

    pub fn plane(&self) -> LinSubspace<T> {
        LinSubspace::span(6, &self.plane_basis).expect("vectors of length 6")
    }
}

/// Ternary quadratic form `x^T M x`.
pub fn sym_to_form<T: Scalar>(m: &SymMat3<T>) -> TernaryForm<T> {
    let terms = SYM_INDEX.iter().map(|&(i, j)| {
        let mut e = [0u32; 3];
        e[i] += 1;
        e[j] += 1;
        let c = if i == j { m.get(i, j) } else { m.get(i, j) * T::from_i64(2) };
        (e, c)
    });
    TernaryForm::from_terms(2, terms).expect("degree-2 exponents")
}

pub fn vertex_conic<T: Scalar>(c: &Point13<T>) -> Result<VertexConic<T>> {
    let found = classify_orbit(c);
    if found != OrbitClass::FMinusOmega {
        return Err(GeomError::WrongOrbit { expected: OrbitClass::FMinusOmega, found });
    }
    vertex_conic_unchecked(c)
}

/// [`vertex_conic`] without the orbit test, for callers that have already
/// established `c` in `F - Omega` (numerically sampled covectors).
pub fn vertex_conic_unchecked<T: Scalar>(c: &Point13<T>) -> Result<VertexConic<T>> {
    let pivot = f_grad(&c.normalized()?).normalized()?;
    let plane = plane_of(&pivot)?;
    let b = plane.basis();
    let g = complete_basis([&b[0], &b[1], &b[2]])?;
    let moved = pull_covector(&g, c)?;
    let scale = moved.max_modulus().max(f64::MIN_POSITIVE);
    let canonical_residual = max_modulus(&moved.coords[U..Y0]) / scale;
    if T::EXACT && canonical_residual != 0.0 {
        return Err(GeomError::Input("covector does not reduce to the canonical form (0 : 0 : Y : z)".into()));
    }
    Ok(VertexConic {
        pivot,
        plane_basis: [b[0].clone(), b[1].clone(), b[2].clone()],
        matrix: moved.y(),
        canonical_residual,
    })
}

/// Points of `Σ` on the line `l_L` must stay on `Σ`; helper for line checks.
pub fn line_stays_on_sigma<T: Scalar>(line: &SigmaLine<T>, params: &[(T, T)]) -> bool {
    params.iter().all(|(a, b)| is_on_sigma(&line.point_at(a, b)))
}
