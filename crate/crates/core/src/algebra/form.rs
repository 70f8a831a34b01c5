use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::matrix::Matrix;
use crate::error::{GeomError, Result};
use crate::scalar::{max_modulus, Rat, Scalar};

/// Exponent triple `(a, b, c)` of the monomial `s^a t^b w^c`.
pub type Exponent = [u32; 3];

/// Homogeneous polynomial of a fixed degree in the variables `(s, t, w)`.
///
/// Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct TernaryForm<T> {
    degree: u32,
    coeffs: BTreeMap<Exponent, T>,
}

/// All exponent triples of total degree `d`, in decreasing lexicographic order.
pub fn monomials(d: u32) -> Vec<Exponent> {
    let mut out = Vec::with_capacity(((d + 1) * (d + 2) / 2) as usize);
    for a in (0..=d).rev() {
        for b in (0..=d - a).rev() {
            out.push([a, b, d - a - b]);
        }
    }
    out
}

fn pow<T: Scalar>(x: &T, e: u32) -> T {
    let mut acc = T::one();
    for _ in 0..e {
        acc = acc * x.clone();
    }
    acc
}

fn monomial_value<T: Scalar>(e: &Exponent, p: &[T; 3]) -> T {
    pow(&p[0], e[0]) * pow(&p[1], e[1]) * pow(&p[2], e[2])
}

impl<T: Scalar> TernaryForm<T> {
    pub fn zero(degree: u32) -> Self {
        TernaryForm { degree, coeffs: BTreeMap::new() }
    }

    pub fn from_terms(degree: u32, terms: impl IntoIterator<Item = (Exponent, T)>) -> Result<Self> {
        let mut f = Self::zero(degree);
        for (e, c) in terms {
            if e.iter().sum::<u32>() != degree {
                return Err(GeomError::Input(format!("monomial {e:?} does not have degree {degree}")));
            }
            f.add_term(e, c);
        }
        Ok(f)
    }

    fn add_term(&mut self, e: Exponent, c: T) {
        let v = match self.coeffs.remove(&e) {
            Some(old) => old + c,
            None => c,
        };
        if !v.is_zero() {
            self.coeffs.insert(e, v);
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeff(&self, e: &Exponent) -> T {
        self.coeffs.get(e).cloned().unwrap_or_else(T::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &T)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, p: &[T; 3]) -> T {
        self.coeffs.iter().fold(T::zero(), |acc, (e, c)| acc + c.clone() * monomial_value(e, p))
    }

    /// Partial derivative with respect to variable `var` (0 = s, 1 = t, 2 = w).
    pub fn partial(&self, var: usize) -> Self {
        let mut out = Self::zero(self.degree.saturating_sub(1));
        for (e, c) in &self.coeffs {
            if e[var] == 0 {
                continue;
            }
            let mut f = *e;
            f[var] -= 1;
            out.add_term(f, c.clone() * T::from_i64(i64::from(e[var])));
        }
        out
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> TernaryForm<U> {
        let mut out = TernaryForm::zero(self.degree);
        for (e, c) in &self.coeffs {
            out.add_term(*e, f(c));
        }
        out
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|c| c.clone() * s.clone())
    }

    /// Largest coefficient modulus.
    pub fn max_coeff(&self) -> f64 {
        max_modulus(&self.coeffs.values().cloned().collect::<Vec<_>>())
    }

    /// `f(M x)` for a 3x3 matrix `M`.
    pub fn compose_linear(&self, m: &Matrix<T>) -> Self {
        let f = |p: &[T; 3]| {
            let q = m.mul_vec(p);
            self.eval(&[q[0].clone(), q[1].clone(), q[2].clone()])
        };
        interpolate_ternary_form(self.degree, f)
            .expect("composition with a linear map is a form of the same degree")
            .form
    }

    /// Restriction to the line `lambda * p + mu * q` as coefficients in `lambda`
    /// (ascending powers) after setting `mu = 1`.
    pub fn restrict_to_pencil(&self, p: &[T; 3], q: &[T; 3]) -> Vec<T> {
        let d = self.degree as usize;
        let mut out = vec![T::zero(); d + 1];
        for (e, c) in &self.coeffs {
            // product over variables of (lambda p_k + q_k)^{e_k}, expanded
            let mut poly = vec![c.clone()];
            for k in 0..3 {
                for _ in 0..e[k] {
                    let mut next = vec![T::zero(); poly.len() + 1];
                    for (i, a) in poly.iter().enumerate() {
                        next[i] = next[i].clone() + a.clone() * q[k].clone();
                        next[i + 1] = next[i + 1].clone() + a.clone() * p[k].clone();
                    }
                    poly = next;
                }
            }
            for (i, a) in poly.into_iter().enumerate() {
                out[i] = out[i].clone() + a;
            }
        }
        out
    }
}

/// Result of interpolating a black-box evaluator.
#[derive(Clone, Debug, PartialEq)]
pub struct Interpolated<T> {
    pub form: TernaryForm<T>,
    /// Set when the evaluator is identically zero.
    pub zero: bool,
}

/// Interpolation nodes for degree `d`: `(i, j, 1)` with `i + j < d`,
/// `(i, 1, 0)` with `i < d`, and `(1, 0, 0)`.
pub fn interpolation_nodes(d: u32) -> Vec<[i64; 3]> {
    let d = i64::from(d);
    let mut nodes = Vec::new();
    for i in 0..d {
        for j in 0..(d - i) {
            nodes.push([i, j, 1]);
        }
    }
    for i in 0..d {
        nodes.push([i, 1, 0]);
    }
    nodes.push([1, 0, 0]);
    nodes
}

const CHECK_NODES: [[i64; 3]; 4] = [[2, 3, 5], [-1, 4, 3], [3, -2, 7], [5, 1, -2]];

/// Monomial evaluation matrix of the interpolation nodes (rows: nodes).
pub fn node_matrix<T: Scalar>(d: u32) -> Matrix<T> {
    let nodes = interpolation_nodes(d);
    let mons = monomials(d);
    Matrix::from_fn(nodes.len(), mons.len(), |i, j| {
        let p = nodes[i].map(T::from_i64);
        monomial_value(&mons[j], &p)
    })
}

/// Recover the coefficients of a degree-`d` form from its values.
///
/// The result is checked against the evaluator on extra nodes; a mismatch
/// means `eval` is not a form of degree `d`.
pub fn interpolate_ternary_form<T: Scalar>(d: u32, eval: impl Fn(&[T; 3]) -> T) -> Result<Interpolated<T>> {
    let nodes = interpolation_nodes(d);
    let values: Vec<T> = nodes.iter().map(|n| eval(&n.map(T::from_i64))).collect();
    let a = node_matrix::<T>(d);
    let c = a.solve(&values).ok_or(GeomError::Singular)?;
    let mut form = TernaryForm::zero(d);
    let scale = max_modulus(&values).max(1.0);
    for (e, v) in monomials(d).into_iter().zip(c) {
        if !v.is_negligible(scale) {
            form.add_term(e, v);
        }
    }
    for n in CHECK_NODES {
        let p = n.map(T::from_i64);
        let expected = eval(&p);
        let got = form.eval(&p);
        let s = scale.max(expected.modulus()) * 1e3;
        if !(expected - got).is_negligible(s) {
            return Err(GeomError::NotAForm { degree: d, point: format!("{n:?}") });
        }
    }
    let zero = form.is_zero();
    Ok(Interpolated { form, zero })
}

const VARS: [&str; 3] = ["s", "t", "w"];

impl fmt::Display for TernaryForm<Rat> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use num_traits::{One, Signed};
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for e in monomials(self.degree) {
            let Some(c) = self.coeffs.get(&e) else { continue };
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let mut parts = Vec::new();
            if !mag.is_one() || e == [0, 0, 0] {
                parts.push(mag.to_string());
            }
            for (k, v) in VARS.iter().enumerate() {
                match e[k] {
                    0 => {}
                    1 => parts.push(v.to_string()),
                    n => parts.push(format!("{v}^{n}")),
                }
            }
            f.write_str(&parts.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn node_matrix_is_invertible_up_to_degree_eight() {
        for d in 0..=8 {
            let a = node_matrix::<Rat>(d);
            assert_eq!(a.rows(), ((d + 1) * (d + 2) / 2) as usize);
            assert!(!num_traits::Zero::is_zero(&a.determinant()), "degree {d}");
        }
    }

    #[test]
    fn simple_interpolations() {
        let st = interpolate_ternary_form(2, |p: &[Rat; 3]| p[0].clone() * p[1].clone()).unwrap();
        assert_eq!(st.form, TernaryForm::from_terms(2, [([1, 1, 0], rat(1))]).unwrap());
        let w = interpolate_ternary_form(1, |p: &[Rat; 3]| p[2].clone()).unwrap();
        assert_eq!(w.form.to_string(), "w");
        let z = interpolate_ternary_form(3, |_: &[Rat; 3]| rat(0)).unwrap();
        assert!(z.zero && z.form.is_zero());
    }

    #[test]
    fn non_forms_are_rejected() {
        // inhomogeneous: s^2 + w^3 is not a quadric
        let r = interpolate_ternary_form(2, |p: &[Rat; 3]| {
            p[0].clone() * p[0].clone() + p[2].clone() * p[2].clone() * p[2].clone()
        });
        assert!(matches!(r, Err(GeomError::NotAForm { .. })));
    }

    #[test]
    fn partials_and_display() {
        let f = TernaryForm::from_terms(4, [([2, 2, 0], rat(1)), ([1, 0, 3], rat(-4))]).unwrap();
        assert_eq!(f.to_string(), "s^2*t^2 - 4*s*w^3");
        assert_eq!(f.partial(2).to_string(), "-12*s*w^2");
        assert_eq!(f.partial(0).to_string(), "2*s*t^2 - 4*w^3");
    }

    #[test]
    fn pencil_restriction() {
        // s*t on lambda*(1,0,0) + (0,1,2): lambda
        let f = TernaryForm::from_terms(2, [([1, 1, 0], rat(1))]).unwrap();
        let c = f.restrict_to_pencil(&[rat(1), rat(0), rat(0)], &[rat(0), rat(1), rat(2)]);
        assert_eq!(c, vec![rat(0), rat(1), rat(0)]);
    }
}
