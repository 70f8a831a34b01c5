//! Macaulay resultant of three ternary forms.
//!
//! For forms of degrees `d1, d2, d3` the critical degree is
//! `D = d1 + d2 + d3 - 2`. Each degree-`D` monomial `m` is assigned to the
//! first `i` with `x_i^{d_i} | m`, and contributes the row `(m / x_i^{d_i}) f_i`.
//! The resultant is `det(M) / det(M')`, where `M'` keeps only rows and
//! columns of monomials divisible by at least two of the `x_i^{d_i}`.

use std::collections::HashMap;

use crate::algebra::form::{monomials, Exponent, TernaryForm};
use crate::algebra::matrix::Matrix;
use crate::error::{GeomError, Result};
use crate::scalar::Scalar;

/// Resultant value with the size of the matrices it came from.
#[derive(Clone, Debug, PartialEq)]
pub struct MacaulayResultant<T> {
    pub value: T,
    /// Side of the Macaulay matrix (36 for three cubics).
    pub size: usize,
    /// Side of the extraneous-factor minor (9 for three cubics).
    pub minor_size: usize,
    /// Number of unimodular coordinate changes needed to make the minor nonzero.
    pub shears: usize,
}

/// Unimodular shears tried when the extraneous minor vanishes; `det = 1`
/// keeps the resultant value unchanged.
fn shear(k: usize) -> [[i64; 3]; 3] {
    let a = 1 + (k as i64 % 3);
    let b = 1 + (k as i64 / 3);
    // lower-triangular times upper-triangular, both unipotent
    let l = [[1, 0, 0], [a, 1, 0], [b, a, 1]];
    let u = [[1, b, a], [0, 1, b], [0, 0, 1]];
    let mut m = [[0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] = (0..3).map(|k| l[i][k] * u[k][j]).sum();
        }
    }
    m
}

fn matrices<T: Scalar>(forms: [&TernaryForm<T>; 3]) -> (Matrix<T>, Matrix<T>) {
    let degs = forms.map(|f| f.degree());
    let d_crit: u32 = degs.iter().sum::<u32>() - 2;
    let mons = monomials(d_crit);
    let index: HashMap<Exponent, usize> = mons.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let n = mons.len();
    let mut big = Matrix::zeros(n, n);
    let mut non_reduced = Vec::new();
    for (r, m) in mons.iter().enumerate() {
        let divisible: Vec<usize> = (0..3).filter(|&i| m[i] >= degs[i]).collect();
        let i = divisible[0];
        if divisible.len() >= 2 {
            non_reduced.push(r);
        }
        let mut shift = *m;
        shift[i] -= degs[i];
        for (e, c) in forms[i].terms() {
            let col = index[&[e[0] + shift[0], e[1] + shift[1], e[2] + shift[2]]];
            big[(r, col)] = c.clone();
        }
    }
    let minor = big.submatrix(&non_reduced, &non_reduced);
    (big, minor)
}

/// Macaulay resultant of three forms of positive degree.
pub fn macaulay_resultant<T: Scalar>(forms: [&TernaryForm<T>; 3]) -> Result<MacaulayResultant<T>> {
    if forms.iter().any(|f| f.degree() == 0) {
        return Err(GeomError::Input("resultant needs forms of positive degree".into()));
    }
    for k in 0..12 {
        let transformed;
        let fs = if k == 0 {
            forms
        } else {
            let s = shear(k - 1);
            let m = Matrix::from_fn(3, 3, |i, j| T::from_i64(s[i][j]));
            transformed = forms.map(|f| f.compose_linear(&m));
            [&transformed[0], &transformed[1], &transformed[2]]
        };
        let (big, minor) = matrices(fs);
        let minor_det = if minor.rows() == 0 { T::one() } else { minor.determinant() };
        if minor_det.is_negligible(minor.max_modulus().max(1.0)) {
            continue;
        }
        return Ok(MacaulayResultant {
            value: big.determinant() / minor_det,
            size: big.rows(),
            minor_size: minor.rows(),
            shears: k,
        });
    }
    Err(GeomError::Singular)
}
