//! Third exterior power of `V6` and the 14-coordinate symmetric slice.
//!
//! Basis triples `e_abc` (0-based, `a < b < c`) are ordered lexicographically.
//! Slice coordinates sit on the triples
//!
//! * `u = e_012`, `z = e_345`,
//! * `X_ij`: the triple `(0, 1, 2)` with position `j` replaced by `3 + i`,
//! * `Y_ij`: the triple `(3, 4, 5)` with position `j` replaced by `i`,
//!
//! each read off with the sign of the permutation sorting the triple.
//! Off-diagonal `X_ij`, `Y_ij` occupy two wedge coordinates, one for `(i, j)`
//! and one for `(j, i)`; the slice is where the two agree.

use std::sync::OnceLock;

use crate::algebra::matrix::Matrix;
use crate::algebra::symmat::SYM_INDEX;
use crate::error::{GeomError, Result};
use crate::scalar::Scalar;

pub const WEDGE_DIM: usize = 20;
pub const SLICE_DIM: usize = 14;
pub const WEDGE4_DIM: usize = 15;

/// Lexicographic list of increasing triples in `0..6`.
pub fn triples() -> &'static [[usize; 3]; WEDGE_DIM] {
    static T: OnceLock<[[usize; 3]; WEDGE_DIM]> = OnceLock::new();
    T.get_or_init(|| {
        let mut out = [[0; 3]; WEDGE_DIM];
        let mut k = 0;
        for a in 0..6 {
            for b in (a + 1)..6 {
                for c in (b + 1)..6 {
                    out[k] = [a, b, c];
                    k += 1;
                }
            }
        }
        out
    })
}

/// Lexicographic list of increasing quadruples in `0..6`.
pub fn quadruples() -> &'static [[usize; 4]; WEDGE4_DIM] {
    static Q: OnceLock<[[usize; 4]; WEDGE4_DIM]> = OnceLock::new();
    Q.get_or_init(|| {
        let mut out = [[0; 4]; WEDGE4_DIM];
        let mut k = 0;
        for a in 0..6 {
            for b in (a + 1)..6 {
                for c in (b + 1)..6 {
                    for d in (c + 1)..6 {
                        out[k] = [a, b, c, d];
                        k += 1;
                    }
                }
            }
        }
        out
    })
}

/// Sorts `idx` in place and returns the sign of the permutation, or `None`
/// when an index repeats.
fn sort_with_sign(idx: &mut [usize]) -> Option<i64> {
    let mut sign = 1;
    for i in 0..idx.len() {
        for j in 0..idx.len() - 1 - i {
            if idx[j] == idx[j + 1] {
                return None;
            }
            if idx[j] > idx[j + 1] {
                idx.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some(sign)
}

/// Index and sign of the (unsorted) triple `e_a ^ e_b ^ e_c`.
pub fn triple_slot(t: [usize; 3]) -> Option<(usize, i64)> {
    let mut s = t;
    let sign = sort_with_sign(&mut s)?;
    let k = triples().iter().position(|x| *x == s)?;
    Some((k, sign))
}

fn quadruple_slot(q: [usize; 4]) -> Option<(usize, i64)> {
    let mut s = q;
    let sign = sort_with_sign(&mut s)?;
    let k = quadruples().iter().position(|x| *x == s)?;
    Some((k, sign))
}

/// Wedge slots `(index, sign)` carrying each of the 14 slice coordinates.
pub fn slice_slots() -> &'static [Vec<(usize, i64)>; SLICE_DIM] {
    static S: OnceLock<[Vec<(usize, i64)>; SLICE_DIM]> = OnceLock::new();
    S.get_or_init(|| {
        let block = |base: [usize; 3], replace: &dyn Fn(usize) -> usize, i: usize, j: usize| {
            let mut slots = Vec::new();
            for (a, b) in [(i, j), (j, i)] {
                let mut t = base;
                t[b] = replace(a);
                let slot = triple_slot(t).expect("slice triples are distinct");
                if !slots.contains(&slot) {
                    slots.push(slot);
                }
            }
            slots
        };
        std::array::from_fn(|k| match k {
            0 => vec![triple_slot([0, 1, 2]).unwrap()],
            13 => vec![triple_slot([3, 4, 5]).unwrap()],
            1..=6 => {
                let (i, j) = SYM_INDEX[k - 1];
                block([0, 1, 2], &|a| 3 + a, i, j)
            }
            _ => {
                let (i, j) = SYM_INDEX[k - 7];
                block([3, 4, 5], &|a| a, i, j)
            }
        })
    })
}

/// Embed 14 slice coordinates into `wedge^3 V6`.
pub fn embed<T: Scalar>(p: &[T]) -> Vec<T> {
    let mut w = vec![T::zero(); WEDGE_DIM];
    for (k, slots) in slice_slots().iter().enumerate() {
        for &(idx, sign) in slots {
            w[idx] = if sign > 0 { p[k].clone() } else { -p[k].clone() };
        }
    }
    w
}

/// Read the 14 slice coordinates off a wedge vector, checking that it lies
/// in the slice.
pub fn extract<T: Scalar>(w: &[T]) -> Result<Vec<T>> {
    let scale = crate::scalar::max_modulus(w).max(1.0);
    let mut out = Vec::with_capacity(SLICE_DIM);
    for slots in slice_slots() {
        let read = |(idx, sign): (usize, i64)| if sign > 0 { w[idx].clone() } else { -w[idx].clone() };
        let v = read(slots[0]);
        if let Some(&other) = slots.get(1) {
            if !(read(other) - v.clone()).is_negligible(scale) {
                return Err(GeomError::SliceNotPreserved);
            }
        }
        out.push(v);
    }
    Ok(out)
}

/// `wedge^3` of three vectors: the 3x3 minors of the matrix with rows `v`.
pub fn wedge3<T: Scalar>(v: [&[T]; 3]) -> Vec<T> {
    triples().iter().map(|t| crate::algebra::matrix::det3(|i, j| v[i][t[j]].clone())).collect()
}

/// The 20x20 matrix of `wedge^3 g`: entry `(I, J)` is the minor of `g` on rows `I`, columns `J`.
pub fn wedge3_matrix<T: Scalar>(g: &Matrix<T>) -> Matrix<T> {
    let ts = triples();
    Matrix::from_fn(WEDGE_DIM, WEDGE_DIM, |a, b| {
        let (r, c) = (ts[a], ts[b]);
        crate::algebra::matrix::det3(|i, j| g[(r[i], c[j])].clone())
    })
}

/// Matrix of `v -> v ^ w` from `V6` to `wedge^4 V6` (15 x 6).
pub fn wedge_with<T: Scalar>(w: &[T]) -> Matrix<T> {
    let mut m = Matrix::<T>::zeros(WEDGE4_DIM, 6);
    for (k, t) in triples().iter().enumerate() {
        if w[k].is_zero() {
            continue;
        }
        for i in 0..6 {
            if let Some((row, sign)) = quadruple_slot([i, t[0], t[1], t[2]]) {
                let v = if sign > 0 { w[k].clone() } else { -w[k].clone() };
                m[(row, i)] = m[(row, i)].clone() + v;
            }
        }
    }
    m
}
