//! The scalar abstraction shared by the exact and the numeric code paths.
//!
//! Every geometric routine in this crate is written once against [`Scalar`].
//! Exact rationals make zero tests structural; floating types decide zero
//! against a tolerance carried by the value itself.

use std::fmt;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{NumOps, One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rat = BigRational;

pub trait Scalar: Clone + fmt::Debug + PartialEq + Zero + One + NumOps + Neg<Output = Self> + Send + Sync {
    /// `true` when arithmetic is exact and zero tests need no threshold.
    const EXACT: bool;

    fn from_rat(r: &Rat) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rat(&Rat::from_integer(BigInt::from(n)))
    }

    /// Approximate modulus, used for pivoting and threshold decisions.
    fn modulus(&self) -> f64;

    /// Absolute tolerance for quantities of unit scale. Zero for exact types.
    fn tolerance(&self) -> f64;

    /// Zero test relative to `scale` (the magnitude of the data the value came from).
    fn is_negligible(&self, scale: f64) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            self.modulus() <= self.tolerance() * scale.max(f64::MIN_POSITIVE)
        }
    }
}

impl Scalar for Rat {
    const EXACT: bool = true;

    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }

    fn modulus(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }

    fn tolerance(&self) -> f64 {
        0.0
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_rat(r: &Rat) -> Self {
        r.to_f64().unwrap_or(f64::NAN)
    }

    fn from_i64(n: i64) -> Self {
        n as f64
    }

    fn modulus(&self) -> f64 {
        self.abs()
    }

    fn tolerance(&self) -> f64 {
        1e-10
    }
}

/// Shorthand for an integer rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Shorthand for `n / d`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Largest modulus in a slice (0 for an empty slice).
pub fn max_modulus<T: Scalar>(v: &[T]) -> f64 {
    v.iter().map(Scalar::modulus).fold(0.0, f64::max)
}

/// Rescale a homogeneous vector to its canonical representative.
///
/// Exact vectors are divided by their first nonzero entry; inexact ones by
/// the entry of largest modulus (first such on ties). Returns `false` for
/// the zero vector, which is left untouched.
pub fn normalize_projective<T: Scalar>(v: &mut [T]) -> bool {
    let pick = if T::EXACT {
        v.iter().position(|x| !x.is_zero())
    } else {
        let mut best: Option<(usize, f64)> = None;
        for (i, x) in v.iter().enumerate() {
            let m = x.modulus();
            if m > 0.0 && best.is_none_or(|(_, b)| m > b) {
                best = Some((i, m));
            }
        }
        best.map(|(i, _)| i)
    };
    let Some(i) = pick else { return false };
    let inv = T::one() / v[i].clone();
    for x in v.iter_mut() {
        *x = x.clone() * inv.clone();
    }
    v[i] = T::one();
    true
}

/// `true` when `a` and `b` are proportional (equal as projective points).
pub fn proportional<T: Scalar>(a: &[T], b: &[T]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let scale = max_modulus(a).max(1.0) * max_modulus(b).max(1.0);
    for i in 0..a.len() {
        for j in (i + 1)..a.len() {
            let m = a[i].clone() * b[j].clone() - a[j].clone() * b[i].clone();
            if !m.is_negligible(scale) {
                return false;
            }
        }
    }
    let a_zero = a.iter().all(|x| x.is_negligible(1.0));
    let b_zero = b.iter().all(|x| x.is_negligible(1.0));
    a_zero == b_zero
}

/// Parse `"p/q"` or `"p"` into a rational.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rat::new(n, d))
            }
        }
        None => Some(Rat::from_integer(s.parse().ok()?)),
    }
}

/// Sign-aware helper used by exact code that needs `|x|` as a rational.
pub fn rat_abs(r: &Rat) -> Rat {
    if r.is_negative() {
        -r.clone()
    } else {
        r.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_normalization_uses_first_nonzero() {
        let mut v = vec![rat(0), rat(3), rat(-6)];
        assert!(normalize_projective(&mut v));
        assert_eq!(v, vec![rat(0), rat(1), rat(-2)]);
    }

    #[test]
    fn float_normalization_uses_largest() {
        let mut v = vec![1.0, -4.0, 2.0];
        assert!(normalize_projective(&mut v));
        assert_eq!(v, vec![-0.25, 1.0, -0.5]);
    }

    #[test]
    fn zero_vector_is_not_normalized() {
        let mut v = vec![rat(0); 3];
        assert!(!normalize_projective(&mut v));
    }

    #[test]
    fn proportionality() {
        assert!(proportional(&[rat(1), rat(2)], &[rat(-3), rat(-6)]));
        assert!(!proportional(&[rat(1), rat(2)], &[rat(1), rat(3)]));
        assert!(!proportional(&[rat(0), rat(0)], &[rat(1), rat(3)]));
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rat("6/-4"), Some(ratio(-3, 2)));
        assert_eq!(parse_rat("7"), Some(rat(7)));
        assert_eq!(parse_rat("1/0"), None);
        assert_eq!(parse_rat("x"), None);
    }
}
