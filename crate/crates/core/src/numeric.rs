//! Polynomial roots and residuals at working precision.

use num_complex::Complex;
use num_traits::Zero;

use crate::algebra::form::TernaryForm;
use crate::bigfloat::{cabs, working_digits, BigFloat, CBig};
use crate::error::{GeomError, Result};
use crate::scalar::{normalize_projective, Rat, Scalar};

/// Homogeneous point with complex coordinates, scaled so that the
/// coordinate of largest modulus equals 1.
#[derive(Clone, Debug, PartialEq)]
pub struct NumPoint {
    coords: Vec<CBig>,
}

impl NumPoint {
    pub fn new(mut coords: Vec<CBig>) -> Result<Self> {
        if !normalize_projective(&mut coords) {
            return Err(GeomError::Input("the zero vector is not a projective point".into()));
        }
        Ok(NumPoint { coords })
    }

    pub fn from_rats(coords: &[Rat]) -> Result<Self> {
        Self::new(coords.iter().map(CBig::from_rat).collect())
    }

    pub fn coords(&self) -> &[CBig] {
        &self.coords
    }

    pub fn triple(&self) -> [CBig; 3] {
        assert_eq!(self.coords.len(), 3, "expected a point of the projective plane");
        [self.coords[0].clone(), self.coords[1].clone(), self.coords[2].clone()]
    }

    /// Largest coordinate distance to another point (both normalized).
    pub fn distance(&self, other: &NumPoint) -> f64 {
        self.coords.iter().zip(&other.coords).map(|(a, b)| (a.clone() - b.clone()).modulus()).fold(0.0, f64::max)
    }
}

/// Value of an exact ternary form at a numeric point.
pub fn num_eval(form: &TernaryForm<Rat>, p: &NumPoint) -> CBig {
    form.map(CBig::from_rat).eval(&p.triple())
}

/// Maximum of `|f(p)|` over the given forms (0 for an empty list).
pub fn num_residual(eqs: &[TernaryForm<Rat>], p: &NumPoint) -> BigFloat {
    eqs.iter().map(|f| cabs(&num_eval(f, p))).fold(BigFloat::zero(), |a, b| if b > a { b } else { a })
}

fn horner<T: Clone + num_traits::Num>(coeffs: &[T], x: &T) -> (T, T) {
    // value and derivative
    let mut p = T::zero();
    let mut dp = T::zero();
    for c in coeffs.iter().rev() {
        dp = dp * x.clone() + p.clone();
        p = p * x.clone() + c.clone();
    }
    (p, dp)
}

fn aberth_step<T: Clone + num_traits::Num>(coeffs: &[T], roots: &mut [T]) -> Vec<T> {
    let n = roots.len();
    let mut steps = Vec::with_capacity(n);
    for i in 0..n {
        let (p, dp) = horner(coeffs, &roots[i]);
        if p.is_zero() {
            steps.push(T::zero());
            continue;
        }
        let ratio = p / dp;
        let mut repulsion = T::zero();
        for j in 0..n {
            if j != i {
                let d = roots[i].clone() - roots[j].clone();
                if !d.is_zero() {
                    repulsion = repulsion + T::one() / d;
                }
            }
        }
        let denom = T::one() - ratio.clone() * repulsion;
        let step = if denom.is_zero() { ratio } else { ratio / denom };
        roots[i] = roots[i].clone() - step.clone();
        steps.push(step);
    }
    steps
}

fn f64_guesses(coeffs: &[CBig]) -> Vec<Complex<f64>> {
    let c: Vec<Complex<f64>> = coeffs.iter().map(|z| Complex::new(z.re.to_f64(), z.im.to_f64())).collect();
    let n = c.len() - 1;
    let lead = c[n].norm();
    // Cauchy-type bound on the root moduli.
    let radius = (0..n).map(|k| (c[k].norm() / lead).powf(1.0 / (n - k) as f64)).fold(0.0, f64::max).max(1e-3);
    let mut roots: Vec<Complex<f64>> =
        (0..n).map(|k| Complex::from_polar(radius, 0.4 + std::f64::consts::TAU * k as f64 / n as f64)).collect();
    for _ in 0..500 {
        let steps = aberth_step(&c, &mut roots);
        if roots.iter().any(|r| !r.re.is_finite() || !r.im.is_finite()) {
            return (0..n)
                .map(|k| Complex::from_polar(radius, 0.4 + std::f64::consts::TAU * k as f64 / n as f64))
                .collect();
        }
        if steps.iter().zip(&roots).all(|(s, r)| s.norm() <= 1e-14 * r.norm().max(1.0)) {
            break;
        }
    }
    roots
}

/// All complex roots of `sum coeffs[k] t^k` at the working precision.
///
/// Every returned root satisfies `|p(root)| < 10^(6 - digits) * max |coeff|`.
pub fn roots_univariate(coeffs: &[CBig]) -> Result<Vec<CBig>> {
    let n = coeffs.len().saturating_sub(1);
    if n == 0 {
        return Ok(Vec::new());
    }
    if n > 8 {
        return Err(GeomError::Input(format!("degree {n} exceeds the supported maximum of 8")));
    }
    let scale = coeffs.iter().map(Scalar::modulus).fold(0.0, f64::max);
    if coeffs[n].is_negligible(scale) {
        return Err(GeomError::Input("leading coefficient vanishes at working precision".into()));
    }
    let digits = working_digits();
    let target = 10f64.powi(6 - digits as i32);
    let step_tol = 10f64.powi(-(digits as i32) - 2);
    let mut roots: Vec<CBig> = f64_guesses(coeffs)
        .into_iter()
        .map(|z| Complex::new(BigFloat::from_f64(z.re), BigFloat::from_f64(z.im)))
        .collect();
    for _ in 0..200 {
        let steps = aberth_step(coeffs, &mut roots);
        if steps.iter().zip(&roots).all(|(s, r)| s.modulus() <= step_tol * r.modulus().max(1.0)) {
            break;
        }
    }
    // Newton polish, then certify the backward-error bound.
    let mut worst: f64 = 0.0;
    for r in roots.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = horner(coeffs, r);
            if p.is_zero() || dp.is_zero() {
                break;
            }
            *r = r.clone() - p / dp;
        }
        let (p, _) = horner(coeffs, r);
        worst = worst.max(p.modulus() / scale);
    }
    if worst >= target {
        return Err(GeomError::NoConvergence { residual: worst });
    }
    Ok(roots)
}

/// Tolerance of the numeric pipeline at the working precision.
pub fn tolerance() -> f64 {
    10f64.powi(6 - working_digits() as i32)
}
