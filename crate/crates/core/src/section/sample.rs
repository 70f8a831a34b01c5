//! Numeric sampling of the dual quartic curve and the per-point checks built on it.
//!
//! Everything here runs at the working precision of the calling thread; wrap
//! calls in [`with_precision`](crate::bigfloat::with_precision).

use crate::algebra::form::TernaryForm;
use crate::algebra::matrix::Matrix;
use crate::bigfloat::CBig;
use crate::error::{GeomError, Result};
use crate::incidence::{vertex_conic_unchecked, SigmaLine, VertexConic};
use crate::numeric::{roots_univariate, tolerance, NumPoint};
use crate::quartic::{f_eval, f_grad};
use crate::scalar::{max_modulus, normalize_projective, ratio, Rat, Scalar};
use crate::sp3::group::alpha;
use crate::sp3::point::Point13;
use crate::sp3::sigma::sigma_residual;

use super::FanoSection;

/// Base points tried in order for the pencil of slicing lines.
const BASE_POINTS: [[i64; 3]; 5] = [[1, 0, 0], [1, 1, 0], [1, 0, 1], [1, 1, 1], [2, 1, 3]];

fn slope(k: usize) -> Rat {
    ratio(3 * k as i64 + 1, 5)
}

/// `n` points of the curve `f = 0`, cut out by lines through a fixed rational point.
///
/// The lines are `lambda * P + (0, 1, m_k)` for a fixed sequence of slopes;
/// a line whose restriction has a multiple root is skipped.
pub fn sample_curve(f: &TernaryForm<Rat>, n: usize) -> Result<Vec<NumPoint>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    if f.is_zero() {
        return Err(GeomError::DegenerateQuartic);
    }
    let base = BASE_POINTS
        .iter()
        .map(|p| p.map(Rat::from_i64))
        .find(|p| f.eval(p) != Rat::from_i64(0))
        .ok_or(GeomError::DegenerateQuartic)?;
    let fc = f.map(CBig::from_rat);
    let p = base.clone().map(|x| CBig::from_rat(&x));
    let mut out = Vec::with_capacity(n);
    let mut last_err = None;
    for k in 0..(n + 16) {
        let q = [Rat::from_i64(0), Rat::from_i64(1), slope(k)].map(|x| CBig::from_rat(&x));
        let coeffs = fc.restrict_to_pencil(&p, &q);
        match roots_univariate(&coeffs) {
            Ok(roots) => {
                if has_close_pair(&roots) {
                    continue;
                }
                for r in roots {
                    let c: Vec<CBig> = (0..3).map(|i| r.clone() * p[i].clone() + q[i].clone()).collect();
                    out.push(NumPoint::new(c)?);
                    if out.len() == n {
                        return Ok(out);
                    }
                }
            }
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.unwrap_or(GeomError::NoConvergence { residual: f64::INFINITY }))
}

fn has_close_pair(roots: &[CBig]) -> bool {
    let sep = 1e3 * tolerance();
    (0..roots.len()).any(|i| {
        (i + 1..roots.len())
            .any(|j| (roots[i].clone() - roots[j].clone()).modulus() <= sep * roots[i].modulus().max(1.0))
    })
}

/// The vertex conic of a sampled point together with its numeric diagnostics.
#[derive(Clone, Debug)]
pub struct ConicData {
    pub conic: VertexConic<CBig>,
    /// Smallest singular value of the conic matrix scaled to unit maximum entry.
    pub smallest_singular_value: f64,
    /// Largest `|alpha(b_i, b_j)|` on the plane basis.
    pub lagrangian_residual: f64,
}

#[derive(Clone, Debug)]
pub struct CurvePoint {
    pub param: NumPoint,
    /// `s c0 + t c1 + w c2`, scaled to unit maximum entry.
    pub covector: Point13<CBig>,
    pub quartic_residual: f64,
    /// Size of the gradient of the invariant quartic at the covector.
    pub gradient_size: f64,
    pub pivot: Point13<CBig>,
    pub pivot_residual: f64,
    pub conic: Option<ConicData>,
}

#[derive(Clone, Debug)]
pub struct CurveSample {
    pub digits: u32,
    pub points: Vec<CurvePoint>,
    /// Smallest distance between two normalized pivots (infinite for fewer than two points).
    pub min_pivot_distance: f64,
    /// Index pairs whose pivots coincide to within `10^3` times the tolerance.
    pub coincident_pivots: Vec<(usize, usize)>,
}

impl CurveSample {
    pub fn max_quartic_residual(&self) -> f64 {
        self.points.iter().map(|p| p.quartic_residual).fold(0.0, f64::max)
    }

    pub fn max_pivot_residual(&self) -> f64 {
        self.points.iter().map(|p| p.pivot_residual).fold(0.0, f64::max)
    }

    pub fn min_gradient_size(&self) -> f64 {
        self.points.iter().map(|p| p.gradient_size).fold(f64::INFINITY, f64::min)
    }

    pub fn conics(&self) -> impl Iterator<Item = &ConicData> {
        self.points.iter().filter_map(|p| p.conic.as_ref())
    }
}

/// Pivots of sampled curve points, with residuals and a distinctness report.
pub fn pivot_curve(sec: &FanoSection, sample: &[NumPoint]) -> Result<CurveSample> {
    let mut points = Vec::with_capacity(sample.len());
    for param in sample {
        let covector = sec.covector_at(&param.triple()).normalized()?;
        let quartic_residual = f_eval(&covector).modulus();
        let grad = f_grad(&covector);
        let gradient_size = grad.max_modulus();
        let pivot = grad.normalized()?;
        let pivot_residual = max_modulus(&sigma_residual(&pivot));
        points.push(CurvePoint {
            param: param.clone(),
            covector,
            quartic_residual,
            gradient_size,
            pivot,
            pivot_residual,
            conic: None,
        });
    }
    let sep = 1e3 * tolerance();
    let mut min_pivot_distance = f64::INFINITY;
    let mut coincident_pivots = Vec::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let d = distance(&points[i].pivot, &points[j].pivot);
            min_pivot_distance = min_pivot_distance.min(d);
            if d <= sep {
                coincident_pivots.push((i, j));
            }
        }
    }
    Ok(CurveSample { digits: crate::bigfloat::working_digits(), points, min_pivot_distance, coincident_pivots })
}

fn distance(a: &Point13<CBig>, b: &Point13<CBig>) -> f64 {
    a.coords.iter().zip(&b.coords).map(|(x, y)| (x.clone() - y.clone()).modulus()).fold(0.0, f64::max)
}

/// Attach the vertex conic of every sampled point.
pub fn vertex_surface(mut cs: CurveSample) -> Result<CurveSample> {
    for p in &mut cs.points {
        let conic = vertex_conic_unchecked(&p.covector)?;
        let mut entries: Vec<CBig> = (0..9).map(|k| conic.matrix.get(k / 3, k % 3)).collect();
        if !normalize_projective(&mut entries) {
            return Err(GeomError::Singular);
        }
        let smallest_singular_value =
            smallest_singular_value(&Matrix::from_fn(3, 3, |i, j| entries[3 * i + j].clone()))?;
        let b = &conic.plane_basis;
        let size = b.iter().map(|v| max_modulus(v)).fold(0.0, f64::max).powi(2).max(f64::MIN_POSITIVE);
        let mut lag: f64 = 0.0;
        for i in 0..3 {
            for j in i + 1..3 {
                lag = lag.max(alpha(&b[i], &b[j]).modulus() / size);
            }
        }
        p.conic = Some(ConicData { conic, smallest_singular_value, lagrangian_residual: lag });
    }
    Ok(cs)
}

/// Smallest singular value of a complex 3x3 matrix, from the eigenvalues of `M^H M`.
fn smallest_singular_value(m: &Matrix<CBig>) -> Result<f64> {
    let h = Matrix::from_fn(3, 3, |i, j| {
        (0..3).fold(CBig::from_i64(0), |acc, k| acc + m[(k, i)].conj() * m[(k, j)].clone())
    });
    let tr = h[(0, 0)].clone() + h[(1, 1)].clone() + h[(2, 2)].clone();
    let minors = (0..3).fold(CBig::from_i64(0), |acc, k| {
        let (i, j) = ((k + 1) % 3, (k + 2) % 3);
        acc + h[(i, i)].clone() * h[(j, j)].clone() - h[(i, j)].clone() * h[(j, i)].clone()
    });
    let det = h.determinant();
    let roots = roots_univariate(&[-det, minors, -tr, CBig::from_i64(1)])?;
    let least = roots.iter().map(|r| r.re.to_f64()).fold(f64::INFINITY, f64::min);
    Ok(least.max(0.0).sqrt())
}

/// Pairwise joins of the planes of the sampled conics.
#[derive(Clone, Debug, PartialEq)]
pub struct FibrationReport {
    pub pairs_checked: usize,
    pub pairs_skipped: usize,
    /// Index pairs whose planes meet (join of dimension below 6).
    pub violations: Vec<(usize, usize)>,
    /// Smallest `|det|` of the 6x6 matrix of two plane bases.
    pub min_determinant: f64,
}

pub fn fibration_check(cs: &CurveSample) -> Result<FibrationReport> {
    let planes: Vec<&[Vec<CBig>; 3]> = cs
        .points
        .iter()
        .map(|p| p.conic.as_ref().map(|c| &c.conic.plane_basis).ok_or(GeomError::Input("vertex conics missing".into())))
        .collect::<Result<_>>()?;
    let sep = 1e3 * tolerance();
    let mut report =
        FibrationReport { pairs_checked: 0, pairs_skipped: 0, violations: Vec::new(), min_determinant: f64::INFINITY };
    for i in 0..planes.len() {
        for j in i + 1..planes.len() {
            if cs.points[i].param.distance(&cs.points[j].param) <= sep {
                report.pairs_skipped += 1;
                continue;
            }
            let rows: Vec<Vec<CBig>> = planes[i].iter().chain(planes[j].iter()).cloned().collect();
            let m = Matrix::from_rows(&rows);
            report.pairs_checked += 1;
            report.min_determinant = report.min_determinant.min(m.determinant().modulus());
            if m.rank() < 6 {
                report.violations.push((i, j));
            }
        }
    }
    Ok(report)
}

/// Per-point meeting of the conic plane with the space of a line of the section.
#[derive(Clone, Debug, PartialEq)]
pub struct LineSectionReport {
    /// Whether every hyperplane of the section contains the line (exact).
    pub line_contained: bool,
    /// `|q(c)(x(c))|` per point, with the conic and the point scaled to unit size.
    pub residuals: Vec<f64>,
    /// Points whose plane does not meet the space in exactly one point.
    pub non_transverse: Vec<usize>,
}

impl LineSectionReport {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }
}

pub fn c_l_section_check(sec: &FanoSection, line: &SigmaLine<Rat>, cs: &CurveSample) -> Result<LineSectionReport> {
    let line_contained = sec.contains_point(&line.span[0]) && sec.contains_point(&line.span[1]);
    let space: Vec<Vec<CBig>> = line.space.basis().iter().map(|v| v.iter().map(CBig::from_rat).collect()).collect();
    let mut residuals = Vec::new();
    let mut non_transverse = Vec::new();
    for (idx, p) in cs.points.iter().enumerate() {
        let conic = &p.conic.as_ref().ok_or(GeomError::Input("vertex conics missing".into()))?.conic;
        // sum a_i b_i - sum beta_k s_k = 0
        let m = Matrix::from_fn(
            6,
            7,
            |r, k| {
                if k < 3 {
                    conic.plane_basis[k][r].clone()
                } else {
                    -space[k - 3][r].clone()
                }
            },
        );
        let ker = m.kernel();
        if ker.len() != 1 {
            non_transverse.push(idx);
            continue;
        }
        let mut a = ker[0][..3].to_vec();
        if !normalize_projective(&mut a) {
            non_transverse.push(idx);
            continue;
        }
        let scale = conic.matrix.to_matrix().max_modulus().max(f64::MIN_POSITIVE);
        residuals.push(conic.matrix.quadratic(&a).modulus() / scale);
    }
    Ok(LineSectionReport { line_contained, residuals, non_transverse })
}
