//! Linear sections `X = Σ ∩ P^10` and their dual plane quartics.

pub mod sample;

use crate::algebra::form::{interpolate_ternary_form, TernaryForm};
use crate::algebra::matrix::Matrix;
use crate::algebra::resultant::macaulay_resultant;
use crate::algebra::subspace::LinSubspace;
use crate::error::{GeomError, Result};
use crate::incidence::{line_from_axis, pairing_annihilator, quadric_in_hyperplane, quadric_span, SigmaLine};
use crate::quartic::f_eval;
use crate::random::Sampler;
use crate::scalar::{Rat, Scalar};
use crate::sp3::point::{pairing, Point13};

pub use sample::{
    c_l_section_check, fibration_check, pivot_curve, sample_curve, vertex_surface, ConicData, CurvePoint, CurveSample,
    FibrationReport, LineSectionReport,
};

/// `X = Σ ∩ P^10`, given by three covectors spanning the dual plane.
#[derive(Clone, Debug, PartialEq)]
pub struct FanoSection {
    pub covectors: [Point13<Rat>; 3],
    /// Common zero set of the covectors (dimension 11).
    pub p10: LinSubspace<Rat>,
    pub seed: u64,
}

impl FanoSection {
    pub fn new(covectors: [Point13<Rat>; 3], seed: u64) -> Result<Self> {
        let span = LinSubspace::span(14, &covectors.iter().map(Point13::to_vec).collect::<Vec<_>>())?;
        if span.dim() != 3 {
            return Err(GeomError::Input(format!("covectors span a space of dimension {}, expected 3", span.dim())));
        }
        let p10 = pairing_annihilator(&span);
        Ok(FanoSection { covectors, p10, seed })
    }

    /// `s c0 + t c1 + w c2` in any scalar type.
    pub fn covector_at<T: Scalar>(&self, p: &[T; 3]) -> Point13<T> {
        (0..3).fold(Point13::zero(), |acc, i| acc.add(&self.covectors[i].map(T::from_rat).scale(&p[i])))
    }

    /// Dual plane as a subspace of covectors.
    pub fn dual_plane(&self) -> LinSubspace<Rat> {
        LinSubspace::span(14, &self.covectors.iter().map(Point13::to_vec).collect::<Vec<_>>()).expect("length 14")
    }

    /// Whether `p` lies on every hyperplane of the section.
    pub fn contains_point(&self, p: &Point13<Rat>) -> bool {
        self.covectors.iter().all(|c| pairing(&c.coords, &p.coords) == Rat::from_integer(0.into()))
    }
}

/// Random section with covector entries in `[-5, 5]`, redrawn until its dual quartic is smooth.
pub fn random_section(seed: u64) -> Result<FanoSection> {
    let mut s = Sampler::new(seed);
    for _ in 0..32 {
        let cs = [s.point(-5, 5), s.point(-5, 5), s.point(-5, 5)];
        let Ok(sec) = FanoSection::new(cs, seed) else { continue };
        if dual_quartic(&sec)?.smooth {
            return Ok(sec);
        }
    }
    Err(GeomError::DegenerateQuartic)
}

/// Random section whose three hyperplanes contain the line with the given axis.
pub fn section_through_line(axis: &LinSubspace<Rat>, seed: u64) -> Result<(FanoSection, SigmaLine<Rat>)> {
    let line = line_from_axis(axis)?;
    let span = LinSubspace::span(14, &[line.span[0].to_vec(), line.span[1].to_vec()])?;
    let ann = pairing_annihilator(&span);
    let mut s = Sampler::new(seed);
    for _ in 0..32 {
        let cs: [Point13<Rat>; 3] = std::array::from_fn(|_| {
            let c = s.int_vec(ann.dim(), -5, 5);
            let v: Vec<Rat> = (0..14)
                .map(|k| {
                    (0..ann.dim())
                        .fold(Rat::from_integer(0.into()), |acc, i| acc + c[i].clone() * ann.basis()[i][k].clone())
                })
                .collect();
            Point13::from_slice(&v).expect("length 14")
        });
        let Ok(sec) = FanoSection::new(cs, seed) else { continue };
        if dual_quartic(&sec)?.smooth {
            return Ok((sec, line));
        }
    }
    Err(GeomError::DegenerateQuartic)
}

/// The invariant quartic restricted to the dual plane, in its parameters `(s, t, w)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DualQuartic {
    pub form: TernaryForm<Rat>,
    /// The plane lies inside the quartic hypersurface.
    pub degenerate: bool,
    pub smooth: bool,
    /// Macaulay resultant of the three partial derivatives (absent when degenerate).
    pub resultant: Option<Rat>,
}

pub fn dual_quartic(sec: &FanoSection) -> Result<DualQuartic> {
    let r = interpolate_ternary_form(4, |p: &[Rat; 3]| f_eval(&sec.covector_at(p)))?;
    if r.zero {
        return Ok(DualQuartic { form: r.form, degenerate: true, smooth: false, resultant: None });
    }
    let res = quartic_resultant(&r.form)?;
    let smooth = res != Rat::from_integer(0.into());
    Ok(DualQuartic { form: r.form, degenerate: false, smooth, resultant: Some(res) })
}

fn quartic_resultant(f: &TernaryForm<Rat>) -> Result<Rat> {
    let d = [f.partial(0), f.partial(1), f.partial(2)];
    if d.iter().any(TernaryForm::is_zero) {
        return Ok(Rat::from_integer(0.into()));
    }
    Ok(macaulay_resultant([&d[0], &d[1], &d[2]])?.value)
}

/// Smoothness of a plane quartic: the partials have no common zero.
pub fn is_smooth_quartic(f: &TernaryForm<Rat>) -> Result<bool> {
    if f.is_zero() || f.degree() != 4 {
        return Err(GeomError::DegenerateQuartic);
    }
    Ok(quartic_resultant(f)? != Rat::from_integer(0.into()))
}

/// The conic `q_x = Q_x ∩ P^10` of a section, in a basis of the plane `span(Q_x) ∩ P^10`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConicOnX {
    pub plane: LinSubspace<Rat>,
    pub form: Matrix<Rat>,
    pub rank: usize,
}

pub fn conic_on_x(sec: &FanoSection, c: &Point13<Rat>, x: &[Rat]) -> Result<ConicOnX> {
    if !sec.dual_plane().contains(&c.coords)? {
        return Err(GeomError::NotInDualPlane);
    }
    if !quadric_in_hyperplane(c, x)? {
        return Err(GeomError::NotContained);
    }
    let q = quadric_span(x)?;
    let plane = q.span.intersect(&sec.p10)?;
    if plane.dim() != 3 {
        return Err(GeomError::NotTransverse { dim: plane.dim(), expected: 3 });
    }
    let coords: Vec<Vec<Rat>> = plane
        .basis()
        .iter()
        .map(|b| q.coordinates(&Point13::from_slice(b).expect("length 14")).expect("plane lies in the span"))
        .collect();
    let a = Matrix::from_rows(&coords);
    let form = &(&a * &q.form) * &a.transpose();
    let rank = form.rank();
    Ok(ConicOnX { plane, form, rank })
}
