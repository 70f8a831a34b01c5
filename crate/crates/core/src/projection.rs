//! Double projection of the grassmannian from one of its lines.
//!
//! In the frame of the line (axis `<e2, e3>`, space `<e1, e2, e3, e4>`) the
//! center is `Y11 = Y12 = Y13 = z = 0` and the projection reads off
//! `(Y11 : Y12 : Y13 : z)`, i.e. the coefficients along `e1, e2, e3, e4`.

use crate::algebra::matrix::{dot, Matrix};
use crate::algebra::subspace::LinSubspace;
use crate::error::{GeomError, Result};
use crate::incidence::SigmaLine;
use crate::quartic::tangent_space;
use crate::scalar::{proportional, Scalar};
use crate::sp3::group::Sp3Element;
use crate::sp3::point::{Point13, Y0, Z};
use crate::sp3::sigma::plane_of;

/// Coordinates read off by the projection in the frame of the line.
pub const TARGET_COORDS: [usize; 4] = [Y0, Y0 + 1, Y0 + 2, Z];

#[derive(Clone, Debug, PartialEq)]
pub struct ProjectionData<T> {
    pub line: SigmaLine<T>,
    /// Join of the tangent spaces along the line (dimension 10).
    pub center: LinSubspace<T>,
    /// Symplectic frame `g` carrying the canonical line onto `line`.
    pub frame: Sp3Element<T>,
    /// Rows of the four coordinate functionals (`f_k . u` in the frame).
    pub functionals: Matrix<T>,
}

pub fn projection_center<T: Scalar>(line: &SigmaLine<T>) -> Result<ProjectionData<T>> {
    let center = tangent_space(&line.span[0])?.join(&tangent_space(&line.span[1])?)?;
    if center.dim() != 10 {
        return Err(GeomError::CenterDimension { dim: center.dim() });
    }
    let frame = line.frame()?;
    let back = crate::sp3::group::rho_wedge3(&frame.inverse())?;
    let functionals = Matrix::from_fn(4, 14, |k, j| back[(TARGET_COORDS[k], j)].clone());
    Ok(ProjectionData { line: line.clone(), center, frame, functionals })
}

impl<T: Scalar> ProjectionData<T> {
    /// The linear projection as a vector of `V6` (inside the space of the line).
    pub fn linear_image(&self, u: &Point13<T>) -> Vec<T> {
        let y: Vec<T> = (0..4).map(|k| dot(self.functionals.row(k), &u.coords)).collect();
        let canonical = [y[0].clone(), y[1].clone(), y[2].clone(), y[3].clone(), T::zero(), T::zero()];
        self.frame.apply(&canonical)
    }

    /// `plane_of(u) ^ space` when it is a single line.
    pub fn plane_image(&self, u: &Point13<T>) -> Result<Option<Vec<T>>> {
        let meet = plane_of(u)?.intersect(&self.line.space)?;
        Ok((meet.dim() == 1).then(|| meet.basis()[0].clone()))
    }

    /// Coordinates of a vector of the space in its echelon basis.
    pub fn space_coordinates(&self, v: &[T]) -> Result<Vec<T>> {
        self.line.space.coordinates(v)?.ok_or_else(|| GeomError::Input("vector is not in the space of the line".into()))
    }

    /// Base-locus membership, decided both linearly (`u` in the center) and
    /// geometrically (`plane_of(u)` meets the space in dimension at least 2).
    pub fn in_base_locus(&self, u: &Point13<T>) -> Result<bool> {
        let linear = self.center.contains(&u.normalized()?.coords)?;
        let geometric = plane_of(u)?.intersect(&self.line.space)?.dim() >= 2;
        if linear != geometric {
            return Err(GeomError::Input(format!(
                "base-locus tests disagree (linear: {linear}, geometric: {geometric})"
            )));
        }
        Ok(linear)
    }

    /// Image of `u` in the space of the line, as coordinates in its echelon basis.
    ///
    /// Both computations are carried out and must agree projectively.
    pub fn double_project(&self, u: &Point13<T>) -> Result<Vec<T>> {
        if self.in_base_locus(u)? {
            return Err(GeomError::BaseLocus);
        }
        let lin = self.linear_image(&u.normalized()?);
        let geo = self.plane_image(u)?.ok_or(GeomError::BaseLocus)?;
        if !proportional(&lin, &geo) {
            return Err(GeomError::Input("plane intersection and linear projection disagree".into()));
        }
        let mut c = self.space_coordinates(&lin)?;
        crate::scalar::normalize_projective(&mut c);
        Ok(c)
    }
}
