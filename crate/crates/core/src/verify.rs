//! Randomized identity suites and the numeric section checks.

use std::str::FromStr;

use crate::algebra::subspace::{unit, LinSubspace};
use crate::algebra::symmat::SymMat3;
use crate::bigfloat::with_precision;
use crate::error::{GeomError, Result};
use crate::incidence::{line_from_axis, quadric_in_hyperplane, quadric_span, vertex_conic, SigmaLine};
use crate::numeric::tolerance;
use crate::projection::projection_center;
use crate::quartic::{f_eval, f_grad, gradient_vanishes};
use crate::random::Sampler;
use crate::report::CheckRecord;
use crate::scalar::{normalize_projective, proportional, rat, Rat};
use crate::section::{
    c_l_section_check, dual_quartic, fibration_check, pivot_curve, random_section, sample_curve, vertex_surface,
    FanoSection,
};
use crate::sp3::group::{rho_wedge3, Sp3Element};
use crate::sp3::point::{pairing, Point13};
use crate::sp3::sigma::{exp_map, is_on_sigma, plane_of, plucker, sigma_residual};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Core,
    Incidence,
    Projection,
    Section,
}

impl FromStr for Suite {
    type Err = GeomError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "core" => Ok(Suite::Core),
            "incidence" => Ok(Suite::Incidence),
            "projection" => Ok(Suite::Projection),
            "section" => Ok(Suite::Section),
            _ => Err(GeomError::Input(format!("unknown suite {s:?} (core, incidence, projection, section)"))),
        }
    }
}

pub fn run_suite(suite: Suite, seed: u64, trials: usize) -> Vec<CheckRecord> {
    if trials == 0 {
        return Vec::new();
    }
    match suite {
        Suite::Core => core_suite(seed, trials),
        Suite::Incidence => incidence_suite(seed, trials),
        Suite::Projection => projection_suite(seed, trials),
        Suite::Section => section_suite(seed, trials),
    }
}

/// The covector `(0 : 0 : Y : 0)` with `Y` the matrix of `2 y1 y2 + y3^2`.
pub fn canonical_covector() -> Point13<Rat> {
    Point13::from_blocks(rat(0), &SymMat3::zero(), &SymMat3::from_i64([0, 1, 0, 0, 0, 1]), rat(0))
}

/// The line whose axis is spanned by the second and third basis vectors.
pub fn canonical_line() -> SigmaLine<Rat> {
    line_from_axis(&LinSubspace::span(6, &[unit(6, 1), unit(6, 2)]).expect("length 6")).expect("isotropic axis")
}

/// Symmetric matrix of rank exactly 2.
fn rank_two(s: &mut Sampler) -> SymMat3<Rat> {
    loop {
        let (v, w) = (s.int_vec(3, -3, 3), s.int_vec(3, -3, 3));
        let (a, b) = (s.nonzero_int(-3, 3), s.nonzero_int(-3, 3));
        let m = SymMat3::new(std::array::from_fn(|k| {
            let (i, j) = crate::algebra::symmat::SYM_INDEX[k];
            rat(a) * v[i].clone() * v[j].clone() + rat(b) * w[i].clone() * w[j].clone()
        }));
        if m.rank() == 2 {
            return m;
        }
    }
}

fn core_suite(seed: u64, trials: usize) -> Vec<CheckRecord> {
    let mut s = Sampler::new(seed);
    let mut ok = [0usize; 8];
    for _ in 0..trials {
        let x = s.symmat(-5, 5);
        let p = exp_map(&x);
        ok[0] += sigma_residual(&p).iter().all(|r| *r == rat(0)) as usize;

        let q = s.point(-5, 5);
        ok[1] += (pairing(&f_grad(&q).coords, &q.coords) == rat(4) * f_eval(&q)) as usize;

        ok[2] += gradient_vanishes(&s.sigma_point()) as usize;

        let omega = Point13::from_blocks(s.rat(-5, 5), &rank_two(&mut s), &SymMat3::zero(), rat(0));
        ok[3] += gradient_vanishes(&omega) as usize;

        let y = s.symmat(-5, 5);
        let chart = Point13::from_blocks(rat(0), &SymMat3::zero(), &y, s.rat(-5, 5));
        let mut want = Point13::zero();
        want.coords[0] = rat(4) * y.determinant();
        ok[4] += (f_grad(&chart) == want) as usize;

        let g = s.group_element();
        let moved = g.act(&q).expect("group acts on the slice");
        ok[5] += (f_eval(&moved) == f_eval(&q) && is_on_sigma(&g.act(&p).expect("slice"))) as usize;

        let plane = s.lagrangian_plane();
        ok[6] += plucker(&plane).and_then(|u| plane_of(&u)).is_ok_and(|back| back == plane) as usize;

        let h = s.group_element();
        let lhs = rho_wedge3(&g.compose(&h));
        let rhs = rho_wedge3(&g).and_then(|a| rho_wedge3(&h).map(|b| &a * &b));
        ok[7] += matches!((lhs, rhs), (Ok(a), Ok(b)) if a == b) as usize;
    }
    let names = [
        "chart_points_on_grassmannian",
        "euler_identity",
        "gradient_vanishes_on_grassmannian",
        "gradient_vanishes_on_rank_two_orbit",
        "gradient_on_y_chart",
        "group_invariance",
        "plucker_round_trip",
        "wedge_cube_homomorphism",
    ];
    names.iter().zip(ok).map(|(n, k)| CheckRecord::count(*n, k, trials)).collect()
}

/// Vectors `(1, -m^2/2, m)` of the canonical conic `2 s t + w^2 = 0`, in `V6`.
fn canonical_conic_vectors() -> Vec<Vec<Rat>> {
    (-2..=2)
        .map(|m| {
            let m = rat(m);
            vec![rat(1), -(m.clone() * m.clone()) / rat(2), m, rat(0), rat(0), rat(0)]
        })
        .collect()
}

fn incidence_suite(seed: u64, trials: usize) -> Vec<CheckRecord> {
    let mut s = Sampler::new(seed);
    let c0 = canonical_covector();
    let canonical = vertex_conic(&c0)
        .map(|vc| vc.form().to_string() == "2*s*t + w^2" && vc.plane() == LinSubspace::coordinate(6, &[0, 1, 2]))
        .unwrap_or(false);
    let q0 = quadric_span(&unit::<Rat>(6, 0));
    let quadric =
        q0.is_ok_and(|q| q.rank() == 5 && q.span == LinSubspace::coordinate(14, &crate::incidence::E1_QUADRIC_COORDS));
    let line0 = canonical_line();
    let (mut conic_ok, mut line_ok, mut contain_ok) = (0, 0, 0);
    for _ in 0..trials {
        let g = s.group_element();
        conic_ok += conic_transport(&g, &c0) as usize;
        line_ok += line_transport(&g, &line0) as usize;
        let c = g.act_dual(&c0).expect("slice");
        let inside = quadric_in_hyperplane(&c, &g.apply(&unit(6, 0))).unwrap_or(false);
        let outside = quadric_in_hyperplane(&c, &g.apply(&unit(6, 2))).unwrap_or(true);
        contain_ok += (inside && !outside) as usize;
    }
    vec![
        CheckRecord::new("canonical_vertex_conic", canonical, None, "2*s*t + w^2 on the plane of e1, e2, e3"),
        CheckRecord::new("quadric_through_first_basis_vector", quadric, None, "span u, X22, X23, X33, Y11; rank 5"),
        CheckRecord::count("vertex_conic_equivariance", conic_ok, trials),
        CheckRecord::count("line_equivariance", line_ok, trials),
        CheckRecord::count("quadric_containment", contain_ok, trials),
    ]
}

/// The conic of `g . c` is the image under `g` of the conic of `c`.
pub fn conic_transport(g: &Sp3Element<Rat>, c0: &Point13<Rat>) -> bool {
    let Ok(c) = g.act_dual(c0) else { return false };
    let Ok(vc) = vertex_conic(&c) else { return false };
    let Ok(pivot) = g.act(&Point13::unit(0)) else { return false };
    if !vc.pivot.proj_eq(&pivot) || vc.plane() != g.image(&LinSubspace::coordinate(6, &[0, 1, 2])) {
        return false;
    }
    if vc.matrix.rank() != 3 {
        return false;
    }
    let plane = vc.plane();
    canonical_conic_vectors().iter().all(|x| match plane.coordinates(&g.apply(x)) {
        Ok(Some(a)) => vc.matrix.quadratic(&a) == rat(0),
        _ => false,
    })
}

/// The line of `g . axis` is spanned by the images of the line of `axis`.
pub fn line_transport(g: &Sp3Element<Rat>, line: &SigmaLine<Rat>) -> bool {
    let Ok(moved) = line_from_axis(&g.image(&line.axis)) else { return false };
    let Ok(span) = LinSubspace::span(14, &[moved.span[0].to_vec(), moved.span[1].to_vec()]) else { return false };
    line.span.iter().all(|p| g.act(p).is_ok_and(|q| span.contains(&q.coords).unwrap_or(false)))
}

fn projection_suite(seed: u64, trials: usize) -> Vec<CheckRecord> {
    let mut s = Sampler::new(seed);
    let mut out = Vec::new();

    let line = line_from_axis(&s.isotropic_line()).expect("isotropic line");
    let (mut agree, mut base) = (0, 0);
    if let Ok(pd) = projection_center(&line) {
        for _ in 0..trials {
            let u = exp_map(&s.symmat(-5, 5));
            match pd.in_base_locus(&u) {
                Ok(true) => {
                    base += 1;
                    agree += 1;
                }
                Ok(false) => agree += pd.double_project(&u).is_ok() as usize,
                Err(_) => {}
            }
        }
    }
    let mut rec = CheckRecord::count("plane_meets_space_vs_linear_projection", agree, trials);
    rec.witness = format!("{agree}/{trials} agree, {base} in the base locus");
    out.push(rec);

    let pd = projection_center(&canonical_line()).expect("canonical line");
    let mut formula = 0;
    for _ in 0..trials {
        let x = s.symmat(-5, 5);
        let adj = x.adjugate();
        let mut want = vec![adj.get(0, 0), adj.get(0, 1), adj.get(0, 2), x.determinant()];
        if !normalize_projective(&mut want) {
            formula += pd.in_base_locus(&exp_map(&x)).unwrap_or(false) as usize;
            continue;
        }
        formula += pd.double_project(&exp_map(&x)).is_ok_and(|got| got == want) as usize;
    }
    out.push(CheckRecord::count("canonical_projection_formula", formula, trials));

    let mut equi = 0;
    for _ in 0..trials {
        let g = s.group_element();
        let u = exp_map(&s.symmat(-5, 5));
        let ok = (|| -> Result<bool> {
            let moved = line_from_axis(&g.image(&pd.line.axis))?;
            let pg = projection_center(&moved)?;
            let gu = g.act(&u)?;
            if pd.in_base_locus(&u)? {
                return pg.in_base_locus(&gu);
            }
            Ok(proportional(&pg.linear_image(&gu.normalized()?), &g.apply(&pd.linear_image(&u.normalized()?))))
        })();
        equi += ok.unwrap_or(false) as usize;
    }
    out.push(CheckRecord::count("projection_equivariance", equi, trials));
    out
}

fn section_suite(seed: u64, trials: usize) -> Vec<CheckRecord> {
    let opts = SectionOptions::default();
    let mut out = Vec::new();
    for i in 0..trials as u64 {
        let seed = seed + i;
        let records = match random_section(seed) {
            Ok(sec) => run_section_checks(&sec, None, &opts),
            Err(e) => vec![CheckRecord::new("construction", false, None, e.to_string())],
        };
        out.extend(records.into_iter().map(|mut r| {
            r.name = format!("seed {seed}: {}", r.name);
            r
        }));
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SectionCheck {
    Pivots,
    Fibration,
    LineSection,
}

impl FromStr for SectionCheck {
    type Err = GeomError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "pivots" => Ok(SectionCheck::Pivots),
            "fibration" => Ok(SectionCheck::Fibration),
            "line-section" => Ok(SectionCheck::LineSection),
            other => Err(GeomError::Input(format!("unknown check {other:?} (pivots, fibration, line-section)"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SectionOptions {
    pub points: usize,
    pub digits: u32,
    pub checks: Vec<SectionCheck>,
}

impl Default for SectionOptions {
    fn default() -> Self {
        SectionOptions { points: 20, digits: 60, checks: vec![SectionCheck::Pivots, SectionCheck::Fibration] }
    }
}

/// Sample the dual quartic curve and run the requested checks at `opts.digits`.
///
/// Numeric failures become failed records rather than errors.
pub fn run_section_checks(sec: &FanoSection, line: Option<&SigmaLine<Rat>>, opts: &SectionOptions) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    let quartic = match dual_quartic(sec) {
        Ok(q) => q,
        Err(e) => return vec![CheckRecord::new("dual_quartic_smooth", false, None, e.to_string())],
    };
    let witness = if quartic.degenerate {
        "dual plane lies on the quartic"
    } else if quartic.smooth {
        "resultant nonzero"
    } else {
        "resultant vanishes"
    };
    out.push(CheckRecord::new("dual_quartic_smooth", quartic.smooth, None, witness));
    if !quartic.smooth {
        return out;
    }
    with_precision(opts.digits, || {
        if let Err(e) = numeric_checks(sec, line, &quartic.form, opts, &mut out) {
            out.push(CheckRecord::new("numeric_pipeline", false, None, e.to_string()));
        }
    });
    out
}

fn numeric_checks(
    sec: &FanoSection,
    line: Option<&SigmaLine<Rat>>,
    form: &crate::algebra::form::TernaryForm<Rat>,
    opts: &SectionOptions,
    out: &mut Vec<CheckRecord>,
) -> Result<()> {
    let tol = tolerance();
    let pts = sample_curve(form, opts.points)?;
    let mut cs = pivot_curve(sec, &pts)?;
    let r = cs.max_quartic_residual();
    out.push(CheckRecord::new(
        "curve_points",
        r < tol && pts.len() == opts.points,
        Some(r),
        format!("{} points", pts.len()),
    ));
    let g = cs.min_gradient_size();
    out.push(CheckRecord::new("gradient_bound", g > 1e3 * tol, None, format!("smallest gradient {g:.3e}")));

    if opts.checks.contains(&SectionCheck::Pivots) {
        let r = cs.max_pivot_residual();
        out.push(CheckRecord::new("pivot_residual", r < tol, Some(r), format!("{} pivots", cs.points.len())));
        let d = cs.min_pivot_distance;
        out.push(CheckRecord::new(
            "pivots_distinct",
            cs.coincident_pivots.is_empty(),
            None,
            if cs.coincident_pivots.is_empty() {
                format!("smallest distance {d:.3e}")
            } else {
                format!("coincident pairs {:?}", cs.coincident_pivots)
            },
        ));
    }
    let wants_conics = opts.checks.iter().any(|c| matches!(c, SectionCheck::Fibration | SectionCheck::LineSection));
    if wants_conics {
        cs = vertex_surface(cs)?;
    }
    if opts.checks.contains(&SectionCheck::Fibration) {
        let canon = cs.conics().map(|c| c.conic.canonical_residual).fold(0.0, f64::max);
        out.push(CheckRecord::new(
            "vertex_conic_canonical_form",
            canon < tol,
            Some(canon),
            "u and X parts after transport",
        ));
        let sv = cs.conics().map(|c| c.smallest_singular_value).fold(f64::INFINITY, f64::min);
        out.push(CheckRecord::new(
            "vertex_conic_smooth",
            sv > 1e3 * tol,
            None,
            format!("smallest singular value {sv:.3e}"),
        ));
        let lag = cs.conics().map(|c| c.lagrangian_residual).fold(0.0, f64::max);
        out.push(CheckRecord::new(
            "vertex_conic_lagrangian",
            lag < tol,
            Some(lag),
            "symplectic form on the conic plane",
        ));
        let fib = fibration_check(&cs)?;
        let expected = cs.points.len() * cs.points.len().saturating_sub(1) / 2;
        out.push(CheckRecord::new(
            "fibration",
            fib.violations.is_empty() && fib.pairs_checked + fib.pairs_skipped == expected,
            None,
            format!(
                "{} pairs with join of dimension 6, {} skipped, smallest determinant {:.3e}",
                fib.pairs_checked - fib.violations.len(),
                fib.pairs_skipped,
                fib.min_determinant
            ),
        ));
    }
    if opts.checks.contains(&SectionCheck::LineSection) {
        let Some(line) = line else {
            out.push(CheckRecord::new("line_section", false, None, "section was not built through a line"));
            return Ok(());
        };
        let rep = c_l_section_check(sec, line, &cs)?;
        out.push(CheckRecord::new("line_contained", rep.line_contained, None, "covectors annihilate the line"));
        out.push(CheckRecord::new(
            "line_section_transverse",
            rep.non_transverse.is_empty(),
            None,
            format!(
                "{} of {} planes meet the space in one point",
                cs.points.len() - rep.non_transverse.len(),
                cs.points.len()
            ),
        ));
        let r = rep.max_residual();
        out.push(CheckRecord::new(
            "line_section",
            r < tol && rep.non_transverse.is_empty(),
            Some(r),
            "conic equation at x(c)",
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_on_a_few_trials() {
        for suite in [Suite::Core, Suite::Incidence, Suite::Projection] {
            let recs = run_suite(suite, 7, 3);
            assert!(!recs.is_empty());
            for r in &recs {
                assert!(r.passed(), "{suite:?}: {r:?}");
            }
        }
        assert!(run_suite(Suite::Core, 7, 0).is_empty());
    }

    #[test]
    fn suite_names() {
        assert_eq!("projection".parse::<Suite>().unwrap(), Suite::Projection);
        assert!("everything".parse::<Suite>().is_err());
        assert_eq!("line-section".parse::<SectionCheck>().unwrap(), SectionCheck::LineSection);
    }

    #[test]
    fn section_without_a_line_fails_the_line_check() {
        let sec = random_section(3).unwrap();
        let opts = SectionOptions { points: 4, digits: 40, checks: vec![SectionCheck::LineSection] };
        let recs = run_section_checks(&sec, None, &opts);
        let r = recs.iter().find(|r| r.name == "line_section").unwrap();
        assert!(!r.passed());
    }
}
