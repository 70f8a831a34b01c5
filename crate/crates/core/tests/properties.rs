use proptest::prelude::*;

use sp3geom::algebra::form::{interpolate_ternary_form, monomials, TernaryForm};
use sp3geom::algebra::matrix::Matrix;
use sp3geom::algebra::subspace::LinSubspace;
use sp3geom::algebra::symmat::SymMat3;
use sp3geom::bigfloat::{with_precision, CBig};
use sp3geom::incidence::{line_from_axis, line_stays_on_sigma};
use sp3geom::json::{point_from_json, point_to_json};
use sp3geom::numeric::roots_univariate;
use sp3geom::quartic::{classify_orbit, f_eval, f_grad, hat_pivot, tangent_space, OrbitClass};
use sp3geom::random::Sampler;
use sp3geom::scalar::{normalize_projective, proportional, rat, ratio, Rat, Scalar};
use sp3geom::sp3::{exp_map, is_on_sigma, pairing, plane_of, plucker, rho_wedge3, Point13, Sp3Element};
use sp3geom::verify::canonical_covector;

fn small_rat() -> impl Strategy<Value = Rat> {
    (-9i64..=9, 1i64..=4).prop_map(|(p, q)| ratio(p, q))
}

fn symmat() -> impl Strategy<Value = SymMat3<Rat>> {
    prop::array::uniform6(small_rat()).prop_map(SymMat3::new)
}

fn point() -> impl Strategy<Value = Point13<Rat>> {
    prop::array::uniform14(small_rat())
        .prop_filter("nonzero", |a| a.iter().any(|x| *x != rat(0)))
        .prop_map(Point13::new)
}

fn transvection() -> impl Strategy<Value = Sp3Element<Rat>> {
    (prop::array::uniform6(-2i64..=2), small_rat())
        .prop_filter("nonzero vector", |(v, _)| v.iter().any(|x| *x != 0))
        .prop_map(|(v, l)| Sp3Element::transvection(&v.map(rat), &l))
}

fn group_element() -> impl Strategy<Value = Sp3Element<Rat>> {
    prop::collection::vec(transvection(), 1..5)
        .prop_map(|ts| ts.iter().fold(Sp3Element::identity(), |g, t| g.compose(t)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn adjugate_inverts_up_to_determinant(x in symmat()) {
        let prod = &x.to_matrix() * &x.adjugate().to_matrix();
        let want = Matrix::from_fn(3, 3, |i, j| if i == j { x.determinant() } else { rat(0) });
        prop_assert_eq!(prod, want);
    }

    #[test]
    fn chart_points_lie_on_the_grassmannian(x in symmat()) {
        let p = exp_map(&x);
        prop_assert!(is_on_sigma(&p));
        prop_assert_eq!(classify_orbit(&p), OrbitClass::Sigma);
        prop_assert_eq!(tangent_space(&p).unwrap().dim(), 7);
    }

    #[test]
    fn plucker_round_trip(x in symmat(), g in group_element()) {
        let p = g.act(&exp_map(&x)).unwrap();
        let plane = plane_of(&p).unwrap();
        prop_assert!(plucker(&plane).unwrap().proj_eq(&p));
    }

    #[test]
    fn euler_identity(p in point()) {
        prop_assert_eq!(pairing(&f_grad(&p).coords, &p.coords), rat(4) * f_eval(&p));
    }

    #[test]
    fn quartic_is_invariant(p in point(), g in group_element()) {
        prop_assert_eq!(f_eval(&g.act(&p).unwrap()), f_eval(&p));
    }

    #[test]
    fn dual_action_preserves_the_pairing(p in point(), c in point(), g in group_element()) {
        let lhs = pairing(&g.act_dual(&c).unwrap().coords, &g.act(&p).unwrap().coords);
        prop_assert_eq!(lhs, pairing(&c.coords, &p.coords));
    }

    #[test]
    fn wedge_cube_is_a_homomorphism(g in group_element(), h in group_element()) {
        let lhs = rho_wedge3(&g.compose(&h)).unwrap();
        let rhs = &rho_wedge3(&g).unwrap() * &rho_wedge3(&h).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(g.compose(&g.inverse()), Sp3Element::identity());
    }

    #[test]
    fn pivot_of_a_moved_covector(g in group_element()) {
        let c = g.act_dual(&canonical_covector()).unwrap();
        prop_assert_eq!(f_eval(&c), rat(0));
        let pivot = hat_pivot(&c).unwrap();
        prop_assert!(is_on_sigma(&pivot));
        prop_assert!(pivot.proj_eq(&g.act(&Point13::unit(0)).unwrap()));
    }

    #[test]
    fn lines_stay_on_the_grassmannian(seed in 0u64..1000, a in small_rat(), b in small_rat()) {
        let axis = Sampler::new(seed).isotropic_line();
        let line = line_from_axis(&axis).unwrap();
        prop_assert!(line_stays_on_sigma(&line, &[(a, b), (rat(1), rat(0)), (rat(0), rat(1))]));
        prop_assert_eq!(line.space.dim(), 4);
    }

    #[test]
    fn interpolation_recovers_forms(coeffs in prop::collection::vec(small_rat(), 15)) {
        let f = TernaryForm::from_terms(4, monomials(4).into_iter().zip(coeffs)).unwrap();
        let back = interpolate_ternary_form(4, |p: &[Rat; 3]| f.eval(p)).unwrap();
        prop_assert_eq!(back.zero, f.is_zero());
        prop_assert_eq!(back.form, f);
    }

    #[test]
    fn projective_normalization(v in prop::collection::vec(small_rat(), 5), s in small_rat()) {
        prop_assume!(s != rat(0));
        let scaled: Vec<Rat> = v.iter().map(|x| x.clone() * s.clone()).collect();
        let (mut a, mut b) = (v.clone(), scaled.clone());
        let nonzero = normalize_projective(&mut a);
        normalize_projective(&mut b);
        prop_assert_eq!(&a, &b);
        prop_assert!(!nonzero || proportional(&v, &scaled));
    }

    #[test]
    fn point_json_round_trip(p in point()) {
        prop_assert_eq!(point_from_json(&point_to_json(&p)).unwrap(), p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn roots_of_integer_polynomials(roots in prop::collection::vec(-6i64..=6, 1..7)) {
        // coefficients of prod (t - r), ascending
        let mut c = vec![rat(1)];
        for r in &roots {
            let mut next = vec![rat(0); c.len() + 1];
            for (i, a) in c.iter().enumerate() {
                next[i + 1] = next[i + 1].clone() + a.clone();
                next[i] = next[i].clone() - a.clone() * rat(*r);
            }
            c = next;
        }
        with_precision(60, || {
            let found = roots_univariate(&c.iter().map(CBig::from_rat).collect::<Vec<_>>()).unwrap();
            for r in &roots {
                // multiple roots are only determined to about a power of the working precision
                let best = found.iter().map(|z| (z.clone() - CBig::from_i64(*r)).modulus()).fold(f64::INFINITY, f64::min);
                prop_assert!(best < 1e-8, "root {} missed by {}", r, best);
            }
            Ok(())
        })?;
    }

    #[test]
    fn lagrangian_spans_are_isotropic(seed in 0u64..1000) {
        let plane: LinSubspace<Rat> = Sampler::new(seed).lagrangian_plane();
        prop_assert!(sp3geom::sp3::is_isotropic(&plane));
        prop_assert_eq!(plane.dim(), 3);
    }
}
