//! End-to-end acceptance run: ten criteria, one line of output each.
//!
//! Runs without the libtest harness so that the summary lines are always
//! printed; the process fails if any criterion fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use sp3geom::algebra::form::TernaryForm;
use sp3geom::algebra::subspace::{unit, LinSubspace};
use sp3geom::algebra::symmat::SymMat3;
use sp3geom::incidence::{line_from_axis, quadric_in_hyperplane, quadric_span, vertex_conic, E1_QUADRIC_COORDS};
use sp3geom::projection::{projection_center, TARGET_COORDS};
use sp3geom::quartic::{f_eval, f_grad, gradient_vanishes};
use sp3geom::random::Sampler;
use sp3geom::report::CheckRecord;
use sp3geom::scalar::{normalize_projective, rat, ratio, Rat};
use sp3geom::section::{dual_quartic, is_smooth_quartic, random_section, section_through_line, FanoSection};
use sp3geom::sp3::{exp_map, pairing, sigma_residual, Point13};
use sp3geom::verify::{
    canonical_covector, canonical_line, conic_transport, run_section_checks, SectionCheck, SectionOptions,
};
use sp3geom::RatLine;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

/// Symmetric matrix with small rational entries `p/q`.
fn rational_symmat(s: &mut Sampler) -> SymMat3<Rat> {
    SymMat3::new(std::array::from_fn(|_| ratio(s.int(-9, 9), s.int(1, 4))))
}

fn within(start: Instant, limit: Duration) -> (bool, String) {
    let t = start.elapsed();
    (t < limit, format!("{:.2} s of {} s", t.as_secs_f64(), limit.as_secs()))
}

fn chart_points_on_grassmannian() -> Outcome {
    let start = Instant::now();
    let mut s = Sampler::new(101);
    let good = (0..500)
        .filter(|_| {
            let r = sigma_residual(&exp_map(&rational_symmat(&mut s)));
            r.len() == 21 && r.iter().all(|x| *x == rat(0))
        })
        .count();
    let (fast, t) = within(start, Duration::from_secs(5));
    outcome(good == 500 && fast, format!("{good}/500 points satisfy all 21 quadrics, {t}"))
}

fn gradient_identities() -> Outcome {
    let start = Instant::now();
    let mut s = Sampler::new(102);
    let euler = (0..1000)
        .filter(|_| {
            let p = Point13::new(std::array::from_fn(|_| ratio(s.int(-7, 7), s.int(1, 3))));
            pairing(&f_grad(&p).coords, &p.coords) == rat(4) * f_eval(&p)
        })
        .count();
    let sigma = (0..200).filter(|_| gradient_vanishes(&s.sigma_point())).count();
    let mut omega = 0;
    while omega < 50 {
        let x = s.symmat(-4, 4);
        if x.rank() != 2 {
            continue;
        }
        let p = Point13::from_blocks(s.rat(-5, 5), &x, &SymMat3::zero(), rat(0));
        if !gradient_vanishes(&p) {
            break;
        }
        omega += 1;
    }
    let (fast, t) = within(start, Duration::from_secs(10));
    outcome(
        euler == 1000 && sigma == 200 && omega == 50 && fast,
        format!("Euler {euler}/1000, gradient zero on {sigma}/200 grassmannian and {omega}/50 rank-2 points, {t}"),
    )
}

fn gradient_on_y_chart() -> Outcome {
    let mut s = Sampler::new(103);
    let good = (0..100)
        .filter(|_| {
            let y = rational_symmat(&mut s);
            let p = Point13::from_blocks(rat(0), &SymMat3::zero(), &y, ratio(s.int(-9, 9), s.int(1, 4)));
            let mut want = Point13::zero();
            want.coords[0] = rat(4) * y.determinant();
            f_grad(&p) == want
        })
        .count();
    outcome(good == 100, format!("gradient equals (4 det Y : 0 : ... : 0) for {good}/100 points"))
}

fn canonical_vertex_conic() -> Outcome {
    let c = canonical_covector();
    let Ok(vc) = vertex_conic(&c) else { return outcome(false, "vertex_conic failed") };
    let form = vc.form().to_string();
    let plane_ok = vc.plane() == LinSubspace::coordinate(6, &[0, 1, 2]);
    let pivot_ok = vc.pivot == Point13::unit(0);
    let mut s = Sampler::new(104);
    let transported = (0..20).filter(|_| conic_transport(&s.group_element(), &c)).count();
    outcome(
        form == "2*s*t + w^2" && plane_ok && pivot_ok && transported == 20,
        format!("conic {form:?} on the plane of e1, e2, e3; transport {transported}/20"),
    )
}

fn quadric_through_e1() -> Outcome {
    let Ok(q) = quadric_span(&unit::<Rat>(6, 0)) else { return outcome(false, "quadric_span failed") };
    let span_ok = q.span == LinSubspace::coordinate(14, &E1_QUADRIC_COORDS);
    let rank = q.rank();
    let c = canonical_covector();
    let inside = quadric_in_hyperplane(&c, &unit(6, 0)).unwrap_or(false);
    let outside = !quadric_in_hyperplane(&c, &unit(6, 2)).unwrap_or(true);
    outcome(
        span_ok && rank == 5 && inside && outside,
        format!("span on (u, X22, X23, X33, Y11): {span_ok}, rank {rank}, Q_e1 in H_c: {inside}, Q_e3 not in H_c: {outside}"),
    )
}

fn projection_agreement() -> Outcome {
    let start = Instant::now();
    let mut s = Sampler::new(106);
    let mut agree = 0;
    let mut base = 0;
    for _ in 0..3 {
        let Ok(pd) = line_from_axis(&s.isotropic_line()).and_then(|l| projection_center(&l)) else {
            return outcome(false, "projection setup failed");
        };
        for _ in 0..100 {
            let u = exp_map(&rational_symmat(&mut s));
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
    // At the canonical line the projection reads off exactly (Y11 : Y12 : Y13 : z), and on
    // exp(X) these coordinates are the cofactors of the first row of X and det X.
    let pd = projection_center(&canonical_line()).expect("canonical line");
    let symbolic = (0..4).all(|k| pd.functionals.row(k) == Point13::<Rat>::unit(TARGET_COORDS[k]).coords.as_slice());
    let mut formula = 0;
    for _ in 0..100 {
        let x = rational_symmat(&mut s);
        let adj = x.adjugate();
        let mut want = vec![adj.get(0, 0), adj.get(0, 1), adj.get(0, 2), x.determinant()];
        let ok = if normalize_projective(&mut want) {
            pd.double_project(&exp_map(&x)).is_ok_and(|got| got == want)
        } else {
            pd.in_base_locus(&exp_map(&x)).unwrap_or(false)
        };
        formula += ok as usize;
    }
    let (fast, t) = within(start, Duration::from_secs(30));
    outcome(
        agree == 300 && symbolic && formula == 100 && fast,
        format!("{agree}/300 agree ({base} in base locus); canonical functionals exact: {symbolic}; formula {formula}/100; {t}"),
    )
}

fn worked_dual_quartic() -> Outcome {
    let sec = FanoSection::new([Point13::unit(0), Point13::unit(13), canonical_covector()], 0).expect("independent");
    let Ok(q) = dual_quartic(&sec) else { return outcome(false, "dual_quartic failed") };
    let form = q.form.to_string();
    let quartic =
        |terms: &[([u32; 3], i64)]| TernaryForm::from_terms(4, terms.iter().map(|(e, c)| (*e, rat(*c)))).unwrap();
    let fermat = is_smooth_quartic(&quartic(&[([4, 0, 0], 1), ([0, 4, 0], 1), ([0, 0, 4], 1)])).unwrap_or(false);
    let klein = is_smooth_quartic(&quartic(&[([3, 1, 0], 1), ([0, 3, 1], 1), ([1, 0, 3], 1)])).unwrap_or(false);
    let worked = is_smooth_quartic(&q.form).unwrap_or(true);
    outcome(
        form == "s^2*t^2 - 4*s*w^3" && !worked && fermat && klein,
        format!("{form}; smooth: worked {worked}, Fermat {fermat}, Klein {klein}"),
    )
}

type Residuals = BTreeMap<String, f64>;
type Criterion = Box<dyn FnOnce(&mut Residuals) -> Outcome>;

fn residuals(tag: &str, records: &[CheckRecord]) -> Residuals {
    records.iter().filter_map(|r| r.residual.map(|v| (format!("{tag}: {}", r.name), v))).collect()
}

fn record<'a>(records: &'a [CheckRecord], name: &str) -> Option<&'a CheckRecord> {
    records.iter().find(|r| r.name == name)
}

const SECTION_SEEDS: [u64; 5] = [11, 12, 13, 14, 15];
const LINE_SEEDS: [u64; 3] = [21, 22, 23];

fn random_sections(digits: u32, out: &mut Residuals) -> Outcome {
    let opts = SectionOptions { points: 20, digits, checks: vec![SectionCheck::Pivots, SectionCheck::Fibration] };
    let mut details = Vec::new();
    let mut ok = true;
    for seed in SECTION_SEEDS {
        let start = Instant::now();
        let Ok(sec) = random_section(seed) else {
            ok = false;
            details.push(format!("seed {seed}: no smooth section"));
            continue;
        };
        let recs = run_section_checks(&sec, None, &opts);
        let pivot = record(&recs, "pivot_residual").and_then(|r| r.residual).unwrap_or(f64::INFINITY);
        let fib = record(&recs, "fibration");
        let (fast, _) = within(start, Duration::from_secs(120));
        let all = recs.iter().all(CheckRecord::passed);
        let good = all && pivot < 1e-50 && fib.is_some_and(|f| f.witness.starts_with("190 pairs")) && fast;
        ok &= good;
        if !good {
            let failed: Vec<&str> = recs.iter().filter(|r| !r.passed()).map(|r| r.name.as_str()).collect();
            details.push(format!("seed {seed}: failed {failed:?}, pivot residual {pivot:.1e}"));
        }
        out.extend(residuals(&format!("section {seed}"), &recs));
    }
    let worst = out.iter().filter(|(k, _)| k.ends_with("pivot_residual")).map(|(_, v)| *v).fold(0.0, f64::max);
    if details.is_empty() {
        details.push(format!(
            "5 sections, 20 points each, worst pivot residual {worst:.1e}, 190/190 disjoint conic planes"
        ));
    }
    outcome(ok, details.join("; "))
}

fn line_sections(digits: u32, out: &mut Residuals) -> Outcome {
    let opts = SectionOptions {
        points: 20,
        digits,
        checks: vec![SectionCheck::Pivots, SectionCheck::Fibration, SectionCheck::LineSection],
    };
    let mut details = Vec::new();
    let mut ok = true;
    for (i, seed) in LINE_SEEDS.into_iter().enumerate() {
        let line: RatLine = if i == 0 {
            canonical_line()
        } else {
            line_from_axis(&Sampler::new(seed).isotropic_line()).expect("isotropic")
        };
        let Ok((sec, line)) = section_through_line(&line.axis, seed) else {
            ok = false;
            details.push(format!("seed {seed}: no smooth section through the line"));
            continue;
        };
        let recs = run_section_checks(&sec, Some(&line), &opts);
        let r = record(&recs, "line_section").and_then(|r| r.residual).unwrap_or(f64::INFINITY);
        let good = recs.iter().all(CheckRecord::passed) && r < 1e-50;
        ok &= good;
        if !good {
            let failed: Vec<&str> = recs.iter().filter(|r| !r.passed()).map(|r| r.name.as_str()).collect();
            details.push(format!("seed {seed}: failed {failed:?}, line residual {r:.1e}"));
        }
        out.extend(residuals(&format!("line section {seed}"), &recs));
    }
    let worst = out.iter().filter(|(k, _)| k.ends_with(": line_section")).map(|(_, v)| *v).fold(0.0, f64::max);
    if details.is_empty() {
        details.push(format!("3 sections through a line, 20 points each, worst conic residual at x(c) {worst:.1e}"));
    }
    outcome(ok, details.join("; "))
}

/// Every residual at 120 digits must be at least `10^10` times smaller than at 60.
/// A residual that is exactly zero at both precisions passes.
fn stability(low: &Residuals) -> Outcome {
    let mut high = Residuals::new();
    random_sections(120, &mut high);
    line_sections(120, &mut high);
    let mut bad = Vec::new();
    let mut weakest = f64::INFINITY;
    for (k, lo) in low {
        let Some(hi) = high.get(k) else {
            bad.push(format!("{k} missing at 120 digits"));
            continue;
        };
        if *lo == 0.0 && *hi == 0.0 {
            continue;
        }
        let gain = if *hi == 0.0 { f64::INFINITY } else { lo / hi };
        weakest = weakest.min(gain);
        if gain < 1e10 {
            bad.push(format!("{k}: {lo:.1e} -> {hi:.1e}"));
        }
    }
    if high.len() != low.len() {
        bad.push(format!("{} residuals at 60 digits, {} at 120", low.len(), high.len()));
    }
    let detail = if bad.is_empty() {
        format!("{} residuals compared, smallest improvement factor {weakest:.1e}", low.len())
    } else {
        bad.join("; ")
    };
    outcome(bad.is_empty() && !low.is_empty(), detail)
}

fn main() -> ExitCode {
    let mut low = Residuals::new();
    let criteria: Vec<(&str, Criterion)> = vec![
        ("chart points satisfy the Cramer quadrics", Box::new(|_| chart_points_on_grassmannian())),
        ("Euler identity; gradient vanishes on the singular locus", Box::new(|_| gradient_identities())),
        ("gradient on the (0 : 0 : Y : z) chart", Box::new(|_| gradient_on_y_chart())),
        ("canonical vertex conic and its transport", Box::new(|_| canonical_vertex_conic())),
        ("quadric of planes through e1", Box::new(|_| quadric_through_e1())),
        ("double projection: plane intersection vs linear map", Box::new(|_| projection_agreement())),
        ("dual quartic of the worked plane; smoothness", Box::new(|_| worked_dual_quartic())),
        ("random sections at 60 digits", Box::new(|r| random_sections(60, r))),
        ("sections through a line at 60 digits", Box::new(|r| line_sections(60, r))),
        ("residuals shrink from 60 to 120 digits", Box::new(|r| stability(r))),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let o = run(&mut low);
        failures += !o.ok as usize;
        println!(
            "acceptance {:>2} {} | {name} | {} | {:.1} s",
            i + 1,
            if o.ok { "PASS" } else { "FAIL" },
            o.detail,
            start.elapsed().as_secs_f64()
        );
    }
    if failures == 0 {
        println!("acceptance: all 10 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failures} of 10 criteria fail");
        ExitCode::FAILURE
    }
}
