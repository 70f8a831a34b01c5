//! JSON encodings of the exact objects exchanged by the command-line tool.
//!
//! Rationals are strings `"p/q"` (or `"p"` for integers); plain JSON
//! integers are accepted on input.

use serde_json::{json, Map, Value};

use crate::algebra::form::TernaryForm;
use crate::algebra::matrix::Matrix;
use crate::algebra::subspace::LinSubspace;
use crate::algebra::symmat::SymMat3;
use crate::bigfloat::BigFloat;
use crate::error::{GeomError, Result};
use crate::incidence::{line_from_axis, SigmaLine};
use crate::numeric::NumPoint;
use crate::scalar::{parse_rat, Rat};
use crate::section::{DualQuartic, FanoSection};
use crate::sp3::group::Sp3Element;
use crate::sp3::point::Point13;

fn bad(what: &str) -> GeomError {
    GeomError::Input(format!("malformed {what}"))
}

pub fn rat_to_json(r: &Rat) -> Value {
    Value::String(r.to_string())
}

pub fn rat_from_json(v: &Value) -> Result<Rat> {
    match v {
        Value::String(s) => parse_rat(s).ok_or_else(|| GeomError::Input(format!("not a rational: {s:?}"))),
        Value::Number(n) => n
            .as_i64()
            .map(crate::scalar::rat)
            .ok_or_else(|| GeomError::Input(format!("non-integer number {n}; write rationals as \"p/q\""))),
        _ => Err(bad("rational")),
    }
}

pub fn vec_to_json(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(rat_to_json).collect())
}

pub fn vec_from_json(v: &Value, len: usize) -> Result<Vec<Rat>> {
    let a = v.as_array().ok_or_else(|| bad("vector"))?;
    if a.len() != len {
        return Err(GeomError::DimensionMismatch { expected: len, found: a.len() });
    }
    a.iter().map(rat_from_json).collect()
}

fn vectors_from_json(v: &Value, len: usize) -> Result<Vec<Vec<Rat>>> {
    v.as_array().ok_or_else(|| bad("list of vectors"))?.iter().map(|x| vec_from_json(x, len)).collect()
}

pub fn point_to_json(p: &Point13<Rat>) -> Value {
    json!({
        "u": rat_to_json(&p.u()),
        "X": vec_to_json(&p.x().entries),
        "Y": vec_to_json(&p.y().entries),
        "z": rat_to_json(&p.z()),
    })
}

pub fn point_from_json(v: &Value) -> Result<Point13<Rat>> {
    let o = v.as_object().ok_or_else(|| bad("point (expected an object with u, X, Y, z)"))?;
    let field = |k: &str| o.get(k).ok_or_else(|| GeomError::Input(format!("point is missing field {k:?}")));
    let sym = |k: &str| -> Result<SymMat3<Rat>> {
        let e = vec_from_json(field(k)?, 6)?;
        Ok(SymMat3::new(e.try_into().expect("six entries")))
    };
    Ok(Point13::from_blocks(rat_from_json(field("u")?)?, &sym("X")?, &sym("Y")?, rat_from_json(field("z")?)?))
}

pub fn form_to_json(f: &TernaryForm<Rat>) -> Value {
    let coeffs: Map<String, Value> =
        f.terms().map(|(e, c)| (format!("{},{},{}", e[0], e[1], e[2]), rat_to_json(c))).collect();
    json!({ "deg": f.degree(), "coeffs": coeffs })
}

pub fn form_from_json(v: &Value) -> Result<TernaryForm<Rat>> {
    let deg = v.get("deg").and_then(Value::as_u64).ok_or_else(|| bad("form degree"))?;
    let coeffs = v.get("coeffs").and_then(Value::as_object).ok_or_else(|| bad("form coefficients"))?;
    let mut terms = Vec::with_capacity(coeffs.len());
    for (k, c) in coeffs {
        let e: Vec<u32> = k
            .split(',')
            .map(|x| x.trim().parse())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad("exponent"))?;
        let e: [u32; 3] = e.try_into().map_err(|_| bad("exponent"))?;
        terms.push((e, rat_from_json(c)?));
    }
    TernaryForm::from_terms(deg as u32, terms)
}

pub fn bigfloat_to_json(x: &BigFloat) -> Value {
    json!({ "v": x.to_decimal(x.digits()), "prec": x.digits() })
}

pub fn numpoint_to_json(p: &NumPoint) -> Value {
    Value::Array(
        p.coords().iter().map(|c| json!({ "re": bigfloat_to_json(&c.re), "im": bigfloat_to_json(&c.im) })).collect(),
    )
}

pub fn group_to_json(g: &Sp3Element<Rat>) -> Value {
    let m = g.matrix();
    Value::Array((0..36).map(|k| rat_to_json(&m[(k / 6, k % 6)])).collect())
}

pub fn group_from_json(v: &Value) -> Result<Sp3Element<Rat>> {
    let e = vec_from_json(v, 36)?;
    Sp3Element::new(Matrix::from_fn(6, 6, |i, j| e[6 * i + j].clone()))
}

pub fn line_to_json(l: &SigmaLine<Rat>) -> Value {
    json!({
        "axis": Value::Array(l.axis.basis().iter().map(|v| vec_to_json(v)).collect()),
        "space": Value::Array(l.space.basis().iter().map(|v| vec_to_json(v)).collect()),
        "span": [point_to_json(&l.span[0]), point_to_json(&l.span[1])],
    })
}

/// Reads a line from its `axis`; `space` and `span`, when present, must agree with it.
pub fn line_from_json(v: &Value) -> Result<SigmaLine<Rat>> {
    let axis = v.get("axis").ok_or_else(|| bad("line (missing \"axis\")"))?;
    let line = line_from_axis(&LinSubspace::span(6, &vectors_from_json(axis, 6)?)?)?;
    if let Some(space) = v.get("space") {
        if LinSubspace::span(6, &vectors_from_json(space, 6)?)? != line.space {
            return Err(GeomError::Input("line space is not the orthogonal of its axis".into()));
        }
    }
    if let Some(span) = v.get("span") {
        let pts = span.as_array().ok_or_else(|| bad("line span"))?;
        let given =
            LinSubspace::span(14, &pts.iter().map(|p| Ok(point_from_json(p)?.to_vec())).collect::<Result<Vec<_>>>()?)?;
        let own = LinSubspace::span(14, &[line.span[0].to_vec(), line.span[1].to_vec()])?;
        if given != own {
            return Err(GeomError::Input("line span does not match its axis".into()));
        }
    }
    Ok(line)
}

pub fn section_to_json(sec: &FanoSection, line: Option<&SigmaLine<Rat>>) -> Value {
    let mut v = json!({
        "covectors": sec.covectors.iter().map(point_to_json).collect::<Vec<_>>(),
        "seed": sec.seed,
    });
    if let Some(l) = line {
        v["line"] = line_to_json(l);
    }
    v
}

pub fn section_from_json(v: &Value) -> Result<(FanoSection, Option<SigmaLine<Rat>>)> {
    let cs = v.get("covectors").and_then(Value::as_array).ok_or_else(|| bad("section (missing \"covectors\")"))?;
    if cs.len() != 3 {
        return Err(GeomError::DimensionMismatch { expected: 3, found: cs.len() });
    }
    let covectors = [point_from_json(&cs[0])?, point_from_json(&cs[1])?, point_from_json(&cs[2])?];
    let seed = v.get("seed").and_then(Value::as_u64).unwrap_or(0);
    let sec = FanoSection::new(covectors, seed)?;
    let line = v.get("line").map(line_from_json).transpose()?;
    Ok((sec, line))
}

pub fn dual_quartic_to_json(q: &DualQuartic) -> Value {
    json!({
        "form": form_to_json(&q.form),
        "degenerate": q.degenerate,
        "smooth": q.smooth,
        "resultant": q.resultant.as_ref().map(rat_to_json),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::subspace::unit;
    use crate::scalar::{rat, ratio};
    use crate::sp3::sigma::exp_map;

    #[test]
    fn rationals() {
        assert_eq!(rat_to_json(&ratio(-3, 6)), json!("-1/2"));
        assert_eq!(rat_to_json(&rat(4)), json!("4"));
        assert_eq!(rat_from_json(&json!("6/4")).unwrap(), ratio(3, 2));
        assert_eq!(rat_from_json(&json!(-7)).unwrap(), rat(-7));
        assert!(rat_from_json(&json!("1/0")).is_err());
        assert!(rat_from_json(&json!(0.5)).is_err());
    }

    #[test]
    fn point_round_trip() {
        let p = exp_map(&SymMat3::new([ratio(1, 2), rat(1), rat(0), rat(-2), rat(3), ratio(5, 3)]));
        let v = point_to_json(&p);
        assert_eq!(v["u"], json!("1"));
        assert_eq!(point_from_json(&v).unwrap(), p);
        assert!(point_from_json(&json!({"u": "1", "X": [], "Y": [], "z": "0"})).is_err());
    }

    #[test]
    fn form_round_trip() {
        let f = TernaryForm::from_terms(4, [([2, 2, 0], rat(1)), ([1, 0, 3], rat(-4))]).unwrap();
        let v = form_to_json(&f);
        assert_eq!(v["coeffs"]["1,0,3"], json!("-4"));
        assert_eq!(form_from_json(&v).unwrap(), f);
    }

    #[test]
    fn line_round_trip() {
        let line = line_from_axis(&LinSubspace::span(6, &[unit(6, 1), unit(6, 2)]).unwrap()).unwrap();
        assert_eq!(line_from_json(&line_to_json(&line)).unwrap(), line);
        let bad_span = json!({"axis": [vec_to_json(&unit(6, 1)), vec_to_json(&unit(6, 2))], "span": [point_to_json(&Point13::unit(13))]});
        assert!(line_from_json(&bad_span).is_err());
        let not_isotropic = json!({"axis": [vec_to_json(&unit(6, 0)), vec_to_json(&unit(6, 3))]});
        assert!(line_from_json(&not_isotropic).is_err());
    }

    #[test]
    fn group_round_trip() {
        let g = Sp3Element::<Rat>::quarter_turn();
        assert_eq!(group_from_json(&group_to_json(&g)).unwrap(), g);
        let mut e = vec![json!("0"); 36];
        e[0] = json!("2");
        assert!(group_from_json(&Value::Array(e)).is_err());
    }
}
