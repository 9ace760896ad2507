//! JSON encoding and decoding for lattices, cones, and surface fixtures.
//!
//! Output is canonical: object keys are sorted (the default serde_json map),
//! rationals render as lowest-terms "p/q" strings with positive denominator,
//! and integral values that fit in an i64 render as plain JSON numbers.

use crate::error::{Error, Result};
use crate::fixtures::Fixture;
use crate::isometry::{GroupGens, Isometry};
use crate::lattice::LorentzLattice;
use crate::mat::{Int, Rat};
use crate::surface::{Curve, Declares, Fibration, SurfaceData};
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Map, Value};
use std::str::FromStr;

pub fn parse_rat(s: &str) -> Result<Rat> {
    let bad = || Error::Malformed(format!("not a rational: {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        None => {
            let n = Int::from_str(s).map_err(|_| bad())?;
            Ok(Rat::from_integer(n))
        }
        Some((p, q)) => {
            let p = Int::from_str(p.trim()).map_err(|_| bad())?;
            let q = Int::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(p, q))
        }
    }
}

pub fn parse_rat_vec(s: &str) -> Result<Vec<Rat>> {
    s.split(',').map(parse_rat).collect()
}

pub fn render_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat_to_json(r: &Rat) -> Value {
    if r.denom().is_one() {
        if let Some(n) = r.numer().to_i64() {
            return json!(n);
        }
    }
    json!(render_rat(r))
}

pub fn rvec_to_json(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(rat_to_json).collect())
}

pub fn int_to_json(n: &Int) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

pub fn ivec_to_json(v: &[Int]) -> Value {
    Value::Array(v.iter().map(int_to_json).collect())
}

pub fn json_to_rat(v: &Value) -> Result<Rat> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rat::from_integer(Int::from(i)))
            } else {
                Err(Error::Malformed(format!(
                    "numbers must be integers, got {n}"
                )))
            }
        }
        Value::String(s) => parse_rat(s),
        _ => Err(Error::Malformed(format!("expected a rational, got {v}"))),
    }
}

pub fn json_to_rvec(v: &Value) -> Result<Vec<Rat>> {
    v.as_array()
        .ok_or_else(|| Error::Malformed(format!("expected an array, got {v}")))?
        .iter()
        .map(json_to_rat)
        .collect()
}

pub fn json_to_ivec(v: &Value) -> Result<Vec<Int>> {
    json_to_rvec(v)?
        .iter()
        .map(|r| {
            if r.denom().is_one() {
                Ok(r.numer().clone())
            } else {
                Err(Error::NonIntegral)
            }
        })
        .collect()
}

fn field<'v>(obj: &'v Value, key: &str) -> Result<&'v Value> {
    obj.get(key)
        .ok_or_else(|| Error::Malformed(format!("missing field {key:?}")))
}

fn bool_field(obj: &Value, key: &str, default: bool) -> Result<bool> {
    match obj.get(key) {
        None => Ok(default),
        Some(v) => v
            .as_bool()
            .ok_or_else(|| Error::Malformed(format!("field {key:?} must be a boolean"))),
    }
}

pub fn lattice_to_json(lat: &LorentzLattice) -> Value {
    let gram: Vec<Value> = lat.gram_int().iter().map(|row| ivec_to_json(row)).collect();
    json!({
        "rank": lat.rank(),
        "gram": gram,
        "ample": rvec_to_json(lat.ample()),
    })
}

pub fn json_to_lattice(v: &Value) -> Result<LorentzLattice> {
    let gram_val = field(v, "gram")?
        .as_array()
        .ok_or_else(|| Error::Malformed("gram must be an array of rows".into()))?;
    let gram: Vec<Vec<Int>> = gram_val
        .iter()
        .map(json_to_ivec)
        .collect::<Result<Vec<_>>>()?;
    let ample = json_to_rvec(field(v, "ample")?)?;
    LorentzLattice::new(gram, ample)
}

pub fn surface_to_json(s: &SurfaceData) -> Value {
    let curves: Vec<Value> = s
        .curves()
        .iter()
        .map(|c| {
            json!({
                "name": c.name,
                "class": ivec_to_json(&c.class),
                "in_fiber": c.in_fiber,
            })
        })
        .collect();
    let delta: Vec<Value> = s
        .delta()
        .iter()
        .map(|(i, coeff)| json!({"curve": i, "coeff": rat_to_json(coeff)}))
        .collect();
    let d = s.declares();
    let mut declares = Map::new();
    declares.insert("rational_surface".into(), json!(d.rational_surface));
    declares.insert("anti_K_effective".into(), json!(d.anti_k_effective));
    declares.insert("klt_calabi_yau".into(), json!(d.klt_calabi_yau));
    if let Some(f) = &d.fibration {
        declares.insert(
            "fibration".into(),
            json!({"P": ivec_to_json(&f.p), "a": f.a, "b": f.b}),
        );
    }
    if let Some(coeffs) = &d.anti_k_coeffs {
        declares.insert("anti_K_coeffs".into(), rvec_to_json(coeffs));
    }
    json!({
        "lattice": lattice_to_json(s.lattice()),
        "K": ivec_to_json(s.k()),
        "delta": delta,
        "curves": curves,
        "declares": Value::Object(declares),
    })
}

pub fn json_to_surface(v: &Value) -> Result<SurfaceData> {
    let lattice = json_to_lattice(field(v, "lattice")?)?;
    let k = json_to_ivec(field(v, "K")?)?;
    let delta = match v.get("delta") {
        None => vec![],
        Some(arr) => arr
            .as_array()
            .ok_or_else(|| Error::Malformed("delta must be an array".into()))?
            .iter()
            .map(|e| {
                let i = field(e, "curve")?
                    .as_u64()
                    .ok_or_else(|| Error::Malformed("delta curve index must be a number".into()))?
                    as usize;
                Ok((i, json_to_rat(field(e, "coeff")?)?))
            })
            .collect::<Result<Vec<_>>>()?,
    };
    let curves = match v.get("curves") {
        None => vec![],
        Some(arr) => arr
            .as_array()
            .ok_or_else(|| Error::Malformed("curves must be an array".into()))?
            .iter()
            .map(|e| {
                Ok(Curve {
                    name: field(e, "name")?
                        .as_str()
                        .ok_or_else(|| Error::Malformed("curve name must be a string".into()))?
                        .to_string(),
                    class: json_to_ivec(field(e, "class")?)?,
                    in_fiber: bool_field(e, "in_fiber", false)?,
                })
            })
            .collect::<Result<Vec<_>>>()?,
    };
    let declares = match v.get("declares") {
        None => Declares::default(),
        Some(d) => {
            let fibration = match d.get("fibration") {
                None | Some(Value::Null) => None,
                Some(f) => {
                    let a = field(f, "a")?
                        .as_i64()
                        .ok_or_else(|| Error::Malformed("fibration a must be an integer".into()))?;
                    let b = field(f, "b")?
                        .as_i64()
                        .ok_or_else(|| Error::Malformed("fibration b must be an integer".into()))?;
                    Some(Fibration {
                        p: json_to_ivec(field(f, "P")?)?,
                        a,
                        b,
                    })
                }
            };
            let anti_k_coeffs = match d.get("anti_K_coeffs") {
                None | Some(Value::Null) => None,
                Some(arr) => Some(json_to_rvec(arr)?),
            };
            Declares {
                rational_surface: bool_field(d, "rational_surface", false)?,
                anti_k_effective: bool_field(d, "anti_K_effective", false)?,
                klt_calabi_yau: bool_field(d, "klt_calabi_yau", false)?,
                fibration,
                anti_k_coeffs,
            }
        }
    };
    SurfaceData::new(lattice, k, delta, curves, declares)
}

pub fn fixture_to_json(fix: &Fixture) -> Value {
    let mut obj = match surface_to_json(&fix.surface) {
        Value::Object(m) => m,
        _ => unreachable!(),
    };
    obj.insert("name".into(), json!(fix.name));
    if let Some(group) = &fix.group {
        let gens: Vec<Value> = group
            .gens()
            .iter()
            .map(|g| {
                let m = g.matrix();
                let rows: Vec<Value> = (0..m.rows())
                    .map(|i| rvec_to_json(&(0..m.cols()).map(|j| m.at(i, j).clone()).collect::<Vec<_>>()))
                    .collect();
                Value::Array(rows)
            })
            .collect();
        obj.insert("group".into(), Value::Array(gens));
    }
    if let Some(y) = &fix.basepoint {
        obj.insert("basepoint".into(), rvec_to_json(y));
    }
    if !fix.expected.is_empty() {
        let mut m = Map::new();
        for (k, v) in &fix.expected {
            m.insert(k.clone(), json!(v));
        }
        obj.insert("expected".into(), Value::Object(m));
    }
    Value::Object(obj)
}

pub fn json_to_fixture(name: &str, v: &Value) -> Result<Fixture> {
    let surface = json_to_surface(v)?;
    let group = match v.get("group") {
        None | Some(Value::Null) => None,
        Some(arr) => {
            let gens = arr
                .as_array()
                .ok_or_else(|| Error::Malformed("group must be an array of matrices".into()))?
                .iter()
                .map(|m| {
                    let rows = m
                        .as_array()
                        .ok_or_else(|| Error::Malformed("generator must be a matrix".into()))?
                        .iter()
                        .map(json_to_rvec)
                        .collect::<Result<Vec<_>>>()?;
                    Isometry::new(surface.lattice(), crate::mat::QMat::from_rows(rows))
                })
                .collect::<Result<Vec<_>>>()?;
            Some(GroupGens::new(surface.lattice(), gens)?)
        }
    };
    let basepoint = match v.get("basepoint") {
        None | Some(Value::Null) => None,
        Some(b) => Some(json_to_rvec(b)?),
    };
    Ok(Fixture {
        name: name.to_string(),
        surface,
        group,
        basepoint,
        expected: vec![],
    })
}
