//! JSON form of polynomials, formulas, sets and piecewise maps.
//!
//! A polynomial is an object `{"nvars": n, "terms": {"e0,e1,…": "p/q"}}`.
//! A formula is `true`, `false`, `[rel, poly]` for an atom, or
//! `["and" | "or" | "not", …]`. A map is `{"source", "target", "pieces":
//! [{"cell", "numerators", "denominators"}]}`.

use serde_json::{json, Map, Value};

use super::map::{Piece, PiecewiseMap, RationalMap};
use super::set::{Formula, Rel, SemiAlgSet, Support};
use super::SemiAlgError;
use crate::poly::{MPoly, RationalFunction};
use crate::scalar::OrderedField;

fn err(msg: impl Into<String>) -> SemiAlgError {
    SemiAlgError::Parse(msg.into())
}

pub fn poly_to_json<C: OrderedField>(p: &MPoly<C>) -> Value {
    let mut terms = Map::new();
    for (e, c) in p.terms() {
        let key = e.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
        terms.insert(key, Value::String(c.to_string()));
    }
    json!({ "nvars": p.nvars(), "terms": terms })
}

pub fn poly_from_json<C: OrderedField>(
    v: &Value,
    coeff: &impl Fn(&str) -> Result<C, SemiAlgError>,
) -> Result<MPoly<C>, SemiAlgError> {
    let nvars = v["nvars"].as_u64().ok_or_else(|| err("polynomial needs nvars"))? as usize;
    let terms = v["terms"].as_object().ok_or_else(|| err("polynomial needs terms"))?;
    let mut out = Vec::new();
    for (k, c) in terms {
        let e: Vec<u32> = if k.is_empty() {
            vec![]
        } else {
            k.split(',')
                .map(|s| s.trim().parse::<u32>().map_err(|_| err(format!("bad exponent key {k:?}"))))
                .collect::<Result<_, _>>()?
        };
        if e.len() != nvars {
            return Err(SemiAlgError::ArityMismatch { expected: nvars, got: e.len() });
        }
        let c = c.as_str().ok_or_else(|| err("coefficient must be a string"))?;
        out.push((e, coeff(c)?));
    }
    Ok(MPoly::from_terms(nvars, out))
}

pub fn formula_to_json<C: OrderedField>(f: &Formula<C>) -> Value {
    match f {
        Formula::True => Value::Bool(true),
        Formula::False => Value::Bool(false),
        Formula::Atom(p, r) => json!([r.symbol(), poly_to_json(p)]),
        Formula::And(fs) | Formula::Or(fs) => {
            let tag = if matches!(f, Formula::And(_)) { "and" } else { "or" };
            let mut arr = vec![Value::String(tag.into())];
            arr.extend(fs.iter().map(formula_to_json));
            Value::Array(arr)
        }
        Formula::Not(g) => json!(["not", formula_to_json(g)]),
    }
}

pub fn formula_from_json<C: OrderedField>(
    v: &Value,
    coeff: &impl Fn(&str) -> Result<C, SemiAlgError>,
) -> Result<Formula<C>, SemiAlgError> {
    if let Some(b) = v.as_bool() {
        return Ok(if b { Formula::True } else { Formula::False });
    }
    let arr = v.as_array().ok_or_else(|| err("formula must be a boolean or an array"))?;
    let tag = arr.first().and_then(Value::as_str).ok_or_else(|| err("formula needs a tag"))?;
    let rest = &arr[1..];
    let parts = || rest.iter().map(|g| formula_from_json(g, coeff)).collect::<Result<Vec<_>, _>>();
    match tag {
        "and" => Ok(Formula::And(parts()?)),
        "or" => Ok(Formula::Or(parts()?)),
        "not" => match rest {
            [g] => Ok(Formula::not(formula_from_json(g, coeff)?)),
            _ => Err(err("not takes one argument")),
        },
        sym => {
            let rel = Rel::from_symbol(sym).ok_or_else(|| err(format!("unknown tag {sym:?}")))?;
            match rest {
                [p] => Ok(Formula::atom(poly_from_json(p, coeff)?, rel)),
                _ => Err(err("atom takes one polynomial")),
            }
        }
    }
}

pub fn set_to_json<C: OrderedField>(s: &SemiAlgSet<C>) -> Value {
    json!({
        "dim": s.dim,
        "formula": formula_to_json(&s.formula),
        "support": serde_json::to_value(&s.support).expect("support serializes"),
    })
}

pub fn set_from_json<C: OrderedField>(
    v: &Value,
    coeff: &impl Fn(&str) -> Result<C, SemiAlgError>,
) -> Result<SemiAlgSet<C>, SemiAlgError> {
    let dim = v["dim"].as_u64().ok_or_else(|| err("set needs dim"))? as usize;
    let formula = formula_from_json(&v["formula"], coeff)?;
    let support = match v.get("support") {
        Some(s) => serde_json::from_value::<Support>(s.clone()).map_err(|e| err(e.to_string()))?,
        None => Support::unit_box(dim),
    };
    Ok(SemiAlgSet::new(dim, formula, support))
}

pub fn map_to_json<C: OrderedField>(m: &PiecewiseMap<C>) -> Value {
    let pieces: Vec<Value> = m
        .pieces
        .iter()
        .map(|p| {
            let nums: Vec<Value> = p.map.components.iter().map(|c| poly_to_json(c.num())).collect();
            let dens: Vec<Value> = p.map.components.iter().map(|c| poly_to_json(&c.den())).collect();
            json!({ "cell": formula_to_json(&p.cell.formula), "numerators": nums, "denominators": dens })
        })
        .collect();
    json!({ "source": set_to_json(&m.source), "target": set_to_json(&m.target), "pieces": pieces })
}

pub fn map_from_json<C: OrderedField>(
    v: &Value,
    coeff: &impl Fn(&str) -> Result<C, SemiAlgError>,
) -> Result<PiecewiseMap<C>, SemiAlgError> {
    let source = set_from_json(&v["source"], coeff)?;
    let target = set_from_json(&v["target"], coeff)?;
    let arr = v["pieces"].as_array().ok_or_else(|| err("map needs pieces"))?;
    let mut pieces = Vec::new();
    for p in arr {
        let cell = source.and(formula_from_json(&p["cell"], coeff)?);
        let polys = |key: &str| -> Result<Vec<MPoly<C>>, SemiAlgError> {
            p[key]
                .as_array()
                .ok_or_else(|| err(format!("piece needs {key}")))?
                .iter()
                .map(|q| poly_from_json(q, coeff))
                .collect()
        };
        let nums = polys("numerators")?;
        let dens = polys("denominators")?;
        if nums.len() != target.dim || dens.len() != nums.len() {
            return Err(SemiAlgError::DimensionMismatch { expected: target.dim, got: nums.len() });
        }
        let mut comps = Vec::new();
        for (n, d) in nums.into_iter().zip(dens) {
            if n.nvars() != source.dim || d.nvars() != source.dim {
                return Err(SemiAlgError::ArityMismatch { expected: source.dim, got: n.nvars() });
            }
            comps.push(RationalFunction::new(n, d).ok_or_else(|| err("zero denominator"))?);
        }
        pieces.push(Piece { cell, map: RationalMap::new(source.dim, comps) });
    }
    Ok(PiecewiseMap::new(source, target, pieces))
}

/// Coefficient reader for rational JSON input.
pub fn rational_coeff(s: &str) -> Result<crate::Q, SemiAlgError> {
    crate::rcf::parse_rational(s).map_err(|e| err(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semialg::families::horn_retraction;
    use crate::semialg::set::tent;
    use crate::Q;

    #[test]
    fn set_round_trip() {
        let t = tent::<Q>(2).unwrap();
        let back = set_from_json(&set_to_json(&t), &rational_coeff).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn map_round_trip_preserves_values() {
        let pi = horn_retraction::<Q>(2, 0).unwrap();
        let back = map_from_json(&map_to_json(&pi), &rational_coeff).unwrap();
        for p in pi.source.grid_points(6) {
            assert_eq!(back.eval(&p).unwrap(), pi.eval(&p).unwrap());
        }
    }
}
