//! Reading complexes, groups, maps and covers from flags and files.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde_json::Value;

use realtype::complex::{
    circle, curve, simplex, simplex_boundary, torus, wedge_of_circles, Assignment, Complex, ComplexMap, VertexId,
};
use realtype::group::{surface_group, FiniteGroupTable, GroupPresentation, Word};
use realtype::rcf::parse_number;
use realtype::Real;

pub fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn numbers(spec: &str, what: &str) -> Result<Vec<usize>> {
    spec.split(',')
        .map(|s| s.trim().parse::<usize>().map_err(|_| anyhow!("bad {what} parameters {spec:?}")))
        .collect()
}

/// Built-in models: `circle`, `simplex:N`, `sphere:N`, `wedge:N`,
/// `torus:N`, `curve:G,D`.
pub fn model(name: &str) -> Result<Complex> {
    let (head, args) = name.split_once(':').unwrap_or((name, ""));
    let one = || -> Result<usize> {
        match numbers(args, head)?.as_slice() {
            [n] => Ok(*n),
            _ => bail!("model {head} takes one parameter"),
        }
    };
    Ok(match head {
        "circle" => circle(),
        "simplex" => simplex(one()?),
        "sphere" => simplex_boundary(one()? + 1),
        "wedge" => wedge_of_circles(one()?),
        "torus" => torus(one()?)?,
        "curve" => match numbers(args, head)?.as_slice() {
            [g, d] => curve(*g, *d)?,
            _ => bail!("curve takes G,D"),
        },
        _ => bail!("unknown model {name:?}"),
    })
}

/// A complex given inline as a model name or as a JSON object.
pub fn complex_value(v: &Value) -> Result<Complex> {
    match v {
        Value::String(s) => model(s),
        _ => Ok(Complex::from_json(v)?),
    }
}

pub fn space(input: Option<&Path>, model_name: Option<&str>) -> Result<Complex> {
    match (input, model_name) {
        (Some(p), None) => complex_value(&read_json(p)?),
        (None, Some(m)) => model(m),
        _ => bail!("give exactly one of --input and --model"),
    }
}

fn abelian(rank: usize) -> GroupPresentation {
    let gens: Vec<String> = (1..=rank).map(|i| format!("x{i}")).collect();
    let mut rels = Vec::new();
    for i in 1..=rank {
        for j in i + 1..=rank {
            rels.push(format!("x{i}x{j}X{i}X{j}"));
        }
    }
    let g: Vec<&str> = gens.iter().map(String::as_str).collect();
    let r: Vec<&str> = rels.iter().map(String::as_str).collect();
    GroupPresentation::parse(&g, &r).expect("commutator presentation")
}

/// `surface:G,D`, `free:N`, `abelian:N`, `cyclic:M`, an inline
/// presentation `<a, b | abAB>`, or a path to a JSON presentation.
pub fn group(spec: &str) -> Result<GroupPresentation> {
    let spec = spec.trim();
    if let Some(body) = spec.strip_prefix('<').and_then(|s| s.strip_suffix('>')) {
        let (gens, rels) = body.split_once('|').unwrap_or((body, ""));
        let gens: Vec<&str> = gens.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
        let rels: Vec<&str> = rels.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
        return Ok(GroupPresentation::parse(&gens, &rels)?);
    }
    if let Some((head, args)) = spec.split_once(':') {
        let ns = numbers(args, head)?;
        return Ok(match (head, ns.as_slice()) {
            ("surface", [g, d]) => surface_group(*g, *d),
            ("free", [n]) => GroupPresentation::free(*n),
            ("abelian", [n]) => abelian(*n),
            ("cyclic", [m]) if *m > 0 => {
                let rel = "x".repeat(*m);
                GroupPresentation::parse(&["x"], &[rel.as_str()])?
            }
            _ => bail!("unknown group {spec:?}"),
        });
    }
    if spec.ends_with(".json") {
        return Ok(GroupPresentation::from_json(&read_json(Path::new(spec))?)?);
    }
    bail!("unknown group {spec:?}")
}

pub fn words(pres: &GroupPresentation, list: &str) -> Result<Vec<Word>> {
    list.split(',')
        .map(str::trim)
        .map(|w| if w == "1" { Ok(Word::new()) } else { Ok(pres.parse_word(w)?) })
        .collect()
}

/// `all8` for every group of order at most 8, otherwise a comma separated
/// list of built-in finite groups.
pub fn targets(spec: &str) -> Result<Vec<FiniteGroupTable>> {
    if spec == "all8" {
        return Ok(FiniteGroupTable::all_of_order_at_most_8());
    }
    spec.split(',').map(|s| Ok(FiniteGroupTable::builtin(s.trim())?)).collect()
}

/// `{"source": <complex>, "target": <complex>, "map": {"<id>": <id>}}`
/// where complexes are JSON objects or model names.
pub fn complex_map(path: &Path) -> Result<ComplexMap> {
    let v = read_json(path)?;
    let source = complex_value(v.get("source").ok_or_else(|| anyhow!("map file needs \"source\""))?)?;
    let target = complex_value(v.get("target").ok_or_else(|| anyhow!("map file needs \"target\""))?)?;
    let raw = v.get("map").and_then(Value::as_object).ok_or_else(|| anyhow!("map file needs \"map\""))?;
    let mut map = BTreeMap::new();
    for (k, img) in raw {
        let k: VertexId = k.parse().map_err(|_| anyhow!("bad vertex id {k:?}"))?;
        let img = img.as_u64().ok_or_else(|| anyhow!("bad image of vertex {k}"))?;
        map.insert(k, img);
    }
    Ok(ComplexMap::new(source, target, &map)?)
}

/// `{"simplices": [{"vertices": [ids], "points": [["p/q", ...], ...]}]}`.
pub fn assignment(path: &Path) -> Result<Assignment<Real>> {
    let v = read_json(path)?;
    let list = v.get("simplices").and_then(Value::as_array).ok_or_else(|| anyhow!("assignment needs \"simplices\""))?;
    list.iter()
        .map(|s| {
            let ids: Vec<VertexId> = serde_json::from_value(s.get("vertices").cloned().unwrap_or(Value::Null))
                .context("assignment vertices")?;
            let pts: Vec<Vec<String>> =
                serde_json::from_value(s.get("points").cloned().unwrap_or(Value::Null)).context("assignment points")?;
            let pts = pts
                .iter()
                .map(|p| p.iter().map(|c| parse_number(c).map_err(|e| anyhow!("{e}"))).collect())
                .collect::<Result<Vec<Vec<Real>>>>()?;
            Ok((ids, pts))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_specs() {
        assert_eq!(group("surface:1,0").unwrap().to_string(), "< a1, b1 | a1b1A1B1 >");
        assert_eq!(group("abelian:2").unwrap().abelianization().to_string(), "Z^2");
        assert_eq!(group("<a | aaa>").unwrap().abelianization().to_string(), "Z/3");
        assert_eq!(group("cyclic:4").unwrap().abelianization().to_string(), "Z/4");
        assert!(group("surface:1").is_err());
        assert!(group("nonsense").is_err());
    }

    #[test]
    fn model_names() {
        assert_eq!(model("torus:1").unwrap().euler_characteristic(), 0);
        assert_eq!(model("sphere:2").unwrap().euler_characteristic(), 2);
        assert_eq!(model("curve:2,0").unwrap().euler_characteristic(), -2);
        assert!(model("curve:2").is_err());
        assert!(model("klein").is_err());
    }
}
