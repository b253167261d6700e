//! JSON encodings. Rationals are `"p/q"` strings, morphisms are image
//! sequences or block lists, simplices are `{"epi": [...], "cell": name}`.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};
use simpsep_core::rational::{format_q, parse_q};
use simpsep_core::separation::{Branch, Certificate, DegreeEvidence, InputPoint, TypeEvidence};
use simpsep_core::{BaryPoint, CellId, DeltaMor, FiniteSSet, GammaMor, IntervalFamily, Simplex, Q};

use crate::{Error, Result};

fn bad(msg: impl Into<String>) -> Error {
    Error::Format(msg.into())
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| bad(format!("missing field `{key}`")))
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| bad(format!("`{what}` must be a non-negative integer")))
}

fn as_str<'a>(v: &'a Value, what: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| bad(format!("`{what}` must be a string")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| bad(format!("`{what}` must be an array")))
}

fn usizes(v: &Value, what: &str) -> Result<Vec<usize>> {
    as_array(v, what)?.iter().map(|x| as_usize(x, what)).collect()
}

pub fn q_to_json(v: &Q) -> Value {
    Value::String(format_q(v))
}

pub fn q_from_json(v: &Value) -> Result<Q> {
    Ok(parse_q(as_str(v, "rational")?)?)
}

pub fn delta_to_json(d: &DeltaMor) -> Value {
    json!({ "cod": d.cod(), "images": d.images() })
}

pub fn delta_from_json(v: &Value) -> Result<DeltaMor> {
    Ok(DeltaMor::new(as_usize(field(v, "cod")?, "cod")?, usizes(field(v, "images")?, "images")?)?)
}

pub fn gamma_to_json(g: &GammaMor) -> Value {
    json!({ "cod": g.cod(), "blocks": g.block_sets() })
}

pub fn gamma_from_json(v: &Value) -> Result<GammaMor> {
    let cod = as_usize(field(v, "cod")?, "cod")?;
    let blocks: Vec<Vec<usize>> = as_array(field(v, "blocks")?, "blocks")?.iter().map(|b| usizes(b, "block")).collect::<Result<_>>()?;
    let refs: Vec<&[usize]> = blocks.iter().map(|b| b.as_slice()).collect();
    Ok(GammaMor::from_sets(cod, &refs)?)
}

pub fn simplex_to_json(s: &FiniteSSet, x: &Simplex) -> Value {
    json!({ "epi": x.epi.images(), "cell": s.cell_name(x.cell) })
}

pub fn simplex_from_json(s: &FiniteSSet, v: &Value) -> Result<Simplex> {
    let cell = s.cell_by_name(as_str(field(v, "cell")?, "cell")?)?;
    let epi = DeltaMor::new(cell.dim, usizes(field(v, "epi")?, "epi")?)?;
    if !epi.is_epi() {
        return Err(bad(format!("{epi:?} is not an epimorphism")));
    }
    Ok(Simplex { epi, cell })
}

pub fn sset_to_json(s: &FiniteSSet) -> Value {
    let mut cells = Map::new();
    for (p, names) in s.names().iter().enumerate() {
        cells.insert(p.to_string(), json!(names));
    }
    let mut faces = Map::new();
    for c in s.all_cells() {
        if c.dim == 0 {
            continue;
        }
        let list: Vec<Value> = (0..=c.dim).map(|i| simplex_to_json(s, s.stored_face(c, i))).collect();
        faces.insert(s.cell_name(c).to_string(), Value::Array(list));
    }
    json!({ "dim": s.dim(), "cells": cells, "faces": faces })
}

pub fn sset_from_json(v: &Value) -> Result<FiniteSSet> {
    let dim = as_usize(field(v, "dim")?, "dim")?;
    let cells_v = field(v, "cells")?.as_object().ok_or_else(|| bad("`cells` must be an object"))?;
    let mut cells = Vec::with_capacity(dim + 1);
    for p in 0..=dim {
        let names = cells_v.get(&p.to_string()).ok_or_else(|| bad(format!("no cells listed for degree {p}")))?;
        let names: Vec<String> = as_array(names, "cells")?.iter().map(|n| as_str(n, "cell name").map(String::from)).collect::<Result<_>>()?;
        cells.push(names);
    }
    if let Some(extra) = cells_v.keys().find(|k| k.parse::<usize>().map(|p| p > dim).unwrap_or(true)) {
        return Err(bad(format!("unexpected cell degree `{extra}`")));
    }
    let dims: BTreeMap<&str, usize> = cells.iter().enumerate().flat_map(|(p, ns)| ns.iter().map(move |n| (n.as_str(), p))).collect();
    let mut faces = BTreeMap::new();
    if let Some(fv) = v.get("faces") {
        let fv = fv.as_object().ok_or_else(|| bad("`faces` must be an object"))?;
        for (name, list) in fv {
            let mut out = Vec::new();
            for f in as_array(list, "faces")? {
                let target = as_str(field(f, "cell")?, "cell")?;
                let cod = *dims.get(target).ok_or_else(|| simpsep_core::Error::UnknownCell(target.into()))?;
                let epi = DeltaMor::new(cod, usizes(field(f, "epi")?, "epi")?)?;
                out.push((epi, target.to_string()));
            }
            faces.insert(name.clone(), out);
        }
    }
    Ok(FiniteSSet::from_named(cells, &faces)?)
}

pub fn sset_from_str(text: &str) -> Result<FiniteSSet> {
    sset_from_json(&serde_json::from_str(text)?)
}

pub fn intervals_to_json(f: &IntervalFamily) -> Value {
    let mut m = Map::new();
    for ((i, j), (a, b)) in f.bounds() {
        m.insert(format!("{i},{j}"), json!([format_q(a), format_q(b)]));
    }
    json!({ "n": f.degree(), "bounds": m })
}

pub fn intervals_from_json(v: &Value) -> Result<IntervalFamily> {
    let n = as_usize(field(v, "n")?, "n")?;
    let obj = field(v, "bounds")?.as_object().ok_or_else(|| bad("`bounds` must be an object"))?;
    let mut bounds = BTreeMap::new();
    for (key, pair) in obj {
        let (i, j) = key.split_once(',').ok_or_else(|| bad(format!("bad interval key `{key}`")))?;
        let i: usize = i.trim().parse().map_err(|_| bad(format!("bad interval key `{key}`")))?;
        let j: usize = j.trim().parse().map_err(|_| bad(format!("bad interval key `{key}`")))?;
        let pair = as_array(pair, "interval")?;
        if pair.len() != 2 {
            return Err(bad(format!("interval `{key}` needs two endpoints")));
        }
        bounds.insert((i, j), (q_from_json(&pair[0])?, q_from_json(&pair[1])?));
    }
    Ok(IntervalFamily::new(n, bounds)?)
}

fn coords_to_json(b: &BaryPoint) -> Value {
    Value::Array(b.coords().iter().map(q_to_json).collect())
}

fn coords_from_json(v: &Value) -> Result<BaryPoint> {
    Ok(BaryPoint::new(as_array(v, "coords")?.iter().map(q_from_json).collect::<Result<_>>()?)?)
}

/// `cell:t0,t1,...` with rational coordinates.
pub fn parse_point(s: &FiniteSSet, arg: &str) -> Result<InputPoint> {
    let (cell, coords) = arg.split_once(':').ok_or_else(|| bad(format!("point `{arg}` must look like cell:t0,t1,...")))?;
    let cell = s.cell_by_name(cell.trim())?;
    let coords: Vec<Q> = coords.split(',').map(parse_q).collect::<std::result::Result<_, _>>()?;
    Ok(InputPoint { simplex: Simplex::nondegenerate(cell), coords: BaryPoint::new(coords)? })
}

fn input_to_json(s: &FiniteSSet, p: &InputPoint) -> Value {
    json!({ "simplex": simplex_to_json(s, &p.simplex), "coords": coords_to_json(&p.coords) })
}

fn input_from_json(s: &FiniteSSet, v: &Value) -> Result<InputPoint> {
    Ok(InputPoint { simplex: simplex_from_json(s, field(v, "simplex")?)?, coords: coords_from_json(field(v, "coords")?)? })
}

fn cell_point_to_json(s: &FiniteSSet, (c, b): &(CellId, BaryPoint)) -> Value {
    json!({ "cell": s.cell_name(*c), "coords": coords_to_json(b) })
}

fn cell_point_from_json(s: &FiniteSSet, v: &Value) -> Result<(CellId, BaryPoint)> {
    Ok((s.cell_by_name(as_str(field(v, "cell")?, "cell")?)?, coords_from_json(field(v, "coords")?)?))
}

fn family_to_json(s: &FiniteSSet, fam: &[(DeltaMor, Vec<Simplex>)]) -> Value {
    let mut m = Map::new();
    for (sigma, set) in fam {
        let key = sigma.images().iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
        m.insert(key, Value::Array(set.iter().map(|x| simplex_to_json(s, x)).collect()));
    }
    Value::Object(m)
}

fn family_from_json(s: &FiniteSSet, v: &Value, n: usize) -> Result<Vec<(DeltaMor, Vec<Simplex>)>> {
    let obj = v.as_object().ok_or_else(|| bad("family must be an object"))?;
    let mut out = Vec::with_capacity(obj.len());
    for (key, set) in obj {
        let images: Vec<usize> = key.split(',').map(|t| t.trim().parse().map_err(|_| bad(format!("bad epi key `{key}`")))).collect::<Result<_>>()?;
        let sigma = DeltaMor::new(n, images)?;
        let set = as_array(set, "family entry")?.iter().map(|x| simplex_from_json(s, x)).collect::<Result<_>>()?;
        out.push((sigma, set));
    }
    Ok(out)
}

fn classes_to_json(pattern: u64, m: usize) -> Value {
    let list: Vec<Value> = (0..64)
        .filter(|b| pattern >> b & 1 == 1)
        .map(|b| {
            let (a, c) = (b / (m + 2), b % (m + 2));
            json!([a, c])
        })
        .collect();
    Value::Array(list)
}

fn classes_from_json(v: &Value, n: usize, m: usize) -> Result<u64> {
    let mut mask = 0u64;
    for pair in as_array(v, "classes")? {
        let p = usizes(pair, "class")?;
        if p.len() != 2 || p[0] > n + 1 || p[1] > m + 1 {
            return Err(bad("class must be [f-label, g-label] with ⊥ encoded as degree+1"));
        }
        mask |= 1 << (p[0] * (m + 2) + p[1]);
    }
    Ok(mask)
}

fn evidence_to_json(s: &FiniteSSet, d: &DegreeEvidence, m: usize) -> Value {
    let kind = if d.types.is_empty() { "set-disjoint" } else { "lp-infeasible" };
    let types: Vec<Value> = d
        .types
        .iter()
        .map(|t| {
            json!({
                "z": simplex_to_json(s, &t.z),
                "classes": classes_to_json(t.pattern, m),
                "f": gamma_to_json(&t.f),
                "g": gamma_to_json(&t.g),
                "rows": t.rows,
            })
        })
        .collect();
    json!({
        "k": d.k,
        "kind": kind,
        "homs_f": d.homs_f.to_string(),
        "homs_g": d.homs_g.to_string(),
        "shared": d.shared,
        "types": types,
    })
}

fn evidence_from_json(s: &FiniteSSet, v: &Value, n: usize, m: usize) -> Result<DegreeEvidence> {
    let count = |key: &str| -> Result<u128> { as_str(field(v, key)?, key)?.parse().map_err(|_| bad(format!("`{key}` must be a decimal string"))) };
    let types = as_array(field(v, "types")?, "types")?
        .iter()
        .map(|t| {
            Ok(TypeEvidence {
                z: simplex_from_json(s, field(t, "z")?)?,
                pattern: classes_from_json(field(t, "classes")?, n, m)?,
                f: gamma_from_json(field(t, "f")?)?,
                g: gamma_from_json(field(t, "g")?)?,
                rows: as_usize(field(t, "rows")?, "rows")?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let kind = as_str(field(v, "kind")?, "kind")?;
    if kind != if types.is_empty() { "set-disjoint" } else { "lp-infeasible" } {
        return Err(bad(format!("evidence kind `{kind}` does not match its entries")));
    }
    Ok(DegreeEvidence { k: as_usize(field(v, "k")?, "k")?, homs_f: count("homs_f")?, homs_g: count("homs_g")?, shared: as_usize(field(v, "shared")?, "shared")?, types })
}

pub fn certificate_to_json(c: &Certificate) -> Value {
    let s = &c.sset;
    json!({
        "version": c.version,
        "sset": sset_to_json(s),
        "points": {
            "input": [input_to_json(s, &c.inputs[0]), input_to_json(s, &c.inputs[1])],
            "normalized": [cell_point_to_json(s, &c.points[0]), cell_point_to_json(s, &c.points[1])],
            "swapped": c.swapped,
        },
        "branch": c.branch.as_str(),
        "n": c.n,
        "m": c.m,
        "N": c.big_n,
        "separating_pair": c.separating_pair.map(|(k, l)| json!([k, l])),
        "spread": q_to_json(&c.spread),
        "eta": q_to_json(&c.eta),
        "depth": c.depth,
        "kmax": c.kmax,
        "families": [family_to_json(s, &c.families[0]), family_to_json(s, &c.families[1])],
        "intervals": [intervals_to_json(&c.intervals[0]), intervals_to_json(&c.intervals[1])],
        "evidence": c.evidence.iter().map(|d| evidence_to_json(s, d, c.m)).collect::<Vec<_>>(),
        "containment": c.containment,
        "invariance_cases": c.invariance_cases,
        "note": c.note,
    })
}

pub fn certificate_from_json(v: &Value) -> Result<Certificate> {
    let version = as_usize(field(v, "version")?, "version")? as u32;
    let sset = sset_from_json(field(v, "sset")?)?;
    let s = &sset;
    let pts = field(v, "points")?;
    let pair2 = |v: &Value, what: &str| -> Result<[Value; 2]> {
        let a = as_array(v, what)?;
        if a.len() != 2 {
            return Err(bad(format!("`{what}` must have two entries")));
        }
        Ok([a[0].clone(), a[1].clone()])
    };
    let [i0, i1] = pair2(field(pts, "input")?, "input")?;
    let [n0, n1] = pair2(field(pts, "normalized")?, "normalized")?;
    let branch = match as_str(field(v, "branch")?, "branch")? {
        "distinct-cells" => Branch::DistinctCells,
        "same-cell" => Branch::SameCell,
        other => return Err(bad(format!("unknown branch `{other}`"))),
    };
    let n = as_usize(field(v, "n")?, "n")?;
    let m = as_usize(field(v, "m")?, "m")?;
    let separating_pair = match field(v, "separating_pair")? {
        Value::Null => None,
        p => {
            let p = usizes(p, "separating_pair")?;
            if p.len() != 2 {
                return Err(bad("`separating_pair` must have two entries"));
            }
            Some((p[0], p[1]))
        }
    };
    let [f0, f1] = pair2(field(v, "families")?, "families")?;
    let [j0, j1] = pair2(field(v, "intervals")?, "intervals")?;
    let evidence = as_array(field(v, "evidence")?, "evidence")?.iter().map(|d| evidence_from_json(s, d, n, m)).collect::<Result<_>>()?;
    let containment = as_array(field(v, "containment")?, "containment")?.iter().map(|b| b.as_bool().ok_or_else(|| bad("containment entries must be booleans"))).collect::<Result<Vec<_>>>()?;
    let inv = usizes(field(v, "invariance_cases")?, "invariance_cases")?;
    if containment.len() != 2 || inv.len() != 2 {
        return Err(bad("`containment` and `invariance_cases` need two entries"));
    }
    Ok(Certificate {
        version,
        inputs: [input_from_json(s, &i0)?, input_from_json(s, &i1)?],
        points: [cell_point_from_json(s, &n0)?, cell_point_from_json(s, &n1)?],
        swapped: field(pts, "swapped")?.as_bool().ok_or_else(|| bad("`swapped` must be a boolean"))?,
        branch,
        n,
        m,
        big_n: as_usize(field(v, "N")?, "N")?,
        separating_pair,
        spread: q_from_json(field(v, "spread")?)?,
        eta: q_from_json(field(v, "eta")?)?,
        depth: as_usize(field(v, "depth")?, "depth")? as u32,
        kmax: as_usize(field(v, "kmax")?, "kmax")?,
        families: [family_from_json(s, &f0, n)?, family_from_json(s, &f1, m)?],
        intervals: [intervals_from_json(&j0)?, intervals_from_json(&j1)?],
        evidence,
        containment: [containment[0], containment[1]],
        invariance_cases: [inv[0], inv[1]],
        note: as_str(field(v, "note")?, "note")?.to_string(),
        sset,
    })
}

pub fn certificate_to_string(c: &Certificate) -> String {
    let mut s = serde_json::to_string_pretty(&certificate_to_json(c)).expect("values serialize");
    s.push('\n');
    s
}

pub fn certificate_from_str(text: &str) -> Result<Certificate> {
    certificate_from_json(&serde_json::from_str(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use simpsep_core::rational::q;

    #[test]
    fn sset_round_trips() {
        for s in [FiniteSSet::standard_simplex(1), FiniteSSet::standard_simplex(2), FiniteSSet::boundary(2).unwrap()] {
            let v = sset_to_json(&s);
            let back = sset_from_json(&v).unwrap();
            assert_eq!(back.names(), s.names());
            assert_eq!(sset_to_json(&back), v);
        }
    }

    #[test]
    fn morphisms_round_trip() {
        let g = GammaMor::from_sets(4, &[&[0, 2], &[3]]).unwrap();
        assert_eq!(gamma_from_json(&gamma_to_json(&g)).unwrap(), g);
        let d = DeltaMor::new(3, vec![0, 2, 2]).unwrap();
        assert_eq!(delta_from_json(&delta_to_json(&d)).unwrap(), d);
        assert!(gamma_from_json(&json!({"cod": 2, "blocks": [[2], [0]]})).is_err());
    }

    #[test]
    fn intervals_round_trip() {
        let mut b = BTreeMap::new();
        b.insert((0, 1), (q(3, 4), q(4, 3)));
        let f = IntervalFamily::new(1, b).unwrap();
        let v = intervals_to_json(&f);
        assert_eq!(v["bounds"]["0,1"], json!(["3/4", "4/3"]));
        assert_eq!(intervals_from_json(&v).unwrap(), f);
    }

    #[test]
    fn points_parse() {
        let s = FiniteSSet::boundary(2).unwrap();
        let p = parse_point(&s, "e12:1/3,2/3").unwrap();
        assert_eq!(s.cell_name(p.simplex.cell), "e12");
        assert!(parse_point(&s, "e12:0.5,0.5").is_err());
        assert!(parse_point(&s, "e12:1/2,1/3").is_err());
        assert!(parse_point(&s, "e99:1/2,1/2").is_err());
        assert!(parse_point(&s, "e12").is_err());
    }

    #[test]
    fn rejects_invalid_sset() {
        // d_0 d_1 ≠ d_0 d_0 on a 2-cell whose faces disagree at a vertex
        let doc = json!({
            "dim": 2,
            "cells": {"0": ["a", "b", "c"], "1": ["ab", "bc", "ac"], "2": ["t"]},
            "faces": {
                "ab": [{"epi": [0], "cell": "b"}, {"epi": [0], "cell": "a"}],
                "bc": [{"epi": [0], "cell": "c"}, {"epi": [0], "cell": "b"}],
                "ac": [{"epi": [0], "cell": "c"}, {"epi": [0], "cell": "a"}],
                "t": [{"epi": [0, 1], "cell": "bc"}, {"epi": [0, 1], "cell": "ab"}, {"epi": [0, 1], "cell": "ab"}]
            }
        });
        assert!(sset_from_json(&doc).is_err());
    }
}
