//! Datum sources: preset names (`B2`, `A2:root`) or `@file.json`.

use alcove_core::rootdata::BasedRootDatum;
use serde_json::Value;

pub fn load(spec: &str) -> Result<BasedRootDatum, String> {
    if let Some(path) = spec.strip_prefix('@') {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {path}: {e}"))?;
        return parse_datum_json(&text);
    }
    let (name, lattice) = match spec.split_once(':') {
        Some((n, l)) => (n, l),
        None => (spec, "standard"),
    };
    BasedRootDatum::preset(name, lattice).map_err(|e| e.to_string())
}

pub fn parse_datum_json(text: &str) -> Result<BasedRootDatum, String> {
    let v: Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let rank = v["rank"]
        .as_u64()
        .ok_or("datum file needs a numeric `rank`")? as usize;
    let vecs = |key: &str| -> Result<Vec<Vec<i64>>, String> {
        v[key]
            .as_array()
            .ok_or(format!("datum file needs array `{key}`"))?
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or(format!("`{key}` entries must be arrays"))?
                    .iter()
                    .map(|x| x.as_i64().ok_or(format!("`{key}` entries must be integers")))
                    .collect()
            })
            .collect()
    };
    let roots = vecs("roots")?;
    let coroots = vecs("coroots")?;
    let simple: Vec<usize> = v["simple"]
        .as_array()
        .ok_or("datum file needs array `simple`")?
        .iter()
        .map(|x| x.as_u64().map(|n| n as usize).ok_or("`simple` must be indices"))
        .collect::<Result<_, _>>()?;
    let name = v["name"].as_str().unwrap_or("custom").to_string();
    Ok(BasedRootDatum::new(rank, roots, coroots, simple, &name))
}

pub fn datum_to_json(d: &BasedRootDatum) -> Value {
    serde_json::json!({
        "rank": d.rank,
        "roots": d.roots,
        "coroots": d.coroots,
        "simple": d.simple,
        "name": d.name,
    })
}
