//! Parsing of system specs, root sets and words from files or inline text.

use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use ears_core::earoot::{ExtAffineRootSystem, Root};
use ears_core::weyl::Triple;
use serde_json::Value;

/// Reads `arg` as a file when it names one, otherwise as inline text.
fn text_of(arg: &str) -> Result<String> {
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('[') || !Path::new(arg).is_file() {
        return Ok(arg.to_string());
    }
    fs::read_to_string(arg).with_context(|| format!("reading {arg}"))
}

pub fn spec(arg: &str) -> Result<ExtAffineRootSystem> {
    let text = text_of(arg)?;
    let v: Value = serde_json::from_str(&text).with_context(|| format!("system spec {arg} is not JSON"))?;
    ExtAffineRootSystem::from_json(&v).map_err(|e| anyhow!("{arg}: {e}"))
}

/// A root as display text (`-a1+s2`) or as `{"fin": [..], "iso": [..]}`.
pub fn root_value(e: &ExtAffineRootSystem, v: &Value) -> Result<Root> {
    let r = match v {
        Value::String(s) => Root::parse(s, e.rank(), e.nu()).map_err(|m| anyhow!(m))?,
        Value::Object(_) => serde_json::from_value::<Root>(v.clone())?,
        Value::Array(xs) => {
            let c: Vec<i64> = xs.iter().map(|x| x.as_i64().ok_or_else(|| anyhow!("non-integer coordinate"))).collect::<Result<_>>()?;
            if c.len() != e.dim() {
                bail!("coordinate vector {v} has length {}, expected {}", c.len(), e.dim());
            }
            Root::from_coords(&c, e.rank())
        }
        _ => bail!("cannot read a root from {v}"),
    };
    e.check_dims(&r).map_err(|err| anyhow!("{err}"))?;
    Ok(r)
}

pub fn root(e: &ExtAffineRootSystem, arg: &str) -> Result<Root> {
    let t = arg.trim();
    if t.starts_with('{') || t.starts_with('[') {
        root_value(e, &serde_json::from_str(t)?)
    } else {
        root_value(e, &Value::String(t.to_string()))
    }
}

/// A list of roots: a JSON array (inline or in a file) or a comma-separated list.
pub fn roots(e: &ExtAffineRootSystem, arg: &str) -> Result<Vec<Root>> {
    let text = text_of(arg)?;
    let t = text.trim();
    if t.starts_with('[') {
        let v: Value = serde_json::from_str(t).with_context(|| format!("{arg} is not a JSON array"))?;
        let items = v.as_array().ok_or_else(|| anyhow!("{arg} is not a JSON array"))?;
        return items.iter().map(|x| root_value(e, x)).collect();
    }
    t.split(',').filter(|s| !s.trim().is_empty()).map(|s| root(e, s)).collect()
}

/// Named sets: `canonical`, `table1`, `table4`; anything else goes to [`roots`].
pub fn root_set(e: &ExtAffineRootSystem, arg: &str) -> Result<Vec<Root>> {
    match arg {
        "canonical" => Ok(e.canonical_base()),
        "table1" => Ok(e.base_general()),
        "table4" => e.base_elliptic().ok_or_else(|| anyhow!("no table4 base for {}", e.type_code())),
        _ => roots(e, arg),
    }
}

pub fn int_vector(arg: &str, len: usize) -> Result<Vec<i64>> {
    let t = arg.trim().trim_start_matches('[').trim_end_matches(']');
    let v: Vec<i64> = t
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse::<i64>().with_context(|| format!("bad integer in {arg}")))
        .collect::<Result<_>>()?;
    if v.len() != len {
        bail!("expected {len} integers, got {}", v.len());
    }
    Ok(v)
}

pub fn triples(arg: &str) -> Result<Vec<Triple>> {
    let text = text_of(arg)?;
    serde_json::from_str(&text).with_context(|| format!("{arg}: expected [{{\"eps\":1,\"long\":false,\"eta\":[..]}}, ..]"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inline_forms() {
        let e = spec(r#"{"type":"A1","nu":2,"S":{"nu":2,"supp":[[],[1],[2]]}}"#).unwrap();
        let a = root(&e, "-a1+s2").unwrap();
        assert_eq!(a, root(&e, r#"{"fin":[-1],"iso":[0,1]}"#).unwrap());
        assert_eq!(a, root(&e, "[-1,0,1]").unwrap());
        assert_eq!(roots(&e, "a1, -a1+s1").unwrap().len(), 2);
        assert_eq!(root_set(&e, "canonical").unwrap(), e.canonical_base());
        assert!(root(&e, "a2").is_err());
        assert_eq!(int_vector("[1,-2]", 2).unwrap(), vec![1, -2]);
    }
}
