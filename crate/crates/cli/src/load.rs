//! Resolving `catalog:<id>`, bare ids and JSON files into payloads.

use std::path::Path;

use serde_json::Value;

use hamop::catalog::{Catalog, Payload, SystemSpec};
use hamop::exterior::SubspaceA;
use hamop::monge::{parse_subspace_json, MongeMetric};
use hamop::{Error, Result};

use crate::args::{numeric, Param};

enum Source<'a> {
    Catalog(&'a str),
    File(Value),
}

fn source(src: &str) -> Result<Source<'_>> {
    if let Some(id) = src.strip_prefix("catalog:") {
        return Ok(Source::Catalog(id));
    }
    if Path::new(src).is_file() {
        let text = std::fs::read_to_string(src).map_err(|e| Error::Io(format!("{src}: {e}")))?;
        let v: Value = serde_json::from_str(&text).map_err(|e| Error::Invalid(format!("{src}: {e}")))?;
        // Accept the report printed by `catalog show --json` as well as a bare entry or payload.
        let v = match v.get("result") {
            Some(r) if v.get("command").is_some() => r.clone(),
            _ => v,
        };
        return Ok(Source::File(v));
    }
    Ok(Source::Catalog(src))
}

/// Every named parameter must occur; numeric ones are substituted.
fn check_names(names: &[String], params: &[Param]) -> Result<()> {
    for p in params {
        if !names.contains(&p.name) {
            return Err(Error::UnknownVariable(p.name.clone()));
        }
    }
    Ok(())
}

pub fn metric(catalog: &Catalog, src: &str, params: &[Param]) -> Result<MongeMetric> {
    let g = match source(src)? {
        Source::Catalog(id) => catalog.metric(id)?,
        Source::File(v) => MongeMetric::from_value(v.get("metric").unwrap_or(&v))?,
    };
    check_names(g.vars().names(), params)?;
    let values = numeric(params);
    let named: Vec<(&str, _)> = values.iter().map(|(k, v)| (k.as_str(), v.clone())).collect();
    g.with_params(&named)
}

pub fn subspace(catalog: &Catalog, src: &str, params: &[Param]) -> Result<SubspaceA> {
    let a = match source(src)? {
        Source::Catalog(id) => catalog.subspace(id)?,
        Source::File(v) => {
            let dim = v
                .get("dim")
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::Invalid("subspace file needs an integer `dim`".into()))?;
            let list = v.get("subspace").ok_or_else(|| Error::Invalid("subspace file needs `subspace`".into()))?;
            parse_subspace_json(list, dim as usize)?
        }
    };
    check_names(a.vars().names(), params)?;
    let values = numeric(params);
    let named: Vec<(&str, _)> = values.iter().map(|(k, v)| (k.as_str(), v.clone())).collect();
    a.with_params(&named)
}

/// One system, or each member of a family.
pub fn systems(catalog: &Catalog, src: &str) -> Result<Vec<SystemSpec>> {
    let resolve = |id: &str| catalog.metric(id);
    match source(src)? {
        Source::Catalog(id) => match &catalog.get(id)?.payload {
            Payload::System(s) => Ok(vec![s.clone()]),
            Payload::Family(f) => Ok(f.clone()),
            other => Err(Error::Invalid(format!("catalog entry `{id}` is a {}, not a system", other.kind()))),
        },
        Source::File(v) => {
            if let Some(f) = v.get("family").and_then(Value::as_array) {
                return f.iter().map(|s| SystemSpec::from_value(s, &resolve)).collect();
            }
            Ok(vec![SystemSpec::from_value(v.get("system").unwrap_or(&v), &resolve)?])
        }
    }
}
