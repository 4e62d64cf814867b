//! Registry of canonical metrics, subspaces and hydrodynamic systems.
//!
//! The data ships as versioned JSON files under `catalog/`. They are embedded at
//! build time; `HAMOP_CATALOG_DIR` points the loader at another directory holding
//! files with the same names.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::exterior::SubspaceA;
use crate::monge::{parse_subspace_json, subspace_to_json, MongeMetric};

pub const CATALOG_VERSION: u32 = 1;
pub const CATALOG_ENV: &str = "HAMOP_CATALOG_DIR";

const FILES: [(&str, &str); 3] = [
    ("metrics.json", include_str!("../catalog/metrics.json")),
    ("subspaces.json", include_str!("../catalog/subspaces.json")),
    ("systems.json", include_str!("../catalog/systems.json")),
];

/// Verdicts an entry is expected to produce; unset fields are not checked.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expect {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hamiltonian: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flat: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degenerate: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi_dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flow: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub linearly_degenerate: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagonalisable: Option<bool>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    id: String,
    note: String,
    #[serde(default)]
    metric: Option<Value>,
    #[serde(default)]
    dim: Option<usize>,
    #[serde(default)]
    subspace: Option<Value>,
    #[serde(default)]
    system: Option<Value>,
    #[serde(default)]
    family: Option<Vec<Value>>,
    #[serde(default)]
    expect: Expect,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    version: u32,
    entries: Vec<RawEntry>,
}

/// A conservative system with the data needed to check its Hamiltonian structure.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemSpec {
    pub n: usize,
    pub flux: Vec<String>,
    pub hamiltonian_density: String,
    pub metric: MongeMetric,
    /// `catalog:<id>` when the metric was given by reference.
    pub metric_ref: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSystem {
    n: usize,
    flux: Vec<String>,
    hamiltonian_density: String,
    metric: Value,
}

impl SystemSpec {
    /// Parses the system file format; `catalog:` references are looked up with `resolve`.
    pub fn from_value(v: &Value, resolve: &dyn Fn(&str) -> Result<MongeMetric>) -> Result<Self> {
        let raw: RawSystem = serde_json::from_value(v.clone()).map_err(|e| Error::Invalid(format!("system: {e}")))?;
        if raw.flux.len() != raw.n {
            return Err(Error::DimensionMismatch(format!("n = {} but {} fluxes", raw.n, raw.flux.len())));
        }
        let (metric, metric_ref) = match &raw.metric {
            Value::String(s) => {
                let id = s
                    .strip_prefix("catalog:")
                    .ok_or_else(|| Error::Invalid(format!("metric reference `{s}` must start with catalog:")))?;
                (resolve(id)?, Some(s.clone()))
            }
            other => (MongeMetric::from_value(other)?, None),
        };
        if metric.n() != raw.n {
            return Err(Error::DimensionMismatch(format!(
                "system has n = {} but its metric has n = {}",
                raw.n,
                metric.n()
            )));
        }
        Ok(SystemSpec { n: raw.n, flux: raw.flux, hamiltonian_density: raw.hamiltonian_density, metric, metric_ref })
    }

    pub fn to_value(&self) -> Value {
        let metric = match &self.metric_ref {
            Some(r) => Value::String(r.clone()),
            None => self.metric.to_value(),
        };
        serde_json::json!({ "n": self.n, "flux": self.flux, "hamiltonian_density": self.hamiltonian_density, "metric": metric })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Payload {
    Metric(MongeMetric),
    Subspace(SubspaceA),
    System(SystemSpec),
    Family(Vec<SystemSpec>),
}

impl Payload {
    pub fn kind(&self) -> &'static str {
        match self {
            Payload::Metric(_) => "metric",
            Payload::Subspace(_) => "subspace",
            Payload::System(_) => "system",
            Payload::Family(_) => "family",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CatalogEntry {
    pub id: String,
    pub note: String,
    pub payload: Payload,
    pub expect: Expect,
}

impl CatalogEntry {
    /// The entry in its file format.
    pub fn to_value(&self) -> Value {
        let mut v = serde_json::json!({ "id": self.id, "note": self.note, "kind": self.payload.kind() });
        let o = v.as_object_mut().expect("object");
        match &self.payload {
            Payload::Metric(g) => {
                o.insert("metric".into(), g.to_value());
            }
            Payload::Subspace(a) => {
                o.insert("dim".into(), (a.n() + 1).into());
                o.insert("subspace".into(), subspace_to_json(a));
            }
            Payload::System(s) => {
                o.insert("system".into(), s.to_value());
            }
            Payload::Family(f) => {
                o.insert("family".into(), f.iter().map(SystemSpec::to_value).collect());
            }
        }
        o.insert("expect".into(), serde_json::to_value(&self.expect).expect("serializable"));
        v
    }
}

#[derive(Debug, Clone)]
pub struct Catalog {
    pub version: u32,
    /// `embedded` or the directory the files were read from.
    pub source: String,
    entries: Vec<CatalogEntry>,
}

impl Catalog {
    /// Reads from `HAMOP_CATALOG_DIR` when set, otherwise the embedded copy.
    pub fn load() -> Result<Catalog> {
        match std::env::var_os(CATALOG_ENV) {
            Some(dir) if !dir.is_empty() => Catalog::load_dir(Path::new(&dir)),
            _ => Catalog::embedded(),
        }
    }

    pub fn embedded() -> Result<Catalog> {
        let texts: Vec<(String, String)> = FILES.iter().map(|(n, t)| (n.to_string(), t.to_string())).collect();
        Catalog::from_texts("embedded", &texts)
    }

    pub fn load_dir(dir: &Path) -> Result<Catalog> {
        let mut texts = Vec::new();
        for (name, _) in FILES {
            let path: PathBuf = dir.join(name);
            let text = std::fs::read_to_string(&path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            texts.push((name.to_string(), text));
        }
        Catalog::from_texts(&dir.display().to_string(), &texts)
    }

    /// Parses every file and validates each payload; metrics are resolved before systems refer to them.
    pub fn from_texts(source: &str, texts: &[(String, String)]) -> Result<Catalog> {
        let mut raws = Vec::new();
        for (name, text) in texts {
            let file: RawFile = serde_json::from_str(text).map_err(|e| Error::Invalid(format!("{name}: {e}")))?;
            if file.version != CATALOG_VERSION {
                return Err(Error::Invalid(format!(
                    "{name}: version {} is not supported (expected {CATALOG_VERSION})",
                    file.version
                )));
            }
            raws.extend(file.entries);
        }
        let mut seen = std::collections::BTreeSet::new();
        for r in &raws {
            if !seen.insert(r.id.clone()) {
                return Err(Error::Invalid(format!("duplicate catalog id `{}`", r.id)));
            }
        }
        let mut entries: Vec<CatalogEntry> = Vec::with_capacity(raws.len());
        let (systems, others): (Vec<RawEntry>, Vec<RawEntry>) =
            raws.into_iter().partition(|r| r.system.is_some() || r.family.is_some());
        for r in others {
            let payload = match (&r.metric, &r.subspace) {
                (Some(m), None) => Payload::Metric(MongeMetric::from_value(m).map_err(|e| in_entry(&r.id, e))?),
                (None, Some(s)) => {
                    let dim = r.dim.ok_or_else(|| Error::Invalid(format!("{}: subspace without dim", r.id)))?;
                    Payload::Subspace(parse_subspace_json(s, dim).map_err(|e| in_entry(&r.id, e))?)
                }
                _ => return Err(Error::Invalid(format!("{}: exactly one payload is required", r.id))),
            };
            entries.push(CatalogEntry { id: r.id, note: r.note, payload, expect: r.expect });
        }
        let metrics: Vec<(String, MongeMetric)> = entries
            .iter()
            .filter_map(|e| match &e.payload {
                Payload::Metric(g) => Some((e.id.clone(), g.clone())),
                _ => None,
            })
            .collect();
        let resolve = |id: &str| -> Result<MongeMetric> {
            metrics
                .iter()
                .find(|(k, _)| k == id)
                .map(|(_, g)| g.clone())
                .ok_or_else(|| Error::UnknownCatalogId(id.to_string()))
        };
        for r in systems {
            let payload = match (&r.system, &r.family) {
                (Some(s), None) => {
                    Payload::System(SystemSpec::from_value(s, &resolve).map_err(|e| in_entry(&r.id, e))?)
                }
                (None, Some(f)) => Payload::Family(
                    f.iter()
                        .map(|s| SystemSpec::from_value(s, &resolve))
                        .collect::<Result<_>>()
                        .map_err(|e| in_entry(&r.id, e))?,
                ),
                _ => return Err(Error::Invalid(format!("{}: exactly one payload is required", r.id))),
            };
            entries.push(CatalogEntry { id: r.id, note: r.note, payload, expect: r.expect });
        }
        Ok(Catalog { version: CATALOG_VERSION, source: source.to_string(), entries })
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn ids(&self) -> Vec<&str> {
        self.entries.iter().map(|e| e.id.as_str()).collect()
    }

    pub fn get(&self, id: &str) -> Result<&CatalogEntry> {
        self.entries.iter().find(|e| e.id == id).ok_or_else(|| Error::UnknownCatalogId(id.to_string()))
    }

    pub fn metric(&self, id: &str) -> Result<MongeMetric> {
        match &self.get(id)?.payload {
            Payload::Metric(g) => Ok(g.clone()),
            other => Err(Error::Invalid(format!("catalog entry `{id}` is a {}, not a metric", other.kind()))),
        }
    }

    pub fn subspace(&self, id: &str) -> Result<SubspaceA> {
        match &self.get(id)?.payload {
            Payload::Subspace(a) => Ok(a.clone()),
            other => Err(Error::Invalid(format!("catalog entry `{id}` is a {}, not a subspace", other.kind()))),
        }
    }

    pub fn system(&self, id: &str) -> Result<SystemSpec> {
        match &self.get(id)?.payload {
            Payload::System(s) => Ok(s.clone()),
            other => Err(Error::Invalid(format!("catalog entry `{id}` is a {}, not a system", other.kind()))),
        }
    }
}

fn in_entry(id: &str, e: Error) -> Error {
    Error::Invalid(format!("catalog entry `{id}`: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_catalog_parses() {
        let c = Catalog::embedded().unwrap();
        assert!(c.entries().len() >= 20);
        for id in ["g1", "g6", "n3-case5", "n4-generic", "n5-example", "ex1", "ex6", "exN-family", "n4-stab14-c"] {
            assert!(c.get(id).is_ok(), "{id}");
        }
        assert_eq!(c.get("nope").unwrap_err(), Error::UnknownCatalogId("nope".into()));
    }

    #[test]
    fn system_references_resolve() {
        let c = Catalog::embedded().unwrap();
        assert_eq!(c.system("ex4").unwrap().metric, c.metric("g4").unwrap());
        assert_eq!(c.system("ex4").unwrap().metric_ref.as_deref(), Some("catalog:g4"));
    }

    #[test]
    fn bad_files_are_rejected() {
        let texts = |m: &str| vec![("metrics.json".to_string(), m.to_string())];
        let dup = r#"{"version": 1, "entries": [
            {"id": "a", "note": "", "metric": {"n": 1, "g": [["1"]]}},
            {"id": "a", "note": "", "metric": {"n": 1, "g": [["1"]]}}]}"#;
        assert!(Catalog::from_texts("t", &texts(dup)).is_err());
        let version = r#"{"version": 2, "entries": []}"#;
        assert!(Catalog::from_texts("t", &texts(version)).is_err());
        let dangling = r#"{"version": 1, "entries": [{"id": "s", "note": "",
            "system": {"n": 1, "flux": ["u1"], "hamiltonian_density": "0", "metric": "catalog:g9"}}]}"#;
        assert!(Catalog::from_texts("t", &texts(dangling)).is_err());
    }
}
