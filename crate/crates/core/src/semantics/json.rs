use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{Configuration, Interaction};
use crate::algebra::AlgebraDescriptor;
use crate::error::{Error, Result};
use crate::syntax::Port;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfiguration {
    algebra: String,
    ports: Vec<String>,
    interactions: Vec<BTreeMap<String, String>>,
}

/// Parses a configuration document such as
/// `{"algebra":"fuzzy","ports":["p","q"],"interactions":[{"p":"0.3","q":"1"}]}`.
///
/// Every interaction must give a weight to every declared port and to nothing
/// else. Repeated interactions collapse into one.
pub fn configuration_from_json(text: &str) -> Result<Configuration> {
    let raw: RawConfiguration = serde_json::from_str(text)?;
    let algebra: AlgebraDescriptor = raw.algebra.parse()?;
    let mut ports = BTreeSet::new();
    for name in &raw.ports {
        let port = Port::new(name)?;
        if !ports.insert(port) {
            return Err(Error::InvalidConfiguration(format!("port `{name}` is declared twice")));
        }
    }
    if ports.is_empty() {
        return Err(Error::InvalidConfiguration("no ports declared".to_string()));
    }
    if raw.interactions.is_empty() {
        return Err(Error::InvalidConfiguration(
            "a configuration needs at least one interaction".to_string(),
        ));
    }
    let mut members = Vec::with_capacity(raw.interactions.len());
    for (index, weights) in raw.interactions.iter().enumerate() {
        let context = |e: Error| Error::InvalidConfiguration(format!("interaction {index}: {e}"));
        let mut map = BTreeMap::new();
        for (name, value) in weights {
            let port = Port::new(name).map_err(context)?;
            if !ports.contains(&port) {
                return Err(context(Error::UnknownPort(name.clone())));
            }
            map.insert(port, algebra.parse_element(value).map_err(context)?);
        }
        if let Some(missing) = ports.iter().find(|p| !map.contains_key(*p)) {
            return Err(context(Error::InvalidInteraction(format!(
                "no weight for port `{missing}`"
            ))));
        }
        members.push(Interaction::new(map).map_err(context)?);
    }
    Configuration::new(members)
}

/// `{"p": "0.3", "q": "1"}`
pub fn interaction_to_json(a: &Interaction) -> Value {
    Value::Object(
        a.weights()
            .iter()
            .map(|(p, v)| (p.to_string(), Value::String(v.to_string())))
            .collect(),
    )
}

/// Inverse of [`configuration_from_json`].
pub fn configuration_to_json(g: &Configuration) -> Value {
    serde_json::json!({
        "algebra": g.algebra().name(),
        "ports": g.ports().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "interactions": g.iter().map(interaction_to_json).collect::<Vec<_>>(),
    })
}
