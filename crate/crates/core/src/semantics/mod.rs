//! Weighted interactions, configurations and the exact semantics of
//! interaction and configuration formulas.

mod engine;
mod enumerate;
mod json;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::algebra::{AlgebraDescriptor, AlgebraElement};
use crate::error::{Error, Result};
use crate::syntax::{PclFormula, PilFormula, Port};

pub use engine::{subset_values, SubsetValues, MAX_SUBSET_UNIVERSE};
pub use enumerate::{
    configuration_count, enumerate_configurations, enumerate_grid_configurations,
    enumerate_interactions, grid_interactions, index_subsets, interactions_over, IndexSubsets,
};
pub use json::{configuration_from_json, configuration_to_json, interaction_to_json};

/// A weight for every declared port, not all of them zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interaction {
    weights: BTreeMap<Port, AlgebraElement>,
}

impl Interaction {
    pub fn new(weights: BTreeMap<Port, AlgebraElement>) -> Result<Self> {
        let mut values = weights.values();
        let algebra = values
            .next()
            .ok_or_else(|| Error::InvalidInteraction("no ports".to_string()))?
            .algebra();
        if let Some(other) = values.find(|v| v.algebra() != algebra) {
            return Err(Error::MixedAlgebra {
                left: algebra,
                right: other.algebra(),
            });
        }
        if weights.values().all(|v| v.is_zero()) {
            return Err(Error::InvalidInteraction(
                "every port has weight 0; at least one weight must be nonzero".to_string(),
            ));
        }
        Ok(Interaction { weights })
    }

    /// Builds an interaction from `(port, weight)` pairs.
    pub fn from_pairs<I, S>(algebra: AlgebraDescriptor, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, S)>,
        S: AsRef<str>,
    {
        let mut weights = BTreeMap::new();
        for (port, value) in pairs {
            let port = Port::new(port.as_ref())?;
            let value = algebra.parse_element(value.as_ref())?;
            if weights.insert(port.clone(), value).is_some() {
                return Err(Error::InvalidInteraction(format!("port `{port}` given twice")));
            }
        }
        Interaction::new(weights)
    }

    pub fn algebra(&self) -> AlgebraDescriptor {
        self.weights
            .values()
            .next()
            .expect("interactions are nonempty")
            .algebra()
    }

    pub fn weight(&self, port: &Port) -> Option<AlgebraElement> {
        self.weights.get(port).copied()
    }

    pub fn weights(&self) -> &BTreeMap<Port, AlgebraElement> {
        &self.weights
    }

    pub fn ports(&self) -> impl Iterator<Item = &Port> {
        self.weights.keys()
    }
}

impl fmt::Display for Interaction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (port, value)) in self.weights.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{port}: {value}")?;
        }
        f.write_str("}")
    }
}

/// A nonempty set of interactions over one port set and one algebra. Members
/// are kept sorted and duplicate free.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    interactions: Vec<Interaction>,
}

impl Configuration {
    pub fn new(interactions: impl IntoIterator<Item = Interaction>) -> Result<Self> {
        let set: BTreeSet<Interaction> = interactions.into_iter().collect();
        let mut iter = set.iter();
        let first = iter.next().ok_or_else(|| {
            Error::InvalidConfiguration("a configuration needs at least one interaction".to_string())
        })?;
        for other in iter {
            if other.algebra() != first.algebra() {
                return Err(Error::MixedAlgebra {
                    left: first.algebra(),
                    right: other.algebra(),
                });
            }
            if !other.ports().eq(first.ports()) {
                return Err(Error::InvalidConfiguration(
                    "all interactions must assign the same ports".to_string(),
                ));
            }
        }
        Ok(Configuration {
            interactions: set.into_iter().collect(),
        })
    }

    pub fn singleton(interaction: Interaction) -> Self {
        Configuration {
            interactions: vec![interaction],
        }
    }

    pub fn algebra(&self) -> AlgebraDescriptor {
        self.interactions[0].algebra()
    }

    pub fn ports(&self) -> Vec<Port> {
        self.interactions[0].ports().cloned().collect()
    }

    pub fn interactions(&self) -> &[Interaction] {
        &self.interactions
    }

    pub fn len(&self) -> usize {
        self.interactions.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Interaction> {
        self.interactions.iter()
    }

    /// The union of two configurations over the same ports and algebra.
    pub fn union(&self, other: &Configuration) -> Result<Configuration> {
        Configuration::new(self.iter().chain(other.iter()).cloned())
    }

    /// The members selected by the bits of `mask`; `None` for an empty mask.
    pub fn select(&self, mask: u64) -> Option<Configuration> {
        let picked: Vec<Interaction> = self
            .interactions
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, a)| a.clone())
            .collect();
        (!picked.is_empty()).then_some(Configuration {
            interactions: picked,
        })
    }
}

impl<'a> IntoIterator for &'a Configuration {
    type Item = &'a Interaction;
    type IntoIter = std::slice::Iter<'a, Interaction>;

    fn into_iter(self) -> Self::IntoIter {
        self.iter()
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, a) in self.interactions.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("}")
    }
}

/// `‖f‖(a)` for a single interaction.
pub fn eval_pil(f: &PilFormula, a: &Interaction) -> Result<AlgebraElement> {
    Ok(match f {
        PilFormula::True => a.algebra().one(),
        PilFormula::Atom(p) => a
            .weight(p)
            .ok_or_else(|| Error::UnknownPort(p.to_string()))?,
        PilFormula::Not(inner) => eval_pil(inner, a)?.complement(),
        PilFormula::Or(l, r) => eval_pil(l, a)?.join_same(eval_pil(r, a)?),
    })
}

/// Meet of `‖f‖(a)` over the members of `g`.
pub fn eval_pil_on_config(f: &PilFormula, g: &Configuration) -> Result<AlgebraElement> {
    let mut acc = g.algebra().one();
    for a in g {
        acc = acc.meet_same(eval_pil(f, a)?);
    }
    Ok(acc)
}

/// All ordered pairs of nonempty sub-configurations whose union is `g`;
/// there are `3^n − 2` of them.
pub fn enumerate_covers(g: &Configuration) -> Result<Vec<(Configuration, Configuration)>> {
    let n = g.len();
    if n > MAX_SUBSET_UNIVERSE {
        return Err(Error::ResourceLimit(format!(
            "{n} interactions would give 3^{n} - 2 covers (limit is {MAX_SUBSET_UNIVERSE} interactions)"
        )));
    }
    let full: u64 = (1 << n) - 1;
    let mut pairs = Vec::new();
    for left in 1..=full {
        let rest = full ^ left;
        let mut shared = left;
        loop {
            let right = rest | shared;
            if right != 0 {
                pairs.push((left, right));
            }
            if shared == 0 {
                break;
            }
            shared = (shared - 1) & left;
        }
    }
    pairs.sort_unstable();
    Ok(pairs
        .into_iter()
        .map(|(l, r)| {
            (
                g.select(l).expect("nonempty mask"),
                g.select(r).expect("nonempty mask"),
            )
        })
        .collect())
}

/// `‖z‖(g)`.
pub fn eval_pcl(z: &PclFormula, g: &Configuration) -> Result<AlgebraElement> {
    let values = subset_values(z, g.interactions())?;
    Ok(values.full())
}

/// Join of `‖z‖(g′)` over all nonempty `g′ ⊆ g`, which equals `‖z # true‖(g)`.
pub fn eval_closure(z: &PclFormula, g: &Configuration) -> Result<AlgebraElement> {
    let values = subset_values(z, g.interactions())?;
    Ok(values.join_over_subsets())
}
