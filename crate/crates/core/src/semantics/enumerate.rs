use std::collections::{BTreeMap, BTreeSet};

use super::{Configuration, Interaction};
use crate::algebra::{carrier, AlgebraDescriptor, AlgebraElement};
use crate::error::{Error, Result};
use crate::syntax::Port;

/// Every weight map from `ports` into `values` except the all-zero one, in
/// canonical order.
pub fn interactions_over(ports: &[Port], values: &[AlgebraElement]) -> Result<Vec<Interaction>> {
    let ports: Vec<Port> = ports.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    if ports.is_empty() {
        return Err(Error::Domain("at least one port is required".to_string()));
    }
    if values.is_empty() {
        return Err(Error::Domain("no weights to choose from".to_string()));
    }
    let total = u32::try_from(ports.len())
        .ok()
        .and_then(|len| values.len().checked_pow(len))
        .filter(|&t| t <= 1 << 24)
        .ok_or_else(|| {
            Error::ResourceLimit(format!(
                "{} weights over {} ports is too many interactions to enumerate",
                values.len(),
                ports.len()
            ))
        })?;
    let mut out = Vec::with_capacity(total);
    for mut index in 0..total {
        let mut weights = BTreeMap::new();
        for port in ports.iter().rev() {
            weights.insert(port.clone(), values[index % values.len()]);
            index /= values.len();
        }
        if weights.values().all(|v| v.is_zero()) {
            continue;
        }
        out.push(Interaction::new(weights)?);
    }
    out.sort();
    Ok(out)
}

/// All interactions over `ports` in a finite algebra.
pub fn enumerate_interactions(ports: &[Port], d: AlgebraDescriptor) -> Result<Vec<Interaction>> {
    interactions_over(ports, &carrier(d, None)?)
}

/// All fuzzy interactions whose weights lie on the grid `{0, 1/d, …, 1}`.
pub fn grid_interactions(ports: &[Port], denominator: u64) -> Result<Vec<Interaction>> {
    interactions_over(ports, &carrier(AlgebraDescriptor::FuzzyRational, Some(denominator))?)
}

/// Index sets `{i1 < … < ik}` of `0..n`, ordered by size and then
/// lexicographically, for `1 ≤ k ≤ max_size`.
pub fn index_subsets(n: usize, max_size: Option<usize>) -> IndexSubsets {
    IndexSubsets {
        n,
        max_size: max_size.unwrap_or(n).min(n),
        current: if n == 0 { None } else { Some(vec![0]) },
    }
}

#[derive(Debug, Clone)]
pub struct IndexSubsets {
    n: usize,
    max_size: usize,
    current: Option<Vec<usize>>,
}

impl Iterator for IndexSubsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.current.take()?;
        if current.len() > self.max_size {
            return None;
        }
        let out = current.clone();
        let mut next = current;
        let k = next.len();
        // advance to the next k-combination, or to the first (k+1)-combination
        let mut i = k;
        while i > 0 && next[i - 1] == self.n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            if k < self.max_size {
                self.current = Some((0..=k).collect());
            }
        } else {
            next[i - 1] += 1;
            for j in i..k {
                next[j] = next[j - 1] + 1;
            }
            self.current = Some(next);
        }
        Some(out)
    }
}

/// `Σ_{k=1}^{min(max, n)} C(n, k)`; saturates at `u128::MAX`.
pub fn configuration_count(n: usize, max_size: Option<usize>) -> u128 {
    let top = max_size.unwrap_or(n).min(n);
    let mut total: u128 = 0;
    let mut binom: u128 = 1;
    for k in 1..=top {
        binom = binom.saturating_mul((n - k + 1) as u128) / k as u128;
        total = total.saturating_add(binom);
    }
    total
}

fn configurations_of(
    universe: Vec<Interaction>,
    max_size: Option<usize>,
) -> impl Iterator<Item = Configuration> {
    index_subsets(universe.len(), max_size).map(move |idx| {
        Configuration::new(idx.iter().map(|&i| universe[i].clone()))
            .expect("members of one universe are compatible")
    })
}

/// Lazily enumerates every configuration of at most `max_size` interactions
/// (all sizes when `None`) over a finite algebra.
pub fn enumerate_configurations(
    ports: &[Port],
    d: AlgebraDescriptor,
    max_size: Option<usize>,
) -> Result<impl Iterator<Item = Configuration>> {
    Ok(configurations_of(enumerate_interactions(ports, d)?, max_size))
}

/// Like [`enumerate_configurations`] over grid interactions of the fuzzy
/// algebra.
pub fn enumerate_grid_configurations(
    ports: &[Port],
    denominator: u64,
    max_size: Option<usize>,
) -> Result<impl Iterator<Item = Configuration>> {
    Ok(configurations_of(grid_interactions(ports, denominator)?, max_size))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ports(names: &[&str]) -> Vec<Port> {
        names.iter().map(|n| Port::new(*n).unwrap()).collect()
    }

    #[test]
    fn interaction_counts() {
        let p = ports(&["p"]);
        let pq = ports(&["p", "q"]);
        assert_eq!(enumerate_interactions(&p, AlgebraDescriptor::Bool2).unwrap().len(), 1);
        assert_eq!(enumerate_interactions(&pq, AlgebraDescriptor::Bool2).unwrap().len(), 3);
        assert_eq!(enumerate_interactions(&pq, AlgebraDescriptor::Kleene3).unwrap().len(), 8);
        assert_eq!(enumerate_interactions(&pq, AlgebraDescriptor::Four).unwrap().len(), 15);
        assert!(enumerate_interactions(&pq, AlgebraDescriptor::FuzzyRational).is_err());
        assert_eq!(grid_interactions(&pq, 4).unwrap().len(), 24);
        assert!(enumerate_interactions(&[], AlgebraDescriptor::Bool2).is_err());
    }

    #[test]
    fn interactions_are_canonically_ordered() {
        let pq = ports(&["q", "p"]);
        let all = enumerate_interactions(&pq, AlgebraDescriptor::Bool2).unwrap();
        let shown: Vec<String> = all.iter().map(|a| a.to_string()).collect();
        assert_eq!(shown, ["{p: 0, q: 1}", "{p: 1, q: 0}", "{p: 1, q: 1}"]);
    }

    #[test]
    fn configuration_counts() {
        let p = ports(&["p"]);
        let pq = ports(&["p", "q"]);
        let count = |ps: &[Port], d| enumerate_configurations(ps, d, None).unwrap().count();
        assert_eq!(count(&p, AlgebraDescriptor::Bool2), 1);
        assert_eq!(count(&pq, AlgebraDescriptor::Bool2), 7);
        assert_eq!(count(&pq, AlgebraDescriptor::Kleene3), 255);
        assert_eq!(
            enumerate_configurations(&pq, AlgebraDescriptor::Four, Some(2)).unwrap().count(),
            15 + 105
        );
        assert_eq!(configuration_count(8, None), 255);
        assert_eq!(configuration_count(15, Some(2)), 120);
        assert_eq!(configuration_count(24, Some(2)), 300);
    }

    #[test]
    fn subsets_by_size_then_lexicographic() {
        let all: Vec<Vec<usize>> = index_subsets(3, None).collect();
        assert_eq!(
            all,
            vec![
                vec![0],
                vec![1],
                vec![2],
                vec![0, 1],
                vec![0, 2],
                vec![1, 2],
                vec![0, 1, 2]
            ]
        );
        assert_eq!(index_subsets(4, Some(2)).count(), 10);
        assert_eq!(index_subsets(0, None).count(), 0);
        assert_eq!(index_subsets(5, Some(0)).count(), 0);
    }
}
