//! Deciding equivalence through normal forms, and brute-force semantic
//! oracles that look for distinguishing configurations.

use std::fmt;

use crate::algebra::{AlgebraDescriptor, AlgebraElement};
use crate::error::{Error, Result};
use crate::normalize::{to_set_rep, NormalizationMode, Normalizer, SetRep};
use crate::semantics::{
    configuration_count, eval_pcl, grid_interactions, enumerate_interactions, index_subsets,
    subset_values, Configuration, Interaction, MAX_SUBSET_UNIVERSE,
};
use crate::syntax::{PclFormula, Port};

/// Largest `|K|^|P|` explored without an explicit size bound.
pub const ORACLE_INTERACTION_GUARD: usize = 12;

/// Most configurations a single oracle call will evaluate.
pub const ORACLE_CONFIGURATION_GUARD: u128 = 2_000_000;

/// Size bound used by [`cross_check`] when the full space is too large.
pub const DEFAULT_BOUNDED_SIZE: usize = 2;

/// Grid used by [`cross_check`] for the fuzzy algebra.
pub const DEFAULT_CHECK_GRID: u64 = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EquivVerdict {
    Equivalent,
    NotEquivalent {
        witness: Option<Configuration>,
        values: Option<(AlgebraElement, AlgebraElement)>,
    },
    NoCounterexampleFound {
        samples_checked: u64,
    },
}

impl EquivVerdict {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, EquivVerdict::Equivalent)
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, EquivVerdict::NotEquivalent { .. })
    }

    pub fn witness(&self) -> Option<&Configuration> {
        match self {
            EquivVerdict::NotEquivalent { witness, .. } => witness.as_ref(),
            _ => None,
        }
    }
}

impl fmt::Display for EquivVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EquivVerdict::Equivalent => f.write_str("equivalent"),
            EquivVerdict::NotEquivalent {
                witness: Some(w),
                values: Some((a, b)),
            } => write!(f, "not equivalent: {a} vs {b} on {w}"),
            EquivVerdict::NotEquivalent { .. } => f.write_str("not equivalent"),
            EquivVerdict::NoCounterexampleFound { samples_checked } => {
                write!(f, "no counterexample in {samples_checked} configurations")
            }
        }
    }
}

/// Nested-set equality of two set representations.
pub fn nf_equal(s1: &SetRep, s2: &SetRep) -> bool {
    s1.canonical() == s2.canonical()
}

// every element of `a` has a partner in `b`, and the sizes agree
fn matched<T>(a: &[T], b: &[T], eq: impl Fn(&T, &T) -> bool) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut count = 0;
    for x in a {
        if b.iter().any(|y| eq(x, y)) {
            count += 1;
        }
    }
    count == a.len()
}

fn set_eq3<T: PartialEq>(a: &[T], b: &[T]) -> bool {
    matched(a, b, |x, y| x == y)
}

fn set_eq2<T: PartialEq>(a: &[Vec<T>], b: &[Vec<T>]) -> bool {
    matched(a, b, |x, y| set_eq3(x, y))
}

fn set_eq1<T: PartialEq>(a: &[Vec<Vec<T>>], b: &[Vec<Vec<T>>]) -> bool {
    matched(a, b, |x, y| set_eq2(x, y))
}

/// Direct nested-loop comparison with cardinality guards. Kept to pin the
/// behavior of [`nf_equal`]; quadratic at every level.
pub fn nf_equal_reference(s1: &SetRep, s2: &SetRep) -> bool {
    matched(&s1.0, &s2.0, |x, y| set_eq1(x, y))
}

fn check_ports(z1: &PclFormula, z2: &PclFormula, ports: &[Port]) -> Result<()> {
    z1.check_ports(ports)?;
    z2.check_ports(ports)
}

/// Compares the normal forms in exactly one mode.
pub fn normal_forms_equal(
    z1: &PclFormula,
    z2: &PclFormula,
    ports: &[Port],
    mode: NormalizationMode,
) -> Result<bool> {
    check_ports(z1, z2, ports)?;
    let mut normalizer = Normalizer::new(ports, mode);
    let a = to_set_rep(&normalizer.pcl(z1)?);
    let b = to_set_rep(&normalizer.pcl(z2)?);
    Ok(nf_equal(&a, &b))
}

/// Decides `z1 ≡ z2` over the algebras of `mode`.
///
/// Normal forms are compared in the finer modes first; equality there
/// already implies equivalence in every coarser mode.
pub fn decide_equiv(
    z1: &PclFormula,
    z2: &PclFormula,
    ports: &[Port],
    mode: NormalizationMode,
) -> Result<bool> {
    for &finer in mode.finer() {
        if normal_forms_equal(z1, z2, ports, finer)? {
            return Ok(true);
        }
    }
    normal_forms_equal(z1, z2, ports, mode)
}

fn compare_on_universe(
    z1: &PclFormula,
    z2: &PclFormula,
    universe: &[Interaction],
    max_size: Option<usize>,
) -> Result<Option<(Configuration, AlgebraElement, AlgebraElement)>> {
    let n = universe.len();
    let count = configuration_count(n, max_size);
    if count > ORACLE_CONFIGURATION_GUARD {
        return Err(Error::ResourceLimit(format!(
            "{count} configurations over {n} interactions exceed the oracle limit of {ORACLE_CONFIGURATION_GUARD}"
        )));
    }
    let build = |idx: &[usize]| {
        Configuration::new(idx.iter().map(|&i| universe[i].clone()))
            .expect("members of one universe are compatible")
    };
    let top = max_size.unwrap_or(n).min(n);
    // one table over the whole universe when it is small or fully explored
    if n <= MAX_SUBSET_UNIVERSE && (n <= 10 || top == n) {
        let (t1, t2) = (subset_values(z1, universe)?, subset_values(z2, universe)?);
        for idx in index_subsets(n, max_size) {
            let mask = idx.iter().fold(0u64, |m, &i| m | 1 << i);
            let (a, b) = (t1.get(mask), t2.get(mask));
            if a != b {
                return Ok(Some((build(&idx), a, b)));
            }
        }
        return Ok(None);
    }
    for idx in index_subsets(n, max_size) {
        let g = build(&idx);
        let (a, b) = (eval_pcl(z1, &g)?, eval_pcl(z2, &g)?);
        if a != b {
            return Ok(Some((g, a, b)));
        }
    }
    Ok(None)
}

/// Evaluates both formulas on every configuration over a finite algebra (of
/// at most `max_config_size` interactions when given). The witness is the
/// first difference in size-then-lexicographic order.
pub fn oracle_equiv(
    z1: &PclFormula,
    z2: &PclFormula,
    ports: &[Port],
    d: AlgebraDescriptor,
    max_config_size: Option<usize>,
) -> Result<EquivVerdict> {
    check_ports(z1, z2, ports)?;
    let cardinality = d.cardinality().ok_or(Error::InfiniteCarrier(d))?;
    let universe = enumerate_interactions(ports, d)?;
    if max_config_size.is_none() && universe.len() + 1 > ORACLE_INTERACTION_GUARD {
        return Err(Error::ResourceLimit(format!(
            "{d} over {} ports has {}^{} weight maps (limit {ORACLE_INTERACTION_GUARD} without a size bound)",
            ports.len(),
            cardinality,
            ports.len()
        )));
    }
    Ok(match compare_on_universe(z1, z2, &universe, max_config_size)? {
        None => EquivVerdict::Equivalent,
        Some((w, a, b)) => EquivVerdict::NotEquivalent {
            witness: Some(w),
            values: Some((a, b)),
        },
    })
}

/// Like [`oracle_equiv`] over fuzzy grid interactions. Never reports
/// `Equivalent`.
pub fn oracle_equiv_fuzzy(
    z1: &PclFormula,
    z2: &PclFormula,
    ports: &[Port],
    grid_denominator: u64,
    max_config_size: usize,
) -> Result<EquivVerdict> {
    check_ports(z1, z2, ports)?;
    if max_config_size == 0 {
        return Err(Error::Domain("the configuration size bound must be at least 1".to_string()));
    }
    let universe = grid_interactions(ports, grid_denominator)?;
    Ok(match compare_on_universe(z1, z2, &universe, Some(max_config_size))? {
        None => EquivVerdict::NoCounterexampleFound {
            samples_checked: configuration_count(universe.len(), Some(max_config_size)) as u64,
        },
        Some((w, a, b)) => EquivVerdict::NotEquivalent {
            witness: Some(w),
            values: Some((a, b)),
        },
    })
}

/// One oracle run inside a [`ConsistencyReport`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleRun {
    pub algebra: AlgebraDescriptor,
    /// Grid denominator for the fuzzy algebra.
    pub grid: Option<u64>,
    /// `None` when every configuration was checked.
    pub max_size: Option<usize>,
    pub verdict: EquivVerdict,
}

impl OracleRun {
    /// Whether an `Equivalent` verdict from this run covers the whole space.
    pub fn exhaustive(&self) -> bool {
        self.grid.is_none() && self.max_size.is_none()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiscrepancyKind {
    /// Normal forms agree but an oracle found a witness.
    Soundness,
    /// An exhaustive oracle found no difference but the normal forms differ.
    Completeness,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Discrepancy {
    pub kind: DiscrepancyKind,
    pub algebra: AlgebraDescriptor,
    pub witness: Option<Configuration>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub left: PclFormula,
    pub right: PclFormula,
    pub mode: NormalizationMode,
    pub decided: bool,
    pub oracles: Vec<OracleRun>,
    pub discrepancies: Vec<Discrepancy>,
}

impl ConsistencyReport {
    pub fn agrees(&self) -> bool {
        self.discrepancies.is_empty()
    }

    pub fn soundness_violations(&self) -> impl Iterator<Item = &Discrepancy> {
        self.discrepancies
            .iter()
            .filter(|d| d.kind == DiscrepancyKind::Soundness)
    }

    pub fn completeness_gaps(&self) -> impl Iterator<Item = &Discrepancy> {
        self.discrepancies
            .iter()
            .filter(|d| d.kind == DiscrepancyKind::Completeness)
    }

    /// First witness found by any oracle.
    pub fn witness(&self) -> Option<(&OracleRun, &Configuration)> {
        self.oracles
            .iter()
            .find_map(|run| run.verdict.witness().map(|w| (run, w)))
    }
}

/// Algebras whose oracles back a decision in `mode`, finest first.
pub fn oracle_algebras(mode: NormalizationMode) -> &'static [AlgebraDescriptor] {
    use AlgebraDescriptor::*;
    match mode {
        NormalizationMode::DeMorgan => &[Bool2, Kleene3, Four],
        NormalizationMode::Kleene => &[Bool2, Kleene3],
        NormalizationMode::Boolean => &[Bool2],
    }
}

// the algebra whose equations are exactly those of the mode
fn generic_algebra(mode: NormalizationMode) -> AlgebraDescriptor {
    match mode {
        NormalizationMode::DeMorgan => AlgebraDescriptor::Four,
        NormalizationMode::Kleene => AlgebraDescriptor::Kleene3,
        NormalizationMode::Boolean => AlgebraDescriptor::Bool2,
    }
}

/// Runs [`decide_equiv`] next to the oracles for `mode` and records any
/// disagreement.
pub fn cross_check(
    z1: &PclFormula,
    z2: &PclFormula,
    ports: &[Port],
    mode: NormalizationMode,
) -> Result<ConsistencyReport> {
    let decided = decide_equiv(z1, z2, ports, mode)?;
    let mut oracles = Vec::new();
    for &d in oracle_algebras(mode) {
        let weight_maps = d
            .cardinality()
            .and_then(|k| u32::try_from(ports.len()).ok().and_then(|n| k.checked_pow(n)));
        let max_size = match weight_maps {
            Some(m) if m <= ORACLE_INTERACTION_GUARD => None,
            _ => Some(DEFAULT_BOUNDED_SIZE),
        };
        let verdict = oracle_equiv(z1, z2, ports, d, max_size)?;
        oracles.push(OracleRun {
            algebra: d,
            grid: None,
            max_size,
            verdict,
        });
    }
    if mode == NormalizationMode::Kleene {
        let verdict = oracle_equiv_fuzzy(z1, z2, ports, DEFAULT_CHECK_GRID, DEFAULT_BOUNDED_SIZE)?;
        oracles.push(OracleRun {
            algebra: AlgebraDescriptor::FuzzyRational,
            grid: Some(DEFAULT_CHECK_GRID),
            max_size: Some(DEFAULT_BOUNDED_SIZE),
            verdict,
        });
    }
    let mut discrepancies = Vec::new();
    if decided {
        for run in oracles.iter().filter(|r| r.verdict.is_refuted()) {
            discrepancies.push(Discrepancy {
                kind: DiscrepancyKind::Soundness,
                algebra: run.algebra,
                witness: run.verdict.witness().cloned(),
            });
        }
    } else {
        let generic = generic_algebra(mode);
        let proven = oracles
            .iter()
            .any(|r| r.algebra == generic && r.exhaustive() && r.verdict.is_equivalent());
        if proven {
            discrepancies.push(Discrepancy {
                kind: DiscrepancyKind::Completeness,
                algebra: generic,
                witness: None,
            });
        }
    }
    Ok(ConsistencyReport {
        left: z1.clone(),
        right: z2.clone(),
        mode,
        decided,
        oracles,
        discrepancies,
    })
}
