//! Evaluation of a configuration formula on every nonempty subset of a small
//! universe of interactions at once.
//!
//! Subsets are bit masks over the universe. Each subformula gets one table
//! indexed by mask, and coalescing reads its operands' tables at sub-masks,
//! so every `(subformula node, sub-configuration)` pair is computed exactly
//! once.

use std::collections::HashMap;
use std::rc::Rc;

use super::{eval_pil, Interaction};
use crate::algebra::{AlgebraDescriptor, AlgebraElement};
use crate::error::{Error, Result};
use crate::syntax::{PclFormula, PilFormula};

/// Largest universe evaluated in one dense table (2^16 entries per node).
pub const MAX_SUBSET_UNIVERSE: usize = 16;

/// Values of one formula on every nonempty subset of a universe.
#[derive(Debug, Clone)]
pub struct SubsetValues {
    algebra: AlgebraDescriptor,
    size: usize,
    // index 0 (the empty set) is unused
    table: Rc<Vec<AlgebraElement>>,
}

impl SubsetValues {
    pub fn universe_size(&self) -> usize {
        self.size
    }

    pub fn algebra(&self) -> AlgebraDescriptor {
        self.algebra
    }

    /// Value on the sub-configuration selected by `mask` (must be nonzero).
    pub fn get(&self, mask: u64) -> AlgebraElement {
        assert!(mask != 0, "the empty set is not a configuration");
        self.table[mask as usize]
    }

    /// Value on the whole universe.
    pub fn full(&self) -> AlgebraElement {
        self.get(self.full_mask())
    }

    pub fn full_mask(&self) -> u64 {
        (1u64 << self.size) - 1
    }

    pub fn join_over_subsets(&self) -> AlgebraElement {
        self.table[1..]
            .iter()
            .fold(self.algebra.zero(), |acc, &v| acc.join_same(v))
    }
}

/// Evaluates `z` on every nonempty subset of `universe`.
///
/// All members must share one algebra and port set (as in a
/// [`Configuration`](super::Configuration)).
pub fn subset_values(z: &PclFormula, universe: &[Interaction]) -> Result<SubsetValues> {
    let first = universe.first().ok_or_else(|| {
        Error::InvalidConfiguration("cannot evaluate on an empty universe".to_string())
    })?;
    if universe.len() > MAX_SUBSET_UNIVERSE {
        return Err(Error::ResourceLimit(format!(
            "evaluating on {} interactions needs 2^{} sub-configurations (limit is {} interactions)",
            universe.len(),
            universe.len(),
            MAX_SUBSET_UNIVERSE
        )));
    }
    let algebra = first.algebra();
    if let Some(other) = universe.iter().find(|a| a.algebra() != algebra) {
        return Err(Error::MixedAlgebra {
            left: algebra,
            right: other.algebra(),
        });
    }
    let mut engine = Engine {
        universe,
        algebra,
        memo: HashMap::new(),
    };
    let table = engine.table(z)?;
    Ok(SubsetValues {
        algebra,
        size: universe.len(),
        table,
    })
}

struct Engine<'u> {
    universe: &'u [Interaction],
    algebra: AlgebraDescriptor,
    // keyed by node address: the tree is borrowed for the whole evaluation
    memo: HashMap<*const PclFormula, Rc<Vec<AlgebraElement>>>,
}

impl Engine<'_> {
    fn slots(&self) -> usize {
        1 << self.universe.len()
    }

    fn table(&mut self, z: &PclFormula) -> Result<Rc<Vec<AlgebraElement>>> {
        let key = z as *const PclFormula;
        if let Some(hit) = self.memo.get(&key) {
            return Ok(Rc::clone(hit));
        }
        let table = match z {
            PclFormula::Pil(f) => self.pil_table(f)?,
            PclFormula::Neg(inner) => self.table(inner)?.iter().map(|v| v.complement()).collect(),
            PclFormula::Plus(a, b) => {
                let (ta, tb) = (self.table(a)?, self.table(b)?);
                ta.iter().zip(tb.iter()).map(|(x, y)| x.join_same(*y)).collect()
            }
            PclFormula::Coalesce(a, b) => {
                let (ta, tb) = (self.table(a)?, self.table(b)?);
                self.coalesce_table(&ta, &tb)
            }
        };
        let table = Rc::new(table);
        self.memo.insert(key, Rc::clone(&table));
        Ok(table)
    }

    // meet over members, built up one lowest bit at a time
    fn pil_table(&self, f: &PilFormula) -> Result<Vec<AlgebraElement>> {
        let per_member = self
            .universe
            .iter()
            .map(|a| eval_pil(f, a))
            .collect::<Result<Vec<_>>>()?;
        let mut table = vec![self.algebra.one(); self.slots()];
        for mask in 1..self.slots() {
            let low = mask.trailing_zeros() as usize;
            table[mask] = table[mask & (mask - 1)].meet_same(per_member[low]);
        }
        Ok(table)
    }

    // ‖a # b‖(γ) = ⋁ over γ = γ1 ∪ γ2 (both nonempty) of ‖a‖(γ1) ∧ ‖b‖(γ2)
    fn coalesce_table(&self, ta: &[AlgebraElement], tb: &[AlgebraElement]) -> Vec<AlgebraElement> {
        let one = self.algebra.one();
        let mut table = vec![self.algebra.zero(); self.slots()];
        for mask in 1..self.slots() {
            let mut acc = self.algebra.zero();
            let mut left = mask;
            'outer: while left != 0 {
                let lv = ta[left];
                if !lv.is_zero() {
                    let rest = mask ^ left;
                    let mut shared = left;
                    loop {
                        let right = rest | shared;
                        if right != 0 {
                            acc = acc.join_same(lv.meet_same(tb[right]));
                            if acc == one {
                                break 'outer;
                            }
                        }
                        if shared == 0 {
                            break;
                        }
                        shared = (shared - 1) & left;
                    }
                }
                left = (left - 1) & mask;
            }
            table[mask] = acc;
        }
        table
    }
}
