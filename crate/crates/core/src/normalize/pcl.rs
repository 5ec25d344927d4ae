use std::collections::BTreeSet;
use std::fmt;

use super::{FpilNF, Monomial, NormalizationMode, Normalizer};
use crate::error::{Error, Result};
use crate::syntax::{big_coalesce, big_plus, print_pcl, PclFormula, Port};

/// Coalescing of distinct interaction normal forms, none of them `false`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Group {
    members: BTreeSet<FpilNF>,
}

impl Group {
    pub fn members(&self) -> &BTreeSet<FpilNF> {
        &self.members
    }

    pub fn to_formula(&self) -> PclFormula {
        big_coalesce(self.members.iter().map(|m| PclFormula::Pil(m.to_formula())).collect())
            .expect("groups are nonempty")
    }
}

/// Sum of distinct groups, or a constant.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PclNF {
    True,
    False,
    Sum(BTreeSet<Group>),
}

impl PclNF {
    pub fn groups(&self) -> impl Iterator<Item = &Group> {
        let groups = match self {
            PclNF::Sum(groups) => Some(groups.iter()),
            _ => None,
        };
        groups.into_iter().flatten()
    }

    pub fn to_formula(&self) -> PclFormula {
        match self {
            PclNF::True => PclFormula::tt(),
            PclNF::False => PclFormula::ff(),
            PclNF::Sum(groups) => big_plus(groups.iter().map(Group::to_formula).collect())
                .expect("sums are nonempty"),
        }
    }

    // member sets of the groups; `true` is the single group {true}
    fn member_sets(&self) -> Vec<BTreeSet<FpilNF>> {
        match self {
            PclNF::True => vec![BTreeSet::from([FpilNF::True])],
            PclNF::False => Vec::new(),
            PclNF::Sum(groups) => groups.iter().map(|g| g.members.clone()).collect(),
        }
    }
}

impl fmt::Display for PclNF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_pcl(&self.to_formula()))
    }
}

// drops groups containing `false`; a group {true} makes the sum `true`
fn sum_of(groups: impl IntoIterator<Item = BTreeSet<FpilNF>>) -> PclNF {
    let mut out = BTreeSet::new();
    for members in groups {
        if members.is_empty() || members.contains(&FpilNF::False) {
            continue;
        }
        if members.len() == 1 && members.contains(&FpilNF::True) {
            return PclNF::True;
        }
        out.insert(Group { members });
    }
    if out.is_empty() {
        PclNF::False
    } else {
        PclNF::Sum(out)
    }
}

impl Normalizer {
    pub fn pcl(&mut self, z: &PclFormula) -> Result<PclNF> {
        match z {
            PclFormula::Pil(f) => Ok(match self.pil(f)? {
                FpilNF::True => PclNF::True,
                FpilNF::False => PclNF::False,
                nf => sum_of([BTreeSet::from([nf])]),
            }),
            PclFormula::Plus(a, b) => {
                let (a, b) = (self.pcl(a)?, self.pcl(b)?);
                Ok(self.plus(&a, &b))
            }
            PclFormula::Coalesce(a, b) => {
                let (a, b) = (self.pcl(a)?, self.pcl(b)?);
                self.coalesce(&a, &b)
            }
            PclFormula::Neg(inner) => {
                // a desugared product is normalized directly
                if let PclFormula::Plus(x, y) = inner.as_ref() {
                    if let (PclFormula::Neg(x), PclFormula::Neg(y)) = (x.as_ref(), y.as_ref()) {
                        let (x, y) = (self.pcl(x)?, self.pcl(y)?);
                        return self.times(&x, &y);
                    }
                }
                let inner = self.pcl(inner)?;
                self.neg(&inner)
            }
        }
    }

    fn plus(&mut self, a: &PclNF, b: &PclNF) -> PclNF {
        sum_of(a.member_sets().into_iter().chain(b.member_sets()))
    }

    fn coalesce(&mut self, a: &PclNF, b: &PclNF) -> Result<PclNF> {
        let (left, right) = (a.member_sets(), b.member_sets());
        self.spend((left.len() * right.len()) as u64)?;
        let mut groups = Vec::with_capacity(left.len() * right.len());
        for x in &left {
            for y in &right {
                groups.push(x.union(y).cloned().collect());
            }
        }
        Ok(sum_of(groups))
    }

    fn times(&mut self, a: &PclNF, b: &PclNF) -> Result<PclNF> {
        match (a, b) {
            (PclNF::False, _) | (_, PclNF::False) => return Ok(PclNF::False),
            (PclNF::True, other) | (other, PclNF::True) => return Ok(other.clone()),
            _ => {}
        }
        let (left, right) = (a.member_sets(), b.member_sets());
        let mut groups = Vec::with_capacity(left.len() * right.len());
        for x in &left {
            for y in &right {
                groups.push(self.times_group(x, y)?);
            }
        }
        Ok(sum_of(groups))
    }

    // (⊎ φ_i) ⊗ (⊎ ψ_j) as one coalescing: with Φ = ⋁ φ_i ⋀ ψ_j, the members
    // are every φ_i ⋀ Φ, every ψ_j ⋀ Φ, and Φ itself
    fn times_group(&mut self, x: &BTreeSet<FpilNF>, y: &BTreeSet<FpilNF>) -> Result<BTreeSet<FpilNF>> {
        self.spend((x.len() * y.len()) as u64)?;
        let mut products = Vec::with_capacity(x.len() * y.len());
        for phi in x {
            for psi in y {
                products.push(self.and_all(&[phi, psi])?);
            }
        }
        let big_phi = self.or_all(&products)?;
        let mut members = BTreeSet::new();
        for phi in x.union(y) {
            members.insert(self.and_all(&[phi, &big_phi])?);
        }
        members.insert(big_phi);
        Ok(members)
    }

    // ¬(⊕_i G_i) = ⊗_i ¬G_i and ¬(⊎_j φ_j) = ⊕_j !φ_j ⊕ ∼(⋀_j !φ_j)
    fn neg(&mut self, a: &PclNF) -> Result<PclNF> {
        let groups = match a {
            PclNF::True => return Ok(PclNF::False),
            PclNF::False => return Ok(PclNF::True),
            PclNF::Sum(groups) => groups,
        };
        let mut acc = PclNF::True;
        for g in groups {
            let negated = g
                .members
                .iter()
                .map(|phi| self.not(phi))
                .collect::<Result<Vec<_>>>()?;
            let all: Vec<&FpilNF> = negated.iter().collect();
            let meet = self.and_all(&all)?;
            let mut parts: Vec<BTreeSet<FpilNF>> =
                negated.into_iter().map(|n| BTreeSet::from([n])).collect();
            parts.push(BTreeSet::from([meet, FpilNF::True]));
            let negated_group = sum_of(parts);
            acc = self.times(&acc, &negated_group)?;
            if acc == PclNF::False {
                break;
            }
        }
        Ok(acc)
    }
}

/// Normal form of a configuration formula over `ports`.
pub fn pcl_normal_form(z: &PclFormula, ports: &[Port], mode: NormalizationMode) -> Result<PclNF> {
    Normalizer::new(ports, mode).pcl(z)
}

/// Checks the structural invariants of a normal form produced over `ports`
/// in `mode`.
pub fn validate(nf: &PclNF, ports: &[Port], mode: NormalizationMode) -> Result<()> {
    let bad = |msg: String| Err(Error::Contract(msg));
    let groups = match nf {
        PclNF::True | PclNF::False => return Ok(()),
        PclNF::Sum(groups) => groups,
    };
    if groups.is_empty() {
        return bad("empty sum".to_string());
    }
    for g in groups {
        if g.members.is_empty() {
            return bad("empty group".to_string());
        }
        if g.members.contains(&FpilNF::False) {
            return bad(format!("group `{}` contains false", g.to_formula()));
        }
        if g.members.len() == 1 && g.members.contains(&FpilNF::True) {
            return bad("group {true} inside a sum".to_string());
        }
        for member in &g.members {
            if let FpilNF::Monomials(ms) = member {
                validate_monomials(ms, ports, mode)?;
            }
        }
    }
    Ok(())
}

fn validate_monomials(ms: &BTreeSet<Monomial>, ports: &[Port], mode: NormalizationMode) -> Result<()> {
    let bad = |msg: String| Err(Error::Contract(msg));
    if ms.is_empty() {
        return bad("member without monomials".to_string());
    }
    for m in ms {
        if m.literals().is_empty() {
            return bad("empty monomial".to_string());
        }
        if let Some(l) = m.literals().iter().find(|l| !ports.contains(&l.port)) {
            return bad(format!("monomial `{m}` mentions undeclared port `{}`", l.port));
        }
        if let Some(s) = ms.iter().find(|s| *s != m && s.literals().is_subset(m.literals())) {
            return bad(format!("monomial `{m}` is absorbed by `{s}`"));
        }
        let full = m.ports().len() == ports.iter().collect::<BTreeSet<_>>().len();
        match mode {
            NormalizationMode::Kleene if m.is_contradictory() && !full => {
                return bad(format!("contradictory monomial `{m}` is not expanded"));
            }
            NormalizationMode::Boolean if m.is_contradictory() || !full => {
                return bad(format!("`{m}` is not a minterm"));
            }
            _ => {}
        }
    }
    Ok(())
}
