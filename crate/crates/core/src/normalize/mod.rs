//! Monomials, disjunctive normal forms of interaction formulas and the
//! sum-of-coalescings normal form of configuration formulas.

mod pcl;
mod setrep;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::algebra::{classify, AlgebraDescriptor, Classification};
use crate::error::{Error, Result};
use crate::syntax::{big_and, big_or, print_pil, PilFormula, Port};

pub use pcl::{pcl_normal_form, validate, Group, PclNF};
pub use setrep::{to_set_rep, SetRep, Token};

/// Default number of rewrite steps a [`Normalizer`] may take.
pub const DEFAULT_STEP_BUDGET: u64 = 20_000_000;

/// Which algebras a normal form must be faithful for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NormalizationMode {
    DeMorgan,
    Kleene,
    Boolean,
}

impl NormalizationMode {
    pub const ALL: [NormalizationMode; 3] = [
        NormalizationMode::DeMorgan,
        NormalizationMode::Kleene,
        NormalizationMode::Boolean,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NormalizationMode::DeMorgan => "demorgan",
            NormalizationMode::Kleene => "kleene",
            NormalizationMode::Boolean => "boolean",
        }
    }

    /// Whether normal forms in this mode preserve semantics over `d`.
    pub fn supports(self, d: AlgebraDescriptor) -> bool {
        let class = classify(d);
        match self {
            NormalizationMode::DeMorgan => true,
            NormalizationMode::Kleene => class != Classification::DeMorgan,
            NormalizationMode::Boolean => class == Classification::Boolean,
        }
    }

    /// Modes whose normal forms identify fewer formulas than this one.
    pub fn finer(self) -> &'static [NormalizationMode] {
        match self {
            NormalizationMode::DeMorgan => &[],
            NormalizationMode::Kleene => &[NormalizationMode::DeMorgan],
            NormalizationMode::Boolean => &[NormalizationMode::DeMorgan, NormalizationMode::Kleene],
        }
    }
}

impl fmt::Display for NormalizationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NormalizationMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "demorgan" | "de-morgan" => Ok(NormalizationMode::DeMorgan),
            "kleene" => Ok(NormalizationMode::Kleene),
            "boolean" | "bool" => Ok(NormalizationMode::Boolean),
            _ => Err(Error::Domain(format!(
                "unknown mode {s:?} (expected demorgan, kleene or boolean)"
            ))),
        }
    }
}

/// A port or a negated port. Within one port the positive literal sorts first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub port: Port,
    pub negated: bool,
}

impl Literal {
    pub fn pos(port: Port) -> Self {
        Literal {
            port,
            negated: false,
        }
    }

    pub fn neg(port: Port) -> Self {
        Literal {
            port,
            negated: true,
        }
    }

    pub fn complement(&self) -> Self {
        Literal {
            port: self.port.clone(),
            negated: !self.negated,
        }
    }

    pub fn to_formula(&self) -> PilFormula {
        let atom = PilFormula::Atom(self.port.clone());
        if self.negated {
            atom.not()
        } else {
            atom
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "!{}", self.port)
        } else {
            write!(f, "{}", self.port)
        }
    }
}

/// A nonempty conjunction of literals. A port may occur both positively and
/// negatively.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    literals: BTreeSet<Literal>,
}

impl Monomial {
    pub fn new(literals: impl IntoIterator<Item = Literal>) -> Result<Self> {
        let literals: BTreeSet<Literal> = literals.into_iter().collect();
        if literals.is_empty() {
            return Err(Error::Domain("a monomial needs at least one literal".to_string()));
        }
        Ok(Monomial { literals })
    }

    pub fn literals(&self) -> &BTreeSet<Literal> {
        &self.literals
    }

    pub fn pos(&self) -> impl Iterator<Item = &Port> {
        self.literals.iter().filter(|l| !l.negated).map(|l| &l.port)
    }

    pub fn neg(&self) -> impl Iterator<Item = &Port> {
        self.literals.iter().filter(|l| l.negated).map(|l| &l.port)
    }

    pub fn ports(&self) -> BTreeSet<&Port> {
        self.literals.iter().map(|l| &l.port).collect()
    }

    /// True when some port occurs with both signs.
    pub fn is_contradictory(&self) -> bool {
        self.literals
            .iter()
            .any(|l| !l.negated && self.literals.contains(&l.complement()))
    }

    pub fn to_formula(&self) -> PilFormula {
        big_and(self.literals.iter().map(Literal::to_formula).collect())
            .expect("monomials are nonempty")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_pil(&self.to_formula()))
    }
}

/// Disjunction of absorption-reduced monomials, or a constant.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FpilNF {
    True,
    False,
    Monomials(BTreeSet<Monomial>),
}

impl FpilNF {
    pub fn to_formula(&self) -> PilFormula {
        match self {
            FpilNF::True => PilFormula::True,
            FpilNF::False => PilFormula::falsum(),
            FpilNF::Monomials(ms) => big_or(ms.iter().map(Monomial::to_formula).collect())
                .expect("normal forms have at least one monomial"),
        }
    }
}

impl fmt::Display for FpilNF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_pil(&self.to_formula()))
    }
}

/// Interaction formula with negation pushed onto atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Nnf {
    True,
    False,
    Lit(Literal),
    And(Vec<Nnf>),
    Or(Vec<Nnf>),
}

fn nnf(f: &PilFormula, negate: bool) -> Nnf {
    match f {
        PilFormula::True if negate => Nnf::False,
        PilFormula::True => Nnf::True,
        PilFormula::Atom(p) => Nnf::Lit(Literal {
            port: p.clone(),
            negated: negate,
        }),
        PilFormula::Not(inner) => nnf(inner, !negate),
        PilFormula::Or(a, b) => {
            let parts = vec![nnf(a, negate), nnf(b, negate)];
            if negate {
                Nnf::And(parts)
            } else {
                Nnf::Or(parts)
            }
        }
    }
}

fn nnf_to_formula(n: &Nnf) -> PilFormula {
    match n {
        Nnf::True => PilFormula::True,
        Nnf::False => PilFormula::falsum(),
        Nnf::Lit(l) => l.to_formula(),
        Nnf::And(parts) => big_and(parts.iter().map(nnf_to_formula).collect()).expect("nonempty"),
        Nnf::Or(parts) => big_or(parts.iter().map(nnf_to_formula).collect()).expect("nonempty"),
    }
}

fn nf_to_nnf(nf: &FpilNF, negate: bool) -> Nnf {
    match nf {
        FpilNF::True => nnf(&PilFormula::True, negate),
        FpilNF::False => nnf(&PilFormula::True, !negate),
        FpilNF::Monomials(ms) => {
            let terms = ms
                .iter()
                .map(|m| {
                    let lits = m
                        .literals
                        .iter()
                        .map(|l| Nnf::Lit(if negate { l.complement() } else { l.clone() }))
                        .collect();
                    if negate {
                        Nnf::Or(lits)
                    } else {
                        Nnf::And(lits)
                    }
                })
                .collect();
            if negate {
                Nnf::And(terms)
            } else {
                Nnf::Or(terms)
            }
        }
    }
}

/// Pushes negations onto atoms and `true`, leaving only `|` and `&`.
pub fn pil_nnf(f: &PilFormula) -> PilFormula {
    nnf_to_formula(&nnf(f, false))
}

type Term = BTreeSet<Literal>;

/// Normalizes formulas over a fixed port list within a step budget.
#[derive(Debug, Clone)]
pub struct Normalizer {
    ports: Vec<Port>,
    mode: NormalizationMode,
    budget: u64,
    steps: u64,
}

impl Normalizer {
    pub fn new(ports: &[Port], mode: NormalizationMode) -> Self {
        let ports: BTreeSet<Port> = ports.iter().cloned().collect();
        Normalizer {
            ports: ports.into_iter().collect(),
            mode,
            budget: DEFAULT_STEP_BUDGET,
            steps: 0,
        }
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn mode(&self) -> NormalizationMode {
        self.mode
    }

    pub fn ports(&self) -> &[Port] {
        &self.ports
    }

    /// Steps spent so far.
    pub fn steps(&self) -> u64 {
        self.steps
    }

    fn spend(&mut self, n: u64) -> Result<()> {
        self.steps = self.steps.saturating_add(n);
        if self.steps > self.budget {
            return Err(Error::ResourceLimit(format!(
                "normalization exceeded its budget of {} steps",
                self.budget
            )));
        }
        Ok(())
    }

    fn check_ports(&self, ports: BTreeSet<Port>) -> Result<()> {
        match ports.into_iter().find(|p| self.ports.binary_search(p).is_err()) {
            Some(p) => Err(Error::UnknownPort(p.to_string())),
            None => Ok(()),
        }
    }

    pub fn pil(&mut self, f: &PilFormula) -> Result<FpilNF> {
        self.check_ports(f.ports())?;
        self.from_nnf(&nnf(f, false))
    }

    pub(crate) fn not(&mut self, nf: &FpilNF) -> Result<FpilNF> {
        self.from_nnf(&nf_to_nnf(nf, true))
    }

    pub(crate) fn and_all(&mut self, nfs: &[&FpilNF]) -> Result<FpilNF> {
        self.from_nnf(&Nnf::And(nfs.iter().map(|n| nf_to_nnf(n, false)).collect()))
    }

    pub(crate) fn or_all(&mut self, nfs: &[FpilNF]) -> Result<FpilNF> {
        self.from_nnf(&Nnf::Or(nfs.iter().map(|n| nf_to_nnf(n, false)).collect()))
    }

    fn from_nnf(&mut self, n: &Nnf) -> Result<FpilNF> {
        let terms = self.dnf(n)?;
        if terms.is_empty() {
            return Ok(FpilNF::False);
        }
        if terms.iter().any(|t| t.is_empty()) {
            return Ok(FpilNF::True);
        }
        let monomials: BTreeSet<Monomial> = terms
            .into_iter()
            .map(|literals| Monomial { literals })
            .collect();
        match self.mode {
            NormalizationMode::DeMorgan => Ok(FpilNF::Monomials(monomials)),
            NormalizationMode::Kleene => {
                let mut expanded = Vec::new();
                for m in monomials {
                    if m.is_contradictory() {
                        let more = kleene_expand(&m, &self.ports)?;
                        self.spend(more.len() as u64)?;
                        expanded.extend(more.into_iter().map(|m| m.literals));
                    } else {
                        expanded.push(m.literals);
                    }
                }
                let reduced = self.reduce(expanded)?;
                Ok(FpilNF::Monomials(
                    reduced.into_iter().map(|literals| Monomial { literals }).collect(),
                ))
            }
            NormalizationMode::Boolean => {
                let ports = self.ports.clone();
                self.boolean(&monomials, &ports)
            }
        }
    }

    // terms of a disjunctive form, deduplicated and absorption reduced;
    // the empty term stands for `true`
    fn dnf(&mut self, n: &Nnf) -> Result<Vec<Term>> {
        match n {
            Nnf::True => Ok(vec![Term::new()]),
            Nnf::False => Ok(Vec::new()),
            Nnf::Lit(l) => Ok(vec![Term::from([l.clone()])]),
            Nnf::Or(parts) => {
                let mut all = Vec::new();
                for part in parts {
                    all.extend(self.dnf(part)?);
                }
                self.reduce(all)
            }
            Nnf::And(parts) => {
                let mut acc = vec![Term::new()];
                for part in parts {
                    let rhs = self.dnf(part)?;
                    self.spend((acc.len() * rhs.len()) as u64)?;
                    let mut product = Vec::with_capacity(acc.len() * rhs.len());
                    for a in &acc {
                        for b in &rhs {
                            product.push(a.union(b).cloned().collect());
                        }
                    }
                    acc = self.reduce(product)?;
                    if acc.is_empty() {
                        break;
                    }
                }
                Ok(acc)
            }
        }
    }

    fn reduce(&mut self, terms: Vec<Term>) -> Result<Vec<Term>> {
        let unique: Vec<Term> = terms.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        self.spend((unique.len() * unique.len()) as u64)?;
        let kept = unique
            .iter()
            .filter(|t| !unique.iter().any(|s| s.len() < t.len() && s.is_subset(t)))
            .cloned()
            .collect();
        Ok(kept)
    }

    fn boolean(&mut self, monomials: &BTreeSet<Monomial>, ports: &[Port]) -> Result<FpilNF> {
        let mut minterms = BTreeSet::new();
        for m in monomials.iter().filter(|m| !m.is_contradictory()) {
            let mentioned = m.ports();
            let missing: Vec<&Port> = ports.iter().filter(|p| !mentioned.contains(p)).collect();
            let count = 1u64.checked_shl(missing.len() as u32).unwrap_or(u64::MAX);
            self.spend(count)?;
            for bits in 0..count {
                let mut literals = m.literals.clone();
                for (i, p) in missing.iter().enumerate() {
                    let negated = bits >> i & 1 == 1;
                    literals.insert(Literal {
                        port: (*p).clone(),
                        negated,
                    });
                }
                minterms.insert(Monomial { literals });
            }
        }
        let all_ports: BTreeSet<&Port> = ports
            .iter()
            .chain(monomials.iter().flat_map(|m| m.literals.iter().map(|l| &l.port)))
            .collect();
        if minterms.is_empty() {
            Ok(FpilNF::False)
        } else if u32::try_from(all_ports.len())
            .ok()
            .and_then(|n| 1usize.checked_shl(n))
            .is_some_and(|total| minterms.len() == total)
        {
            Ok(FpilNF::True)
        } else {
            Ok(FpilNF::Monomials(minterms))
        }
    }
}

/// Normal form of an interaction formula over `ports`.
pub fn pil_normal_form(f: &PilFormula, ports: &[Port], mode: NormalizationMode) -> Result<FpilNF> {
    Normalizer::new(ports, mode).pil(f)
}

/// Multiplies a contradictory monomial by `p | !p` for each port of `ports`
/// it does not mention.
pub fn kleene_expand(m: &Monomial, ports: &[Port]) -> Result<BTreeSet<Monomial>> {
    if !m.is_contradictory() {
        return Err(Error::Contract(format!(
            "kleene_expand needs a contradictory monomial, got `{m}`"
        )));
    }
    let mentioned = m.ports();
    let missing: BTreeSet<&Port> = ports.iter().filter(|p| !mentioned.contains(p)).collect();
    let mut out = BTreeSet::from([m.clone()]);
    for p in missing {
        out = out
            .into_iter()
            .flat_map(|m| {
                [false, true].map(|negated| {
                    let mut literals = m.literals.clone();
                    literals.insert(Literal {
                        port: p.clone(),
                        negated,
                    });
                    Monomial { literals }
                })
            })
            .collect();
    }
    Ok(out)
}

/// Drops contradictory monomials and expands the rest into full minterms
/// over `ports`.
pub fn boolean_canonicalize(ms: &BTreeSet<Monomial>, ports: &[Port]) -> Result<FpilNF> {
    let mut normalizer = Normalizer::new(ports, NormalizationMode::Boolean);
    let ports = normalizer.ports.clone();
    normalizer.boolean(ms, &ports)
}
