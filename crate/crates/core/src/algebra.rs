//! De Morgan algebras: the two element Boolean algebra, the three element
//! Kleene algebra, the four element (diamond) algebra and the fuzzy algebra
//! on the rational points of `[0, 1]`.
//!
//! Every element carries the identity of its algebra, so combining elements
//! of different algebras is reported as an error instead of silently
//! producing nonsense. Fuzzy values are exact rationals.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

use crate::error::{Error, Result};

/// Which of the supported De Morgan algebras a value lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlgebraDescriptor {
    Bool2,
    Kleene3,
    Four,
    FuzzyRational,
}

impl AlgebraDescriptor {
    pub const ALL: [AlgebraDescriptor; 4] = [
        AlgebraDescriptor::Bool2,
        AlgebraDescriptor::Kleene3,
        AlgebraDescriptor::Four,
        AlgebraDescriptor::FuzzyRational,
    ];

    pub const FINITE: [AlgebraDescriptor; 3] = [
        AlgebraDescriptor::Bool2,
        AlgebraDescriptor::Kleene3,
        AlgebraDescriptor::Four,
    ];

    /// Name used on the command line and in JSON documents.
    pub fn name(self) -> &'static str {
        match self {
            AlgebraDescriptor::Bool2 => "bool2",
            AlgebraDescriptor::Kleene3 => "kleene3",
            AlgebraDescriptor::Four => "four",
            AlgebraDescriptor::FuzzyRational => "fuzzy",
        }
    }

    pub fn is_finite(self) -> bool {
        self != AlgebraDescriptor::FuzzyRational
    }

    /// Number of elements, `None` for the fuzzy algebra.
    pub fn cardinality(self) -> Option<usize> {
        match self {
            AlgebraDescriptor::Bool2 => Some(2),
            AlgebraDescriptor::Kleene3 => Some(3),
            AlgebraDescriptor::Four => Some(4),
            AlgebraDescriptor::FuzzyRational => None,
        }
    }

    pub fn zero(self) -> AlgebraElement {
        match self {
            AlgebraDescriptor::FuzzyRational => AlgebraElement::fuzzy_unchecked(Ratio::from_integer(0)),
            _ => AlgebraElement::symbol_unchecked(self, Symbol::Zero),
        }
    }

    pub fn one(self) -> AlgebraElement {
        match self {
            AlgebraDescriptor::FuzzyRational => AlgebraElement::fuzzy_unchecked(Ratio::from_integer(1)),
            _ => AlgebraElement::symbol_unchecked(self, Symbol::One),
        }
    }

    /// Parses an element of this algebra from its textual form.
    ///
    /// Finite algebras accept `0`, `1`, `u`, `w` (where present). The fuzzy
    /// algebra accepts decimals such as `0.3` and fractions such as `3/10`.
    pub fn parse_element(self, text: &str) -> Result<AlgebraElement> {
        let trimmed = text.trim();
        let invalid = |reason: &str| Error::InvalidElement {
            algebra: self,
            text: text.to_string(),
            reason: reason.to_string(),
        };
        match self {
            AlgebraDescriptor::FuzzyRational => {
                let value = parse_rational(trimmed).map_err(|r| invalid(&r))?;
                AlgebraElement::fuzzy(value)
            }
            _ => {
                let symbol = match trimmed {
                    "0" => Symbol::Zero,
                    "1" => Symbol::One,
                    "u" => Symbol::U,
                    "w" => Symbol::W,
                    _ => return Err(invalid("expected one of 0, 1, u, w")),
                };
                AlgebraElement::symbol(self, symbol)
            }
        }
    }
}

impl fmt::Display for AlgebraDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AlgebraDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "bool2" | "2" => Ok(AlgebraDescriptor::Bool2),
            "kleene3" | "3" => Ok(AlgebraDescriptor::Kleene3),
            "four" | "4" => Ok(AlgebraDescriptor::Four),
            "fuzzy" | "f" => Ok(AlgebraDescriptor::FuzzyRational),
            _ => Err(Error::UnknownAlgebra(s.to_string())),
        }
    }
}

/// Symbols of the finite algebras. The declaration order `0, u, w, 1` is the
/// canonical printing order; it is not the lattice order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Zero,
    U,
    W,
    One,
}

impl Symbol {
    fn as_str(self) -> &'static str {
        match self {
            Symbol::Zero => "0",
            Symbol::U => "u",
            Symbol::W => "w",
            Symbol::One => "1",
        }
    }

    // position in the chain 0 < u < 1 (Bool2 and Kleene3 only)
    fn chain_rank(self) -> u8 {
        match self {
            Symbol::Zero => 0,
            Symbol::U | Symbol::W => 1,
            Symbol::One => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Value {
    Symbol(Symbol),
    Fuzzy(Ratio<u64>),
}

/// A value of one of the supported De Morgan algebras.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraElement {
    algebra: AlgebraDescriptor,
    value: Value,
}

impl AlgebraElement {
    pub fn symbol(algebra: AlgebraDescriptor, symbol: Symbol) -> Result<Self> {
        let allowed = match algebra {
            AlgebraDescriptor::Bool2 => matches!(symbol, Symbol::Zero | Symbol::One),
            AlgebraDescriptor::Kleene3 => symbol != Symbol::W,
            AlgebraDescriptor::Four => true,
            AlgebraDescriptor::FuzzyRational => false,
        };
        if !allowed {
            return Err(Error::InvalidElement {
                algebra,
                text: symbol.as_str().to_string(),
                reason: "symbol is not in the carrier".to_string(),
            });
        }
        Ok(Self::symbol_unchecked(algebra, symbol))
    }

    pub fn fuzzy(value: Ratio<u64>) -> Result<Self> {
        if value > Ratio::from_integer(1) {
            return Err(Error::InvalidElement {
                algebra: AlgebraDescriptor::FuzzyRational,
                text: value.to_string(),
                reason: "fuzzy values must lie in [0, 1]".to_string(),
            });
        }
        Ok(Self::fuzzy_unchecked(value))
    }

    /// Shorthand for the fuzzy value `numer / denom`.
    pub fn fraction(numer: u64, denom: u64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::InvalidElement {
                algebra: AlgebraDescriptor::FuzzyRational,
                text: format!("{numer}/{denom}"),
                reason: "zero denominator".to_string(),
            });
        }
        Self::fuzzy(Ratio::new(numer, denom))
    }

    fn symbol_unchecked(algebra: AlgebraDescriptor, symbol: Symbol) -> Self {
        AlgebraElement {
            algebra,
            value: Value::Symbol(symbol),
        }
    }

    fn fuzzy_unchecked(value: Ratio<u64>) -> Self {
        AlgebraElement {
            algebra: AlgebraDescriptor::FuzzyRational,
            value: Value::Fuzzy(value),
        }
    }

    pub fn algebra(self) -> AlgebraDescriptor {
        self.algebra
    }

    pub fn as_symbol(self) -> Option<Symbol> {
        match self.value {
            Value::Symbol(s) => Some(s),
            Value::Fuzzy(_) => None,
        }
    }

    pub fn as_ratio(self) -> Option<Ratio<u64>> {
        match self.value {
            Value::Fuzzy(r) => Some(r),
            Value::Symbol(_) => None,
        }
    }

    pub fn is_zero(self) -> bool {
        match self.value {
            Value::Symbol(s) => s == Symbol::Zero,
            Value::Fuzzy(r) => *r.numer() == 0,
        }
    }

    pub fn is_one(self) -> bool {
        match self.value {
            Value::Symbol(s) => s == Symbol::One,
            Value::Fuzzy(r) => r.numer() == r.denom(),
        }
    }

    fn same_algebra(self, other: Self) -> Result<()> {
        if self.algebra == other.algebra {
            Ok(())
        } else {
            Err(Error::MixedAlgebra {
                left: self.algebra,
                right: other.algebra,
            })
        }
    }

    /// Lattice join `a ∨ b`.
    pub fn join(self, other: Self) -> Result<Self> {
        self.same_algebra(other)?;
        Ok(self.join_same(other))
    }

    /// Lattice meet `a ∧ b`.
    pub fn meet(self, other: Self) -> Result<Self> {
        self.same_algebra(other)?;
        Ok(self.meet_same(other))
    }

    /// The involutive complement.
    pub fn complement(self) -> Self {
        match self.value {
            Value::Symbol(s) => {
                let c = match s {
                    Symbol::Zero => Symbol::One,
                    Symbol::One => Symbol::Zero,
                    other => other,
                };
                Self::symbol_unchecked(self.algebra, c)
            }
            Value::Fuzzy(r) => Self::fuzzy_unchecked(Ratio::from_integer(1) - r),
        }
    }

    /// Lattice order: `a ≤ b` iff `a ∨ b = b`.
    pub fn leq(self, other: Self) -> Result<bool> {
        Ok(self.join(other)? == other)
    }

    // Callers guarantee both operands come from the same algebra (validated
    // configurations); only checked in debug builds.
    pub(crate) fn join_same(self, other: Self) -> Self {
        debug_assert_eq!(self.algebra, other.algebra);
        match (self.value, other.value) {
            (Value::Fuzzy(a), Value::Fuzzy(b)) => Self::fuzzy_unchecked(a.max(b)),
            (Value::Symbol(a), Value::Symbol(b)) => {
                let s = if self.algebra == AlgebraDescriptor::Four {
                    four_join(a, b)
                } else if a.chain_rank() >= b.chain_rank() {
                    a
                } else {
                    b
                };
                Self::symbol_unchecked(self.algebra, s)
            }
            _ => unreachable!("mixed element representations"),
        }
    }

    pub(crate) fn meet_same(self, other: Self) -> Self {
        debug_assert_eq!(self.algebra, other.algebra);
        match (self.value, other.value) {
            (Value::Fuzzy(a), Value::Fuzzy(b)) => Self::fuzzy_unchecked(a.min(b)),
            (Value::Symbol(a), Value::Symbol(b)) => {
                let s = if self.algebra == AlgebraDescriptor::Four {
                    four_meet(a, b)
                } else if a.chain_rank() <= b.chain_rank() {
                    a
                } else {
                    b
                };
                Self::symbol_unchecked(self.algebra, s)
            }
            _ => unreachable!("mixed element representations"),
        }
    }
}

// 0 < u, w < 1 with u and w incomparable
fn four_join(a: Symbol, b: Symbol) -> Symbol {
    match (a, b) {
        _ if a == b => a,
        (Symbol::Zero, x) | (x, Symbol::Zero) => x,
        _ => Symbol::One,
    }
}

fn four_meet(a: Symbol, b: Symbol) -> Symbol {
    match (a, b) {
        _ if a == b => a,
        (Symbol::One, x) | (x, Symbol::One) => x,
        _ => Symbol::Zero,
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value {
            Value::Symbol(s) => f.write_str(s.as_str()),
            Value::Fuzzy(r) => f.write_str(&format_rational(r)),
        }
    }
}

/// Parses `"0.25"`, `"1"`, `".5"` or `"1/4"` into an exact rational.
pub fn parse_rational(text: &str) -> std::result::Result<Ratio<u64>, String> {
    if text.is_empty() {
        return Err("empty value".to_string());
    }
    if let Some((n, d)) = text.split_once('/') {
        let numer: u64 = n.trim().parse().map_err(|_| format!("bad numerator {n:?}"))?;
        let denom: u64 = d.trim().parse().map_err(|_| format!("bad denominator {d:?}"))?;
        if denom == 0 {
            return Err("zero denominator".to_string());
        }
        return Ok(Ratio::new(numer, denom));
    }
    let (int_part, frac_part) = text.split_once('.').unwrap_or((text, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err("no digits".to_string());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err("expected a decimal number or a fraction a/b".to_string());
    }
    let overflow = || "too many digits for an exact 64-bit rational".to_string();
    let mut numer: u64 = 0;
    for c in int_part.chars().chain(frac_part.chars()) {
        numer = numer
            .checked_mul(10)
            .and_then(|n| n.checked_add(u64::from(c as u8 - b'0')))
            .ok_or_else(overflow)?;
    }
    let denom = 10u64
        .checked_pow(u32::try_from(frac_part.len()).map_err(|_| overflow())?)
        .ok_or_else(overflow)?;
    Ok(Ratio::new(numer, denom))
}

/// Terminating decimals print as decimals, everything else as `a/b`.
pub fn format_rational(r: Ratio<u64>) -> String {
    let (numer, denom) = (*r.numer(), *r.denom());
    if denom == 1 {
        return numer.to_string();
    }
    let mut rest = denom;
    let (mut twos, mut fives) = (0u32, 0u32);
    while rest % 2 == 0 {
        rest /= 2;
        twos += 1;
    }
    while rest % 5 == 0 {
        rest /= 5;
        fives += 1;
    }
    let digits = twos.max(fives);
    if rest != 1 || digits > 30 {
        return format!("{numer}/{denom}");
    }
    let scale = 10u128.pow(digits) / u128::from(denom);
    let scaled = u128::from(numer) * scale;
    let pow = 10u128.pow(digits);
    let frac = format!("{:0width$}", scaled % pow, width = digits as usize);
    format!("{}.{}", scaled / pow, frac.trim_end_matches('0'))
}

/// The full carrier of a finite algebra in canonical order `0, u, w, 1`.
pub fn elements(d: AlgebraDescriptor) -> Result<Vec<AlgebraElement>> {
    let symbols: &[Symbol] = match d {
        AlgebraDescriptor::Bool2 => &[Symbol::Zero, Symbol::One],
        AlgebraDescriptor::Kleene3 => &[Symbol::Zero, Symbol::U, Symbol::One],
        AlgebraDescriptor::Four => &[Symbol::Zero, Symbol::U, Symbol::W, Symbol::One],
        AlgebraDescriptor::FuzzyRational => return Err(Error::InfiniteCarrier(d)),
    };
    Ok(symbols
        .iter()
        .map(|&s| AlgebraElement::symbol_unchecked(d, s))
        .collect())
}

/// The fuzzy values `0, 1/d, …, 1`. The grid is closed under `k ↦ 1 − k`.
pub fn sample_grid(denominator: u64) -> Result<Vec<AlgebraElement>> {
    if denominator == 0 {
        return Err(Error::Domain("grid denominator must be at least 1".to_string()));
    }
    Ok((0..=denominator)
        .map(|k| AlgebraElement::fuzzy_unchecked(Ratio::new(k, denominator)))
        .collect())
}

/// Carrier used for exhaustive checks: the full set for finite algebras, a
/// grid for the fuzzy algebra.
pub fn carrier(d: AlgebraDescriptor, grid: Option<u64>) -> Result<Vec<AlgebraElement>> {
    match (d, grid) {
        (AlgebraDescriptor::FuzzyRational, Some(denominator)) => sample_grid(denominator),
        (AlgebraDescriptor::FuzzyRational, None) => Err(Error::InfiniteCarrier(d)),
        _ => elements(d),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Classification {
    DeMorgan,
    Kleene,
    Boolean,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::DeMorgan => "De Morgan",
            Classification::Kleene => "Kleene",
            Classification::Boolean => "Boolean",
        })
    }
}

/// Grid used to spot-check the fuzzy algebra when no grid is supplied.
pub const DEFAULT_FUZZY_GRID: u64 = 4;

/// Decides the strongest class the algebra belongs to.
///
/// Finite algebras are checked exhaustively. The fuzzy algebra is a Kleene
/// algebra; this is spot-checked on [`DEFAULT_FUZZY_GRID`].
pub fn classify(d: AlgebraDescriptor) -> Classification {
    let grid = (!d.is_finite()).then_some(DEFAULT_FUZZY_GRID);
    let report = check_laws(d, grid).expect("grid supplied for the fuzzy algebra");
    if d == AlgebraDescriptor::FuzzyRational {
        debug_assert!(report.kleene_condition().holds);
        return Classification::Kleene;
    }
    report.classification()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Law {
    JoinCommutative,
    MeetCommutative,
    JoinAssociative,
    MeetAssociative,
    JoinIdempotent,
    MeetIdempotent,
    JoinAbsorbsMeet,
    MeetAbsorbsJoin,
    MeetDistributesOverJoin,
    JoinDistributesOverMeet,
    Bounded,
    Involution,
    DeMorganJoin,
    DeMorganMeet,
    /// `(a ∧ ā) ∧ (b ∨ b̄) = a ∧ ā`
    KleeneCondition,
    /// `a ∧ ā = 0` and `a ∨ ā = 1`
    BooleanComplement,
}

impl Law {
    /// The axioms of a De Morgan algebra.
    pub const AXIOMS: [Law; 14] = [
        Law::JoinCommutative,
        Law::MeetCommutative,
        Law::JoinAssociative,
        Law::MeetAssociative,
        Law::JoinIdempotent,
        Law::MeetIdempotent,
        Law::JoinAbsorbsMeet,
        Law::MeetAbsorbsJoin,
        Law::MeetDistributesOverJoin,
        Law::JoinDistributesOverMeet,
        Law::Bounded,
        Law::Involution,
        Law::DeMorganJoin,
        Law::DeMorganMeet,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Law::JoinCommutative => "join commutativity",
            Law::MeetCommutative => "meet commutativity",
            Law::JoinAssociative => "join associativity",
            Law::MeetAssociative => "meet associativity",
            Law::JoinIdempotent => "join idempotency",
            Law::MeetIdempotent => "meet idempotency",
            Law::JoinAbsorbsMeet => "absorption a ∨ (a ∧ b) = a",
            Law::MeetAbsorbsJoin => "absorption a ∧ (a ∨ b) = a",
            Law::MeetDistributesOverJoin => "distributivity a ∧ (b ∨ c)",
            Law::JoinDistributesOverMeet => "distributivity a ∨ (b ∧ c)",
            Law::Bounded => "boundedness",
            Law::Involution => "involution",
            Law::DeMorganJoin => "De Morgan law for join",
            Law::DeMorganMeet => "De Morgan law for meet",
            Law::KleeneCondition => "Kleene condition",
            Law::BooleanComplement => "Boolean complement",
        }
    }

    fn arity(self) -> usize {
        match self {
            Law::JoinIdempotent
            | Law::MeetIdempotent
            | Law::Bounded
            | Law::Involution
            | Law::BooleanComplement => 1,
            Law::JoinAssociative
            | Law::MeetAssociative
            | Law::MeetDistributesOverJoin
            | Law::JoinDistributesOverMeet => 3,
            _ => 2,
        }
    }

    fn holds_on(self, args: &[AlgebraElement]) -> bool {
        let j = |a: AlgebraElement, b: AlgebraElement| a.join_same(b);
        let m = |a: AlgebraElement, b: AlgebraElement| a.meet_same(b);
        let a = args[0];
        let b = args.get(1).copied().unwrap_or(a);
        let c = args.get(2).copied().unwrap_or(a);
        let (zero, one) = (a.algebra().zero(), a.algebra().one());
        match self {
            Law::JoinCommutative => j(a, b) == j(b, a),
            Law::MeetCommutative => m(a, b) == m(b, a),
            Law::JoinAssociative => j(j(a, b), c) == j(a, j(b, c)),
            Law::MeetAssociative => m(m(a, b), c) == m(a, m(b, c)),
            Law::JoinIdempotent => j(a, a) == a,
            Law::MeetIdempotent => m(a, a) == a,
            Law::JoinAbsorbsMeet => j(a, m(a, b)) == a,
            Law::MeetAbsorbsJoin => m(a, j(a, b)) == a,
            Law::MeetDistributesOverJoin => m(a, j(b, c)) == j(m(a, b), m(a, c)),
            Law::JoinDistributesOverMeet => j(a, m(b, c)) == m(j(a, b), j(a, c)),
            Law::Bounded => {
                j(a, zero) == a && m(a, one) == a && j(a, one) == one && m(a, zero) == zero
            }
            Law::Involution => a.complement().complement() == a,
            Law::DeMorganJoin => j(a, b).complement() == m(a.complement(), b.complement()),
            Law::DeMorganMeet => m(a, b).complement() == j(a.complement(), b.complement()),
            Law::KleeneCondition => {
                let lhs = m(a, a.complement());
                m(lhs, j(b, b.complement())) == lhs
            }
            Law::BooleanComplement => {
                m(a, a.complement()) == zero && j(a, a.complement()) == one
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawOutcome {
    pub law: Law,
    pub holds: bool,
    /// First failing tuple in canonical order.
    pub witness: Option<Vec<AlgebraElement>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawReport {
    pub algebra: AlgebraDescriptor,
    pub carrier_size: usize,
    /// Set when the carrier was a sample grid of the fuzzy algebra.
    pub grid: Option<u64>,
    pub outcomes: Vec<LawOutcome>,
}

impl LawReport {
    pub fn outcome(&self, law: Law) -> &LawOutcome {
        self.outcomes
            .iter()
            .find(|o| o.law == law)
            .expect("every law is checked")
    }

    pub fn is_de_morgan(&self) -> bool {
        Law::AXIOMS.iter().all(|&l| self.outcome(l).holds)
    }

    pub fn kleene_condition(&self) -> &LawOutcome {
        self.outcome(Law::KleeneCondition)
    }

    pub fn classification(&self) -> Classification {
        debug_assert!(self.is_de_morgan());
        if !self.kleene_condition().holds {
            Classification::DeMorgan
        } else if !self.outcome(Law::BooleanComplement).holds {
            Classification::Kleene
        } else {
            Classification::Boolean
        }
    }
}

/// Checks every De Morgan axiom plus the Kleene and Boolean conditions over
/// all tuples of carrier elements. The fuzzy algebra needs a sample grid.
pub fn check_laws(d: AlgebraDescriptor, grid: Option<u64>) -> Result<LawReport> {
    let carrier = carrier(d, grid)?;
    let laws = Law::AXIOMS
        .iter()
        .copied()
        .chain([Law::KleeneCondition, Law::BooleanComplement]);
    let outcomes = laws
        .map(|law| {
            let witness = tuples(&carrier, law.arity()).find(|args| !law.holds_on(args));
            LawOutcome {
                law,
                holds: witness.is_none(),
                witness,
            }
        })
        .collect();
    Ok(LawReport {
        algebra: d,
        carrier_size: carrier.len(),
        grid: if d.is_finite() { None } else { grid },
        outcomes,
    })
}

fn tuples(
    carrier: &[AlgebraElement],
    arity: usize,
) -> impl Iterator<Item = Vec<AlgebraElement>> + '_ {
    let n = carrier.len();
    let total = n.pow(arity as u32);
    (0..total).map(move |mut index| {
        let mut tuple = vec![carrier[0]; arity];
        for slot in tuple.iter_mut().rev() {
            *slot = carrier[index % n];
            index /= n;
        }
        tuple
    })
}
