//! Abstract syntax for interaction formulas (fPIL) and configuration formulas
//! (fPCL), with an ASCII concrete syntax.
//!
//! Derived connectives are desugared when a formula is built:
//!
//! | text      | tree                                   |
//! |-----------|----------------------------------------|
//! | `false`   | `Not(True)`                            |
//! | `a & b`   | `Not(Or(Not a, Not b))`                |
//! | `a * b`   | `Neg(Plus(Neg a, Neg b))`              |
//! | `cl a`    | `Coalesce(a, Pil(True))`               |

mod parse;
mod print;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub use parse::{parse_pcl, parse_pil};
pub use print::{print_pcl, print_pil};

const KEYWORDS: [&str; 4] = ["true", "false", "neg", "cl"];

/// A port name: `[A-Za-z_][A-Za-z0-9_]*`, not a keyword.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Port(String);

impl Port {
    pub fn new(name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        let invalid = |reason: &str| Error::InvalidPort {
            name: name.clone(),
            reason: reason.to_string(),
        };
        let mut chars = name.chars();
        match chars.next() {
            None => return Err(invalid("empty name")),
            Some(c) if !(c.is_ascii_alphabetic() || c == '_') => {
                return Err(invalid("must start with a letter or underscore"))
            }
            _ => {}
        }
        if !chars.all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(invalid("only letters, digits and underscores are allowed"));
        }
        if KEYWORDS.contains(&name.as_str()) {
            return Err(invalid("reserved keyword"));
        }
        Ok(Port(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Port {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FromStr for Port {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Port::new(s)
    }
}

/// Parses a comma separated port list such as `"p,q,r"`.
pub fn parse_port_list(text: &str) -> Result<Vec<Port>> {
    let ports = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(Port::new)
        .collect::<Result<Vec<_>>>()?;
    if ports.is_empty() {
        return Err(Error::Domain("port list is empty".to_string()));
    }
    Ok(ports)
}

/// Interaction formula.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PilFormula {
    True,
    Atom(Port),
    Not(Box<PilFormula>),
    Or(Box<PilFormula>, Box<PilFormula>),
}

impl PilFormula {
    pub fn atom(name: &str) -> Result<Self> {
        Ok(PilFormula::Atom(Port::new(name)?))
    }

    /// `false`, i.e. `!true`.
    pub fn falsum() -> Self {
        PilFormula::True.not()
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Self {
        PilFormula::Not(Box::new(self))
    }

    pub fn or(self, other: Self) -> Self {
        PilFormula::Or(Box::new(self), Box::new(other))
    }

    /// Fuzzy conjunction `!(!a | !b)`.
    pub fn and(self, other: Self) -> Self {
        self.not().or(other.not()).not()
    }

    pub fn ports(&self) -> BTreeSet<Port> {
        let mut out = BTreeSet::new();
        self.collect_ports(&mut out);
        out
    }

    fn collect_ports(&self, out: &mut BTreeSet<Port>) {
        match self {
            PilFormula::True => {}
            PilFormula::Atom(p) => {
                out.insert(p.clone());
            }
            PilFormula::Not(f) => f.collect_ports(out),
            PilFormula::Or(a, b) => {
                a.collect_ports(out);
                b.collect_ports(out);
            }
        }
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        match self {
            PilFormula::True | PilFormula::Atom(_) => 1,
            PilFormula::Not(f) => 1 + f.size(),
            PilFormula::Or(a, b) => 1 + a.size() + b.size(),
        }
    }
}

impl From<Port> for PilFormula {
    fn from(p: Port) -> Self {
        PilFormula::Atom(p)
    }
}

/// Configuration formula.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PclFormula {
    Pil(PilFormula),
    Neg(Box<PclFormula>),
    Plus(Box<PclFormula>, Box<PclFormula>),
    Coalesce(Box<PclFormula>, Box<PclFormula>),
}

impl PclFormula {
    pub fn pil(f: PilFormula) -> Self {
        PclFormula::Pil(f)
    }

    pub fn tt() -> Self {
        PclFormula::Pil(PilFormula::True)
    }

    pub fn ff() -> Self {
        PclFormula::Pil(PilFormula::falsum())
    }

    pub fn neg(self) -> Self {
        PclFormula::Neg(Box::new(self))
    }

    pub fn plus(self, other: Self) -> Self {
        PclFormula::Plus(Box::new(self), Box::new(other))
    }

    pub fn coalesce(self, other: Self) -> Self {
        PclFormula::Coalesce(Box::new(self), Box::new(other))
    }

    /// Fuzzy conjunction `neg(neg a + neg b)`.
    pub fn times(self, other: Self) -> Self {
        self.neg().plus(other.neg()).neg()
    }

    /// Closure `a # true`.
    pub fn closure(self) -> Self {
        self.coalesce(PclFormula::tt())
    }

    pub fn ports(&self) -> BTreeSet<Port> {
        let mut out = BTreeSet::new();
        self.collect_ports(&mut out);
        out
    }

    fn collect_ports(&self, out: &mut BTreeSet<Port>) {
        match self {
            PclFormula::Pil(f) => f.collect_ports(out),
            PclFormula::Neg(z) => z.collect_ports(out),
            PclFormula::Plus(a, b) | PclFormula::Coalesce(a, b) => {
                a.collect_ports(out);
                b.collect_ports(out);
            }
        }
    }

    pub fn size(&self) -> usize {
        match self {
            PclFormula::Pil(f) => f.size(),
            PclFormula::Neg(z) => 1 + z.size(),
            PclFormula::Plus(a, b) | PclFormula::Coalesce(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Checks that every port of the formula is declared.
    pub fn check_ports<'a>(&self, declared: impl IntoIterator<Item = &'a Port>) -> Result<()> {
        let declared: BTreeSet<&Port> = declared.into_iter().collect();
        match self.ports().into_iter().find(|p| !declared.contains(p)) {
            Some(p) => Err(Error::UnknownPort(p.to_string())),
            None => Ok(()),
        }
    }
}

impl From<PilFormula> for PclFormula {
    fn from(f: PilFormula) -> Self {
        PclFormula::Pil(f)
    }
}

impl fmt::Display for PilFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_pil(self))
    }
}

impl fmt::Display for PclFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_pcl(self))
    }
}

impl FromStr for PilFormula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_pil(s)
    }
}

impl FromStr for PclFormula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_pcl(s)
    }
}

pub fn pil_and(a: PilFormula, b: PilFormula) -> PilFormula {
    a.and(b)
}

pub fn pcl_times(a: PclFormula, b: PclFormula) -> PclFormula {
    a.times(b)
}

pub fn pcl_closure(a: PclFormula) -> PclFormula {
    a.closure()
}

fn fold_nonempty<T>(items: Vec<T>, what: &str, op: impl Fn(T, T) -> T) -> Result<T> {
    let mut it = items.into_iter();
    let first = it
        .next()
        .ok_or_else(|| Error::Domain(format!("{what} of an empty list")))?;
    Ok(it.fold(first, op))
}

/// Left-folded `⋁`.
pub fn big_or(items: Vec<PilFormula>) -> Result<PilFormula> {
    fold_nonempty(items, "big_or", PilFormula::or)
}

/// Left-folded `⋀`.
pub fn big_and(items: Vec<PilFormula>) -> Result<PilFormula> {
    fold_nonempty(items, "big_and", PilFormula::and)
}

/// Left-folded `⊕`.
pub fn big_plus(items: Vec<PclFormula>) -> Result<PclFormula> {
    fold_nonempty(items, "big_plus", PclFormula::plus)
}

/// Left-folded `⊎`.
pub fn big_coalesce(items: Vec<PclFormula>) -> Result<PclFormula> {
    fold_nonempty(items, "big_coalesce", PclFormula::coalesce)
}

/// Left-folded `⊗`.
pub fn big_times(items: Vec<PclFormula>) -> Result<PclFormula> {
    fold_nonempty(items, "big_times", PclFormula::times)
}
