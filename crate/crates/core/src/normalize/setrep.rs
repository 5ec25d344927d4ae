use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde_json::Value;

use super::{FpilNF, PclNF};
use crate::error::{Error, Result};
use crate::syntax::Port;

/// Innermost element of a [`SetRep`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Token {
    True,
    False,
    Pos(Port),
    Neg(Port),
}

impl Token {
    fn key(&self) -> (u8, Option<&Port>, bool) {
        match self {
            Token::True => (0, None, false),
            Token::False => (1, None, false),
            Token::Pos(p) => (2, Some(p), false),
            Token::Neg(p) => (2, Some(p), true),
        }
    }
}

impl Ord for Token {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for Token {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::True => f.write_str("true"),
            Token::False => f.write_str("false"),
            Token::Pos(p) => write!(f, "{p}"),
            Token::Neg(p) => write!(f, "!{p}"),
        }
    }
}

impl FromStr for Token {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "true" => Ok(Token::True),
            "false" => Ok(Token::False),
            _ => match s.strip_prefix('!') {
                Some(rest) => Ok(Token::Neg(Port::new(rest)?)),
                None => Ok(Token::Pos(Port::new(s)?)),
            },
        }
    }
}

/// Four levels of nested sets: the sum holds groups, a group holds members,
/// a member holds literal sets (one per monomial).
///
/// Each level is a set; the vectors are expected to be duplicate free but not
/// necessarily sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SetRep(pub Vec<Vec<Vec<Vec<Token>>>>);

fn sorted<T: Ord>(mut items: Vec<T>) -> Vec<T> {
    items.sort();
    items.dedup();
    items
}

impl SetRep {
    /// The same sets with every level sorted and deduplicated.
    pub fn canonical(&self) -> SetRep {
        SetRep(sorted(
            self.0
                .iter()
                .map(|group| {
                    sorted(
                        group
                            .iter()
                            .map(|member| {
                                sorted(member.iter().map(|lits| sorted(lits.clone())).collect())
                            })
                            .collect(),
                    )
                })
                .collect(),
        ))
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.0
                .iter()
                .map(|group| {
                    Value::Array(
                        group
                            .iter()
                            .map(|member| {
                                Value::Array(
                                    member
                                        .iter()
                                        .map(|lits| {
                                            Value::Array(
                                                lits.iter()
                                                    .map(|t| Value::String(t.to_string()))
                                                    .collect(),
                                            )
                                        })
                                        .collect(),
                                )
                            })
                            .collect(),
                    )
                })
                .collect(),
        )
    }

    pub fn from_json(value: &Value) -> Result<SetRep> {
        fn array(v: &Value) -> Result<&Vec<Value>> {
            v.as_array()
                .ok_or_else(|| Error::Json(format!("expected an array, found {v}")))
        }
        let mut sum = Vec::new();
        for group in array(value)? {
            let mut members = Vec::new();
            for member in array(group)? {
                let mut monomials = Vec::new();
                for lits in array(member)? {
                    let tokens = array(lits)?
                        .iter()
                        .map(|t| match t.as_str() {
                            Some(s) => s.parse(),
                            None => Err(Error::Json(format!("expected a literal string, found {t}"))),
                        })
                        .collect::<Result<Vec<Token>>>()?;
                    monomials.push(tokens);
                }
                members.push(monomials);
            }
            sum.push(members);
        }
        Ok(SetRep(sum))
    }
}

fn braces<T>(f: &mut fmt::Formatter<'_>, items: &[T], each: impl Fn(&mut fmt::Formatter<'_>, &T) -> fmt::Result) -> fmt::Result {
    f.write_str("{")?;
    for (i, item) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        each(f, item)?;
    }
    f.write_str("}")
}

impl fmt::Display for SetRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        braces(f, &self.0, |f, group| {
            braces(f, group, |f, member| {
                braces(f, member, |f, lits| braces(f, lits, |f, t| write!(f, "{t}")))
            })
        })
    }
}

fn member_sets(nf: &FpilNF) -> Vec<Vec<Token>> {
    match nf {
        FpilNF::True => vec![vec![Token::True]],
        FpilNF::False => vec![vec![Token::False]],
        FpilNF::Monomials(ms) => ms
            .iter()
            .map(|m| {
                m.literals()
                    .iter()
                    .map(|l| {
                        if l.negated {
                            Token::Neg(l.port.clone())
                        } else {
                            Token::Pos(l.port.clone())
                        }
                    })
                    .collect()
            })
            .collect(),
    }
}

/// Nested-set encoding of a normal form, in canonical order.
pub fn to_set_rep(nf: &PclNF) -> SetRep {
    match nf {
        PclNF::True => SetRep(vec![vec![vec![vec![Token::True]]]]),
        PclNF::False => SetRep(vec![vec![vec![vec![Token::False]]]]),
        PclNF::Sum(groups) => SetRep(
            groups
                .iter()
                .map(|g| g.members().iter().map(member_sets).collect())
                .collect(),
        )
        .canonical(),
    }
}
