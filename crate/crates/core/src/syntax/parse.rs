//! Recursive-descent parser.
//!
//! Binding strength, tightest first: `!`, `neg`, `cl` (prefix), then `&`,
//! `|`, `*`, `#`, `+`. All infix operators associate to the left. `!`, `&`
//! and `|` only combine interaction formulas.

use super::{PclFormula, PilFormula, Port};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    True,
    False,
    Bang,
    Amp,
    Bar,
    Neg,
    Cl,
    Star,
    Hash,
    Plus,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(name) => format!("identifier `{name}`"),
            Tok::True => "`true`".into(),
            Tok::False => "`false`".into(),
            Tok::Bang => "`!`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Bar => "`|`".into(),
            Tok::Neg => "`neg`".into(),
            Tok::Cl => "`cl`".into(),
            Tok::Star => "`*`".into(),
            Tok::Hash => "`#`".into(),
            Tok::Plus => "`+`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn syntax(position: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        position,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            b'!' => Some(Tok::Bang),
            b'&' => Some(Tok::Amp),
            b'|' => Some(Tok::Bar),
            b'*' => Some(Tok::Star),
            b'#' => Some(Tok::Hash),
            b'+' => Some(Tok::Plus),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            out.push((tok, i));
            i += 1;
            continue;
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            let word = &text[start..i];
            let tok = match word {
                "true" => Tok::True,
                "false" => Tok::False,
                "neg" => Tok::Neg,
                "cl" => Tok::Cl,
                _ => Tok::Ident(word.to_string()),
            };
            out.push((tok, start));
            continue;
        }
        let ch = text[i..].chars().next().unwrap_or('?');
        return Err(syntax(i, format!("unexpected character {ch:?}")));
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

enum Expr {
    Pil(PilFormula),
    Pcl(PclFormula),
}

impl Expr {
    fn into_pcl(self) -> PclFormula {
        match self {
            Expr::Pil(f) => PclFormula::Pil(f),
            Expr::Pcl(z) => z,
        }
    }
}

struct Parser {
    tokens: Vec<(Tok, usize)>,
    pos: usize,
    allow_pcl: bool,
}

// infix binding levels, loosest first
const LEVELS: [Tok; 5] = [Tok::Plus, Tok::Hash, Tok::Star, Tok::Bar, Tok::Amp];

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].0
    }

    fn offset(&self) -> usize {
        self.tokens[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.tokens[self.pos].clone();
        if t.0 != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn check_pcl_allowed(&self, tok: &Tok, at: usize) -> Result<()> {
        if self.allow_pcl {
            Ok(())
        } else {
            Err(syntax(
                at,
                format!("configuration operator {} in an interaction formula", tok.describe()),
            ))
        }
    }

    fn expr(&mut self, level: usize) -> Result<Expr> {
        if level == LEVELS.len() {
            return self.unary();
        }
        let mut lhs = self.expr(level + 1)?;
        while *self.peek() == LEVELS[level] {
            let (op, at) = self.bump();
            let rhs = self.expr(level + 1)?;
            lhs = self.combine(op, at, lhs, rhs)?;
        }
        Ok(lhs)
    }

    fn combine(&self, op: Tok, at: usize, lhs: Expr, rhs: Expr) -> Result<Expr> {
        match op {
            Tok::Amp | Tok::Bar => match (lhs, rhs) {
                (Expr::Pil(a), Expr::Pil(b)) => Ok(Expr::Pil(if op == Tok::Amp {
                    a.and(b)
                } else {
                    a.or(b)
                })),
                _ => Err(syntax(
                    at,
                    format!(
                        "{} combines interaction formulas only; use `*` or `+` between configuration formulas",
                        op.describe()
                    ),
                )),
            },
            Tok::Star | Tok::Hash | Tok::Plus => {
                self.check_pcl_allowed(&op, at)?;
                let (a, b) = (lhs.into_pcl(), rhs.into_pcl());
                Ok(Expr::Pcl(match op {
                    Tok::Star => a.times(b),
                    Tok::Hash => a.coalesce(b),
                    _ => a.plus(b),
                }))
            }
            _ => unreachable!("not an infix operator"),
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        let at = self.offset();
        match self.peek().clone() {
            Tok::Bang => {
                self.bump();
                match self.unary()? {
                    Expr::Pil(f) => Ok(Expr::Pil(f.not())),
                    Expr::Pcl(_) => Err(syntax(
                        at,
                        "`!` negates interaction formulas only; use `neg` for configuration formulas",
                    )),
                }
            }
            tok @ (Tok::Neg | Tok::Cl) => {
                self.check_pcl_allowed(&tok, at)?;
                self.bump();
                let operand = self.unary()?.into_pcl();
                Ok(Expr::Pcl(if tok == Tok::Neg {
                    operand.neg()
                } else {
                    operand.closure()
                }))
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Expr> {
        let (tok, at) = self.bump();
        match tok {
            Tok::True => Ok(Expr::Pil(PilFormula::True)),
            Tok::False => Ok(Expr::Pil(PilFormula::falsum())),
            Tok::Ident(name) => {
                let port = Port::new(name).map_err(|e| syntax(at, e.to_string()))?;
                Ok(Expr::Pil(PilFormula::Atom(port)))
            }
            Tok::LParen => {
                let inner = self.expr(0)?;
                let (close, close_at) = self.bump();
                if close != Tok::RParen {
                    return Err(syntax(
                        close_at,
                        format!("expected `)` to close `(` at {at}, found {}", close.describe()),
                    ));
                }
                Ok(inner)
            }
            other => Err(syntax(
                at,
                format!("expected a formula, found {}", other.describe()),
            )),
        }
    }

    fn finish(&mut self) -> Result<()> {
        let (tok, at) = self.bump();
        if tok == Tok::End {
            Ok(())
        } else {
            Err(syntax(at, format!("unexpected {}", tok.describe())))
        }
    }
}

fn run(text: &str, allow_pcl: bool) -> Result<Expr> {
    let mut parser = Parser {
        tokens: tokenize(text)?,
        pos: 0,
        allow_pcl,
    };
    let expr = parser.expr(0)?;
    parser.finish()?;
    Ok(expr)
}

/// Parses an interaction formula (`true`, `false`, ports, `!`, `&`, `|`).
pub fn parse_pil(text: &str) -> Result<PilFormula> {
    match run(text, false)? {
        Expr::Pil(f) => Ok(f),
        Expr::Pcl(_) => unreachable!("configuration operators are rejected in interaction mode"),
    }
}

/// Parses a configuration formula; interaction subformulas are lifted.
pub fn parse_pcl(text: &str) -> Result<PclFormula> {
    Ok(run(text, true)?.into_pcl())
}
