//! Printer with minimal parentheses. Desugared conjunctions and `false` are
//! printed back in their short form; the output always reparses to the same
//! tree.

use super::{PclFormula, PilFormula};

const PLUS: u8 = 1;
const HASH: u8 = 2;
const STAR: u8 = 3;
const BAR: u8 = 4;
const AMP: u8 = 5;
const PREFIX: u8 = 6;
const ATOM: u8 = 7;

struct Printed {
    text: String,
    level: u8,
}

fn wrap(p: Printed, parens: bool) -> String {
    if parens {
        format!("({})", p.text)
    } else {
        p.text
    }
}

fn infix(lhs: Printed, op: &str, rhs: Printed, level: u8) -> Printed {
    let left_parens = lhs.level < level;
    let right_parens = rhs.level <= level;
    Printed {
        text: format!("{} {op} {}", wrap(lhs, left_parens), wrap(rhs, right_parens)),
        level,
    }
}

fn prefix(op: &str, operand: Printed) -> Printed {
    let parens = operand.level < PREFIX;
    Printed {
        text: format!("{op}{}", wrap(operand, parens)),
        level: PREFIX,
    }
}

fn pil(f: &PilFormula) -> Printed {
    match f {
        PilFormula::True => Printed {
            text: "true".into(),
            level: ATOM,
        },
        PilFormula::Atom(p) => Printed {
            text: p.to_string(),
            level: ATOM,
        },
        PilFormula::Not(inner) => match inner.as_ref() {
            PilFormula::True => Printed {
                text: "false".into(),
                level: ATOM,
            },
            PilFormula::Or(a, b) => match (a.as_ref(), b.as_ref()) {
                (PilFormula::Not(a), PilFormula::Not(b)) => infix(pil(a), "&", pil(b), AMP),
                _ => prefix("!", pil(inner)),
            },
            _ => prefix("!", pil(inner)),
        },
        PilFormula::Or(a, b) => infix(pil(a), "|", pil(b), BAR),
    }
}

fn pcl(z: &PclFormula) -> Printed {
    match z {
        PclFormula::Pil(f) => pil(f),
        PclFormula::Neg(inner) => match inner.as_ref() {
            PclFormula::Plus(a, b) => match (a.as_ref(), b.as_ref()) {
                (PclFormula::Neg(a), PclFormula::Neg(b)) => infix(pcl(a), "*", pcl(b), STAR),
                _ => prefix("neg ", pcl(inner)),
            },
            _ => prefix("neg ", pcl(inner)),
        },
        PclFormula::Coalesce(a, b) => infix(pcl(a), "#", pcl(b), HASH),
        PclFormula::Plus(a, b) => infix(pcl(a), "+", pcl(b), PLUS),
    }
}

pub fn print_pil(f: &PilFormula) -> String {
    pil(f).text
}

pub fn print_pcl(z: &PclFormula) -> String {
    pcl(z).text
}
