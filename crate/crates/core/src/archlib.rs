//! Formulas for the Peer-to-Peer and Master/Slave architecture styles.

use std::fmt;

use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::semantics::{eval_closure, index_subsets, Configuration};
use crate::syntax::{big_and, big_coalesce, big_plus, PclFormula, PilFormula, Port};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArchStyle {
    P2P { n: usize },
    MasterSlave { masters: usize, slaves: usize },
}

impl fmt::Display for ArchStyle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArchStyle::P2P { n } => write!(f, "p2p(n={n})"),
            ArchStyle::MasterSlave { masters, slaves } => {
                write!(f, "master-slave(masters={masters}, slaves={slaves})")
            }
        }
    }
}

/// A generated architecture formula together with its pieces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArchTemplate {
    pub style: ArchStyle,
    pub formula: PclFormula,
    pub ports: Vec<Port>,
    /// Top-level `⊕` operands of `formula`.
    pub summands: Vec<PclFormula>,
    /// Per component (P2P) or per master (Master/Slave), the `⊕` operands of
    /// its sub-formula.
    pub parts: Vec<Vec<PclFormula>>,
}

fn port(prefix: &str, i: usize) -> Port {
    Port::new(format!("{prefix}{i}")).expect("generated port names are valid")
}

fn lit(p: &Port, positive: bool) -> PilFormula {
    let atom = PilFormula::Atom(p.clone());
    if positive {
        atom
    } else {
        atom.not()
    }
}

/// Peer-to-Peer with `n` components, each with a receive port `rj` and a
/// send port `sj`.
pub fn p2p_formula(n: usize) -> Result<ArchTemplate> {
    if n < 2 {
        return Err(Error::Domain(format!("p2p needs at least 2 components, got {n}")));
    }
    let r: Vec<Port> = (1..=n).map(|j| port("r", j)).collect();
    let s: Vec<Port> = (1..=n).map(|j| port("s", j)).collect();
    // component j receives from j2
    let phi = |j: usize, j2: usize| {
        let mut lits = vec![lit(&r[j], true), lit(&s[j2], true), lit(&s[j], false), lit(&r[j2], false)];
        for k in (0..n).filter(|&k| k != j && k != j2) {
            lits.push(lit(&r[k], false));
            lits.push(lit(&s[k], false));
        }
        PclFormula::Pil(big_and(lits).expect("nonempty"))
    };
    let mut parts = Vec::with_capacity(n);
    let mut components = Vec::with_capacity(n);
    for j in 0..n {
        let others: Vec<usize> = (0..n).filter(|&k| k != j).collect();
        let summands: Vec<PclFormula> = index_subsets(others.len(), None)
            .map(|idx| big_coalesce(idx.iter().map(|&i| phi(j, others[i])).collect()))
            .collect::<Result<_>>()?;
        components.push(big_plus(summands.clone())?);
        parts.push(summands);
    }
    let summands: Vec<PclFormula> = index_subsets(n, None)
        .map(|idx| big_coalesce(idx.iter().map(|&j| components[j].clone()).collect()))
        .collect::<Result<_>>()?;
    let mut ports = r;
    ports.extend(s);
    ports.sort();
    Ok(ArchTemplate {
        style: ArchStyle::P2P { n },
        formula: big_plus(summands.clone())?,
        ports,
        summands,
        parts,
    })
}

/// Master/Slave where every master picks exactly one slave.
pub fn master_slave_formula(masters: usize, slaves: usize) -> Result<ArchTemplate> {
    if masters == 0 || slaves == 0 {
        return Err(Error::Domain(format!(
            "master-slave needs at least one master and one slave, got {masters} and {slaves}"
        )));
    }
    let m: Vec<Port> = (1..=masters).map(|i| port("m", i)).collect();
    let s: Vec<Port> = (1..=slaves).map(|k| port("s", k)).collect();
    let all: Vec<&Port> = m.iter().chain(&s).collect();
    let phi = |k: usize, i: usize| {
        let mut lits = vec![lit(&s[k], true), lit(&m[i], true)];
        lits.extend(
            all.iter()
                .filter(|p| **p != &s[k] && **p != &m[i])
                .map(|p| lit(p, false)),
        );
        PclFormula::Pil(big_and(lits).expect("nonempty"))
    };
    let parts: Vec<Vec<PclFormula>> = (0..masters)
        .map(|i| (0..slaves).map(|k| phi(k, i)).collect())
        .collect();
    let per_master = parts
        .iter()
        .map(|choices| big_plus(choices.clone()))
        .collect::<Result<Vec<_>>>()?;
    let formula = big_coalesce(per_master)?;
    let mut ports: Vec<Port> = m;
    ports.extend(s);
    ports.sort();
    Ok(ArchTemplate {
        style: ArchStyle::MasterSlave { masters, slaves },
        summands: vec![formula.clone()],
        formula,
        ports,
        parts,
    })
}

/// Largest satisfaction degree of `z` over the sub-configurations of `g`.
pub fn uncertainty(z: &PclFormula, g: &Configuration) -> Result<AlgebraElement> {
    eval_closure(z, g)
}
