//! Catalog of semantic laws, each instantiated with fuzzed subformulas.

use fpcl::algebra::{AlgebraDescriptor, AlgebraElement};
use fpcl::semantics::Configuration;
use fpcl::syntax::{big_and, big_coalesce, big_or, big_plus, big_times, PclFormula, PilFormula};
use rand::Rng;

use super::{naive_pil, Fuzzer, Space};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    /// Every De Morgan algebra.
    All,
    /// Kleene algebras only.
    Kleene,
    /// Boolean algebras only.
    Boolean,
}

impl Scope {
    pub fn admits(self, d: AlgebraDescriptor) -> bool {
        match self {
            Scope::All => true,
            Scope::Kleene => d != AlgebraDescriptor::Four,
            Scope::Boolean => d == AlgebraDescriptor::Bool2,
        }
    }
}

pub type Pairs = Vec<(PclFormula, PclFormula)>;

pub enum Body {
    /// Both sides must agree everywhere.
    Pairs(fn(&mut Fuzzer) -> Pairs),
    /// Disjunction of interaction formulas against its decomposition over
    /// disjoint splits of the configuration.
    Decomposition,
}

pub struct Law {
    pub name: &'static str,
    pub scope: Scope,
    pub body: Body,
}

const D: u32 = 4;

fn pil(f: &mut Fuzzer) -> PilFormula {
    f.pil(D)
}

fn pcl(f: &mut Fuzzer) -> PclFormula {
    f.pcl(D)
}

fn lift(f: PilFormula) -> PclFormula {
    PclFormula::Pil(f)
}

fn family(f: &mut Fuzzer) -> Vec<PilFormula> {
    let n = f.rng().gen_range(1..=3);
    (0..n).map(|_| f.pil(D - 1)).collect()
}

fn lifted(phis: &[PilFormula]) -> Vec<PclFormula> {
    phis.iter().cloned().map(lift).collect()
}

fn n_or(phis: &[PilFormula]) -> PilFormula {
    big_or(phis.to_vec()).unwrap()
}

fn n_and(phis: Vec<PilFormula>) -> PilFormula {
    big_and(phis).unwrap()
}

fn n_coalesce(phis: &[PilFormula]) -> PclFormula {
    big_coalesce(lifted(phis)).unwrap()
}

pub fn catalog() -> Vec<Law> {
    use Body::Pairs as P;
    vec![
        Law {
            name: "negation over disjunction",
            scope: Scope::All,
            body: P(|f| {
                let (a, b) = (pil(f), pil(f));
                vec![(lift(a.clone().or(b.clone()).not()), lift(a.not().and(b.not())))]
            }),
        },
        Law {
            name: "true and false laws",
            scope: Scope::All,
            body: P(|f| {
                let a = pil(f);
                vec![
                    (lift(a.clone().or(PilFormula::True)), lift(PilFormula::True)),
                    (lift(a.clone().or(PilFormula::falsum())), lift(a.clone())),
                    (lift(a.clone().and(PilFormula::True)), lift(a.clone())),
                    (lift(a.clone().and(PilFormula::falsum())), lift(PilFormula::falsum())),
                    (lift(a.clone().not().not()), lift(a)),
                ]
            }),
        },
        Law {
            name: "interaction associativity",
            scope: Scope::All,
            body: P(|f| {
                let (a, b, c) = (pil(f), pil(f), pil(f));
                vec![
                    (
                        lift(a.clone().and(b.clone()).and(c.clone())),
                        lift(a.clone().and(b.clone().and(c.clone()))),
                    ),
                    (lift(a.clone().or(b.clone()).or(c.clone())), lift(a.or(b.or(c)))),
                ]
            }),
        },
        Law {
            name: "conjunction over disjunction",
            scope: Scope::All,
            body: P(|f| {
                let (a, b, c) = (pil(f), pil(f), pil(f));
                vec![(
                    lift(a.clone().and(b.clone().or(c.clone()))),
                    lift(a.clone().and(b).or(a.and(c))),
                )]
            }),
        },
        Law {
            name: "interaction absorption and idempotency",
            scope: Scope::All,
            body: P(|f| {
                let (a, b) = (pil(f), pil(f));
                vec![
                    (lift(a.clone().and(a.clone().or(b.clone()))), lift(a.clone())),
                    (lift(a.clone().or(a.clone().and(b))), lift(a.clone())),
                    (lift(a.clone().or(a.clone())), lift(a.clone())),
                    (lift(a.clone().and(a.clone())), lift(a)),
                ]
            }),
        },
        Law {
            name: "interaction conjunction is the product",
            scope: Scope::All,
            body: P(|f| {
                let (a, b) = (pil(f), pil(f));
                vec![(lift(a.clone().and(b.clone())), lift(a).times(lift(b)))]
            }),
        },
        Law {
            name: "sum is associative and commutative",
            scope: Scope::All,
            body: P(|f| {
                let (x, y, w) = (pcl(f), pcl(f), pcl(f));
                vec![
                    (x.clone().plus(y.clone()).plus(w.clone()), x.clone().plus(y.clone().plus(w))),
                    (x.clone().plus(y.clone()), y.plus(x)),
                ]
            }),
        },
        Law {
            name: "product is associative and commutative",
            scope: Scope::All,
            body: P(|f| {
                let (x, y, w) = (pcl(f), pcl(f), pcl(f));
                vec![
                    (x.clone().times(y.clone()).times(w.clone()), x.clone().times(y.clone().times(w))),
                    (x.clone().times(y.clone()), y.times(x)),
                ]
            }),
        },
        Law {
            name: "coalescing is associative and commutative",
            scope: Scope::All,
            body: P(|f| {
                let (x, y, w) = (pcl(f), pcl(f), pcl(f));
                vec![
                    (
                        x.clone().coalesce(y.clone()).coalesce(w.clone()),
                        x.clone().coalesce(y.clone().coalesce(w)),
                    ),
                    (x.clone().coalesce(y.clone()), y.coalesce(x)),
                ]
            }),
        },
        Law {
            name: "coalescing over sum",
            scope: Scope::All,
            body: P(|f| {
                let (x, y, w) = (pcl(f), pcl(f), pcl(f));
                vec![(
                    x.clone().coalesce(y.clone().plus(w.clone())),
                    x.clone().coalesce(y).plus(x.coalesce(w)),
                )]
            }),
        },
        Law {
            name: "product over sum",
            scope: Scope::All,
            body: P(|f| {
                let (x, y, w) = (pcl(f), pcl(f), pcl(f));
                vec![(
                    x.clone().times(y.clone().plus(w.clone())),
                    x.clone().times(y).plus(x.times(w)),
                )]
            }),
        },
        Law {
            name: "configuration constants and idempotency",
            scope: Scope::All,
            body: P(|f| {
                let x = pcl(f);
                vec![
                    (x.clone().neg().neg(), x.clone()),
                    (x.clone().plus(x.clone()), x.clone()),
                    (x.clone().times(x.clone()), x.clone()),
                    (x.clone().plus(PclFormula::tt()), PclFormula::tt()),
                    (x.clone().plus(PclFormula::ff()), x.clone()),
                    (x.clone().times(PclFormula::tt()), x.clone()),
                    (x.clone().times(PclFormula::ff()), PclFormula::ff()),
                    (x.coalesce(PclFormula::ff()), PclFormula::ff()),
                ]
            }),
        },
        Law {
            name: "negation of sums and products",
            scope: Scope::All,
            body: P(|f| {
                let (x, y) = (pcl(f), pcl(f));
                vec![
                    (x.clone().plus(y.clone()).neg(), x.clone().neg().times(y.clone().neg())),
                    (x.clone().times(y.clone()).neg(), x.neg().plus(y.neg())),
                ]
            }),
        },
        Law {
            name: "configuration absorption",
            scope: Scope::All,
            body: P(|f| {
                let (x, y) = (pcl(f), pcl(f));
                vec![
                    (x.clone().times(x.clone().plus(y.clone())), x.clone()),
                    (x.clone().plus(x.clone().times(y)), x),
                ]
            }),
        },
        Law {
            name: "interaction product over coalescing",
            scope: Scope::All,
            body: P(|f| {
                let phi = lift(pil(f));
                let (y, w) = (pcl(f), pcl(f));
                vec![(
                    phi.clone().times(y.clone().coalesce(w.clone())),
                    phi.clone().times(y).coalesce(phi.times(w)),
                )]
            }),
        },
        Law {
            name: "interaction formulas under coalescing and closure",
            scope: Scope::All,
            body: P(|f| {
                let phi = pil(f);
                vec![
                    (lift(phi.clone()).coalesce(lift(phi.clone())), lift(phi.clone())),
                    (lift(phi.clone()).closure().neg(), lift(phi.clone().not())),
                    (lift(phi.clone()).neg(), lift(phi.not()).closure()),
                ]
            }),
        },
        Law {
            name: "disjunction as coalescings",
            scope: Scope::All,
            body: Body::Decomposition,
        },
        Law {
            name: "coalescing as product of closures",
            scope: Scope::All,
            body: P(|f| {
                let phis = family(f);
                let mut factors: Vec<PclFormula> = lifted(&phis).into_iter().map(PclFormula::closure).collect();
                factors.push(lift(n_or(&phis)));
                vec![(n_coalesce(&phis), big_times(factors).unwrap())]
            }),
        },
        Law {
            name: "negated coalescing",
            scope: Scope::All,
            body: P(|f| {
                let phis = family(f);
                let negated: Vec<PilFormula> = phis.iter().cloned().map(PilFormula::not).collect();
                let mut summands = lifted(&negated);
                summands.push(lift(n_and(negated)).closure());
                vec![(n_coalesce(&phis).neg(), big_plus(summands).unwrap())]
            }),
        },
        Law {
            name: "product of closures",
            scope: Scope::All,
            body: P(|f| {
                let phis = family(f);
                let closures = lifted(&phis).into_iter().map(PclFormula::closure).collect();
                vec![(big_times(closures).unwrap(), n_coalesce(&phis).closure())]
            }),
        },
        Law {
            name: "product of coalescings",
            scope: Scope::All,
            body: P(|f| {
                let (js, ks) = (family(f), family(f));
                let mut crossed = Vec::new();
                for a in &js {
                    for b in &ks {
                        crossed.push(a.clone().and(b.clone()));
                    }
                }
                let lhs = n_coalesce(&js).times(n_coalesce(&ks));
                let rhs = n_coalesce(&js)
                    .coalesce(n_coalesce(&ks))
                    .closure()
                    .times(lift(n_or(&crossed)));
                vec![(lhs, rhs)]
            }),
        },
        Law {
            name: "kleene condition on formulas",
            scope: Scope::Kleene,
            body: P(|f| {
                let (a, b) = (pil(f), pil(f));
                let contradiction = lift(a.clone()).times(lift(a.not()));
                vec![(
                    contradiction.clone().times(lift(b.clone().or(b.not()))),
                    contradiction,
                )]
            }),
        },
        Law {
            name: "boolean complements",
            scope: Scope::Boolean,
            body: P(|f| {
                let a = pil(f);
                let x = pcl(f);
                vec![
                    (lift(a.clone().and(a.clone().not())), PclFormula::ff()),
                    (lift(a.clone().or(a.not())), PclFormula::tt()),
                    (x.clone().times(x.clone().neg()), PclFormula::ff()),
                    (x.clone().plus(x.neg()), PclFormula::tt()),
                ]
            }),
        },
    ]
}

fn meet_on(f: &PilFormula, g: &Configuration, idx: &[usize]) -> AlgebraElement {
    idx.iter().fold(g.algebra().one(), |acc, &i| {
        acc.meet(naive_pil(f, &g.interactions()[i])).unwrap()
    })
}

/// `⋁` over assignments of members to formulas of `⋀` over used formulas of
/// their value on the assigned part.
pub fn decomposition_value(phis: &[PilFormula], g: &Configuration) -> AlgebraElement {
    let n = g.len();
    let k = phis.len();
    let mut acc = g.algebra().zero();
    for code in 0..k.pow(n as u32) {
        let mut parts = vec![Vec::new(); k];
        let mut c = code;
        for i in 0..n {
            parts[c % k].push(i);
            c /= k;
        }
        let value = parts
            .iter()
            .zip(phis)
            .filter(|(part, _)| !part.is_empty())
            .fold(g.algebra().one(), |v, (part, phi)| v.meet(meet_on(phi, g, part)).unwrap());
        acc = acc.join(value).unwrap();
    }
    acc
}

/// Instantiates `law` once and checks it on every admitted space. Returns
/// the number of comparisons made, or a description of the first failure.
pub fn check(law: &Law, fuzzer: &mut Fuzzer, spaces: &[Space]) -> Result<usize, String> {
    let mut compared = 0;
    match &law.body {
        Body::Pairs(build) => {
            let pairs = build(fuzzer);
            for space in spaces.iter().filter(|s| law.scope.admits(s.algebra)) {
                for (lhs, rhs) in &pairs {
                    if let Some(diff) = space.first_difference(lhs, rhs) {
                        return Err(format!("{}: {diff}", law.name));
                    }
                    compared += space.len();
                }
            }
        }
        Body::Decomposition => {
            let phis = family(fuzzer);
            let lhs = lift(n_or(&phis));
            for space in spaces.iter().filter(|s| law.scope.admits(s.algebra)) {
                let values = space.values(&lhs);
                for (g, v) in space.configurations().iter().zip(values) {
                    let expected = decomposition_value(&phis, g);
                    if v != expected {
                        return Err(format!(
                            "{}: `{lhs}` = {v} but the decomposition gives {expected} on {g} ({})",
                            law.name, space.label
                        ));
                    }
                }
                compared += space.len();
            }
        }
    }
    Ok(compared)
}
