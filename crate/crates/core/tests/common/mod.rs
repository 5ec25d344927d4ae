//! Shared test tooling: a seeded formula fuzzer, a naive evaluator written
//! straight from the definitions, and the configuration spaces the suites
//! quantify over.

#![allow(dead_code)]

pub mod props;

use fpcl::algebra::{carrier, AlgebraDescriptor, AlgebraElement};
use fpcl::semantics::{
    eval_pcl, index_subsets, interactions_over, subset_values, Configuration, Interaction,
};
use fpcl::syntax::{PclFormula, PilFormula, Port};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn ports(names: &[&str]) -> Vec<Port> {
    names.iter().map(|n| Port::new(*n).unwrap()).collect()
}

pub fn pcl(text: &str) -> PclFormula {
    text.parse().unwrap()
}

/// Random formulas over a fixed port list.
pub struct Fuzzer {
    rng: ChaCha8Rng,
    ports: Vec<Port>,
}

impl Fuzzer {
    pub fn new(seed: u64, ports: &[Port]) -> Self {
        Fuzzer {
            rng: ChaCha8Rng::seed_from_u64(seed),
            ports: ports.to_vec(),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn atom(&mut self) -> PilFormula {
        let i = self.rng.gen_range(0..self.ports.len());
        PilFormula::Atom(self.ports[i].clone())
    }

    pub fn pil(&mut self, depth: u32) -> PilFormula {
        if depth == 0 || self.rng.gen_bool(0.3) {
            return match self.rng.gen_range(0..10) {
                0 => PilFormula::True,
                1 => PilFormula::falsum(),
                _ => self.atom(),
            };
        }
        match self.rng.gen_range(0..3) {
            0 => self.pil(depth - 1).not(),
            1 => self.pil(depth - 1).or(self.pil(depth - 1)),
            _ => self.pil(depth - 1).and(self.pil(depth - 1)),
        }
    }

    pub fn pcl(&mut self, depth: u32) -> PclFormula {
        if depth == 0 || self.rng.gen_bool(0.25) {
            let d = self.rng.gen_range(0..=depth.min(2));
            return PclFormula::Pil(self.pil(d));
        }
        match self.rng.gen_range(0..5) {
            0 => self.pcl(depth - 1).neg(),
            1 => self.pcl(depth - 1).plus(self.pcl(depth - 1)),
            2 => self.pcl(depth - 1).coalesce(self.pcl(depth - 1)),
            3 => self.pcl(depth - 1).times(self.pcl(depth - 1)),
            _ => self.pcl(depth - 1).closure(),
        }
    }
}

pub fn naive_pil(f: &PilFormula, a: &Interaction) -> AlgebraElement {
    match f {
        PilFormula::True => a.algebra().one(),
        PilFormula::Atom(p) => a.weight(p).expect("port is assigned"),
        PilFormula::Not(g) => naive_pil(g, a).complement(),
        PilFormula::Or(g, h) => naive_pil(g, a).join(naive_pil(h, a)).unwrap(),
    }
}

/// Every `(left, right)` pair of nonempty index sets with union `0..n`.
pub fn naive_covers(n: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    for code in 0..3usize.pow(n as u32) {
        let (mut left, mut right) = (Vec::new(), Vec::new());
        let mut c = code;
        for i in 0..n {
            match c % 3 {
                0 => left.push(i),
                1 => right.push(i),
                _ => {
                    left.push(i);
                    right.push(i);
                }
            }
            c /= 3;
        }
        if !left.is_empty() && !right.is_empty() {
            out.push((left, right));
        }
    }
    out
}

/// Direct recursion on the definitions, with no memoization.
pub fn naive_pcl(z: &PclFormula, g: &[Interaction]) -> AlgebraElement {
    assert!(!g.is_empty());
    let d = g[0].algebra();
    match z {
        PclFormula::Pil(f) => g
            .iter()
            .fold(d.one(), |acc, a| acc.meet(naive_pil(f, a)).unwrap()),
        PclFormula::Neg(inner) => naive_pcl(inner, g).complement(),
        PclFormula::Plus(x, y) => naive_pcl(x, g).join(naive_pcl(y, g)).unwrap(),
        PclFormula::Coalesce(x, y) => {
            let pick = |idx: &[usize]| idx.iter().map(|&i| g[i].clone()).collect::<Vec<_>>();
            naive_covers(g.len())
                .iter()
                .fold(d.zero(), |acc, (l, r)| {
                    let v = naive_pcl(x, &pick(l)).meet(naive_pcl(y, &pick(r))).unwrap();
                    acc.join(v).unwrap()
                })
        }
    }
}

/// Join of `z` over nonempty subsets, straight from the subset formula.
pub fn naive_closure(z: &PclFormula, g: &[Interaction]) -> AlgebraElement {
    let d = g[0].algebra();
    let mut acc = d.zero();
    for mask in 1u64..(1 << g.len()) {
        let sub: Vec<Interaction> = (0..g.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| g[i].clone())
            .collect();
        acc = acc.join(naive_pcl(z, &sub)).unwrap();
    }
    acc
}

/// A finite set of configurations over one port list and algebra.
pub struct Space {
    pub label: String,
    pub algebra: AlgebraDescriptor,
    pub ports: Vec<Port>,
    universe: Vec<Interaction>,
    max_size: Option<usize>,
    dense: bool,
    configs: Vec<Configuration>,
}

impl Space {
    /// All configurations of at most `max_size` interactions drawn from the
    /// algebra's carrier, or from the grid `{0, 1/d, …, 1}` for the fuzzy
    /// algebra.
    pub fn new(
        ports: &[Port],
        algebra: AlgebraDescriptor,
        grid: Option<u64>,
        max_size: Option<usize>,
    ) -> Space {
        let values = carrier(algebra, grid).unwrap();
        let universe = interactions_over(ports, &values).unwrap();
        let dense = max_size.map_or(true, |m| m >= universe.len()) && universe.len() <= 12;
        let configs = if dense {
            Vec::new()
        } else {
            index_subsets(universe.len(), max_size)
                .map(|idx| Configuration::new(idx.iter().map(|&i| universe[i].clone())).unwrap())
                .collect()
        };
        let size = match max_size {
            Some(m) if !dense => format!("size <= {m}"),
            _ => "all".to_string(),
        };
        let names: Vec<&str> = ports.iter().map(|p| p.as_str()).collect();
        let label = match grid {
            Some(d) => format!("{algebra} grid {d} over {{{}}} ({size})", names.join(",")),
            None => format!("{algebra} over {{{}}} ({size})", names.join(",")),
        };
        Space {
            label,
            algebra,
            ports: ports.to_vec(),
            universe,
            max_size,
            dense,
            configs,
        }
    }

    pub fn universe(&self) -> &[Interaction] {
        &self.universe
    }

    pub fn len(&self) -> usize {
        if self.dense {
            (1usize << self.universe.len()) - 1
        } else {
            self.configs.len()
        }
    }

    /// Every configuration in canonical order.
    pub fn configurations(&self) -> Vec<Configuration> {
        if self.dense {
            index_subsets(self.universe.len(), None)
                .map(|idx| Configuration::new(idx.iter().map(|&i| self.universe[i].clone())).unwrap())
                .collect()
        } else {
            self.configs.clone()
        }
    }

    /// Values of `z` on every configuration, in canonical order.
    pub fn values(&self, z: &PclFormula) -> Vec<AlgebraElement> {
        if self.dense {
            let table = subset_values(z, &self.universe).unwrap();
            index_subsets(self.universe.len(), None)
                .map(|idx| table.get(idx.iter().fold(0, |m, &i| m | 1 << i)))
                .collect()
        } else {
            self.configs.iter().map(|g| eval_pcl(z, g).unwrap()).collect()
        }
    }

    /// Description of the first configuration where `a` and `b` differ.
    pub fn first_difference(&self, a: &PclFormula, b: &PclFormula) -> Option<String> {
        let (va, vb) = (self.values(a), self.values(b));
        let i = va.iter().zip(&vb).position(|(x, y)| x != y)?;
        let g = self.configurations().swap_remove(i);
        Some(format!(
            "{}: `{a}` = {} but `{b}` = {} on {g}",
            self.label, va[i], vb[i]
        ))
    }
}

/// Configuration spaces used by the law and soundness suites.
///
/// Finite algebras use every configuration except Four over two ports,
/// which is bounded by `four_max`; the fuzzy grid uses configurations of at
/// most `grid_max` interactions.
pub fn spaces_for(
    ports: &[Port],
    algebras: &[AlgebraDescriptor],
    four_max: usize,
    grid: u64,
    grid_max: usize,
) -> Vec<Space> {
    algebras
        .iter()
        .map(|&d| match d {
            AlgebraDescriptor::FuzzyRational => Space::new(ports, d, Some(grid), Some(grid_max)),
            AlgebraDescriptor::Four if ports.len() > 1 => Space::new(ports, d, None, Some(four_max)),
            _ => Space::new(ports, d, None, None),
        })
        .collect()
}

pub fn pil_strategy(names: &'static [&'static str]) -> impl Strategy<Value = PilFormula> {
    let leaf = prop_oneof![
        Just(PilFormula::True),
        Just(PilFormula::falsum()),
        prop::sample::select(names).prop_map(|n| PilFormula::atom(n).unwrap()),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(PilFormula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.or(b)),
            (inner.clone(), inner).prop_map(|(a, b)| a.and(b)),
        ]
    })
}

pub fn pcl_strategy(names: &'static [&'static str]) -> impl Strategy<Value = PclFormula> {
    let leaf = pil_strategy(names).prop_map(PclFormula::Pil);
    leaf.prop_recursive(3, 16, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(PclFormula::neg),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.plus(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.coalesce(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.times(b)),
            inner.prop_map(PclFormula::closure),
        ]
    })
}
