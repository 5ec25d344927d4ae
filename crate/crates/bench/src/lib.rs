//! Inputs shared by the benchmarks.

use fpcl::algebra::{sample_grid, AlgebraDescriptor};
use fpcl::semantics::{interactions_over, Configuration};
use fpcl::syntax::{parse_pcl, PclFormula, Port};

pub fn ports(names: &[&str]) -> Vec<Port> {
    names.iter().map(|n| Port::new(*n).expect("valid port")).collect()
}

/// The first `size` grid interactions over `ports`, in canonical order.
pub fn grid_configuration(ports: &[Port], denominator: u64, size: usize) -> Configuration {
    let values = sample_grid(denominator).expect("positive denominator");
    let universe = interactions_over(ports, &values).expect("small universe");
    Configuration::new(universe.into_iter().take(size)).expect("compatible interactions")
}

/// Configuration of `size` interactions over a finite algebra.
pub fn finite_configuration(ports: &[Port], d: AlgebraDescriptor, size: usize) -> Configuration {
    let values = fpcl::algebra::elements(d).expect("finite algebra");
    let universe = interactions_over(ports, &values).expect("small universe");
    let step = (universe.len() / size.max(1)).max(1);
    Configuration::new(universe.into_iter().step_by(step).take(size)).expect("compatible interactions")
}

/// Formulas whose normal forms grow quickly: nested negations of coalescings.
pub fn normalization_inputs() -> Vec<(&'static str, PclFormula)> {
    [
        ("coalesce-chain", "p # q # !p # (p | q)"),
        ("neg-coalesce", "neg (p # q # (p & !q))"),
        ("times-closure", "(p # q) * cl (p | !q) * (q + !p)"),
        ("double-neg", "neg (neg (p # q) + cl p)"),
    ]
    .into_iter()
    .map(|(name, text)| (name, parse_pcl(text).expect("fixture parses")))
    .collect()
}
