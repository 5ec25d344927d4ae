mod common;

use common::Space;
use fpcl::archlib::{master_slave_formula, p2p_formula, uncertainty};
use fpcl::semantics::{eval_pcl, Configuration};
use fpcl::AlgebraDescriptor::Bool2;
use proptest::prelude::*;

fn active(g: &Configuration) -> Vec<Vec<String>> {
    let mut out: Vec<Vec<String>> = g
        .iter()
        .map(|a| {
            a.weights()
                .iter()
                .filter(|(_, v)| v.is_one())
                .map(|(p, _)| p.to_string())
                .collect()
        })
        .collect();
    out.sort();
    out
}

// the formula holds exactly when each master has its own interaction with
// one slave and nothing else happens
fn master_slave_expected(g: &Configuration) -> bool {
    let sets = active(g);
    if sets.len() != 2 {
        return false;
    }
    let with = |m: &str| {
        sets.iter()
            .filter(|s| s.len() == 2 && s.contains(&m.to_string()) && s.iter().any(|p| p.starts_with('s')))
            .count()
    };
    with("m1") == 1 && with("m2") == 1
}

#[test]
fn master_slave_two_by_two_over_crisp_configurations() {
    let t = master_slave_formula(2, 2).unwrap();
    let space = Space::new(&t.ports, Bool2, None, Some(2));
    assert_eq!(space.universe().len(), 15);
    let configs = space.configurations();
    assert_eq!(configs.len(), 120);
    let mut ones = 0;
    for g in &configs {
        let v = eval_pcl(&t.formula, g).unwrap();
        assert_eq!(v.is_one(), master_slave_expected(g), "{g}");
        if v.is_one() {
            ones += 1;
        }
        let sets = active(g);
        let clash = sets.iter().any(|s| {
            s.iter().filter(|p| p.starts_with('m')).count() > 1
                || s.iter().filter(|p| p.starts_with('s')).count() > 1
        });
        if clash {
            assert!(v.is_zero(), "{g}");
        }
    }
    assert_eq!(ones, 4);
}

#[test]
fn p2p_two_components_accepts_each_direction() {
    let t = p2p_formula(2).unwrap();
    let space = Space::new(&t.ports, Bool2, None, Some(2));
    for g in space.configurations() {
        let sets = active(&g);
        let ok = sets.iter().all(|s| *s == ["r1", "s2"] || *s == ["r2", "s1"]);
        assert_eq!(eval_pcl(&t.formula, &g).unwrap().is_one(), ok, "{g}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn uncertainty_bounds_the_value(masters in 1usize..3, slaves in 1usize..3, seed in any::<u64>()) {
        let t = master_slave_formula(masters, slaves).unwrap();
        let space = Space::new(&t.ports, fpcl::AlgebraDescriptor::FuzzyRational, Some(2), Some(1));
        let configs = space.configurations();
        let i = (seed % configs.len() as u64) as usize;
        let j = (seed / 7 % configs.len() as u64) as usize;
        let g = configs[i].union(&configs[j]).unwrap();
        let u = uncertainty(&t.formula, &g).unwrap();
        prop_assert!(eval_pcl(&t.formula, &g).unwrap().leq(u).unwrap());
        prop_assert!(uncertainty(&t.formula, &configs[i]).unwrap().leq(u).unwrap());
    }
}
