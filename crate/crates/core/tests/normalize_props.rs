mod common;

use common::{pcl_strategy, ports, spaces_for, Space};
use fpcl::normalize::{pcl_normal_form, to_set_rep, validate, NormalizationMode, Normalizer, SetRep};
use fpcl::AlgebraDescriptor::{self, *};
use fpcl::PclFormula;
use proptest::prelude::*;

fn algebras(mode: NormalizationMode) -> &'static [AlgebraDescriptor] {
    match mode {
        NormalizationMode::DeMorgan => &[Bool2, Kleene3, Four],
        NormalizationMode::Kleene => &[Bool2, Kleene3, FuzzyRational],
        NormalizationMode::Boolean => &[Bool2],
    }
}

fn mode_spaces(names: &[&str], mode: NormalizationMode) -> Vec<Space> {
    spaces_for(&ports(names), algebras(mode), 3, 4, 3)
}

fn sound(z: &PclFormula, names: &[&str]) -> Result<(), TestCaseError> {
    let ps = ports(names);
    for mode in NormalizationMode::ALL {
        let nf = pcl_normal_form(z, &ps, mode).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert!(validate(&nf, &ps, mode).is_ok(), "{:?}", validate(&nf, &ps, mode));
        let rebuilt = nf.to_formula();
        for space in mode_spaces(names, mode) {
            if let Some(diff) = space.first_difference(z, &rebuilt) {
                prop_assert!(false, "{} normal form `{}`: {}", mode, nf, diff);
            }
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn normal_forms_preserve_values_one_port(z in pcl_strategy(&["p"])) {
        sound(&z, &["p"])?;
    }

    #[test]
    fn normal_forms_preserve_values_two_ports(z in pcl_strategy(&["p", "q"])) {
        sound(&z, &["p", "q"])?;
    }

    #[test]
    fn normalizing_a_normal_form_changes_nothing(z in pcl_strategy(&["p", "q", "r"])) {
        let ps = ports(&["p", "q", "r"]);
        for mode in NormalizationMode::ALL {
            let nf = pcl_normal_form(&z, &ps, mode).unwrap();
            let again = pcl_normal_form(&nf.to_formula(), &ps, mode).unwrap();
            prop_assert_eq!(&nf, &again);
            let reparsed: PclFormula = nf.to_string().parse().unwrap();
            prop_assert_eq!(pcl_normal_form(&reparsed, &ps, mode).unwrap(), nf);
        }
    }

    #[test]
    fn set_reps_survive_json(z in pcl_strategy(&["p", "q"])) {
        let nf = pcl_normal_form(&z, &ports(&["p", "q"]), NormalizationMode::DeMorgan).unwrap();
        let rep = to_set_rep(&nf);
        prop_assert_eq!(rep.canonical(), rep.clone());
        prop_assert_eq!(SetRep::from_json(&rep.to_json()).unwrap(), rep);
    }
}

#[test]
fn negation_of_an_atom_over_bool2() {
    let ps = ports(&["p", "q"]);
    let z = common::pcl("neg p");
    let nf = pcl_normal_form(&z, &ps, NormalizationMode::DeMorgan).unwrap();
    let space = Space::new(&ps, Bool2, None, None);
    assert_eq!(space.len(), 7);
    assert_eq!(space.values(&z), space.values(&nf.to_formula()));
}

#[test]
fn step_budget_is_enforced() {
    let ps = ports(&["p", "q", "r"]);
    let z = common::pcl("neg ((p # q # r) + (!p # !q) + (p | q # r)) * neg (p # !r + q)");
    let mut tight = Normalizer::new(&ps, NormalizationMode::DeMorgan).with_budget(50);
    assert!(matches!(tight.pcl(&z), Err(fpcl::Error::ResourceLimit(_))));
    let mut roomy = Normalizer::new(&ps, NormalizationMode::DeMorgan);
    roomy.pcl(&z).unwrap();
    assert!(roomy.steps() > 50);
}
