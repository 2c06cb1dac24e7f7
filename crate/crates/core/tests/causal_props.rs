mod common;

use common::{random_timing, rng};
use finmarkov::causal::{default_timing, enumerate_timings, non_descendants, past, reaches, validate_model};
use finmarkov::{random, CausalModel, Node};
use proptest::prelude::*;

fn nodes(m: &CausalModel) -> Vec<Node> {
    m.boxes()
        .iter()
        .map(|b| Node::boxed(b.name.clone()))
        .chain(m.wires().iter().map(|w| Node::wire(w.clone())))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn random_models_are_valid(seed in any::<u64>()) {
        let m = random::model(&mut rng(seed), 5, 2);
        prop_assert!(validate_model(&m).is_empty());
        prop_assert!(default_timing(&m).unwrap().validate(&m).is_ok());
    }

    #[test]
    fn reachability_is_a_partial_order(seed in any::<u64>()) {
        let m = random::model(&mut rng(seed), 4, 2);
        let ns = nodes(&m);
        for a in &ns {
            prop_assert!(reaches(&m, a, a).unwrap());
            for b in &ns {
                let ab = reaches(&m, a, b).unwrap();
                if a != b {
                    prop_assert!(!(ab && reaches(&m, b, a).unwrap()));
                }
                for c in &ns {
                    if ab && reaches(&m, b, c).unwrap() {
                        prop_assert!(reaches(&m, a, c).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn past_outside_own_outputs_is_non_descendant(seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = random::model(&mut r, 4, 2);
        let mut timings = enumerate_timings(&m, m.boxes().len() as u32);
        timings.push(random_timing(&mut r, &m));
        prop_assert!(!timings.is_empty());
        for tau in &timings {
            prop_assert!(tau.validate(&m).is_ok());
            for b in m.boxes() {
                let nd = non_descendants(&m, &b.name).unwrap();
                for w in past(&m, tau, &b.name).unwrap() {
                    prop_assert!(b.outputs.contains(&w) || nd.contains(&w), "{} in past of {}", w, b.name);
                }
            }
        }
    }
}
