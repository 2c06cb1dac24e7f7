mod common;

use common::{conditional_product, random_partition, rng, shuffled, wires};
use finmarkov::ci::{
    check_partition_lemma, ci_residual, meet, semigraphoid_closure, statement_residual, ClosureError, Symbols,
};
use finmarkov::markov::{local_markov_checks, recompose};
use finmarkov::{random, CIStatement};
use proptest::prelude::*;
use rand::Rng;

fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn residual_is_symmetric_and_ignores_other_wires(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(3..=5);
        let carriers = random::carriers(&mut r, "V", n, 3);
        let p = random::joint(&mut r, &carriers, 0.2);
        let ws = shuffled(&mut r, &wires(n));
        let k = r.gen_range(0..=n - 2);
        let (x, y, g) = (&ws[..1], &ws[1..2], &ws[2..2 + k]);
        let a = ci_residual(&p, x, y, g).unwrap();
        prop_assert!((a - ci_residual(&p, y, x, g).unwrap()).abs() <= 1e-12);
        let keep: Vec<String> = ws[..2 + k].to_vec();
        let m = p.marginalize(&keep).unwrap();
        prop_assert!((a - ci_residual(&m, x, y, g).unwrap()).abs() <= 1e-12);
        let re = p.reindex(&shuffled(&mut r, p.wires())).unwrap();
        prop_assert!((a - ci_residual(&re, x, y, g).unwrap()).abs() <= 1e-12);
    }

    #[test]
    fn decomposition_and_weak_union_hold_semantically(seed in any::<u64>()) {
        let mut r = rng(seed);
        // x ⊥ (y, z) | w by construction.
        let p = conditional_product(&mut r, &[names(&["x"]), names(&["y", "z"])], &names(&["w"]), 3, 0.3);
        prop_assert!(ci_residual(&p, &["x"], &["y", "z"], &["w"]).unwrap() <= 1e-12);
        prop_assert!(ci_residual(&p, &["x"], &["y"], &["w"]).unwrap() <= 1e-12);
        prop_assert!(ci_residual(&p, &["x"], &["y"], &["w", "z"]).unwrap() <= 1e-12);
        prop_assert!(ci_residual(&p, &["y", "z"], &["x"], &["w"]).unwrap() <= 1e-12);
    }

    #[test]
    fn contraction_holds_semantically(seed in any::<u64>()) {
        let mut r = rng(seed);
        // w -> z, w -> x, (z, w) -> y: x ⊥ y | z,w and x ⊥ z | w.
        let m = finmarkov::CausalModel::new(
            ["w", "z", "x", "y"],
            vec![
                finmarkov::ModelBox::new("a", Vec::<String>::new(), names(&["w"])),
                finmarkov::ModelBox::new("b", names(&["w"]), names(&["z"])),
                finmarkov::ModelBox::new("c", names(&["w"]), names(&["x"])),
                finmarkov::ModelBox::new("d", names(&["z", "w"]), names(&["y"])),
            ],
        );
        let p = recompose(&m, &random::assignment(&mut r, &m, 3, 0.3)).unwrap();
        prop_assert!(ci_residual(&p, &["x"], &["y"], &["z", "w"]).unwrap() <= 1e-12);
        prop_assert!(ci_residual(&p, &["x"], &["z"], &["w"]).unwrap() <= 1e-12);
        prop_assert!(ci_residual(&p, &["x"], &["z", "y"], &["w"]).unwrap() <= 1e-12);
    }

    #[test]
    fn partition_lemma_on_meet_constructed_instances(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(2..=5);
        let ground = wires(n);
        let given: Vec<String> = if r.gen_bool(0.5) { vec!["g".into()] } else { vec![] };
        let p1 = random_partition(&mut r, &ground, 3);
        let p2 = random_partition(&mut r, &ground, 3);
        let cells = meet(&p1, &p2).unwrap();
        let p = conditional_product(&mut r, &cells, &given, 3, 0.3);
        let rep = check_partition_lemma(&p, &p1, &p2, &given, 1e-9).unwrap();
        prop_assert_eq!((rep.premises, rep.conclusion), ((true, true), true));

        // A generic joint never contradicts the lemma either.
        let mut carriers = random::carriers(&mut r, "V", n, 3);
        let mut names = ground.clone();
        if !given.is_empty() {
            carriers.push(random::finset("G", 2));
            names.push("g".into());
        }
        let q = finmarkov::JointState::new(random::state(&mut r, &carriers, 0.3), names).unwrap();
        prop_assert!(check_partition_lemma(&q, &p1, &p2, &given, 1e-9).unwrap().consistent());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn closure_of_true_statements_stays_true(seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = random::model(&mut r, 4, 2);
        let p = recompose(&m, &random::assignment(&mut r, &m, 3, 0.2)).unwrap();
        let axioms: Vec<CIStatement> = local_markov_checks(&p, &m)
            .unwrap()
            .into_iter()
            .filter(|c| !c.is_trivial())
            .map(|c| CIStatement::new(c.outputs, c.others, c.given).unwrap())
            .collect();
        prop_assume!(!axioms.is_empty());
        let ground: Symbols = m.wires().iter().cloned().collect();
        let closure = match semigraphoid_closure(&axioms, &ground, 400) {
            Ok(c) => c,
            Err(ClosureError::BudgetExceeded { partial, .. }) => partial,
            Err(e) => panic!("{e}"),
        };
        for s in closure.statements() {
            prop_assert!(statement_residual(&p, s).unwrap() <= 1e-7, "{}", s);
        }
    }
}
