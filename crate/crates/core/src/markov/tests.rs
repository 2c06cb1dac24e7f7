use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::causal::{default_timing, enumerate_timings, examples, CausalModel, ModelBox, TimingFunction};
use crate::error::Error;
use crate::finstoch::{as_equal, FinSet, JointState, Kernel};
use crate::random;

const ATOL: f64 = 1e-9;

fn bit(l: &str) -> FinSet {
    FinSet::range(l, 2).unwrap()
}

fn chain_state(probs: Vec<f64>) -> JointState {
    JointState::from_probs([("X", bit("X")), ("Y", bit("Y")), ("Z", bit("Z"))], probs).unwrap()
}

/// A chain joint where `Z` depends on `X` directly.
fn chain_violation() -> JointState {
    let mut t = vec![0.0; 8];
    for x in 0..2 {
        for y in 0..2 {
            for z in 0..2 {
                let pz = if z == x { 0.9 } else { 0.1 };
                t[x * 4 + y * 2 + z] = 0.25 * pz;
            }
        }
    }
    chain_state(t)
}

#[test]
fn chain_local_conditions() {
    let m = examples::chain3();
    let p = chain_violation();
    let checks = local_markov_checks(&p, &m).unwrap();
    let names: Vec<String> = checks.iter().map(ToString::to_string).collect();
    assert_eq!(names, ["local alpha: X⊥∅", "local beta: Y⊥∅|X", "local gamma: Z⊥X|Y"]);
    assert!(checks[2].residual > 0.01);
    assert!(!check_local_markov(&p, &m, ATOL).unwrap());
    assert!(!check_ordered_markov(&p, &m, &default_timing(&m).unwrap(), ATOL).unwrap());
    assert!(!check_compatible(&p, &m, ATOL).unwrap());
}

#[test]
fn product_joint_is_compatible_with_anything() {
    let px = [0.3, 0.7];
    let py = [0.6, 0.4];
    let pz = [0.5, 0.5];
    let mut t = Vec::new();
    for a in px {
        for b in py {
            for c in pz {
                t.push(a * b * c);
            }
        }
    }
    let p = chain_state(t);
    let m = examples::chain3();
    assert!(check_local_markov(&p, &m, ATOL).unwrap());
    assert!(check_ordered_markov(&p, &m, &default_timing(&m).unwrap(), ATOL).unwrap());
    assert!(check_compatible(&p, &m, ATOL).unwrap());
}

#[test]
fn ci_satisfying_chain_factorizes() {
    let m = examples::chain3();
    let mut t = vec![0.0; 8];
    let (px, f, g) = ([0.45, 0.55], [[0.2, 0.8], [0.7, 0.3]], [[0.35, 0.65], [0.9, 0.1]]);
    for x in 0..2 {
        for y in 0..2 {
            for z in 0..2 {
                t[x * 4 + y * 2 + z] = px[x] * f[x][y] * g[y][z];
            }
        }
    }
    let p = chain_state(t);
    let asg = factorize(&p, &m, &default_timing(&m).unwrap()).unwrap();
    assert!(recompose(&m, &asg).unwrap().max_abs_diff(&p).unwrap() < 1e-15);
    assert!((asg.kernels["beta"].get(1, 0) - 0.7).abs() < 1e-15);
}

#[test]
fn wire_mismatch_is_an_error() {
    let p = JointState::from_probs([("X", bit("X")), ("Y", bit("Y"))], vec![0.25; 4]).unwrap();
    assert!(matches!(check_local_markov(&p, &examples::chain3(), ATOL), Err(Error::WireMismatch(_))));
}

#[test]
fn invalid_timing_is_an_error() {
    let m = examples::chain3();
    let p = chain_violation();
    let tau = TimingFunction::new([("alpha", 2), ("beta", 2), ("gamma", 3)]);
    assert!(matches!(check_ordered_markov(&p, &m, &tau, ATOL), Err(Error::InvalidTiming(_))));
    assert!(matches!(factorize(&p, &m, &tau), Err(Error::InvalidTiming(_))));
}

#[test]
fn ties_peel_the_smallest_name_first() {
    // Two independent roots; both kernels are just the marginals.
    let m = CausalModel::new(["U", "V"], vec![ModelBox::new("b", [], ["V"]), ModelBox::new("a", [], ["U"])]);
    let p = JointState::from_probs([("U", bit("U")), ("V", bit("V"))], vec![0.1, 0.2, 0.3, 0.4]).unwrap();
    let asg = factorize(&p, &m, &default_timing(&m).unwrap()).unwrap();
    // `a` is peeled first from the full joint, `b` from the remainder.
    assert!((asg.kernels["a"].get(0, 0) - 0.3).abs() < 1e-15);
    assert!((asg.kernels["b"].get(0, 0) - 0.4).abs() < 1e-15);
}

#[test]
fn random_recompositions_satisfy_everything() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let m = random::model(&mut rng, 4, 2);
        let asg = random::assignment(&mut rng, &m, 3, 0.2);
        let p = recompose(&m, &asg).unwrap();
        assert!(check_local_markov(&p, &m, 1e-9).unwrap());
        for tau in enumerate_timings(&m, m.boxes().len() as u32) {
            assert!(check_ordered_markov(&p, &m, &tau, 1e-9).unwrap());
        }
        assert!(compatibility_residual(&p, &m).unwrap() <= 1e-9);
    }
}

#[test]
fn factorize_recovers_kernels_almost_surely() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let m = random::model(&mut rng, 4, 2);
        let asg = random::assignment(&mut rng, &m, 3, 0.3);
        let p = recompose(&m, &asg).unwrap();
        let back = factorize(&p, &m, &default_timing(&m).unwrap()).unwrap();
        for b in m.boxes() {
            let input = if b.inputs.is_empty() {
                Kernel::state(Vec::new(), vec![1.0]).unwrap()
            } else {
                p.marginalize(&b.inputs).unwrap().into_kernel()
            };
            assert!(as_equal(&asg.kernels[&b.name], &back.kernels[&b.name], &input, 1e-9).unwrap());
        }
    }
}

#[test]
fn perturbed_joints_agree_across_predicates() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let m = random::model(&mut rng, 4, 2);
        let asg = random::assignment(&mut rng, &m, 3, 0.0);
        let p = random::perturb(&mut rng, &recompose(&m, &asg).unwrap(), 0.3);
        let tau = default_timing(&m).unwrap();
        let c = check_compatible(&p, &m, 1e-7).unwrap();
        let l = check_local_markov(&p, &m, 1e-7).unwrap();
        let o = check_ordered_markov(&p, &m, &tau, 1e-7).unwrap();
        assert_eq!((c, l), (o, o), "model {m:?}");
    }
}
