#![allow(dead_code)]

use finmarkov::random;
use finmarkov::FinSet;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Between `min` and `max` factors labelled `{prefix}{i}`, sizes `1..=max_size`.
pub fn factors(rng: &mut ChaCha8Rng, prefix: &str, min: usize, max: usize, max_size: usize) -> Vec<FinSet> {
    let n = rng.gen_range(min..=max);
    random::carriers(rng, prefix, n, max_size)
}

/// A uniformly random subset of `items` as a vector, in random order.
pub fn shuffled<T: Clone>(rng: &mut ChaCha8Rng, items: &[T]) -> Vec<T> {
    let mut v = items.to_vec();
    v.shuffle(rng);
    v
}

/// Wire names `w0..w{n-1}`.
pub fn wires(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("w{i}")).collect()
}

/// A joint in which the `blocks` are mutually independent given `given`:
/// one source box emits `given`, one box per block reads it.
pub fn conditional_product(
    rng: &mut ChaCha8Rng,
    blocks: &[Vec<String>],
    given: &[String],
    max_size: usize,
    zero_prob: f64,
) -> finmarkov::JointState {
    use finmarkov::{CausalModel, ModelBox};
    let mut boxes = Vec::new();
    if !given.is_empty() {
        boxes.push(ModelBox::new("src", Vec::<String>::new(), given.to_vec()));
    }
    for (i, b) in blocks.iter().enumerate() {
        boxes.push(ModelBox::new(format!("blk{i}"), given.to_vec(), b.clone()));
    }
    let all: Vec<String> = given.iter().chain(blocks.iter().flatten()).cloned().collect();
    let m = CausalModel::new(all, boxes);
    let asg = random::assignment(rng, &m, max_size, zero_prob);
    finmarkov::markov::recompose(&m, &asg).expect("valid model")
}

/// Splits `items` into `1..=max_blocks` nonempty blocks at random.
pub fn random_partition(rng: &mut ChaCha8Rng, items: &[String], max_blocks: usize) -> Vec<Vec<String>> {
    let k = rng.gen_range(1..=max_blocks.min(items.len()));
    let order = shuffled(rng, items);
    let mut blocks: Vec<Vec<String>> = order[..k].iter().map(|w| vec![w.clone()]).collect();
    for w in &order[k..] {
        let i = rng.gen_range(0..k);
        blocks[i].push(w.clone());
    }
    blocks
}

/// A valid timing: each box gets one more than its latest feeder plus a
/// random slack in `0..=2`.
pub fn random_timing(rng: &mut ChaCha8Rng, m: &finmarkov::CausalModel) -> finmarkov::TimingFunction {
    let mut tau = std::collections::BTreeMap::new();
    for b in m.topological_order().expect("valid model") {
        let base = m
            .boxes()
            .iter()
            .filter(|c| c.outputs.iter().any(|w| b.inputs.contains(w)))
            .map(|c| tau[&c.name])
            .max()
            .unwrap_or(0);
        tau.insert(b.name.clone(), base + 1 + rng.gen_range(0..=2u32));
    }
    finmarkov::TimingFunction::new(tau)
}
