//! Random instances for property tests, benchmarks and the acceptance suite.

use rand::Rng;

use crate::causal::{CausalModel, ModelBox};
use crate::exchange::AhSpec;
use crate::finstoch::{index, FinSet, JointState, Kernel};
use crate::markov::BoxAssignment;

/// A probability vector of length `n`. Each entry is zeroed with
/// probability `zero_prob`, but at least one entry stays positive.
pub fn probs<R: Rng + ?Sized>(rng: &mut R, n: usize, zero_prob: f64) -> Vec<f64> {
    let mut w: Vec<f64> =
        (0..n).map(|_| if rng.gen_bool(zero_prob) { 0.0 } else { rng.gen_range(0.05..1.0) }).collect();
    if w.iter().all(|&v| v == 0.0) {
        w[rng.gen_range(0..n)] = 1.0;
    }
    let total: f64 = w.iter().sum();
    w.iter_mut().for_each(|v| *v /= total);
    w
}

pub fn finset(label: &str, n: usize) -> FinSet {
    FinSet::range(label, n).expect("positive size")
}

/// `count` carriers labelled `{prefix}{i}` with sizes in `1..=max_size`.
pub fn carriers<R: Rng + ?Sized>(rng: &mut R, prefix: &str, count: usize, max_size: usize) -> Vec<FinSet> {
    (0..count).map(|i| finset(&format!("{prefix}{i}"), rng.gen_range(1..=max_size))).collect()
}

pub fn kernel<R: Rng + ?Sized>(rng: &mut R, dom: &[FinSet], cod: &[FinSet], zero_prob: f64) -> Kernel {
    let (rows, cols) = (index::product(&index::sizes(dom)), index::product(&index::sizes(cod)));
    let data = (0..rows).flat_map(|_| probs(rng, cols, zero_prob)).collect();
    Kernel::from_flat(dom.to_vec(), cod.to_vec(), data, 1e-9).expect("rows are normalized")
}

pub fn state<R: Rng + ?Sized>(rng: &mut R, cod: &[FinSet], zero_prob: f64) -> Kernel {
    kernel(rng, &[], cod, zero_prob)
}

/// A kernel with 0/1 rows.
pub fn deterministic<R: Rng + ?Sized>(rng: &mut R, dom: &[FinSet], cod: &[FinSet]) -> Kernel {
    let (rows, cols) = (index::product(&index::sizes(dom)), index::product(&index::sizes(cod)));
    let mut data = vec![0.0; rows * cols];
    for r in 0..rows {
        data[r * cols + rng.gen_range(0..cols)] = 1.0;
    }
    Kernel::from_flat(dom.to_vec(), cod.to_vec(), data, 1e-9).expect("rows are one-hot")
}

/// Joint state over wires `w0, w1, ...` with the given carriers.
pub fn joint<R: Rng + ?Sized>(rng: &mut R, carriers: &[FinSet], zero_prob: f64) -> JointState {
    let k = state(rng, carriers, zero_prob);
    JointState::new(k, (0..carriers.len()).map(|i| format!("w{i}")).collect()).expect("fresh names")
}

/// Convex mixture `(1 - eps) p + eps r` with a fresh full-support `r`.
pub fn perturb<R: Rng + ?Sized>(rng: &mut R, p: &JointState, eps: f64) -> JointState {
    let noise = probs(rng, p.len(), 0.0);
    let data: Vec<f64> = p.probs().iter().zip(&noise).map(|(a, b)| (1.0 - eps) * a + eps * b).collect();
    JointState::new(
        Kernel::from_flat(Vec::new(), p.carriers().to_vec(), data, 1e-9).expect("mixture of states"),
        p.wires().to_vec(),
    )
    .expect("same wires")
}

/// DAG-like model with `1..=max_boxes` boxes `b0, b1, ...`, each producing
/// `1..=max_outputs` fresh wires and reading each earlier wire with
/// probability one half.
pub fn model<R: Rng + ?Sized>(rng: &mut R, max_boxes: usize, max_outputs: usize) -> CausalModel {
    let n_boxes = rng.gen_range(1..=max_boxes);
    let mut wires: Vec<String> = Vec::new();
    let mut boxes = Vec::new();
    for b in 0..n_boxes {
        let inputs: Vec<String> = wires.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect();
        let outputs: Vec<String> =
            (0..rng.gen_range(1..=max_outputs)).map(|k| format!("w{}", wires.len() + k)).collect();
        wires.extend(outputs.iter().cloned());
        boxes.push(ModelBox::new(format!("b{b}"), inputs, outputs));
    }
    CausalModel::new(wires, boxes)
}

/// Random carriers with sizes in `1..=max_carrier` and random kernels for
/// every box of `m`.
pub fn assignment<R: Rng + ?Sized>(
    rng: &mut R,
    m: &CausalModel,
    max_carrier: usize,
    zero_prob: f64,
) -> BoxAssignment {
    let mut asg = BoxAssignment::default();
    for w in m.wires() {
        asg.carriers.insert(w.clone(), finset(w, rng.gen_range(1..=max_carrier)));
    }
    for b in m.boxes() {
        let pick = |ws: &[String]| -> Vec<FinSet> { ws.iter().map(|w| asg.carriers[w].clone()).collect() };
        let (dom, cod) = (pick(&b.inputs), pick(&b.outputs));
        let k = kernel(rng, &dom, &cod, zero_prob);
        asg.kernels.insert(b.name.clone(), k);
    }
    asg
}

/// Random weak Aldous–Hoover data with every carrier of size
/// `1..=max_size`.
pub fn ah_spec<R: Rng + ?Sized>(
    rng: &mut R,
    rows: usize,
    cols: usize,
    max_size: usize,
    zero_prob: f64,
) -> AhSpec {
    let mut pick = |label: &str| finset(label, rng.gen_range(1..=max_size));
    let (a, b, c, x) = (pick("A"), pick("B"), pick("C"), pick("X"));
    let q = state(rng, std::slice::from_ref(&a), zero_prob);
    let f = kernel(rng, std::slice::from_ref(&a), std::slice::from_ref(&b), zero_prob);
    let g = kernel(rng, std::slice::from_ref(&a), std::slice::from_ref(&c), zero_prob);
    let h = kernel(rng, &[b, a, c], &[x], zero_prob);
    AhSpec::new(q, f, g, h, rows, cols).expect("shapes agree by construction")
}
