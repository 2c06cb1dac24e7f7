use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::causal::{CausalModel, ModelBox};
use crate::error::{Error, Result};
use crate::finstoch::{check_size, index, FinSet, JointState, Kernel, DEFAULT_STATE_CAP};

/// A carrier for every wire and a kernel for every box.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct BoxAssignment {
    pub carriers: BTreeMap<String, FinSet>,
    pub kernels: BTreeMap<String, Kernel>,
}

impl BoxAssignment {
    fn carriers_of(&self, wires: &[String]) -> Result<Vec<FinSet>> {
        wires
            .iter()
            .map(|w| {
                self.carriers
                    .get(w)
                    .cloned()
                    .ok_or_else(|| Error::ShapeMismatch(format!("no carrier for wire `{w}`")))
            })
            .collect()
    }

    pub fn kernel(&self, b: &str) -> Result<&Kernel> {
        self.kernels.get(b).ok_or_else(|| Error::ShapeMismatch(format!("no kernel for box `{b}`")))
    }

    /// Each box's kernel must map its input carriers to its output carriers.
    pub fn validate(&self, m: &CausalModel) -> Result<()> {
        self.carriers_of(m.wires())?;
        for b in m.boxes() {
            let k = self.kernel(&b.name)?;
            let (dom, cod) = (self.carriers_of(&b.inputs)?, self.carriers_of(&b.outputs)?);
            if k.dom() != dom.as_slice() || k.cod() != cod.as_slice() {
                return Err(Error::ShapeMismatch(format!(
                    "box `{}` expects {}, kernel is {}",
                    b.name,
                    signature(&dom, &cod),
                    k.signature()
                )));
            }
        }
        if let Some(extra) = self.kernels.keys().find(|k| m.get_box(k).is_err()) {
            return Err(Error::ShapeMismatch(format!("`{extra}` is not a box of the model")));
        }
        Ok(())
    }
}

fn signature(dom: &[FinSet], cod: &[FinSet]) -> String {
    let side = |fs: &[FinSet]| {
        if fs.is_empty() {
            "I".to_string()
        } else {
            fs.iter().map(|f| f.label()).collect::<Vec<_>>().join("⊗")
        }
    };
    format!("{} → {}", side(dom), side(cod))
}

/// Extends a joint over `wires` by sampling `b`'s outputs from `k` given the
/// current values of its inputs.
fn extend(data: &[f64], carriers: &[FinSet], wires: &[String], b: &ModelBox, k: &Kernel) -> Vec<f64> {
    let sizes = index::sizes(carriers);
    let in_pos: Vec<usize> = b
        .inputs
        .iter()
        .map(|w| wires.iter().position(|v| v == w).expect("inputs precede consumers"))
        .collect();
    let in_strides = index::strides(&in_pos.iter().map(|&p| sizes[p]).collect::<Vec<_>>());
    let n_out = k.n_cols();
    let mut out = vec![0.0; data.len() * n_out];
    let mut digits = vec![0; sizes.len()];
    for (flat, &p) in data.iter().enumerate() {
        if p == 0.0 {
            continue;
        }
        index::decode(flat, &sizes, &mut digits);
        let row: usize = in_pos.iter().zip(&in_strides).map(|(&i, &s)| digits[i] * s).sum();
        for (slot, &q) in out[flat * n_out..(flat + 1) * n_out].iter_mut().zip(k.row(row)) {
            *slot = p * q;
        }
    }
    out
}

/// Evaluates the model in topological order, returning the exact joint over
/// all wires in the model's overall-output order.
pub fn recompose(m: &CausalModel, asg: &BoxAssignment) -> Result<JointState> {
    m.ensure_valid()?;
    asg.validate(m)?;
    check_size(&asg.carriers_of(m.wires())?, DEFAULT_STATE_CAP)?;
    let mut wires: Vec<String> = Vec::new();
    let mut carriers: Vec<FinSet> = Vec::new();
    let mut data = vec![1.0];
    for b in m.topological_order()? {
        let k = asg.kernel(&b.name)?;
        data = extend(&data, &carriers, &wires, b, k);
        wires.extend(b.outputs.iter().cloned());
        carriers.extend(k.cod().iter().cloned());
    }
    JointState::from_parts(carriers, wires, data).reindex(m.outputs())
}

#[cfg(test)]
#[allow(clippy::needless_range_loop)]
mod tests {
    use super::*;
    use crate::causal::examples;

    fn bit(l: &str) -> FinSet {
        FinSet::range(l, 2).unwrap()
    }

    fn chain_asg(px: [f64; 2], f: [[f64; 2]; 2], g: [[f64; 2]; 2]) -> BoxAssignment {
        let mut asg = BoxAssignment::default();
        for w in ["X", "Y", "Z"] {
            asg.carriers.insert(w.into(), bit(w));
        }
        asg.kernels.insert("alpha".into(), Kernel::state(vec![bit("X")], px.to_vec()).unwrap());
        asg.kernels.insert(
            "beta".into(),
            Kernel::new(vec![bit("X")], vec![bit("Y")], f.iter().map(|r| r.to_vec()).collect()).unwrap(),
        );
        asg.kernels.insert(
            "gamma".into(),
            Kernel::new(vec![bit("Y")], vec![bit("Z")], g.iter().map(|r| r.to_vec()).collect()).unwrap(),
        );
        asg
    }

    #[test]
    fn single_box_returns_its_state() {
        let m = CausalModel::new(["X"], vec![ModelBox::new("a", [], ["X"])]);
        let mut asg = BoxAssignment::default();
        asg.carriers.insert("X".into(), bit("X"));
        asg.kernels.insert("a".into(), Kernel::state(vec![bit("X")], vec![0.25, 0.75]).unwrap());
        assert_eq!(recompose(&m, &asg).unwrap().probs(), [0.25, 0.75]);
    }

    #[test]
    fn identity_chain_is_diagonal() {
        let id = [[1.0, 0.0], [0.0, 1.0]];
        let p = recompose(&examples::chain3(), &chain_asg([0.4, 0.6], id, id)).unwrap();
        assert_eq!(p.wires(), ["X", "Y", "Z"]);
        let mut expected = vec![0.0; 8];
        expected[0] = 0.4;
        expected[7] = 0.6;
        assert_eq!(p.probs(), expected.as_slice());
    }

    #[test]
    fn chain_matches_chain_rule() {
        let (px, f, g) = ([0.2, 0.8], [[0.3, 0.7], [0.6, 0.4]], [[0.9, 0.1], [0.5, 0.5]]);
        let p = recompose(&examples::chain3(), &chain_asg(px, f, g)).unwrap();
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    let oracle = px[x] * f[x][y] * g[y][z];
                    assert!((p.prob(&[x, y, z]) - oracle).abs() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn shape_errors() {
        let m = examples::chain3();
        let mut asg = chain_asg([0.5, 0.5], [[1.0, 0.0]; 2], [[1.0, 0.0]; 2]);
        asg.kernels.remove("gamma");
        assert!(matches!(recompose(&m, &asg), Err(Error::ShapeMismatch(_))));
        let mut asg = chain_asg([0.5, 0.5], [[1.0, 0.0]; 2], [[1.0, 0.0]; 2]);
        asg.kernels.insert("gamma".into(), Kernel::identity(&[bit("Z")]));
        assert!(matches!(recompose(&m, &asg), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn json_round_trip() {
        let asg = chain_asg([0.2, 0.8], [[0.3, 0.7], [0.6, 0.4]], [[0.9, 0.1], [0.5, 0.5]]);
        let s = serde_json::to_string(&asg).unwrap();
        let back: BoxAssignment = serde_json::from_str(&s).unwrap();
        assert_eq!(back, asg);
    }
}
