use super::model::{CausalModel, ModelBox};

pub fn t_wire() -> String {
    "T".to_string()
}

pub fn r_wire(i: usize) -> String {
    format!("R[{i}]")
}

pub fn c_wire(j: usize) -> String {
    format!("C[{j}]")
}

pub fn s_wire(i: usize, j: usize) -> String {
    format!("S[{i},{j}]")
}

/// The Aldous–Hoover plate model for an `n × n` array.
pub fn expand_ah_model(n: usize) -> CausalModel {
    expand_ah_model_rect(n, n)
}

/// `α → T`, `β[i]: T → R[i]`, `γ[j]: T → C[j]` and
/// `η[i,j]: (R[i], T, C[j]) → S[i,j]`, indices 1-based.
pub fn expand_ah_model_rect(rows: usize, cols: usize) -> CausalModel {
    let mut wires = vec![t_wire()];
    let mut boxes = vec![ModelBox::new("alpha", Vec::<String>::new(), vec![t_wire()])];
    for i in 1..=rows {
        wires.push(r_wire(i));
        boxes.push(ModelBox::new(format!("beta[{i}]"), vec![t_wire()], vec![r_wire(i)]));
    }
    for j in 1..=cols {
        wires.push(c_wire(j));
        boxes.push(ModelBox::new(format!("gamma[{j}]"), vec![t_wire()], vec![c_wire(j)]));
    }
    for i in 1..=rows {
        for j in 1..=cols {
            wires.push(s_wire(i, j));
            boxes.push(ModelBox::new(
                format!("eta[{i},{j}]"),
                vec![r_wire(i), t_wire(), c_wire(j)],
                vec![s_wire(i, j)],
            ));
        }
    }
    CausalModel::new(wires, boxes)
}
