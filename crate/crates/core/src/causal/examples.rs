//! Small models used in tests, the CLI fixtures and documentation.

use super::model::{CausalModel, ModelBox};

/// `α → X → β → Y → γ → Z`.
pub fn chain3() -> CausalModel {
    CausalModel::new(
        ["X", "Y", "Z"],
        vec![
            ModelBox::new("alpha", [], ["X"]),
            ModelBox::new("beta", ["X"], ["Y"]),
            ModelBox::new("gamma", ["Y"], ["Z"]),
        ],
    )
}

/// `α` emits `A` and `W`; `β: A → X`, `γ: W → B`, `η: X → Y`, `μ: B → Z`.
pub fn triangle() -> CausalModel {
    CausalModel::new(
        ["A", "B", "W", "X", "Y", "Z"],
        vec![
            ModelBox::new("alpha", vec![], vec!["A", "W"]),
            ModelBox::new("beta", vec!["A"], vec!["X"]),
            ModelBox::new("gamma", vec!["W"], vec!["B"]),
            ModelBox::new("eta", vec!["X"], vec!["Y"]),
            ModelBox::new("mu", vec!["B"], vec!["Z"]),
        ],
    )
}

/// `α → X → β → Y` where only `Y` leaves the diagram.
pub fn non_pure_bloom() -> CausalModel {
    CausalModel::with_outputs(
        ["X", "Y"],
        vec![ModelBox::new("alpha", [], ["X"]), ModelBox::new("beta", ["X"], ["Y"])],
        ["Y"],
    )
}
