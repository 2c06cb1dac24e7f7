//! Generalized causal models as a flat, serializable IR.

mod ah;
pub mod examples;
mod graph;
mod model;
mod timing;

pub use ah::{c_wire, expand_ah_model, expand_ah_model_rect, r_wire, s_wire, t_wire};
pub use graph::{descendants, non_descendants, reaches, Node};
pub use model::{validate_model, CausalModel, ModelBox, Violation, ViolationKind};
pub use timing::{default_timing, enumerate_timings, past, TimingFunction};
