//! Exchangeable sequences and arrays at finite truncation, built from their
//! generative representations with explicit latent wires.

mod build;
mod invariance;
mod lemmas;
mod spec;

pub use build::{build_ah_joint, build_ah_joint_capped, build_definetti_joint, x_wire};
pub use invariance::{
    adjacent_transpositions, as_invariance_residuals, check_as_invariance, check_invariance, grid_generators,
    invariance_residuals, PermSpec, PermTarget,
};
pub use lemmas::{verify_ah_lemmas, verify_ah_lemmas_on, AhLemmaReport, LemmaCheck};
pub use spec::AhSpec;
