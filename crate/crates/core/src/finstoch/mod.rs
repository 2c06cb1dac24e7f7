//! Finite stochastic kernels with their Markov-category structure.

mod cauchy_schwarz;
mod conditional;
mod finset;
pub(crate) mod index;
mod joint;
mod json;
mod kernel;
mod param;

pub use cauchy_schwarz::{
    as_equal, as_residual, cs_check, inner_composite, pair_with, CsReport, CsTolerance, CS_ANTECEDENT_ATOL,
    CS_CONSEQUENT_ATOL,
};
pub use conditional::{conditional, conditional_residual, recompose_conditional};
pub use finset::FinSet;
pub use joint::JointState;
pub use json::KernelFile;
pub use kernel::{compose, copy_naturality_residual, is_deterministic, tensor, Kernel, Structural};
pub use param::{param_as_residual, param_cs_check, parametric_compose, parametric_tensor, ParamKernel};

/// Absolute tolerance for stochasticity and equality checks.
pub const DEFAULT_ATOL: f64 = 1e-9;

/// Largest number of entries a constructed joint state may have.
pub const DEFAULT_STATE_CAP: usize = 1 << 20;

/// Fails with `SizeLimit` when a joint over `carriers` would exceed `cap`.
pub fn check_size(carriers: &[FinSet], cap: usize) -> crate::Result<()> {
    let entries = JointState::entry_count(carriers);
    if entries > cap as u128 {
        return Err(crate::Error::SizeLimit { entries, cap });
    }
    Ok(())
}
