//! Markov properties of joint states relative to causal models, and the
//! constructive equivalence with compatibility.

mod assignment;
mod factorize;
mod properties;

pub use assignment::{recompose, BoxAssignment};
pub use factorize::{check_compatible, compatibility_residual, factorize};
pub use properties::{
    check_local_markov, check_ordered_markov, local_markov_checks, ordered_markov_checks, BoxCheck,
    MarkovKind,
};

#[cfg(test)]
mod tests;
