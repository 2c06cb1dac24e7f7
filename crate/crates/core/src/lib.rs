//! Exact finite-state checking for Markov categories.
//!
//! Kernels between finite sets form a Markov category with conditionals.
//! This crate realizes that structure densely and builds on it:
//!
//! - [`finstoch`]: kernels, copy/discard, conditionals, almost-sure
//!   equality and the Cauchy–Schwarz implication, parametric composition.
//! - [`ci`]: conditional independence on joint states, the partition lemma,
//!   semigraphoid derivations and forward-chaining closure.
//! - [`causal`]: DAG-like causal models, reachability, timing functions and
//!   the Aldous–Hoover plate model.
//! - [`markov`]: local and ordered Markov properties and the constructive
//!   factorization of compatible states.
//! - [`exchange`]: de Finetti and Aldous–Hoover generative joints at finite
//!   truncation, with exchangeability checks.
//! - [`noise`]: quantile functions that outsource a kernel's randomness to a
//!   uniform seed.

pub mod causal;
pub mod ci;
mod error;
pub mod exchange;
pub mod finstoch;
pub mod markov;
pub mod noise;
pub mod random;

pub use causal::{CausalModel, ModelBox, Node, TimingFunction};
pub use ci::{CIStatement, Derivation, Rule};
pub use error::{Error, Result};
pub use exchange::{AhSpec, PermSpec};
pub use finstoch::{FinSet, JointState, Kernel, ParamKernel, DEFAULT_ATOL};
pub use markov::BoxAssignment;
pub use noise::QuantileFunction;
