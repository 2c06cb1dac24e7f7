//! Conditional independence: numeric checks on joint states and symbolic
//! reasoning with semigraphoid rules.

mod check;
mod closure;
mod derivation;
mod partition;
mod rules;
mod statement;

pub use check::{check_ci, check_mutual_ci, ci_residual, mutual_ci_residual, statement_residual};
pub use closure::{semigraphoid_closure, Closure, ClosureError};
pub use derivation::{validate_derivation, Derivation, DerivationError, Step};
pub use partition::{check_partition_lemma, meet, PartitionReport};
pub use rules::{check_instance, copy_symbol, Rule};
pub use statement::{CIStatement, Symbols};
