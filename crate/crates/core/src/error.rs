use thiserror::Error;

/// Errors raised by the kernel, independence, model and array operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid finite set `{label}`: {reason}")]
    InvalidFinSet { label: String, reason: String },

    #[error("invalid kernel: {0}")]
    InvalidKernel(String),

    #[error("domain mismatch: {0}")]
    DomainMismatch(String),

    #[error("unknown wire `{0}`")]
    UnknownWire(String),

    #[error("wire `{0}` is used by more than one argument")]
    WireOverlap(String),

    #[error("wire mismatch: {0}")]
    WireMismatch(String),

    #[error("not a partition: {0}")]
    NotAPartition(String),

    #[error("parameter mismatch: {0}")]
    ParamMismatch(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("state space has {entries} entries, over the cap of {cap}")]
    SizeLimit { entries: u128, cap: usize },

    #[error("invalid timing function: {0}")]
    InvalidTiming(String),

    #[error("unknown node `{0}`")]
    UnknownNode(String),

    #[error("bad wire naming: {0}")]
    BadWireNaming(String),

    #[error("invalid statement: {0}")]
    InvalidStatement(String),

    #[error("invalid model: {0}")]
    InvalidModel(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
