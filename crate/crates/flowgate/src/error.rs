//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{op}: incompatible shapes {lhs:?} and {rhs:?}")]
    ShapeMismatch {
        op: &'static str,
        lhs: Vec<usize>,
        rhs: Vec<usize>,
    },

    #[error("backward requires a scalar loss, got shape {shape:?}")]
    NonScalarLoss { shape: Vec<usize> },

    #[error("{what} is not finite")]
    NonFinite { what: String },

    #[error("non-finite activation in block {block}")]
    NonFiniteActivation { block: usize },

    #[error("fusion alignment: latent has {n_latent} tokens, condition has {n_cond}")]
    FusionAlignment { n_latent: usize, n_cond: usize },

    #[error("class id {id} out of range (n_classes = {n_classes})")]
    ClassOutOfRange { id: usize, n_classes: usize },

    #[error("config error at line {line}: {msg}")]
    Config { line: usize, msg: String },

    #[error("checkpoint: {0}")]
    Checkpoint(String),

    #[error("malformed csv {file} line {line}: {msg}")]
    Csv {
        file: String,
        line: usize,
        msg: String,
    },

    #[error("training diverged at step {step}: loss is not finite")]
    Diverged { step: usize },

    #[error("usage: {0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code per the CLI contract: 1 for usage/config
    /// problems, 2 for runtime failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config { .. } | Error::Usage(_) => 1,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
