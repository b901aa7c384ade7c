use thiserror::Error;

#[derive(Debug, Error)]
pub enum QwcError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("position {position} out of range for a cycle of {n_nodes} nodes")]
    PositionOutOfRange { position: usize, n_nodes: usize },

    #[error("momentum index {k} out of range for a cycle of {n_nodes} nodes")]
    MomentumOutOfRange { k: usize, n_nodes: usize },

    #[error("initial state has zero norm")]
    ZeroNorm,

    #[error("blocks k={k} and k'={k_prime} share no eigenvalue")]
    NotDegenerate { k: usize, k_prime: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = QwcError> = std::result::Result<T, E>;
