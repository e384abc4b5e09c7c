use num_complex::Complex64;

use crate::Parity;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("gamma = {0} lies on a branch cut")]
    OnCut(Complex64),

    #[error("pole at gamma = 0")]
    Pole,

    #[error("the homogeneous limit at gamma = 0 depends on the approach direction")]
    NeedsDirection,

    #[error("horospherical index {h} has the wrong parity for a vertex in {parity}")]
    ParityMismatch { h: i64, parity: Parity },

    #[error("capacity exceeded: {needed} > {limit}")]
    Capacity { needed: u128, limit: u128 },

    #[error("series does not converge at |gamma| = {0}")]
    Divergent(f64),

    #[error("{0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
