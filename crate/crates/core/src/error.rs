use thiserror::Error;

/// Errors raised by the workbench.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid lattice configuration: {0}")]
    InvalidConfig(String),

    #[error("mode index {j} out of range (|j| <= {n_max})")]
    IndexOutOfRange { j: i64, n_max: usize },

    #[error("lattice mismatch: {0}")]
    LatticeMismatch(String),

    #[error("harmonic {n} out of range (|n| <= {limit})")]
    HarmonicOutOfRange { n: i64, limit: usize },

    #[error("invalid smearing function: {0}")]
    InvalidSmearing(String),

    #[error("term has no delta factor in `{var}`: {term}")]
    MissingDelta { var: String, term: String },

    #[error("enumeration over {slots} slots exceeds the bound of {limit}")]
    EnumerationBound { slots: usize, limit: usize },

    #[error("quadrature did not converge: estimated error {achieved:e} > tolerance {tolerance:e}")]
    Quadrature { achieved: f64, tolerance: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
