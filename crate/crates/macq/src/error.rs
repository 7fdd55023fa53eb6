//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A parameter is outside its documented range (bad vertex index,
    /// skeleton dimension, ambient mismatch, malformed input file, ...).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A computation would exceed a configured size bound
    /// (`MACQ_MAX_CELLS`, the Hochster vertex bound, sweep bounds).
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    /// A chain complex whose differentials do not compose to zero.
    #[error("inconsistent complex: {0}")]
    InconsistentComplex(String),

    /// The circle action fixes a point; carries the violating facet and
    /// the weight gcd over its complement.
    #[error("action is not free: facet {{{facet}}} has complement weight gcd {gcd}")]
    NotFree { facet: String, gcd: u64 },

    /// No coordinate with weight +/-1, so the pivoting construction of the
    /// quotient matrix does not apply.
    #[error("no weight of absolute value 1: {0}")]
    Normalization(String),

    /// A caller obligation was violated (ghost-vertex reduction on a
    /// non-ghost vertex, quotient of a non-free action, ...).
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The expression lies outside the fragment a symbolic rewrite supports.
    #[error("unsupported form: {0}")]
    UnsupportedForm(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
