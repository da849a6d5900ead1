use alloc::string::String;

/// Errors raised by graph construction, spectral analysis, sampling and recovery.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("vertex {0} has zero degree")]
    IsolatedVertex(usize),

    #[error("interior block is numerically singular (condition estimate {condition:e})")]
    SingularInteriorBlock { condition: f64 },

    #[error("no connected graph after {attempts} attempts")]
    ConnectivityFailure { attempts: usize },

    #[error("eigensolver did not converge")]
    EigensolveFailure,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("sampling ratio {m} does not divide signal length {n}")]
    NonDivisor { n: usize, m: usize },

    #[error("vertex index {index} out of range for {n} vertices")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("Chebyshev interval [{lo}, {hi}] does not cover the operator spectrum (up to {needed})")]
    IntervalMismatch { lo: f64, hi: f64, needed: f64 },

    #[error("direct-sum condition violated at frequency index {index} (|R| = {magnitude:e})")]
    DsConditionViolated { index: usize, magnitude: f64 },

    #[error("sampled cross-correlation vanishes at frequency index {index}")]
    SingularCorrelation { index: usize },

    #[error("reference signal has zero energy")]
    ZeroReference,

    #[error("graph has no bipartition or an edge inside one part")]
    NotBipartite,

    #[error("bipartition parts differ in size ({v1} vs {v2})")]
    UnequalParts { v1: usize, v2: usize },

    #[error("paired eigenbasis residual {residual:e} exceeds tolerance")]
    PairingFailure { residual: f64 },
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

pub(crate) fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
