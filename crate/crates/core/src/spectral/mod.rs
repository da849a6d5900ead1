//! Graph Fourier bases, diagonal spectral filters and their polynomial
//! realization in the vertex domain.

mod basis;
mod chebyshev;
mod filter;

pub use basis::{dft_basis, eigendecompose, symmetric_eigenbasis, Scalar, SpectralBasis};
pub(crate) use basis::scale_by;
pub use chebyshev::{apply_chebyshev, chebyshev_fit, ChebyshevFilter, GRID_POINTS};
pub use filter::{
    bandlimited, bipartite_recovery, cosine_rolloff, exp_decay, linear_decay, smoothness_weight, Response,
    SpectralFilter, EXP_DECAY_RATE,
};
