//! Generalized sampling of graph signals in the graph frequency domain.
//!
//! A signal is transformed with the graph Fourier transform (GFT), weighted
//! by a sampling filter and folded onto `K = N / M` frequency bins. Recovery
//! applies a diagonal correction filter to the folded spectrum, replicates it
//! periodically back to `N` bins and weights it with a reconstruction filter.
//! Every correction filter therefore has a closed-form response built from
//! sampled cross-correlations of the filters involved.
//!
//! Modules:
//!
//! - [`graph`]: graphs, Laplacians, Kron reduction and random generators.
//! - [`spectral`]: eigenbases, GFT, spectral filters and Chebyshev filtering.
//! - [`sampling`]: vertex and graph-frequency sampling operators.
//! - [`recovery`]: periodic graph spectrum (PGS) signals and correction filter designs.
//! - [`bipartite`]: vertex-domain realization of frequency sampling on bipartite graphs.
//!
//! The crate is `no_std` (with `alloc`) when the default `std` feature is disabled.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod bipartite;
mod error;
pub mod graph;
pub mod recovery;
pub mod sampling;
pub mod spectral;

pub use error::{Error, Result};

pub use nalgebra::{Complex, DMatrix, DVector};
