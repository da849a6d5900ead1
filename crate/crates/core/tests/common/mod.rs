#![allow(dead_code)]

use gsamp_core::graph::{combinatorial_laplacian, gen_random_sensor, normalized_laplacian, Graph};
use gsamp_core::spectral::{eigendecompose, SpectralBasis, SpectralFilter};
use gsamp_core::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn sensor_basis(n: usize, seed: u64, normalized: bool) -> (Graph, SpectralBasis<f64>) {
    let g = gen_random_sensor(n, seed).unwrap();
    let op = if normalized { normalized_laplacian(&g).unwrap() } else { combinatorial_laplacian(&g) };
    let b = eigendecompose(&op).unwrap();
    (g, b)
}

/// Entries uniform in `[lo, hi)`.
pub fn random_filter(r: &mut ChaCha8Rng, n: usize, lo: f64, hi: f64) -> SpectralFilter {
    SpectralFilter::from_values((0..n).map(|_| r.random_range(lo..hi)).collect()).unwrap()
}

pub fn random_vector(r: &mut ChaCha8Rng, n: usize) -> DVector<f64> {
    DVector::from_fn(n, |_, _| r.random_range(-1.0..1.0))
}

/// `[I_K I_K ... I_K]`, `K x N`.
pub fn d_samp(n: usize, k: usize) -> DMatrix<f64> {
    DMatrix::from_fn(k, n, |r, c| if c % k == r { 1.0 } else { 0.0 })
}

pub fn diag(f: &SpectralFilter) -> DMatrix<f64> {
    DMatrix::from_diagonal(&DVector::from_column_slice(f.values()))
}

/// `U diag(f) D_samp^T`: the `N x K` operator spanning the subspace generated by `f`.
pub fn generator_op(u: &DMatrix<f64>, f: &SpectralFilter, k: usize) -> DMatrix<f64> {
    u * diag(f) * d_samp(u.nrows(), k).transpose()
}

pub fn inv(m: &DMatrix<f64>) -> DMatrix<f64> {
    m.clone().try_inverse().expect("invertible")
}

pub fn max_abs_diff(a: &DVector<f64>, b: &DVector<f64>) -> f64 {
    (a - b).amax()
}
