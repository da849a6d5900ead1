use alloc::vec::Vec;
use core::cmp::Ordering;
use core::f64::consts::PI;

use nalgebra::{Complex, ComplexField, DMatrix, DVector};

use super::SpectralFilter;
use crate::error::{check_len, Error, Result};
use crate::graph::VariationOperator;

/// Scalar type of signals and bases: `f64` for Laplacian eigenbases,
/// `Complex<f64>` for the DFT basis.
pub trait Scalar: ComplexField<RealField = f64> + Copy {}

impl<T: ComplexField<RealField = f64> + Copy> Scalar for T {}

/// Relative gap under which two eigenvalues are treated as one degenerate level.
const TIE_TOLERANCE: f64 = 1e-10;
/// Entries are compared after rounding to this resolution when ordering a degenerate level.
const TIE_ROUNDING: f64 = 1e9;

/// Orthonormal GFT basis: columns of `u` are eigenvectors, `lambdas[i]` the
/// graph frequency of column `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralBasis<T: Scalar = f64> {
    u: DMatrix<T>,
    lambdas: Vec<f64>,
}

impl<T: Scalar> SpectralBasis<T> {
    /// Wraps a basis matrix and its frequencies. Orthonormality is the
    /// caller's responsibility; see [`SpectralBasis::orthonormality_error`].
    pub fn from_parts(u: DMatrix<T>, lambdas: Vec<f64>) -> Result<Self> {
        let n = u.nrows();
        check_len(n, u.ncols())?;
        check_len(n, lambdas.len())?;
        Ok(Self { u, lambdas })
    }

    pub fn len(&self) -> usize {
        self.lambdas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lambdas.is_empty()
    }

    pub fn u(&self) -> &DMatrix<T> {
        &self.u
    }

    pub fn lambdas(&self) -> &[f64] {
        &self.lambdas
    }

    pub fn lambda_max(&self) -> f64 {
        self.lambdas.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Column `i` of the basis.
    pub fn vector(&self, i: usize) -> DVector<T> {
        self.u.column(i).into_owned()
    }

    /// `max |U^H U - I|`.
    pub fn orthonormality_error(&self) -> f64 {
        let gram = self.u.ad_mul(&self.u);
        let n = self.len();
        (gram - DMatrix::<T>::identity(n, n)).iter().map(|v| v.modulus()).fold(0.0, f64::max)
    }

    /// `max |U^H M U - diag(lambdas)|` for a real operator `M`.
    pub fn diagonalization_error(&self, m: &DMatrix<f64>) -> f64 {
        let mt: DMatrix<T> = m.map(T::from_real);
        let d = self.u.ad_mul(&(mt * &self.u));
        let mut err: f64 = 0.0;
        for i in 0..self.len() {
            for j in 0..self.len() {
                let target = if i == j { T::from_real(self.lambdas[i]) } else { T::zero() };
                err = err.max((d[(i, j)] - target).modulus());
            }
        }
        err
    }

    /// `x_hat[i] = <u_i, x>`.
    pub fn gft(&self, x: &DVector<T>) -> Result<DVector<T>> {
        check_len(self.len(), x.len())?;
        Ok(self.u.ad_mul(x))
    }

    /// `x = U x_hat`.
    pub fn igft(&self, xhat: &DVector<T>) -> Result<DVector<T>> {
        check_len(self.len(), xhat.len())?;
        Ok(&self.u * xhat)
    }

    /// `U G(Lambda) U^H x`.
    pub fn apply_filter(&self, f: &SpectralFilter, x: &DVector<T>) -> Result<DVector<T>> {
        check_len(self.len(), f.len())?;
        let mut xhat = self.gft(x)?;
        scale_by(&mut xhat, f.values());
        self.igft(&xhat)
    }

    /// Dense matrix `U G(Lambda) U^H`.
    pub fn filter_matrix(&self, f: &SpectralFilter) -> Result<DMatrix<T>> {
        check_len(self.len(), f.len())?;
        let mut scaled = self.u.clone();
        for (mut col, &g) in scaled.column_iter_mut().zip(f.values()) {
            col *= T::from_real(g);
        }
        Ok(scaled * self.u.adjoint())
    }
}

pub(crate) fn scale_by<T: Scalar>(v: &mut DVector<T>, weights: &[f64]) {
    for (x, &w) in v.iter_mut().zip(weights) {
        *x *= T::from_real(w);
    }
}

/// Eigendecomposition of a variation operator.
///
/// Columns are ordered by ascending eigenvalue. Each eigenvector is signed so
/// that its first nonzero entry is positive, and within a degenerate level
/// the vectors are ordered lexicographically by rounded entries, so repeated
/// calls on the same matrix return identical bases.
pub fn eigendecompose(op: &VariationOperator) -> Result<SpectralBasis<f64>> {
    symmetric_eigenbasis(op.matrix())
}

/// [`eigendecompose`] for a bare symmetric matrix.
pub fn symmetric_eigenbasis(m: &DMatrix<f64>) -> Result<SpectralBasis<f64>> {
    let n = m.nrows();
    check_len(n, m.ncols())?;
    if m.iter().any(|v| !v.is_finite()) {
        return Err(Error::EigensolveFailure);
    }
    let eig = m
        .clone()
        .try_symmetric_eigen(f64::EPSILON, 1000 * n.max(1))
        .ok_or(Error::EigensolveFailure)?;

    let mut pairs: Vec<(f64, Vec<f64>)> = (0..n)
        .map(|i| {
            let mut v: Vec<f64> = eig.eigenvectors.column(i).iter().copied().collect();
            normalize_sign(&mut v);
            (eig.eigenvalues[i], v)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));

    let scale = pairs.iter().fold(1.0_f64, |acc, p| acc.max(p.0.abs()));
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && pairs[end].0 - pairs[end - 1].0 <= TIE_TOLERANCE * scale {
            end += 1;
        }
        if end - start > 1 {
            pairs[start..end].sort_by(|a, b| lexicographic(&a.1, &b.1));
        }
        start = end;
    }

    let lambdas = pairs.iter().map(|p| p.0).collect();
    let u = DMatrix::from_fn(n, n, |r, c| pairs[c].1[r]);
    Ok(SpectralBasis { u, lambdas })
}

fn normalize_sign(v: &mut [f64]) {
    let peak = v.iter().fold(0.0_f64, |acc, x| acc.max(x.abs()));
    if let Some(first) = v.iter().find(|x| x.abs() > 1e-10 * peak) {
        if *first < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
}

fn lexicographic(a: &[f64], b: &[f64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        let (rx, ry) = (libm::round(x * TIE_ROUNDING), libm::round(y * TIE_ROUNDING));
        match rx.total_cmp(&ry) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

/// Unitary DFT basis, `u_i[n] = exp(2 pi j i n / N) / sqrt(N)`, so that
/// [`SpectralBasis::gft`] is the unitary DFT.
///
/// Columns stay in DFT index order; `lambdas[i] = 2 - 2 cos(2 pi i / N)` is
/// the matching eigenvalue of the circular-graph Laplacian. Unlike the
/// Laplacian eigenbases these frequencies are not sorted.
pub fn dft_basis(n: usize) -> Result<SpectralBasis<Complex<f64>>> {
    if n < 2 {
        return Err(Error::InvalidParameter(alloc::format!("DFT basis needs n >= 2, got {n}")));
    }
    let norm = 1.0 / libm::sqrt(n as f64);
    let u = DMatrix::from_fn(n, n, |row, col| {
        let phase = 2.0 * PI * ((row * col) % n) as f64 / n as f64;
        Complex::new(libm::cos(phase) * norm, libm::sin(phase) * norm)
    });
    let lambdas = (0..n).map(|i| 2.0 - 2.0 * libm::cos(2.0 * PI * i as f64 / n as f64)).collect();
    Ok(SpectralBasis { u, lambdas })
}
