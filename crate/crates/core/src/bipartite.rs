//! Vertex-domain realization of graph-frequency sampling on bipartite graphs.
//!
//! For a bipartite graph with parts `V1`, `V2` of equal size `h`, the
//! normalized Laplacian is `[[I, -C], [-C^T, I]]` with
//! `C = D1^{-1/2} W12 D2^{-1/2}`. Writing `C = P diag(sigma) Q^T`, the
//! vectors `[p_i; q_i] / sqrt(2)` and `[p_i; -q_i] / sqrt(2)` are
//! eigenvectors with frequencies `1 - sigma_i` and `1 + sigma_i`. The basis
//! built here stores the first family in columns `0..h` and the partner of
//! column `i` in column `i + h`, so folding with `M = 2` adds exactly the
//! two members of each pair and cancels their `V2` part. The Kron-reduced
//! Laplacian on `V1` is `I - C C^T` with eigenvectors `P`.
//!
//! Consequently, with `U_r = P / sqrt(2)`:
//!
//! - `U_r [I I] U_B^T = [I 0]` (vertex order `V1` first),
//! - `U_r c = I_V1 G x` when `c` is the frequency sample of `x` with filter `G`,
//! - upsampling and reconstruction equal `2 W' I_V1^T` where
//!   `W'(lambda_i) = W(lambda_i) H(lambda_{i mod h})`.

use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};

use crate::error::{check_len, Error, Result};
use crate::graph::{kron_reduce, normalized_laplacian, Graph, VariationOperator};
use crate::recovery::{design_subspace_unconstrained, Strategy};
use crate::sampling::{frequency_sample, SampledSpectrum, SamplingConfig};
use crate::spectral::{apply_chebyshev, bandlimited, chebyshev_fit, ChebyshevFilter, SpectralBasis, SpectralFilter};

/// Sampling ratio between the graph and the retained part.
pub const RATIO: usize = 2;
/// Largest accepted sampling-identity residual after construction.
pub const PAIRING_TOLERANCE: f64 = 1e-8;
/// Chebyshev interval for normalized Laplacians.
pub const NORMALIZED_INTERVAL: (f64, f64) = (0.0, 2.0);

#[derive(Debug, Clone)]
pub struct BipartiteSystem {
    graph: Graph,
    v1: Vec<usize>,
    v2: Vec<usize>,
    op: VariationOperator,
    basis_b: SpectralBasis<f64>,
    reduced_op: VariationOperator,
    basis_reduced: SpectralBasis<f64>,
    cfg: SamplingConfig,
}

impl BipartiteSystem {
    pub fn build(g: &Graph) -> Result<Self> {
        let bp = g.bipartition().ok_or(Error::NotBipartite)?;
        let (v1, v2) = (bp.v1().to_vec(), bp.v2().to_vec());
        if v1.len() != v2.len() {
            return Err(Error::UnequalParts { v1: v1.len(), v2: v2.len() });
        }
        let h = v1.len();
        let n = g.n();
        let op = normalized_laplacian(g)?;
        let reduced_op = kron_reduce(&op, &v1)?;

        let deg = g.degrees();
        let c = DMatrix::from_fn(h, h, |r, s| {
            g.weight(v1[r], v2[s]) / libm::sqrt(deg[v1[r]] * deg[v2[s]])
        });
        let svd = c.svd(true, true);
        let (p, qt) = match (svd.u, svd.v_t) {
            (Some(u), Some(vt)) => (u, vt),
            _ => return Err(Error::EigensolveFailure),
        };
        let mut order: Vec<usize> = (0..h).collect();
        order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]).then(a.cmp(&b)));

        let mut p_sorted = DMatrix::zeros(h, h);
        let mut q_sorted = DMatrix::zeros(h, h);
        let mut sigma = Vec::with_capacity(h);
        for (col, &j) in order.iter().enumerate() {
            let mut pj: Vec<f64> = p.column(j).iter().copied().collect();
            let mut qj: Vec<f64> = qt.row(j).iter().copied().collect();
            let peak = pj.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
            if pj.iter().find(|x| x.abs() > 1e-10 * peak).is_some_and(|x| *x < 0.0) {
                pj.iter_mut().for_each(|x| *x = -*x);
                qj.iter_mut().for_each(|x| *x = -*x);
            }
            p_sorted.set_column(col, &DVector::from_vec(pj));
            q_sorted.set_column(col, &DVector::from_vec(qj));
            sigma.push(svd.singular_values[j]);
        }

        let s = core::f64::consts::FRAC_1_SQRT_2;
        let mut u = DMatrix::zeros(n, n);
        for i in 0..h {
            for r in 0..h {
                u[(v1[r], i)] = p_sorted[(r, i)] * s;
                u[(v2[r], i)] = q_sorted[(r, i)] * s;
                u[(v1[r], i + h)] = p_sorted[(r, i)] * s;
                u[(v2[r], i + h)] = -q_sorted[(r, i)] * s;
            }
        }
        let lambdas = sigma.iter().map(|s| 1.0 - s).chain(sigma.iter().map(|s| 1.0 + s)).collect();
        let basis_b = SpectralBasis::from_parts(u, lambdas)?;
        let reduced_lambdas = sigma.iter().map(|s| 1.0 - s * s).collect();
        let basis_reduced = SpectralBasis::from_parts(p_sorted, reduced_lambdas)?;

        let sys = Self { graph: g.clone(), v1, v2, op, basis_b, reduced_op, basis_reduced, cfg: SamplingConfig::new(n, RATIO)? };
        let residual = sys
            .theorem1_residual()
            .max(sys.basis_b.diagonalization_error(sys.op.matrix()))
            .max(sys.basis_reduced.diagonalization_error(sys.reduced_op.matrix()));
        if !(residual <= PAIRING_TOLERANCE) {
            return Err(Error::PairingFailure { residual });
        }
        Ok(sys)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn v1(&self) -> &[usize] {
        &self.v1
    }

    pub fn v2(&self) -> &[usize] {
        &self.v2
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// Normalized Laplacian of the graph.
    pub fn operator(&self) -> &VariationOperator {
        &self.op
    }

    /// Paired eigenbasis in the caller's vertex order: frequencies ascend on
    /// `0..N/2` and column `i + N/2` holds frequency `2 - lambda_i`.
    pub fn basis(&self) -> &SpectralBasis<f64> {
        &self.basis_b
    }

    pub fn reduced_operator(&self) -> &VariationOperator {
        &self.reduced_op
    }

    /// Eigenbasis of the Kron-reduced Laplacian, rows in `v1` order.
    pub fn reduced_basis(&self) -> &SpectralBasis<f64> {
        &self.basis_reduced
    }

    /// `N` and `M = 2`.
    pub fn config(&self) -> SamplingConfig {
        self.cfg
    }

    /// `I_V1 x`.
    pub fn restrict(&self, x: &DVector<f64>) -> Result<DVector<f64>> {
        check_len(self.n(), x.len())?;
        Ok(DVector::from_iterator(self.v1.len(), self.v1.iter().map(|&i| x[i])))
    }

    /// `I_V1^T c`.
    pub fn extend(&self, c: &DVector<f64>) -> Result<DVector<f64>> {
        check_len(self.v1.len(), c.len())?;
        let mut out = DVector::zeros(self.n());
        for (&i, &v) in self.v1.iter().zip(c.iter()) {
            out[i] = v;
        }
        Ok(out)
    }

    /// Vertex-domain samples `U_r c` of a folded spectrum.
    pub fn to_vertex(&self, chat: &SampledSpectrum<f64>) -> Result<DVector<f64>> {
        check_len(self.v1.len(), chat.values().len())?;
        Ok(self.basis_reduced.u() * chat.values() * scale())
    }

    /// `max |U_r [I I] U_B^T - [I 0]|` with vertices ordered `V1` first.
    pub fn theorem1_residual(&self) -> f64 {
        let h = self.v1.len();
        let u = self.basis_b.u();
        // [I I] U_B^T, columns permuted so V1 comes first
        let folded = DMatrix::from_fn(h, self.n(), |i, c| {
            let vertex = if c < h { self.v1[c] } else { self.v2[c - h] };
            u[(vertex, i)] + u[(vertex, i + h)]
        });
        let lhs = self.basis_reduced.u() * folded * scale();
        let mut err: f64 = 0.0;
        for r in 0..h {
            for c in 0..self.n() {
                let target = if r == c { 1.0 } else { 0.0 };
                err = err.max((lhs[(r, c)] - target).abs());
            }
        }
        err
    }
}

fn scale() -> f64 {
    1.0 / libm::sqrt(RATIO as f64)
}

/// `max |U_r c - I_V1 G x|` where `c` samples `x` with filter `s` and `G`
/// applies `s` in the vertex domain.
pub fn verify_corollary1(sys: &BipartiteSystem, s: &SpectralFilter, x: &DVector<f64>) -> Result<f64> {
    let chat = frequency_sample(sys.basis(), s, x, sys.config())?;
    let lhs = sys.to_vertex(&chat)?;
    let rhs = sys.restrict(&sys.basis().apply_filter(s, x)?)?;
    Ok((lhs - rhs).amax())
}

/// `W'(lambda_i) = W(lambda_i) H(lambda_{i mod K})` with `K = h.len()`.
pub fn build_wprime(w: &SpectralFilter, h: &[f64]) -> Result<SpectralFilter> {
    let n = w.len();
    if h.is_empty() || n % h.len() != 0 {
        return Err(Error::DimensionMismatch { expected: n / 2, found: h.len() });
    }
    let k = h.len();
    SpectralFilter::from_values(w.values().iter().enumerate().map(|(i, v)| v * h[i % k]).collect())
}

/// `x~ = M W' I_V1^T I_V1 G x` with spectral application of `G` and `W'`.
pub fn vertex_pipeline(
    sys: &BipartiteSystem,
    g: &SpectralFilter,
    wprime: &SpectralFilter,
    x: &DVector<f64>,
) -> Result<DVector<f64>> {
    let b = sys.basis();
    let sampled = sys.restrict(&b.apply_filter(g, x)?)?;
    let up = sys.extend(&sampled)? * RATIO as f64;
    b.apply_filter(wprime, &up)
}

/// [`vertex_pipeline`] with both filters replaced by order-`order`
/// Chebyshev approximations on `[0, 2]`, applied through the normalized
/// Laplacian only.
pub fn vertex_pipeline_chebyshev(
    sys: &BipartiteSystem,
    g_resp: impl Fn(f64) -> f64,
    wprime_resp: impl Fn(f64) -> f64,
    x: &DVector<f64>,
    order: usize,
) -> Result<DVector<f64>> {
    let (lo, hi) = NORMALIZED_INTERVAL;
    let g = chebyshev_fit(g_resp, lo, hi, order)?;
    let w = chebyshev_fit(wprime_resp, lo, hi, order)?;
    vertex_pipeline_polynomial(sys, &g, &w, x)
}

/// [`vertex_pipeline_chebyshev`] with precomputed fits.
pub fn vertex_pipeline_polynomial(
    sys: &BipartiteSystem,
    g: &ChebyshevFilter,
    wprime: &ChebyshevFilter,
    x: &DVector<f64>,
) -> Result<DVector<f64>> {
    let sampled = sys.restrict(&apply_chebyshev(sys.operator(), g, x)?)?;
    let up = sys.extend(&sampled)? * RATIO as f64;
    apply_chebyshev(sys.operator(), wprime, &up)
}

/// Response of `W'` for Chebyshev fitting: `a(lambda)` times `h` read off at
/// the paired frequency `min(lambda, 2 - lambda)`, linearly interpolated
/// between the system's frequencies.
pub fn wprime_response<'a>(
    sys: &'a BipartiteSystem,
    a: impl Fn(f64) -> f64 + 'a,
    h: &'a [f64],
) -> Result<impl Fn(f64) -> f64 + 'a> {
    let k = sys.v1().len();
    check_len(k, h.len())?;
    let knots = &sys.basis().lambdas()[..k];
    Ok(move |lambda: f64| a(lambda) * interpolate(knots, h, lambda.min(2.0 - lambda)))
}

/// Piecewise-linear interpolation through ascending `xs`, constant outside.
fn interpolate(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    let j = xs.partition_point(|&v| v < x);
    if j == 0 {
        return ys[0];
    }
    if j == xs.len() {
        return ys[xs.len() - 1];
    }
    let (x0, x1) = (xs[j - 1], xs[j]);
    if x1 - x0 <= 0.0 {
        return ys[j];
    }
    let t = (x - x0) / (x1 - x0);
    ys[j - 1] * (1.0 - t) + ys[j] * t
}

/// Output of [`one_branch_roundtrip`].
#[derive(Debug, Clone, PartialEq)]
pub struct OneBranch {
    /// Signal `W' I_V1^T d`.
    pub original: DVector<f64>,
    /// Folded spectrum with the low-pass sampling filter, length `N/2`.
    pub encoded: SampledSpectrum<f64>,
    /// Correction filter of the DS design.
    pub h: Vec<f64>,
    pub decoded: DVector<f64>,
}

/// One-branch compression: build `x = W' I_V1^T d` for the generator `a`,
/// encode it with the ideal low-pass `g_bl(N/2)` and decode it from the
/// encoded spectrum alone using the DS design.
pub fn one_branch_roundtrip(sys: &BipartiteSystem, a: &SpectralFilter, d: &DVector<f64>) -> Result<OneBranch> {
    let b = sys.basis();
    check_len(sys.n(), a.len())?;
    let cfg = sys.config();
    let s = bandlimited(b.lambdas(), cfg.k())?;
    let design = design_subspace_unconstrained(&s, a, cfg, Strategy::Ds)?;
    let wprime = build_wprime(design.w(), design.h())?;
    let original = b.apply_filter(&wprime, &sys.extend(d)?)?;
    let encoded = frequency_sample(b, &s, &original, cfg)?;
    decode_one_branch(sys, &wprime, &encoded).map(|decoded| OneBranch {
        original,
        encoded,
        h: design.h().to_vec(),
        decoded,
    })
}

/// `M W' I_V1^T U_r c`.
pub fn decode_one_branch(sys: &BipartiteSystem, wprime: &SpectralFilter, encoded: &SampledSpectrum<f64>) -> Result<DVector<f64>> {
    let up = sys.extend(&sys.to_vertex(encoded)?)? * RATIO as f64;
    sys.basis().apply_filter(wprime, &up)
}
