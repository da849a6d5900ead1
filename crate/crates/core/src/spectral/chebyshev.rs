use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use nalgebra::{DMatrix, DVector};

use crate::error::{check_len, Error, Result};
use crate::graph::{OperatorKind, VariationOperator};

/// Points in the uniform grid used to report the fit error.
pub const GRID_POINTS: usize = 1000;
const POWER_ITERATIONS: usize = 200;

/// Truncated Chebyshev expansion `c_0/2 + sum_k c_k T_k(y)` of a response on
/// `[lo, hi]`, with `y = (2 lambda - lo - hi) / (hi - lo)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChebyshevFilter {
    coeffs: Vec<f64>,
    lo: f64,
    hi: f64,
    grid_error: f64,
}

impl ChebyshevFilter {
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    /// Max absolute fit error on a uniform grid of [`GRID_POINTS`] points.
    pub fn grid_error(&self) -> f64 {
        self.grid_error
    }

    /// Evaluates the expansion at a scalar `lambda`.
    pub fn eval(&self, lambda: f64) -> f64 {
        let y = self.map(lambda);
        let (mut t_prev, mut t_cur) = (1.0, y);
        let mut acc = 0.5 * self.coeffs[0];
        for (k, &c) in self.coeffs.iter().enumerate().skip(1) {
            if k > 1 {
                let next = 2.0 * y * t_cur - t_prev;
                t_prev = t_cur;
                t_cur = next;
            }
            acc += c * t_cur;
        }
        acc
    }

    fn map(&self, lambda: f64) -> f64 {
        (2.0 * lambda - self.lo - self.hi) / (self.hi - self.lo)
    }
}

/// Chebyshev coefficients of `response` on `[lo, hi]` from Chebyshev-Gauss
/// quadrature with `2 * order` nodes.
pub fn chebyshev_fit(response: impl Fn(f64) -> f64, lo: f64, hi: f64, order: usize) -> Result<ChebyshevFilter> {
    if order == 0 {
        return Err(Error::InvalidParameter("Chebyshev order must be at least 1".into()));
    }
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::InvalidParameter(format!("invalid interval [{lo}, {hi}]")));
    }
    let q = 2 * order;
    let half = 0.5 * (hi - lo);
    let mid = 0.5 * (hi + lo);
    let samples: Vec<(f64, f64)> = (0..q)
        .map(|j| {
            let theta = PI * (j as f64 + 0.5) / q as f64;
            (theta, response(half * libm::cos(theta) + mid))
        })
        .collect();
    if let Some((_, v)) = samples.iter().find(|s| !s.1.is_finite()) {
        return Err(Error::InvalidParameter(format!("response is not finite on the interval ({v})")));
    }
    let coeffs = (0..=order)
        .map(|k| {
            let s: f64 = samples.iter().map(|&(theta, f)| f * libm::cos(k as f64 * theta)).sum();
            2.0 * s / q as f64
        })
        .collect();
    let mut cf = ChebyshevFilter { coeffs, lo, hi, grid_error: 0.0 };
    cf.grid_error = (0..GRID_POINTS)
        .map(|i| {
            let l = lo + (hi - lo) * i as f64 / (GRID_POINTS - 1) as f64;
            (cf.eval(l) - response(l)).abs()
        })
        .fold(0.0, f64::max);
    Ok(cf)
}

/// Applies `cf(op)` to `x` by the three-term recurrence, using only
/// matrix-vector products with `op`.
///
/// Fails with [`Error::IntervalMismatch`] when the fit interval does not
/// start at or below 0 or the largest eigenvalue of `op` exceeds its upper
/// end. The largest eigenvalue is only estimated, by power iteration, when
/// the interval does not already cover 2 (normalized operators) or the
/// Gershgorin bound (combinatorial operators).
pub fn apply_chebyshev(op: &VariationOperator, cf: &ChebyshevFilter, x: &DVector<f64>) -> Result<DVector<f64>> {
    let m = op.matrix();
    check_len(m.nrows(), x.len())?;
    if cf.lo > 0.0 {
        return Err(Error::IntervalMismatch { lo: cf.lo, hi: cf.hi, needed: 0.0 });
    }
    // a proven upper bound settles the check without iterating
    if cf.hi < spectral_upper_bound(op) {
        let needed = lambda_max_lower_bound(m);
        if needed > cf.hi * (1.0 + 1e-9) + 1e-12 {
            return Err(Error::IntervalMismatch { lo: cf.lo, hi: cf.hi, needed });
        }
    }
    Ok(chebyshev_recurrence(m, cf, x))
}

fn chebyshev_recurrence(m: &DMatrix<f64>, cf: &ChebyshevFilter, x: &DVector<f64>) -> DVector<f64> {
    let a = 2.0 / (cf.hi - cf.lo);
    let b = -(cf.hi + cf.lo) / (cf.hi - cf.lo);
    // y = a M + b I applied as a matrix-vector product
    let shifted = |v: &DVector<f64>| -> DVector<f64> { m * v * a + v * b };
    let mut t_prev = x.clone();
    let mut acc = x * (0.5 * cf.coeffs[0]);
    if cf.coeffs.len() == 1 {
        return acc;
    }
    let mut t_cur = shifted(x);
    acc.axpy(cf.coeffs[1], &t_cur, 1.0);
    for &c in &cf.coeffs[2..] {
        let next = shifted(&t_cur) * 2.0 - &t_prev;
        t_prev = t_cur;
        t_cur = next;
        acc.axpy(c, &t_cur, 1.0);
    }
    acc
}

/// 2 for normalized Laplacians, otherwise the Gershgorin bound.
fn spectral_upper_bound(op: &VariationOperator) -> f64 {
    match op.kind() {
        OperatorKind::SymmetricNormalized => 2.0,
        OperatorKind::Combinatorial => op
            .matrix()
            .row_iter()
            .map(|r| r.iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, f64::max),
    }
}

/// Rayleigh quotient after power iteration; never exceeds the true largest
/// eigenvalue of a symmetric PSD matrix.
fn lambda_max_lower_bound(m: &DMatrix<f64>) -> f64 {
    let n = m.nrows();
    if n == 0 {
        return 0.0;
    }
    let mut v = DVector::from_fn(n, |i, _| {
        let t = i as f64 * 0.618_033_988_749_895;
        1.0 + t - libm::floor(t)
    });
    let mut rq = 0.0;
    for _ in 0..POWER_ITERATIONS {
        let norm = v.norm();
        if norm == 0.0 {
            return 0.0;
        }
        v /= norm;
        let w = m * &v;
        rq = v.dot(&w);
        v = w;
    }
    rq
}
