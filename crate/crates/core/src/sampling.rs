//! Vertex-domain and graph-frequency-domain sampling.

use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};

use crate::error::{check_len, Error, Result};
use crate::spectral::{scale_by, Scalar, SpectralBasis, SpectralFilter};

/// Signal length `n`, sampling ratio `m` and number of folded bins `k = n / m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SamplingConfig {
    n: usize,
    m: usize,
}

impl SamplingConfig {
    /// Rejects `m` that does not divide `n`.
    pub fn new(n: usize, m: usize) -> Result<Self> {
        if n == 0 || m == 0 || n % m != 0 {
            return Err(Error::NonDivisor { n, m });
        }
        Ok(Self { n, m })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self) -> usize {
        self.n / self.m
    }
}

/// Folded spectrum of length `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledSpectrum<T: Scalar = f64> {
    values: DVector<T>,
    config: SamplingConfig,
}

impl<T: Scalar> SampledSpectrum<T> {
    pub fn new(values: DVector<T>, config: SamplingConfig) -> Result<Self> {
        check_len(config.k(), values.len())?;
        Ok(Self { values, config })
    }

    pub fn values(&self) -> &DVector<T> {
        &self.values
    }

    pub fn config(&self) -> SamplingConfig {
        self.config
    }

    pub fn into_values(self) -> DVector<T> {
        self.values
    }
}

/// `c[i] = sum_l xhat[i + k l]`, i.e. `[I_k I_k ... I_k] xhat`.
pub fn spectral_fold<T: Scalar>(xhat: &DVector<T>, cfg: SamplingConfig) -> Result<SampledSpectrum<T>> {
    check_len(cfg.n(), xhat.len())?;
    let k = cfg.k();
    let mut out = DVector::from_element(k, T::zero());
    for (i, &v) in xhat.iter().enumerate() {
        out[i % k] += v;
    }
    Ok(SampledSpectrum { values: out, config: cfg })
}

/// Folds the filtered spectrum `s(Lambda) U^H x`.
pub fn frequency_sample<T: Scalar>(
    b: &SpectralBasis<T>,
    s: &SpectralFilter,
    x: &DVector<T>,
    cfg: SamplingConfig,
) -> Result<SampledSpectrum<T>> {
    check_len(b.len(), cfg.n())?;
    check_len(cfg.n(), s.len())?;
    let mut xhat = b.gft(x)?;
    scale_by(&mut xhat, s.values());
    spectral_fold(&xhat, cfg)
}

/// Periodic replication `out[i] = dhat[i mod k]`.
pub fn spectral_upsample<T: Scalar>(dhat: &DVector<T>, cfg: SamplingConfig) -> Result<DVector<T>> {
    check_len(cfg.k(), dhat.len())?;
    let k = cfg.k();
    Ok(DVector::from_fn(cfg.n(), |i, _| dhat[i % k]))
}

/// Filter applied before vertex sampling.
#[derive(Debug, Clone, Copy)]
pub enum VertexFilter<'a> {
    Identity,
    Dense(&'a DMatrix<f64>),
    Spectral(&'a SpectralBasis<f64>, &'a SpectralFilter),
}

/// `I_T G x`: filter, then keep the entries indexed by `t` in the given order.
pub fn vertex_sample(g: VertexFilter<'_>, t: &[usize], x: &DVector<f64>) -> Result<DVector<f64>> {
    let n = x.len();
    if let Some(&index) = t.iter().find(|&&i| i >= n) {
        return Err(Error::IndexOutOfRange { index, n });
    }
    let filtered = match g {
        VertexFilter::Identity => x.clone(),
        VertexFilter::Dense(m) => {
            check_len(n, m.ncols())?;
            check_len(n, m.nrows())?;
            m * x
        }
        VertexFilter::Spectral(b, f) => b.apply_filter(f, x)?,
    };
    Ok(DVector::from_iterator(t.len(), t.iter().map(|&i| filtered[i])))
}

/// `R[i] = sum_l f1[i + k l] f2[i + k l]`.
pub fn sampled_cross_correlation(f1: &SpectralFilter, f2: &SpectralFilter, cfg: SamplingConfig) -> Result<Vec<f64>> {
    check_len(cfg.n(), f1.len())?;
    check_len(cfg.n(), f2.len())?;
    let k = cfg.k();
    let mut out = alloc::vec![0.0; k];
    for (i, (a, b)) in f1.values().iter().zip(f2.values()).enumerate() {
        out[i % k] += a * b;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn config_rejects_non_divisor() {
        assert!(matches!(SamplingConfig::new(10, 3), Err(Error::NonDivisor { n: 10, m: 3 })));
        assert!(SamplingConfig::new(10, 0).is_err());
        let c = SamplingConfig::new(12, 3).unwrap();
        assert_eq!((c.n(), c.m(), c.k()), (12, 3, 4));
    }

    #[test]
    fn fold_small_case() {
        let cfg = SamplingConfig::new(4, 2).unwrap();
        let c = spectral_fold(&DVector::from_vec(vec![1.0, 2.0, 3.0, 4.0]), cfg).unwrap();
        assert_eq!(c.values().as_slice(), &[4.0, 6.0]);
        let id = SamplingConfig::new(4, 1).unwrap();
        let x = DVector::from_vec(vec![1.0, -2.0, 3.0, 0.5]);
        assert_eq!(spectral_fold(&x, id).unwrap().values(), &x);
        assert!(spectral_fold(&DVector::<f64>::zeros(3), cfg).is_err());
    }

    #[test]
    fn upsample_replicates() {
        let cfg = SamplingConfig::new(6, 3).unwrap();
        let up = spectral_upsample(&DVector::from_vec(vec![1.0, 2.0]), cfg).unwrap();
        assert_eq!(up.as_slice(), &[1.0, 2.0, 1.0, 2.0, 1.0, 2.0]);
        let folded = spectral_fold(&up, cfg).unwrap();
        assert_eq!(folded.values().as_slice(), &[3.0, 6.0]);
    }

    #[test]
    fn vertex_sample_selects_rows() {
        let x = DVector::from_vec(vec![5.0, 6.0, 7.0, 8.0]);
        assert_eq!(vertex_sample(VertexFilter::Identity, &[0, 2], &x).unwrap().as_slice(), &[5.0, 7.0]);
        assert_eq!(vertex_sample(VertexFilter::Identity, &[0, 1, 2, 3], &x).unwrap(), x);
        assert!(matches!(
            vertex_sample(VertexFilter::Identity, &[4], &x),
            Err(Error::IndexOutOfRange { index: 4, n: 4 })
        ));
        let m = DMatrix::from_diagonal_element(4, 4, 2.0);
        assert_eq!(vertex_sample(VertexFilter::Dense(&m), &[3], &x).unwrap()[0], 16.0);
    }

    #[test]
    fn cross_correlation_cases() {
        let cfg = SamplingConfig::new(4, 2).unwrap();
        let bl = SpectralFilter::from_values(vec![1.0, 1.0, 0.0, 0.0]).unwrap();
        assert_eq!(sampled_cross_correlation(&bl, &bl, cfg).unwrap(), vec![1.0, 1.0]);
        let f = SpectralFilter::from_values(vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        let id = SamplingConfig::new(4, 1).unwrap();
        assert_eq!(sampled_cross_correlation(&f, &f, id).unwrap(), vec![1.0, 4.0, 9.0, 16.0]);
    }
}
