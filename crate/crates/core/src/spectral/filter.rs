use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};

/// Decay rate of the exponential generator `exp(-rate * lambda / lambda_max)`.
pub const EXP_DECAY_RATE: f64 = 1.5;

/// Closed-form graph frequency response on `[0, lambda_max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Response {
    Constant(f64),
    /// `slope * lambda + offset`.
    Affine { slope: f64, offset: f64 },
    /// `1` for `lambda < cutoff`, else `0`.
    LowPass { cutoff: f64 },
    /// `1` for `lambda <= 2 / lambda_max`, else `-2 lambda / lambda_max`.
    ///
    /// On a bipartite graph with the normalized Laplacian this generator is
    /// recovered from bandlimited samples without correction.
    BipartiteRecovery { lambda_max: f64 },
    /// `1 - lambda / (lambda_max + eps)`.
    LinearDecay { lambda_max: f64, eps: f64 },
    /// `exp(-rate * lambda / lambda_max)`.
    ExpDecay { lambda_max: f64, rate: f64 },
    /// `cos(pi/2 * lambda / (lambda_max + eps))`.
    CosineRolloff { lambda_max: f64, eps: f64 },
    /// `lambda / lambda_max + 1`.
    SmoothnessWeight { lambda_max: f64 },
}

impl Response {
    pub fn eval(&self, lambda: f64) -> f64 {
        match *self {
            Response::Constant(c) => c,
            Response::Affine { slope, offset } => slope * lambda + offset,
            Response::LowPass { cutoff } => {
                if lambda < cutoff {
                    1.0
                } else {
                    0.0
                }
            }
            Response::BipartiteRecovery { lambda_max } => {
                if lambda <= 2.0 / lambda_max {
                    1.0
                } else {
                    -2.0 * lambda / lambda_max
                }
            }
            Response::LinearDecay { lambda_max, eps } => 1.0 - lambda / (lambda_max + eps),
            Response::ExpDecay { lambda_max, rate } => libm::exp(-rate * lambda / lambda_max),
            Response::CosineRolloff { lambda_max, eps } => libm::cos(FRAC_PI_2 * lambda / (lambda_max + eps)),
            Response::SmoothnessWeight { lambda_max } => lambda / lambda_max + 1.0,
        }
    }

    /// Short identifier used in file formats and reports.
    pub fn name(&self) -> &'static str {
        match self {
            Response::Constant(_) => "constant",
            Response::Affine { .. } => "affine",
            Response::LowPass { .. } => "g_bl",
            Response::BipartiteRecovery { .. } => "g_ir",
            Response::LinearDecay { .. } => "generator1",
            Response::ExpDecay { .. } => "generator2",
            Response::CosineRolloff { .. } => "recon_cos",
            Response::SmoothnessWeight { .. } => "smooth_v",
        }
    }

    /// Parameters in declaration order, matching [`Response::from_name`].
    pub fn params(&self) -> Vec<f64> {
        match *self {
            Response::Constant(c) => alloc::vec![c],
            Response::Affine { slope, offset } => alloc::vec![slope, offset],
            Response::LowPass { cutoff } => alloc::vec![cutoff],
            Response::BipartiteRecovery { lambda_max } | Response::SmoothnessWeight { lambda_max } => {
                alloc::vec![lambda_max]
            }
            Response::LinearDecay { lambda_max, eps } | Response::CosineRolloff { lambda_max, eps } => {
                alloc::vec![lambda_max, eps]
            }
            Response::ExpDecay { lambda_max, rate } => alloc::vec![lambda_max, rate],
        }
    }

    /// Inverse of `(name(), params())`.
    pub fn from_name(name: &str, params: &[f64]) -> Result<Self> {
        let want = |k: usize| -> Result<()> {
            if params.len() == k {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!("response {name} takes {k} parameters, got {}", params.len())))
            }
        };
        let r = match name {
            "constant" => {
                want(1)?;
                Response::Constant(params[0])
            }
            "affine" => {
                want(2)?;
                Response::Affine { slope: params[0], offset: params[1] }
            }
            "g_bl" => {
                want(1)?;
                Response::LowPass { cutoff: params[0] }
            }
            "g_ir" => {
                want(1)?;
                Response::BipartiteRecovery { lambda_max: params[0] }
            }
            "generator1" => {
                want(2)?;
                Response::LinearDecay { lambda_max: params[0], eps: params[1] }
            }
            "generator2" => {
                want(2)?;
                Response::ExpDecay { lambda_max: params[0], rate: params[1] }
            }
            "recon_cos" => {
                want(2)?;
                Response::CosineRolloff { lambda_max: params[0], eps: params[1] }
            }
            "smooth_v" => {
                want(1)?;
                Response::SmoothnessWeight { lambda_max: params[0] }
            }
            other => return Err(Error::InvalidParameter(format!("unknown response {other}"))),
        };
        Ok(r)
    }
}

/// Diagonal graph frequency response sampled at the frequencies of a basis.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralFilter {
    values: Vec<f64>,
    response: Option<Response>,
}

impl SpectralFilter {
    pub fn from_values(values: Vec<f64>) -> Result<Self> {
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(format!("filter value {i} is not finite")));
        }
        Ok(Self { values, response: None })
    }

    /// Samples `response` at each frequency.
    pub fn from_response(lambdas: &[f64], response: Response) -> Result<Self> {
        let values = lambdas.iter().map(|&l| response.eval(l)).collect();
        let mut f = Self::from_values(values)?;
        f.response = Some(response);
        Ok(f)
    }

    pub fn constant(n: usize, c: f64) -> Self {
        Self { values: alloc::vec![c; n], response: Some(Response::Constant(c)) }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn response(&self) -> Option<&Response> {
        self.response.as_ref()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Elementwise product; the result carries no closed-form response.
    pub fn product(&self, other: &SpectralFilter) -> Result<SpectralFilter> {
        crate::error::check_len(self.len(), other.len())?;
        Self::from_values(self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect())
    }

    /// Elementwise map; the result carries no closed-form response.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Result<SpectralFilter> {
        Self::from_values(self.values.iter().map(|&v| f(v)).collect())
    }
}

fn check_lambda_max(lambda_max: f64) -> Result<()> {
    if lambda_max > 0.0 && lambda_max.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("lambda_max must be positive, got {lambda_max}")))
    }
}

fn check_eps(eps: f64) -> Result<()> {
    if eps >= 0.0 && eps.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("eps must be nonnegative, got {eps}")))
    }
}

/// Ideal low-pass keeping the first `k` frequency indices.
///
/// The attached response is the indicator of `lambda < (l_{k-1} + l_k) / 2`
/// over the sorted frequencies, which reproduces the index mask whenever the
/// first `k` indices hold the `k` smallest frequencies and the cutoff is not
/// inside a degenerate level.
pub fn bandlimited(lambdas: &[f64], k: usize) -> Result<SpectralFilter> {
    let n = lambdas.len();
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!("bandwidth {k} outside 1..={n}")));
    }
    let mut sorted = lambdas.to_vec();
    sorted.sort_by(f64::total_cmp);
    let cutoff = if k == n { sorted[n - 1] + 1.0 } else { 0.5 * (sorted[k - 1] + sorted[k]) };
    let values = (0..n).map(|i| if i < k { 1.0 } else { 0.0 }).collect();
    Ok(SpectralFilter { values, response: Some(Response::LowPass { cutoff }) })
}

pub fn bipartite_recovery(lambdas: &[f64], lambda_max: f64) -> Result<SpectralFilter> {
    check_lambda_max(lambda_max)?;
    SpectralFilter::from_response(lambdas, Response::BipartiteRecovery { lambda_max })
}

pub fn linear_decay(lambdas: &[f64], lambda_max: f64, eps: f64) -> Result<SpectralFilter> {
    check_lambda_max(lambda_max)?;
    check_eps(eps)?;
    SpectralFilter::from_response(lambdas, Response::LinearDecay { lambda_max, eps })
}

pub fn exp_decay(lambdas: &[f64], lambda_max: f64) -> Result<SpectralFilter> {
    check_lambda_max(lambda_max)?;
    SpectralFilter::from_response(lambdas, Response::ExpDecay { lambda_max, rate: EXP_DECAY_RATE })
}

pub fn cosine_rolloff(lambdas: &[f64], lambda_max: f64, eps: f64) -> Result<SpectralFilter> {
    check_lambda_max(lambda_max)?;
    check_eps(eps)?;
    SpectralFilter::from_response(lambdas, Response::CosineRolloff { lambda_max, eps })
}

pub fn smoothness_weight(lambdas: &[f64], lambda_max: f64) -> Result<SpectralFilter> {
    check_lambda_max(lambda_max)?;
    SpectralFilter::from_response(lambdas, Response::SmoothnessWeight { lambda_max })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn generator_values() {
        let f = linear_decay(&[0.0, 5.0], 5.0, 0.1).unwrap();
        assert_eq!(f.values()[0], 1.0);
        assert!((f.values()[1] - (1.0 - 5.0 / 5.1)).abs() < 1e-15);
        let g = exp_decay(&[0.0, 4.0], 4.0).unwrap();
        assert!((g.values()[1] - 0.22313016014842982).abs() < 1e-15);
        let c = cosine_rolloff(&[0.0], 3.0, 0.1).unwrap();
        assert_eq!(c.values()[0], 1.0);
        let v = smoothness_weight(&[0.0, 3.0], 3.0).unwrap();
        assert_eq!(v.values(), &[1.0, 2.0]);
    }

    #[test]
    fn bandlimited_mask_and_cutoff() {
        let lambdas = [0.0, 0.5, 1.0, 1.5, 2.0];
        let f = bandlimited(&lambdas, 2).unwrap();
        assert_eq!(f.values().iter().sum::<f64>(), 2.0);
        assert_eq!(f.response(), Some(&Response::LowPass { cutoff: 0.75 }));
        for (l, v) in lambdas.iter().zip(f.values()) {
            assert_eq!(f.response().unwrap().eval(*l), *v);
        }
        assert_eq!(bandlimited(&lambdas, 5).unwrap().values(), &[1.0; 5]);
        assert!(bandlimited(&lambdas, 0).is_err());
        assert!(bandlimited(&lambdas, 6).is_err());
    }

    #[test]
    fn bipartite_recovery_response() {
        let f = bipartite_recovery(&[0.0, 1.0, 1.5, 2.0], 2.0).unwrap();
        assert_eq!(f.values(), &[1.0, 1.0, -1.5, -2.0]);
    }

    #[test]
    fn invalid_parameters() {
        assert!(linear_decay(&[0.0], 0.0, 0.1).is_err());
        assert!(linear_decay(&[0.0], 1.0, -0.1).is_err());
        assert!(exp_decay(&[0.0], -1.0).is_err());
        assert!(SpectralFilter::from_values(vec![1.0, f64::NAN]).is_err());
    }

    #[test]
    fn response_descriptor_round_trip() {
        let all = [
            Response::Constant(2.0),
            Response::Affine { slope: 1.0, offset: -1.0 },
            Response::LowPass { cutoff: 0.3 },
            Response::BipartiteRecovery { lambda_max: 2.0 },
            Response::LinearDecay { lambda_max: 7.0, eps: 0.1 },
            Response::ExpDecay { lambda_max: 7.0, rate: 1.5 },
            Response::CosineRolloff { lambda_max: 7.0, eps: 0.1 },
            Response::SmoothnessWeight { lambda_max: 7.0 },
        ];
        for r in all {
            assert_eq!(Response::from_name(r.name(), &r.params()).unwrap(), r);
        }
        assert!(Response::from_name("g_bl", &[]).is_err());
        assert!(Response::from_name("nope", &[]).is_err());
    }
}
