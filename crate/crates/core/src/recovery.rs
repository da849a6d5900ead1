//! Periodic graph spectrum (PGS) signals and correction filter designs.
//!
//! Every design returns a length-`K` correction `h` applied to the folded
//! spectrum and a length-`N` reconstruction filter `w`, so that
//! [`reconstruct`] computes `U w(Lambda) upsample(h * c)`.
//!
//! | prior      | mode          | strategy | `h`                                 | `w`       |
//! |------------|---------------|----------|-------------------------------------|-----------|
//! | subspace   | unconstrained | any      | `1 / R_SA`                          | `a`       |
//! | subspace   | predefined    | DS, MX   | `R_WA / (R_SA R_WW)`                | `w`       |
//! | subspace   | predefined    | LS       | `1 / R_SW`                          | `w`       |
//! | smoothness | unconstrained | LS = MX  | `1 / R_SW~`, `W~ = S / V^2`         | `W~`      |
//! | smoothness | predefined    | LS       | as subspace predefined LS           | `w`       |
//! | smoothness | predefined    | MX       | `R_WW~ / (R_SW~ R_WW)`              | `w`       |
//!
//! `R_XY` is [`sampled_cross_correlation`]. Entries whose denominator is at
//! most `1e-10 * max |R|` are zeroed for LS and MX and rejected for DS.

use alloc::format;
use alloc::vec::Vec;

use nalgebra::DVector;

use crate::error::{check_len, Error, Result};
use crate::sampling::{sampled_cross_correlation, spectral_upsample, SampledSpectrum, SamplingConfig};
use crate::spectral::{scale_by, Scalar, SpectralBasis, SpectralFilter};

/// Relative cutoff under which a sampled cross-correlation counts as zero.
pub const ZERO_TOLERANCE: f64 = 1e-10;
/// Lowest value [`mse_db`] reports.
pub const MSE_FLOOR_DB: f64 = -320.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Consistent recovery under the direct-sum condition.
    Ds,
    /// Least squares.
    Ls,
    /// Minimax.
    Mx,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Reconstruction filter chosen freely.
    Unconstrained,
    /// Reconstruction filter fixed in advance.
    Predefined,
}

/// Signal prior.
#[derive(Debug, Clone, PartialEq)]
pub enum Prior {
    /// Signals of the form `U a(Lambda) upsample(d)`.
    Subspace { a: SpectralFilter },
    /// `sum_i v_i^2 |x_hat_i|^2 <= rho^2`; `rho` is informational only.
    Smoothness { v: SpectralFilter, rho: Option<f64> },
}

impl Prior {
    pub fn subspace(a: SpectralFilter) -> Self {
        Prior::Subspace { a }
    }

    /// Rejects a smoothness weight with a zero entry.
    pub fn smoothness(v: SpectralFilter, rho: Option<f64>) -> Result<Self> {
        check_nonzero(&v)?;
        Ok(Prior::Smoothness { v, rho })
    }
}

/// PGS generator: `x = U a(Lambda) upsample(d)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PgsModel<T: Scalar = f64> {
    generator: SpectralFilter,
    cfg: SamplingConfig,
    basis: SpectralBasis<T>,
}

impl<T: Scalar> PgsModel<T> {
    pub fn new(generator: SpectralFilter, cfg: SamplingConfig, basis: SpectralBasis<T>) -> Result<Self> {
        check_len(cfg.n(), generator.len())?;
        check_len(cfg.n(), basis.len())?;
        Ok(Self { generator, cfg, basis })
    }

    pub fn generator(&self) -> &SpectralFilter {
        &self.generator
    }

    pub fn config(&self) -> SamplingConfig {
        self.cfg
    }

    pub fn basis(&self) -> &SpectralBasis<T> {
        &self.basis
    }
}

pub fn generate_pgs<T: Scalar>(model: &PgsModel<T>, dhat: &DVector<T>) -> Result<DVector<T>> {
    let mut spec = spectral_upsample(dhat, model.cfg)?;
    scale_by(&mut spec, model.generator.values());
    model.basis.igft(&spec)
}

/// Correction and reconstruction filters produced by one of the designs.
#[derive(Debug, Clone, PartialEq)]
pub struct RecoveryDesign {
    h: Vec<f64>,
    w: SpectralFilter,
    strategy: Strategy,
    mode: Mode,
}

impl RecoveryDesign {
    pub fn new(h: Vec<f64>, w: SpectralFilter, strategy: Strategy, mode: Mode) -> Result<Self> {
        if w.len() % h.len().max(1) != 0 || h.is_empty() {
            return Err(Error::InvalidParameter(format!("correction length {} does not divide {}", h.len(), w.len())));
        }
        if let Some(i) = h.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(format!("correction value {i} is not finite")));
        }
        Ok(Self { h, w, strategy, mode })
    }

    pub fn h(&self) -> &[f64] {
        &self.h
    }

    pub fn w(&self) -> &SpectralFilter {
        &self.w
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }
}

/// Result of [`check_ds`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DsCheck {
    pub holds: bool,
    pub min_abs: f64,
}

/// The direct-sum condition holds iff `min_i |R_SA[i]| > tol`.
pub fn check_ds(s: &SpectralFilter, a: &SpectralFilter, cfg: SamplingConfig, tol: f64) -> Result<DsCheck> {
    let r = sampled_cross_correlation(s, a, cfg)?;
    let min_abs = r.iter().map(|v| v.abs()).fold(f64::INFINITY, f64::min);
    Ok(DsCheck { holds: min_abs > tol, min_abs })
}

fn cutoff(r: &[f64]) -> f64 {
    ZERO_TOLERANCE * r.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
}

fn pseudo_inverse(r: &[f64]) -> Vec<f64> {
    let tol = cutoff(r);
    r.iter().map(|&v| if v.abs() <= tol { 0.0 } else { 1.0 / v }).collect()
}

/// Index and magnitude of the first entry at or below the relative cutoff.
fn first_vanishing(r: &[f64]) -> Option<(usize, f64)> {
    let tol = cutoff(r);
    r.iter().position(|v| v.abs() <= tol).map(|i| (i, r[i].abs()))
}

fn check_nonzero(v: &SpectralFilter) -> Result<()> {
    match v.values().iter().position(|&x| x == 0.0) {
        Some(i) => Err(Error::InvalidParameter(format!("smoothness weight vanishes at index {i}"))),
        None => Ok(()),
    }
}

/// `W~ = S / V^2`.
fn smoothness_reconstruction(s: &SpectralFilter, v: &SpectralFilter) -> Result<SpectralFilter> {
    check_len(s.len(), v.len())?;
    check_nonzero(v)?;
    SpectralFilter::from_values(s.values().iter().zip(v.values()).map(|(s, v)| s / (v * v)).collect())
}

pub fn design_subspace_unconstrained(
    s: &SpectralFilter,
    a: &SpectralFilter,
    cfg: SamplingConfig,
    strategy: Strategy,
) -> Result<RecoveryDesign> {
    let r_sa = sampled_cross_correlation(s, a, cfg)?;
    if strategy == Strategy::Ds {
        if let Some((index, magnitude)) = first_vanishing(&r_sa) {
            return Err(Error::DsConditionViolated { index, magnitude });
        }
    }
    RecoveryDesign::new(pseudo_inverse(&r_sa), a.clone(), strategy, Mode::Unconstrained)
}

pub fn design_subspace_predefined(
    s: &SpectralFilter,
    a: &SpectralFilter,
    w: &SpectralFilter,
    cfg: SamplingConfig,
    strategy: Strategy,
) -> Result<RecoveryDesign> {
    if strategy == Strategy::Ls {
        return predefined_ls(s, w, cfg);
    }
    let r_wa = sampled_cross_correlation(w, a, cfg)?;
    let r_sa = sampled_cross_correlation(s, a, cfg)?;
    let r_ww = sampled_cross_correlation(w, w, cfg)?;
    if strategy == Strategy::Ds {
        if let Some((index, magnitude)) = first_vanishing(&r_sa).or_else(|| first_vanishing(&r_ww)) {
            return Err(Error::DsConditionViolated { index, magnitude });
        }
    }
    let h = ratio(&r_wa, &r_sa, &r_ww);
    RecoveryDesign::new(h, w.clone(), strategy, Mode::Predefined)
}

/// `num / (d1 d2)`, zero where either factor of the denominator vanishes.
fn ratio(num: &[f64], d1: &[f64], d2: &[f64]) -> Vec<f64> {
    let (t1, t2) = (cutoff(d1), cutoff(d2));
    num.iter()
        .zip(d1.iter().zip(d2))
        .map(|(&n, (&a, &b))| if a.abs() <= t1 || b.abs() <= t2 { 0.0 } else { n / (a * b) })
        .collect()
}

fn predefined_ls(s: &SpectralFilter, w: &SpectralFilter, cfg: SamplingConfig) -> Result<RecoveryDesign> {
    let r_sw = sampled_cross_correlation(s, w, cfg)?;
    RecoveryDesign::new(pseudo_inverse(&r_sw), w.clone(), Strategy::Ls, Mode::Predefined)
}

/// Unconstrained design under the smoothness prior. LS and MX coincide; the
/// design is tagged [`Strategy::Mx`].
pub fn design_smoothness_unconstrained(s: &SpectralFilter, v: &SpectralFilter, cfg: SamplingConfig) -> Result<RecoveryDesign> {
    let wt = smoothness_reconstruction(s, v)?;
    let r = sampled_cross_correlation(s, &wt, cfg)?;
    if let Some((index, _)) = first_vanishing(&r) {
        return Err(Error::SingularCorrelation { index });
    }
    let h = r.iter().map(|v| 1.0 / v).collect();
    RecoveryDesign::new(h, wt, Strategy::Mx, Mode::Unconstrained)
}

/// Predefined design under the smoothness prior. LS does not depend on `v`;
/// DS is not defined for this prior.
pub fn design_smoothness_predefined(
    s: &SpectralFilter,
    v: &SpectralFilter,
    w: &SpectralFilter,
    cfg: SamplingConfig,
    strategy: Strategy,
) -> Result<RecoveryDesign> {
    match strategy {
        Strategy::Ls => design_subspace_predefined(s, s, w, cfg, Strategy::Ls),
        Strategy::Ds => Err(Error::InvalidParameter("smoothness prior has no DS design".into())),
        Strategy::Mx => {
            let wt = smoothness_reconstruction(s, v)?;
            let r_wwt = sampled_cross_correlation(w, &wt, cfg)?;
            let r_swt = sampled_cross_correlation(s, &wt, cfg)?;
            let r_ww = sampled_cross_correlation(w, w, cfg)?;
            if let Some((index, _)) = first_vanishing(&r_swt).or_else(|| first_vanishing(&r_ww)) {
                return Err(Error::SingularCorrelation { index });
            }
            RecoveryDesign::new(ratio(&r_wwt, &r_swt, &r_ww), w.clone(), Strategy::Mx, Mode::Predefined)
        }
    }
}

/// `x~ = U w(Lambda) upsample(h * c)`.
pub fn reconstruct<T: Scalar>(b: &SpectralBasis<T>, design: &RecoveryDesign, chat: &SampledSpectrum<T>) -> Result<DVector<T>> {
    let cfg = chat.config();
    check_len(cfg.k(), design.h.len())?;
    check_len(cfg.n(), design.w.len())?;
    let mut corrected = chat.values().clone();
    scale_by(&mut corrected, &design.h);
    let mut spec = spectral_upsample(&corrected, cfg)?;
    scale_by(&mut spec, design.w.values());
    b.igft(&spec)
}

/// `sum_i v_i^2 |x_hat_i|^2`.
pub fn smoothness_energy<T: Scalar>(b: &SpectralBasis<T>, v: &SpectralFilter, x: &DVector<T>) -> Result<f64> {
    check_len(b.len(), v.len())?;
    let xhat = b.gft(x)?;
    Ok(xhat.iter().zip(v.values()).map(|(c, w)| w * w * c.modulus_squared()).sum())
}

/// `10 log10(|x - x~|^2 / |x|^2)`, floored at [`MSE_FLOOR_DB`].
pub fn mse_db<T: Scalar>(x: &DVector<T>, xtilde: &DVector<T>) -> Result<f64> {
    check_len(x.len(), xtilde.len())?;
    let energy: f64 = x.iter().map(|v| v.modulus_squared()).sum();
    if energy == 0.0 {
        return Err(Error::ZeroReference);
    }
    let err: f64 = x.iter().zip(xtilde.iter()).map(|(a, b)| (*a - *b).modulus_squared()).sum();
    if err == 0.0 {
        return Ok(MSE_FLOOR_DB);
    }
    Ok((10.0 * libm::log10(err / energy)).max(MSE_FLOOR_DB))
}
