//! Named spectral filters used by configurations and the CLI.

use std::path::Path;

use gsamp_core::spectral::{
    bandlimited, bipartite_recovery, cosine_rolloff, exp_decay, linear_decay, smoothness_weight, SpectralFilter,
};

use crate::io::read_filter;
use crate::{Error, Result};

/// Built-in filter ids.
pub const FILTER_IDS: [&str; 7] = ["g_bl", "g_ir", "generator1", "generator2", "recon_cos", "smooth_v", "ones"];

/// Prefix of ids that load a two-column filter file.
pub const FILE_PREFIX: &str = "file:";

/// Offset added to `lambda_max` by the decaying responses.
pub const DEFAULT_EPS: f64 = 0.1;

/// Frequencies and parameters a filter is instantiated against.
#[derive(Debug, Clone, Copy)]
pub struct FilterContext<'a> {
    pub lambdas: &'a [f64],
    pub lambda_max: f64,
    /// Bandwidth of `g_bl`.
    pub k: usize,
    pub eps: f64,
}

pub fn is_known(id: &str) -> bool {
    FILTER_IDS.contains(&id) || id.strip_prefix(FILE_PREFIX).is_some_and(|p| !p.is_empty())
}

pub fn build(id: &str, ctx: FilterContext<'_>) -> Result<SpectralFilter> {
    let FilterContext { lambdas, lambda_max, k, eps } = ctx;
    let f = match id {
        "g_bl" => bandlimited(lambdas, k)?,
        "g_ir" => bipartite_recovery(lambdas, lambda_max)?,
        "generator1" => linear_decay(lambdas, lambda_max, eps)?,
        "generator2" => exp_decay(lambdas, lambda_max)?,
        "recon_cos" => cosine_rolloff(lambdas, lambda_max, eps)?,
        "smooth_v" => smoothness_weight(lambdas, lambda_max)?,
        "ones" => SpectralFilter::constant(lambdas.len(), 1.0),
        other => match other.strip_prefix(FILE_PREFIX) {
            Some(path) => from_file(Path::new(path), lambdas)?,
            None => return Err(Error::Config(format!("unknown filter id {other:?}"))),
        },
    };
    Ok(f)
}

/// Loads a filter file whose frequency column must match `lambdas`.
fn from_file(path: &Path, lambdas: &[f64]) -> Result<SpectralFilter> {
    let (file_lambdas, f) = read_filter(path)?;
    if file_lambdas.len() != lambdas.len() {
        return Err(Error::Config(format!(
            "{} has {} frequencies, graph has {}",
            path.display(),
            file_lambdas.len(),
            lambdas.len()
        )));
    }
    let scale = lambdas.iter().fold(1.0_f64, |m, l| m.max(l.abs()));
    if let Some(i) = file_lambdas.iter().zip(lambdas).position(|(a, b)| (a - b).abs() > 1e-8 * scale) {
        return Err(Error::Config(format!("{}: frequency {i} does not match the graph", path.display())));
    }
    Ok(f)
}
