//! TOML experiment configuration.
//!
//! ```toml
//! trials = 100
//! rng_seed = 0
//! noise_variance = 0.0
//! prior = "subspace"          # subspace | smoothness | bandlimited
//! mode = "unconstrained"      # unconstrained | predefined
//! strategy = "ds"             # ds | ls | mx
//! generator = "generator1"
//! sampling_filter = "g_ir"
//!
//! [graph]
//! kind = "sensor"             # sensor | circular | bipartite | file
//! n = 256
//! seed = 1
//!
//! [sampling]
//! m = 8
//! ```

use std::path::{Path, PathBuf};

use gsamp_core::graph::OperatorKind;
use gsamp_core::recovery::{Mode, Strategy};
use serde::{Deserialize, Serialize};

use crate::registry::{self, DEFAULT_EPS};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphKind {
    Sensor,
    Circular,
    Bipartite,
    File,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OperatorChoice {
    #[default]
    Combinatorial,
    Normalized,
}

impl From<OperatorChoice> for OperatorKind {
    fn from(o: OperatorChoice) -> Self {
        match o {
            OperatorChoice::Combinatorial => OperatorKind::Combinatorial,
            OperatorChoice::Normalized => OperatorKind::SymmetricNormalized,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphSpec {
    pub kind: GraphKind,
    /// Vertex count; total over both parts for bipartite graphs.
    #[serde(default)]
    pub n: Option<usize>,
    #[serde(default)]
    pub seed: u64,
    /// Variation operator of the recovery experiments. The bipartite
    /// experiment always uses the normalized Laplacian.
    #[serde(default)]
    pub operator: OperatorChoice,
    #[serde(default)]
    pub neighbors: Option<usize>,
    #[serde(default)]
    pub edge_prob: Option<f64>,
    /// Edge-list file for `kind = "file"`, relative to the config file.
    #[serde(default)]
    pub path: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SamplingSpec {
    pub m: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PriorChoice {
    Subspace,
    Smoothness,
    /// Reference method: `s = w = g_bl`, no correction.
    Bandlimited,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeChoice {
    Unconstrained,
    Predefined,
}

impl From<ModeChoice> for Mode {
    fn from(m: ModeChoice) -> Self {
        match m {
            ModeChoice::Unconstrained => Mode::Unconstrained,
            ModeChoice::Predefined => Mode::Predefined,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StrategyChoice {
    Ds,
    Ls,
    Mx,
}

impl From<StrategyChoice> for Strategy {
    fn from(s: StrategyChoice) -> Self {
        match s {
            StrategyChoice::Ds => Strategy::Ds,
            StrategyChoice::Ls => Strategy::Ls,
            StrategyChoice::Mx => Strategy::Mx,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BipartiteSpec {
    /// Chebyshev orders of the sweep.
    #[serde(default = "default_orders")]
    pub orders: Vec<usize>,
}

impl Default for BipartiteSpec {
    fn default() -> Self {
        Self { orders: default_orders() }
    }
}

fn default_orders() -> Vec<usize> {
    vec![2, 4, 8, 16, 24, 32]
}

fn default_trials() -> usize {
    100
}

fn default_eps() -> f64 {
    DEFAULT_EPS
}

fn default_one() -> f64 {
    1.0
}

fn default_true() -> bool {
    true
}

fn default_generator() -> String {
    "generator1".into()
}

fn default_sampling() -> String {
    "g_bl".into()
}

fn default_recon() -> String {
    "recon_cos".into()
}

fn default_smoothness() -> String {
    "smooth_v".into()
}

fn default_prior() -> PriorChoice {
    PriorChoice::Subspace
}

fn default_mode() -> ModeChoice {
    ModeChoice::Unconstrained
}

fn default_strategy() -> StrategyChoice {
    StrategyChoice::Ds
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default)]
    pub rng_seed: u64,
    /// Variance of the white noise added to `x` before sampling.
    #[serde(default)]
    pub noise_variance: f64,
    #[serde(default = "default_eps")]
    pub eps: f64,
    #[serde(default = "default_prior")]
    pub prior: PriorChoice,
    #[serde(default = "default_mode")]
    pub mode: ModeChoice,
    #[serde(default = "default_strategy")]
    pub strategy: StrategyChoice,
    #[serde(default = "default_generator")]
    pub generator: String,
    #[serde(default = "default_sampling")]
    pub sampling_filter: String,
    #[serde(default = "default_recon")]
    pub recon_filter: String,
    #[serde(default = "default_smoothness")]
    pub smoothness_filter: String,
    /// Mean of the expansion coefficients.
    #[serde(default = "default_one")]
    pub coefficient_mean: f64,
    #[serde(default = "default_one")]
    pub coefficient_variance: f64,
    #[serde(default = "default_true")]
    pub parallel: bool,
    pub graph: GraphSpec,
    pub sampling: SamplingSpec,
    #[serde(default)]
    pub bipartite: BipartiteSpec,
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Reads a config file; a relative graph path is resolved against the
    /// file's directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        let mut cfg = Self::from_toml(&text)?;
        if let (Some(p), Some(dir)) = (cfg.graph.path.as_mut(), path.parent()) {
            if p.is_relative() {
                *p = dir.join(&*p);
            }
        }
        Ok(cfg)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if !(self.noise_variance >= 0.0 && self.noise_variance.is_finite()) {
            return bad(format!("noise_variance must be finite and nonnegative, got {}", self.noise_variance));
        }
        if !(self.coefficient_variance >= 0.0 && self.coefficient_variance.is_finite()) {
            return bad("coefficient_variance must be finite and nonnegative".into());
        }
        if !self.coefficient_mean.is_finite() {
            return bad("coefficient_mean must be finite".into());
        }
        if !(self.eps >= 0.0 && self.eps.is_finite()) {
            return bad(format!("eps must be nonnegative, got {}", self.eps));
        }
        for id in [&self.generator, &self.sampling_filter, &self.recon_filter, &self.smoothness_filter] {
            if !registry::is_known(id) {
                return bad(format!("unknown filter id {id:?}"));
            }
        }
        if self.sampling.m == 0 {
            return bad("sampling.m must be positive".into());
        }
        if self.bipartite.orders.contains(&0) {
            return bad("Chebyshev orders must be positive".into());
        }
        let g = &self.graph;
        match g.kind {
            GraphKind::File => {
                if g.path.is_none() {
                    return bad("graph.path is required for kind = \"file\"".into());
                }
            }
            kind => {
                let Some(n) = g.n else {
                    return bad("graph.n is required".into());
                };
                if n < 2 {
                    return bad(format!("graph.n must be at least 2, got {n}"));
                }
                if kind == GraphKind::Bipartite && n % 2 != 0 {
                    return bad(format!("bipartite graph.n must be even, got {n}"));
                }
                if n % self.sampling.m != 0 {
                    return bad(format!("sampling.m = {} does not divide graph.n = {n}", self.sampling.m));
                }
            }
        }
        if let Some(p) = g.edge_prob {
            if !(p > 0.0 && p <= 1.0) {
                return bad(format!("graph.edge_prob must lie in (0, 1], got {p}"));
            }
        }
        Ok(())
    }
}
