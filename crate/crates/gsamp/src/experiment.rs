//! Monte Carlo recovery experiments over seeded trials.
//!
//! Every trial draws from its own ChaCha8 stream (`seed_from_u64(rng_seed)`
//! with the stream set to the trial index), so parallel and serial runs
//! produce the same rows in the same order.

use std::collections::BTreeMap;

use gsamp_core::bipartite::{
    build_wprime, decode_one_branch, one_branch_roundtrip, verify_corollary1, vertex_pipeline, vertex_pipeline_polynomial, wprime_response, BipartiteSystem,
    NORMALIZED_INTERVAL,
};
use gsamp_core::graph::{
    combinatorial_laplacian, gen_circular, gen_random_bipartite_with, gen_random_sensor_with, normalized_laplacian,
    Graph, OperatorKind, SensorParams, VariationOperator, DEFAULT_BIPARTITE_EDGE_PROB, DEFAULT_SENSOR_NEIGHBORS,
};
use gsamp_core::recovery::{
    design_smoothness_predefined, design_smoothness_unconstrained, design_subspace_predefined,
    design_subspace_unconstrained, generate_pgs, mse_db, reconstruct, Mode, PgsModel, RecoveryDesign, Strategy,
};
use gsamp_core::sampling::{frequency_sample, spectral_fold, SampledSpectrum, SamplingConfig};
use gsamp_core::spectral::{
    bandlimited, chebyshev_fit, dft_basis, eigendecompose, Response, Scalar, SpectralBasis, SpectralFilter,
};
use gsamp_core::{Complex, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;

use crate::config::{ExperimentConfig, GraphKind, PriorChoice};
use crate::io::{load_graph, mode_name, strategy_name, Payload};
use crate::registry::{self, FilterContext};
use crate::report::{fill_means, Report, Row};
use crate::{Error, Result};

/// Noise variance of the noisy half of the table2 grid.
pub const TABLE2_NOISE: f64 = 0.1;
/// Generators of the table2 grid.
pub const TABLE2_GENERATORS: [&str; 2] = ["generator1", "generator2"];
/// Sampling filters of the table2 grid.
pub const TABLE2_SAMPLING: [&str; 2] = ["g_bl", "g_ir"];

/// A recovery method: prior, mode and strategy. `strategy` is `None` only
/// for the bandlimited reference.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Method {
    pub prior: PriorChoice,
    pub mode: Mode,
    pub strategy: Option<Strategy>,
}

impl Method {
    pub const BASELINE: Method = Method { prior: PriorChoice::Bandlimited, mode: Mode::Predefined, strategy: None };

    /// The five designs compared per sampling filter in the table2 grid.
    pub const TABLE2: [Method; 5] = [
        Method { prior: PriorChoice::Subspace, mode: Mode::Unconstrained, strategy: Some(Strategy::Ds) },
        Method { prior: PriorChoice::Subspace, mode: Mode::Predefined, strategy: Some(Strategy::Ds) },
        Method { prior: PriorChoice::Subspace, mode: Mode::Predefined, strategy: Some(Strategy::Ls) },
        Method { prior: PriorChoice::Smoothness, mode: Mode::Unconstrained, strategy: Some(Strategy::Mx) },
        Method { prior: PriorChoice::Smoothness, mode: Mode::Predefined, strategy: Some(Strategy::Mx) },
    ];

    pub fn prior_name(&self) -> &'static str {
        prior_name(self.prior)
    }

    pub fn mode_label(&self) -> &'static str {
        if self.strategy.is_none() {
            "baseline"
        } else {
            mode_name(self.mode)
        }
    }

    pub fn strategy_label(&self) -> &'static str {
        self.strategy.map_or("none", strategy_name)
    }
}

fn prior_name(p: PriorChoice) -> &'static str {
    match p {
        PriorChoice::Subspace => "subspace",
        PriorChoice::Smoothness => "smoothness",
        PriorChoice::Bandlimited => "bandlimited",
    }
}

/// GFT basis of an experiment graph.
#[derive(Debug, Clone)]
pub enum Basis {
    Real(SpectralBasis<f64>),
    /// DFT basis of a circular graph.
    Complex(SpectralBasis<Complex<f64>>),
}

impl Basis {
    pub fn lambdas(&self) -> &[f64] {
        match self {
            Basis::Real(b) => b.lambdas(),
            Basis::Complex(b) => b.lambdas(),
        }
    }
}

/// Graph, basis and sampling configuration of a recovery experiment.
#[derive(Debug, Clone)]
pub struct Setup {
    pub graph: Graph,
    pub operator: OperatorKind,
    pub basis: Basis,
    pub cfg: SamplingConfig,
    pub lambda_max: f64,
}

impl Setup {
    pub fn filter_context(&self, eps: f64) -> FilterContext<'_> {
        FilterContext { lambdas: self.basis.lambdas(), lambda_max: self.lambda_max, k: self.cfg.k(), eps }
    }
}

pub fn build_graph(config: &ExperimentConfig) -> Result<Graph> {
    let spec = &config.graph;
    let n = spec.n.unwrap_or(0);
    let g = match spec.kind {
        GraphKind::Sensor => gen_random_sensor_with(
            n,
            spec.seed,
            SensorParams { neighbors: spec.neighbors.unwrap_or(DEFAULT_SENSOR_NEIGHBORS) },
        )?,
        GraphKind::Circular => gen_circular(n)?,
        GraphKind::Bipartite => {
            gen_random_bipartite_with(n / 2, spec.seed, spec.edge_prob.unwrap_or(DEFAULT_BIPARTITE_EDGE_PROB))?
        }
        GraphKind::File => {
            let path = spec.path.as_deref().ok_or_else(|| Error::Config("graph.path is required".into()))?;
            load_graph(path)?
        }
    };
    Ok(g)
}

fn operator(g: &Graph, kind: OperatorKind) -> Result<VariationOperator> {
    Ok(match kind {
        OperatorKind::Combinatorial => combinatorial_laplacian(g),
        OperatorKind::SymmetricNormalized => normalized_laplacian(g)?,
    })
}

/// Builds the graph and its basis. Circular graphs use the DFT basis; their
/// frequencies are halved under the normalized operator (every degree is 2).
pub fn build_setup(config: &ExperimentConfig) -> Result<Setup> {
    let graph = build_graph(config)?;
    let kind: OperatorKind = config.graph.operator.into();
    let cfg = SamplingConfig::new(graph.n(), config.sampling.m)?;
    let basis = if config.graph.kind == GraphKind::Circular {
        let b = dft_basis(graph.n())?;
        match kind {
            OperatorKind::Combinatorial => Basis::Complex(b),
            OperatorKind::SymmetricNormalized => {
                let half = b.lambdas().iter().map(|l| l / 2.0).collect();
                Basis::Complex(SpectralBasis::from_parts(b.u().clone(), half)?)
            }
        }
    } else {
        Basis::Real(eigendecompose(&operator(&graph, kind)?)?)
    };
    let lambda_max = basis.lambdas().iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(Setup { graph, operator: kind, basis, cfg, lambda_max })
}

/// Filters shared by all methods of one generator.
struct Filters {
    a: SpectralFilter,
    w: SpectralFilter,
    v: SpectralFilter,
    bl: SpectralFilter,
}

impl Filters {
    fn new(setup: &Setup, config: &ExperimentConfig, generator: &str) -> Result<Self> {
        let ctx = setup.filter_context(config.eps);
        Ok(Self {
            a: registry::build(generator, ctx)?,
            w: registry::build(&config.recon_filter, ctx)?,
            v: registry::build(&config.smoothness_filter, ctx)?,
            bl: registry::build("g_bl", ctx)?,
        })
    }
}

/// Designs `method` for sampling filter `s`.
fn design(method: Method, s: &SpectralFilter, f: &Filters, cfg: SamplingConfig) -> Result<RecoveryDesign> {
    let Some(strategy) = method.strategy else {
        return Ok(RecoveryDesign::new(vec![1.0; cfg.k()], f.bl.clone(), Strategy::Ds, Mode::Predefined)?);
    };
    let d = match (method.prior, method.mode) {
        (PriorChoice::Subspace, Mode::Unconstrained) => design_subspace_unconstrained(s, &f.a, cfg, strategy)?,
        (PriorChoice::Subspace, Mode::Predefined) => design_subspace_predefined(s, &f.a, &f.w, cfg, strategy)?,
        (PriorChoice::Smoothness, Mode::Unconstrained) => design_smoothness_unconstrained(s, &f.v, cfg)?,
        (PriorChoice::Smoothness, Mode::Predefined) => design_smoothness_predefined(s, &f.v, &f.w, cfg, strategy)?,
        (PriorChoice::Bandlimited, _) => {
            return Err(Error::Config("the bandlimited prior has no strategy".into()));
        }
    };
    Ok(d)
}

/// One (sampling filter, design) pair evaluated on every trial signal.
struct Group {
    row: Row,
    s: SpectralFilter,
    design: RecoveryDesign,
}

#[derive(Debug, Clone, Copy)]
struct Draw {
    mean: f64,
    std: f64,
    noise_std: f64,
}

impl Draw {
    fn new(config: &ExperimentConfig, noise: f64) -> Self {
        Self { mean: config.coefficient_mean, std: config.coefficient_variance.sqrt(), noise_std: noise.sqrt() }
    }
}

fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

fn normal(mean: f64, std: f64) -> Result<Normal<f64>> {
    Normal::new(mean, std).map_err(|e| Error::Config(format!("normal({mean}, {std}): {e}")))
}

/// Clean and observed signal of one trial. Noise is white, real, added in
/// the vertex domain.
fn trial_signal<T: Scalar>(model: &PgsModel<T>, draw: Draw, seed: u64, trial: usize) -> Result<(DVector<T>, DVector<T>)> {
    let mut rng = trial_rng(seed, trial);
    let coeff = normal(draw.mean, draw.std)?;
    let k = model.config().k();
    let dhat = DVector::from_fn(k, |_, _| T::from_real(coeff.sample(&mut rng)));
    let x = generate_pgs(model, &dhat)?;
    if draw.noise_std == 0.0 {
        return Ok((x.clone(), x));
    }
    let noise = normal(0.0, draw.noise_std)?;
    let observed = DVector::from_fn(x.len(), |i, _| x[i] + T::from_real(noise.sample(&mut rng)));
    Ok((x, observed))
}

fn map_trials<R: Send>(trials: usize, parallel: bool, f: impl Fn(usize) -> Result<R> + Sync + Send) -> Result<Vec<R>> {
    if parallel {
        (0..trials).into_par_iter().map(f).collect()
    } else {
        (0..trials).map(f).collect()
    }
}

/// Per-trial MSE of every group, trial-major.
fn evaluate<T: Scalar + Send + Sync>(
    basis: &SpectralBasis<T>,
    a: &SpectralFilter,
    cfg: SamplingConfig,
    groups: &[Group],
    draw: Draw,
    config: &ExperimentConfig,
) -> Result<Vec<Vec<f64>>> {
    let model = PgsModel::new(a.clone(), cfg, basis.clone())?;
    map_trials(config.trials, config.parallel, |t| {
        let (x, observed) = trial_signal(&model, draw, config.rng_seed, t)?;
        let xhat = basis.gft(&observed)?;
        groups
            .iter()
            .map(|g| {
                let filtered = DVector::from_fn(xhat.len(), |i, _| xhat[i] * T::from_real(g.s.values()[i]));
                let chat = spectral_fold(&filtered, cfg)?;
                Ok(mse_db(&x, &reconstruct(basis, &g.design, &chat)?)?)
            })
            .collect()
    })
}

/// Appends one row per (group, trial), group-major.
fn push_rows(out: &mut Vec<Row>, groups: &[Group], mse: &[Vec<f64>]) {
    for (gi, g) in groups.iter().enumerate() {
        for (t, per_trial) in mse.iter().enumerate() {
            out.push(Row { trial: Some(t), mse_db: per_trial[gi], ..g.row.clone() });
        }
    }
}

fn run_groups(setup: &Setup, a: &SpectralFilter, groups: &[Group], draw: Draw, config: &ExperimentConfig) -> Result<Vec<Vec<f64>>> {
    match &setup.basis {
        Basis::Real(b) => evaluate(b, a, setup.cfg, groups, draw, config),
        Basis::Complex(b) => evaluate(b, a, setup.cfg, groups, draw, config),
    }
}

fn make_group(
    method: Method,
    sampling_id: &str,
    generator: &str,
    noise: f64,
    setup: &Setup,
    filters: &Filters,
    config: &ExperimentConfig,
) -> Result<Group> {
    let s = registry::build(sampling_id, setup.filter_context(config.eps))?;
    let design = design(method, &s, filters, setup.cfg)?;
    let row = Row {
        prior: method.prior_name().into(),
        mode: method.mode_label().into(),
        strategy: method.strategy_label().into(),
        sampling_filter: sampling_id.into(),
        generator: generator.into(),
        noise,
        trial: None,
        mse_db: 0.0,
        mean_mse_db: 0.0,
    };
    Ok(Group { row, s, design })
}

/// The single method selected by `config`.
pub fn configured_method(config: &ExperimentConfig) -> Method {
    match config.prior {
        PriorChoice::Bandlimited => Method::BASELINE,
        prior => Method { prior, mode: config.mode.into(), strategy: Some(config.strategy.into()) },
    }
}

/// Design of the configured method against `setup`.
pub fn configured_design(setup: &Setup, config: &ExperimentConfig) -> Result<RecoveryDesign> {
    let filters = Filters::new(setup, config, &config.generator)?;
    let s = registry::build(&config.sampling_filter, setup.filter_context(config.eps))?;
    design(configured_method(config), &s, &filters, setup.cfg)
}

/// Sampled spectrum of trial 0 of the configured experiment. Only defined
/// for real bases.
pub fn first_spectrum(setup: &Setup, config: &ExperimentConfig) -> Result<SampledSpectrum<f64>> {
    let Basis::Real(b) = &setup.basis else {
        return Err(Error::Config("spectrum output needs a real basis; circular graphs use the DFT".into()));
    };
    let ctx = setup.filter_context(config.eps);
    let a = registry::build(&config.generator, ctx)?;
    let s = registry::build(&config.sampling_filter, ctx)?;
    let model = PgsModel::new(a, setup.cfg, b.clone())?;
    let (_, observed) = trial_signal(&model, Draw::new(config, config.noise_variance), config.rng_seed, 0)?;
    Ok(frequency_sample(b, &s, &observed, setup.cfg)?)
}

fn base_metadata(setup: &Setup, config: &ExperimentConfig) -> BTreeMap<String, String> {
    let spec = &config.graph;
    let mut m = BTreeMap::new();
    let mut put = |k: &str, v: String| {
        m.insert(k.to_string(), v);
    };
    put("graph.kind", format!("{:?}", spec.kind).to_lowercase());
    put("graph.n", setup.graph.n().to_string());
    put("graph.seed", spec.seed.to_string());
    put("graph.edges", setup.graph.edge_count().to_string());
    put("operator", format!("{:?}", setup.operator));
    put("lambda_max", setup.lambda_max.to_string());
    put("k", setup.cfg.k().to_string());
    put("m", setup.cfg.m().to_string());
    put("eps", config.eps.to_string());
    put("trials", config.trials.to_string());
    put("rng_seed", config.rng_seed.to_string());
    put("rng", "ChaCha8, one stream per trial".into());
    put("coefficients", format!("normal(mean {}, variance {})", config.coefficient_mean, config.coefficient_variance));
    put("noise", "white normal noise added to x before sampling; mse against the clean x".into());
    put("mse", "10 log10(|x - x~|^2 / |x|^2), floored at -320 dB".into());
    m
}

fn finish(metadata: BTreeMap<String, String>, mut rows: Vec<Row>) -> Report {
    fill_means(&mut rows);
    Report { metadata, rows }
}

/// Runs the method selected by `config` for its generator, sampling filter
/// and noise level.
pub fn run_recovery_experiment(config: &ExperimentConfig) -> Result<Report> {
    config.validate()?;
    let setup = build_setup(config)?;
    let filters = Filters::new(&setup, config, &config.generator)?;
    let sampling = if config.prior == PriorChoice::Bandlimited { "g_bl" } else { config.sampling_filter.as_str() };
    let group = make_group(
        configured_method(config),
        sampling,
        &config.generator,
        config.noise_variance,
        &setup,
        &filters,
        config,
    )?;
    let groups = [group];
    let mse = run_groups(&setup, &filters.a, &groups, Draw::new(config, config.noise_variance), config)?;
    let mut rows = Vec::new();
    push_rows(&mut rows, &groups, &mse);
    Ok(finish(base_metadata(&setup, config), rows))
}

/// The table2 grid: for both generators and both noise levels, the five
/// methods under both sampling filters plus the bandlimited reference,
/// 44 groups in all. All groups of one (generator, noise) cell share the
/// trial signals.
pub fn run_table2(config: &ExperimentConfig) -> Result<Report> {
    config.validate()?;
    let setup = build_setup(config)?;
    let mut rows = Vec::new();
    for generator in TABLE2_GENERATORS {
        let filters = Filters::new(&setup, config, generator)?;
        for noise in [0.0, TABLE2_NOISE] {
            let mut groups = Vec::new();
            for method in Method::TABLE2 {
                for s in TABLE2_SAMPLING {
                    groups.push(make_group(method, s, generator, noise, &setup, &filters, config)?);
                }
            }
            groups.push(make_group(Method::BASELINE, "g_bl", generator, noise, &setup, &filters, config)?);
            let mse = run_groups(&setup, &filters.a, &groups, Draw::new(config, noise), config)?;
            push_rows(&mut rows, &groups, &mse);
        }
    }
    let mut metadata = base_metadata(&setup, config);
    metadata.insert(
        "k_choice".into(),
        format!("K = {} (M = {}) for N = {}", setup.cfg.k(), setup.cfg.m(), setup.cfg.n()),
    );
    metadata.insert("noise_levels".into(), format!("0, {TABLE2_NOISE}"));
    Ok(finish(metadata, rows))
}

/// Bipartite system of a bipartite experiment config, with `M = 2` enforced.
pub fn build_bipartite(config: &ExperimentConfig) -> Result<BipartiteSystem> {
    if config.sampling.m != 2 {
        return Err(Error::Config(format!("bipartite experiments sample with m = 2, got {}", config.sampling.m)));
    }
    if !matches!(config.graph.kind, GraphKind::Bipartite | GraphKind::File) {
        return Err(Error::Config("bipartite experiments need kind = \"bipartite\" or a bipartite file".into()));
    }
    Ok(BipartiteSystem::build(&build_graph(config)?)?)
}

/// Generator of the bipartite experiment. `lambda_max` is the exact bound 2
/// rather than the computed largest eigenvalue, which may exceed it by an
/// ulp and move frequencies at 1 off the flat part of `g_ir`.
fn bipartite_generator(sys: &BipartiteSystem, config: &ExperimentConfig) -> Result<SpectralFilter> {
    let lambdas = sys.basis().lambdas();
    let ctx = FilterContext { lambdas, lambda_max: NORMALIZED_INTERVAL.1, k: sys.config().k(), eps: config.eps };
    let a = registry::build(&config.generator, ctx)?;
    if a.response().is_none() {
        return Err(Error::Config(format!("generator {:?} has no closed-form response", config.generator)));
    }
    Ok(a)
}

/// One-branch compression on a bipartite graph: the exact round trip, then
/// for every Chebyshev order the polynomial pipeline with the low-pass
/// sampling filter and the corrected `W'`, and the same order applied to
/// the uncorrected bandlimited pair as a reference.
pub fn run_bipartite_experiment(config: &ExperimentConfig) -> Result<Report> {
    config.validate()?;
    if config.sampling_filter != "g_bl" {
        return Err(Error::Config("the bipartite experiment samples with g_bl".into()));
    }
    let sys = build_bipartite(config)?;
    let a = bipartite_generator(&sys, config)?;
    let response = a.response().cloned().expect("checked above");
    let lambdas = sys.basis().lambdas();
    let k = sys.config().k();
    let bl = bandlimited(lambdas, k)?;
    let bl_response = bl.response().cloned().expect("bandlimited filters carry a response");

    let design = design_subspace_unconstrained(&bl, &a, sys.config(), Strategy::Ds)?;
    let h = design.h().to_vec();
    let wresp = wprime_response(&sys, |l| response.eval(l), &h)?;
    let (lo, hi) = NORMALIZED_INTERVAL;
    let mut fits = Vec::new();
    for &p in &config.bipartite.orders {
        let g = chebyshev_fit(|l| bl_response.eval(l), lo, hi, p)?;
        let w = chebyshev_fit(&wresp, lo, hi, p)?;
        fits.push((p, g, w));
    }

    let coeff = normal(config.coefficient_mean, config.coefficient_variance.sqrt())?;
    let per_trial = map_trials(config.trials, config.parallel, |t| {
        let mut rng = trial_rng(config.rng_seed, t);
        let d = DVector::from_fn(k, |_, _| coeff.sample(&mut rng));
        let branch = one_branch_roundtrip(&sys, &a, &d)?;
        let x = branch.original;
        let mut out = vec![mse_db(&x, &branch.decoded)?];
        out.push(mse_db(&x, &vertex_pipeline(&sys, &bl, &bl, &x)?)?);
        for (_, g, w) in &fits {
            out.push(mse_db(&x, &vertex_pipeline_polynomial(&sys, g, w, &x)?)?);
            out.push(mse_db(&x, &vertex_pipeline_polynomial(&sys, g, g, &x)?)?);
        }
        Ok(out)
    })?;

    let row = |prior: &str, mode: String, strategy: &str| Row {
        prior: prior.into(),
        mode,
        strategy: strategy.into(),
        sampling_filter: "g_bl".into(),
        generator: config.generator.clone(),
        noise: 0.0,
        trial: None,
        mse_db: 0.0,
        mean_mse_db: 0.0,
    };
    let mut labels = vec![row("subspace", "exact".into(), "DS"), row("bandlimited", "exact".into(), "none")];
    for (p, _, _) in &fits {
        labels.push(row("subspace", format!("chebyshev:P={p}"), "DS"));
        labels.push(row("bandlimited", format!("chebyshev:P={p}"), "none"));
    }
    let mut rows = Vec::new();
    for (gi, label) in labels.iter().enumerate() {
        for (t, mse) in per_trial.iter().enumerate() {
            rows.push(Row { trial: Some(t), mse_db: mse[gi], ..label.clone() });
        }
    }

    let mut metadata = BTreeMap::new();
    metadata.insert("graph.kind".into(), format!("{:?}", config.graph.kind).to_lowercase());
    metadata.insert("graph.n".into(), sys.n().to_string());
    metadata.insert("graph.seed".into(), config.graph.seed.to_string());
    metadata.insert("graph.edges".into(), sys.graph().edge_count().to_string());
    metadata.insert("operator".into(), "SymmetricNormalized".into());
    metadata.insert("k".into(), k.to_string());
    metadata.insert("m".into(), "2".into());
    metadata.insert("trials".into(), config.trials.to_string());
    metadata.insert("rng_seed".into(), config.rng_seed.to_string());
    metadata.insert("rng".into(), "ChaCha8, one stream per trial".into());
    metadata.insert(
        "coefficients".into(),
        format!("normal(mean {}, variance {})", config.coefficient_mean, config.coefficient_variance),
    );
    metadata.insert("signal".into(), "x = W' I_V1^T d".into());
    metadata.insert("chebyshev_interval".into(), format!("[{lo}, {hi}]"));
    metadata.insert(
        "chebyshev_grid_error".into(),
        fits.iter().map(|(p, g, w)| format!("P={p}:{:.3e}/{:.3e}", g.grid_error(), w.grid_error())).collect::<Vec<_>>().join(" "),
    );
    Ok(finish(metadata, rows))
}

/// Encodes trial 0 of the bipartite experiment for transmission.
pub fn encode_payload(config: &ExperimentConfig) -> Result<Payload> {
    let sys = build_bipartite(config)?;
    let a = bipartite_generator(&sys, config)?;
    let k = sys.config().k();
    let coeff = normal(config.coefficient_mean, config.coefficient_variance.sqrt())?;
    let mut rng = trial_rng(config.rng_seed, 0);
    let d = DVector::from_fn(k, |_, _| coeff.sample(&mut rng));
    let branch = one_branch_roundtrip(&sys, &a, &d)?;
    Ok(Payload {
        n: sys.n(),
        generator: a.response().cloned().expect("checked by bipartite_generator"),
        values: branch.encoded.values().iter().copied().collect(),
    })
}

/// Rebuilds the signal from a payload and the graph alone.
pub fn decode_payload(sys: &BipartiteSystem, payload: &Payload) -> Result<DVector<f64>> {
    if payload.n != sys.n() {
        return Err(Error::Config(format!("payload is for N = {}, graph has {}", payload.n, sys.n())));
    }
    let lambdas = sys.basis().lambdas();
    let a = SpectralFilter::from_response(lambdas, payload.generator.clone())?;
    let s = bandlimited(lambdas, sys.config().k())?;
    let design = design_subspace_unconstrained(&s, &a, sys.config(), Strategy::Ds)?;
    let wprime = build_wprime(design.w(), design.h())?;
    let encoded = SampledSpectrum::new(DVector::from_vec(payload.values.clone()), sys.config())?;
    Ok(decode_one_branch(sys, &wprime, &encoded)?)
}

/// Residuals of the vertex/frequency sampling identity and of the one-branch
/// pipeline on the configured bipartite graph; the second uses the configured sampling filter on an all-ones signal.
pub fn verify_theorem1(config: &ExperimentConfig) -> Result<(f64, f64)> {
    let sys = build_bipartite(config)?;
    let lambdas = sys.basis().lambdas();
    let ctx = FilterContext { lambdas, lambda_max: NORMALIZED_INTERVAL.1, k: sys.config().k(), eps: config.eps };
    let s = registry::build(&config.sampling_filter, ctx)?;
    let x = DVector::from_fn(sys.n(), |i, _| 1.0 + i as f64 / sys.n() as f64);
    let corollary = verify_corollary1(&sys, &s, &x)? / x.norm();
    Ok((sys.theorem1_residual(), corollary))
}

/// Response of a named filter, if it has one, for `filters dump` headers.
pub fn describe(response: Option<&Response>) -> String {
    match response {
        Some(r) => {
            let params: Vec<String> = r.params().iter().map(|p| p.to_string()).collect();
            format!("{} {}", r.name(), params.join(" ")).trim_end().to_string()
        }
        None => "tabulated".into(),
    }
}
