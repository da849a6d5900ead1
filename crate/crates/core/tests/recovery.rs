mod common;

use common::*;
use gsamp_core::recovery::*;
use gsamp_core::recovery::Strategy;
use gsamp_core::sampling::{frequency_sample, sampled_cross_correlation, SamplingConfig};
use gsamp_core::spectral::{bandlimited, SpectralFilter};
use gsamp_core::{DMatrix, DVector, Error};
use proptest::prelude::*;

/// Dense Hilbert-space reconstruction operators, `N x N`, built from the
/// subspace operators and general inverses.
struct Dense {
    u: DMatrix<f64>,
    k: usize,
}

impl Dense {
    fn op(&self, f: &SpectralFilter) -> DMatrix<f64> {
        generator_op(&self.u, f, self.k)
    }

    /// `W (W^T W)^-1 W^T`.
    fn proj(&self, w: &DMatrix<f64>) -> DMatrix<f64> {
        w * inv(&(w.transpose() * w)) * w.transpose()
    }

    /// `B (S^T B)^-1 S^T`: oblique projection onto span B along S-perp.
    fn oblique(&self, b: &DMatrix<f64>, s: &DMatrix<f64>) -> DMatrix<f64> {
        b * inv(&(s.transpose() * b)) * s.transpose()
    }

    /// `(V^T V)^-1 S` with `V = U diag(v) U^T`.
    fn smooth_recon(&self, v: &SpectralFilter, s: &DMatrix<f64>) -> DMatrix<f64> {
        let vm = &self.u * diag(v) * self.u.transpose();
        inv(&(vm.transpose() * &vm)) * s
    }
}

fn pipeline(b: &gsamp_core::spectral::SpectralBasis<f64>, d: &RecoveryDesign, s: &SpectralFilter, x: &DVector<f64>, cfg: SamplingConfig) -> DVector<f64> {
    reconstruct(b, d, &frequency_sample(b, s, x, cfg).unwrap()).unwrap()
}

#[test]
fn designs_match_dense_operators() {
    for (case, (n, m)) in [(8, 2), (8, 4), (12, 2), (12, 4), (16, 2), (16, 4), (8, 2), (12, 4), (16, 2), (16, 4)].into_iter().enumerate() {
        let seed = case as u64;
        let (_, b) = sensor_basis(n, seed, case % 2 == 0);
        let cfg = SamplingConfig::new(n, m).unwrap();
        let k = cfg.k();
        let mut r = rng(100 + seed);
        let (s, a, w, v) = (
            random_filter(&mut r, n, 0.5, 1.5),
            random_filter(&mut r, n, 0.5, 1.5),
            random_filter(&mut r, n, 0.5, 1.5),
            random_filter(&mut r, n, 0.5, 1.5),
        );
        let x = random_vector(&mut r, n);
        let dense = Dense { u: b.u().clone(), k };
        let (so, ao, wo) = (dense.op(&s), dense.op(&a), dense.op(&w));
        let wt = dense.smooth_recon(&v, &so);

        let rows: [(&str, RecoveryDesign, DMatrix<f64>); 6] = [
            ("subspace unconstrained", design_subspace_unconstrained(&s, &a, cfg, Strategy::Ds).unwrap(), dense.oblique(&ao, &so)),
            (
                "subspace predefined DS",
                design_subspace_predefined(&s, &a, &w, cfg, Strategy::Ds).unwrap(),
                dense.proj(&wo) * dense.oblique(&ao, &so),
            ),
            (
                "subspace predefined MX",
                design_subspace_predefined(&s, &a, &w, cfg, Strategy::Mx).unwrap(),
                dense.proj(&wo) * dense.oblique(&ao, &so),
            ),
            ("subspace predefined LS", design_subspace_predefined(&s, &a, &w, cfg, Strategy::Ls).unwrap(), dense.oblique(&wo, &so)),
            ("smoothness unconstrained", design_smoothness_unconstrained(&s, &v, cfg).unwrap(), dense.oblique(&wt, &so)),
            (
                "smoothness predefined MX",
                design_smoothness_predefined(&s, &v, &w, cfg, Strategy::Mx).unwrap(),
                dense.proj(&wo) * dense.oblique(&wt, &so),
            ),
        ];
        for (name, design, oracle) in rows {
            let err = max_abs_diff(&pipeline(&b, &design, &s, &x, cfg), &(oracle * &x));
            assert!(err < 1e-9, "{name}, N={n}, M={m}: {err:e}");
        }
    }
}

#[test]
fn predefined_with_w_equal_a_is_unconstrained() {
    let (_, b) = sensor_basis(16, 4, false);
    let cfg = SamplingConfig::new(16, 4).unwrap();
    let mut r = rng(9);
    let (s, a) = (random_filter(&mut r, 16, 0.2, 1.0), random_filter(&mut r, 16, 0.2, 1.0));
    let u = design_subspace_unconstrained(&s, &a, cfg, Strategy::Ds).unwrap();
    let p = design_subspace_predefined(&s, &a, &a, cfg, Strategy::Ds).unwrap();
    let x = random_vector(&mut r, 16);
    for (hu, hp) in u.h().iter().zip(p.h()) {
        assert!((hu - hp).abs() <= 1e-12 * hu.abs(), "{hu} vs {hp}");
    }
    let eu = pipeline(&b, &u, &s, &x, cfg);
    let ep = pipeline(&b, &p, &s, &x, cfg);
    assert!(max_abs_diff(&eu, &ep) < 1e-12);
}

#[test]
fn ls_zeroes_vanishing_correlations() {
    let cfg = SamplingConfig::new(8, 2).unwrap();
    let s = SpectralFilter::from_values(vec![1.0, 1.0, 0.0, 2.0, 0.0, 0.0, 1e-14, 0.0]).unwrap();
    let w = SpectralFilter::constant(8, 1.0);
    let d = design_subspace_predefined(&s, &w, &w, cfg, Strategy::Ls).unwrap();
    let rsw = sampled_cross_correlation(&s, &w, cfg).unwrap();
    let tol = ZERO_TOLERANCE * rsw.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    for (h, r) in d.h().iter().zip(&rsw) {
        if r.abs() <= tol {
            assert_eq!(*h, 0.0);
        } else {
            assert_eq!(*h, 1.0 / r);
        }
    }
    assert_eq!(d.h(), &[1.0, 1.0, 0.0, 0.5]);
}

#[test]
fn ds_violation_reports_index() {
    let cfg = SamplingConfig::new(8, 2).unwrap();
    let s = SpectralFilter::from_values(vec![1.0, 1.0, 0.0, 1.0, 1.0, 1.0, 0.0, 1.0]).unwrap();
    let a = SpectralFilter::constant(8, 1.0);
    assert!(matches!(design_subspace_unconstrained(&s, &a, cfg, Strategy::Ds), Err(Error::DsConditionViolated { index: 2, .. })));
    assert!(!check_ds(&s, &a, cfg, 1e-12).unwrap().holds);
}

#[test]
fn smoothness_predefined_ls_ignores_v() {
    let cfg = SamplingConfig::new(8, 2).unwrap();
    let mut r = rng(3);
    let (s, w) = (random_filter(&mut r, 8, 0.5, 1.5), random_filter(&mut r, 8, 0.5, 1.5));
    let d1 = design_smoothness_predefined(&s, &random_filter(&mut r, 8, 0.5, 1.5), &w, cfg, Strategy::Ls).unwrap();
    let d2 = design_smoothness_predefined(&s, &random_filter(&mut r, 8, 0.5, 1.5), &w, cfg, Strategy::Ls).unwrap();
    assert_eq!(d1.h(), d2.h());
    let v = random_filter(&mut r, 8, 0.5, 1.5);
    assert!(matches!(design_smoothness_predefined(&s, &v, &w, cfg, Strategy::Ds), Err(Error::InvalidParameter(_))));
}

#[test]
fn smoothness_with_laplacian_plus_lowpass_weight() {
    let (_, b) = sensor_basis(64, 2, false);
    let cfg = SamplingConfig::new(64, 4).unwrap();
    let l = b.lambdas();
    let bl = bandlimited(l, cfg.k()).unwrap();
    let v = SpectralFilter::from_values(l.iter().zip(bl.values()).map(|(l, g)| (l.max(0.0) + g).sqrt()).collect()).unwrap();
    let d = design_smoothness_unconstrained(&bl, &v, cfg).unwrap();
    for i in 0..cfg.k() {
        let lam = l[i].max(0.0);
        assert!((d.h()[i] - (lam + 1.0)).abs() < 1e-12 * (lam + 1.0));
        assert!((d.w().values()[i] - 1.0 / (lam + 1.0)).abs() < 1e-12);
    }
}

#[test]
fn bandlimited_pair_needs_no_correction() {
    let (_, b) = sensor_basis(32, 1, false);
    let cfg = SamplingConfig::new(32, 4).unwrap();
    let bl = bandlimited(b.lambdas(), cfg.k()).unwrap();
    let d = design_subspace_unconstrained(&bl, &bl, cfg, Strategy::Ds).unwrap();
    assert!(d.h().iter().all(|&h| h == 1.0));
}

#[test]
fn mse_floor_and_zero_reference() {
    let x = DVector::from_vec(vec![1.0, -2.0]);
    assert_eq!(mse_db(&x, &x).unwrap(), MSE_FLOOR_DB);
    assert!((mse_db(&x, &(&x * 0.9)).unwrap() - (-20.0)).abs() < 1e-12);
    assert!(matches!(mse_db(&DVector::zeros(2), &x), Err(Error::ZeroReference)));
}

fn pgs_case(seed: u64, n_idx: usize, m_idx: usize) -> (gsamp_core::spectral::SpectralBasis<f64>, SamplingConfig, SpectralFilter, SpectralFilter, DVector<f64>) {
    let n = [8, 12, 16, 24][n_idx];
    let m = [2, 4][m_idx];
    let (_, b) = sensor_basis(n, seed, seed % 2 == 0);
    let cfg = SamplingConfig::new(n, m).unwrap();
    let mut r = rng(seed ^ 0xabc);
    let s = random_filter(&mut r, n, 0.3, 1.3);
    let a = random_filter(&mut r, n, 0.3, 1.3);
    let model = PgsModel::new(a.clone(), cfg, b.clone()).unwrap();
    let dhat = DVector::from_fn(cfg.k(), |_, _| rand::Rng::random_range(&mut r, -1.0..1.0));
    let x = generate_pgs(&model, &dhat).unwrap();
    (b, cfg, s, a, x)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn unconstrained_recovers_pgs_signals(seed in 0u64..10_000, n_idx in 0usize..4, m_idx in 0usize..2) {
        let (b, cfg, s, a, x) = pgs_case(seed, n_idx, m_idx);
        let d = design_subspace_unconstrained(&s, &a, cfg, Strategy::Ds).unwrap();
        let xt = pipeline(&b, &d, &s, &x, cfg);
        prop_assert!((&xt - &x).norm() <= 1e-9 * x.norm());
    }

    #[test]
    fn unconstrained_reconstruction_is_idempotent(seed in 0u64..10_000, n_idx in 0usize..4, m_idx in 0usize..2) {
        let (b, cfg, s, a, _) = pgs_case(seed, n_idx, m_idx);
        let mut r = rng(seed);
        let y = random_vector(&mut r, cfg.n());
        let d = design_subspace_unconstrained(&s, &a, cfg, Strategy::Ds).unwrap();
        let once = pipeline(&b, &d, &s, &y, cfg);
        let twice = pipeline(&b, &d, &s, &once, cfg);
        prop_assert!((&twice - &once).norm() <= 1e-9 * once.norm().max(1e-300));
    }

    #[test]
    fn recovered_signal_has_the_same_samples(seed in 0u64..10_000, n_idx in 0usize..4) {
        // consistency: every DS-type design reproduces the measurements
        let (b, cfg, s, a, _) = pgs_case(seed, n_idx, 0);
        let mut r = rng(seed + 1);
        let y = random_vector(&mut r, cfg.n());
        let d = design_subspace_unconstrained(&s, &a, cfg, Strategy::Ds).unwrap();
        let c = frequency_sample(&b, &s, &y, cfg).unwrap();
        let c2 = frequency_sample(&b, &s, &reconstruct(&b, &d, &c).unwrap(), cfg).unwrap();
        prop_assert!((c.values() - c2.values()).amax() < 1e-9 * c.values().amax());
    }
}
