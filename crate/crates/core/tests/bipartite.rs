mod common;

use common::*;
use gsamp_core::bipartite::*;
use gsamp_core::graph::{complete_bipartite, gen_random_bipartite, gen_random_bipartite_with, kron_reduce, Bipartition, Graph};
use gsamp_core::recovery::{design_subspace_unconstrained, mse_db, reconstruct, Strategy};
use gsamp_core::sampling::frequency_sample;
use gsamp_core::spectral::{bandlimited, bipartite_recovery, Response};
use gsamp_core::{DMatrix, DVector, Error};
use proptest::prelude::*;

/// Random bipartite graphs with sizes spread over 8..=128.
fn corpus() -> Vec<Graph> {
    (0..20u64).map(|i| gen_random_bipartite(4 + (i as usize * 60) / 19, 1000 + i).unwrap()).collect()
}

#[test]
fn sampling_identity_holds_on_corpus() {
    let mut graphs = vec![complete_bipartite(2, 2).unwrap(), complete_bipartite(4, 4).unwrap()];
    graphs.extend(corpus());
    assert_eq!(graphs.last().unwrap().n(), 128);
    for g in &graphs {
        let sys = BipartiteSystem::build(g).unwrap();
        let r = sys.theorem1_residual();
        assert!(r <= 1e-8, "N={}: {r:e}", g.n());
        let l = sys.basis().lambdas();
        let h = g.n() / 2;
        for i in 0..h {
            assert!((l[i] + l[i + h] - 2.0).abs() < 1e-8);
        }
        // the reduced basis diagonalizes the Kron-reduced Laplacian
        let kr = kron_reduce(sys.operator(), sys.v1()).unwrap();
        assert!(sys.reduced_basis().diagonalization_error(kr.matrix()) < 1e-8);
    }
}

#[test]
fn sampling_identity_dense_check_on_k22() {
    let sys = BipartiteSystem::build(&complete_bipartite(2, 2).unwrap()).unwrap();
    // U_r [I I] U_B^T with U_r scaled by 1/sqrt(2)
    let ur = sys.reduced_basis().u() / 2f64.sqrt();
    let lhs = ur * d_samp(4, 2) * sys.basis().u().transpose();
    let want = DMatrix::from_fn(2, 4, |r, c| if r == c { 1.0 } else { 0.0 });
    assert!((lhs - want).amax() < 1e-12);
}

#[test]
fn vertex_order_is_preserved() {
    // V1 interleaved with V2
    let n = 8;
    let v1 = vec![0, 2, 4, 6];
    let v2 = vec![1, 3, 5, 7];
    let mut edges = Vec::new();
    for (a, &i) in v1.iter().enumerate() {
        for (b, &j) in v2.iter().enumerate() {
            if (a + b) % 3 != 1 {
                edges.push((i, j, 1.0 + 0.1 * (a + b) as f64));
            }
        }
    }
    let g = Graph::from_edges(n, &edges, Some(Bipartition::new(n, v1.clone(), v2).unwrap())).unwrap();
    let sys = BipartiteSystem::build(&g).unwrap();
    assert!(sys.theorem1_residual() < 1e-10);
    let mut r = rng(5);
    let s = random_filter(&mut r, n, -1.0, 1.0);
    let x = random_vector(&mut r, n);
    assert!(verify_corollary1(&sys, &s, &x).unwrap() < 1e-12);
    assert_eq!(sys.restrict(&x).unwrap().as_slice(), &[x[0], x[2], x[4], x[6]]);
}

#[test]
fn low_pass_with_recovery_generator_needs_no_correction() {
    for g in corpus().iter().take(6) {
        let sys = BipartiteSystem::build(g).unwrap();
        let b = sys.basis();
        let s = bandlimited(b.lambdas(), g.n() / 2).unwrap();
        let a = bipartite_recovery(b.lambdas(), 2.0).unwrap();
        let d = design_subspace_unconstrained(&s, &a, sys.config(), Strategy::Ds).unwrap();
        assert!(d.h().iter().all(|h| (h - 1.0).abs() <= 1e-12));
    }
}

#[test]
fn rejects_unsuitable_graphs() {
    assert!(matches!(BipartiteSystem::build(&gsamp_core::graph::gen_circular(5).unwrap()), Err(Error::NotBipartite)));
    assert!(matches!(BipartiteSystem::build(&complete_bipartite(3, 5).unwrap()), Err(Error::UnequalParts { .. })));
}

#[test]
fn one_branch_round_trip_is_exact() {
    let g = gen_random_bipartite(32, 3).unwrap();
    let sys = BipartiteSystem::build(&g).unwrap();
    let a = bipartite_recovery(sys.basis().lambdas(), 2.0).unwrap();
    let d = random_vector(&mut rng(8), 32);
    let out = one_branch_roundtrip(&sys, &a, &d).unwrap();
    assert!(mse_db(&out.original, &out.decoded).unwrap() <= -180.0);
    // the decoder matches the frequency-domain reconstruction
    let s = bandlimited(sys.basis().lambdas(), 32).unwrap();
    let design = design_subspace_unconstrained(&s, &a, sys.config(), Strategy::Ds).unwrap();
    let freq = reconstruct(sys.basis(), &design, &out.encoded).unwrap();
    assert!((freq - &out.decoded).amax() < 1e-10);
}

#[test]
fn chebyshev_pipeline_improves_with_order() {
    let g = gen_random_bipartite_with(64, 2, 0.5).unwrap();
    let sys = BipartiteSystem::build(&g).unwrap();
    let l = sys.basis().lambdas();
    let a = bipartite_recovery(l, 2.0).unwrap();
    let resp = Response::BipartiteRecovery { lambda_max: 2.0 };
    let s = bandlimited(l, 64).unwrap();
    let cutoff = match s.response() {
        Some(Response::LowPass { cutoff }) => *cutoff,
        other => panic!("{other:?}"),
    };
    let design = design_subspace_unconstrained(&s, &a, sys.config(), Strategy::Ds).unwrap();
    let wresp = wprime_response(&sys, |x| resp.eval(x), design.h()).unwrap();
    let mut r = rng(4);
    let xs: Vec<DVector<f64>> = (0..10).map(|_| one_branch_roundtrip(&sys, &a, &random_vector(&mut r, 64)).unwrap().original).collect();
    let mut prev = f64::INFINITY;
    for p in [2, 4, 8, 16, 24, 32] {
        let mean = xs
            .iter()
            .map(|x| {
                let y = vertex_pipeline_chebyshev(&sys, |v| if v < cutoff { 1.0 } else { 0.0 }, &wresp, x, p).unwrap();
                mse_db(x, &y).unwrap()
            })
            .sum::<f64>()
            / xs.len() as f64;
        assert!(mean <= prev + 0.5, "P={p}: {mean} after {prev}");
        prev = mean;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn frequency_and_vertex_pipelines_agree(seed in 0u64..10_000, half in 2usize..65) {
        let g = gen_random_bipartite(half, seed).unwrap();
        let sys = BipartiteSystem::build(&g).unwrap();
        let n = 2 * half;
        let mut r = rng(seed);
        let s = random_filter(&mut r, n, -1.0, 1.0);
        let w = random_filter(&mut r, n, -1.0, 1.0);
        let h: Vec<f64> = random_filter(&mut r, half, -1.0, 1.0).values().to_vec();
        let x = random_vector(&mut r, n);
        prop_assert!(verify_corollary1(&sys, &s, &x).unwrap() <= 1e-9 * x.norm());

        let design = gsamp_core::recovery::RecoveryDesign::new(h.clone(), w.clone(), Strategy::Ls, gsamp_core::recovery::Mode::Predefined).unwrap();
        let freq = reconstruct(sys.basis(), &design, &frequency_sample(sys.basis(), &s, &x, sys.config()).unwrap()).unwrap();
        let vert = vertex_pipeline(&sys, &s, &build_wprime(&w, &h).unwrap(), &x).unwrap();
        prop_assert!((freq - vert).amax() <= 1e-9 * x.norm());
    }

    #[test]
    fn paired_basis_is_orthonormal(seed in 0u64..10_000, half in 2usize..40) {
        let sys = BipartiteSystem::build(&gen_random_bipartite(half, seed).unwrap()).unwrap();
        prop_assert!(sys.basis().orthonormality_error() < 1e-10);
        prop_assert!(sys.theorem1_residual() <= 1e-8);
    }
}
