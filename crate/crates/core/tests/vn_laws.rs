use proptest::prelude::*;
use qnorm_core::vn::{
    complement_witnesses, cutdown, module_projection, orthonormal_basis, projection_residuals, qn1_module_test,
    random_chain, random_inclusion, tensor_inclusion, wahp_gap, BasicConstruction, OptimizerConfig, Tolerances,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn basic_construction_identities(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inc = random_inclusion(&mut rng, 20);
        let tol = Tolerances::default();
        let bc = BasicConstruction::new(&inc.b, None, &tol).unwrap();
        prop_assert!(bc.build_residual() < 1e-10);
        for _ in 0..4 {
            let x = inc.m.random_element(&mut rng);
            prop_assert!(bc.compression_residual(&x) < 1e-12 * (1.0 + x.max_abs()));
            prop_assert!(bc.projection_residual(&x) < 1e-10);
            let (t, terms) = bc.random_operator(&mut rng, 2);
            let by_terms = bc.pull_down_terms(&terms);
            prop_assert!(bc.pull_down(&t).unwrap().sub(&by_terms).max_abs() < 1e-9);
            prop_assert!(bc.lemma_norm_residual(&t) < 1e-9);
            prop_assert!(bc.lemma_pull_down_residual(&t).unwrap() < 1e-8);
        }
        prop_assert!(bc.reconstruction_residual(&inc.m.units()) < 1e-9);
        prop_assert!(bc.off_xi_residual() < 1e-10);
    }

    #[test]
    fn module_projections_commute_with_the_right_action(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inc = random_inclusion(&mut rng, 20);
        let tol = Tolerances::default();
        let x = inc.m.random_element(&mut rng);
        let q = qn1_module_test(&inc.b, &x, &tol);
        prop_assert!(q.basis.gram_residual(&inc.b) < 1e-9);
        prop_assert!(q.basis.reconstruction_residual(&inc.b, &q.generators) < 1e-9);
        let (idem, comm) = projection_residuals(&inc.b, &q.projection, false);
        prop_assert!(idem < 1e-9 && comm < 1e-9);
        prop_assert!((q.projection.trace().re - q.module_dim as f64).abs() < 1e-8);
        // L^2(B) and L^2(M) are bimodules.
        let whole = orthonormal_basis(&inc.b, &inc.m.units(), &tol);
        let p = module_projection(&inc.b, &whole);
        let (idem, comm) = projection_residuals(&inc.b, &p, true);
        prop_assert!(idem < 1e-9 && comm < 1e-9);
    }

    #[test]
    fn tensor_modules_multiply(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_inclusion(&mut rng, 9);
        let b = random_inclusion(&mut rng, 9);
        let t = tensor_inclusion(&a, &b);
        let tol = Tolerances::default();
        let x = a.m.random_element(&mut rng);
        let y = b.m.random_element(&mut rng);
        let dx = qn1_module_test(&a.b, &x, &tol).module_dim;
        let dy = qn1_module_test(&b.b, &y, &tol).module_dim;
        let dxy = qn1_module_test(&t.b, &a.m.tensor_elements(&x, &b.m, &y), &tol).module_dim;
        prop_assert_eq!(dxy, dx * dy);
    }

    #[test]
    fn corners_preserve_modules(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inc = random_inclusion(&mut rng, 20);
        let tol = Tolerances::default();
        // A spectral projection of a random self-adjoint element of B.
        let h = inc.b.expect(&inc.m.random_element(&mut rng));
        let h = h.add(&h.adjoint());
        let e = h.hermitian_calculus(|l| num_complex::Complex64::new(if l > 0.0 { 1.0 } else { 0.0 }, 0.0));
        prop_assume!(inc.m.tau(&e).re > 1e-6);
        let c = cutdown(&inc.b, &e, &tol).unwrap();
        let samples: Vec<_> = (0..inc.m.dim()).map(|_| inc.m.random_element(&mut rng)).collect();
        prop_assert!(c.containment_residual(&inc.b, &samples, &tol) < 1e-9);
    }
}

#[test]
fn proper_intermediate_algebras_are_witnessed() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let tol = Tolerances::default();
    let config = OptimizerConfig { oracle_samples: 200, restarts: 2, ..OptimizerConfig::new(4) };
    for _ in 0..3 {
        let inc = random_chain(&mut rng, 20, true);
        let pairs = complement_witnesses(&inc.n);
        let r = wahp_gap(&inc.b, &inc.n, &pairs, &config, &tol).unwrap();
        assert!(r.gap() > 0.01);
        assert!(r.gap() <= r.oracle_value + 1e-8);
    }
}
