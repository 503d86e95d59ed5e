use normineq::harness::{gen_general, gen_pd, gen_psd};
use normineq::inequalities::{check_cor44, CheckOptions, HeinzInstance};
use normineq::norms::NormSpec;
use proptest::prelude::*;

fn norm_for(k: u8) -> NormSpec {
    match k % 4 {
        0 => NormSpec::TRACE,
        1 => NormSpec::FROBENIUS,
        2 => NormSpec::SPECTRAL,
        _ => NormSpec::Schatten(3.0),
    }
}

fn instance(n: usize, seed: u64, r: f64, k: u8) -> HeinzInstance {
    HeinzInstance::new(&gen_psd(n, seed), &gen_psd(n, seed ^ 1), &gen_general(n, seed ^ 2), r, norm_for(k)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn heinz_function_is_symmetric_and_convex(n in 1usize..=4, seed in any::<u64>(), r in 0.5..3.0f64, k in any::<u8>(), t in 0.0..0.5f64) {
        let inst = instance(n, seed, r, k);
        let f = |t: f64| inst.heinz_f(t).unwrap();
        let scale = f(0.0).max(1.0);
        prop_assert!((f(t) - f(1.0 - t)).abs() <= 1e-9 * scale);
        prop_assert!(f(0.5) <= 0.5 * (f(t) + f(1.0 - t)) + 1e-9 * scale);
        prop_assert!(f(0.5) <= f(t) + 1e-9 * scale);
    }

    #[test]
    fn fast_term_matches_direct_route(n in 1usize..=4, seed in any::<u64>(), r in 0.5..3.0f64, k in any::<u8>(), s in 0.0..1.0f64, t in 0.0..1.0f64) {
        let inst = instance(n, seed, r, k);
        let fast = inst.term(s, t).unwrap();
        let direct = inst.direct_term(s, t).unwrap();
        prop_assert!((fast - direct).abs() <= 1e-9 * direct.max(1.0));
    }

    #[test]
    fn verdicts_survive_rescaling_x(n in 1usize..=4, seed in any::<u64>(), r in 0.5..3.0f64, k in any::<u8>(), mu in 0.0..1.0f64) {
        let inst = instance(n, seed, r, k);
        let opts = CheckOptions::default();
        let base = inst.check_cs_basic(mu, &opts).unwrap().pass;
        for c in [1e-3, 1e3] {
            let scaled = inst.with_x(&inst.x().scale_real(c)).unwrap();
            prop_assert_eq!(scaled.check_cs_basic(mu, &opts).unwrap().pass, base);
            prop_assert_eq!(scaled.check_hh_chain(mu, &opts).unwrap().pass, inst.check_hh_chain(mu, &opts).unwrap().pass);
        }
    }

    #[test]
    fn omega_chain_survives_rescaling_x(n in 1usize..=4, seed in any::<u64>(), alpha in 0.0..1.0f64) {
        let a = gen_pd(n, seed, 0.05);
        let x = gen_general(n, seed ^ 3);
        let opts = CheckOptions::default();
        let base = check_cor44(&a, &x, alpha, &opts).unwrap();
        prop_assert!(base.pass);
        for c in [1e-3, 1e3] {
            prop_assert!(check_cor44(&a, &x.scale_real(c), alpha, &opts).unwrap().pass);
        }
    }
}
