use normineq::harness::{gen_general, gen_pd, gen_psd};
use normineq::linalg::{herm_eig_default, matrix_fn, singular_values, singular_values_gram, Matrix, PsdMatrix, ScalarFn};
use normineq::random::{haar_unitary, rng_from_seed};
use proptest::prelude::*;

fn dims() -> impl Strategy<Value = usize> {
    1usize..=6
}

fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn eigendecomposition_reconstructs(n in dims(), seed in any::<u64>()) {
        let g = gen_general(n, seed);
        let h = g.hermitian_part();
        let eig = herm_eig_default(&h).unwrap();
        prop_assert!(eig.reconstruct().approx_eq(&h, 1e-12));
        prop_assert!(eig.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
        let trace: f64 = (0..n).map(|i| h[(i, i)].re).sum();
        prop_assert!((eig.eigenvalues.iter().sum::<f64>() - trace).abs() < 1e-12);
    }

    #[test]
    fn singular_values_are_unitarily_invariant(n in dims(), seed in any::<u64>()) {
        let x = gen_general(n, seed);
        let mut rng = rng_from_seed(seed ^ 0x5eed);
        let (u, v) = (haar_unitary(&mut rng, n), haar_unitary(&mut rng, n));
        let rotated = &(&u * &x) * &v;
        let s = singular_values(&x).unwrap();
        let t = singular_values(&rotated).unwrap();
        prop_assert!(close(s.values(), t.values(), 1e-12));
        let frob: f64 = s.values().iter().map(|v| v * v).sum::<f64>().sqrt();
        prop_assert!((frob - x.frobenius()).abs() < 1e-12);
    }

    #[test]
    fn jacobi_and_gram_routes_agree(n in dims(), seed in any::<u64>()) {
        let x = gen_general(n, seed);
        let s = singular_values(&x).unwrap();
        let g = singular_values_gram(&x).unwrap();
        prop_assert!(close(s.values(), g.values(), 1e-7));
    }

    #[test]
    fn psd_powers_add_exponents(n in dims(), seed in any::<u64>(), s in 0.0..2.0f64, t in 0.0..2.0f64) {
        let a = PsdMatrix::new(&gen_psd(n, seed)).unwrap();
        let lhs = &a.power(s).unwrap() * &a.power(t).unwrap();
        prop_assert!(lhs.approx_eq(&a.power(s + t).unwrap(), 1e-10));
    }

    #[test]
    fn negative_power_inverts(n in dims(), seed in any::<u64>()) {
        let a = gen_pd(n, seed, 0.1);
        let inv = PsdMatrix::new(&a).unwrap().power(-1.0).unwrap();
        prop_assert!((&a * &inv).approx_eq(&Matrix::identity(n), 1e-10));
    }

    #[test]
    fn matrix_fn_is_multiplicative_on_products(n in dims(), seed in any::<u64>()) {
        let a = gen_pd(n, seed, 0.05);
        let f = ScalarFn::product(ScalarFn::Sqrt, ScalarFn::Log1p);
        let lhs = matrix_fn(&a, &f).unwrap();
        let rhs = &matrix_fn(&a, &ScalarFn::Sqrt).unwrap() * &matrix_fn(&a, &ScalarFn::Log1p).unwrap();
        prop_assert!(lhs.approx_eq(&rhs, 1e-12));
    }
}

#[test]
fn zeroth_power_of_singular_matrix_is_identity() {
    let a = Matrix::diag_real(&[0.0, 2.0]).unwrap();
    assert!(PsdMatrix::new(&a).unwrap().power(0.0).unwrap().approx_eq(&Matrix::identity(2), 0.0));
}
