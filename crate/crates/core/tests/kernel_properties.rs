mod common;

use common::{gaussian, hermitian, rng};
use proptest::prelude::*;
use reduction_core::kernel::{eigh, expm, haar_unitary, logm_hpd, svd, svd_full};
use reduction_core::matrix::ComplexMatrix;

fn scaled(z: ComplexMatrix, norm: f64) -> ComplexMatrix {
    let f = z.frobenius_norm();
    if f == 0.0 {
        z
    } else {
        z.scale_re(norm / f)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn exp_times_exp_of_negative_is_identity(seed in any::<u64>(), k in 1usize..7, norm in 0.0f64..5.0) {
        let x = scaled(gaussian(k, k, &mut rng(seed)), norm);
        let prod = expm(&x).unwrap().matmul(&expm(&x.scale_re(-1.0)).unwrap());
        prop_assert!(prod.dist(&ComplexMatrix::identity(k)) <= 1e-11, "{}", prod.dist(&ComplexMatrix::identity(k)));
    }

    #[test]
    fn log_inverts_exp_on_hermitian(seed in any::<u64>(), k in 1usize..7, norm in 0.0f64..5.0) {
        let x = scaled(hermitian(k, &mut rng(seed)), norm);
        let back = logm_hpd(&expm(&x).unwrap()).unwrap();
        prop_assert!(back.dist(&x) <= 1e-10, "{}", back.dist(&x));
    }

    #[test]
    fn eigh_reconstructs(seed in any::<u64>(), k in 1usize..8) {
        let h = hermitian(k, &mut rng(seed));
        let e = eigh(&h).unwrap();
        let d = ComplexMatrix::diag(&e.values.iter().map(|&v| common::c(v, 0.0)).collect::<Vec<_>>());
        let back = e.vectors.matmul(&d).matmul(&e.vectors.adjoint());
        prop_assert!(back.dist(&h) <= 1e-12 * (1.0 + h.frobenius_norm()));
        prop_assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
    }
}

#[test]
fn svd_on_a_thousand_random_matrices() {
    let mut r = rng(2024);
    let mut worst: f64 = 0.0;
    for i in 0..1000 {
        let rows = 1 + i % 8;
        let cols = 1 + (i / 8) % 8;
        let b = gaussian(rows, cols, &mut r);
        let f = svd(&b).unwrap();
        let rec = f.reconstruct().dist(&b) / (1.0 + b.frobenius_norm());
        let uu =
            f.u.adjoint()
                .matmul(&f.u)
                .dist(&ComplexMatrix::identity(f.u.cols()));
        let vv =
            f.v.adjoint()
                .matmul(&f.v)
                .dist(&ComplexMatrix::identity(f.v.cols()));
        assert!(f.s.windows(2).all(|w| w[0] >= w[1]) && f.s.iter().all(|&s| s >= 0.0));
        worst = worst.max(rec).max(uu).max(vv);
        let full = svd_full(&b).unwrap();
        assert!(full.u.rows() == rows && full.u.cols() == rows && full.v.cols() == cols);
    }
    assert!(worst <= 1e-12, "worst residual {worst:e}");
}

#[test]
fn eigh_two_by_two_matches_quadratic_formula() {
    let mut r = rng(3);
    for _ in 0..100 {
        let h = hermitian(2, &mut r);
        let (a, d, b) = (h[(0, 0)].re, h[(1, 1)].re, h[(0, 1)]);
        let mean = 0.5 * (a + d);
        let rad = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
        let e = eigh(&h).unwrap().values;
        assert!((e[0] - (mean - rad)).abs() < 1e-13 && (e[1] - (mean + rad)).abs() < 1e-13);
    }
}

#[test]
fn eigh_trivial_cases() {
    assert_eq!(
        eigh(&ComplexMatrix::identity(3)).unwrap().values,
        vec![1.0; 3]
    );
    let d = ComplexMatrix::diag(&[
        common::c(3.0, 0.0),
        common::c(1.0, 0.0),
        common::c(2.0, 0.0),
    ]);
    assert_eq!(eigh(&d).unwrap().values, vec![1.0, 2.0, 3.0]);
}

#[test]
fn haar_is_unitary_and_reproducible() {
    for k in 1..7 {
        let u = haar_unitary(k, &mut rng(k as u64));
        assert!(u.adjoint().matmul(&u).dist(&ComplexMatrix::identity(k)) <= 1e-13);
        for c in 0..k {
            let n: f64 = u.column(c).iter().map(|z| z.norm_sqr()).sum();
            assert!((n - 1.0).abs() < 1e-13);
        }
        assert_eq!(u, haar_unitary(k, &mut rng(k as u64)));
    }
}
