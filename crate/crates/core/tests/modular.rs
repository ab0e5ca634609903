mod common;

use adelic::modular::{
    completed_double_l, completed_double_l_dual, completed_l, completed_l_dual, delta_coefficients,
    delta_coefficients_with, delta_times_eisenstein, double_l_series, eisenstein_coefficients, l_series,
    nested_dirichlet_series, DeltaStrategy, DirichletCoefficients, FourierCoefficients,
};
use adelic::{QuadratureSpec, TruncationSpec};
use common::*;
use num_bigint::BigInt;
use proptest::prelude::*;
use std::sync::OnceLock;

fn delta() -> &'static FourierCoefficients {
    static DELTA: OnceLock<FourierCoefficients> = OnceLock::new();
    DELTA.get_or_init(|| delta_coefficients(2000).unwrap())
}

fn tau(n: usize) -> BigInt {
    delta().get(n).unwrap().clone()
}

fn loose(n: usize) -> TruncationSpec {
    TruncationSpec::new(n, 1e-2).unwrap()
}

fn spec() -> QuadratureSpec {
    QuadratureSpec::default()
}

#[test]
fn tau_against_brute_force_product() {
    let brute = brute_tau(300);
    let fast = delta_coefficients(300).unwrap();
    for (n, b) in brute.iter().enumerate() {
        assert_eq!(fast.coeffs()[n], BigInt::from(*b), "tau({})", n + 1);
    }
    assert_eq!(tau(1), BigInt::from(1));
    assert_eq!(tau(2), BigInt::from(-24));
    assert_eq!(tau(3), BigInt::from(252));
}

#[test]
fn chunk_orders_give_identical_integers() {
    let a = delta_coefficients_with(
        2000,
        DeltaStrategy::DenseChunks {
            chunk: 64,
            reversed: false,
        },
    )
    .unwrap();
    let b = delta_coefficients_with(
        2000,
        DeltaStrategy::DenseChunks {
            chunk: 37,
            reversed: true,
        },
    )
    .unwrap();
    assert_eq!(a, b);
    assert_eq!(&a, delta());
}

#[test]
fn hecke_spot_checks() {
    assert_eq!(tau(6), tau(2) * tau(3));
    assert_eq!(tau(10), tau(2) * tau(5));
}

#[test]
fn eisenstein_examples() {
    let e4 = eisenstein_coefficients(4, 5).unwrap();
    assert_eq!(e4.coeffs()[1], BigInt::from(240));
    assert_eq!(e4.coeffs()[2], BigInt::from(2160));
    assert_eq!(eisenstein_coefficients(6, 5).unwrap().coeffs()[1], BigInt::from(-504));
}

#[test]
fn series_examples() {
    let v = l_series(delta(), c(40.0), &TruncationSpec::new(2000, 1e-6).unwrap()).unwrap();
    assert!((v.value.re - 1.0).abs() < 1e-10);
    let long = delta_coefficients(16_000).unwrap();
    let a = l_series(&long, c(8.0), &loose(8000)).unwrap().value;
    let b = l_series(&long, c(8.0), &loose(16_000)).unwrap().value;
    assert!((a - b).norm() < 1e-9, "{:e}", (a - b).norm());
    assert!(l_series(delta(), c(7.0), &loose(2000)).is_err());
}

#[test]
fn synthetic_constant_coefficients_give_zeta() {
    let ones = DirichletCoefficients::new(vec![1.0; 100_000], 0.0, 1.0).unwrap();
    let v = nested_dirichlet_series(&[(&ones, c(3.0))], &TruncationSpec::new(100_000, 1e-9).unwrap()).unwrap();
    assert!((v.value.re - em_zeta(3.0)).abs() < 1e-9);
}

#[test]
fn collapsed_double_sum() {
    let mut only_first = vec![BigInt::from(0); 2000];
    only_first[0] = BigInt::from(1);
    let f = FourierCoefficients::new(12, only_first, "a1").unwrap();
    let double = double_l_series(&f, delta(), c(9.0), c(10.0), &loose(2000))
        .unwrap()
        .value;
    let single = l_series(delta(), c(10.0), &loose(2000)).unwrap().value;
    assert!((double - (single - 1.0)).norm() < 1e-14);
}

fn quasi_shuffle_residual(f: &FourierCoefficients, g: &FourierCoefficients, s1: f64, s2: f64) -> f64 {
    let t = loose(2000);
    let a = DirichletCoefficients::from_form(f).unwrap();
    let b = DirichletCoefficients::from_form(g).unwrap();
    let product = l_series(f, c(s1), &t).unwrap().value * l_series(g, c(s2), &t).unwrap().value;
    let forward = double_l_series(f, g, c(s1), c(s2), &t).unwrap().value;
    let backward = double_l_series(g, f, c(s2), c(s1), &t).unwrap().value;
    let diagonal = nested_dirichlet_series(&[(&a.pointwise(&b), c(s1 + s2))], &t)
        .unwrap()
        .value;
    (product - forward - backward - diagonal).norm()
}

#[test]
fn series_quasi_shuffle() {
    assert!(quasi_shuffle_residual(delta(), delta(), 9.0, 10.0) < 1e-8);
    let e4 = delta_times_eisenstein(4, 2000).unwrap();
    assert!(quasi_shuffle_residual(delta(), &e4, 9.0, 11.0) < 1e-8);
}

#[test]
fn completed_single_examples() {
    let d = completed_l_dual(delta(), c(8.0), &spec(), &loose(2000)).unwrap();
    assert!(d.discrepancy() < 1e-8);
    let l7 = completed_l(delta(), c(7.0), &spec()).unwrap().value;
    let l5 = completed_l(delta(), c(5.0), &spec()).unwrap().value;
    assert!((l7 - l5).norm() < 1e-6);
    let scaled = delta().scaled(&BigInt::from(3));
    let sum = (delta() + &scaled).unwrap();
    let lhs = completed_l(&sum, c(8.0), &spec()).unwrap().value;
    let rhs =
        completed_l(delta(), c(8.0), &spec()).unwrap().value + completed_l(&scaled, c(8.0), &spec()).unwrap().value;
    assert!((lhs - rhs).norm() < 1e-10);
}

#[test]
fn completed_single_dual_grid() {
    for s in [8.0, 8.5, 9.0, 10.5] {
        let d = completed_l_dual(delta(), c(s), &spec(), &loose(2000)).unwrap();
        assert!(d.discrepancy() < 1e-7, "s={s}: {:e}", d.discrepancy());
    }
}

#[test]
fn completed_double_examples() {
    let l = |s: f64| completed_l(delta(), c(s), &spec()).unwrap().value;
    let dl = |a: f64, b: f64| completed_double_l(delta(), delta(), c(a), c(b), &spec()).unwrap().value;
    assert!((dl(8.0, 8.0) - 0.5 * l(8.0) * l(8.0)).norm() < 1e-6);
    assert!((dl(7.0, 9.0) + dl(9.0, 7.0) - l(7.0) * l(9.0)).norm() < 1e-5);
    for (a, b) in [(7.0, 9.0), (8.0, 8.0), (6.0, 10.0), (9.5, 7.5)] {
        let d = completed_double_l_dual(delta(), delta(), c(a), c(b), &spec()).unwrap();
        assert!(d.discrepancy() < 1e-5, "({a},{b}): {:e}", d.discrepancy());
    }
}

#[test]
fn coefficient_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("delta.json");
    std::fs::write(&path, delta().to_json()).unwrap();
    let back = FourierCoefficients::from_json(12, &std::fs::read_to_string(&path).unwrap(), "Delta").unwrap();
    assert_eq!(&back, delta());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tau_is_multiplicative(m in 1usize..45, n in 1usize..45) {
        fn gcd(a: usize, b: usize) -> usize { if b == 0 { a } else { gcd(b, a % b) } }
        prop_assume!(gcd(m, n) == 1);
        prop_assert_eq!(tau(m * n), tau(m) * tau(n));
    }

    #[test]
    fn tau_prime_squares(p in prop::sample::select(vec![2usize, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43])) {
        let p11 = BigInt::from(p).pow(11);
        prop_assert_eq!(tau(p * p), tau(p) * tau(p) - p11);
    }
}
