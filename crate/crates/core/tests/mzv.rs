mod common;

use adelic::mzv::{
    composition_to_word, kontsevich_eval, mzf_eval, mzf_truncated, Composition, IntegerComposition, Letter,
};
use adelic::numerics::{nested_tail_bound, TermBound};
use adelic::ordering::verify_stuffle_numeric;
use adelic::{Error, QuadratureSpec, TruncationSpec};
use common::*;
use proptest::prelude::*;

fn trunc() -> TruncationSpec {
    TruncationSpec::default()
}

fn zeta_of(parts: &[f64]) -> f64 {
    mzf_eval(&Composition::from_reals(parts), &trunc()).unwrap().value.re
}

#[test]
fn depth_one_against_euler_maclaurin() {
    for s in [2.0, 3.0, 4.0, 6.0] {
        let v = zeta_of(&[s]);
        assert!((v - em_zeta(s)).abs() < 1e-10, "zeta({s}) = {v}");
    }
    assert!((zeta_of(&[2.0]) - 1.6449340668).abs() < 1e-9);
    assert_eq!(zeta_of(&[]), 1.0);
}

#[test]
fn classical_double_and_triple_values() {
    let z = |s: f64| borwein_zeta(c(s)).re;
    assert!((zeta_of(&[1.0, 2.0]) - z(3.0)).abs() < 1e-10);
    assert!((zeta_of(&[1.0, 3.0]) - z(4.0) / 4.0).abs() < 1e-10);
    assert!((zeta_of(&[1.0, 1.0, 2.0]) - z(4.0)).abs() < 1e-10);
    assert!((zeta_of(&[2.0, 2.0]) - (z(2.0) * z(2.0) - z(4.0)) / 2.0).abs() < 1e-10);
    // the inner exponent 2, outer 3: 3 ζ(2)ζ(3) - 11/2 ζ(5)
    assert!((zeta_of(&[2.0, 3.0]) - (3.0 * z(2.0) * z(3.0) - 5.5 * z(5.0))).abs() < 1e-10);
}

#[test]
fn complex_exponents_against_direct_summation() {
    let s = [C::new(3.0, 1.0), C::new(4.0, -2.0)];
    let v = mzf_eval(&Composition::new(s.to_vec()), &trunc()).unwrap();
    // tail beyond 4e4 is below 1e-12
    let o = brute_nested(&s, 40_000);
    assert!((v.value - o).norm() < 1e-11, "{} vs {o}", v.value);
}

#[test]
fn divergent_and_invalid_inputs() {
    for parts in [vec![1.0], vec![2.0, 1.0], vec![0.5, 1.2]] {
        let r = mzf_eval(&Composition::from_reals(&parts), &trunc());
        assert!(matches!(r, Err(Error::Divergence(_))), "{parts:?}: {r:?}");
    }
    assert!(TruncationSpec::new(1, 1e-10).is_err());
    assert!(IntegerComposition::new(vec![2, 1]).is_err());
}

#[test]
fn words_of_compositions() {
    use Letter::*;
    let w = |p: Vec<u32>| composition_to_word(&IntegerComposition::new(p).unwrap());
    assert_eq!(w(vec![2]).letters(), &[Omega1, Omega0]);
    assert_eq!(w(vec![3]).letters(), &[Omega1, Omega0, Omega0]);
    assert_eq!(w(vec![1, 2]).letters(), &[Omega1, Omega1, Omega0]);
    assert!("10".parse::<adelic::mzv::IteratedWord>().is_ok());
    assert!(matches!(
        "01".parse::<adelic::mzv::IteratedWord>(),
        Err(Error::DivergentWord(_))
    ));
}

#[test]
fn iterated_integrals_match_series_up_to_weight_five() {
    let spec = QuadratureSpec::default().with_target(1e-9);
    for weight in 2..=5 {
        for k in IntegerComposition::all_of_weight(weight) {
            let integral = kontsevich_eval(&composition_to_word(&k), &spec).unwrap();
            let series = mzf_eval(&k.to_composition(), &trunc()).unwrap();
            let diff = (integral.value - series.value).norm();
            assert!(
                diff <= integral.abs_error_estimate + series.abs_error_estimate,
                "{k:?}: diff {diff:e}, estimates {:e} + {:e}",
                integral.abs_error_estimate,
                series.abs_error_estimate
            );
        }
    }
}

#[test]
fn truncations_stay_within_their_tail_bound() {
    for parts in [vec![2.5], vec![1.5, 2.0], vec![1.0, 1.5, 2.5]] {
        let comp = Composition::from_reals(&parts);
        let limit = mzf_eval(&comp, &trunc()).unwrap();
        let mut previous = 0.0;
        for n in [50usize, 200, 800, 3200] {
            let t = mzf_truncated(&comp, &TruncationSpec::new(n, 1.0).unwrap()).unwrap();
            let bounds: Vec<TermBound> = parts
                .iter()
                .map(|&s| TermBound {
                    constant: 1.0,
                    decay: s,
                })
                .collect();
            let bound = nested_tail_bound(&bounds, n).unwrap();
            let gap = limit.value.re - t.value.re;
            assert!(gap >= 0.0 && gap <= bound + limit.abs_error_estimate, "{parts:?} N={n}");
            assert!(t.value.re >= previous, "partial sums of positive terms increase");
            previous = t.value.re;
        }
    }
}

fn convergent_composition(max_depth: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(1.0f64..3.0, 1..=max_depth).prop_map(|mut v| {
        let last = v.len() - 1;
        v[last] += 0.2;
        v
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn stuffle_holds_for_random_pairs(
        a in convergent_composition(2),
        b in convergent_composition(2),
    ) {
        prop_assume!(a.iter().chain(&b).sum::<f64>() <= 8.0);
        let ca = Composition::from_reals(&a);
        let cb = Composition::from_reals(&b);
        let t = trunc();
        let report = verify_stuffle_numeric(
            "random pair",
            ca.exponents(),
            cb.exponents(),
            |x, y| x + y,
            |w| mzf_eval(&Composition::new(w.to_vec()), &t),
            1e-8,
        ).unwrap();
        prop_assert!(report.pass, "{:?}", report);
    }
}
