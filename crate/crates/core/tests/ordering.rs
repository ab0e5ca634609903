mod common;

use adelic::mzv::Composition;
use adelic::ordering::{all_orderings, enumerate_compatible, order_of, strict_compatible, stuffle_expand, Ordering};
use common::*;
use proptest::prelude::*;

#[test]
fn ties_example() {
    // n5 < n3 = n1 < n2 < n4
    let o = order_of(&[0.3, 0.4, 0.3, 0.9, 0.1]).unwrap();
    assert_eq!(o.blocks(), &[vec![5], vec![1, 3], vec![2], vec![4]]);
    assert_eq!("(5(31)24)".parse::<Ordering>().unwrap(), o);
    assert_eq!(order_of(&[2.0]).unwrap().blocks(), &[vec![1]]);
    assert_eq!(order_of(&[1.0, 1.0, 1.0]).unwrap().blocks(), &[vec![1, 2, 3]]);
    assert!(order_of(&[]).is_err());
}

#[test]
fn compatible_examples() {
    let got: Vec<_> = enumerate_compatible(&Ordering::chain(1, 1), &Ordering::chain(2, 2))
        .unwrap()
        .iter()
        .map(|o| o.blocks().to_vec())
        .collect();
    assert_eq!(
        got,
        vec![vec![vec![1], vec![2]], vec![vec![2], vec![1]], vec![vec![1, 2]]]
    );
    assert_eq!(
        enumerate_compatible(&Ordering::chain(1, 2), &Ordering::chain(3, 3))
            .unwrap()
            .len(),
        5
    );
    assert_eq!(
        strict_compatible(&Ordering::chain(1, 2), &Ordering::chain(3, 3))
            .unwrap()
            .len(),
        3
    );
}

#[test]
fn all_orderings_match_brute_force() {
    for n in 1..=5 {
        let mut ours: Vec<_> = all_orderings(&(1..=n).collect::<Vec<_>>())
            .iter()
            .map(|o| o.blocks().to_vec())
            .collect();
        let mut brute = brute_orderings(n);
        ours.sort();
        brute.sort();
        assert_eq!(ours, brute, "n = {n}");
    }
}

#[test]
fn chain_counts_match_restriction_filter() {
    for total in 1..=7usize {
        for a in 0..=total {
            let b = total - a;
            let sigma1 = Ordering::chain(1, a);
            let sigma2 = Ordering::chain(a + 1, total);
            let (all, strict) = brute_compatible_counts(a, b);
            assert_eq!(enumerate_compatible(&sigma1, &sigma2).unwrap().len(), all, "({a},{b})");
            assert_eq!(strict_compatible(&sigma1, &sigma2).unwrap().len(), strict, "({a},{b})");
            assert_eq!(strict, binomial(total, a));
        }
    }
}

#[test]
fn stuffle_examples() {
    let show = |a: &[f64], b: &[f64]| -> Vec<String> {
        stuffle_expand(&Composition::from_reals(a), &Composition::from_reals(b))
            .iter()
            .map(|t| t.composition.to_string())
            .collect()
    };
    let mut depth_one = show(&[2.0], &[3.0]);
    depth_one.sort();
    assert_eq!(depth_one, ["(2, 3)", "(3, 2)", "(5)"]);
    let mut two_one = show(&[1.0, 2.0], &[3.0]);
    two_one.sort();
    assert_eq!(two_one, ["(1, 2, 3)", "(1, 3, 2)", "(1, 5)", "(3, 1, 2)", "(4, 2)"]);
    assert_eq!(show(&[], &[3.0]), ["(3)"]);
}

fn ordering_strategy(lo: usize, hi: usize) -> impl Strategy<Value = Ordering> {
    // a random ordering of lo..=hi from random values with frequent ties
    prop::collection::vec(0u8..4, hi - lo + 1).prop_map(move |vals| {
        let floats: Vec<f64> = vals.iter().map(|&v| v as f64).collect();
        order_of(&floats).unwrap().shifted(lo - 1)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn outputs_restrict_back(
        (sigma1, sigma2) in (1usize..4, 1usize..4).prop_flat_map(|(a, b)| {
            (ordering_strategy(1, a), ordering_strategy(a + 1, a + b))
        })
    ) {
        let left = sigma1.indices();
        let right = sigma2.indices();
        let out = enumerate_compatible(&sigma1, &sigma2).unwrap();
        for o in &out {
            prop_assert_eq!(o.restrict(&left), sigma1.clone());
            prop_assert_eq!(o.restrict(&right), sigma2.clone());
        }
        let everything = all_orderings(&left.union(&right).copied().collect::<Vec<_>>());
        let filtered = everything
            .iter()
            .filter(|o| o.restrict(&left) == sigma1 && o.restrict(&right) == sigma2)
            .count();
        prop_assert_eq!(out.len(), filtered);
    }

    #[test]
    fn display_round_trips(o in (1usize..13).prop_flat_map(|n| ordering_strategy(1, n))) {
        let text = o.to_string();
        prop_assert_eq!(text.parse::<Ordering>().unwrap(), o);
    }

    #[test]
    fn stuffle_terms_follow_orderings(
        a in prop::collection::vec(1u8..5, 0..4),
        b in prop::collection::vec(1u8..5, 0..4),
    ) {
        let ca = Composition::from_reals(&a.iter().map(|&x| x as f64).collect::<Vec<_>>());
        let cb = Composition::from_reals(&b.iter().map(|&x| x as f64).collect::<Vec<_>>());
        let terms = stuffle_expand(&ca, &cb);
        let count = enumerate_compatible(&Ordering::chain(1, a.len()), &Ordering::chain(a.len() + 1, a.len() + b.len()))
            .unwrap()
            .len();
        prop_assert_eq!(terms.len(), count);
        let weight: f64 = a.iter().chain(&b).map(|&x| x as f64).sum();
        for t in &terms {
            prop_assert_eq!(t.composition.depth(), t.ordering.num_blocks());
            prop_assert_eq!(t.coefficient, 1);
            prop_assert!((t.composition.weight().re - weight).abs() < 1e-12);
        }
    }
}
