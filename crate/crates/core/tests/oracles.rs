mod common;

use common::*;
use std::f64::consts::PI;

#[test]
fn oracles_agree_with_each_other() {
    assert!((em_zeta(2.0) - PI * PI / 6.0).abs() < 1e-13);
    assert!((borwein_zeta(c(2.0)).re - PI * PI / 6.0).abs() < 1e-13);
    assert!((borwein_zeta(c(3.0)).re - em_zeta(3.0)).abs() < 1e-13);
    assert!((stirling_gamma(c(0.5)).re - PI.sqrt()).abs() < 1e-13);
    assert!((stirling_gamma(c(5.0)).re - 24.0).abs() < 1e-11);
    let a = C::new(2.5, 0.7);
    let total = simpson_upper_gamma(a, 1.3) + simpson_lower_gamma(a, 1.3);
    assert!((total - stirling_gamma(a)).norm() < 1e-10 * stirling_gamma(a).norm());
    // ∫_{t1>t2} e^{-t1-t2} = 1/2
    let g = grid_simplex(|x, y| (-x - y).exp(), 40.0, 2000);
    assert!((g - 0.5).abs() < 1e-9, "{g}");
    assert_eq!(&brute_tau(4)[..], &[1, -24, 252, -1472]);
    assert_eq!(brute_orderings(3).len(), 13);
}
