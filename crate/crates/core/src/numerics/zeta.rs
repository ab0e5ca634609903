use super::{ensure_finite, ComplexValue};
use crate::error::{Error, Result};

// B_2, B_4, ..., B_30
const BERNOULLI_EVEN: [f64; 15] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
];

/// `B_{2p}` for `1 <= p <= 15`.
pub fn bernoulli_even(p: usize) -> f64 {
    assert!((1..=BERNOULLI_EVEN.len()).contains(&p), "B_{} not tabulated", 2 * p);
    BERNOULLI_EVEN[p - 1]
}

/// Coefficients `e_k` of the large-`n` expansion
/// `Σ_{m>n} m^{-a} ~ n^{1-a} Σ_k e_k n^{-k}`, for `k < len`.
///
/// Euler–Maclaurin: `e_0 = 1/(a-1)`, `e_1 = -1/2`,
/// `e_{2p} = B_{2p}/(2p)! · a(a+1)...(a+2p-2)` and zero odd terms beyond.
pub fn hurwitz_tail_expansion(a: ComplexValue, len: usize) -> Vec<ComplexValue> {
    let mut out = vec![ComplexValue::new(0.0, 0.0); len];
    if len == 0 {
        return out;
    }
    out[0] = 1.0 / (a - 1.0);
    if len > 1 {
        out[1] = ComplexValue::new(-0.5, 0.0);
    }
    // rising factorial (a)_{2p-1} and (2p)!
    let mut rising = a;
    let mut factorial = 2.0;
    let mut p = 1;
    while 2 * p < len && p <= BERNOULLI_EVEN.len() {
        out[2 * p] = rising * (bernoulli_even(p) / factorial);
        rising = rising * (a + (2 * p - 1) as f64) * (a + (2 * p) as f64);
        factorial *= ((2 * p + 1) * (2 * p + 2)) as f64;
        p += 1;
    }
    out
}

/// Riemann zeta for `Re s > 1` by Euler–Maclaurin summation.
pub fn riemann_zeta(s: ComplexValue) -> Result<ComplexValue> {
    if !(s.re > 1.0) {
        return Err(Error::Divergence(format!("zeta({s}) requires Re s > 1")));
    }
    let cutoff = (20.0f64).max(s.norm().ceil() + 10.0) as usize;
    let mut sum = ComplexValue::new(0.0, 0.0);
    for n in (1..cutoff).rev() {
        sum += (-s * (n as f64).ln()).exp();
    }
    let n = cutoff as f64;
    let base = (-s * n.ln()).exp();
    let coeffs = hurwitz_tail_expansion(s, 24);
    // Σ_{m>=N} = N^{-s} + Σ_{m>N}
    let mut tail = ComplexValue::new(0.0, 0.0);
    let mut npow = n; // n^{1-s} = n * n^{-s}
    for c in coeffs {
        tail += c * npow;
        npow /= n;
    }
    ensure_finite(sum + base + tail * base, "riemann_zeta")
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn even_values() {
        let z2 = riemann_zeta(ComplexValue::new(2.0, 0.0)).unwrap();
        assert!((z2.re - PI * PI / 6.0).abs() < 1e-15);
        let z4 = riemann_zeta(ComplexValue::new(4.0, 0.0)).unwrap();
        assert!((z4.re - PI.powi(4) / 90.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_boundary() {
        assert!(riemann_zeta(ComplexValue::new(1.0, 3.0)).is_err());
    }

    #[test]
    fn tail_expansion_reproduces_hurwitz() {
        // Σ_{m>10} m^{-3} = ζ(3) - H_10^{(3)}
        let a = ComplexValue::new(3.0, 0.0);
        let exact = 1.202_056_903_159_594_3 - (1..=10).map(|m| (m as f64).powi(-3)).sum::<f64>();
        let coeffs = hurwitz_tail_expansion(a, 20);
        let n: f64 = 10.0;
        let approx: f64 = coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c.re * n.powf(1.0 - 3.0 - k as f64))
            .sum();
        assert!((approx - exact).abs() < 1e-15);
    }
}
