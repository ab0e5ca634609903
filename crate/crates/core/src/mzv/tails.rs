//! Large-`n` expansions of the suffix sums
//! `T_j(n) = Σ_{n < n_j < ... < n_d} Π_{i>=j} n_i^{-s_i}`.
//!
//! Each `T_j(n)` behaves like `n^{-b_j} Σ_k c_k n^{-k}` with
//! `b_j = s_j + ... + s_d - (d - j + 1)`, obtained by applying the
//! Euler–Maclaurin tail of `Σ_{m>n} m^{-a}` term by term to `T_{j+1}`.

use crate::numerics::{hurwitz_tail_expansion, ComplexValue};

#[derive(Debug, Clone)]
struct Expansion {
    base: ComplexValue,
    coeffs: Vec<ComplexValue>,
}

#[derive(Debug, Clone)]
pub(crate) struct SuffixTails {
    // expansions[j] is T_{j+1}
    expansions: Vec<Expansion>,
}

impl SuffixTails {
    pub(crate) fn new(exponents: &[ComplexValue], terms: usize) -> Self {
        let zero = ComplexValue::new(0.0, 0.0);
        let mut current = Expansion {
            base: zero,
            coeffs: {
                let mut c = vec![zero; terms];
                c[0] = ComplexValue::new(1.0, 0.0);
                c
            },
        };
        let mut expansions = Vec::with_capacity(exponents.len());
        for &s in exponents.iter().rev() {
            let a0 = s + current.base;
            let mut coeffs = vec![zero; terms];
            for (k, &ck) in current.coeffs.iter().enumerate() {
                if ck == zero {
                    continue;
                }
                let inner = hurwitz_tail_expansion(a0 + k as f64, terms - k);
                for (l, e) in inner.into_iter().enumerate() {
                    coeffs[k + l] += ck * e;
                }
            }
            current = Expansion { base: a0 - 1.0, coeffs };
            expansions.push(current.clone());
        }
        expansions.reverse();
        SuffixTails { expansions }
    }

    /// Values `T_1(n), ..., T_d(n)` and, for each, the size of the last
    /// retained term as an error estimate.
    pub(crate) fn evaluate(&self, n: f64) -> (Vec<ComplexValue>, Vec<f64>) {
        let log_n = n.ln();
        self.expansions
            .iter()
            .map(|e| {
                let scale = (-e.base * log_n).exp();
                let mut sum = ComplexValue::new(0.0, 0.0);
                let mut power = 1.0;
                let mut last = 0.0;
                for c in &e.coeffs {
                    let term = c * power;
                    sum += term;
                    if c.norm() > 0.0 {
                        last = term.norm();
                    }
                    power /= n;
                }
                let value = sum * scale;
                let error = 2.0 * last * scale.norm() + 4.0 * f64::EPSILON * value.norm();
                (value, error)
            })
            .unzip()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn depth_two_tail_against_direct_sum() {
        // T_1(50) for (2, 3): Σ_{50 < a < b} a^-2 b^-3, summed directly far out
        let s = [ComplexValue::new(2.0, 0.0), ComplexValue::new(3.0, 0.0)];
        let tails = SuffixTails::new(&s, 24);
        let (values, errors) = tails.evaluate(50.0);
        let far = 200_000usize;
        let mut inner = 0.0;
        let mut direct = 0.0;
        for b in 51..=far {
            direct += inner * (b as f64).powi(-3);
            inner += (b as f64).powi(-2);
        }
        // chains with b > far: inner is frozen to within 1/far, Σ_{b>far} b^-3 ≈ 1/(2 far^2)
        direct += inner / (2.0 * (far as f64).powi(2));
        assert!(
            (values[0].re - direct).abs() < 1e-10 * direct,
            "{} vs {direct}",
            values[0]
        );
        assert!(errors.iter().all(|&e| e < 1e-15));
    }
}
