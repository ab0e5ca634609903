//! Local factors at a prime `p` and at infinity, in single and iterated form.
//!
//! p-adic points never appear as data. The local integrals are constant on
//! the orbits `p^k Z_p^×`, so only their norms `p^{-k}` and measures enter.

use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};
use crate::mzv::Composition;
use crate::numerics::{
    gamma, integrate_simplex2, upper_incomplete_gamma, ComplexValue, EvaluationResult, QuadratureSpec,
};

/// A rational prime, checked on construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(Error::InvalidArgument(format!("{p} is not prime")))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Primes up to and including `bound`, by the sieve of Eratosthenes.
pub fn primes_up_to(bound: usize) -> Vec<Prime> {
    if bound < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; bound + 1];
    let mut out = Vec::new();
    for n in 2..=bound {
        if composite[n] {
            continue;
        }
        out.push(Prime(n as u64));
        let mut m = n * n;
        while m <= bound {
            composite[m] = true;
            m += n;
        }
    }
    out
}

// p^{-s}
fn norm_power(p: Prime, s: ComplexValue) -> ComplexValue {
    (-s * (p.0 as f64).ln()).exp()
}

/// `1 / (1 - p^{-s})`.
pub fn euler_factor(p: Prime, s: ComplexValue) -> Result<ComplexValue> {
    if !(s.re > 0.0) {
        return Err(Error::Divergence(format!(
            "Euler factor at p = {p} needs Re s > 0, got {s}"
        )));
    }
    Ok(1.0 / (1.0 - norm_power(p, s)))
}

/// `Π_{p <= bound} 1 / (1 - p^{-s})`.
pub fn euler_product(s: ComplexValue, bound: usize) -> Result<ComplexValue> {
    primes_up_to(bound)
        .into_iter()
        .try_fold(ComplexValue::new(1.0, 0.0), |acc, p| Ok(acc * euler_factor(p, s)?))
}

/// Shape of the depth-`d` local factor
/// `Σ_{0 <= k_1 < ... < k_d} Π t_i^{k_i} = Π_{j=2}^d T_j / Π_{j=1}^d (1 - T_j)`
/// with the suffix monomials `T_j = t_j t_{j+1} ... t_d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalFactorClosedForm {
    /// Starting indices `j` (1-based) of the suffix monomials in the numerator.
    pub numerator: Vec<usize>,
    /// Starting indices `j` of the factors `1 - T_j` in the denominator.
    pub denominator: Vec<usize>,
    depth: usize,
}

impl LocalFactorClosedForm {
    pub fn new(depth: usize) -> Self {
        LocalFactorClosedForm {
            numerator: (2..=depth).collect(),
            denominator: (1..=depth).collect(),
            depth,
        }
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Evaluate at `t_i = p^{-s_i}`.
    pub fn evaluate(&self, p: Prime, comp: &Composition) -> Result<ComplexValue> {
        if comp.depth() != self.depth {
            return Err(Error::InvalidArgument(format!(
                "closed form of depth {} applied to {comp}",
                self.depth
            )));
        }
        let s = comp.exponents();
        let suffix = |j: usize| norm_power(p, s[j - 1..].iter().sum());
        let num: ComplexValue = self.numerator.iter().map(|&j| suffix(j)).product();
        let den: ComplexValue = self.denominator.iter().map(|&j| 1.0 - suffix(j)).product();
        Ok(num / den)
    }
}

impl fmt::Display for LocalFactorClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let monomial = |j: usize| (j..=self.depth).map(|i| format!("t{i}")).collect::<String>();
        let num: Vec<String> = self.numerator.iter().map(|&j| monomial(j)).collect();
        if num.is_empty() {
            write!(f, "1")?;
        } else {
            write!(f, "{}", num.join("·"))?;
        }
        write!(f, " / ")?;
        for &j in &self.denominator {
            write!(f, "(1 - {})", monomial(j))?;
        }
        Ok(())
    }
}

/// `Σ_{0 <= k_1 < ... < k_d} Π p^{-k_i s_i}` in closed form.
pub fn iterated_local_factor(p: Prime, comp: &Composition) -> Result<ComplexValue> {
    let s = comp.exponents();
    for j in 0..s.len() {
        let suffix: f64 = s[j..].iter().map(|x| x.re).sum();
        if !(suffix > 0.0) {
            return Err(Error::Divergence(format!(
                "local factor at p = {p} needs Re(s_{} + ... + s_{}) > 0 for {comp}",
                j + 1,
                s.len()
            )));
        }
    }
    LocalFactorClosedForm::new(comp.depth()).evaluate(p, comp)
}

/// `π^{-s/2} Γ(s/2)`.
pub fn archimedean_factor(s: ComplexValue) -> Result<ComplexValue> {
    let half = s / 2.0;
    Ok((-half * PI.ln()).exp() * gamma(half)?)
}

// ∫_U^∞ e^{-πt²} t^{σ-1} dt = ½ π^{-σ/2} Γ(σ/2, πU²)
fn gaussian_tail(sigma: f64, upper: f64) -> Result<f64> {
    let g = upper_incomplete_gamma(ComplexValue::new(sigma / 2.0, 0.0), PI * upper * upper)?;
    Ok(0.5 * PI.powf(-sigma / 2.0) * g.re)
}

/// `4 ∫_{t_1 > t_2 > 0} e^{-π(t_1² + t_2²)} t_1^{s_1-1} t_2^{s_2-1} dt_1 dt_2`.
///
/// The lower cutoff is pushed below `spec.lower_cutoff` when the bound on the
/// strip `t_2 < cutoff` would otherwise exceed a tenth of the target; both
/// neglected pieces are added to the error estimate.
pub fn iterated_archimedean(s1: ComplexValue, s2: ComplexValue, spec: &QuadratureSpec) -> Result<EvaluationResult> {
    spec.validate()?;
    if !(s2.re > 0.0) {
        return Err(Error::Divergence(format!(
            "iterated archimedean factor needs Re s2 > 0, got {s2}"
        )));
    }
    let (sigma1, sigma2) = (s1.re, s2.re);
    if !(sigma1 + sigma2 > 0.0) {
        return Err(Error::Divergence(format!(
            "iterated archimedean factor needs Re(s1 + s2) > 0, got ({s1}, {s2})"
        )));
    }
    // For t1 > t2, t1^{σ1-1} <= t2^{-η} t1^{σ1+η-1}; η > 0 only when σ1 <= 0.
    let eta = if sigma1 > 0.0 { 0.0 } else { (sigma2 - sigma1) / 2.0 };
    let inner_full = archimedean_factor(ComplexValue::new(sigma1 + eta, 0.0))?.re / 2.0;
    let lower_tail = |c: f64| 4.0 * inner_full * c.powf(sigma2 - eta) / (sigma2 - eta);
    let mut lower = spec.lower_cutoff;
    let budget = 0.1 * spec.target_abs_error;
    while lower_tail(lower) > budget && lower > 1e-300 {
        lower *= 1e-2;
    }
    let upper_tail = {
        let t1_tail = gaussian_tail(sigma1, spec.upper_cutoff)?;
        let t2_full = archimedean_factor(ComplexValue::new(sigma2, 0.0))?.re / 2.0;
        4.0 * t1_tail * t2_full
    };
    let spec = spec.with_cutoffs(lower, spec.upper_cutoff);
    let r = integrate_simplex2(
        |t1, t2| {
            let e = (-PI * (t1 * t1 + t2 * t2)).exp();
            let p1 = ((s1 - 1.0) * t1.ln()).exp();
            let p2 = ((s2 - 1.0) * t2.ln()).exp();
            4.0 * e * p1 * p2
        },
        &spec,
    )?;
    EvaluationResult::new(
        r.value,
        r.abs_error_estimate + lower_tail(lower) + upper_tail,
        r.method,
        r.terms_or_nodes_used,
    )
}

/// `|Σ_{k=0}^{kmax} p^{-k} (p-1)/p - 1|`: how far the orbit decomposition of
/// `Z_p - {0}` truncated at `kmax` falls short of total measure one.
pub fn haar_consistency(p: Prime, kmax: u32) -> f64 {
    let p = p.0 as f64;
    let unit_measure = (p - 1.0) / p;
    let total: f64 = (0..=kmax).map(|k| p.powi(-(k as i32)) * unit_measure).sum();
    (total - 1.0).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> ComplexValue {
        ComplexValue::new(x, 0.0)
    }

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn primes() {
        assert!(Prime::new(1).is_err());
        assert!(Prime::new(91).is_err());
        assert_eq!(p(97).get(), 97);
        assert_eq!(primes_up_to(30).len(), 10);
    }

    #[test]
    fn euler_factors() {
        assert_eq!(euler_factor(p(2), c(1.0)).unwrap(), c(2.0));
        assert!((euler_factor(p(3), c(2.0)).unwrap() - 9.0 / 8.0).norm() < 1e-15);
        assert!(matches!(euler_factor(p(2), c(0.0)), Err(Error::Divergence(_))));
    }

    #[test]
    fn depth_two_fixed_point() {
        let v = iterated_local_factor(p(2), &Composition::from_reals(&[2.0, 2.0])).unwrap();
        assert!((v.re - 16.0 / 45.0).abs() < 1e-15);
        let d1 = iterated_local_factor(p(2), &Composition::from_reals(&[2.0])).unwrap();
        assert_eq!(d1, euler_factor(p(2), c(2.0)).unwrap());
    }

    #[test]
    fn closed_form_display() {
        assert_eq!(
            LocalFactorClosedForm::new(3).to_string(),
            "t2t3·t3 / (1 - t1t2t3)(1 - t2t3)(1 - t3)"
        );
        assert_eq!(LocalFactorClosedForm::new(1).to_string(), "1 / (1 - t1)");
    }

    #[test]
    fn archimedean_values() {
        assert!((archimedean_factor(c(2.0)).unwrap().re - 1.0 / PI).abs() < 1e-15);
        assert!((archimedean_factor(c(1.0)).unwrap().re - 1.0).abs() < 1e-14);
        assert!(matches!(archimedean_factor(c(0.0)), Err(Error::Pole(_))));
    }

    #[test]
    fn symmetric_archimedean_point() {
        let r = iterated_archimedean(c(2.0), c(2.0), &QuadratureSpec::default()).unwrap();
        assert!((r.value.re - 0.5 / (PI * PI)).abs() < 1e-9, "{}", r.value);
    }

    #[test]
    fn haar_partial_sums() {
        assert_eq!(haar_consistency(p(2), 1), 0.25);
        assert!(haar_consistency(p(3), 20) <= 3f64.powi(-20) * 1.0001);
    }
}
