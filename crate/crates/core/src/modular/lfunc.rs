//! Dirichlet series `L(F, s)`, `L(F, G, s1, s2)` and their completed
//! counterparts, integrals of `F(it)` along the imaginary axis.

use std::f64::consts::PI;

use super::FourierCoefficients;
use crate::error::{Error, Result};
use crate::numerics::{
    gamma, integrate_semiaxis_with_point_errors, integrate_semiaxis_with_tails, integrate_simplex2, nested_tail_bound,
    upper_incomplete_gamma, ComplexValue, DualPath, EvaluationResult, Method, QuadratureSpec, TailBounds, TermBound,
    TruncationSpec,
};

const TWO_PI: f64 = 2.0 * PI;

/// Floating-point Dirichlet coefficients with a growth bound
/// `|a_n| <= constant · n^growth`.
#[derive(Debug, Clone, PartialEq)]
pub struct DirichletCoefficients {
    values: Vec<f64>,
    growth: f64,
    constant: f64,
}

impl DirichletCoefficients {
    pub fn new(values: Vec<f64>, growth: f64, constant: f64) -> Result<Self> {
        if values.is_empty() || values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument(
                "coefficients must be finite and nonempty".into(),
            ));
        }
        if !(constant >= 0.0 && growth.is_finite()) {
            return Err(Error::InvalidArgument(
                "growth bound must be finite and nonnegative".into(),
            ));
        }
        Ok(DirichletCoefficients {
            values,
            growth,
            constant,
        })
    }

    /// Growth `k/2` with the measured constant of
    /// [`FourierCoefficients::growth_constant`].
    pub fn from_form(f: &FourierCoefficients) -> Result<Self> {
        DirichletCoefficients::new(f.to_f64(), f.weight() as f64 / 2.0, f.growth_constant())
    }

    /// `n ↦ a_n b_n`, the coefficients of a tied index pair.
    pub fn pointwise(&self, other: &Self) -> Self {
        DirichletCoefficients {
            values: self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect(),
            growth: self.growth + other.growth,
            constant: self.constant * other.constant,
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn growth(&self) -> f64 {
        self.growth
    }

    pub fn constant(&self) -> f64 {
        self.constant
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// `Σ_{0<n_1<...<n_d<=N} Π a^{(j)}_{n_j} n_j^{-s_j}`, with `N` the smaller of
/// the cap and the shortest coefficient list, and the nested tail bound from
/// the growth constants as error estimate.
pub fn nested_dirichlet_series(
    letters: &[(&DirichletCoefficients, ComplexValue)],
    trunc: &TruncationSpec,
) -> Result<EvaluationResult> {
    trunc.validate()?;
    let d = letters.len();
    if d == 0 {
        return Ok(EvaluationResult::exact(ComplexValue::new(1.0, 0.0)));
    }
    let mut suffix = 0.0;
    for (j, (c, s)) in letters.iter().enumerate().rev() {
        suffix += s.re - c.growth;
        if !(suffix > (d - j) as f64) {
            return Err(Error::Divergence(format!(
                "coefficient-weighted series needs Re(s_j) - growth summed from j = {} to exceed {}, got {suffix}",
                j + 1,
                d - j
            )));
        }
    }
    let cap = letters
        .iter()
        .map(|(c, _)| c.len())
        .min()
        .unwrap_or(0)
        .min(trunc.max_outer_index);
    let zero = ComplexValue::new(0.0, 0.0);
    let mut prefix = vec![zero; d + 1];
    let mut modulus = vec![0.0; d + 1];
    prefix[0] = ComplexValue::new(1.0, 0.0);
    modulus[0] = 1.0;
    for n in 1..=cap {
        let log_n = (n as f64).ln();
        for j in (1..=d).rev() {
            let (c, s) = letters[j - 1];
            let term = c.values[n - 1] * (-s * log_n).exp();
            let below = prefix[j - 1];
            prefix[j] += term * below;
            let below = modulus[j - 1];
            modulus[j] += term.norm() * below;
        }
    }
    let bounds: Vec<TermBound> = letters
        .iter()
        .map(|(c, s)| TermBound {
            constant: c.constant,
            decay: s.re - c.growth,
        })
        .collect();
    let tail = nested_tail_bound(&bounds, cap.max(1))?;
    let rounding = 4.0 * f64::EPSILON * (cap as f64).sqrt() * modulus[d];
    let error = tail + rounding;
    if error > trunc.target_abs_error {
        return Err(Error::TailTooLarge {
            bound: error,
            target: trunc.target_abs_error,
            cap,
        });
    }
    EvaluationResult::new(prefix[d], error, Method::Series, cap * d)
}

/// `L(F, s) = Σ a_n n^{-s}` for `Re s > k/2 + 1`.
pub fn l_series(f: &FourierCoefficients, s: ComplexValue, trunc: &TruncationSpec) -> Result<EvaluationResult> {
    let k = f.weight() as f64;
    if !(s.re > k / 2.0 + 1.0) {
        return Err(Error::Divergence(format!(
            "L-series of weight {k} needs Re s > {}, got {s}",
            k / 2.0 + 1.0
        )));
    }
    let c = DirichletCoefficients::from_form(f)?;
    nested_dirichlet_series(&[(&c, s)], trunc)
}

/// `L(F, G, s1, s2) = Σ_{0<n_1<n_2} a_{n_1} b_{n_2} n_1^{-s_1} n_2^{-s_2}`.
pub fn double_l_series(
    f: &FourierCoefficients,
    g: &FourierCoefficients,
    s1: ComplexValue,
    s2: ComplexValue,
    trunc: &TruncationSpec,
) -> Result<EvaluationResult> {
    let (kf, kg) = (f.weight() as f64, g.weight() as f64);
    if !(s2.re > kg / 2.0 + 1.0) || !(s1.re + s2.re > (kf + kg) / 2.0 + 2.0) {
        return Err(Error::Divergence(format!(
            "double L-series needs Re s2 > {} and Re(s1 + s2) > {}, got ({s1}, {s2})",
            kg / 2.0 + 1.0,
            (kf + kg) / 2.0 + 2.0
        )));
    }
    let a = DirichletCoefficients::from_form(f)?;
    let b = DirichletCoefficients::from_form(g)?;
    nested_dirichlet_series(&[(&a, s1), (&b, s2)], trunc)
}

/// Normalization of the function integrated along the imaginary axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CuspNormalization {
    /// `F(it) = Σ a_n e^{-2πnt}`.
    #[default]
    Standard,
    /// `2 Σ a_n e^{-2πnt}`, the variant with the doubled archimedean function.
    Doubled,
}

impl CuspNormalization {
    fn scale(self) -> f64 {
        match self {
            CuspNormalization::Standard => 1.0,
            CuspNormalization::Doubled => 2.0,
        }
    }
}

const RELATIVE_TRUNCATION: f64 = 1e-17;

// F(it) on the imaginary axis, with bounds used for cutoffs.
struct CuspForm {
    weight: f64,
    a: Vec<f64>,
    constant: f64,
    // (-1)^{k/2}
    sign: f64,
    // |F(it)| <= big_b e^{-2πt} for t >= 1
    big_b: f64,
}

impl CuspForm {
    fn new(f: &FourierCoefficients, normalization: CuspNormalization) -> Self {
        let scale = normalization.scale();
        let a: Vec<f64> = f.to_f64().into_iter().map(|x| x * scale).collect();
        let constant = f.growth_constant() * scale;
        let weight = f.weight() as f64;
        let sign = if f.weight().is_multiple_of(4) { 1.0 } else { -1.0 };
        let known: f64 = a
            .iter()
            .enumerate()
            .map(|(i, x)| x.abs() * (-TWO_PI * i as f64).exp())
            .sum();
        let beyond = Self::remainder(weight, constant, a.len(), 1.0);
        CuspForm {
            weight,
            a,
            constant,
            sign,
            big_b: known + beyond * TWO_PI.exp(),
        }
    }

    // bound on Σ_{m>n} C m^{k/2} e^{-2πmt}
    fn remainder(weight: f64, constant: f64, n: usize, t: f64) -> f64 {
        let half = weight / 2.0;
        let m = (n + 1) as f64;
        let ratio = ((m + 1.0) / m).powf(half) * (-TWO_PI * t).exp();
        if ratio >= 1.0 {
            return f64::INFINITY;
        }
        constant * m.powf(half) * (-TWO_PI * m * t).exp() / (1.0 - ratio)
    }

    /// Direct sum with its absolute error.
    fn direct(&self, t: f64) -> (f64, f64) {
        let (sum, truncation, abs_sum) = self.direct_parts(t);
        (sum, truncation + 4.0 * f64::EPSILON * abs_sum)
    }

    // (sum, truncation bound, Σ |terms|)
    fn direct_parts(&self, t: f64) -> (f64, f64, f64) {
        let q = (-TWO_PI * t).exp();
        let mut power = 1.0;
        let mut sum = 0.0;
        let mut abs_sum = 0.0;
        for (i, &an) in self.a.iter().enumerate() {
            power *= q;
            let term = an * power;
            sum += term;
            abs_sum += term.abs();
            let n = i + 1;
            if n % 4 == 0 || n == self.a.len() {
                let rest = Self::remainder(self.weight, self.constant, n, t);
                if rest <= RELATIVE_TRUNCATION * abs_sum || power == 0.0 {
                    return (sum, rest, abs_sum);
                }
            }
        }
        let rest = Self::remainder(self.weight, self.constant, self.a.len(), t);
        (sum, rest, abs_sum)
    }

    fn check_direct(&self, t_min: f64) -> Result<()> {
        let (_, truncation, abs_sum) = self.direct_parts(t_min);
        if !(truncation <= 1e-12 * abs_sum) {
            return Err(Error::InvalidArgument(format!(
                "{} coefficients do not determine F(it) at t = {t_min}; supply more",
                self.a.len()
            )));
        }
        Ok(())
    }

    /// `F(it)` through `F(i/t) = (-1)^{k/2} ... ` so that only `t >= 1` is summed.
    fn at(&self, t: f64) -> f64 {
        if t >= 1.0 {
            self.direct(t).0
        } else {
            self.sign * t.powf(-self.weight) * self.direct(1.0 / t).0
        }
    }

    // ∫_U^∞ |F(it)| t^{σ-1} dt, U >= 1
    fn upper_strip(&self, sigma: f64, upper: f64) -> Result<f64> {
        let g = upper_incomplete_gamma(ComplexValue::new(sigma, 0.0), TWO_PI * upper)?;
        Ok(self.big_b * TWO_PI.powf(-sigma) * g.re.abs())
    }

    // ∫_0^c |F(it)| t^{σ-1} dt, c <= 1
    fn lower_strip(&self, sigma: f64, lower: f64) -> Result<f64> {
        let a = self.weight - sigma;
        let g = upper_incomplete_gamma(ComplexValue::new(a, 0.0), TWO_PI / lower)?;
        Ok(self.big_b * TWO_PI.powf(-a) * g.re.abs())
    }

    fn mellin_abs(&self, sigma: f64) -> Result<f64> {
        Ok(self.upper_strip(sigma, 1.0)? + self.lower_strip(sigma, 1.0)?)
    }
}

fn power(t: f64, e: ComplexValue) -> ComplexValue {
    (e * t.ln()).exp()
}

/// `Λ(F, s) = ∫_0^∞ F(it) t^{s-1} dt`, valid for every `s`.
pub fn completed_l(f: &FourierCoefficients, s: ComplexValue, spec: &QuadratureSpec) -> Result<EvaluationResult> {
    completed_l_normalized(f, s, spec, CuspNormalization::Standard)
}

/// As [`completed_l`]. The piece over `(0, 1)` is folded onto `(1, ∞)` with
/// `F(i/t) = (-1)^{k/2} t^k F(it)`, giving
/// `∫_1^∞ F(it) (t^{s-1} + (-1)^{k/2} t^{k-s-1}) dt`; the quadrature runs over
/// `[1, upper_cutoff]`.
pub fn completed_l_normalized(
    f: &FourierCoefficients,
    s: ComplexValue,
    spec: &QuadratureSpec,
    normalization: CuspNormalization,
) -> Result<EvaluationResult> {
    spec.validate()?;
    if spec.upper_cutoff <= 1.0 {
        return Err(Error::InvalidArgument("upper_cutoff must exceed 1".into()));
    }
    let form = CuspForm::new(f, normalization);
    form.check_direct(1.0)?;
    let k = form.weight;
    let upper = form.upper_strip(s.re, spec.upper_cutoff)? + form.upper_strip(k - s.re, spec.upper_cutoff)?;
    let spec = spec.with_cutoffs(1.0, spec.upper_cutoff);
    let integrand = |t: f64| form.direct(t).0 * (power(t, s - 1.0) + form.sign * power(t, k - s - 1.0));
    integrate_semiaxis_with_tails(integrand, &spec, TailBounds { lower: 0.0, upper })
}

/// `(2π)^{-s} Γ(s) L(F, s)`, with `L` from the Dirichlet series.
pub fn completed_l_closed_form(
    f: &FourierCoefficients,
    s: ComplexValue,
    trunc: &TruncationSpec,
) -> Result<EvaluationResult> {
    let factor = (-s * TWO_PI.ln()).exp() * gamma(s)?;
    let l = l_series(f, s, trunc)?;
    EvaluationResult::new(
        factor * l.value,
        factor.norm() * l.abs_error_estimate + 4.0 * f64::EPSILON * (factor * l.value).norm(),
        Method::Series,
        l.terms_or_nodes_used,
    )
}

/// Quadrature and Dirichlet-series values of `Λ(F, s)`.
pub fn completed_l_dual(
    f: &FourierCoefficients,
    s: ComplexValue,
    spec: &QuadratureSpec,
    trunc: &TruncationSpec,
) -> Result<DualPath> {
    Ok(DualPath {
        primary: completed_l(f, s, spec)?,
        oracle: completed_l_closed_form(f, s, trunc)?,
    })
}

/// `Λ(F, G, s1, s2) = ∫_{t1>t2>0} F(it1) t1^{s1} G(it2) t2^{s2} dt1/t1 dt2/t2`.
pub fn completed_double_l(
    f: &FourierCoefficients,
    g: &FourierCoefficients,
    s1: ComplexValue,
    s2: ComplexValue,
    spec: &QuadratureSpec,
) -> Result<EvaluationResult> {
    completed_double_l_normalized(f, g, s1, s2, spec, CuspNormalization::Standard)
}

// Cutoffs [c, U] whose neglected strips each stay below `budget`.
fn double_cutoffs(
    outer: &CuspForm,
    inner: &CuspForm,
    s1: f64,
    s2: f64,
    spec: &QuadratureSpec,
    budget: f64,
) -> Result<(f64, f64, f64, f64)> {
    let inner_full = outer.mellin_abs(s1)?;
    let outer_full = inner.mellin_abs(s2)?;
    let lower_bound = |c: f64| -> Result<f64> { Ok(inner.lower_strip(s2, c)? * inner_full) };
    let upper_bound = |u: f64| -> Result<f64> { Ok(outer.upper_strip(s1, u)? * outer_full) };
    let mut lower = 0.5;
    while lower * 0.8 > spec.lower_cutoff && lower_bound(lower)? > budget {
        lower *= 0.8;
    }
    let mut upper = 2.0;
    while upper * 1.25 < spec.upper_cutoff && upper_bound(upper)? > budget {
        upper *= 1.25;
    }
    if upper_bound(upper)? > budget {
        upper = spec.upper_cutoff;
    }
    Ok((lower, upper, lower_bound(lower)?, upper_bound(upper)?))
}

/// As [`completed_double_l`], by nested quadrature over the simplex. Both
/// functions are evaluated through the modular transformation below `t = 1`.
pub fn completed_double_l_normalized(
    f: &FourierCoefficients,
    g: &FourierCoefficients,
    s1: ComplexValue,
    s2: ComplexValue,
    spec: &QuadratureSpec,
    normalization: CuspNormalization,
) -> Result<EvaluationResult> {
    spec.validate()?;
    let outer = CuspForm::new(f, normalization);
    let inner = CuspForm::new(g, normalization);
    outer.check_direct(1.0)?;
    inner.check_direct(1.0)?;
    let budget = 0.05 * spec.target_abs_error;
    let (lower, upper, lower_tail, upper_tail) = double_cutoffs(&outer, &inner, s1.re, s2.re, spec, budget)?;
    let box_spec = spec.with_cutoffs(lower, upper);
    let r = integrate_simplex2(
        |t1, t2| outer.at(t1) * inner.at(t2) * (power(t1, s1 - 1.0) * power(t2, s2 - 1.0)),
        &box_spec,
    )?;
    EvaluationResult::new(
        r.value,
        r.abs_error_estimate + lower_tail + upper_tail,
        r.method,
        r.terms_or_nodes_used,
    )
}

const ORACLE_SPLIT: f64 = 0.1;

/// Simplex quadrature against a one-dimensional quadrature in `t2` whose
/// inner integral is summed through incomplete gamma functions:
/// `∫_{t2}^∞ F(it1) t1^{s1-1} dt1 = Σ a_n (2πn)^{-s1} Γ(s1, 2πn t2)`.
/// The oracle sums `G(it2)` directly, without the modular transformation,
/// on `t2 >= 0.1`, and bounds the strip below.
pub fn completed_double_l_dual(
    f: &FourierCoefficients,
    g: &FourierCoefficients,
    s1: ComplexValue,
    s2: ComplexValue,
    spec: &QuadratureSpec,
) -> Result<DualPath> {
    let primary = completed_double_l(f, g, s1, s2, spec)?;
    let oracle = double_l_oracle(f, g, s1, s2, spec)?;
    Ok(DualPath { primary, oracle })
}

fn double_l_oracle(
    f: &FourierCoefficients,
    g: &FourierCoefficients,
    s1: ComplexValue,
    s2: ComplexValue,
    spec: &QuadratureSpec,
) -> Result<EvaluationResult> {
    spec.validate()?;
    let outer = CuspForm::new(f, CuspNormalization::Standard);
    let inner = CuspForm::new(g, CuspNormalization::Standard);
    inner.check_direct(ORACLE_SPLIT)?;
    let strip = inner.lower_strip(s2.re, ORACLE_SPLIT)? * outer.mellin_abs(s1.re)?;
    let upper_tail = outer.upper_strip(s1.re, spec.upper_cutoff)? * inner.mellin_abs(s2.re)?;

    let weights: Vec<ComplexValue> = outer
        .a
        .iter()
        .enumerate()
        .map(|(i, &a)| a * (-s1 * (TWO_PI * (i + 1) as f64).ln()).exp())
        .collect();
    let incomplete_sum = |t2: f64| -> Result<(ComplexValue, f64)> {
        let mut sum = ComplexValue::new(0.0, 0.0);
        let mut abs_sum = 0.0;
        for (i, w) in weights.iter().enumerate() {
            let x = TWO_PI * (i + 1) as f64 * t2;
            if w.norm() == 0.0 {
                continue;
            }
            let term = w * upper_incomplete_gamma(s1, x)?;
            sum += term;
            abs_sum += term.norm();
            if x > s1.re.abs() + 45.0 && term.norm() <= RELATIVE_TRUNCATION * abs_sum {
                return Ok((sum, 4.0 * f64::EPSILON * abs_sum));
            }
        }
        Err(Error::InvalidArgument(format!(
            "{} coefficients do not determine the incomplete gamma sum at t = {t2}; supply more",
            weights.len()
        )))
    };
    incomplete_sum(ORACLE_SPLIT)?;
    let outer_spec = spec.with_cutoffs(ORACLE_SPLIT, spec.upper_cutoff);
    let integrand = |t2: f64| -> Result<(ComplexValue, f64)> {
        let (v, v_err) = incomplete_sum(t2)?;
        let (g, g_err) = inner.direct(t2);
        let p = power(t2, s2 - 1.0);
        Ok((g * p * v, p.norm() * (g_err * v.norm() + g.abs() * v_err)))
    };
    integrate_semiaxis_with_point_errors(
        integrand,
        &outer_spec,
        TailBounds {
            lower: strip,
            upper: upper_tail,
        },
    )
}
