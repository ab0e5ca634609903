//! Double-exponential (tanh-sinh) quadrature and the semi-axis / simplex
//! integrators built on it.
//!
//! Integrals over `(0, ∞)` are taken in the logarithmic variable `u = ln t`
//! on `[ln lower_cutoff, ln upper_cutoff]`: the integrands of this crate
//! behave like powers of `t` near zero and decay exponentially at infinity,
//! which becomes smooth two-sided decay in `u`.

use std::f64::consts::FRAC_PI_2;

use super::{ComplexValue, EvaluationResult, Method, QuadratureSpec};
use crate::error::{Error, Result};

const T_MAX: f64 = 3.5;
const MIN_LEVEL: u32 = 3;
const LOG_RESOLUTION: f64 = 0.5;

/// Raw output of a tanh-sinh run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureOutcome {
    pub value: ComplexValue,
    /// Last inter-level difference plus propagated point errors.
    pub error: f64,
    pub evaluations: usize,
}

/// Caller-supplied bounds on the parts of `(0, ∞)` outside the cutoffs.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct TailBounds {
    pub lower: f64,
    pub upper: f64,
}

/// Tanh-sinh quadrature of `f` on the finite interval `[a, b]`.
pub fn tanh_sinh<F>(mut f: F, a: f64, b: f64, max_level: u32, target: f64) -> Result<QuadratureOutcome>
where
    F: FnMut(f64) -> ComplexValue,
{
    let resolution = ((b - a) / 8.0).abs().max(f64::MIN_POSITIVE);
    tanh_sinh_core(|x| Ok((f(x), 0.0)), a, b, max_level, target, resolution)
}

/// `f` returns a value together with an absolute error on that value, which
/// is propagated through the quadrature weights (used for nested integrals).
pub(crate) fn tanh_sinh_core<F>(
    mut f: F,
    a: f64,
    b: f64,
    max_level: u32,
    target: f64,
    resolution: f64,
) -> Result<QuadratureOutcome>
where
    F: FnMut(f64) -> Result<(ComplexValue, f64)>,
{
    let zero = ComplexValue::new(0.0, 0.0);
    if a == b {
        return Ok(QuadratureOutcome {
            value: zero,
            error: 0.0,
            evaluations: 0,
        });
    }
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    // spacing of the central nodes is about half * π/2 * h
    let needed = (half.abs() * FRAC_PI_2 / resolution).log2().ceil().max(0.0) as u32;
    let min_level = needed.max(MIN_LEVEL);
    if min_level > max_level {
        return Err(Error::NonConvergence {
            achieved: f64::INFINITY,
            target,
        });
    }

    let mut sum = zero;
    let mut point_error = 0.0;
    let mut evaluations = 0;
    let mut previous: Option<ComplexValue> = None;
    let mut last_diff = f64::INFINITY;

    for level in 0..=max_level {
        let h = 0.5f64.powi(level as i32);
        let (start, stride) = if level == 0 { (0usize, 1usize) } else { (1, 2) };
        let mut k = start;
        loop {
            let t = k as f64 * h;
            if t > T_MAX {
                break;
            }
            let y = FRAC_PI_2 * t.sinh();
            let cosh_y = y.cosh();
            let weight = FRAC_PI_2 * t.cosh() / (cosh_y * cosh_y);
            if weight == 0.0 || !weight.is_finite() {
                break;
            }
            let x = y.tanh();
            let (fp, ep) = f(mid + half * x)?;
            sum += fp * weight;
            point_error += ep * weight;
            evaluations += 1;
            if k != 0 {
                let (fm, em) = f(mid - half * x)?;
                sum += fm * weight;
                point_error += em * weight;
                evaluations += 1;
            }
            k += stride;
        }
        let estimate = sum * (h * half);
        if !(estimate.re.is_finite() && estimate.im.is_finite()) {
            return Err(Error::NonFinite("tanh-sinh quadrature"));
        }
        if let Some(prev) = previous {
            last_diff = (estimate - prev).norm();
            if level >= min_level && last_diff <= target {
                return Ok(QuadratureOutcome {
                    value: estimate,
                    error: last_diff + point_error * h * half.abs(),
                    evaluations,
                });
            }
        }
        previous = Some(estimate);
    }
    Err(Error::NonConvergence {
        achieved: last_diff,
        target,
    })
}

fn log_interval(spec: &QuadratureSpec, lower: f64) -> (f64, f64) {
    (lower.ln(), spec.upper_cutoff.ln())
}

/// `∫ f(t) dt` over `[lower_cutoff, upper_cutoff]`.
pub fn integrate_semiaxis<F>(f: F, spec: &QuadratureSpec) -> Result<EvaluationResult>
where
    F: Fn(f64) -> ComplexValue,
{
    integrate_semiaxis_with_tails(f, spec, TailBounds::default())
}

/// As [`integrate_semiaxis`], adding the caller's bounds on the neglected
/// pieces `(0, lower_cutoff)` and `(upper_cutoff, ∞)` to the error estimate.
pub fn integrate_semiaxis_with_tails<F>(f: F, spec: &QuadratureSpec, tails: TailBounds) -> Result<EvaluationResult>
where
    F: Fn(f64) -> ComplexValue,
{
    spec.validate()?;
    let (a, b) = log_interval(spec, spec.lower_cutoff);
    let out = tanh_sinh_core(
        |u| {
            let t = u.exp();
            Ok((f(t) * t, 0.0))
        },
        a,
        b,
        spec.levels,
        spec.target_abs_error,
        LOG_RESOLUTION,
    )?;
    EvaluationResult::new(
        out.value,
        out.error + tails.lower + tails.upper,
        Method::Quadrature,
        out.evaluations,
    )
}

/// As [`integrate_semiaxis_with_tails`] for an integrand that also reports an
/// absolute error on each value; those errors are carried through the weights.
pub(crate) fn integrate_semiaxis_with_point_errors<F>(
    f: F,
    spec: &QuadratureSpec,
    tails: TailBounds,
) -> Result<EvaluationResult>
where
    F: Fn(f64) -> Result<(ComplexValue, f64)>,
{
    spec.validate()?;
    let (a, b) = log_interval(spec, spec.lower_cutoff);
    let out = tanh_sinh_core(
        |u| {
            let t = u.exp();
            let (v, e) = f(t)?;
            Ok((v * t, e * t))
        },
        a,
        b,
        spec.levels,
        spec.target_abs_error,
        LOG_RESOLUTION,
    )?;
    EvaluationResult::new(
        out.value,
        out.error + tails.lower + tails.upper,
        Method::Quadrature,
        out.evaluations,
    )
}

/// `∫∫_{t1 > t2 > 0} f(t1, t2) dt1 dt2`, restricted to the cutoff box.
///
/// The outer variable is `t2` on `[lower_cutoff, upper_cutoff]`; for each
/// outer node the inner variable `t1` runs over `(t2, upper_cutoff)`.
pub fn integrate_simplex2<F>(f: F, spec: &QuadratureSpec) -> Result<EvaluationResult>
where
    F: Fn(f64, f64) -> ComplexValue,
{
    spec.validate()?;
    let inner_target = 0.1 * spec.target_abs_error;
    let upper = spec.upper_cutoff.ln();
    let mut inner_evaluations = 0usize;
    let (a, b) = log_interval(spec, spec.lower_cutoff);
    let out = tanh_sinh_core(
        |u2| {
            let t2 = u2.exp();
            let inner = tanh_sinh_core(
                |u1| {
                    let t1 = u1.exp();
                    Ok((f(t1, t2) * t1, 0.0))
                },
                u2,
                upper,
                spec.levels,
                inner_target,
                LOG_RESOLUTION,
            )?;
            inner_evaluations += inner.evaluations;
            Ok((inner.value * t2, inner.error * t2))
        },
        a,
        b,
        spec.levels,
        spec.target_abs_error,
        LOG_RESOLUTION,
    )?;
    EvaluationResult::new(out.value, out.error, Method::Quadrature, inner_evaluations)
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`, nodes ascending.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut derivative = 0.0;
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(n, x);
            derivative = dp;
            let step = p / dp;
            x -= step;
            if step.abs() < 1e-16 {
                let (_, dp) = legendre_with_derivative(n, x);
                derivative = dp;
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * derivative * derivative);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}
