//! Multiple zeta functions as integrals over finite ideles, and the completed
//! (archimedean) iteration through Mellin transforms of `θ(it) - 1`.
//!
//! Convention: `θ(it) - 1 = 2 Σ_{n>=1} e^{-π n² t}`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::local_factors::archimedean_factor;
use crate::mzv::tails::SuffixTails;
use crate::mzv::Composition;
use crate::numerics::{
    integrate_semiaxis_with_tails, integrate_simplex2, riemann_zeta, shrink_cutoff, upper_incomplete_gamma,
    ComplexValue, DualPath, EvaluationResult, Method, QuadratureSpec, TailBounds, TruncationSpec,
};

const EXPANSION_TERMS: usize = 24;

/// Smallest prime factor of every integer up to `bound` (0 and 1 map to 0).
fn smallest_prime_factors(bound: usize) -> Vec<u32> {
    let mut spf = vec![0u32; bound + 1];
    for n in 2..=bound {
        if spf[n] != 0 {
            continue;
        }
        let mut m = n;
        while m <= bound {
            if spf[m] == 0 {
                spf[m] = n as u32;
            }
            m += n;
        }
    }
    spf
}

// -ln |n|_f = Σ_p v_p(n) ln p
fn log_inverse_norm(mut n: usize, spf: &[u32]) -> f64 {
    let mut acc = 0.0;
    while n > 1 {
        let p = spf[n] as usize;
        acc += (p as f64).ln();
        n /= p;
    }
    acc
}

/// `∫ Π |x_i|_f^{s_i} dx` over chains of finite ideles with
/// `|x_1|_f > ... > |x_d|_f`, integrand constant on the orbits `n Ẑ^×`.
///
/// Orbits are visited in order of decreasing norm `1/n`; each has measure
/// one and contributes its norm, read off the prime factorization of `n`.
/// Chains are accumulated as running prefix sums up to `N`, and chains that
/// leave the range are completed with the large-`n` expansions of the
/// remaining suffix sums.
pub fn finite_adelic_mzf(comp: &Composition, trunc: &TruncationSpec) -> Result<EvaluationResult> {
    trunc.validate()?;
    comp.check_convergent()?;
    let d = comp.depth();
    if d == 0 {
        return Ok(EvaluationResult {
            value: ComplexValue::new(1.0, 0.0),
            abs_error_estimate: 0.0,
            method: Method::Series,
            terms_or_nodes_used: 0,
        });
    }
    let cap = trunc.max_outer_index;
    let s = comp.exponents();
    let spf = smallest_prime_factors(cap);
    let zero = ComplexValue::new(0.0, 0.0);
    // prefix[j]: chains of length j inside the range; modulus[j] the same with |.|
    let mut prefix = vec![zero; d + 1];
    let mut modulus = vec![0.0; d + 1];
    prefix[0] = ComplexValue::new(1.0, 0.0);
    modulus[0] = 1.0;
    for n in 1..=cap {
        let measure = 1.0;
        let log_inv = log_inverse_norm(n, &spf);
        for j in (1..=d).rev() {
            let weight = (-s[j - 1] * log_inv).exp() * measure;
            let below = prefix[j - 1];
            prefix[j] += weight * below;
            let below = modulus[j - 1];
            modulus[j] += weight.norm() * below;
        }
    }
    let (tails, tail_errors) = SuffixTails::new(s, EXPANSION_TERMS).evaluate(cap as f64);
    let mut value = prefix[d];
    let mut error = 0.0;
    for j in 0..d {
        value += prefix[j] * tails[j];
        error += modulus[j] * tail_errors[j];
    }
    error += 8.0 * f64::EPSILON * (cap as f64).sqrt() * value.norm() * d as f64;
    if error > trunc.target_abs_error {
        return Err(Error::TailTooLarge {
            bound: error,
            target: trunc.target_abs_error,
            cap,
        });
    }
    EvaluationResult::new(value, error, Method::Series, cap * d)
}

/// Truncation point for `2 Σ_{n>=1} e^{-π n² t}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaTail {
    pub t: f64,
    pub nmax: u64,
}

impl ThetaTail {
    /// `2 Σ_{n>nmax} e^{-π n² t} <= 2 e^{-π (nmax+1)² t} / (1 - e^{-π (2 nmax + 3) t})`.
    ///
    /// Bounds the terms not yet summed when `nmax` terms are in.
    pub fn bound(&self) -> f64 {
        let next = (self.nmax + 1) as f64;
        2.0 * (-PI * next * next * self.t).exp() / (1.0 - (-PI * (2.0 * next + 1.0) * self.t).exp())
    }
}

/// `θ(it) - 1` by direct summation, with the truncation used.
pub fn theta_minus_one_direct(t: f64) -> Result<(f64, ThetaTail)> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::InvalidArgument(format!("theta needs finite t > 0, got {t}")));
    }
    let mut sum = 0.0;
    let mut n = 0u64;
    loop {
        n += 1;
        sum += 2.0 * (-PI * (n * n) as f64 * t).exp();
        let tail = ThetaTail { t, nmax: n };
        if tail.bound() < 1e-16 * (sum + 1e-300) {
            return Ok((sum, tail));
        }
    }
}

/// `θ(it) - 1 = 2 Σ_{n>=1} e^{-π n² t}`.
///
/// For `t < 1` the sum is taken at `1/t` through `θ(i/t) = √t θ(it)`, which
/// needs only a few terms and avoids the `t^{-1/2}` term count of direct
/// summation.
pub fn theta_minus_one(t: f64) -> Result<f64> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::InvalidArgument(format!("theta needs finite t > 0, got {t}")));
    }
    if t >= 1.0 {
        return Ok(theta_minus_one_direct(t)?.0);
    }
    let dual = theta_minus_one_direct(1.0 / t)?.0;
    Ok((1.0 + dual) / t.sqrt() - 1.0)
}

// ∫_0^∞ (θ(it) - 1) t^{a-1} dt for real a > 1/2
fn theta_mellin_real(a: f64) -> Result<f64> {
    let s = ComplexValue::new(2.0 * a, 0.0);
    Ok((2.0 * archimedean_factor(s)? * riemann_zeta(s)?).re)
}

// ∫_U^∞ (θ(it) - 1) t^{a-1} dt, bounded through the first term and the ratio bound
fn theta_mellin_upper_tail(a: f64, upper: f64) -> Result<f64> {
    let ratio = 1.0 / (1.0 - (-3.0 * PI * upper).exp());
    let g = upper_incomplete_gamma(ComplexValue::new(a, 0.0), PI * upper)?;
    Ok(2.0 * ratio * PI.powf(-a) * g.re.abs())
}

// θ(it) - 1 <= (1 + ε) t^{-1/2} for t <= 1
fn small_t_excess() -> Result<f64> {
    Ok(1.0 + theta_minus_one_direct(1.0)?.0)
}

fn check_half_plane(s: ComplexValue, what: &str) -> Result<()> {
    if !(s.re > 1.0) {
        return Err(Error::Divergence(format!("{what} needs Re s > 1, got {s}")));
    }
    Ok(())
}

/// `2 π^{-s/2} Γ(s/2) ζ(s)`.
pub fn completed_zeta_closed_form(s: ComplexValue) -> Result<ComplexValue> {
    check_half_plane(s, "completed zeta")?;
    Ok(2.0 * archimedean_factor(s)? * riemann_zeta(s)?)
}

/// `∫_0^∞ (θ(it) - 1) t^{s/2} dt/t` by quadrature.
///
/// Near zero the integrand is at most `(1+ε) t^{(Re s - 3)/2}`; the lower
/// cutoff is lowered until that piece is below a tenth of the target.
pub fn completed_zeta_via_theta(s: ComplexValue, spec: &QuadratureSpec) -> Result<EvaluationResult> {
    spec.validate()?;
    check_half_plane(s, "completed zeta")?;
    let half = s / 2.0;
    let b = half.re - 0.5;
    let excess = small_t_excess()?;
    let lower_bound = |c: f64| excess * c.powf(b) / b;
    let lower = shrink_cutoff(spec.lower_cutoff.min(1.0), 0.1 * spec.target_abs_error, lower_bound);
    let tails = TailBounds {
        lower: lower_bound(lower),
        upper: theta_mellin_upper_tail(half.re, spec.upper_cutoff)?,
    };
    let spec = spec.with_cutoffs(lower, spec.upper_cutoff);
    let f = |t: f64| {
        let theta = theta_minus_one(t).unwrap_or(f64::NAN);
        theta * ((half - 1.0) * t.ln()).exp()
    };
    integrate_semiaxis_with_tails(f, &spec, tails)
}

/// Which variable the iterated theta integral is written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThetaNormalization {
    /// `∫_{r1>r2>0} (θ(ir1)-1) r1^{s1/2} (θ(ir2)-1) r2^{s2/2} dr1/r1 dr2/r2`.
    RVariable,
    /// The same with `F(t) = θ(it²) - 1` and `t^{s}`, `dt/t`; equals a quarter of
    /// the `r` form.
    TVariable,
}

/// The iterated theta integral in the requested normalization, by nested
/// quadrature over the simplex.
pub fn iterated_theta_integral(
    s1: ComplexValue,
    s2: ComplexValue,
    normalization: ThetaNormalization,
    spec: &QuadratureSpec,
) -> Result<EvaluationResult> {
    spec.validate()?;
    check_half_plane(s1, "iterated theta integral (s1)")?;
    check_half_plane(s2, "iterated theta integral (s2)")?;
    let (a, b) = (s1 / 2.0, s2 / 2.0);
    let full1 = theta_mellin_real(a.re)?;
    let full2 = theta_mellin_real(b.re)?;
    let excess = small_t_excess()?;
    // bounds written in r; in t the pieces are the same up to the factor 1/4
    // and the map r = t²
    let (scale, to_r): (f64, fn(f64) -> f64) = match normalization {
        ThetaNormalization::RVariable => (1.0, |r| r),
        ThetaNormalization::TVariable => (0.25, |t| t * t),
    };
    let beta = b.re - 0.5;
    let lower_bound = |c: f64| scale * excess * full1 * to_r(c).powf(beta) / beta;
    let budget = 0.05 * spec.target_abs_error;
    let lower = shrink_cutoff(spec.lower_cutoff.min(1.0), budget, lower_bound);
    let upper_bound = scale * full2 * theta_mellin_upper_tail(a.re, to_r(spec.upper_cutoff))?;
    let inner_spec = spec.with_cutoffs(lower, spec.upper_cutoff);
    let theta = |r: f64| theta_minus_one(r).unwrap_or(f64::NAN);
    let r = match normalization {
        ThetaNormalization::RVariable => integrate_simplex2(
            |r1, r2| theta(r1) * theta(r2) * ((a - 1.0) * r1.ln() + (b - 1.0) * r2.ln()).exp(),
            &inner_spec,
        )?,
        ThetaNormalization::TVariable => integrate_simplex2(
            |t1, t2| theta(t1 * t1) * theta(t2 * t2) * ((s1 - 1.0) * t1.ln() + (s2 - 1.0) * t2.ln()).exp(),
            &inner_spec,
        )?,
    };
    EvaluationResult::new(
        r.value,
        r.abs_error_estimate + lower_bound(lower) + upper_bound,
        r.method,
        r.terms_or_nodes_used,
    )
}

const ORACLE_SPLIT: f64 = 0.05;

/// `2 Σ_{m>=1} (π m²)^{-a} Γ(a, π m² r) = ∫_r^∞ (θ(it) - 1) t^{a-1} dt`.
fn theta_inner_series(a: ComplexValue, r: f64) -> Result<ComplexValue> {
    let mut sum = ComplexValue::new(0.0, 0.0);
    let mut m = 1u64;
    loop {
        let x = PI * (m * m) as f64;
        let term = 2.0 * (-a * x.ln()).exp() * upper_incomplete_gamma(a, x * r)?;
        sum += term;
        if x * r > 40.0 && term.norm() <= 1e-17 * sum.norm() {
            return Ok(sum);
        }
        m += 1;
    }
}

/// `I_θ(s1, s2)` two ways: nested quadrature in `r`, and a one-dimensional
/// quadrature whose inner integral is summed in closed form through
/// incomplete gamma functions.
///
/// The oracle splits at `r2 = 0.05`. Below it `θ(ir) - 1` is replaced by
/// `r^{-1/2} - 1` (exact up to `e^{-π/r}`) and the piece is integrated
/// analytically.
pub fn completed_iterated_theta(s1: ComplexValue, s2: ComplexValue, spec: &QuadratureSpec) -> Result<DualPath> {
    let primary = iterated_theta_integral(s1, s2, ThetaNormalization::RVariable, spec)?;
    let oracle = iterated_theta_oracle(s1, s2, spec)?;
    Ok(DualPath { primary, oracle })
}

fn iterated_theta_oracle(s1: ComplexValue, s2: ComplexValue, spec: &QuadratureSpec) -> Result<EvaluationResult> {
    spec.validate()?;
    let (a, b) = (s1 / 2.0, s2 / 2.0);
    let lambda1 = completed_zeta_closed_form(s1)?;
    let rc = ORACLE_SPLIT;
    let pw = |e: ComplexValue| (e * rc.ln()).exp();
    let half = 0.5;
    let small = lambda1 * (pw(b - half) / (b - half) - pw(b) / b)
        - (pw(a + b - 1.0) / (a + b - 1.0) - pw(a + b - half) / (a + b - half)) / (a - half)
        + (pw(a + b - half) / (a + b - half) - pw(a + b) / (a + b)) / a;
    // |θ(ir) - (r^{-1/2} - 1)| <= r^{-1/2} (θ(i/r) - 1), used in both variables
    let dual_excess = theta_minus_one_direct(1.0 / rc)?.0 / rc.sqrt();
    let small_error = dual_excess * (lambda1.norm() + 2.0 * rc.powf(a.re - 0.5)) * rc.powf(b.re) / b.re.max(1e-3)
        + 16.0 * f64::EPSILON * small.norm();

    let full2 = theta_mellin_real(b.re)?;
    let upper = theta_mellin_upper_tail(a.re, spec.upper_cutoff)? * full2;
    let outer_spec = spec.with_cutoffs(rc, spec.upper_cutoff);
    let f = |r2: f64| {
        let inner = theta_inner_series(a, r2).unwrap_or(ComplexValue::new(f64::NAN, 0.0));
        let theta = theta_minus_one_direct(r2).map(|v| v.0).unwrap_or(f64::NAN);
        theta * ((b - 1.0) * r2.ln()).exp() * inner
    };
    let tails = TailBounds { lower: 0.0, upper };
    let large = integrate_semiaxis_with_tails(f, &outer_spec, tails)?;
    EvaluationResult::new(
        large.value + small,
        large.abs_error_estimate + small_error,
        Method::Quadrature,
        large.terms_or_nodes_used,
    )
}
