//! Upper bounds for the tails of truncated nested sums
//! `Σ_{n_1 < ... < n_d} Π term_i(n_i)` where `|term_i(n)| <= C_i n^{-α_i}`.
//!
//! The inner partial sums are majorised by `K m^β (1 + ln m)^γ` one level at
//! a time, so the bound stays finite exactly when every suffix of the decay
//! exponents satisfies `α_j + ... + α_d > d - j + 1`.

use crate::error::{Error, Result};

/// `|term(n)| <= constant * n^(-decay)` for all `n >= 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TermBound {
    pub constant: f64,
    pub decay: f64,
}

const EXPONENT_TIE: f64 = 1e-12;

/// Bound on the part of the nested sum with outermost index `n_d > cap`.
pub fn nested_tail_bound(terms: &[TermBound], cap: usize) -> Result<f64> {
    let Some((last, inner)) = terms.split_last() else {
        return Ok(0.0);
    };
    let mut scale = 1.0;
    let mut beta = 0.0;
    let mut logs = 0u32;
    for t in inner {
        let e = beta - t.decay;
        if e > -1.0 + EXPONENT_TIE {
            scale *= t.constant / (e + 1.0).min(1.0);
            beta = e + 1.0;
        } else if e >= -1.0 - EXPONENT_TIE {
            scale *= t.constant;
            beta = 0.0;
            logs += 1;
        } else {
            let c = -(e + 1.0);
            scale *= t.constant * (log_power_peak(e, logs) + log_power_integral(c, logs, 1.0));
            beta = 0.0;
            logs = 0;
        }
    }
    let e = beta - last.decay;
    if e >= -1.0 - EXPONENT_TIE {
        return Err(Error::Divergence(format!(
            "outer exponent {e:.3} >= -1: nested sum does not converge"
        )));
    }
    let c = -(e + 1.0);
    let n = cap as f64;
    let log_n = 1.0 + n.ln();
    let mut tail = n.powf(e + 1.0) * log_power_integral(c, logs, log_n);
    // x^e (1 + ln x)^γ is decreasing once 1 + ln x >= γ / |e|
    if log_n < logs as f64 / -e {
        tail += log_power_peak(e, logs);
    }
    Ok(last.constant * scale * tail)
}

// ∫_0^∞ e^{-cu} (L + u)^γ du
fn log_power_integral(c: f64, gamma: u32, l: f64) -> f64 {
    let mut total = 0.0;
    let mut falling = 1.0; // γ!/(γ-i)!
    for i in 0..=gamma {
        total += falling * l.powi((gamma - i) as i32) / c.powi(i as i32 + 1);
        falling *= (gamma - i) as f64;
    }
    total
}

// max over x >= 1 of x^e (1 + ln x)^γ, e < 0
fn log_power_peak(e: f64, gamma: u32) -> f64 {
    let stationary = gamma as f64 / -e;
    if stationary > 1.0 {
        (-(gamma as f64) - e).exp() * stationary.powi(gamma as i32)
    } else {
        1.0
    }
}
