//! Multiple zeta functions, iterated local factors, completed iterated zeta
//! values through theta functions, double L-functions of level-one cusp forms
//! and the ordering algebra behind their product formulas.
//!
//! Every identity is evaluated along two independent numerical routes; see
//! [`verify`] for the collected checks.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod error;
pub mod local_factors;
pub mod modular;
pub mod mzv;
pub mod numerics;
pub mod ordering;
pub mod theta_adelic;
pub mod verify;

pub mod cli;

pub use error::{Error, Result};
pub use numerics::{ComplexValue, EvaluationResult, Method, QuadratureSpec, TruncationSpec};

/// Parse `"a"`, `"a+bi"`, `"a-bi"` or `"bi"` (decimal notation).
pub fn parse_complex(text: &str) -> Result<ComplexValue> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::InvalidArgument(format!("cannot parse complex number {text:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    let number = |t: &str| -> Result<f64> {
        match t {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => t.parse::<f64>().map_err(|_| bad()),
        }
    };
    let value = if let Some(body) = s.strip_suffix('i') {
        // split at the last sign that is not a leading sign or an exponent sign
        let bytes = body.as_bytes();
        let split = (1..bytes.len())
            .rev()
            .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
        match split {
            Some(k) => ComplexValue::new(
                number(&body[..k]).and_then(|re| if body[..k].is_empty() { Err(bad()) } else { Ok(re) })?,
                number(&body[k..])?,
            ),
            None => ComplexValue::new(0.0, number(body)?),
        }
    } else {
        ComplexValue::new(s.parse::<f64>().map_err(|_| bad())?, 0.0)
    };
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(bad());
    }
    Ok(value)
}
