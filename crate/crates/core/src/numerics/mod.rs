//! Special functions, quadrature engines and the result types shared by every
//! analytic evaluator in the crate.

mod bounds;
mod gamma;
mod quadrature;
mod zeta;

pub use bounds::{nested_tail_bound, TermBound};
pub use gamma::{gamma, ln_gamma, lower_incomplete_gamma_series, upper_incomplete_gamma};
pub(crate) use quadrature::integrate_semiaxis_with_point_errors;
pub use quadrature::{
    gauss_legendre, integrate_semiaxis, integrate_semiaxis_with_tails, integrate_simplex2, tanh_sinh,
    QuadratureOutcome, TailBounds,
};
pub use zeta::{bernoulli_even, hurwitz_tail_expansion, riemann_zeta};

use serde::Serialize;

use crate::error::{Error, Result};

/// Complex argument or value. Both components are kept finite: operations
/// signal an error instead of handing back NaN or infinity.
pub type ComplexValue = num_complex::Complex64;

/// Build a real-valued [`ComplexValue`].
pub fn real(x: f64) -> ComplexValue {
    ComplexValue::new(x, 0.0)
}

pub(crate) fn ensure_finite(z: ComplexValue, what: &'static str) -> Result<ComplexValue> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::NonFinite(what))
    }
}

/// How an [`EvaluationResult`] was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Series,
    Quadrature,
    ClosedForm,
    MonteCarlo,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Series => "series",
            Method::Quadrature => "quadrature",
            Method::ClosedForm => "closed_form",
            Method::MonteCarlo => "monte_carlo",
        }
    }
}

/// Value returned by every analytic evaluator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvaluationResult {
    pub value: ComplexValue,
    /// Heuristic absolute error: inter-level differences plus tail bounds.
    pub abs_error_estimate: f64,
    pub method: Method,
    pub terms_or_nodes_used: usize,
}

impl EvaluationResult {
    pub fn new(
        value: ComplexValue,
        abs_error_estimate: f64,
        method: Method,
        terms_or_nodes_used: usize,
    ) -> Result<Self> {
        ensure_finite(value, "evaluator")?;
        if !(abs_error_estimate >= 0.0) {
            return Err(Error::NonFinite("error estimate"));
        }
        Ok(EvaluationResult {
            value,
            abs_error_estimate,
            method,
            terms_or_nodes_used,
        })
    }

    pub fn exact(value: ComplexValue) -> Self {
        EvaluationResult {
            value,
            abs_error_estimate: 0.0,
            method: Method::ClosedForm,
            terms_or_nodes_used: 0,
        }
    }
}

/// Controls for the semi-axis and simplex quadratures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub lower_cutoff: f64,
    pub upper_cutoff: f64,
    /// Maximum number of step halvings.
    pub levels: u32,
    pub target_abs_error: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            lower_cutoff: 1e-6,
            upper_cutoff: 60.0,
            levels: 12,
            target_abs_error: 1e-10,
        }
    }
}

impl QuadratureSpec {
    pub fn new(lower_cutoff: f64, upper_cutoff: f64, levels: u32, target_abs_error: f64) -> Result<Self> {
        let spec = QuadratureSpec {
            lower_cutoff,
            upper_cutoff,
            levels,
            target_abs_error,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_target(mut self, target_abs_error: f64) -> Self {
        self.target_abs_error = target_abs_error;
        self
    }

    pub fn with_cutoffs(mut self, lower_cutoff: f64, upper_cutoff: f64) -> Self {
        self.lower_cutoff = lower_cutoff;
        self.upper_cutoff = upper_cutoff;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lower_cutoff > 0.0 && self.lower_cutoff < self.upper_cutoff && self.upper_cutoff.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "quadrature cutoffs must satisfy 0 < lower < upper < inf, got [{}, {}]",
                self.lower_cutoff, self.upper_cutoff
            )));
        }
        if !(self.target_abs_error > 0.0) {
            return Err(Error::InvalidArgument("target_abs_error must be positive".into()));
        }
        if self.levels == 0 {
            return Err(Error::InvalidArgument("levels must be positive".into()));
        }
        Ok(())
    }
}

/// Controls for truncated Dirichlet-type series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationSpec {
    /// Largest index summed explicitly.
    pub max_outer_index: usize,
    pub target_abs_error: f64,
}

impl Default for TruncationSpec {
    fn default() -> Self {
        TruncationSpec {
            max_outer_index: 2000,
            target_abs_error: 1e-10,
        }
    }
}

impl TruncationSpec {
    pub fn new(max_outer_index: usize, target_abs_error: f64) -> Result<Self> {
        let spec = TruncationSpec {
            max_outer_index,
            target_abs_error,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_outer_index < 2 {
            return Err(Error::InvalidArgument("max_outer_index must be at least 2".into()));
        }
        if !(self.target_abs_error > 0.0) {
            return Err(Error::InvalidArgument("target_abs_error must be positive".into()));
        }
        Ok(())
    }
}

/// Two independent evaluations of the same quantity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualPath {
    pub primary: EvaluationResult,
    pub oracle: EvaluationResult,
}

impl DualPath {
    /// `|primary - oracle|`.
    pub fn discrepancy(&self) -> f64 {
        (self.primary.value - self.oracle.value).norm()
    }

    pub fn combined_error(&self) -> f64 {
        self.primary.abs_error_estimate + self.oracle.abs_error_estimate
    }
}

/// Shrink `cutoff` by factors of 100 until `bound(cutoff) <= budget`.
pub(crate) fn shrink_cutoff(mut cutoff: f64, budget: f64, bound: impl Fn(f64) -> f64) -> f64 {
    while bound(cutoff) > budget && cutoff > 1e-250 {
        cutoff *= 1e-2;
    }
    cutoff
}
