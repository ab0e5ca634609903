//! Multiple zeta functions `ζ(s_1, ..., s_d) = Σ_{0<n_1<...<n_d} Π n_i^{-s_i}`
//! as nested Dirichlet series and as iterated integrals over the simplex.

mod kontsevich;
pub(crate) mod tails;

use std::fmt;
use std::str::FromStr;

pub use kontsevich::{composition_to_word, kontsevich_eval, IteratedWord, Letter};

use crate::error::{Error, Result};
use crate::numerics::{nested_tail_bound, ComplexValue, EvaluationResult, Method, TermBound, TruncationSpec};
use tails::SuffixTails;

/// Exponent tuple `(s_1, ..., s_d)` of a multiple zeta function; `s_1`
/// belongs to the smallest summation index.
#[derive(Debug, Clone, PartialEq)]
pub struct Composition {
    exponents: Vec<ComplexValue>,
}

impl Composition {
    pub fn new(exponents: Vec<ComplexValue>) -> Self {
        Composition { exponents }
    }

    pub fn from_reals(exponents: &[f64]) -> Self {
        Composition {
            exponents: exponents.iter().map(|&x| ComplexValue::new(x, 0.0)).collect(),
        }
    }

    pub fn empty() -> Self {
        Composition { exponents: Vec::new() }
    }

    pub fn exponents(&self) -> &[ComplexValue] {
        &self.exponents
    }

    pub fn depth(&self) -> usize {
        self.exponents.len()
    }

    pub fn weight(&self) -> ComplexValue {
        self.exponents.iter().sum()
    }

    /// `Re(s_j + ... + s_d) > d - j + 1` for every `j`.
    pub fn is_convergent(&self) -> bool {
        self.check_convergent().is_ok()
    }

    pub fn check_convergent(&self) -> Result<()> {
        let d = self.depth();
        let mut suffix = 0.0;
        for (j, s) in self.exponents.iter().enumerate().rev() {
            suffix += s.re;
            let needed = (d - j) as f64;
            if !(suffix > needed) {
                return Err(Error::Divergence(format!(
                    "Re(s_{} + ... + s_{}) = {} must exceed {} for {}",
                    j + 1,
                    d,
                    suffix,
                    needed,
                    self
                )));
            }
        }
        if self.exponents.iter().any(|s| !(s.re.is_finite() && s.im.is_finite())) {
            return Err(Error::InvalidArgument(format!("non-finite exponent in {self}")));
        }
        Ok(())
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, s) in self.exponents.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            if s.im == 0.0 {
                write!(f, "{}", s.re)?;
            } else {
                write!(f, "{s}")?;
            }
        }
        write!(f, ")")
    }
}

/// Positive integer exponents `(k_1, ..., k_d)` with `k_d > 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntegerComposition {
    parts: Vec<u32>,
}

impl IntegerComposition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        match parts.last() {
            None => return Err(Error::InvalidComposition("empty composition".into())),
            Some(&last) if last < 2 => {
                return Err(Error::InvalidComposition(format!(
                    "last part must exceed 1, got {parts:?}"
                )))
            }
            _ => {}
        }
        if parts.contains(&0) {
            return Err(Error::InvalidComposition(format!(
                "parts must be positive, got {parts:?}"
            )));
        }
        Ok(IntegerComposition { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn to_composition(&self) -> Composition {
        Composition::new(self.parts.iter().map(|&k| ComplexValue::new(k as f64, 0.0)).collect())
    }

    /// All admissible compositions of the given weight.
    pub fn all_of_weight(weight: u32) -> Vec<IntegerComposition> {
        fn rec(remaining: u32, current: &mut Vec<u32>, out: &mut Vec<IntegerComposition>) {
            if remaining == 0 {
                if let Ok(c) = IntegerComposition::new(current.clone()) {
                    out.push(c);
                }
                return;
            }
            for k in 1..=remaining {
                current.push(k);
                rec(remaining - k, current, out);
                current.pop();
            }
        }
        let mut out = Vec::new();
        rec(weight, &mut Vec::new(), &mut out);
        out
    }
}

impl FromStr for Composition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
        if trimmed.trim().is_empty() {
            return Ok(Composition::empty());
        }
        trimmed
            .split(',')
            .map(crate::parse_complex)
            .collect::<Result<Vec<_>>>()
            .map(Composition::new)
    }
}

const EXPANSION_TERMS: usize = 24;

/// Multiple zeta function by nested summation.
///
/// The chains with every index at most `N = trunc.max_outer_index` are summed
/// exactly (backwards, from the outermost index down), and the suffix sums
/// beyond `N` come from their Euler–Maclaurin expansions in `1/N`.
pub fn mzf_eval(comp: &Composition, trunc: &TruncationSpec) -> Result<EvaluationResult> {
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
    let tails = SuffixTails::new(comp.exponents(), EXPANSION_TERMS);
    let (at_cap, tail_errors) = tails.evaluate(cap as f64);

    // state[j] holds T_{j+1}(n); T_{d+1} == 1 is implicit
    let s = comp.exponents();
    let mut state = at_cap;
    for n in (1..=cap).rev() {
        let log_n = (n as f64).ln();
        for j in 0..d {
            let next = if j + 1 < d {
                state[j + 1]
            } else {
                ComplexValue::new(1.0, 0.0)
            };
            state[j] += (-s[j] * log_n).exp() * next;
        }
    }
    let value = state[0];

    let prefix = absolute_prefix_sums(s, cap);
    let propagated: f64 = tail_errors.iter().zip(&prefix).map(|(e, p)| e * p).sum();
    let rounding = 8.0 * f64::EPSILON * (cap as f64).sqrt() * value.norm() * d as f64;
    let error = propagated + rounding;
    if error > trunc.target_abs_error {
        return Err(Error::TailTooLarge {
            bound: error,
            target: trunc.target_abs_error,
            cap,
        });
    }
    EvaluationResult::new(value, error, Method::Series, cap * d)
}

// A_{j}(N) = Σ_{n_1<...<n_j<=N} Π n_i^{-Re s_i}, for j = 0..d-1
fn absolute_prefix_sums(s: &[ComplexValue], cap: usize) -> Vec<f64> {
    let d = s.len();
    let mut prefix = vec![0.0; d];
    prefix[0] = 1.0;
    for n in 1..=cap {
        let log_n = (n as f64).ln();
        for j in (1..d).rev() {
            let below = prefix[j - 1];
            prefix[j] += (-s[j - 1].re * log_n).exp() * below;
        }
    }
    prefix
}

/// Plain truncation of the nested sum at `N`, with the provable tail bound
/// of [`nested_tail_bound`] as error estimate.
pub fn mzf_truncated(comp: &Composition, trunc: &TruncationSpec) -> Result<EvaluationResult> {
    trunc.validate()?;
    comp.check_convergent()?;
    let d = comp.depth();
    if d == 0 {
        return EvaluationResult::new(ComplexValue::new(1.0, 0.0), 0.0, Method::Series, 0);
    }
    let cap = trunc.max_outer_index;
    let s = comp.exponents();
    let mut prefix = vec![ComplexValue::new(0.0, 0.0); d + 1];
    prefix[0] = ComplexValue::new(1.0, 0.0);
    for n in 1..=cap {
        let log_n = (n as f64).ln();
        for j in (1..=d).rev() {
            let below = prefix[j - 1];
            prefix[j] += (-s[j - 1] * log_n).exp() * below;
        }
    }
    let bounds: Vec<TermBound> = s
        .iter()
        .map(|x| TermBound {
            constant: 1.0,
            decay: x.re,
        })
        .collect();
    let bound = nested_tail_bound(&bounds, cap)?;
    if bound > trunc.target_abs_error {
        return Err(Error::TailTooLarge {
            bound,
            target: trunc.target_abs_error,
            cap,
        });
    }
    EvaluationResult::new(prefix[d], bound, Method::Series, cap * d)
}
