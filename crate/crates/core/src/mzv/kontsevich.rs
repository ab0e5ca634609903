//! Iterated integrals `∫_{0<x_1<...<x_n<1} ω_{a_1}(x_1) ... ω_{a_n}(x_n)` with
//! `ω0 = dx/x` and `ω1 = dx/(1-x)`.
//!
//! The partial integrals `F_k(x) = ∫_0^x F_{k-1}(y) ω_{a_k}(y)` are carried on
//! one Gauss–Legendre panel mesh, graded dyadically towards both endpoints,
//! and advanced one letter at a time with a spectral cumulative-integration
//! matrix. A weight-`n` word therefore costs `n` sweeps over the mesh.

use std::fmt;
use std::str::FromStr;

use super::IntegerComposition;
use crate::error::{Error, Result};
use crate::numerics::{gauss_legendre, ComplexValue, EvaluationResult, Method, QuadratureSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    /// `dx / x`
    Omega0,
    /// `dx / (1 - x)`
    Omega1,
}

/// Word over `{ω0, ω1}`, read from the innermost variable `x_1` outwards.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IteratedWord {
    letters: Vec<Letter>,
}

impl IteratedWord {
    /// A convergent word starts with `ω1` and ends with `ω0`.
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if letters.first() != Some(&Letter::Omega1) || letters.last() != Some(&Letter::Omega0) {
            let word = IteratedWord { letters };
            return Err(Error::DivergentWord(format!(
                "{word} must start with ω1 and end with ω0"
            )));
        }
        Ok(IteratedWord { letters })
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn weight(&self) -> usize {
        self.letters.len()
    }
}

impl fmt::Display for IteratedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            match l {
                Letter::Omega0 => write!(f, "ω0")?,
                Letter::Omega1 => write!(f, "ω1")?,
            }
        }
        Ok(())
    }
}

impl FromStr for IteratedWord {
    type Err = Error;

    /// Accepts `"110"`, `"w1w1w0"` or `"ω1ω1ω0"`.
    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .chars()
            .filter(|c| !matches!(c, 'ω' | 'w' | ' ' | ','))
            .map(|c| match c {
                '0' => Ok(Letter::Omega0),
                '1' => Ok(Letter::Omega1),
                other => Err(Error::InvalidArgument(format!(
                    "unexpected letter {other:?} in word {s:?}"
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        IteratedWord::new(letters)
    }
}

/// `(k_1, ..., k_d)` ↦ `ω1 ω0^{k_1-1} ω1 ω0^{k_2-1} ... ω1 ω0^{k_d-1}`.
pub fn composition_to_word(k: &IntegerComposition) -> IteratedWord {
    let mut letters = Vec::with_capacity(k.weight() as usize);
    for &part in k.parts() {
        letters.push(Letter::Omega1);
        letters.extend(std::iter::repeat_n(Letter::Omega0, part as usize - 1));
    }
    IteratedWord::new(letters).expect("admissible compositions give convergent words")
}

// Dyadic grading depth at each end; the mesh stops at 1 - 2^-(DEPTH+1).
const GRADING_DEPTH: i32 = 48;
const ORDERS: [usize; 4] = [14, 20, 28, 40];

struct Panel {
    x: Vec<f64>,
    // 1 - x, computed without cancellation
    u: Vec<f64>,
    half: f64,
}

struct SpectralRule {
    weights: Vec<f64>,
    // cumulative[i][j] = ∫_{-1}^{z_i} ℓ_j
    cumulative: Vec<Vec<f64>>,
    nodes: Vec<f64>,
}

impl SpectralRule {
    fn new(order: usize) -> Self {
        let (nodes, weights) = gauss_legendre(order);
        let cumulative = nodes
            .iter()
            .map(|&zi| {
                let scale = 0.5 * (zi + 1.0);
                (0..order)
                    .map(|j| {
                        nodes
                            .iter()
                            .zip(&weights)
                            .map(|(&zm, &wm)| wm * lagrange(&nodes, j, -1.0 + scale * (zm + 1.0)))
                            .sum::<f64>()
                            * scale
                    })
                    .collect()
            })
            .collect();
        SpectralRule {
            weights,
            cumulative,
            nodes,
        }
    }

    fn mesh(&self) -> Vec<Panel> {
        let mut panels = Vec::new();
        let near_zero = |lo: f64, hi: f64| {
            let half = 0.5 * (hi - lo);
            let x: Vec<f64> = self.nodes.iter().map(|z| lo + half * (1.0 + z)).collect();
            let u = x.iter().map(|x| 1.0 - x).collect();
            Panel { x, u, half }
        };
        panels.push(near_zero(0.0, 0.5f64.powi(GRADING_DEPTH + 1)));
        for j in (1..=GRADING_DEPTH).rev() {
            panels.push(near_zero(0.5f64.powi(j + 1), 0.5f64.powi(j)));
        }
        for j in 1..=GRADING_DEPTH {
            // u runs from u_hi down to u_lo as x increases
            let u_hi = 0.5f64.powi(j);
            let u_lo = 0.5f64.powi(j + 1);
            let half = 0.5 * (u_hi - u_lo);
            let u: Vec<f64> = self.nodes.iter().map(|z| u_hi - half * (1.0 + z)).collect();
            let x = u.iter().map(|u| 1.0 - u).collect();
            panels.push(Panel { x, u, half });
        }
        panels
    }
}

fn lagrange(nodes: &[f64], j: usize, y: f64) -> f64 {
    nodes
        .iter()
        .enumerate()
        .filter(|&(m, _)| m != j)
        .map(|(_, &xm)| (y - xm) / (nodes[j] - xm))
        .product()
}

// Returns (value at the mesh end, F_{n-1} at the mesh end).
fn sweep(word: &IteratedWord, rule: &SpectralRule) -> (f64, f64) {
    let panels = rule.mesh();
    let mut values: Vec<Vec<f64>> = panels.iter().map(|p| vec![1.0; p.x.len()]).collect();
    let mut end = 1.0;
    let mut previous_end = 1.0;
    for &letter in word.letters() {
        previous_end = end;
        let mut start = 0.0;
        for (panel, vals) in panels.iter().zip(values.iter_mut()) {
            let g: Vec<f64> = vals
                .iter()
                .zip(panel.x.iter().zip(&panel.u))
                .map(|(v, (x, u))| match letter {
                    Letter::Omega0 => v / x,
                    Letter::Omega1 => v / u,
                })
                .collect();
            for (slot, row) in vals.iter_mut().zip(&rule.cumulative) {
                *slot = start + panel.half * row.iter().zip(&g).map(|(q, g)| q * g).sum::<f64>();
            }
            start += panel.half * rule.weights.iter().zip(&g).map(|(w, g)| w * g).sum::<f64>();
        }
        end = start;
    }
    (end, previous_end)
}

/// Iterated integral of a convergent word over the open simplex.
///
/// Runs the sweep at increasing panel orders until two successive orders
/// agree to `spec.target_abs_error`; the error estimate is that difference
/// plus an estimate of the piece `(1 - δ, 1)` left off the mesh.
pub fn kontsevich_eval(word: &IteratedWord, spec: &QuadratureSpec) -> Result<EvaluationResult> {
    if word.letters().first() != Some(&Letter::Omega1) || word.letters().last() != Some(&Letter::Omega0) {
        return Err(Error::DivergentWord(word.to_string()));
    }
    let delta = 0.5f64.powi(GRADING_DEPTH + 1);
    let mut previous: Option<f64> = None;
    let mut last_diff = f64::INFINITY;
    let mut nodes = 0;
    for &order in ORDERS.iter() {
        let rule = SpectralRule::new(order);
        let (value, before_last) = sweep(word, &rule);
        nodes += word.weight() * order * (2 * GRADING_DEPTH as usize + 1);
        if let Some(prev) = previous {
            last_diff = (value - prev).abs();
            if last_diff <= spec.target_abs_error {
                // ∫_{1-δ}^1 F_{n-1}(y) dy / y, with F_{n-1} growing only logarithmically
                let end_piece = 2.0 * delta * before_last.abs() * (1.0 + (1.0 / delta).ln());
                return EvaluationResult::new(
                    ComplexValue::new(value, 0.0),
                    last_diff + end_piece,
                    Method::Quadrature,
                    nodes,
                );
            }
        }
        previous = Some(value);
    }
    Err(Error::NonConvergence {
        achieved: last_diff,
        target: spec.target_abs_error,
    })
}
