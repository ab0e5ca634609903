//! Cross-path identity checks, grouped into suites.
//!
//! Every row compares two independently computed numbers. A row's tolerance
//! is the larger of its nominal tolerance and `SAFETY × target`, so
//! loosening the precision target loosens the checks with it.

use std::f64::consts::PI;

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::local_factors::{archimedean_factor, haar_consistency, iterated_archimedean, iterated_local_factor, Prime};
use crate::modular::{
    completed_double_l, completed_double_l_dual, completed_l, completed_l_dual, delta_coefficients,
    delta_coefficients_with, delta_times_eisenstein, nested_dirichlet_series, DeltaStrategy, DirichletCoefficients,
    FourierCoefficients,
};
use crate::mzv::{composition_to_word, kontsevich_eval, mzf_eval, Composition, IntegerComposition};
use crate::numerics::{real, riemann_zeta, ComplexValue, DualPath, QuadratureSpec, TruncationSpec};
use crate::ordering::{
    all_orderings, enumerate_compatible, order_of, strict_compatible, verify_shuffle_archimedean,
    verify_stuffle_numeric, Ordering,
};
use crate::theta_adelic::{
    completed_iterated_theta, completed_zeta_closed_form, completed_zeta_via_theta, finite_adelic_mzf,
    iterated_theta_integral, ThetaNormalization,
};

const SAFETY: f64 = 100.0;

// Truncated Dirichlet series of cusp forms carry a tail bound near C/N, far
// above the default target; their own target is never tighter than this.
const MODULAR_SERIES_TARGET: f64 = 1e-3;

/// One compared pair of values.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityCheck {
    pub identity: String,
    pub lhs: ComplexValue,
    pub rhs: ComplexValue,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl IdentityCheck {
    pub fn new(identity: impl Into<String>, lhs: ComplexValue, rhs: ComplexValue, tolerance: f64) -> Self {
        let residual = (lhs - rhs).norm();
        IdentityCheck {
            identity: identity.into(),
            lhs,
            rhs,
            residual,
            tolerance,
            pass: residual <= tolerance,
        }
    }

    fn exact(identity: impl Into<String>, lhs: f64, rhs: f64) -> Self {
        IdentityCheck::new(identity, real(lhs), real(rhs), 0.0)
    }

    fn dual(identity: impl Into<String>, d: &DualPath, tolerance: f64) -> Self {
        IdentityCheck::new(identity, d.primary.value, d.oracle.value, tolerance)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "identity": self.identity,
            "lhs": complex_json(self.lhs),
            "rhs": complex_json(self.rhs),
            "residual": self.residual,
            "tolerance": self.tolerance,
            "pass": self.pass,
        })
    }
}

pub fn complex_json(z: ComplexValue) -> Value {
    json!({ "re": z.re, "im": z.im })
}

/// Precision knobs shared by all suites.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    pub target_abs_error: f64,
    pub max_terms: usize,
    pub quad_levels: u32,
    /// Replace τ(2) by τ(2) + 1 before the modular suite runs.
    pub corrupt_tau2: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            target_abs_error: 1e-10,
            max_terms: 2000,
            quad_levels: 12,
            corrupt_tau2: false,
        }
    }
}

impl VerifyConfig {
    fn tol(&self, nominal: f64) -> f64 {
        nominal.max(SAFETY * self.target_abs_error)
    }

    fn trunc(&self) -> Result<TruncationSpec> {
        TruncationSpec::new(self.max_terms, self.target_abs_error)
    }

    fn modular_trunc(&self) -> Result<TruncationSpec> {
        TruncationSpec::new(self.max_terms, self.target_abs_error.max(MODULAR_SERIES_TARGET))
    }

    fn quad(&self) -> Result<QuadratureSpec> {
        let d = QuadratureSpec::default();
        QuadratureSpec::new(d.lower_cutoff, d.upper_cutoff, self.quad_levels, self.target_abs_error)
    }
}

/// Names accepted by [`run_suite`], in the order `all` runs them.
pub const SUITES: [&str; 7] = [
    "zeta",
    "local",
    "adelic",
    "theta",
    "modular",
    "stuffle-basic",
    "orderings",
];

pub fn run_suite(name: &str, config: &VerifyConfig) -> Result<Vec<IdentityCheck>> {
    match name {
        "zeta" => zeta_suite(config),
        "local" => local_suite(config),
        "adelic" => adelic_suite(config),
        "theta" => theta_suite(config),
        "modular" => modular_suite(config),
        "stuffle-basic" => stuffle_basic_suite(config),
        "orderings" => orderings_suite(config),
        "all" => verify_all(config),
        _ => Err(Error::InvalidArgument(format!(
            "unknown suite {name:?}; expected one of {}, all",
            SUITES.join(", ")
        ))),
    }
}

/// Every suite, rows in a fixed order.
pub fn verify_all(config: &VerifyConfig) -> Result<Vec<IdentityCheck>> {
    let mut rows = Vec::new();
    for name in SUITES {
        rows.extend(run_suite(name, config)?);
    }
    Ok(rows)
}

fn comp(parts: &[f64]) -> Composition {
    Composition::from_reals(parts)
}

fn zeta_suite(cfg: &VerifyConfig) -> Result<Vec<IdentityCheck>> {
    let trunc = cfg.trunc()?;
    let quad = cfg.quad()?;
    let z2 = mzf_eval(&comp(&[2.0]), &trunc)?.value;
    let z3 = mzf_eval(&comp(&[3.0]), &trunc)?.value;
    let z12 = mzf_eval(&comp(&[1.0, 2.0]), &trunc)?.value;
    let mut rows = vec![
        IdentityCheck::new("zeta(2) = pi^2/6", z2, real(PI * PI / 6.0), cfg.tol(1e-8)),
        IdentityCheck::new(
            "zeta(3) series = Euler-Maclaurin",
            z3,
            riemann_zeta(real(3.0))?,
            cfg.tol(1e-8),
        ),
        IdentityCheck::new("zeta(1,2) = zeta(3)", z12, z3, cfg.tol(1e-7)),
    ];
    let s = ComplexValue::new(2.5, 1.0);
    rows.push(IdentityCheck::new(
        "zeta(2.5+1i) series = Euler-Maclaurin",
        mzf_eval(&Composition::new(vec![s]), &trunc)?.value,
        riemann_zeta(s)?,
        cfg.tol(1e-8),
    ));
    for (parts, target, label) in [
        (vec![2u32], z2, "int(w1 w0) = zeta(2)"),
        (vec![1, 2], z3, "int(w1 w1 w0) = zeta(3)"),
    ] {
        let word = composition_to_word(&IntegerComposition::new(parts)?);
        let k = kontsevich_eval(&word, &quad.with_target(cfg.target_abs_error.max(1e-9)))?;
        rows.push(IdentityCheck::new(label, k.value, target, cfg.tol(1e-5)));
    }
    Ok(rows)
}

fn brute_local(p: f64, s1: f64, s2: f64, kmax: i32) -> f64 {
    let mut sum = 0.0;
    for k2 in 0..=kmax {
        for k1 in 0..k2 {
            sum += p.powf(-(k1 as f64) * s1 - (k2 as f64) * s2);
        }
    }
    sum
}

fn local_suite(cfg: &VerifyConfig) -> Result<Vec<IdentityCheck>> {
    let mut rows = Vec::new();
    let two = Prime::new(2)?;
    rows.push(IdentityCheck::new(
        "I_2(2,2) = 16/45",
        iterated_local_factor(two, &comp(&[2.0, 2.0]))?,
        real(16.0 / 45.0),
        cfg.tol(1e-12),
    ));
    for p in [2u64, 3, 5] {
        for (s1, s2) in [(1.5, 2.5), (3.0, 1.25)] {
            rows.push(IdentityCheck::new(
                format!("I_{p}({s1},{s2}) closed form = sum over k1<k2<=60"),
                iterated_local_factor(Prime::new(p)?, &comp(&[s1, s2]))?,
                real(brute_local(p as f64, s1, s2, 60)),
                cfg.tol(1e-10),
            ));
        }
        rows.push(IdentityCheck::new(
            format!("orbit measures of Z_{p} sum to 1 (k<=60)"),
            real(haar_consistency(Prime::new(p)?, 60)),
            real(0.0),
            cfg.tol(1e-12),
        ));
    }
    let quad = cfg.quad()?;
    for (s1, s2) in [(2.0, 3.0), (1.5, 4.0)] {
        let (s1, s2) = (real(s1), real(s2));
        rows.push(verify_shuffle_archimedean(
            format!(
                "gamma_R({}) gamma_R({}) = I_inf({0},{1}) + I_inf({1},{0})",
                s1.re, s2.re
            ),
            s1,
            s2,
            |s| Ok(crate::numerics::EvaluationResult::exact(archimedean_factor(s)?)),
            |a, b| iterated_archimedean(a, b, &quad),
            cfg.tol(1e-8),
        )?);
    }
    Ok(rows)
}

fn adelic_suite(cfg: &VerifyConfig) -> Result<Vec<IdentityCheck>> {
    let trunc = cfg.trunc()?;
    let cases = [
        comp(&[2.0]),
        comp(&[1.0, 2.0]),
        comp(&[2.0, 2.0]),
        comp(&[1.5, 2.5]),
        comp(&[1.0, 1.0, 3.0]),
        Composition::new(vec![ComplexValue::new(2.0, 1.0), real(3.0)]),
    ];
    let mut rows = Vec::new();
    for c in &cases {
        let a = finite_adelic_mzf(c, &trunc)?;
        let b = mzf_eval(c, &trunc)?;
        let allowance = a.abs_error_estimate + b.abs_error_estimate;
        rows.push(IdentityCheck::new(
            format!("finite adelic integral {c} = zeta{c}"),
            a.value,
            b.value,
            cfg.tol(1e-9) + allowance,
        ));
    }
    Ok(rows)
}

fn theta_suite(cfg: &VerifyConfig) -> Result<Vec<IdentityCheck>> {
    let quad = cfg.quad()?;
    let mut rows = Vec::new();
    for s in [real(3.0), real(4.0), ComplexValue::new(2.5, 1.0)] {
        rows.push(IdentityCheck::new(
            format!("Mellin of theta-1 at {s} = 2 pi^(-s/2) Gamma(s/2) zeta(s)"),
            completed_zeta_via_theta(s, &quad)?.value,
            completed_zeta_closed_form(s)?,
            cfg.tol(1e-8),
        ));
    }
    for s1 in [3.0, 4.0, 6.0] {
        for s2 in [3.0, 4.0, 6.0] {
            let d = completed_iterated_theta(real(s1), real(s2), &quad)?;
            rows.push(IdentityCheck::dual(
                format!("I_theta({s1},{s2}) simplex = incomplete-gamma oracle"),
                &d,
                cfg.tol(1e-5),
            ));
        }
    }
    let r = iterated_theta_integral(real(4.0), real(6.0), ThetaNormalization::RVariable, &quad)?;
    let t = iterated_theta_integral(real(4.0), real(6.0), ThetaNormalization::TVariable, &quad)?;
    rows.push(IdentityCheck::new(
        "t-variable I_theta(4,6) = r-variable / 4",
        t.value,
        r.value / 4.0,
        cfg.tol(1e-5),
    ));
    for (s1, s2) in [(4.0, 6.0), (4.0, 4.0)] {
        rows.push(verify_shuffle_archimedean(
            format!("Lambda({s1}) Lambda({s2}) = I_theta({s1},{s2}) + I_theta({s2},{s1})"),
            real(s1),
            real(s2),
            |s| completed_zeta_via_theta(s, &quad),
            |a, b| iterated_theta_integral(a, b, ThetaNormalization::RVariable, &quad),
            cfg.tol(1e-5),
        )?);
    }
    Ok(rows)
}

fn mismatches(a: &FourierCoefficients, b: &FourierCoefficients) -> f64 {
    a.coeffs().iter().zip(b.coeffs()).filter(|(x, y)| x != y).count() as f64
}

fn hecke_row(delta: &FourierCoefficients, m: usize, n: usize) -> IdentityCheck {
    let t = |k: usize| delta.get(k).cloned().unwrap_or_default();
    let product: BigInt = t(m) * t(n);
    let diff = t(m * n) - product;
    IdentityCheck::exact(
        format!("tau({}) = tau({m}) tau({n})", m * n),
        if diff == BigInt::default() { 0.0 } else { 1.0 },
        0.0,
    )
}

fn modular_suite(cfg: &VerifyConfig) -> Result<Vec<IdentityCheck>> {
    let n = cfg.max_terms.max(1000);
    let mut delta = delta_coefficients(n)?;
    if cfg.corrupt_tau2 {
        let bumped = delta.get(2).cloned().unwrap_or_default() + 1;
        delta = delta.with_coefficient(2, bumped)?;
    }
    let dense = delta_coefficients_with(
        200,
        DeltaStrategy::DenseChunks {
            chunk: 16,
            reversed: true,
        },
    )?;
    let mut rows = vec![
        IdentityCheck::exact(
            "tau(1..200) eta cube = dense eta product",
            mismatches(&delta.truncated(200), &dense),
            0.0,
        ),
        hecke_row(&delta, 2, 3),
        hecke_row(&delta, 2, 5),
        hecke_row(&delta, 3, 7),
        hecke_row(&delta, 4, 9),
    ];
    let t2 = delta.get(2).cloned().unwrap_or_default();
    let t4 = delta.get(4).cloned().unwrap_or_default();
    let hecke_prime_square = &t2 * &t2 - BigInt::from(2048) - t4;
    rows.push(IdentityCheck::exact(
        "tau(4) = tau(2)^2 - 2^11",
        if hecke_prime_square == BigInt::default() {
            0.0
        } else {
            1.0
        },
        0.0,
    ));

    let quad = cfg.quad()?;
    let trunc = cfg.modular_trunc()?;
    for s in [8.0, 9.0] {
        let d = completed_l_dual(&delta, real(s), &quad, &trunc)?;
        rows.push(IdentityCheck::dual(
            format!("Lambda(Delta,{s}) Mellin = (2pi)^-s Gamma(s) L(Delta,s)"),
            &d,
            cfg.tol(1e-7),
        ));
    }
    let e4 = delta_times_eisenstein(4, n)?;
    let d = completed_l_dual(&e4, real(10.0), &quad, &trunc)?;
    rows.push(IdentityCheck::dual(
        "Lambda(Delta E4,10) Mellin = (2pi)^-s Gamma(s) L(Delta E4,s)",
        &d,
        cfg.tol(1e-7),
    ));
    let d = completed_double_l_dual(&delta, &delta, real(7.0), real(9.0), &quad)?;
    rows.push(IdentityCheck::dual(
        "Lambda(Delta,Delta,7,9) simplex = incomplete-gamma oracle",
        &d,
        cfg.tol(1e-5),
    ));
    rows.push(verify_shuffle_archimedean(
        "Lambda(Delta,7) Lambda(Delta,9) = Lambda(Delta,Delta,7,9) + Lambda(Delta,Delta,9,7)",
        real(7.0),
        real(9.0),
        |s| completed_l(&delta, s, &quad),
        |a, b| completed_double_l(&delta, &delta, a, b, &quad),
        cfg.tol(1e-5),
    )?);

    let coeffs = DirichletCoefficients::from_form(&delta)?;
    let word1 = [(coeffs.clone(), real(9.0))];
    let word2 = [(coeffs, real(10.0))];
    rows.push(verify_stuffle_numeric(
        "L(Delta,9) L(Delta,10) = L(Delta,Delta,9,10) + L(Delta,Delta,10,9) + sum tau(n)^2 n^-19",
        &word1,
        &word2,
        |(a, s), (b, t)| (a.pointwise(b), s + t),
        |word| {
            let letters: Vec<_> = word.iter().map(|(c, s)| (c, *s)).collect();
            nested_dirichlet_series(&letters, &trunc)
        },
        cfg.tol(1e-6),
    )?);
    Ok(rows)
}

fn stuffle_basic_suite(cfg: &VerifyConfig) -> Result<Vec<IdentityCheck>> {
    let trunc = cfg.trunc()?;
    let eval = |w: &[ComplexValue]| mzf_eval(&Composition::new(w.to_vec()), &trunc);
    let cases: [(Vec<ComplexValue>, Vec<ComplexValue>); 5] = [
        (vec![real(2.0)], vec![real(3.0)]),
        (vec![real(2.0)], vec![real(2.0)]),
        (vec![real(1.5), real(2.0)], vec![real(3.0)]),
        (vec![real(1.0), real(3.0)], vec![real(1.0), real(2.5)]),
        (vec![ComplexValue::new(2.0, 1.0)], vec![ComplexValue::new(3.0, -0.5)]),
    ];
    let mut rows = Vec::new();
    for (a, b) in &cases {
        let label = format!(
            "zeta{} zeta{} = sum of quasi-shuffle terms",
            Composition::new(a.clone()),
            Composition::new(b.clone())
        );
        rows.push(verify_stuffle_numeric(label, a, b, |x, y| x + y, eval, cfg.tol(1e-8))?);
    }
    let z2 = eval(&[real(2.0)])?.value;
    let z4 = eval(&[real(4.0)])?.value;
    let z22 = eval(&[real(2.0), real(2.0)])?.value;
    rows.push(IdentityCheck::new(
        "2 zeta(2,2) = zeta(2)^2 - zeta(4)",
        2.0 * z22,
        z2 * z2 - z4,
        cfg.tol(1e-8),
    ));
    Ok(rows)
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn orderings_suite(_cfg: &VerifyConfig) -> Result<Vec<IdentityCheck>> {
    let mut rows = Vec::new();
    let shown = order_of(&[2.0, 3.0, 2.0, 4.0, 1.0])?.to_string();
    rows.push(IdentityCheck::exact(
        "order of n5 < n3 = n1 < n2 < n4 prints (5(13)24)",
        if shown == "(5(13)24)" { 0.0 } else { 1.0 },
        0.0,
    ));
    for total in 2..=7usize {
        let everything = all_orderings(&(1..=total).collect::<Vec<_>>());
        for a in 1..total {
            let b = total - a;
            let sigma1 = Ordering::chain(1, a);
            let sigma2 = Ordering::chain(a + 1, total);
            let left = sigma1.indices();
            let right = sigma2.indices();
            let filtered = everything
                .iter()
                .filter(|o| o.restrict(&left) == sigma1 && o.restrict(&right) == sigma2)
                .count();
            let compatible = enumerate_compatible(&sigma1, &sigma2)?;
            let sound = compatible
                .iter()
                .all(|o| o.restrict(&left) == sigma1 && o.restrict(&right) == sigma2);
            rows.push(IdentityCheck::exact(
                format!("chains ({a},{b}): compatible orderings = restriction filter"),
                if sound { compatible.len() as f64 } else { -1.0 },
                filtered as f64,
            ));
            rows.push(IdentityCheck::exact(
                format!("chains ({a},{b}): strict orderings = binomial({total},{a})"),
                strict_compatible(&sigma1, &sigma2)?.len() as f64,
                binomial(total, a) as f64,
            ));
        }
    }
    Ok(rows)
}
