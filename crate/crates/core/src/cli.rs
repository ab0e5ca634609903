//! Command-line front end. Every subcommand prints one JSON document on
//! stdout; failures print `{"error": {"kind", "detail"}}` on stderr.
//!
//! Exit status: 0 on success, 1 when a checked identity fails, 2 for bad
//! parameters or arguments outside an operation's domain, 3 when the
//! numerics could not reach the requested accuracy.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::local_factors::{
    archimedean_factor, iterated_archimedean, iterated_local_factor, LocalFactorClosedForm, Prime,
};
use crate::modular::{
    completed_double_l_dual, completed_double_l_normalized, completed_l_dual, completed_l_normalized, double_l_series,
    l_series, named_form, CuspNormalization, FourierCoefficients,
};
use crate::mzv::{kontsevich_eval, mzf_eval, mzf_truncated, Composition, IteratedWord};
use crate::numerics::{ComplexValue, DualPath, EvaluationResult, QuadratureSpec, TruncationSpec};
use crate::ordering::{stuffle_expand, verify_stuffle_numeric};
use crate::theta_adelic::{
    completed_iterated_theta, completed_zeta_via_theta, finite_adelic_mzf, iterated_theta_integral, ThetaNormalization,
};
use crate::verify::{complex_json, run_suite, IdentityCheck, VerifyConfig};

#[derive(Debug, Parser)]
#[command(name = "adelic", version, about = "Multiple zeta and multiple L-function evaluator")]
struct Cli {
    #[command(flatten)]
    precision: Precision,

    /// Render the same data as a human-readable table.
    #[arg(long, global = true)]
    pretty: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Precision {
    /// Absolute error target for series and quadratures.
    #[arg(long, global = true, env = "ADELIC_TARGET_ERROR")]
    target_error: Option<f64>,

    /// Truncation index N for series (and number of cusp form coefficients).
    #[arg(long, global = true, env = "ADELIC_MAX_TERMS")]
    max_terms: Option<usize>,

    /// Maximum number of quadrature refinement levels.
    #[arg(long, global = true, env = "ADELIC_QUAD_LEVELS")]
    quad_levels: Option<u32>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Multiple zeta function ζ(s_1, ..., s_d) over 0 < n_1 < ... < n_d.
    Mzv {
        /// Comma-separated exponents, e.g. "1,2" or "2+1i,3".
        #[arg(long)]
        exponents: String,
        #[arg(long, value_enum, default_value_t = MzvPath::Nested)]
        path: MzvPath,
    },
    /// Iterated integral of a word in ω0 = dx/x, ω1 = dx/(1-x).
    Kontsevich {
        /// Letters from the innermost variable out, e.g. "110" or "w1w1w0".
        #[arg(long, conflicts_with = "composition")]
        word: Option<String>,
        /// Integer composition turned into its word, e.g. "1,2".
        #[arg(long)]
        composition: Option<String>,
    },
    /// Iterated Euler factor Σ_{0<=k_1<...<k_d} Π p^{-k_i s_i}.
    Local {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        exponents: String,
    },
    /// Archimedean factor π^{-s/2}Γ(s/2), or its iterated form with --s2.
    Archimedean {
        #[arg(long)]
        s1: String,
        #[arg(long)]
        s2: Option<String>,
    },
    /// Mellin transforms of θ(it) - 1: one exponent for the completed zeta,
    /// two for the iterated integral.
    Theta {
        #[arg(long)]
        exponents: String,
        #[arg(long, value_enum, default_value_t = ThetaVariable::R)]
        normalization: ThetaVariable,
        /// Also run the independent oracle and report the discrepancy.
        #[arg(long)]
        dual: bool,
    },
    /// L-functions of level-one cusp forms.
    Modular {
        /// Built-in form: delta, delta_e4 or delta_e6.
        #[arg(long, default_value = "delta")]
        form: String,
        /// Read coefficients a_1..a_N from a JSON array of decimal strings.
        #[arg(long)]
        coeffs_in: Option<PathBuf>,
        /// Weight of the form read with --coeffs-in.
        #[arg(long, default_value_t = 12)]
        weight: u32,
        /// Write the coefficients used to this file.
        #[arg(long)]
        coeffs_out: Option<PathBuf>,
        /// One exponent for L(F, s), two for L(F, F, s1, s2).
        #[arg(long)]
        exponents: String,
        #[arg(long, value_enum, default_value_t = ModularKind::Completed)]
        kind: ModularKind,
        /// Integrate 2 Σ a_n e^{-2πnt} instead of F(it) (completed kind only).
        #[arg(long)]
        doubled: bool,
        /// Also run the independent oracle and report the discrepancy.
        #[arg(long)]
        dual: bool,
    },
    /// Quasi-shuffle product of two multiple zeta values, checked numerically.
    Stuffle {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long, default_value_t = 1e-8)]
        tolerance: f64,
    },
    /// Run a suite of cross-path identity checks.
    Verify {
        /// zeta, local, adelic, theta, modular, stuffle-basic, orderings or all.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Fault injection: perturb τ(2) before the modular checks.
        #[arg(long, hide = true)]
        corrupt_tau2: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MzvPath {
    /// Nested sum with Euler–Maclaurin suffix tails.
    Nested,
    /// Plain truncation with a provable tail bound.
    Truncated,
    /// Integral over chains of finite ideles.
    Adelic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ThetaVariable {
    R,
    T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModularKind {
    /// Dirichlet series.
    Series,
    /// Integral along the imaginary axis.
    Completed,
}

/// What a run produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn failure(code: i32, kind: &str, detail: String) -> Self {
        let doc = json!({ "error": { "kind": kind, "detail": detail } });
        Outcome {
            code,
            stdout: String::new(),
            stderr: format!("{doc}\n"),
        }
    }

    fn from_error(e: &Error) -> Self {
        Outcome::failure(if e.is_numeric() { 3 } else { 2 }, e.kind(), e.to_string())
    }
}

/// Parse `args` (including the program name) and run the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: e.to_string(),
                    stderr: String::new(),
                },
                _ => Outcome::failure(2, "usage", e.to_string().trim_end().to_string()),
            };
        }
    };
    let started = Instant::now();
    match execute(&cli) {
        Ok(report) => {
            let elapsed_ms = (started.elapsed().as_secs_f64() * 1e6).round() / 1e3;
            let code = if report.ok { 0 } else { 1 };
            let stdout = match report.body {
                Body::Single {
                    result,
                    params,
                    details,
                } => {
                    let doc = json!({
                        "value": complex_json(result.value),
                        "abs_error_estimate": result.abs_error_estimate,
                        "method": result.method.as_str(),
                        "params": params,
                        "details": details,
                        "elapsed_ms": elapsed_ms,
                    });
                    if cli.pretty {
                        pretty_single(&doc)
                    } else {
                        format!("{doc}\n")
                    }
                }
                Body::Rows(rows) => {
                    if cli.pretty {
                        pretty_rows(&rows, elapsed_ms)
                    } else {
                        let doc = Value::Array(rows.iter().map(IdentityCheck::to_json).collect());
                        format!("{doc}\n")
                    }
                }
            };
            Outcome {
                code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => Outcome::from_error(&e),
    }
}

enum Body {
    Single {
        result: EvaluationResult,
        params: Value,
        details: Value,
    },
    Rows(Vec<IdentityCheck>),
}

struct Report {
    body: Body,
    ok: bool,
}

impl Report {
    fn single(result: EvaluationResult, params: Value, details: Value) -> Self {
        Report {
            body: Body::Single {
                result,
                params,
                details,
            },
            ok: true,
        }
    }
}

struct Settings {
    trunc: TruncationSpec,
    quad: QuadratureSpec,
    config: VerifyConfig,
}

fn settings(p: &Precision) -> Result<Settings> {
    let defaults = VerifyConfig::default();
    let quad_defaults = QuadratureSpec::default();
    let target = p.target_error.unwrap_or(defaults.target_abs_error);
    let max_terms = p.max_terms.unwrap_or(defaults.max_terms);
    let levels = p.quad_levels.unwrap_or(defaults.quad_levels);
    Ok(Settings {
        trunc: TruncationSpec::new(max_terms, target)?,
        quad: QuadratureSpec::new(quad_defaults.lower_cutoff, quad_defaults.upper_cutoff, levels, target)?,
        config: VerifyConfig {
            target_abs_error: target,
            max_terms,
            quad_levels: levels,
            corrupt_tau2: false,
        },
    })
}

fn precision_json(s: &Settings) -> Value {
    json!({
        "target_error": s.trunc.target_abs_error,
        "max_terms": s.trunc.max_outer_index,
        "quad_levels": s.quad.levels,
    })
}

fn parse_list(text: &str) -> Result<Vec<ComplexValue>> {
    let c: Composition = text.parse()?;
    if c.depth() == 0 {
        return Err(Error::InvalidArgument("at least one exponent is required".into()));
    }
    Ok(c.exponents().to_vec())
}

fn dual_details(d: &DualPath) -> Value {
    json!({
        "oracle": complex_json(d.oracle.value),
        "oracle_abs_error_estimate": d.oracle.abs_error_estimate,
        "discrepancy": d.discrepancy(),
    })
}

fn load_form(form: &str, coeffs_in: Option<&PathBuf>, weight: u32, n: usize) -> Result<FourierCoefficients> {
    match coeffs_in {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
            let label = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            FourierCoefficients::from_json(weight, &text, label)
        }
        None => named_form(form, n),
    }
}

fn execute(cli: &Cli) -> Result<Report> {
    let st = settings(&cli.precision)?;
    let precision = precision_json(&st);
    match &cli.command {
        Command::Mzv { exponents, path } => {
            let comp: Composition = exponents.parse()?;
            let r = match path {
                MzvPath::Nested => mzf_eval(&comp, &st.trunc)?,
                MzvPath::Truncated => mzf_truncated(&comp, &st.trunc)?,
                MzvPath::Adelic => finite_adelic_mzf(&comp, &st.trunc)?,
            };
            let path = format!("{path:?}").to_lowercase();
            let params = json!({ "exponents": comp.to_string(), "path": path, "precision": precision });
            Ok(Report::single(r, params, Value::Null))
        }
        Command::Kontsevich { word, composition } => {
            let word: IteratedWord = match (word, composition) {
                (Some(w), _) => w.parse()?,
                (None, Some(c)) => {
                    let parts = c
                        .split(',')
                        .map(|p| {
                            p.trim()
                                .parse::<u32>()
                                .map_err(|_| Error::InvalidArgument(format!("not a positive integer: {p:?}")))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    crate::mzv::composition_to_word(&crate::mzv::IntegerComposition::new(parts)?)
                }
                (None, None) => return Err(Error::InvalidArgument("give --word or --composition".into())),
            };
            let r = kontsevich_eval(&word, &st.quad)?;
            let params = json!({ "word": word.to_string(), "precision": precision });
            Ok(Report::single(r, params, Value::Null))
        }
        Command::Local { p, exponents } => {
            let prime = Prime::new(*p)?;
            let comp = Composition::new(parse_list(exponents)?);
            let value = iterated_local_factor(prime, &comp)?;
            let params = json!({ "p": p, "exponents": comp.to_string() });
            let details = json!({ "closed_form": LocalFactorClosedForm::new(comp.depth()).to_string() });
            Ok(Report::single(
                EvaluationResult::new(value, 0.0, crate::Method::ClosedForm, 0)?,
                params,
                details,
            ))
        }
        Command::Archimedean { s1, s2 } => {
            let a = crate::parse_complex(s1)?;
            let (r, params) = match s2 {
                None => (
                    EvaluationResult::new(archimedean_factor(a)?, 0.0, crate::Method::ClosedForm, 0)?,
                    json!({ "s1": complex_json(a), "precision": precision }),
                ),
                Some(s2) => {
                    let b = crate::parse_complex(s2)?;
                    (
                        iterated_archimedean(a, b, &st.quad)?,
                        json!({ "s1": complex_json(a), "s2": complex_json(b), "precision": precision }),
                    )
                }
            };
            Ok(Report::single(r, params, Value::Null))
        }
        Command::Theta {
            exponents,
            normalization,
            dual,
        } => {
            let s = parse_list(exponents)?;
            let norm = match normalization {
                ThetaVariable::R => ThetaNormalization::RVariable,
                ThetaVariable::T => ThetaNormalization::TVariable,
            };
            let params = json!({
                "exponents": Composition::new(s.clone()).to_string(),
                "normalization": format!("{normalization:?}").to_lowercase(),
                "precision": precision,
            });
            match s.as_slice() {
                [s] => {
                    let r = completed_zeta_via_theta(*s, &st.quad)?;
                    let details = if *dual {
                        let closed = crate::theta_adelic::completed_zeta_closed_form(*s)?;
                        dual_details(&DualPath {
                            primary: r,
                            oracle: EvaluationResult::exact(closed),
                        })
                    } else {
                        Value::Null
                    };
                    Ok(Report::single(r, params, details))
                }
                [s1, s2] => {
                    if *dual && norm == ThetaNormalization::RVariable {
                        let d = completed_iterated_theta(*s1, *s2, &st.quad)?;
                        Ok(Report::single(d.primary, params, dual_details(&d)))
                    } else if *dual {
                        Err(Error::InvalidArgument("the oracle is written in the r variable".into()))
                    } else {
                        let r = iterated_theta_integral(*s1, *s2, norm, &st.quad)?;
                        Ok(Report::single(r, params, Value::Null))
                    }
                }
                _ => Err(Error::InvalidArgument("theta takes one or two exponents".into())),
            }
        }
        Command::Modular {
            form,
            coeffs_in,
            weight,
            coeffs_out,
            exponents,
            kind,
            doubled,
            dual,
        } => {
            if *doubled && (*dual || *kind == ModularKind::Series) {
                return Err(Error::InvalidArgument(
                    "--doubled applies to completed values without --dual".into(),
                ));
            }
            let norm = if *doubled {
                CuspNormalization::Doubled
            } else {
                CuspNormalization::Standard
            };
            let f = load_form(form, coeffs_in.as_ref(), *weight, st.trunc.max_outer_index)?;
            if let Some(path) = coeffs_out {
                fs::write(path, f.to_json())
                    .map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", path.display())))?;
            }
            let s = parse_list(exponents)?;
            let params = json!({
                "form": f.label(),
                "weight": f.weight(),
                "coefficients": f.len(),
                "exponents": Composition::new(s.clone()).to_string(),
                "kind": format!("{kind:?}").to_lowercase(),
                "normalization": format!("{norm:?}").to_lowercase(),
                "precision": precision,
            });
            let (r, details) = match (kind, s.as_slice()) {
                (ModularKind::Series, [s]) => (l_series(&f, *s, &st.trunc)?, Value::Null),
                (ModularKind::Series, [s1, s2]) => (double_l_series(&f, &f, *s1, *s2, &st.trunc)?, Value::Null),
                (ModularKind::Completed, [s]) if *dual => {
                    let d = completed_l_dual(&f, *s, &st.quad, &st.trunc)?;
                    (d.primary, dual_details(&d))
                }
                (ModularKind::Completed, [s]) => (completed_l_normalized(&f, *s, &st.quad, norm)?, Value::Null),
                (ModularKind::Completed, [s1, s2]) if *dual => {
                    let d = completed_double_l_dual(&f, &f, *s1, *s2, &st.quad)?;
                    (d.primary, dual_details(&d))
                }
                (ModularKind::Completed, [s1, s2]) => (
                    completed_double_l_normalized(&f, &f, *s1, *s2, &st.quad, norm)?,
                    Value::Null,
                ),
                _ => return Err(Error::InvalidArgument("modular takes one or two exponents".into())),
            };
            Ok(Report::single(r, params, details))
        }
        Command::Stuffle { left, right, tolerance } => {
            let a: Composition = left.parse()?;
            let b: Composition = right.parse()?;
            a.check_convergent()?;
            b.check_convergent()?;
            let eval = |w: &[ComplexValue]| mzf_eval(&Composition::new(w.to_vec()), &st.trunc);
            let terms = stuffle_expand(&a, &b);
            let check = verify_stuffle_numeric(
                format!("zeta{a} zeta{b}"),
                a.exponents(),
                b.exponents(),
                |x, y| x + y,
                eval,
                *tolerance,
            )?;
            let params = json!({
                "left": a.to_string(),
                "right": b.to_string(),
                "tolerance": tolerance,
                "precision": precision,
            });
            let details = json!({
                "terms": terms
                    .iter()
                    .map(|t| json!({ "ordering": t.ordering.to_string(), "composition": t.composition.to_string() }))
                    .collect::<Vec<_>>(),
                "product": complex_json(check.lhs),
                "residual": check.residual,
                "allowed": check.tolerance,
                "pass": check.pass,
            });
            let budget = (check.tolerance - tolerance).max(0.0);
            let result = EvaluationResult::new(check.rhs, budget, crate::Method::Series, terms.len())?;
            let mut report = Report::single(result, params, details);
            report.ok = check.pass;
            Ok(report)
        }
        Command::Verify { suite, corrupt_tau2 } => {
            let config = VerifyConfig {
                corrupt_tau2: *corrupt_tau2,
                ..st.config
            };
            let rows = run_suite(suite, &config)?;
            let ok = rows.iter().all(|r| r.pass);
            Ok(Report {
                body: Body::Rows(rows),
                ok,
            })
        }
    }
}

fn pretty_single(doc: &Value) -> String {
    let mut out = String::new();
    let v = &doc["value"];
    let _ = writeln!(out, "value               {} + {}i", v["re"], v["im"]);
    let _ = writeln!(out, "abs_error_estimate  {}", doc["abs_error_estimate"]);
    let _ = writeln!(out, "method              {}", doc["method"].as_str().unwrap_or(""));
    if let Value::Object(params) = &doc["params"] {
        for (k, v) in params {
            let _ = writeln!(out, "{:<20}{}", k, v);
        }
    }
    if let Value::Object(details) = &doc["details"] {
        for (k, v) in details {
            let _ = writeln!(out, "{:<20}{}", k, v);
        }
    }
    let _ = writeln!(out, "elapsed_ms          {}", doc["elapsed_ms"]);
    out
}

fn pretty_rows(rows: &[IdentityCheck], elapsed_ms: f64) -> String {
    let mut out = String::new();
    let width = rows.iter().map(|r| r.identity.chars().count()).max().unwrap_or(8);
    for r in rows {
        let _ = writeln!(
            out,
            "{}  {:<width$}  residual {:>10.3e}  tol {:>9.2e}",
            if r.pass { "PASS" } else { "FAIL" },
            r.identity,
            r.residual,
            r.tolerance,
        );
    }
    let failed = rows.iter().filter(|r| !r.pass).count();
    let _ = writeln!(out, "{} rows, {} failed, {:.0} ms", rows.len(), failed, elapsed_ms);
    out
}
