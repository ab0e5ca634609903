//! Level-one cusp forms through their exact Fourier coefficients, and the
//! single and double L-functions built from them.

mod lfunc;
mod series;

pub use lfunc::{
    completed_double_l, completed_double_l_dual, completed_double_l_normalized, completed_l, completed_l_closed_form,
    completed_l_dual, completed_l_normalized, double_l_series, l_series, nested_dirichlet_series, CuspNormalization,
    DirichletCoefficients,
};
pub use series::PowerSeriesZ;

use std::ops::Add;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// `a_1, ..., a_N` of a cusp form of the given weight (`a_0 = 0`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourierCoefficients {
    weight: u32,
    coeffs: Vec<BigInt>,
    label: String,
}

impl FourierCoefficients {
    pub fn new(weight: u32, coeffs: Vec<BigInt>, label: impl Into<String>) -> Result<Self> {
        if weight < 12 || !weight.is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!(
                "cusp forms of level one need even weight >= 12, got {weight}"
            )));
        }
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument("at least one coefficient is required".into()));
        }
        Ok(FourierCoefficients {
            weight,
            coeffs,
            label: label.into(),
        })
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Number of stored coefficients `N`.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `a_n` for `1 <= n <= N`.
    pub fn get(&self, n: usize) -> Option<&BigInt> {
        n.checked_sub(1).and_then(|i| self.coeffs.get(i))
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficients converted one by one to `f64`.
    pub fn to_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(|a| a.to_f64().unwrap_or(f64::NAN)).collect()
    }

    /// `1.5 · max_n |a_n| / n^{k/2}`, so that `|a_n| <= C n^{k/2}` with margin.
    pub fn growth_constant(&self) -> f64 {
        let half = self.weight as f64 / 2.0;
        let max = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, a)| a.abs().to_f64().unwrap_or(f64::INFINITY) / ((i + 1) as f64).powf(half))
            .fold(0.0, f64::max);
        1.5 * max
    }

    pub fn scaled(&self, factor: &BigInt) -> Self {
        FourierCoefficients {
            weight: self.weight,
            coeffs: self.coeffs.iter().map(|a| a * factor).collect(),
            label: format!("{factor}*{}", self.label),
        }
    }

    pub fn truncated(&self, n: usize) -> Self {
        FourierCoefficients {
            weight: self.weight,
            coeffs: self.coeffs[..n.min(self.coeffs.len()).max(1)].to_vec(),
            label: self.label.clone(),
        }
    }

    /// Replace `a_n`; meant for fault-injection tests.
    pub fn with_coefficient(mut self, n: usize, value: BigInt) -> Result<Self> {
        match n.checked_sub(1).and_then(|i| self.coeffs.get_mut(i)) {
            Some(slot) => {
                *slot = value;
                Ok(self)
            }
            None => Err(Error::InvalidArgument(format!("no coefficient a_{n} to replace"))),
        }
    }

    /// Decimal strings, which keep the integers exact.
    pub fn to_json(&self) -> String {
        let strings: Vec<String> = self.coeffs.iter().map(|a| a.to_string()).collect();
        serde_json::to_string(&strings).expect("strings serialize")
    }

    pub fn from_json(weight: u32, json: &str, label: impl Into<String>) -> Result<Self> {
        let strings: Vec<String> = serde_json::from_str(json)
            .map_err(|e| Error::InvalidArgument(format!("coefficient file is not a JSON array of strings: {e}")))?;
        let coeffs = strings
            .iter()
            .map(|s| {
                s.trim()
                    .parse::<BigInt>()
                    .map_err(|_| Error::InvalidArgument(format!("not an integer: {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        FourierCoefficients::new(weight, coeffs, label)
    }
}

impl Add for &FourierCoefficients {
    type Output = Result<FourierCoefficients>;

    /// Sum of two forms of the same weight, on their common range.
    fn add(self, other: &FourierCoefficients) -> Result<FourierCoefficients> {
        if self.weight != other.weight {
            return Err(Error::InvalidArgument(format!(
                "cannot add forms of weights {} and {}",
                self.weight, other.weight
            )));
        }
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        FourierCoefficients::new(self.weight, coeffs, format!("{}+{}", self.label, other.label))
    }
}

/// How the eta product is expanded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeltaStrategy {
    /// `q (η³)^8` with Jacobi's sparse series for `η³`.
    JacobiCube,
    /// `q Π(1 - q^n)^{24}` by dense repeated squaring, multiplying in chunks
    /// of the given size, in reverse chunk order when `reversed`.
    DenseChunks { chunk: usize, reversed: bool },
}

/// `τ(1), ..., τ(N)` from `Δ = q Π_{n>=1} (1 - q^n)^{24}`.
pub fn delta_coefficients(n: usize) -> Result<FourierCoefficients> {
    delta_coefficients_with(n, DeltaStrategy::JacobiCube)
}

pub fn delta_coefficients_with(n: usize, strategy: DeltaStrategy) -> Result<FourierCoefficients> {
    if n == 0 {
        return Err(Error::InvalidArgument("need at least one coefficient".into()));
    }
    // Δ/q to order n-1
    let order = n - 1;
    let product = match strategy {
        DeltaStrategy::JacobiCube => {
            let cube = PowerSeriesZ::jacobi_eta_cube(order);
            let mut acc = cube.clone();
            for _ in 1..8 {
                acc = acc.mul(&cube);
            }
            acc
        }
        DeltaStrategy::DenseChunks { chunk, reversed } => {
            let eta = PowerSeriesZ::euler_product(order);
            let e2 = eta.mul_chunked(&eta, chunk, reversed);
            let e4 = e2.mul_chunked(&e2, chunk, reversed);
            let e8 = e4.mul_chunked(&e4, chunk, reversed);
            let e16 = e8.mul_chunked(&e8, chunk, reversed);
            e16.mul_chunked(&e8, chunk, reversed)
        }
    };
    FourierCoefficients::new(12, product.coeffs().to_vec(), "Delta")
}

/// `E_4 = 1 + 240 Σ σ_3(n) q^n` or `E_6 = 1 - 504 Σ σ_5(n) q^n` to order `N`.
pub fn eisenstein_coefficients(k: u32, n: usize) -> Result<PowerSeriesZ> {
    let (power, factor) = match k {
        4 => (3u32, BigInt::from(240)),
        6 => (5u32, BigInt::from(-504)),
        _ => {
            return Err(Error::InvalidArgument(format!(
                "Eisenstein series available for k in {{4, 6}}, got {k}"
            )))
        }
    };
    let mut sigma = vec![BigInt::zero(); n + 1];
    for d in 1..=n {
        let dk = BigInt::from(d).pow(power);
        let mut m = d;
        while m <= n {
            sigma[m] += &dk;
            m += d;
        }
    }
    let mut coeffs: Vec<BigInt> = sigma.into_iter().map(|s| s * &factor).collect();
    coeffs[0] = BigInt::one();
    Ok(PowerSeriesZ::new(coeffs))
}

/// `Δ E_4` (weight 16) and `Δ E_6` (weight 18): the cusp forms of those
/// weights, both one-dimensional spaces.
pub fn delta_times_eisenstein(k: u32, n: usize) -> Result<FourierCoefficients> {
    let delta = delta_coefficients(n)?;
    let e = eisenstein_coefficients(k, n)?;
    let shifted = PowerSeriesZ::new(delta.coeffs().to_vec());
    let product = shifted.mul(&e.truncate(n - 1));
    FourierCoefficients::new(12 + k, product.coeffs().to_vec(), format!("Delta*E{k}"))
}

/// The bundled test family: `"delta"`, `"delta_e4"`, `"delta_e6"`.
pub fn named_form(name: &str, n: usize) -> Result<FourierCoefficients> {
    match name {
        "delta" => delta_coefficients(n),
        "delta_e4" => delta_times_eisenstein(4, n),
        "delta_e6" => delta_times_eisenstein(6, n),
        _ => Err(Error::InvalidArgument(format!(
            "unknown form {name:?}; expected delta, delta_e4 or delta_e6"
        ))),
    }
}
