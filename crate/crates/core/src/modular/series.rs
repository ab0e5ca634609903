//! Truncated power series with exact integer coefficients.
//!
//! Products are attempted in `i128` with checked arithmetic and redone with
//! big integers if anything overflows, so results are always exact.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

/// `Σ_{k=0}^{order} c_k q^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeriesZ {
    coeffs: Vec<BigInt>,
}

impl PowerSeriesZ {
    /// Coefficients `c_0, ..., c_order`; must be nonempty.
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "a power series keeps at least c_0");
        PowerSeriesZ { coeffs }
    }

    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); order + 1];
        coeffs[0] = BigInt::from(1);
        PowerSeriesZ { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        PowerSeriesZ {
            coeffs: self.coeffs[..=order.min(self.order())].to_vec(),
        }
    }

    /// Product to the smaller of the two orders.
    pub fn mul(&self, other: &Self) -> Self {
        self.mul_chunked(other, other.coeffs.len(), false)
    }

    /// Product accumulated over chunks of the denser factor's coefficients of
    /// the given size, visiting the chunks in reverse when `reversed`.
    pub fn mul_chunked(&self, other: &Self, chunk: usize, reversed: bool) -> Self {
        let order = self.order().min(other.order());
        let chunk = chunk.max(1);
        let mut ranges: Vec<(usize, usize)> = (0..=order)
            .step_by(chunk)
            .map(|lo| (lo, (lo + chunk).min(order + 1)))
            .collect();
        if reversed {
            ranges.reverse();
        }
        // the sparser factor drives the outer loop
        let nonzero = |c: &[BigInt]| c.iter().filter(|x| !x.is_zero()).count();
        let (a, b) = if nonzero(&self.coeffs[..=order]) <= nonzero(&other.coeffs[..=order]) {
            (&self.coeffs[..=order], &other.coeffs[..=order])
        } else {
            (&other.coeffs[..=order], &self.coeffs[..=order])
        };
        let coeffs = match (small(a), small(b)) {
            (Some(a), Some(b)) => mul_i128(&a, &b, &ranges),
            _ => None,
        }
        .unwrap_or_else(|| mul_big(a, b, &ranges));
        PowerSeriesZ { coeffs }
    }

    /// `Π_{n=1}^{order} (1 - q^n)` to the given order.
    pub fn euler_product(order: usize) -> Self {
        let mut c = vec![0i128; order + 1];
        c[0] = 1;
        for n in 1..=order {
            for k in (n..=order).rev() {
                c[k] -= c[k - n];
            }
        }
        PowerSeriesZ {
            coeffs: c.into_iter().map(BigInt::from).collect(),
        }
    }

    /// `Π (1 - q^n)^3 = Σ_{k>=0} (-1)^k (2k+1) q^{k(k+1)/2}`.
    pub fn jacobi_eta_cube(order: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); order + 1];
        let mut k = 0usize;
        while k * (k + 1) / 2 <= order {
            let sign = if k.is_multiple_of(2) { 1 } else { -1 };
            coeffs[k * (k + 1) / 2] = BigInt::from(sign * (2 * k as i64 + 1));
            k += 1;
        }
        PowerSeriesZ { coeffs }
    }
}

fn small(c: &[BigInt]) -> Option<Vec<i128>> {
    c.iter().map(|x| x.to_i128()).collect()
}

// Zero coefficients of `a` are skipped, which makes sparse factors cheap.
fn mul_i128(a: &[i128], b: &[i128], ranges: &[(usize, usize)]) -> Option<Vec<BigInt>> {
    let order = a.len() - 1;
    let mut out = vec![0i128; order + 1];
    for &(lo, hi) in ranges {
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            let top = (order - i + 1).min(hi);
            for j in lo..top {
                let p = ai.checked_mul(b[j])?;
                out[i + j] = out[i + j].checked_add(p)?;
            }
        }
    }
    Some(out.into_iter().map(BigInt::from).collect())
}

fn mul_big(a: &[BigInt], b: &[BigInt], ranges: &[(usize, usize)]) -> Vec<BigInt> {
    let order = a.len() - 1;
    let mut out = vec![BigInt::zero(); order + 1];
    for &(lo, hi) in ranges {
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            let top = (order - i + 1).min(hi);
            for j in lo..top {
                out[i + j] += ai * &b[j];
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(v: &[i64]) -> PowerSeriesZ {
        PowerSeriesZ::new(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn small_product() {
        // (1 + q)(1 - q + q^2) = 1 + q^3
        let p = series(&[1, 1, 0, 0]).mul(&series(&[1, -1, 1, 0]));
        assert_eq!(p, series(&[1, 0, 0, 1]));
    }

    #[test]
    fn jacobi_cube_matches_euler_product_cubed() {
        let e = PowerSeriesZ::euler_product(60);
        let cube = e.mul(&e).mul(&e);
        assert_eq!(cube, PowerSeriesZ::jacobi_eta_cube(60));
    }

    #[test]
    fn overflow_falls_back_to_big_integers() {
        let big = BigInt::from(i128::MAX / 2);
        let a = PowerSeriesZ::new(vec![big.clone(), big.clone()]);
        let p = a.mul(&a);
        assert_eq!(p.coeffs()[1], &big * &big * 2);
    }

    #[test]
    fn chunk_order_is_irrelevant() {
        let e = PowerSeriesZ::euler_product(40);
        let a = e.mul_chunked(&e, 3, false);
        let b = e.mul_chunked(&e, 5, true);
        assert_eq!(a, b);
    }
}
