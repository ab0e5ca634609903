//! Independent reference implementations used as test oracles. None of them
//! call into the library's numerics.
#![allow(dead_code)]

use num_complex::Complex64;
use std::f64::consts::PI;

pub type C = Complex64;

pub fn c(re: f64) -> C {
    C::new(re, 0.0)
}

// B_2, B_4, ..., B_16
const BERNOULLI: [f64; 8] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
];

/// Γ(z) for Re z > 0 from Stirling's series after shifting the argument
/// past 30.
pub fn stirling_gamma(z: C) -> C {
    let mut w = z;
    let mut shift = c(1.0);
    while w.re < 30.0 {
        shift *= w;
        w += 1.0;
    }
    let mut lg = (w - 0.5) * w.ln() - w + 0.5 * (2.0 * PI).ln();
    let mut wp = w;
    for (k, b) in BERNOULLI.iter().enumerate() {
        let k = (k + 1) as f64;
        lg += b / (2.0 * k * (2.0 * k - 1.0) * wp);
        wp *= w * w;
    }
    lg.exp() / shift
}

/// ζ(s) by Borwein's alternating-series acceleration, Re s > 0, s != 1.
pub fn borwein_zeta(s: C) -> C {
    let n = 60usize;
    let mut t = 1.0f64;
    let mut d = vec![1.0f64];
    for i in 0..n {
        let fi = i as f64;
        let nn = n as f64;
        t *= 4.0 * (nn + fi) * (nn - fi) / ((2.0 * fi + 1.0) * (2.0 * fi + 2.0));
        d.push(d[i] + t);
    }
    let dn = d[n];
    let mut sum = c(0.0);
    for (k, dk) in d[..n].iter().enumerate() {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * (dk - dn) * (-s * ((k + 1) as f64).ln()).exp();
    }
    let two = (c(1.0) - s) * 2f64.ln();
    -sum / (dn * (c(1.0) - two.exp()))
}

/// ζ(s), real s > 1, by Euler–Maclaurin at cut N = 20.
pub fn em_zeta(s: f64) -> f64 {
    let n = 20.0f64;
    let mut sum: f64 = (1..20).map(|k| (k as f64).powf(-s)).sum();
    sum += n.powf(1.0 - s) / (s - 1.0) + 0.5 * n.powf(-s);
    // B_{2k}/(2k)! · s(s+1)...(s+2k-2) · N^{-s-2k+1}
    let mut rising = s;
    let mut fact = 2.0;
    for (k, b) in BERNOULLI.iter().enumerate() {
        let k2 = 2 * (k + 1);
        sum += b / fact * rising * n.powf(-s - k2 as f64 + 1.0);
        rising *= (s + k2 as f64 - 1.0) * (s + k2 as f64);
        fact *= ((k2 + 1) * (k2 + 2)) as f64;
    }
    sum
}

fn simpson<F: Fn(f64) -> C>(f: F, a: f64, b: f64, intervals: usize) -> C {
    let m = intervals + intervals % 2;
    let h = (b - a) / m as f64;
    let mut acc = f(a) + f(b);
    for i in 1..m {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + i as f64 * h);
    }
    acc * h / 3.0
}

/// Γ(a, x) = ∫_x^∞ t^{a-1} e^{-t} dt by Simpson's rule on [x, x + 80].
pub fn simpson_upper_gamma(a: C, x: f64) -> C {
    simpson(|t| ((a - 1.0) * t.ln() - t).exp(), x, x + 80.0, 80_000)
}

/// γ(a, x) = ∫_0^x t^{a-1} e^{-t} dt, Re a >= 1, by Simpson's rule after
/// t = x u^4, which leaves a smooth integrand.
pub fn simpson_lower_gamma(a: C, x: f64) -> C {
    simpson(
        |u| {
            if u == 0.0 {
                return c(0.0);
            }
            4.0 * (a * x.ln() + (4.0 * a - 1.0) * u.ln() - x * u.powi(4)).exp()
        },
        0.0,
        1.0,
        40_000,
    )
}

/// ∫_{t1>t2>0} f(t1, t2) over [0, upper] in collapsed coordinates
/// t2 = t1 v, by a tensor Simpson rule on `n` and `2n` intervals with one
/// Richardson step.
pub fn grid_simplex<F: Fn(f64, f64) -> f64>(f: F, upper: f64, n: usize) -> f64 {
    let coarse = simpson_simplex(&f, upper, n);
    let fine = simpson_simplex(&f, upper, 2 * n);
    (16.0 * fine - coarse) / 15.0
}

fn simpson_simplex<F: Fn(f64, f64) -> f64>(f: &F, upper: f64, n: usize) -> f64 {
    let m = n + n % 2;
    let weight = |i: usize| {
        if i == 0 || i == m {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        }
    };
    let ht = upper / m as f64;
    let hv = 1.0 / m as f64;
    let mut acc = 0.0;
    for i in 0..=m {
        let t1 = i as f64 * ht;
        if t1 == 0.0 {
            continue;
        }
        let mut inner = 0.0;
        for j in 0..=m {
            inner += weight(j) * f(t1, t1 * j as f64 * hv);
        }
        acc += weight(i) * inner * hv / 3.0 * t1;
    }
    acc * ht / 3.0
}

/// Σ_{0 <= k_1 < ... < k_d <= kmax} Π p^{-k_i s_i}, by enumeration.
pub fn brute_local(p: f64, s: &[f64], kmax: usize) -> f64 {
    fn rec(p: f64, s: &[f64], from: usize, kmax: usize) -> f64 {
        match s.split_first() {
            None => 1.0,
            Some((first, rest)) => (from..=kmax)
                .map(|k| p.powf(-(k as f64) * first) * rec(p, rest, k + 1, kmax))
                .sum(),
        }
    }
    rec(p, s, 0, kmax)
}

/// Nested sum over 0 < n_1 < ... < n_d <= cap by direct recursion on the
/// prefix sums.
pub fn brute_nested(s: &[C], cap: usize) -> C {
    let d = s.len();
    let mut prefix = vec![c(0.0); d + 1];
    prefix[0] = c(1.0);
    for n in 1..=cap {
        for j in (1..=d).rev() {
            let below = prefix[j - 1];
            prefix[j] += (-s[j - 1] * (n as f64).ln()).exp() * below;
        }
    }
    prefix[d]
}

/// τ(1..=n) by multiplying 1 by (1 - q^m) twenty-four times for every m.
pub fn brute_tau(n: usize) -> Vec<i128> {
    let mut c = vec![0i128; n];
    c[0] = 1;
    for m in 1..n {
        for _ in 0..24 {
            for k in (m..n).rev() {
                c[k] = c[k].checked_sub(c[k - m]).expect("tau oracle overflow");
            }
        }
    }
    c
}

/// Every ordered set partition of `1..=n`, as block lists sorted within
/// blocks, generated from surjections onto `0..m`.
pub fn brute_orderings(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut labels = vec![0usize; n];
    loop {
        let m = labels.iter().max().map_or(0, |x| x + 1);
        if (0..m).all(|b| labels.contains(&b)) {
            let blocks = (0..m)
                .map(|b| (0..n).filter(|&i| labels[i] == b).map(|i| i + 1).collect())
                .collect();
            out.push(blocks);
        }
        // next label vector in base n
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            labels[i] += 1;
            if labels[i] < n {
                break;
            }
            labels[i] = 0;
            i += 1;
        }
    }
}

/// Delete indices outside `keep`, dropping emptied blocks.
pub fn restrict(blocks: &[Vec<usize>], keep: impl Fn(usize) -> bool) -> Vec<Vec<usize>> {
    blocks
        .iter()
        .map(|b| b.iter().copied().filter(|&i| keep(i)).collect::<Vec<_>>())
        .filter(|b| !b.is_empty())
        .collect()
}

/// Number of orderings of `a + b` indices restricting to the chains
/// `1 < ... < a` and `a+1 < ... < a+b`, and how many of them have no ties.
pub fn brute_compatible_counts(a: usize, b: usize) -> (usize, usize) {
    let chain = |lo: usize, hi: usize| (lo..=hi).map(|i| vec![i]).collect::<Vec<_>>();
    let left = chain(1, a);
    let right = chain(a + 1, a + b);
    let mut all = 0;
    let mut strict = 0;
    for o in brute_orderings(a + b) {
        if restrict(&o, |i| i <= a) == left && restrict(&o, |i| i > a) == right {
            all += 1;
            if o.iter().all(|blk| blk.len() == 1) {
                strict += 1;
            }
        }
    }
    (all, strict)
}

pub fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
