//! Orderings with ties (ordered set partitions) and the quasi-shuffle
//! expansion of a product of two nested sums.
//!
//! An ordering of `{1, ..., d}` is a sequence of blocks: indices in earlier
//! blocks are strictly smaller, indices sharing a block are equal. Written
//! as in `(5(13)24)`: singletons bare, ties in parentheses, indices above 9
//! in brackets.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::mzv::Composition;
use crate::numerics::{ComplexValue, EvaluationResult};
use crate::verify::IdentityCheck;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ordering {
    blocks: Vec<Vec<usize>>,
}

impl Ordering {
    /// Blocks must be nonempty and pairwise disjoint; each is stored sorted.
    pub fn new(blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut sorted = Vec::with_capacity(blocks.len());
        for mut b in blocks {
            if b.is_empty() {
                return Err(Error::InvalidArgument("ordering blocks must be nonempty".into()));
            }
            for &i in &b {
                if i == 0 || !seen.insert(i) {
                    return Err(Error::InvalidArgument(format!(
                        "index {i} is zero or appears twice in an ordering"
                    )));
                }
            }
            b.sort_unstable();
            sorted.push(b);
        }
        Ok(Ordering { blocks: sorted })
    }

    /// The strict chain `first < first+1 < ... < last`.
    pub fn chain(first: usize, last: usize) -> Self {
        Ordering {
            blocks: (first..=last).map(|i| vec![i]).collect(),
        }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn indices(&self) -> BTreeSet<usize> {
        self.blocks.iter().flatten().copied().collect()
    }

    /// No ties.
    pub fn is_strict(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 1)
    }

    /// True when the indices are exactly `{1, ..., d}`.
    pub fn covers(&self, d: usize) -> bool {
        self.indices() == (1..=d).collect()
    }

    /// Delete the indices outside `keep` and drop emptied blocks.
    pub fn restrict(&self, keep: &BTreeSet<usize>) -> Ordering {
        Ordering {
            blocks: self
                .blocks
                .iter()
                .map(|b| b.iter().copied().filter(|i| keep.contains(i)).collect::<Vec<_>>())
                .filter(|b| !b.is_empty())
                .collect(),
        }
    }

    pub fn shifted(&self, by: usize) -> Ordering {
        Ordering {
            blocks: self.blocks.iter().map(|b| b.iter().map(|i| i + by).collect()).collect(),
        }
    }
}

fn write_index(f: &mut fmt::Formatter<'_>, i: usize) -> fmt::Result {
    if i < 10 {
        write!(f, "{i}")
    } else {
        write!(f, "[{i}]")
    }
}

impl fmt::Display for Ordering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for b in &self.blocks {
            if b.len() == 1 {
                write_index(f, b[0])?;
            } else {
                write!(f, "(")?;
                for &i in b {
                    write_index(f, i)?;
                }
                write!(f, ")")?;
            }
        }
        write!(f, ")")
    }
}

impl FromStr for Ordering {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::InvalidArgument(format!("cannot parse ordering {s:?}: {why}"));
        let body = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| bad("must be enclosed in parentheses"))?;
        let mut blocks = Vec::new();
        let mut open: Option<Vec<usize>> = None;
        let mut chars = body.chars();
        while let Some(ch) = chars.next() {
            let index = match ch {
                '(' => {
                    if open.is_some() {
                        return Err(bad("nested parentheses"));
                    }
                    open = Some(Vec::new());
                    continue;
                }
                ')' => {
                    let b = open.take().ok_or_else(|| bad("unbalanced ')'"))?;
                    blocks.push(b);
                    continue;
                }
                '[' => {
                    let digits: String = chars.by_ref().take_while(|&c| c != ']').collect();
                    digits.parse::<usize>().map_err(|_| bad("bad bracketed index"))?
                }
                c if c.is_ascii_digit() => c.to_digit(10).unwrap_or(0) as usize,
                c if c.is_whitespace() => continue,
                _ => return Err(bad("unexpected character")),
            };
            match open.as_mut() {
                Some(b) => b.push(index),
                None => blocks.push(vec![index]),
            }
        }
        if open.is_some() {
            return Err(bad("unbalanced '('"));
        }
        Ordering::new(blocks)
    }
}

/// The ordering that sorts `values[0..d]` (indices `1..=d`) ascending, with
/// equal values tied.
pub fn order_of(values: &[f64]) -> Result<Ordering> {
    if values.is_empty() || values.iter().any(|v| v.is_nan()) {
        return Err(Error::InvalidArgument("order_of needs nonempty, non-NaN values".into()));
    }
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut last = f64::NAN;
    for i in idx {
        if values[i] == last {
            if let Some(b) = blocks.last_mut() {
                b.push(i + 1);
            }
        } else {
            blocks.push(vec![i + 1]);
        }
        last = values[i];
    }
    Ordering::new(blocks)
}

/// Every ordering of the given indices (their number is the Fubini number).
pub fn all_orderings(indices: &[usize]) -> Vec<Ordering> {
    fn rec(rest: &[usize], current: &mut Vec<Vec<usize>>, out: &mut Vec<Ordering>) {
        if rest.is_empty() {
            out.push(Ordering {
                blocks: current.clone(),
            });
            return;
        }
        // choose the next block as any nonempty subset of what is left
        let n = rest.len();
        for mask in 1u64..(1 << n) {
            let block: Vec<usize> = (0..n).filter(|&k| mask & (1 << k) != 0).map(|k| rest[k]).collect();
            let left: Vec<usize> = (0..n).filter(|&k| mask & (1 << k) == 0).map(|k| rest[k]).collect();
            current.push(block);
            rec(&left, current, out);
            current.pop();
        }
    }
    let mut sorted = indices.to_vec();
    sorted.sort_unstable();
    let mut out = Vec::new();
    rec(&sorted, &mut Vec::new(), &mut out);
    out
}

/// All orderings of the union whose restrictions to the two index sets are
/// `sigma1` and `sigma2`.
///
/// Built by interleaving the two block sequences: at each step take the next
/// block of one side, or merge the next blocks of both into one tied block.
pub fn enumerate_compatible(sigma1: &Ordering, sigma2: &Ordering) -> Result<Vec<Ordering>> {
    if !sigma1.indices().is_disjoint(&sigma2.indices()) {
        return Err(Error::InvalidArgument(format!(
            "orderings {sigma1} and {sigma2} share indices"
        )));
    }
    fn rec(a: &[Vec<usize>], b: &[Vec<usize>], current: &mut Vec<Vec<usize>>, out: &mut Vec<Ordering>) {
        if a.is_empty() && b.is_empty() {
            out.push(Ordering {
                blocks: current.clone(),
            });
            return;
        }
        if let Some((first, rest)) = a.split_first() {
            current.push(first.clone());
            rec(rest, b, current, out);
            current.pop();
        }
        if let Some((first, rest)) = b.split_first() {
            current.push(first.clone());
            rec(a, rest, current, out);
            current.pop();
        }
        if let (Some((fa, ra)), Some((fb, rb))) = (a.split_first(), b.split_first()) {
            let mut merged: Vec<usize> = fa.iter().chain(fb).copied().collect();
            merged.sort_unstable();
            current.push(merged);
            rec(ra, rb, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    rec(&sigma1.blocks, &sigma2.blocks, &mut Vec::new(), &mut out);
    Ok(out)
}

/// The compatible orderings without merged blocks: plain interleavings.
pub fn strict_compatible(sigma1: &Ordering, sigma2: &Ordering) -> Result<Vec<Ordering>> {
    let total = sigma1.num_blocks() + sigma2.num_blocks();
    Ok(enumerate_compatible(sigma1, sigma2)?
        .into_iter()
        .filter(|o| o.num_blocks() == total)
        .collect())
}

/// One term of a quasi-shuffle expansion: the ordering and the composition
/// obtained by summing the exponents of tied indices. Coefficients are all 1.
#[derive(Debug, Clone, PartialEq)]
pub struct CompositionTerm {
    pub ordering: Ordering,
    pub composition: Composition,
    pub coefficient: i64,
}

/// Quasi-shuffle of two words of letters: one word per compatible ordering
/// of the two chains, tied letters combined with `merge`.
pub fn quasi_shuffle<L, M>(w1: &[L], w2: &[L], merge: M) -> Vec<(Ordering, Vec<L>)>
where
    L: Clone,
    M: Fn(&L, &L) -> L,
{
    let d1 = w1.len();
    let letter = |i: usize| if i <= d1 { &w1[i - 1] } else { &w2[i - d1 - 1] };
    let sigma1 = Ordering::chain(1, d1);
    let sigma2 = Ordering::chain(d1 + 1, d1 + w2.len());
    enumerate_compatible(&sigma1, &sigma2)
        .expect("chains on disjoint ranges")
        .into_iter()
        .map(|o| {
            let word = o
                .blocks
                .iter()
                .map(|b| {
                    let mut acc = letter(b[0]).clone();
                    for &i in &b[1..] {
                        acc = merge(&acc, letter(i));
                    }
                    acc
                })
                .collect();
            (o, word)
        })
        .collect()
}

/// `comp1 * comp2` as a sum of compositions, one per compatible ordering.
pub fn stuffle_expand(comp1: &Composition, comp2: &Composition) -> Vec<CompositionTerm> {
    quasi_shuffle(comp1.exponents(), comp2.exponents(), |a, b| a + b)
        .into_iter()
        .map(|(ordering, exps)| CompositionTerm {
            ordering,
            composition: Composition::new(exps),
            coefficient: 1,
        })
        .collect()
}

// |xy - x'y'| allowance from the operands' error estimates
fn product_error(a: &EvaluationResult, b: &EvaluationResult) -> f64 {
    a.value.norm() * b.abs_error_estimate
        + b.value.norm() * a.abs_error_estimate
        + a.abs_error_estimate * b.abs_error_estimate
}

/// Check `eval(w1) · eval(w2) = Σ eval(term)` over the quasi-shuffle terms.
///
/// Passes when the residual is within `tol` plus the accumulated error
/// estimates of every evaluation.
pub fn verify_stuffle_numeric<L, M, E>(
    identity: impl Into<String>,
    w1: &[L],
    w2: &[L],
    merge: M,
    evaluator: E,
    tol: f64,
) -> Result<IdentityCheck>
where
    L: Clone,
    M: Fn(&L, &L) -> L,
    E: Fn(&[L]) -> Result<EvaluationResult>,
{
    let a = evaluator(w1)?;
    let b = evaluator(w2)?;
    let mut rhs = ComplexValue::new(0.0, 0.0);
    let mut budget = product_error(&a, &b);
    for (_, word) in quasi_shuffle(w1, w2, merge) {
        let r = evaluator(&word)?;
        rhs += r.value;
        budget += r.abs_error_estimate;
    }
    Ok(IdentityCheck::new(identity, a.value * b.value, rhs, tol + budget))
}

/// Check `single(s1) · single(s2) = iterated(s1, s2) + iterated(s2, s1)`:
/// with an archimedean factor ties have measure zero, so only the two
/// strict orderings appear.
pub fn verify_shuffle_archimedean<S, I>(
    identity: impl Into<String>,
    s1: ComplexValue,
    s2: ComplexValue,
    single: S,
    iterated: I,
    tol: f64,
) -> Result<IdentityCheck>
where
    S: Fn(ComplexValue) -> Result<EvaluationResult>,
    I: Fn(ComplexValue, ComplexValue) -> Result<EvaluationResult>,
{
    let a = single(s1)?;
    let b = if s2 == s1 { a } else { single(s2)? };
    let forward = iterated(s1, s2)?;
    let backward = if s2 == s1 { forward } else { iterated(s2, s1)? };
    let budget = product_error(&a, &b) + forward.abs_error_estimate + backward.abs_error_estimate;
    Ok(IdentityCheck::new(
        identity,
        a.value * b.value,
        forward.value + backward.value,
        tol + budget,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ties_and_display() {
        // n5 < n3 = n1 < n2 < n4
        let o = order_of(&[2.0, 3.0, 2.0, 4.0, 1.0]).unwrap();
        assert_eq!(o.to_string(), "(5(13)24)");
        assert_eq!("(5(31)24)".parse::<Ordering>().unwrap(), o);
        assert_eq!(order_of(&[7.0]).unwrap().to_string(), "(1)");
        assert_eq!(order_of(&[1.0, 1.0, 1.0]).unwrap().num_blocks(), 1);
    }

    #[test]
    fn large_indices_round_trip() {
        let o = Ordering::new(vec![vec![12, 3], vec![10]]).unwrap();
        assert_eq!(o.to_string(), "((3[12])[10])");
        assert_eq!(o.to_string().parse::<Ordering>().unwrap(), o);
    }

    #[test]
    fn parse_errors() {
        for bad in ["", "12", "((12)", "(1(2(3)))", "(11)", "(1x)"] {
            assert!(bad.parse::<Ordering>().is_err(), "{bad}");
        }
    }

    #[test]
    fn small_compatible_counts() {
        let one = Ordering::chain(1, 1);
        let two = Ordering::chain(2, 2);
        let c = enumerate_compatible(&one, &two).unwrap();
        let shown: Vec<String> = c.iter().map(|o| o.to_string()).collect();
        assert_eq!(shown, ["(12)", "(21)", "((12))"]);
        let c = enumerate_compatible(&Ordering::chain(1, 2), &Ordering::chain(3, 3)).unwrap();
        assert_eq!(c.len(), 5);
        assert_eq!(
            strict_compatible(&Ordering::chain(1, 2), &Ordering::chain(3, 3))
                .unwrap()
                .len(),
            3
        );
        assert!(enumerate_compatible(&one, &one).is_err());
    }

    #[test]
    fn fubini_numbers() {
        let counts: Vec<usize> = (1..=5)
            .map(|n| all_orderings(&(1..=n).collect::<Vec<_>>()).len())
            .collect();
        assert_eq!(counts, [1, 3, 13, 75, 541]);
    }

    #[test]
    fn depth_one_stuffle() {
        let terms = stuffle_expand(&Composition::from_reals(&[2.0]), &Composition::from_reals(&[3.0]));
        let shown: Vec<String> = terms.iter().map(|t| t.composition.to_string()).collect();
        assert_eq!(shown, ["(2, 3)", "(3, 2)", "(5)"]);
        let with_empty = stuffle_expand(&Composition::empty(), &Composition::from_reals(&[3.0]));
        assert_eq!(with_empty.len(), 1);
    }
}
