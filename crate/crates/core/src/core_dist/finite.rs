use std::collections::HashSet;
use std::fmt::Debug;
use std::hash::Hash;

use serde::Serialize;

use crate::error::{domain, Error, Result};

/// Tolerance on `|Σ p − 1|` accepted when validating a pmf.
pub const SUM_TOLERANCE: f64 = 1e-9;

/// Anything usable as a symbol of a finite alphabet.
pub trait Label: Clone + Eq + Hash + Debug {}

impl<T: Clone + Eq + Hash + Debug> Label for T {}

/// A probability mass function over an ordered finite alphabet.
///
/// Construction validates the masses (finite, non-negative, summing to one
/// within [`SUM_TOLERANCE`], distinct symbols) and renormalizes them once, so
/// that every downstream identity holds to machine precision.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FiniteDistribution<L = String> {
    symbols: Vec<L>,
    probs: Vec<f64>,
}

impl<L: Label> FiniteDistribution<L> {
    pub fn new(symbols: Vec<L>, probs: Vec<f64>) -> Result<Self> {
        if symbols.len() != probs.len() {
            return Err(Error::InvalidDistribution(format!(
                "{} symbols but {} probabilities",
                symbols.len(),
                probs.len()
            )));
        }
        if probs.is_empty() {
            return Err(Error::InvalidDistribution("empty alphabet".into()));
        }
        for (i, &p) in probs.iter().enumerate() {
            if !p.is_finite() || p < 0.0 {
                return Err(Error::InvalidDistribution(format!(
                    "probability of symbol {:?} is {p}",
                    symbols[i]
                )));
            }
        }
        let sum = stable_sum(probs.iter().copied());
        if (sum - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::InvalidDistribution(format!(
                "probabilities sum to {sum}"
            )));
        }
        let mut seen = HashSet::with_capacity(symbols.len());
        for s in &symbols {
            if !seen.insert(s) {
                return Err(Error::InvalidDistribution(format!(
                    "duplicate symbol {s:?}"
                )));
            }
        }
        let probs = if sum == 1.0 {
            probs
        } else {
            probs.into_iter().map(|p| p / sum).collect()
        };
        Ok(Self { symbols, probs })
    }

    pub fn symbols(&self) -> &[L] {
        &self.symbols
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Alphabet size `M`.
    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn index_of(&self, symbol: &L) -> Option<usize> {
        self.symbols.iter().position(|s| s == symbol)
    }

    /// Mass at `symbol`; symbols outside the alphabet have mass zero.
    pub fn prob_of(&self, symbol: &L) -> f64 {
        self.index_of(symbol).map_or(0.0, |i| self.probs[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&L, f64)> + '_ {
        self.symbols.iter().zip(self.probs.iter().copied())
    }

    pub fn entropy(&self) -> f64 {
        entropy_of(&self.probs)
    }
}

impl FiniteDistribution<usize> {
    /// Pmf on the labels `0..probs.len()`.
    pub fn from_probs(probs: Vec<f64>) -> Result<Self> {
        let symbols = (0..probs.len()).collect();
        Self::new(symbols, probs)
    }

    pub fn uniform(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidDistribution("empty alphabet".into()));
        }
        Self::from_probs(vec![1.0 / m as f64; m])
    }

    /// Unit mass on label `at` within an alphabet of size `m`.
    pub fn point_mass(m: usize, at: usize) -> Result<Self> {
        if at >= m {
            return Err(domain(
                "point mass",
                format!("index {at} outside alphabet of size {m}"),
            ));
        }
        let mut probs = vec![0.0; m];
        probs[at] = 1.0;
        Self::from_probs(probs)
    }
}

/// `−p log p` with the convention `0 log 0 = 0`.
#[inline]
pub(crate) fn neg_xlogx(p: f64) -> f64 {
    if p > 0.0 {
        -p * p.ln()
    } else {
        0.0
    }
}

/// Entropy of a mass vector in nats; zero masses contribute nothing.
pub fn entropy_of(probs: &[f64]) -> f64 {
    stable_sum(probs.iter().map(|&p| neg_xlogx(p)))
}

/// Neumaier-compensated sum, accurate to a few ulps regardless of length.
pub(crate) fn stable_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut carry = 0.0f64;
    for x in values {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            carry += (sum - t) + x;
        } else {
            carry += (x - t) + sum;
        }
        sum = t;
    }
    sum + carry
}

/// Shannon entropy in nats.
pub fn entropy<L: Label>(dist: &FiniteDistribution<L>) -> f64 {
    dist.entropy()
}

/// Binary entropy `h(x) = −x log x − (1−x) log(1−x)`, without domain checks.
#[inline]
pub(crate) fn h(x: f64) -> f64 {
    neg_xlogx(x) + neg_xlogx(1.0 - x)
}

/// Binary entropy function in nats.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(domain(
            "binary entropy argument",
            format!("{x} not in [0, 1]"),
        ));
    }
    Ok(h(x))
}

/// Relative entropy `D(p‖q)` in nats over the union of both alphabets.
pub fn relative_entropy<L: Label>(
    p: &FiniteDistribution<L>,
    q: &FiniteDistribution<L>,
) -> Result<f64> {
    let aligned = crate::distances::align(p, q);
    let mut d = 0.0;
    for (i, (&a, &b)) in aligned.p.iter().zip(&aligned.q).enumerate() {
        if a == 0.0 {
            continue;
        }
        if b == 0.0 {
            return Err(domain(
                "relative entropy",
                format!(
                    "symbol {:?} has mass {a} under p but 0 under q",
                    aligned.symbols[i]
                ),
            ));
        }
        d += a * (a / b).ln();
    }
    Ok(d.max(0.0))
}

/// Exact pmf of a sum of independent Bernoulli variables (Poisson-binomial
/// law) on `{0, …, n}`, by iterative convolution in `O(n²)`.
pub fn bernoulli_sum_pmf(p_list: &[f64]) -> Result<FiniteDistribution<u64>> {
    if p_list.is_empty() {
        return Err(domain("success probabilities", "empty list"));
    }
    if let Some(&bad) = p_list.iter().find(|p| !(0.0..=1.0).contains(*p)) {
        return Err(domain(
            "success probability",
            format!("{bad} not in [0, 1]"),
        ));
    }
    let n = p_list.len();
    let mut pmf = vec![0.0; n + 1];
    pmf[0] = 1.0;
    for (k, &p) in p_list.iter().enumerate() {
        let q = 1.0 - p;
        // walk downwards so pmf[j-1] still holds the previous round
        for j in (1..=k + 1).rev() {
            pmf[j] = pmf[j] * q + pmf[j - 1] * p;
        }
        pmf[0] *= q;
    }
    FiniteDistribution::new((0..=n as u64).collect(), pmf)
}
