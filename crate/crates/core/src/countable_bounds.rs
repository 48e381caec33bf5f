//! Entropy-difference bounds against a law on a countably infinite alphabet.
//!
//! `X` lives on the first `m` symbols of `{0, 1, 2, …}` and `Y` anywhere on
//! it. Lumping all of `Y`'s mass from index `M − 1` on into one atom gives a
//! finite law `Ỹ` on `M` symbols with the same total-variation distance to
//! `X`, so the finite bounds apply; the entropy lost by lumping is at most the
//! tail entropy of `Y`.

use serde::Serialize;

use crate::core_dist::{h, FiniteDistribution, PoissonLaw};
use crate::error::{domain, not_applicable, Error, Result};
use crate::poisson_stein::poisson_tail_entropy_bound;

/// A pmf on `{0, 1, 2, …}` exposed through accessors, so that it never has to
/// be materialized.
pub trait CountablePmf {
    fn log_pmf(&self, j: u64) -> f64;

    /// Log of a certified upper bound on `P(Y ≥ from)`; nonincreasing in
    /// `from`.
    fn log_tail_mass_bound(&self, from: u64) -> f64;

    /// Log of a certified upper bound on `−Σ_{j ≥ from} P(j) log P(j)`.
    fn log_tail_entropy_bound(&self, from: u64) -> Result<f64> {
        let _ = from;
        Err(Error::Unsupported(
            "no certified tail-entropy bound for this law".into(),
        ))
    }
}

impl CountablePmf for PoissonLaw {
    fn log_pmf(&self, j: u64) -> f64 {
        PoissonLaw::log_pmf(self, j)
    }

    fn log_tail_mass_bound(&self, from: u64) -> f64 {
        self.log_upper_tail_bound(from)
    }

    fn log_tail_entropy_bound(&self, from: u64) -> Result<f64> {
        poisson_tail_entropy_bound(self.lambda(), from).map(|b| b.log_value)
    }
}

impl CountablePmf for crate::core_dist::BinomialLaw {
    fn log_pmf(&self, j: u64) -> f64 {
        crate::core_dist::BinomialLaw::log_pmf(self, j)
    }

    fn log_tail_mass_bound(&self, from: u64) -> f64 {
        if from > self.n() {
            f64::NEG_INFINITY
        } else {
            self.log_upper_tail_bound(from)
        }
    }
}

/// Keep `P(0), …, P(M − 2)` and lump everything from `M − 1` on into the last
/// atom, computed as one minus the head.
pub fn truncate<Y: CountablePmf + ?Sized>(y: &Y, m: usize) -> Result<FiniteDistribution<u64>> {
    if m < 2 {
        return Err(domain(
            "truncation size",
            format!("M = {m}, need at least 2"),
        ));
    }
    let mut probs: Vec<f64> = (0..m as u64 - 1).map(|j| y.log_pmf(j).exp()).collect();
    let head: f64 = probs.iter().sum();
    probs.push((1.0 - head).max(0.0));
    FiniteDistribution::new((0..m as u64).collect(), probs)
}

/// A nonnegative quantity carried together with its logarithm, so that values
/// far below the floating-point range keep a usable certificate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LogScaled {
    /// `exp(log_value)`; zero on underflow.
    pub value: f64,
    pub log_value: f64,
}

impl LogScaled {
    pub fn from_log(log_value: f64) -> Self {
        Self {
            value: log_value.exp(),
            log_value,
        }
    }
}

fn log_add(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a > b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// Tail entropy `−Σ_{j ≥ from} P(j) log P(j)` by direct summation in log
/// space, stopping once the certified remainder is below `rel_tol` times the
/// running sum.
pub fn tail_entropy<Y: CountablePmf + ?Sized>(y: &Y, from: u64, rel_tol: f64) -> Result<LogScaled> {
    if !(rel_tol > 0.0 && rel_tol < 1.0) {
        return Err(domain("tail tolerance", format!("{rel_tol} not in (0, 1)")));
    }
    let log_tol = rel_tol.ln();
    let mut log_sum = f64::NEG_INFINITY;
    let mut j = from;
    loop {
        let lp = y.log_pmf(j);
        if lp < 0.0 {
            log_sum = log_add(log_sum, lp + (-lp).ln());
        }
        j += 1;
        match y.log_tail_entropy_bound(j) {
            Ok(log_rest) => {
                if log_sum > f64::NEG_INFINITY && log_rest - log_sum < log_tol {
                    break;
                }
                if log_rest == f64::NEG_INFINITY {
                    break;
                }
            }
            // bound not yet valid this close to the bulk; keep summing
            Err(Error::NotApplicable(_)) => {}
            Err(e) => return Err(e),
        }
        if y.log_tail_mass_bound(j) == f64::NEG_INFINITY {
            break;
        }
    }
    Ok(LogScaled::from_log(log_sum))
}

/// Inputs of the countable-alphabet bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CountableBoundInputs {
    /// Support size `m` of the finite law.
    pub support_size: u64,
    /// Truncation size `M`.
    pub truncation: u64,
    /// Upper bound on `d_TV`.
    pub tv_upper: f64,
    /// Lower bound on `d_TV`.
    pub tv_lower: f64,
    /// Upper bound on `d_loc`.
    pub local_upper: f64,
    /// Upper bound on the tail entropy beyond the truncation.
    pub tail_entropy: f64,
}

impl CountableBoundInputs {
    /// Checks `0 < local_upper ≤ tv_lower ≤ tv_upper < 1`, `tail_entropy ≥ 0`
    /// and `M ≥ max{m + 1, tv_lower / ((1 − tv_upper) local_upper)}`.
    pub fn validate(&self) -> Result<()> {
        let (e1, e2, e3) = (self.tv_upper, self.tv_lower, self.local_upper);
        if e3.is_nan() || e3 <= 0.0 {
            return Err(not_applicable(format!(
                "local-distance bound {e3} must be positive"
            )));
        }
        if e3 > e2 {
            return Err(not_applicable(format!(
                "local-distance bound {e3} exceeds the total-variation lower bound {e2}"
            )));
        }
        if e2 > e1 {
            return Err(not_applicable(format!(
                "total-variation lower bound {e2} exceeds the upper bound {e1}"
            )));
        }
        if e1.is_nan() || e1 >= 1.0 {
            return Err(not_applicable(format!(
                "total-variation upper bound {e1} must be below 1"
            )));
        }
        if self.tail_entropy.is_nan() || self.tail_entropy < 0.0 {
            return Err(not_applicable(format!(
                "tail-entropy bound {} is negative",
                self.tail_entropy
            )));
        }
        let m = self.truncation as f64;
        if self.truncation < self.support_size + 1 {
            return Err(not_applicable(format!(
                "truncation {} below support size + 1 = {}",
                self.truncation,
                self.support_size + 1
            )));
        }
        let need = e2 / ((1.0 - e1) * e3);
        if m < need {
            return Err(not_applicable(format!(
                "truncation {m} below the ratio requirement {need}"
            )));
        }
        Ok(())
    }
}

/// `η₁ log(M η₃/η₂ − 1) + h(η₁) + η₄` with `η₁, η₂, η₃, η₄` the fields of
/// `inputs` in declaration order.
pub fn countable_local_tv_bound(inputs: &CountableBoundInputs) -> Result<f64> {
    inputs.validate()?;
    // the truncation requirement keeps the log argument at least η₁/(1 − η₁)
    // (possibly below one, making the first term negative)
    let ratio = inputs.truncation as f64 * inputs.local_upper / inputs.tv_lower;
    Ok(inputs.tv_upper * (ratio - 1.0).ln() + h(inputs.tv_upper) + inputs.tail_entropy)
}

/// Total-variation-only variant and the truncation it uses.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CountableTvBound {
    pub truncation: u64,
    pub value: f64,
}

/// Smallest admissible truncation for the total-variation-only variant:
/// `max{m + 1, ⌈1/(1 − η)⌉}`.
pub fn tv_only_truncation(tv_bound: f64, support_size: u64) -> Result<u64> {
    if !(tv_bound > 0.0 && tv_bound < 1.0) {
        return Err(domain(
            "total-variation bound",
            format!("{tv_bound} not in (0, 1)"),
        ));
    }
    Ok((support_size + 1).max((1.0 / (1.0 - tv_bound)).ceil() as u64))
}

/// `η log(M̃ − 1) + h(η) + μ` at a given truncation `M̃`, which must be
/// admissible (at least [`tv_only_truncation`]).
pub fn countable_tv_bound_at(
    tv_bound: f64,
    tail_entropy: f64,
    support_size: u64,
    truncation: u64,
) -> Result<f64> {
    let least = tv_only_truncation(tv_bound, support_size)?;
    if tail_entropy.is_nan() || tail_entropy < 0.0 {
        return Err(domain(
            "tail-entropy bound",
            format!("{tail_entropy} is negative"),
        ));
    }
    if truncation < least {
        return Err(not_applicable(format!(
            "truncation {truncation} below {least}"
        )));
    }
    Ok(tv_bound * ((truncation - 1) as f64).ln() + h(tv_bound) + tail_entropy)
}

/// Total-variation-only bound at the smallest admissible truncation.
pub fn countable_tv_bound(
    tv_bound: f64,
    tail_entropy: f64,
    support_size: u64,
) -> Result<CountableTvBound> {
    let truncation = tv_only_truncation(tv_bound, support_size)?;
    let value = countable_tv_bound_at(tv_bound, tail_entropy, support_size, truncation)?;
    Ok(CountableTvBound { truncation, value })
}
