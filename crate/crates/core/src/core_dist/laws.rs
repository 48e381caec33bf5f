//! Poisson and binomial laws: log-space pmfs, Chernoff tail certificates and
//! windowed entropy evaluation.

use serde::Serialize;

use super::finite::stable_sum;
use std::f64::consts::PI;

use super::special::{deviance_term, stirling_error};
use crate::error::{domain, Result};

/// Default mass allowed outside the summation window of the entropy evaluators.
pub const DEFAULT_TAIL_TOL: f64 = 1e-13;

/// Poisson law with mean `lambda > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PoissonLaw {
    lambda: f64,
}

impl PoissonLaw {
    pub fn new(lambda: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(domain(
                "Poisson mean",
                format!("{lambda} is not a positive finite number"),
            ));
        }
        Ok(Self { lambda })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// `log Π_λ(j)`, in saddle-point form so that no large terms cancel.
    pub fn log_pmf(&self, j: u64) -> f64 {
        if j == 0 {
            return -self.lambda;
        }
        let x = j as f64;
        -stirling_error(j) - deviance_term(x, self.lambda) - 0.5 * (2.0 * PI * x).ln()
    }

    pub fn pmf(&self, j: u64) -> f64 {
        self.log_pmf(j).exp()
    }

    /// Log of the Chernoff bound `exp{−[λ + b log(b/(λe))]}` on `P(Y ≥ b)`.
    /// Returns 0 (a trivial bound of one) when `b ≤ λ`.
    pub fn log_upper_tail_bound(&self, b: u64) -> f64 {
        if (b as f64) <= self.lambda {
            0.0
        } else {
            chernoff_exponent(self.lambda, b as f64)
        }
    }

    /// Log of the Chernoff bound on `P(Y ≤ a)`; 0 when `a ≥ λ`.
    pub fn log_lower_tail_bound(&self, a: u64) -> f64 {
        if (a as f64) >= self.lambda {
            0.0
        } else {
            chernoff_exponent(self.lambda, a as f64)
        }
    }

    /// Entropy in nats; see [`poisson_entropy`].
    pub fn entropy(&self, tail_tol: f64) -> Result<f64> {
        poisson_entropy(self, tail_tol)
    }
}

/// `−[λ + x log(x/(λe))]`, with `0 log 0 = 0` at `x = 0`.
pub(crate) fn chernoff_exponent(lambda: f64, x: f64) -> f64 {
    if x == 0.0 {
        -lambda
    } else {
        -(lambda + x * ((x / lambda).ln() - 1.0))
    }
}

/// Binomial law `Binom(n, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BinomialLaw {
    n: u64,
    p: f64,
}

impl BinomialLaw {
    pub fn new(n: u64, p: f64) -> Result<Self> {
        if n == 0 {
            return Err(domain("binomial trial count", "n must be at least 1"));
        }
        if !(0.0..=1.0).contains(&p) {
            return Err(domain(
                "binomial success probability",
                format!("{p} not in [0, 1]"),
            ));
        }
        Ok(Self { n, p })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn mean(&self) -> f64 {
        self.n as f64 * self.p
    }

    pub fn log_pmf(&self, k: u64) -> f64 {
        if k > self.n {
            return f64::NEG_INFINITY;
        }
        let (n, p) = (self.n, self.p);
        if p == 0.0 || p == 1.0 {
            let at = if p == 0.0 { 0 } else { n };
            return if k == at { 0.0 } else { f64::NEG_INFINITY };
        }
        let nf = n as f64;
        if k == 0 {
            return nf * (-p).ln_1p();
        }
        if k == n {
            return nf * p.ln();
        }
        // saddle-point form: no cancellation between factorial-sized terms
        let (kf, rest) = (k as f64, (n - k) as f64);
        stirling_error(n)
            - stirling_error(k)
            - stirling_error(n - k)
            - deviance_term(kf, nf * p)
            - deviance_term(rest, nf * (1.0 - p))
            + 0.5 * (nf / (2.0 * PI * kf * rest)).ln()
    }

    pub fn pmf(&self, k: u64) -> f64 {
        self.log_pmf(k).exp()
    }

    /// Log of the Chernoff bound `exp{−n D(k/n ‖ p)}` on `P(X ≥ k)`; 0 when
    /// `k ≤ np`.
    pub fn log_upper_tail_bound(&self, k: u64) -> f64 {
        if (k as f64) <= self.mean() {
            0.0
        } else {
            -(self.n as f64) * bernoulli_kl(k as f64 / self.n as f64, self.p)
        }
    }

    /// Log of the Chernoff bound on `P(X ≤ k)`; 0 when `k ≥ np`.
    pub fn log_lower_tail_bound(&self, k: u64) -> f64 {
        if (k as f64) >= self.mean() {
            0.0
        } else {
            -(self.n as f64) * bernoulli_kl(k as f64 / self.n as f64, self.p)
        }
    }

    pub fn entropy(&self, tail_tol: f64) -> Result<f64> {
        binomial_entropy(self, tail_tol)
    }
}

fn bernoulli_kl(a: f64, p: f64) -> f64 {
    let term = |x: f64, y: f64| if x == 0.0 { 0.0 } else { x * (x / y).ln() };
    term(a, p) + term(1.0 - a, 1.0 - p)
}

/// Summation window `[lo, hi]` around `center`, grown symmetrically until the
/// certified mass outside it is below `tail_tol`.
fn certified_window(
    center: u64,
    upper_limit: Option<u64>,
    tail_tol: f64,
    log_lower: impl Fn(u64) -> f64,
    log_upper: impl Fn(u64) -> f64,
) -> (u64, u64) {
    let mut w = 0u64;
    loop {
        let lo = center.saturating_sub(w);
        let hi = match upper_limit {
            Some(limit) => (center + w).min(limit),
            None => center + w,
        };
        let left = if lo == 0 {
            0.0
        } else {
            log_lower(lo - 1).exp()
        };
        let right = if upper_limit == Some(hi) {
            0.0
        } else {
            log_upper(hi + 1).exp()
        };
        if left + right < tail_tol {
            return (lo, hi);
        }
        w += 1;
    }
}

fn check_tail_tol(tail_tol: f64) -> Result<()> {
    if tail_tol > 0.0 && tail_tol.is_finite() {
        Ok(())
    } else {
        Err(domain(
            "tail tolerance",
            format!("{tail_tol} is not positive"),
        ))
    }
}

/// Entropy of `Po(λ)` in nats by direct summation over a window whose
/// excluded mass is certified below `tail_tol` by two-sided Chernoff bounds.
pub fn poisson_entropy(law: &PoissonLaw, tail_tol: f64) -> Result<f64> {
    check_tail_tol(tail_tol)?;
    let (lo, hi) = certified_window(
        law.lambda.floor() as u64,
        None,
        tail_tol,
        |a| law.log_lower_tail_bound(a),
        |b| law.log_upper_tail_bound(b),
    );
    Ok(stable_sum((lo..=hi).map(|j| neg_plogp(law.log_pmf(j)))))
}

/// Entropy of `Binom(n, p)` in nats, windowed as in [`poisson_entropy`].
pub fn binomial_entropy(law: &BinomialLaw, tail_tol: f64) -> Result<f64> {
    check_tail_tol(tail_tol)?;
    if law.p == 0.0 || law.p == 1.0 {
        return Ok(0.0);
    }
    let (lo, hi) = certified_window(
        law.mean().floor() as u64,
        Some(law.n),
        tail_tol,
        |a| law.log_lower_tail_bound(a),
        |b| law.log_upper_tail_bound(b),
    );
    Ok(stable_sum((lo..=hi).map(|k| neg_plogp(law.log_pmf(k)))))
}

/// `−p log p` from `log p`.
#[inline]
pub(crate) fn neg_plogp(log_p: f64) -> f64 {
    if log_p == f64::NEG_INFINITY {
        0.0
    } else {
        -log_p.exp() * log_p
    }
}
