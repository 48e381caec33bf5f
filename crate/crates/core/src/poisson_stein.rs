//! Poisson approximation of sums of independent Bernoulli variables.
//!
//! For `S = Σ B_i` with `B_i ~ Bernoulli(p_i)`, `λ = Σ p_i`, Stein's method
//! gives explicit upper and lower bounds on `d_TV(S, Po(λ))` and an upper
//! bound on the local distance, all proportional to `Σ p_i²`. Combined with a
//! Chernoff bound on the Poisson tail they feed the countable-alphabet bound,
//! giving a certified upper bound on `H(Po(λ)) − H(S)`.
//!
//! Quantities that can fall far below the floating-point range (tail masses,
//! tail entropies) are carried in log space and exponentiated only on output.

use std::f64::consts::{E, PI};

use serde::Serialize;

use crate::core_dist::{
    bernoulli_sum_pmf, bessel_i0_scaled, binomial_entropy, chernoff_exponent, poisson_entropy,
    BinomialLaw, PoissonLaw, DEFAULT_TAIL_TOL,
};
use crate::countable_bounds::{
    countable_local_tv_bound, countable_tv_bound_at, tv_only_truncation, CountableBoundInputs,
    LogScaled,
};
use crate::error::{domain, not_applicable, Result};

/// Largest number of summands accepted by [`check_envelope_exact`].
pub const EXACT_CHECK_LIMIT: usize = 5000;

fn check_lambda(lambda: f64) -> Result<()> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(domain(
            "Poisson mean",
            format!("{lambda} is not a positive finite number"),
        ));
    }
    Ok(())
}

fn check_sum_sq(sum_p_sq: f64) -> Result<()> {
    if !(sum_p_sq > 0.0 && sum_p_sq.is_finite()) {
        return Err(domain(
            "sum of squared probabilities",
            format!("{sum_p_sq} is not positive"),
        ));
    }
    Ok(())
}

/// `(1 − e^{−λ})/λ · Σ p_i²`, an upper bound on `d_TV(S, Po(λ))`.
pub fn stein_tv_upper(lambda: f64, sum_p_sq: f64) -> Result<f64> {
    check_lambda(lambda)?;
    check_sum_sq(sum_p_sq)?;
    Ok(-(-lambda).exp_m1() * (sum_p_sq / lambda))
}

/// Lower bound on `d_TV(S, Po(λ))` with its intermediate constants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TvLowerBound {
    pub value: f64,
    /// Multiplier `k` of `Σ p_i²`.
    pub coefficient: f64,
    /// Auxiliary root `θ` the coefficient is built from.
    pub root: f64,
}

/// `k · Σ p_i²` with
/// `θ = 3 + 7/λ + √((3λ + 7)((3 + 2e^{−1/2})λ + 7))/λ` and
/// `k = e/(2λ) · (1 − (3 + 7/λ)/θ) / (θ + 2e^{−1/2})`.
pub fn stein_tv_lower(lambda: f64, sum_p_sq: f64) -> Result<TvLowerBound> {
    check_lambda(lambda)?;
    check_sum_sq(sum_p_sq)?;
    let c = 2.0 * (-0.5f64).exp();
    let base = 3.0 + 7.0 / lambda;
    let root = base + ((3.0 * lambda + 7.0) * ((3.0 + c) * lambda + 7.0)).sqrt() / lambda;
    let coefficient = E / (2.0 * lambda) * (1.0 - base / root) / (root + c);
    assert!(
        coefficient > 0.0,
        "lower-bound coefficient must be positive, got {coefficient}"
    );
    Ok(TvLowerBound {
        value: coefficient * sum_p_sq,
        coefficient,
        root,
    })
}

/// Upper bound on the local distance `d_loc(S, Po(λ))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LocalUpperBound {
    pub value: f64,
    /// `min{1, 4√(2/(eλ)), 8 e^{−λ} I₀(λ)}`, or 1 when the sharper factors are
    /// not applicable.
    pub factor: f64,
    /// Whether the total-variation upper bound is at most 1/8, the regime in
    /// which the sharper factors hold. Otherwise the value falls back to the
    /// total-variation upper bound itself.
    pub condition_ok: bool,
}

pub fn stein_local_upper(lambda: f64, sum_p_sq: f64) -> Result<LocalUpperBound> {
    let tv = stein_tv_upper(lambda, sum_p_sq)?;
    let condition_ok = tv <= 0.125;
    let factor = if condition_ok {
        1f64.min(4.0 * (2.0 / (E * lambda)).sqrt())
            .min(8.0 * bessel_i0_scaled(lambda))
    } else {
        1.0
    };
    Ok(LocalUpperBound {
        value: factor * tv,
        factor,
        condition_ok,
    })
}

/// All three Stein distance bounds for one `(λ, Σ p_i²)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SteinEnvelope {
    pub lambda: f64,
    pub sum_p_sq: f64,
    /// Upper bound on `d_TV`.
    pub tv_upper: f64,
    /// Lower bound on `d_TV`.
    pub tv_lower: f64,
    /// Upper bound on `d_loc`.
    pub local_upper: f64,
    pub tv_lower_root: f64,
    pub tv_lower_coefficient: f64,
    pub local_factor: f64,
    pub local_condition_ok: bool,
}

pub fn stein_envelope(lambda: f64, sum_p_sq: f64) -> Result<SteinEnvelope> {
    let tv_upper = stein_tv_upper(lambda, sum_p_sq)?;
    let lower = stein_tv_lower(lambda, sum_p_sq)?;
    let local = stein_local_upper(lambda, sum_p_sq)?;
    Ok(SteinEnvelope {
        lambda,
        sum_p_sq,
        tv_upper,
        tv_lower: lower.value,
        local_upper: local.value,
        tv_lower_root: lower.root,
        tv_lower_coefficient: lower.coefficient,
        local_factor: local.factor,
        local_condition_ok: local.condition_ok,
    })
}

/// Chernoff bound `exp{−[λ + M log(M/(λe))]}` on `P(Po(λ) ≥ M)`, for `M > λ`.
pub fn chernoff_poisson_tail(lambda: f64, m: u64) -> Result<LogScaled> {
    check_lambda(lambda)?;
    if m as f64 <= lambda {
        return Err(domain(
            "tail start",
            format!("M = {m} must exceed λ = {lambda}"),
        ));
    }
    Ok(LogScaled::from_log(chernoff_exponent(lambda, m as f64)))
}

/// Upper bound on the Poisson tail entropy `−Σ_{j ≥ from} Π(j) log Π(j)`:
/// `[(λ log(e/λ))₊ + λ² + (6 log 2π + 1)/12] · exp{−[λ + (from − 2) log((from − 2)/(λe))]}`.
///
/// Requires `from − 2 > λe`, where the Chernoff exponent is decreasing.
pub fn poisson_tail_entropy_bound(lambda: f64, from: u64) -> Result<LogScaled> {
    check_lambda(lambda)?;
    let shifted = from.saturating_sub(2) as f64;
    if from < 2 || shifted <= lambda * E {
        return Err(not_applicable(format!(
            "tail-entropy bound needs from − 2 > λe = {}, got from = {from}",
            lambda * E
        )));
    }
    let prefactor = (lambda * (1.0 - lambda.ln())).max(0.0)
        + lambda * lambda
        + (6.0 * (2.0 * PI).ln() + 1.0) / 12.0;
    Ok(LogScaled::from_log(
        prefactor.ln() + chernoff_exponent(lambda, shifted),
    ))
}

/// `⌈max{n + 2, η₂/(η₃(1 − η₁)), λe², log(1/η₃) − λ}⌉`: a truncation size
/// satisfying the support, ratio and (via Chernoff) tail-mass requirements.
pub fn truncation_index(
    n: u64,
    lambda: f64,
    tv_upper: f64,
    tv_lower: f64,
    local_upper: f64,
) -> Result<u64> {
    check_lambda(lambda)?;
    if tv_upper.is_nan() || tv_upper >= 1.0 {
        return Err(not_applicable(format!(
            "total-variation upper bound {tv_upper} is not below 1"
        )));
    }
    if !(local_upper > 0.0 && tv_lower > 0.0) {
        return Err(domain(
            "distance bounds",
            "lower and local bounds must be positive",
        ));
    }
    let candidates = [
        (n + 2) as f64,
        tv_lower / (local_upper * (1.0 - tv_upper)),
        lambda * E * E,
        (1.0 / local_upper).ln() - lambda,
    ];
    Ok(candidates.into_iter().fold(f64::MIN, f64::max).ceil() as u64)
}

/// `(24/e) √(2/π) (1 + √(1 + (2/3)e^{−1/2}))² / √λ`: large-λ upper estimate of
/// the ratio of the local-distance and lower total-variation bounds.
pub fn alpha_asymptotic_upper(lambda: f64) -> Result<f64> {
    check_lambda(lambda)?;
    Ok(ASYMPTOTIC_RATIO_CONSTANT / lambda.sqrt())
}

/// The constant of [`alpha_asymptotic_upper`], ≈ 33.634.
pub const ASYMPTOTIC_RATIO_CONSTANT: f64 = 33.634_215_499_812_59;

/// Options for [`binomial_poisson_gap`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GapOptions {
    /// Also evaluate `H(Binom(n, p))` and the exact gap.
    pub exact_gap: bool,
    /// Mass allowed outside the entropy summation windows.
    pub tail_tol: f64,
}

impl Default for GapOptions {
    fn default() -> Self {
        Self {
            exact_gap: false,
            tail_tol: DEFAULT_TAIL_TOL,
        }
    }
}

/// Certified bounds on `H(Po(np)) − H(Binom(n, p))`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PoissonGapReport {
    pub n: u64,
    pub p: f64,
    pub lambda: f64,
    pub envelope: SteinEnvelope,
    /// Local-distance bound used in the ratio: `min{local_upper, tv_lower}`.
    pub local_bound_used: f64,
    /// Whether the local bound exceeded the lower TV bound and was lowered to
    /// it (valid because `d_loc ≤ d_TV` always).
    pub ratio_clipped: bool,
    /// Truncation size `M` for the local/TV bound; symbols `M − 1, M, …` are
    /// lumped together.
    pub truncation: u64,
    /// Whether `M` was raised above the closed-form choice to meet the tail
    /// requirements exactly.
    pub truncation_raised: bool,
    /// Chernoff certificate on the lumped tail mass `P(Y ≥ M − 1)`.
    pub tail_mass: LogScaled,
    /// Tail-entropy bound beyond the truncation.
    pub tail_entropy: LogScaled,
    /// Truncation for the total-variation-only bound.
    pub tv_only_truncation: u64,
    pub tv_only_truncation_raised: bool,
    pub tv_only_tail_entropy: LogScaled,
    /// Bound using both distances.
    pub local_tv_bound: f64,
    /// Bound using the total-variation distance only.
    pub tv_only_bound: f64,
    pub poisson_entropy: f64,
    pub binomial_entropy: Option<f64>,
    pub exact_gap: Option<f64>,
}

/// Stein envelope, truncation choice, tail certificates and both bounds for
/// `Binom(n, p)` against `Po(np)`, optionally with the exact gap.
pub fn binomial_poisson_gap(n: u64, p: f64, opts: GapOptions) -> Result<PoissonGapReport> {
    if n == 0 {
        return Err(domain("trial count", "n must be at least 1"));
    }
    if !(p > 0.0 && p < 1.0) {
        return Err(domain("success probability", format!("{p} not in (0, 1)")));
    }
    let lambda = n as f64 * p;
    // Σ p_i² = n p² written as λ p, so λ = 10⁵, p = 0.1 gives exactly 10⁴
    let sum_p_sq = lambda * p;
    let envelope = stein_envelope(lambda, sum_p_sq)?;
    let (tv_hi, tv_lo) = (envelope.tv_upper, envelope.tv_lower);
    let ratio_clipped = envelope.local_upper > tv_lo;
    let local_hi = envelope.local_upper.min(tv_lo);
    let support = n + 1;

    let closed_form = truncation_index(n, lambda, tv_hi, tv_lo, local_hi)?;
    let mut m = closed_form;
    // the lumped atom starts at index M − 1; its mass must be below η₃ and the
    // tail-entropy bound from there must be applicable
    while !((m - 3) as f64 > lambda * E
        && chernoff_exponent(lambda, (m - 1) as f64) <= local_hi.ln())
    {
        m += 1;
    }
    let tail_mass = chernoff_poisson_tail(lambda, m - 1)?;
    let tail_entropy = poisson_tail_entropy_bound(lambda, m - 1)?;
    let inputs = CountableBoundInputs {
        support_size: support,
        truncation: m,
        tv_upper: tv_hi,
        tv_lower: tv_lo,
        local_upper: local_hi,
        tail_entropy: tail_entropy.value,
    };
    let local_tv_bound = countable_local_tv_bound(&inputs)?;

    let least = tv_only_truncation(tv_hi, support)?;
    let mut tv_only_m = least;
    while (tv_only_m - 3) as f64 <= lambda * E {
        tv_only_m += 1;
    }
    let tv_only_tail_entropy = poisson_tail_entropy_bound(lambda, tv_only_m - 1)?;
    let tv_only_bound =
        countable_tv_bound_at(tv_hi, tv_only_tail_entropy.value, support, tv_only_m)?;

    let poisson = PoissonLaw::new(lambda)?;
    let poisson_entropy = poisson_entropy(&poisson, opts.tail_tol)?;
    let binomial_entropy = if opts.exact_gap {
        Some(binomial_entropy(&BinomialLaw::new(n, p)?, opts.tail_tol)?)
    } else {
        None
    };
    let exact_gap = binomial_entropy.map(|hb| poisson_entropy - hb);

    Ok(PoissonGapReport {
        n,
        p,
        lambda,
        envelope,
        local_bound_used: local_hi,
        ratio_clipped,
        truncation: m,
        truncation_raised: m != closed_form,
        tail_mass,
        tail_entropy,
        tv_only_truncation: tv_only_m,
        tv_only_truncation_raised: tv_only_m != least,
        tv_only_tail_entropy,
        local_tv_bound,
        tv_only_bound,
        poisson_entropy,
        binomial_entropy,
        exact_gap,
    })
}

/// Exact distances between a Bernoulli sum and its Poisson approximation,
/// compared against the Stein envelope.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnvelopeCheck {
    pub n: usize,
    pub envelope: SteinEnvelope,
    pub d_tv: f64,
    pub d_loc: f64,
    pub tv_lower_holds: bool,
    pub tv_upper_holds: bool,
    pub local_holds: bool,
}

impl EnvelopeCheck {
    pub fn all_hold(&self) -> bool {
        self.tv_lower_holds && self.tv_upper_holds && self.local_holds
    }
}

/// Compute the exact Poisson-binomial pmf by convolution and its exact local
/// and total-variation distances to `Po(Σ p_i)` over all of `{0, 1, …}`;
/// violations of the envelope are reported in the flags.
pub fn check_envelope_exact(p_list: &[f64]) -> Result<EnvelopeCheck> {
    let n = p_list.len();
    if n > EXACT_CHECK_LIMIT {
        return Err(domain(
            "summand count",
            format!("{n} exceeds {EXACT_CHECK_LIMIT}"),
        ));
    }
    let exact = bernoulli_sum_pmf(p_list)?;
    let lambda: f64 = p_list.iter().sum();
    let sum_p_sq: f64 = p_list.iter().map(|p| p * p).sum();
    let envelope = stein_envelope(lambda, sum_p_sq)?;
    let poisson = PoissonLaw::new(lambda)?;

    let mut abs_sum = 0.0;
    let mut head = 0.0;
    let mut d_loc = 0.0f64;
    for (j, &b) in exact.probs().iter().enumerate() {
        let q = poisson.pmf(j as u64);
        head += q;
        let diff = (b - q).abs();
        abs_sum += diff;
        d_loc = d_loc.max(diff);
    }
    // the Poisson mode is ⌊λ⌋ ≤ n, so beyond n its pmf is decreasing
    d_loc = d_loc.max(poisson.pmf(n as u64 + 1));
    let d_tv = 0.5 * (abs_sum + (1.0 - head).max(0.0));

    Ok(EnvelopeCheck {
        n,
        envelope,
        d_tv,
        d_loc,
        tv_lower_holds: envelope.tv_lower <= d_tv,
        tv_upper_holds: d_tv <= envelope.tv_upper,
        local_holds: d_loc <= envelope.local_upper,
    })
}
