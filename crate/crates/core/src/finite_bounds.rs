//! Entropy-difference bounds on finite alphabets.
//!
//! Let `ε = d_TV(X, Y)`, `α = d_loc(X, Y) / ε ∈ [2/M, 1]` and `M` the alphabet
//! size. The classical total-variation bound is
//! `|H(X) − H(Y)| ≤ ε log(M − 1) + h(ε)` (for `ε ≤ 1 − 1/M`). Knowing the
//! local distance as well lets `M − 1` shrink to `Mα − 1`, and further to
//! `(Mα − 1)/4` when the two pmfs are within a factor of two of each other.

use serde::Serialize;

use crate::core_dist::{h, neg_xlogx, relative_entropy, FiniteDistribution, Label};
use crate::distances::{align, DistancePair};
use crate::error::{domain, not_applicable, Error, Result};

/// Absolute tolerance on the constraints of [`residual_objective`].
pub const FEASIBILITY_TOL: f64 = 1e-9;

/// Slack allowed when checking that `α = d_loc / d_TV` lies in `[2/M, 1]`.
const ALPHA_SLACK: f64 = 1e-9;

fn check_alphabet(m: usize) -> Result<()> {
    if m < 2 {
        return Err(domain("alphabet size", format!("M = {m}, need at least 2")));
    }
    Ok(())
}

fn check_unit(what: &'static str, x: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&x) {
        return Err(domain(what, format!("{x} not in [0, 1]")));
    }
    Ok(())
}

/// Validate `α ∈ [2/M, 1]` up to rounding slack and clamp it into range.
fn checked_alpha(alpha: f64, m: usize) -> Result<f64> {
    check_alphabet(m)?;
    let lo = 2.0 / m as f64;
    if !(alpha >= lo - ALPHA_SLACK && alpha <= 1.0 + ALPHA_SLACK) {
        return Err(domain(
            "local/total-variation ratio",
            format!("α = {alpha} not in [{lo}, 1]"),
        ));
    }
    Ok(alpha.clamp(lo, 1.0))
}

/// Classical total-variation bound: `ε log(M − 1) + h(ε)` for
/// `ε ≤ 1 − 1/M`, otherwise `log M`. Tight in both regimes.
pub fn zhang_bound(d_tv: f64, m: usize) -> Result<f64> {
    check_alphabet(m)?;
    check_unit("total variation distance", d_tv)?;
    let m = m as f64;
    if d_tv <= 1.0 - 1.0 / m {
        Ok(d_tv * (m - 1.0).ln() + h(d_tv))
    } else {
        Ok(m.ln())
    }
}

/// Bound from both distances: `ε log(Mα − 1) + h(ε)` with `α = d_loc / ε`.
///
/// Returns 0 for identical laws (`ε = 0`). `Mα − 1` is clamped at 1 so that
/// rounding at `α = 2/M` cannot produce a negative logarithm.
pub fn local_tv_bound(d_tv: f64, d_loc: f64, m: usize) -> Result<f64> {
    check_alphabet(m)?;
    check_unit("total variation distance", d_tv)?;
    check_unit("local distance", d_loc)?;
    if d_tv == 0.0 {
        if d_loc > 0.0 {
            return Err(domain(
                "local distance",
                format!("{d_loc} exceeds d_TV = 0"),
            ));
        }
        return Ok(0.0);
    }
    let alpha = checked_alpha(d_loc / d_tv, m)?;
    Ok(local_tv_from_alpha(d_tv, alpha, m))
}

fn local_tv_from_alpha(d_tv: f64, alpha: f64, m: usize) -> f64 {
    d_tv * (m as f64 * alpha - 1.0).max(1.0).ln() + h(d_tv)
}

/// [`local_tv_bound`] tightened by `ε log 4`: valid when
/// [`ratio_condition`] holds. The value may be negative when `Mα − 1 < 4`;
/// it is returned as is.
pub fn local_tv_bound_refined(d_tv: f64, d_loc: f64, m: usize) -> Result<f64> {
    Ok(local_tv_bound(d_tv, d_loc, m)? - d_tv * 4f64.ln())
}

/// Whether `½ ≤ P_X(a) / P_Y(a) ≤ 2` at every symbol. A symbol where exactly
/// one of the two masses vanishes fails the test.
pub fn ratio_condition<L: Label>(p_x: &FiniteDistribution<L>, p_y: &FiniteDistribution<L>) -> bool {
    let a = align(p_x, p_y);
    ratio_condition_aligned(&a.p, &a.q)
}

fn ratio_condition_aligned(p: &[f64], q: &[f64]) -> bool {
    p.iter().zip(q).all(|(&x, &y)| match (x > 0.0, y > 0.0) {
        (false, false) => true,
        (true, true) => x <= 2.0 * y && y <= 2.0 * x,
        _ => false,
    })
}

/// `(⌊1/α⌋, ⌈1/α⌉)`, snapping `1/α` to the nearest integer when it is within
/// rounding distance of one.
fn reciprocal_floor_ceil(alpha: f64) -> (f64, f64) {
    let r = 1.0 / alpha;
    let nearest = r.round();
    if (r - nearest).abs() <= 1e-9 * r {
        (nearest, nearest)
    } else {
        (r.floor(), r.ceil())
    }
}

/// Maximum of `H(s) − H(t)` over pairs of pmfs `(s, t)` on `M` symbols with
/// disjoint supports and `s_i + t_i ≤ α`, in closed form:
/// `log(M − ⌈1/α⌉) + α⌊1/α⌋ log α + (1 − α⌊1/α⌋) log(1 − α⌊1/α⌋)`.
///
/// This is the quantity the excess laws of the maximal coupling are subject
/// to, and the source of the `Mα − 1` factor in [`local_tv_bound`].
pub fn max_residual_entropy_gap(alpha: f64, m: usize) -> Result<f64> {
    let alpha = checked_alpha(alpha, m)?;
    let (fl, ce) = reciprocal_floor_ceil(alpha);
    let head = (m as f64 - ce).ln();
    if fl == ce {
        return Ok(head + alpha.ln());
    }
    let filled = alpha * fl;
    let rest = (1.0 - filled).max(0.0);
    Ok(head - fl * neg_xlogx(alpha) - neg_xlogx(rest))
}

/// `log(Mα − 1)`, an upper bound on [`max_residual_entropy_gap`] that is
/// attained exactly when `1/α` is an integer.
pub fn max_residual_entropy_gap_upper(alpha: f64, m: usize) -> Result<f64> {
    let alpha = checked_alpha(alpha, m)?;
    Ok((m as f64 * alpha - 1.0).max(1.0).ln())
}

/// Objective `H(s) − H(t)` at a feasible point of the residual problem.
///
/// Feasibility (each to [`FEASIBILITY_TOL`]): equal lengths, non-negative
/// entries, `s_i t_i = 0`, `s_i + t_i ≤ α`, and both vectors summing to one.
pub fn residual_objective(s: &[f64], t: &[f64], alpha: f64) -> Result<f64> {
    let infeasible = |msg: String| Err(Error::Infeasible(msg));
    if s.len() != t.len() {
        return infeasible(format!("lengths differ: {} vs {}", s.len(), t.len()));
    }
    for (i, (&a, &b)) in s.iter().zip(t).enumerate() {
        if a < -FEASIBILITY_TOL || b < -FEASIBILITY_TOL {
            return infeasible(format!(
                "non-negativity fails at index {i}: s = {a}, t = {b}"
            ));
        }
        if a * b > FEASIBILITY_TOL {
            return infeasible(format!(
                "disjoint supports fail at index {i}: s·t = {}",
                a * b
            ));
        }
        if a + b > alpha + FEASIBILITY_TOL {
            return infeasible(format!(
                "cap s + t ≤ α fails at index {i}: {} > {alpha}",
                a + b
            ));
        }
    }
    for (name, v) in [("s", s), ("t", t)] {
        let sum: f64 = v.iter().sum();
        if (sum - 1.0).abs() > FEASIBILITY_TOL {
            return infeasible(format!("{name} sums to {sum}"));
        }
    }
    let ent = |v: &[f64]| v.iter().map(|&x| neg_xlogx(x.max(0.0))).sum::<f64>();
    Ok(ent(s) - ent(t))
}

/// The point at which [`max_residual_entropy_gap`] is attained: `t` fills
/// `⌊1/α⌋` symbols with `α` and puts the remainder on one more; `s` is
/// uniform on the last `M − ⌈1/α⌉` symbols.
///
/// The point is only feasible when `⌈1/α⌉ ≤ M/2`; otherwise the residual
/// problem has no feasible point at all and [`residual_objective`] rejects it.
pub fn extremal_residual_point(alpha: f64, m: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let alpha = checked_alpha(alpha, m)?;
    let (fl, ce) = reciprocal_floor_ceil(alpha);
    let (l, c) = (fl as usize, ce as usize);
    let mut t = vec![0.0; m];
    let mut s = vec![0.0; m];
    for x in &mut t[..l] {
        *x = alpha;
    }
    if c > l {
        t[l] = (1.0 - alpha * fl).max(0.0);
    }
    let share = 1.0 / (m - c) as f64;
    for x in &mut s[c..] {
        *x = share;
    }
    Ok((s, t))
}

/// `ε₁ log(M ε₂ − 1) + h(ε₁)` for any `ε₁ ≥ d_TV` and `ε₂ ≥ α`, valid while
/// `ε₁ ≤ 1 − 1/(M ε₂)`, the range on which it is nondecreasing in `ε₁`.
pub fn relaxed_local_tv_bound(eps1: f64, eps2: f64, m: usize) -> Result<f64> {
    check_alphabet(m)?;
    check_unit("total variation bound", eps1)?;
    if !(eps2 > 0.0 && eps2 <= 1.0) {
        return Err(domain("ratio bound", format!("{eps2} not in (0, 1]")));
    }
    let me = m as f64 * eps2;
    if eps1 > 1.0 - 1.0 / me {
        return Err(not_applicable(format!(
            "ε₁ = {eps1} exceeds 1 − 1/(M ε₂) = {}",
            1.0 - 1.0 / me
        )));
    }
    // the first term may be negative: the condition only keeps Mε₂ − 1 ≥ ε₁/(1 − ε₁)
    let lead = if eps1 == 0.0 {
        0.0
    } else {
        eps1 * (me - 1.0).ln()
    };
    Ok(lead + h(eps1))
}

/// `ε log((M − N)/N) + h(ε)`, the bound for `α ≤ 1/N`.
pub fn alpha_reciprocal_bound(d_tv: f64, m: usize, n: usize) -> Result<f64> {
    check_alphabet(m)?;
    check_unit("total variation distance", d_tv)?;
    if n == 0 || n > m / 2 {
        return Err(domain(
            "reciprocal ratio N",
            format!("N = {n} not in [1, {}]", m / 2),
        ));
    }
    Ok(d_tv * ((m - n) as f64 / n as f64).ln() + h(d_tv))
}

/// Bound from the local distance alone: `−M d log d`, valid for `d ≤ 1/e`.
pub fn local_only_bound(d_loc: f64, m: usize) -> Result<f64> {
    check_alphabet(m)?;
    if d_loc < 0.0 || d_loc.is_nan() {
        return Err(domain("local distance", format!("{d_loc} is negative")));
    }
    if d_loc > (-1.0f64).exp() {
        return Err(not_applicable(format!(
            "local distance {d_loc} exceeds 1/e"
        )));
    }
    Ok(m as f64 * neg_xlogx(d_loc))
}

/// Whether the exact gap respects each computed bound (to `1e-12`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DominanceFlags {
    pub local_tv_le_zhang: bool,
    pub gap_le_zhang: bool,
    pub gap_le_local_tv: bool,
    pub gap_le_refined: Option<bool>,
    pub gap_le_local_only: Option<bool>,
}

impl DominanceFlags {
    pub fn all_hold(&self) -> bool {
        self.local_tv_le_zhang
            && self.gap_le_zhang
            && self.gap_le_local_tv
            && self.gap_le_refined.unwrap_or(true)
            && self.gap_le_local_only.unwrap_or(true)
    }
}

/// Every applicable finite-alphabet bound for a pair of pmfs, with the exact
/// gap and the distances they were computed from.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FiniteBoundReport {
    pub d_tv: f64,
    pub d_loc: f64,
    pub alpha: Option<f64>,
    pub alphabet_size: usize,
    pub zhang: f64,
    pub local_tv: f64,
    /// Present only when [`ratio_condition`] holds.
    pub refined: Option<f64>,
    /// Present only when `d_loc ≤ 1/e`.
    pub local_only: Option<f64>,
    pub ratio_condition_holds: bool,
    pub exact_gap: f64,
    pub dominance: DominanceFlags,
}

const DOMINANCE_SLACK: f64 = 1e-12;

pub fn entropy_gap_report<L: Label>(
    p_x: &FiniteDistribution<L>,
    p_y: &FiniteDistribution<L>,
) -> FiniteBoundReport {
    let a = align(p_x, p_y);
    let m = a.len().max(2);
    let pair = DistancePair::from_aligned(&a.p, &a.q);
    let exact_gap = (crate::core_dist::entropy_of(&a.p) - crate::core_dist::entropy_of(&a.q)).abs();

    let zhang = zhang_bound(pair.d_tv, m).expect("d_TV in [0, 1]");
    let local_tv = match pair.alpha {
        Some(alpha) => local_tv_from_alpha(pair.d_tv, alpha, m),
        None => 0.0,
    };
    let ratio_condition_holds = ratio_condition_aligned(&a.p, &a.q);
    let refined = ratio_condition_holds.then(|| local_tv - pair.d_tv * 4f64.ln());
    let local_only = local_only_bound(pair.d_loc, m).ok();

    let le = |bound: f64| exact_gap <= bound + DOMINANCE_SLACK;
    let dominance = DominanceFlags {
        local_tv_le_zhang: local_tv <= zhang + DOMINANCE_SLACK,
        gap_le_zhang: le(zhang),
        gap_le_local_tv: le(local_tv),
        gap_le_refined: refined.map(le),
        gap_le_local_only: local_only.map(le),
    };
    FiniteBoundReport {
        d_tv: pair.d_tv,
        d_loc: pair.d_loc,
        alpha: pair.alpha,
        alphabet_size: a.len(),
        zhang,
        local_tv,
        refined,
        local_only,
        ratio_condition_holds,
        exact_gap,
        dominance,
    }
}

/// Perturbation of the uniform law on `M` symbols:
/// `P(a_i) = (1 + u_i ξ_i) / M` with signs `u_i = ±1` and `ξ_i ≥ 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NearUniformSpec {
    signs: Vec<i8>,
    xi: Vec<f64>,
}

impl NearUniformSpec {
    /// Validates `Σ u_i ξ_i = 0` (to `1e-12`) and `0 ≤ 1 + u_i ξ_i ≤ M`.
    pub fn new(signs: Vec<i8>, xi: Vec<f64>) -> Result<Self> {
        let bad = |msg: String| Err(Error::Infeasible(msg));
        let m = xi.len();
        if signs.len() != m {
            return bad(format!("{} signs for {m} deviations", signs.len()));
        }
        if m < 2 {
            return bad(format!("alphabet size {m} is below 2"));
        }
        let mut balance = 0.0;
        for (i, (&u, &x)) in signs.iter().zip(&xi).enumerate() {
            if u != 1 && u != -1 {
                return bad(format!("sign at index {i} is {u}, expected ±1"));
            }
            if !(x >= 0.0 && x.is_finite()) {
                return bad(format!("deviation at index {i} is {x}"));
            }
            let mass = 1.0 + f64::from(u) * x;
            if !(0.0..=m as f64).contains(&mass) {
                return bad(format!("1 + u ξ = {mass} at index {i} outside [0, {m}]"));
            }
            balance += f64::from(u) * x;
        }
        if balance.abs() > 1e-12 {
            return bad(format!("signed deviations sum to {balance}"));
        }
        Ok(Self { signs, xi })
    }

    /// Alternating signs `−, +, −, …` with a common deviation `β`.
    pub fn alternating(m: usize, beta: f64) -> Result<Self> {
        let signs = (0..m).map(|i| if i % 2 == 0 { -1 } else { 1 }).collect();
        Self::new(signs, vec![beta; m])
    }

    pub fn len(&self) -> usize {
        self.xi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xi.is_empty()
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn xi(&self) -> &[f64] {
        &self.xi
    }

    pub fn xi_avg(&self) -> f64 {
        self.xi.iter().sum::<f64>() / self.len() as f64
    }

    pub fn xi_max(&self) -> f64 {
        self.xi.iter().copied().fold(0.0, f64::max)
    }

    /// `ξ_max / ξ_avg ∈ [1, M/2]`; `None` for the uniform law.
    pub fn peak_ratio(&self) -> Option<f64> {
        let avg = self.xi_avg();
        (avg > 0.0).then(|| self.xi_max() / avg)
    }
}

pub fn near_uniform_pmf(spec: &NearUniformSpec) -> FiniteDistribution<usize> {
    let m = spec.len() as f64;
    let probs = spec
        .signs
        .iter()
        .zip(&spec.xi)
        .map(|(&u, &x)| (1.0 + f64::from(u) * x) / m)
        .collect();
    FiniteDistribution::from_probs(probs).expect("validated near-uniform spec")
}

/// `log M − (ξ_avg/2) log(2K − 1) − h(ξ_avg/2)` with `K = ξ_max/ξ_avg`: a
/// lower bound on the entropy of [`near_uniform_pmf`] obtained by comparing
/// it with the uniform law.
pub fn near_uniform_entropy_lower_bound(spec: &NearUniformSpec) -> f64 {
    let log_m = (spec.len() as f64).ln();
    match spec.peak_ratio() {
        None => log_m,
        Some(k) => {
            let half = spec.xi_avg() / 2.0;
            log_m - half * (2.0 * k - 1.0).max(1.0).ln() - h(half.min(1.0))
        }
    }
}

/// The product of the two marginals of a joint pmf labelled by `(i, j)`.
fn product_of_marginals(
    joint: &FiniteDistribution<(usize, usize)>,
    dims: (usize, usize),
) -> Result<FiniteDistribution<(usize, usize)>> {
    let (mx, my) = dims;
    if mx == 0 || my == 0 || joint.len() != mx * my {
        return Err(domain(
            "joint alphabet",
            format!("{} symbols for a {mx}×{my} product", joint.len()),
        ));
    }
    let mut seen = vec![false; mx * my];
    let mut px = vec![0.0; mx];
    let mut py = vec![0.0; my];
    for (&(i, j), p) in joint.iter() {
        if i >= mx || j >= my {
            return Err(domain(
                "joint alphabet",
                format!("symbol ({i}, {j}) outside {mx}×{my}"),
            ));
        }
        seen[i * my + j] = true;
        px[i] += p;
        py[j] += p;
    }
    if seen.iter().any(|s| !s) {
        return Err(domain("joint alphabet", "missing product symbols"));
    }
    let probs = joint
        .symbols()
        .iter()
        .map(|&(i, j)| px[i] * py[j])
        .collect();
    FiniteDistribution::new(joint.symbols().to_vec(), probs)
}

/// `I(X; Y) = D(P_XY ‖ P_X × P_Y)`, exactly.
pub fn mutual_information(
    joint: &FiniteDistribution<(usize, usize)>,
    dims: (usize, usize),
) -> Result<f64> {
    let product = product_of_marginals(joint, dims)?;
    relative_entropy(joint, &product)
}

/// Upper bound on `I(X; Y) = H(P_X × P_Y) − H(P_XY)` from the local and
/// total-variation distances between the joint law and the product of its
/// marginals, on the product alphabet of size `Mx · My`.
pub fn mutual_information_bound(
    joint: &FiniteDistribution<(usize, usize)>,
    dims: (usize, usize),
) -> Result<f64> {
    let product = product_of_marginals(joint, dims)?;
    let pair = DistancePair::from_aligned(joint.probs(), product.probs());
    let m = (dims.0 * dims.1).max(2);
    Ok(match pair.alpha {
        Some(alpha) => local_tv_from_alpha(pair.d_tv, alpha, m),
        None => 0.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core_dist::entropy;

    const H_025: f64 = 0.562_335_144_618_808_3;
    const H_02: f64 = 0.500_402_423_538_187_9;
    const H_01: f64 = 0.325_082_973_391_448_2;

    #[test]
    fn zhang_examples() {
        assert_eq!(zhang_bound(0.0, 5).unwrap(), 0.0);
        let b = zhang_bound(0.4, 3).unwrap();
        assert!((b - (h(0.4) + 0.4 * 2f64.ln())).abs() < 1e-15);
        assert!((zhang_bound(0.9, 3).unwrap() - 3f64.ln()).abs() < 1e-15);
        assert!(zhang_bound(0.5, 1).is_err());
        assert!(zhang_bound(1.5, 3).is_err());
    }

    #[test]
    fn local_tv_examples() {
        // α = 1 reduces to the classical bound
        let a = local_tv_bound(0.3, 0.3, 6).unwrap();
        assert!((a - zhang_bound(0.3, 6).unwrap()).abs() < 1e-15);
        assert!((local_tv_bound(0.2, 0.1, 4).unwrap() - H_02).abs() < 1e-15);
        // alternating pmf, M = 8, β = 0.5
        let b = local_tv_bound(0.25, 0.0625, 8).unwrap();
        assert!((b - H_025).abs() < 1e-15);
        assert!((b - 0.562).abs() < 1e-3);
        let r = local_tv_bound_refined(0.25, 0.0625, 8).unwrap();
        assert!((r - (H_025 - 0.5 * 2f64.ln())).abs() < 1e-15);
        assert!((r - 0.216).abs() < 1e-3);
        assert_eq!(local_tv_bound(0.0, 0.0, 4).unwrap(), 0.0);
        assert!(local_tv_bound(0.4, 0.1, 4).is_err());
        assert!(local_tv_bound(0.0, 0.1, 4).is_err());
    }

    #[test]
    fn ratio_condition_examples() {
        let p = FiniteDistribution::from_probs(vec![0.9, 0.1]).unwrap();
        let q = FiniteDistribution::from_probs(vec![0.3, 0.7]).unwrap();
        assert!(ratio_condition(&p, &p));
        assert!(!ratio_condition(&p, &q));
        let z = FiniteDistribution::from_probs(vec![1.0, 0.0]).unwrap();
        let near = FiniteDistribution::from_probs(vec![0.99, 0.01]).unwrap();
        assert!(!ratio_condition(&z, &near));
    }

    #[test]
    fn residual_gap_examples() {
        assert!((max_residual_entropy_gap(1.0, 7).unwrap() - 6f64.ln()).abs() < 1e-15);
        assert!(max_residual_entropy_gap(0.25, 8).unwrap().abs() < 1e-15);
        let g = max_residual_entropy_gap(0.4, 5).unwrap();
        assert!((g + 0.361_772_987_426_198_8).abs() < 1e-14, "{g}");
        assert_eq!(max_residual_entropy_gap_upper(0.5, 4).unwrap(), 0.0);
        assert_eq!(max_residual_entropy_gap(0.5, 4).unwrap(), 0.0);
        assert_eq!(max_residual_entropy_gap_upper(0.4, 5).unwrap(), 0.0);
        assert!(max_residual_entropy_gap(0.1, 5).is_err());
    }

    #[test]
    fn extremal_point_attains_closed_form() {
        for (alpha, m) in [(1.0, 4), (0.5, 6), (0.3, 8), (1.0 / 3.0, 7), (0.45, 8)] {
            let (s, t) = extremal_residual_point(alpha, m).unwrap();
            let v = residual_objective(&s, &t, alpha).unwrap();
            assert!((v - max_residual_entropy_gap(alpha, m).unwrap()).abs() < 1e-12);
        }
        // ⌈1/α⌉ = 3 > M/2: the construction is not feasible
        let (s, t) = extremal_residual_point(0.4, 5).unwrap();
        assert!(matches!(
            residual_objective(&s, &t, 0.4),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn feasibility_messages_name_the_constraint() {
        let err = residual_objective(&[0.5, 0.5], &[0.5, 0.5], 1.0).unwrap_err();
        assert!(err.to_string().contains("disjoint"));
        let err = residual_objective(&[1.0, 0.0], &[0.0, 1.0], 0.5).unwrap_err();
        assert!(err.to_string().contains("cap"));
        let err = residual_objective(&[0.5, 0.0], &[0.0, 1.0], 1.0).unwrap_err();
        assert!(err.to_string().contains("sums"));
    }

    #[test]
    fn relaxed_examples() {
        let v = relaxed_local_tv_bound(0.1, 0.2, 100).unwrap();
        assert!((v - (0.1 * 19f64.ln() + H_01)).abs() < 1e-15);
        assert!((v - 0.619_526_871_308_092_3).abs() < 1e-14);
        let z = relaxed_local_tv_bound(0.3, 1.0, 5).unwrap();
        assert!((z - zhang_bound(0.3, 5).unwrap()).abs() < 1e-15);
        assert_eq!(relaxed_local_tv_bound(0.0, 0.5, 10).unwrap(), 0.0);
        assert!(matches!(
            relaxed_local_tv_bound(0.9, 0.2, 10),
            Err(Error::NotApplicable(_))
        ));
    }

    #[test]
    fn reciprocal_examples() {
        assert!((alpha_reciprocal_bound(0.25, 8, 4).unwrap() - H_025).abs() < 1e-15);
        let one = alpha_reciprocal_bound(0.3, 7, 1).unwrap();
        assert!((one - zhang_bound(0.3, 7).unwrap()).abs() < 1e-15);
        assert!(alpha_reciprocal_bound(0.3, 7, 4).is_err());
        assert!(alpha_reciprocal_bound(0.3, 7, 0).is_err());
    }

    #[test]
    fn local_only_examples() {
        assert_eq!(local_only_bound(0.0, 3).unwrap(), 0.0);
        let v = local_only_bound(0.1, 2).unwrap();
        assert!((v - 0.460_517_018_598_809_1).abs() < 1e-15);
        assert!(v >= H_01);
        let e = (-1.0f64).exp();
        assert!((local_only_bound(e, 3).unwrap() - 1.103_638_323_514_327).abs() < 1e-14);
        assert!(matches!(
            local_only_bound(1.0, 2),
            Err(Error::NotApplicable(_))
        ));
    }

    #[test]
    fn report_on_alternating_pair() {
        let spec = NearUniformSpec::alternating(8, 0.5).unwrap();
        let x = near_uniform_pmf(&spec);
        let y = FiniteDistribution::uniform(8).unwrap();
        let r = entropy_gap_report(&x, &y);
        assert!((r.exact_gap - (2f64.ln() - H_025)).abs() < 1e-14);
        assert!((r.exact_gap - 0.131).abs() < 1e-3);
        assert!((r.local_tv - H_025).abs() < 1e-14);
        assert!((r.refined.unwrap() - 0.216).abs() < 1e-3);
        assert!(r.ratio_condition_holds);
        assert!(r.dominance.all_hold());
        // uniform reference: the gap is the relative entropy
        let d = relative_entropy(&x, &y).unwrap();
        assert!((entropy(&y) - entropy(&x) - d).abs() < 1e-14);
    }

    #[test]
    fn report_on_identical_pair() {
        let p = FiniteDistribution::from_probs(vec![0.1, 0.2, 0.7]).unwrap();
        let r = entropy_gap_report(&p, &p);
        assert_eq!((r.zhang, r.local_tv, r.exact_gap), (0.0, 0.0, 0.0));
        assert_eq!(r.refined, Some(0.0));
        assert_eq!(r.local_only, Some(0.0));
        assert_eq!(r.alpha, None);
    }

    #[test]
    fn near_uniform_examples() {
        let flat = NearUniformSpec::new(vec![1, -1, 1, -1], vec![0.0; 4]).unwrap();
        assert_eq!(near_uniform_pmf(&flat).probs(), &[0.25; 4]);
        assert_eq!(near_uniform_entropy_lower_bound(&flat), 4f64.ln());
        let spec = NearUniformSpec::new(vec![1, -1, 1, -1], vec![0.2, 0.4, 0.2, 0.0]).unwrap();
        assert!((spec.peak_ratio().unwrap() - 0.4 / 0.2).abs() < 1e-15);
        let lb = near_uniform_entropy_lower_bound(&spec);
        assert!(lb <= entropy(&near_uniform_pmf(&spec)));
        let alt = NearUniformSpec::alternating(6, 0.3).unwrap();
        assert_eq!(alt.peak_ratio(), Some(1.0));
        let lb = near_uniform_entropy_lower_bound(&alt);
        assert!((lb - (6f64.ln() - h(0.15))).abs() < 1e-15);
        assert!(NearUniformSpec::new(vec![1, 1], vec![0.1, 0.1]).is_err());
        assert!(NearUniformSpec::new(vec![1, -1], vec![2.0, 2.0]).is_err());
    }

    #[test]
    fn mutual_information_examples() {
        let symbols = vec![(0, 0), (0, 1), (1, 0), (1, 1)];
        let indep = FiniteDistribution::new(symbols.clone(), vec![0.25; 4]).unwrap();
        assert_eq!(mutual_information_bound(&indep, (2, 2)).unwrap(), 0.0);
        let corr = FiniteDistribution::new(symbols.clone(), vec![0.5, 0.0, 0.0, 0.5]).unwrap();
        let exact = mutual_information(&corr, (2, 2)).unwrap();
        assert!((exact - 2f64.ln()).abs() < 1e-15);
        assert!(mutual_information_bound(&corr, (2, 2)).unwrap() >= exact);
        assert!(mutual_information_bound(&corr, (3, 2)).is_err());
    }
}
