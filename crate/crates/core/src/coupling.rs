//! Maximal coupling of two finite distributions.
//!
//! With `p = Σ min{P_X, P_Y}`, draw `J ~ Bernoulli(p)`. If `J = 1` both
//! coordinates equal a draw `U ∝ min{P_X, P_Y}`; otherwise they are drawn
//! independently from the normalized excesses `V ∝ (P_X − P_Y)₊` and
//! `W ∝ (P_Y − P_X)₊`. The marginals are `P_X` and `P_Y`, and
//! `P(X̂ ≠ Ŷ) = 1 − p = d_TV`, the smallest value any coupling can reach.

use rand::RngCore;

use crate::core_dist::{FiniteDistribution, Label};
use crate::distances::align;
use crate::error::{domain, Result};

/// The mixture decomposition behind the maximal coupling.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingParts<L> {
    symbols: Vec<L>,
    p_x: Vec<f64>,
    p_y: Vec<f64>,
    p: f64,
    u: Option<FiniteDistribution<L>>,
    residual: Option<(FiniteDistribution<L>, FiniteDistribution<L>)>,
}

impl<L: Label> CouplingParts<L> {
    /// Unified alphabet, in the order used by every component law.
    pub fn symbols(&self) -> &[L] {
        &self.symbols
    }

    pub fn p_x(&self) -> &[f64] {
        &self.p_x
    }

    pub fn p_y(&self) -> &[f64] {
        &self.p_y
    }

    /// Success probability of the mixing bit, `Σ min{P_X, P_Y}`.
    pub fn p(&self) -> f64 {
        self.p
    }

    /// Law of the common draw; `None` when the supports are disjoint (`p = 0`).
    pub fn u(&self) -> Option<&FiniteDistribution<L>> {
        self.u.as_ref()
    }

    /// Laws `(V, W)` of the excess draws; `None` for identical inputs, where
    /// `p = 1` and the excesses are never used.
    pub fn residual(&self) -> Option<(&FiniteDistribution<L>, &FiniteDistribution<L>)> {
        self.residual.as_ref().map(|(v, w)| (v, w))
    }

    pub fn is_degenerate(&self) -> bool {
        self.residual.is_none()
    }

    /// MAP estimate of the mixing bit from the first coordinate: `true` iff
    /// `P_X(observed) / 2 ≤ P_Y(observed)`.
    pub fn map_estimate(&self, observed: &L) -> Result<bool> {
        let i = self
            .symbols
            .iter()
            .position(|s| s == observed)
            .ok_or_else(|| {
                domain(
                    "observed symbol",
                    format!("{observed:?} is not in the alphabet"),
                )
            })?;
        Ok(self.p_x[i] / 2.0 <= self.p_y[i])
    }

    pub fn sampler(&self) -> CouplingSampler {
        CouplingSampler {
            p: self.p,
            u: self.u.as_ref().map(|d| cdf(d.probs())),
            v: self.residual.as_ref().map(|(v, _)| cdf(v.probs())),
            w: self.residual.as_ref().map(|(_, w)| cdf(w.probs())),
        }
    }
}

/// Build the maximal-coupling decomposition of `(p_x, p_y)`.
pub fn build_maximal_coupling<L: Label>(
    p_x: &FiniteDistribution<L>,
    p_y: &FiniteDistribution<L>,
) -> Result<CouplingParts<L>> {
    let a = align(p_x, p_y);
    let common: Vec<f64> = a.p.iter().zip(&a.q).map(|(x, y)| x.min(*y)).collect();
    let p: f64 = common.iter().sum::<f64>().min(1.0);

    let u = if p > 0.0 {
        let probs = common.iter().map(|c| c / p).collect();
        Some(FiniteDistribution::new(a.symbols.clone(), probs)?)
    } else {
        None
    };

    let residual = if a.p == a.q {
        None
    } else {
        // normalize each excess by its own sum; both equal d_TV analytically,
        // and this keeps the component laws exact even when d_TV is tiny
        let excess = |side: &[f64]| -> Vec<f64> {
            side.iter()
                .zip(&common)
                .map(|(s, c)| (s - c).max(0.0))
                .collect()
        };
        let (ex, ey) = (excess(&a.p), excess(&a.q));
        let (sx, sy): (f64, f64) = (ex.iter().sum(), ey.iter().sum());
        let v = FiniteDistribution::new(a.symbols.clone(), ex.iter().map(|e| e / sx).collect())?;
        let w = FiniteDistribution::new(a.symbols.clone(), ey.iter().map(|e| e / sy).collect())?;
        Some((v, w))
    };

    Ok(CouplingParts {
        symbols: a.symbols,
        p_x: a.p,
        p_y: a.q,
        p: if residual.is_none() { 1.0 } else { p },
        u,
        residual,
    })
}

/// `P(X̂ = Ŷ)` under the maximal coupling; equals `1 − d_TV`.
pub fn coupling_equal_probability<L: Label>(parts: &CouplingParts<L>) -> f64 {
    parts.p()
}

/// One draw from the coupling, as indices into [`CouplingParts::symbols`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoupledDraw {
    /// The mixing bit `J`.
    pub common: bool,
    pub x: usize,
    pub y: usize,
}

/// Inverse-CDF sampler over precomputed cumulative sums.
#[derive(Debug, Clone)]
pub struct CouplingSampler {
    p: f64,
    u: Option<Vec<f64>>,
    v: Option<Vec<f64>>,
    w: Option<Vec<f64>>,
}

impl CouplingSampler {
    pub fn sample<R: RngCore + ?Sized>(&self, rng: &mut R) -> CoupledDraw {
        let common = unit_interval(rng) < self.p;
        if common {
            let cdf = self.u.as_ref().expect("p > 0 implies a common law");
            let i = invert(cdf, unit_interval(rng));
            CoupledDraw { common, x: i, y: i }
        } else {
            let v = self.v.as_ref().expect("p < 1 implies excess laws");
            let w = self.w.as_ref().expect("p < 1 implies excess laws");
            let x = invert(v, unit_interval(rng));
            let y = invert(w, unit_interval(rng));
            CoupledDraw { common, x, y }
        }
    }
}

/// Convenience wrapper returning the drawn symbols.
pub fn sample_coupling<'a, L: Label, R: RngCore + ?Sized>(
    parts: &'a CouplingParts<L>,
    sampler: &CouplingSampler,
    rng: &mut R,
) -> (&'a L, &'a L) {
    let d = sampler.sample(rng);
    (&parts.symbols[d.x], &parts.symbols[d.y])
}

/// Uniform draw on `[0, 1)` from the top 53 bits of a 64-bit word.
fn unit_interval<R: RngCore + ?Sized>(rng: &mut R) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

fn cdf(probs: &[f64]) -> Vec<f64> {
    let mut acc = 0.0;
    let mut out: Vec<f64> = probs
        .iter()
        .map(|p| {
            acc += p;
            acc
        })
        .collect();
    // the final symbol with positive mass closes the interval
    if let Some(last) = probs.iter().rposition(|&p| p > 0.0) {
        for c in &mut out[last..] {
            *c = 1.0;
        }
    }
    out
}

fn invert(cdf: &[f64], x: f64) -> usize {
    cdf.partition_point(|&c| c <= x).min(cdf.len() - 1)
}
