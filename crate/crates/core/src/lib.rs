//! Entropy-difference bounds for discrete random variables.
//!
//! Given two probability mass functions, the crate computes their local
//! (`l∞`) and total-variation distances and turns them into upper bounds on
//! `|H(X) − H(Y)|`. Knowing the local distance on top of the total-variation
//! distance tightens the classical bound, sometimes dramatically.
//!
//! The pieces:
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`core_dist`] | finite pmfs, entropy functionals, Poisson/binomial laws, special functions |
//! | [`distances`] | local distance, total variation, their ratio |
//! | [`coupling`] | maximal-coupling construction, seeded sampler, MAP bit estimator |
//! | [`finite_bounds`] | entropy-gap bounds on finite alphabets |
//! | [`countable_bounds`] | bounds against a countably supported law via truncation |
//! | [`poisson_stein`] | Stein-method distance envelopes and the Poisson/binomial gap |
//!
//! All logarithms are natural; entropies are in nats; `0 · log 0 = 0`.

pub mod core_dist;
pub mod countable_bounds;
pub mod coupling;
pub mod distances;
mod error;
pub mod finite_bounds;
pub mod poisson_stein;

pub use core_dist::{
    bernoulli_sum_pmf, bessel_i0_scaled, binary_entropy, entropy, relative_entropy, BinomialLaw,
    FiniteDistribution, Label, PoissonLaw,
};
pub use distances::{distance_pair, local_distance, total_variation, DistancePair};
pub use error::{Error, Result};
