//! Distribution representations, entropy functionals and the special-function
//! numerics shared by the rest of the crate.

mod finite;
mod laws;
mod special;

pub use finite::{
    bernoulli_sum_pmf, binary_entropy, entropy, entropy_of, relative_entropy, FiniteDistribution,
    Label, SUM_TOLERANCE,
};
pub use laws::{binomial_entropy, poisson_entropy, BinomialLaw, PoissonLaw, DEFAULT_TAIL_TOL};
pub use special::{bessel_i0_scaled, ln_factorial, BESSEL_SWITCH};

pub(crate) use finite::{h, neg_xlogx, stable_sum};
pub(crate) use laws::chernoff_exponent;
