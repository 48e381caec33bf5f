//! Special functions: the exponentially scaled Bessel `I₀` and `log n!`.

use std::f64::consts::PI;

/// Argument at which [`bessel_i0_scaled`] switches from the power series to
/// the large-argument expansion.
pub const BESSEL_SWITCH: f64 = 20.0;

/// `e^{−x} I₀(x)` for `x ≥ 0`.
///
/// Below [`BESSEL_SWITCH`] the power series `Σ (x²/4)^k / (k!)²` is summed
/// (all terms positive, so no cancellation); above it the asymptotic series
/// `(2πx)^{−1/2} (1 + 1/(8x) + 9/(128x²) + …)` is truncated at its smallest
/// term, which is below `e^{−2x}` relative.
pub fn bessel_i0_scaled(x: f64) -> f64 {
    assert!(
        x >= 0.0 && !x.is_nan(),
        "bessel_i0_scaled needs x >= 0, got {x}"
    );
    if x < BESSEL_SWITCH {
        series(x) * (-x).exp()
    } else {
        asymptotic(x)
    }
}

fn series(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 1.0;
    loop {
        term *= q / (k * k);
        sum += term;
        if term < sum * 1e-17 {
            return sum;
        }
        k += 1.0;
    }
}

fn asymptotic(x: f64) -> f64 {
    let mut term: f64 = 1.0;
    let mut sum = 1.0;
    for k in 1..200 {
        let odd = (2 * k - 1) as f64;
        let next = term * odd * odd / (8.0 * k as f64 * x);
        if next >= term {
            break;
        }
        term = next;
        sum += term;
        if term < sum * 1e-17 {
            break;
        }
    }
    sum / (2.0 * PI * x).sqrt()
}

/// `log(n!)` through the log-gamma function.
pub fn ln_factorial(n: u64) -> f64 {
    if n < 2 {
        0.0
    } else {
        statrs::function::gamma::ln_gamma(n as f64 + 1.0)
    }
}

// n = 1..=15, from a 50-digit evaluation
const SMALL_STIRLING_ERROR: [f64; 15] = [
    0.08106146679532726,
    0.0413406959554093,
    0.02767792568499834,
    0.020790672103765093,
    0.016644691189821193,
    0.013876128823070748,
    0.01189670994589177,
    0.010411265261972096,
    0.009255462182712733,
    0.00833056343336287,
    0.007573675487951841,
    0.00694284010720953,
    0.006408994188004207,
    0.0059513701127588475,
    0.005554733551962801,
];

/// Stirling-series remainder `log n! − [(n + ½) log n − n + ½ log 2π]`.
pub(crate) fn stirling_error(n: u64) -> f64 {
    const S0: f64 = 1.0 / 12.0;
    const S1: f64 = 1.0 / 360.0;
    const S2: f64 = 1.0 / 1260.0;
    const S3: f64 = 1.0 / 1680.0;
    const S4: f64 = 1.0 / 1188.0;
    let x = n as f64;
    if n == 0 {
        return 0.0;
    }
    if n <= 15 {
        return SMALL_STIRLING_ERROR[n as usize - 1];
    }
    let xx = x * x;
    if n > 500 {
        (S0 - S1 / xx) / x
    } else if n > 80 {
        (S0 - (S1 - S2 / xx) / xx) / x
    } else if n > 35 {
        (S0 - (S1 - (S2 - S3 / xx) / xx) / xx) / x
    } else {
        (S0 - (S1 - (S2 - (S3 - S4 / xx) / xx) / xx) / xx) / x
    }
}

/// Deviance term `x log(x/m) + m − x`, evaluated without cancellation when
/// `x` is close to `m`.
pub(crate) fn deviance_term(x: f64, m: f64) -> f64 {
    if (x - m).abs() < 0.1 * (x + m) {
        let v = (x - m) / (x + m);
        let mut sum = (x - m) * v;
        let mut ej = 2.0 * x * v;
        let v2 = v * v;
        for j in 1..1000 {
            ej *= v2;
            let next = sum + ej / (2 * j + 1) as f64;
            if next == sum {
                break;
            }
            sum = next;
        }
        sum
    } else {
        x * (x / m).ln() + m - x
    }
}
