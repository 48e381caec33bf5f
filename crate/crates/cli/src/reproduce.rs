//! Published numeric examples, re-derived through the library and compared
//! against the quoted values with pinned tolerances.

use entropy_gap::finite_bounds::{
    entropy_gap_report, near_uniform_pmf, zhang_bound, NearUniformSpec,
};
use entropy_gap::poisson_stein::{
    alpha_asymptotic_upper, binomial_poisson_gap, GapOptions, PoissonGapReport,
};
use entropy_gap::{distance_pair, entropy, FiniteDistribution};
use serde::Serialize;
use serde_json::json;

use crate::error::{CliError, Result};
use crate::report::{tree, Report};

/// Case identifiers, in run order.
pub const CASES: [&str; 5] = [
    "poisson-p0.1",
    "poisson-p0.01",
    "near-uniform",
    "tightness",
    "asymptotic-ratio",
];

/// `ln` of the smallest positive double: a tail certificate below this
/// legitimately prints as zero.
const LN_MIN_SUBNORMAL: f64 = -744.440_072_190_639;

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub case: &'static str,
    pub name: String,
    pub value: f64,
    pub lower: f64,
    pub upper: f64,
    pub pass: bool,
}

impl Check {
    fn within(
        case: &'static str,
        name: impl Into<String>,
        value: f64,
        expected: f64,
        tol: f64,
    ) -> Self {
        Self::range(case, name, value, expected - tol, expected + tol)
    }

    fn range(
        case: &'static str,
        name: impl Into<String>,
        value: f64,
        lower: f64,
        upper: f64,
    ) -> Self {
        Self {
            case,
            name: name.into(),
            value,
            lower,
            upper,
            pass: lower <= value && value <= upper,
        }
    }

    fn line(&self) -> String {
        format!(
            "{} {}/{}: {:.10e} in [{:.10e}, {:.10e}]",
            if self.pass { "PASS" } else { "FAIL" },
            self.case,
            self.name,
            self.value,
            self.lower,
            self.upper
        )
    }
}

/// Run the selected cases (all when `selected` is empty). Returns the report
/// and the number of failed checks; PASS/FAIL lines go to stderr.
pub fn run(selected: &[String]) -> Result<(Report, usize)> {
    for id in selected {
        if !CASES.contains(&id.as_str()) {
            return Err(CliError::Usage(format!(
                "unknown case {id:?}; known cases: {}",
                CASES.join(", ")
            )));
        }
    }
    let mut checks = Vec::new();
    for id in CASES {
        if selected.is_empty() || selected.iter().any(|s| s == id) {
            checks.extend(run_case(id)?);
        }
    }
    for c in &checks {
        eprintln!("{}", c.line());
    }
    let failed = checks.iter().filter(|c| !c.pass).count();
    let cases: Vec<&str> = if selected.is_empty() {
        CASES.to_vec()
    } else {
        CASES
            .iter()
            .copied()
            .filter(|id| selected.iter().any(|s| s == id))
            .collect()
    };
    let results = json!({
        "checks": tree(&checks)?,
        "total": checks.len(),
        "failed": failed,
    });
    let report = Report::new("reproduce", None, json!({ "cases": cases }), results)
        .flag("all_pass", failed == 0);
    Ok((report, failed))
}

fn run_case(id: &'static str) -> Result<Vec<Check>> {
    match id {
        "poisson-p0.1" => {
            let r = binomial_poisson_gap(1_000_000, 0.1, GapOptions::default())?;
            let mut c = poisson_common(id, &r, 1.483, 1.707, 7.175);
            c.extend([
                Check::within(id, "tv_upper", r.envelope.tv_upper, 0.1, 0.0),
                Check::within(id, "tv_lower", r.envelope.tv_lower, 9.5e-3, 0.05e-3),
                Check::within(id, "local_upper", r.envelope.local_upper, 1.0e-3, 0.05e-3),
                Check::within(id, "truncation", r.truncation as f64, 1_000_002.0, 0.0),
                Check::within(
                    id,
                    "tv_only_truncation",
                    r.tv_only_truncation as f64,
                    1_000_002.0,
                    0.0,
                ),
                Check::within(id, "tail_entropy", r.tail_entropy.value, 0.0, 0.0),
                Check::range(
                    id,
                    "tail_entropy_log",
                    r.tail_entropy.log_value,
                    f64::MIN,
                    LN_MIN_SUBNORMAL,
                ),
            ]);
            Ok(c)
        }
        "poisson-p0.01" => {
            let r = binomial_poisson_gap(1_000_000, 0.01, GapOptions::default())?;
            Ok(poisson_common(id, &r, 0.183, 0.194, 6.024))
        }
        "near-uniform" => near_uniform(id),
        "tightness" => tightness(id),
        "asymptotic-ratio" => {
            let mut c = Vec::new();
            for lambda in [1e4, 1e5, 1e6] {
                let scaled = alpha_asymptotic_upper(lambda)? * lambda.sqrt();
                c.push(Check::within(
                    id,
                    format!("scaled_ratio@{lambda:e}"),
                    scaled,
                    33.634,
                    5e-4,
                ));
            }
            Ok(c)
        }
        _ => unreachable!("case ids are validated"),
    }
}

fn poisson_common(
    id: &'static str,
    r: &PoissonGapReport,
    local_tv: f64,
    tv_only: f64,
    h: f64,
) -> Vec<Check> {
    vec![
        Check::within(id, "local_tv_bound", r.local_tv_bound, local_tv, 2e-3),
        Check::within(id, "tv_only_bound", r.tv_only_bound, tv_only, 2e-3),
        Check::within(id, "poisson_entropy", r.poisson_entropy, h, 1e-3),
    ]
}

fn near_uniform(id: &'static str) -> Result<Vec<Check>> {
    let beta = 0.5;
    let values = |m: u32| -> Result<(f64, f64, f64, f64, f64)> {
        let size = 1usize << m;
        let x = near_uniform_pmf(&NearUniformSpec::alternating(size, beta)?);
        let y = FiniteDistribution::uniform(size)?;
        let r = entropy_gap_report(&x, &y);
        let refined = r.refined.ok_or_else(|| {
            CliError::Usage(format!("ratio condition unexpectedly fails at M = {size}"))
        })?;
        Ok((r.exact_gap, r.local_tv, refined, r.d_loc, r.d_tv))
    };
    let (gap, bound, refined, d_loc, d_tv) = values(3)?;
    let mut c = vec![
        Check::within(id, "d_loc", d_loc, 0.0625, 1e-15),
        Check::within(id, "d_tv", d_tv, 0.25, 1e-15),
        Check::within(id, "exact_gap", gap, 0.131, 1e-3),
        Check::within(id, "local_tv_bound", bound, 0.562, 1e-3),
        Check::within(id, "refined_bound", refined, 0.216, 1e-3),
    ];
    let mut spread = [0.0f64; 3];
    for m in 4..=20 {
        let (g, b, r, _, _) = values(m)?;
        spread[0] = spread[0].max((g - gap).abs());
        spread[1] = spread[1].max((b - bound).abs());
        spread[2] = spread[2].max((r - refined).abs());
    }
    for (name, s) in [
        "exact_gap_spread",
        "local_tv_bound_spread",
        "refined_bound_spread",
    ]
    .iter()
    .zip(spread)
    {
        c.push(Check::range(id, *name, s, 0.0, 1e-12));
    }
    Ok(c)
}

fn tightness(id: &'static str) -> Result<Vec<Check>> {
    let eps = 0.4;
    let x = FiniteDistribution::from_probs(vec![1.0 - eps, eps / 2.0, eps / 2.0])?;
    let y = FiniteDistribution::point_mass(3, 0)?;
    let pair = distance_pair(&x, &y);
    let gap = (entropy(&x) - entropy(&y)).abs();
    Ok(vec![
        Check::within(id, "d_tv", pair.d_tv, eps, 1e-15),
        Check::within(
            id,
            "gap_minus_bound",
            gap - zhang_bound(pair.d_tv, 3)?,
            0.0,
            1e-12,
        ),
    ])
}
