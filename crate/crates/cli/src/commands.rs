//! One function per subcommand, each producing a [`Report`].

use entropy_gap::coupling::build_maximal_coupling;
use entropy_gap::finite_bounds::entropy_gap_report;
use entropy_gap::poisson_stein::{binomial_poisson_gap, GapOptions};
use entropy_gap::{distance_pair, total_variation, Error};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{CliError, Result};
use crate::pmf::PmfRecord;
use crate::report::{tree, Report};
use crate::reproduce;

fn pair_inputs(a: &PmfRecord, b: &PmfRecord) -> Result<Value> {
    Ok(json!({ "pmf_a": tree(a)?, "pmf_b": tree(b)? }))
}

pub fn distances(a: &PmfRecord, b: &PmfRecord) -> Result<Report> {
    let pair = distance_pair(&a.to_distribution()?, &b.to_distribution()?);
    Ok(
        Report::new("distances", None, pair_inputs(a, b)?, tree(&pair)?)
            .flag("identical", pair.d_tv == 0.0),
    )
}

pub fn bounds(a: &PmfRecord, b: &PmfRecord) -> Result<Report> {
    let r = entropy_gap_report(&a.to_distribution()?, &b.to_distribution()?);
    Ok(Report::new("bounds", None, pair_inputs(a, b)?, tree(&r)?)
        .flag("ratio_condition_holds", r.ratio_condition_holds)
        .flag("refined_applicable", r.refined.is_some())
        .flag("local_only_applicable", r.local_only.is_some())
        .flag("dominance_holds", r.dominance.all_hold()))
}

#[derive(Serialize)]
struct SymbolMarginals<'a> {
    label: &'a str,
    p_x: f64,
    p_y: f64,
    empirical_x: f64,
    empirical_y: f64,
}

pub fn coupling(a: &PmfRecord, b: &PmfRecord, samples: u64, seed: u64) -> Result<Report> {
    if samples == 0 {
        return Err(CliError::Library(Error::Domain {
            what: "sample count",
            detail: "at least one sample is required".into(),
        }));
    }
    let (x, y) = (a.to_distribution()?, b.to_distribution()?);
    let parts = build_maximal_coupling(&x, &y)?;
    let sampler = parts.sampler();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = parts.symbols().len();
    let (mut count_x, mut count_y) = (vec![0u64; m], vec![0u64; m]);
    let mut equal = 0u64;
    for _ in 0..samples {
        let d = sampler.sample(&mut rng);
        count_x[d.x] += 1;
        count_y[d.y] += 1;
        equal += u64::from(d.x == d.y);
    }

    let n = samples as f64;
    let p = parts.p();
    let fraction = equal as f64 / n;
    let sigma = (p * (1.0 - p) / n).sqrt();
    let within_three_sigma = (fraction - p).abs() <= 3.0 * sigma;
    let marginals: Vec<SymbolMarginals> = (0..m)
        .map(|i| SymbolMarginals {
            label: &parts.symbols()[i],
            p_x: parts.p_x()[i],
            p_y: parts.p_y()[i],
            empirical_x: count_x[i] as f64 / n,
            empirical_y: count_y[i] as f64 / n,
        })
        .collect();
    let max_dev = |f: fn(&SymbolMarginals) -> f64| marginals.iter().map(f).fold(0.0, f64::max);
    let results = json!({
        "p": p,
        "d_tv": total_variation(&x, &y),
        "samples": samples,
        "equal_count": equal,
        "equal_fraction": fraction,
        "binomial_sigma": sigma,
        "max_marginal_deviation_x": max_dev(|s| (s.empirical_x - s.p_x).abs()),
        "max_marginal_deviation_y": max_dev(|s| (s.empirical_y - s.p_y).abs()),
        "marginals": tree(&marginals)?,
    });
    let inputs = json!({ "pmf_a": tree(a)?, "pmf_b": tree(b)?, "samples": samples });
    Ok(Report::new("coupling", Some(seed), inputs, results)
        .flag("degenerate", parts.is_degenerate())
        .flag("within_three_sigma", within_three_sigma))
}

pub fn poisson_approx(n: u64, p: f64, opts: GapOptions) -> Result<Report> {
    let r = binomial_poisson_gap(n, p, opts)?;
    let inputs = json!({ "n": n, "p": p, "exact_gap": opts.exact_gap, "tail_tol": opts.tail_tol });
    let mut report = Report::new("poisson-approx", None, inputs, tree(&r)?)
        .flag("ratio_clipped", r.ratio_clipped)
        .flag("truncation_raised", r.truncation_raised)
        .flag("tv_only_truncation_raised", r.tv_only_truncation_raised)
        .flag("local_condition_ok", r.envelope.local_condition_ok);
    if let Some(gap) = r.exact_gap {
        report = report
            .flag("gap_within_local_tv_bound", gap.abs() <= r.local_tv_bound)
            .flag("gap_within_tv_only_bound", gap.abs() <= r.tv_only_bound);
    }
    Ok(report)
}

/// Recompute a report from its echoed inputs (and seed).
pub fn replay(original: &Report) -> Result<(Report, usize)> {
    let input = |key: &str| -> Result<Value> {
        original
            .inputs
            .get(key)
            .cloned()
            .ok_or_else(|| CliError::Report(format!("inputs.{key} missing")))
    };
    fn decode<T: serde::de::DeserializeOwned>(key: &str, v: Value) -> Result<T> {
        serde_json::from_value(v).map_err(|e| CliError::Report(format!("inputs.{key}: {e}")))
    }
    let pmf = |key: &str| -> Result<PmfRecord> { decode(key, input(key)?) };
    let report = match original.command.as_str() {
        "distances" => distances(&pmf("pmf_a")?, &pmf("pmf_b")?)?,
        "bounds" => bounds(&pmf("pmf_a")?, &pmf("pmf_b")?)?,
        "coupling" => {
            let seed = original
                .seed
                .ok_or_else(|| CliError::Report("coupling report without a seed".into()))?;
            let samples = decode("samples", input("samples")?)?;
            coupling(&pmf("pmf_a")?, &pmf("pmf_b")?, samples, seed)?
        }
        "poisson-approx" => {
            let opts = GapOptions {
                exact_gap: decode("exact_gap", input("exact_gap")?)?,
                tail_tol: decode("tail_tol", input("tail_tol")?)?,
            };
            poisson_approx(decode("n", input("n")?)?, decode("p", input("p")?)?, opts)?
        }
        "reproduce" => {
            let cases: Vec<String> = decode("cases", input("cases")?)?;
            return reproduce::run(&cases);
        }
        other => return Err(CliError::Report(format!("unknown command {other:?}"))),
    };
    Ok((report, 0))
}
