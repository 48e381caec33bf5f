use entropy_gap::countable_bounds::{tail_entropy, truncate};
use entropy_gap::poisson_stein::{
    binomial_poisson_gap, chernoff_poisson_tail, poisson_tail_entropy_bound, GapOptions,
};
use entropy_gap::{bernoulli_sum_pmf, local_distance, total_variation, PoissonLaw};

#[test]
fn truncation_preserves_total_variation() {
    // X: sum of 30 Bernoullis, supported on {0, …, 30}
    let p_list: Vec<f64> = (0..30).map(|i| 0.02 + 0.01 * (i % 7) as f64).collect();
    let x = bernoulli_sum_pmf(&p_list).unwrap();
    let lambda: f64 = p_list.iter().sum();
    let y = PoissonLaw::new(lambda).unwrap();
    // reference d_TV against the full Poisson law
    let head: f64 = (0..=30u64).map(|j| y.pmf(j)).sum();
    let abs: f64 = x
        .probs()
        .iter()
        .enumerate()
        .map(|(j, b)| (b - y.pmf(j as u64)).abs())
        .sum();
    let full_tv = 0.5 * (abs + (1.0 - head));
    let full_loc = x
        .probs()
        .iter()
        .enumerate()
        .map(|(j, b)| (b - y.pmf(j as u64)).abs())
        .fold(0.0, f64::max);
    for m in [32usize, 33, 40, 60] {
        let t = truncate(&y, m).unwrap();
        assert!((total_variation(&x, &t) - full_tv).abs() < 1e-12, "M = {m}");
        let tail_mass = t.probs()[m - 1];
        assert!(local_distance(&x, &t) <= full_loc.max(tail_mass) + 1e-15);
    }
}

#[test]
fn lumping_loses_at_most_the_tail_entropy() {
    for (lambda, m) in [(2.0, 8usize), (5.0, 20), (20.0, 40)] {
        let y = PoissonLaw::new(lambda).unwrap();
        let h_full = y.entropy(1e-15).unwrap();
        let h_trunc = truncate(&y, m).unwrap().entropy();
        let tail = tail_entropy(&y, m as u64 - 1, 1e-12).unwrap().value;
        let loss = h_full - h_trunc;
        assert!(
            loss >= -1e-12 && loss <= tail + 1e-12,
            "λ = {lambda}: {loss} vs {tail}"
        );
    }
}

#[test]
fn chernoff_and_tail_entropy_dominance() {
    for lambda in [1.0f64, 5.0, 20.0, 50.0] {
        let y = PoissonLaw::new(lambda).unwrap();
        for m in (lambda.floor() as u64 + 1)..=(10.0 * lambda).max(30.0) as u64 {
            let exact = tail_entropy_mass(&y, m);
            assert!(exact <= chernoff_poisson_tail(lambda, m).unwrap().value * (1.0 + 1e-12));
            if let Ok(bound) = poisson_tail_entropy_bound(lambda, m) {
                let oracle = tail_entropy(&y, m, 1e-12).unwrap();
                assert!(
                    oracle.log_value <= bound.log_value,
                    "λ = {lambda}, from = {m}"
                );
            }
        }
    }
}

fn tail_entropy_mass(y: &PoissonLaw, from: u64) -> f64 {
    (from..from + 2000).map(|j| y.pmf(j)).sum()
}

#[test]
fn far_tail_reported_in_log_space() {
    let y = PoissonLaw::new(1e5).unwrap();
    let t = tail_entropy(&y, 1_000_001, 1e-10).unwrap();
    assert_eq!(t.value, 0.0);
    let b = poisson_tail_entropy_bound(1e5, 1_000_001).unwrap();
    assert!(t.log_value <= b.log_value);
    assert!(b.log_value < -1.4e6);
}

#[test]
fn gap_bounds_at_moderate_scale() {
    for (n, p) in [(200u64, 0.05), (1000, 0.01), (5000, 0.002), (3000, 0.3)] {
        let r = binomial_poisson_gap(
            n,
            p,
            GapOptions {
                exact_gap: true,
                ..Default::default()
            },
        )
        .unwrap();
        let gap = r.exact_gap.unwrap();
        assert!(gap >= 0.0, "n = {n}, p = {p}: gap {gap}");
        assert!(gap <= r.local_tv_bound, "n = {n}, p = {p}");
        assert!(gap <= r.tv_only_bound, "n = {n}, p = {p}");
    }
}
