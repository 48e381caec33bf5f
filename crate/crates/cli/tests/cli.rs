use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_entropy-gap"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    if let Some(text) = stdin {
        pipe.write_all(text.as_bytes()).unwrap();
    }
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn report(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn num(v: &Value) -> f64 {
    v.as_f64().unwrap_or_else(|| panic!("not a number: {v}"))
}

fn write_pmf(dir: &Path, name: &str, probs: &[f64]) -> PathBuf {
    let path = dir.join(name);
    let body: String = probs
        .iter()
        .enumerate()
        .map(|(i, p)| format!("s{i}\t{p:.17e}\n"))
        .collect();
    std::fs::write(&path, format!("# {name}\n{body}")).unwrap();
    path
}

fn alternating(m: usize, beta: f64) -> Vec<f64> {
    (1..=m)
        .map(|i| {
            if i % 2 == 1 {
                (1.0 - beta) / m as f64
            } else {
                (1.0 + beta) / m as f64
            }
        })
        .collect()
}

fn pair_args<'a>(cmd: &'a str, a: &'a Path, b: &'a Path) -> Vec<&'a str> {
    vec![
        cmd,
        "--pmf-a",
        a.to_str().unwrap(),
        "--pmf-b",
        b.to_str().unwrap(),
    ]
}

#[test]
fn distances_examples() {
    let dir = TempDir::new().unwrap();
    let p = write_pmf(dir.path(), "p.tsv", &[0.2, 0.3, 0.5]);
    let r = report(&run(&pair_args("distances", &p, &p), None));
    assert_eq!(num(&r["results"]["d_tv"]), 0.0);
    assert_eq!(num(&r["results"]["d_loc"]), 0.0);
    assert!(r["results"]["alpha"].is_null());
    assert_eq!(r["flags"]["identical"], true);

    let x = write_pmf(dir.path(), "x.tsv", &[0.6, 0.2, 0.2]);
    let y = write_pmf(dir.path(), "y.tsv", &[1.0, 0.0, 0.0]);
    let r = report(&run(&pair_args("distances", &x, &y), None));
    assert!((num(&r["results"]["d_tv"]) - 0.4).abs() < 1e-15);

    let x = write_pmf(dir.path(), "alt.tsv", &alternating(8, 0.5));
    let y = write_pmf(dir.path(), "uni.tsv", &[0.125; 8]);
    let r = report(&run(&pair_args("distances", &x, &y), None));
    assert!((num(&r["results"]["d_loc"]) - 0.0625).abs() < 1e-15);
    assert!((num(&r["results"]["d_tv"]) - 0.25).abs() < 1e-15);
}

#[test]
fn bounds_examples() {
    let dir = TempDir::new().unwrap();
    let x = write_pmf(dir.path(), "alt.tsv", &alternating(8, 0.5));
    let y = write_pmf(dir.path(), "uni.tsv", &[0.125; 8]);
    let r = report(&run(&pair_args("bounds", &x, &y), None));
    let res = &r["results"];
    assert!((num(&res["exact_gap"]) - 0.131).abs() < 1e-3);
    assert!((num(&res["local_tv"]) - 0.562).abs() < 1e-3);
    assert!((num(&res["refined"]) - 0.216).abs() < 1e-3);
    assert_eq!(r["flags"]["dominance_holds"], true);

    let r = report(&run(&pair_args("bounds", &y, &y), None));
    for key in ["exact_gap", "zhang", "local_tv", "d_tv", "d_loc"] {
        assert_eq!(num(&r["results"][key]), 0.0, "{key}");
    }

    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for trial in 0..10 {
        let mut draw = || {
            let w: Vec<f64> = (0..16).map(|_| rng.random::<f64>()).collect();
            let s: f64 = w.iter().sum();
            w.iter().map(|v| v / s).collect::<Vec<f64>>()
        };
        let a = write_pmf(dir.path(), &format!("a{trial}.tsv"), &draw());
        let b = write_pmf(dir.path(), &format!("b{trial}.tsv"), &draw());
        let r = report(&run(&pair_args("bounds", &a, &b), None));
        assert_eq!(r["flags"]["dominance_holds"], true);
    }
}

#[test]
fn coupling_is_seeded_and_calibrated() {
    let dir = TempDir::new().unwrap();
    let a = write_pmf(dir.path(), "a.tsv", &[0.5, 0.3, 0.2, 0.0]);
    let b = write_pmf(dir.path(), "b.tsv", &[0.1, 0.3, 0.2, 0.4]);
    let mut args = pair_args("coupling", &a, &b);
    args.extend(["--samples", "1000000", "--seed", "42"]);
    let first = run(&args, None);
    let second = run(&args, None);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    let r = report(&first);
    assert_eq!(r["seed"], 42);
    let res = &r["results"];
    let p = num(&res["p"]);
    assert!((p - 0.6).abs() < 1e-15);
    let sigma = (p * (1.0 - p) / 1e6).sqrt();
    assert!((num(&res["equal_fraction"]) - p).abs() < 3.0 * sigma);
    assert_eq!(r["flags"]["within_three_sigma"], true);
    // marginal deviation: each symbol within 5σ of its own binomial
    for m in res["marginals"].as_array().unwrap() {
        for (emp, exact) in [("empirical_x", "p_x"), ("empirical_y", "p_y")] {
            let q = num(&m[exact]);
            let s = (q * (1.0 - q) / 1e6).sqrt();
            assert!((num(&m[emp]) - q).abs() <= 5.0 * s + 1e-15);
        }
    }

    args.pop();
    args.push("43");
    assert_ne!(run(&args, None).stdout, first.stdout);

    let mut same = pair_args("coupling", &a, &a);
    same.extend(["--samples", "1000", "--seed", "1"]);
    let r = report(&run(&same, None));
    assert_eq!(num(&r["results"]["equal_fraction"]), 1.0);
    assert_eq!(r["flags"]["degenerate"], true);
}

#[test]
fn poisson_approx_with_exact_gap() {
    let r = report(&run(
        &[
            "poisson-approx",
            "--n",
            "10000",
            "--p",
            "0.01",
            "--exact-gap",
        ],
        None,
    ));
    let res = &r["results"];
    let gap = num(&res["exact_gap"]);
    assert!(gap > 0.0 && gap <= num(&res["local_tv_bound"]));
    assert_eq!(r["flags"]["gap_within_local_tv_bound"], true);
    assert_eq!(r["flags"]["gap_within_tv_only_bound"], true);
    assert_eq!(r["inputs"]["exact_gap"], true);
}

#[test]
fn every_command_replays_bit_identically() {
    let dir = TempDir::new().unwrap();
    let a = write_pmf(dir.path(), "a.tsv", &[0.1, 0.2, 0.3, 0.4]);
    let b = write_pmf(dir.path(), "b.tsv", &[0.25, 0.25, 0.25, 0.25]);
    let mut coupling = pair_args("coupling", &a, &b);
    coupling.extend(["--samples", "5000", "--seed", "9"]);
    let cases: Vec<Vec<&str>> = vec![
        pair_args("distances", &a, &b),
        pair_args("bounds", &a, &b),
        coupling,
        vec![
            "poisson-approx",
            "--n",
            "300",
            "--p",
            "0.07",
            "--exact-gap",
            "--tail-tol",
            "1e-12",
        ],
        vec!["reproduce", "--case", "tightness"],
    ];
    for args in cases {
        let original = run(&args, None);
        assert!(original.status.success(), "{args:?}");
        let saved = dir.path().join("report.json");
        std::fs::write(&saved, &original.stdout).unwrap();
        let replayed = run(&["replay", saved.to_str().unwrap()], None);
        assert!(replayed.status.success(), "{args:?}");
        assert_eq!(replayed.stdout, original.stdout, "{args:?}");
        // and from stdin
        let piped = run(
            &["replay", "-"],
            Some(std::str::from_utf8(&original.stdout).unwrap()),
        );
        assert_eq!(piped.stdout, original.stdout, "{args:?}");
    }
}

#[test]
fn stdin_and_out_file() {
    let dir = TempDir::new().unwrap();
    let a = write_pmf(dir.path(), "a.tsv", &[0.5, 0.5]);
    let out = dir.path().join("r.json");
    let o = run(
        &[
            "distances",
            "--pmf-a",
            a.to_str().unwrap(),
            "--pmf-b",
            "-",
            "--out",
            out.to_str().unwrap(),
        ],
        Some("s0\t1\ns1\t0\n"),
    );
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(num(&r["results"]["d_tv"]), 0.5);
    assert_eq!(r["inputs"]["pmf_b"]["source"], "-");

    let both = run(&["distances", "--pmf-a", "-", "--pmf-b", "-"], Some(""));
    assert_eq!(both.status.code(), Some(2));
}

#[test]
fn exit_codes_and_diagnostics() {
    let dir = TempDir::new().unwrap();
    let good = write_pmf(dir.path(), "good.tsv", &[0.5, 0.5]);
    let bad_field = dir.path().join("bad.tsv");
    std::fs::write(&bad_field, "a\t0.5\nb\thalf\n").unwrap();
    let bad_sum = dir.path().join("sum.tsv");
    std::fs::write(&bad_sum, "a\t0.5\nb\t0.4\n").unwrap();
    let missing = dir.path().join("missing.tsv");

    let o = run(&pair_args("distances", &good, &bad_field), None);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("bad.tsv:2: probability"), "{err}");

    let o = run(&pair_args("bounds", &bad_sum, &good), None);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("sum.tsv") && err.contains("sum to"), "{err}");

    let o = run(&pair_args("distances", &missing, &good), None);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("missing.tsv"));

    assert_eq!(
        run(&["poisson-approx", "--n", "10", "--p", "1.5"], None)
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["poisson-approx", "--n", "0", "--p", "0.5"], None)
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["reproduce", "--case", "unknown"], None).status.code(),
        Some(2)
    );
    // randomized commands refuse to run without a seed
    assert_eq!(
        run(&pair_args("coupling", &good, &good), None)
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn reproduce_subset_and_full() {
    let o = run(&["reproduce", "--case", "near-uniform"], None);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(
        err.lines().all(|l| l.starts_with("PASS near-uniform/")),
        "{err}"
    );
    let r = report(&o);
    assert_eq!(r["inputs"]["cases"].as_array().unwrap().len(), 1);

    let o = run(&["reproduce"], None);
    assert_eq!(o.status.code(), Some(0));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(!err.contains("FAIL"));
    let r = report(&o);
    assert_eq!(r["results"]["failed"], 0);
    assert_eq!(r["flags"]["all_pass"], true);
}
