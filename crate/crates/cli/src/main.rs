//! `entropy-gap`: entropy-difference bounds, maximal couplings and Poisson
//! approximation reports from the command line.

mod commands;
mod error;
mod pmf;
mod report;
mod reproduce;

use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use entropy_gap::core_dist::DEFAULT_TAIL_TOL;
use entropy_gap::poisson_stein::GapOptions;

use error::{CliError, Result};
use pmf::PmfRecord;
use report::Report;

#[derive(Debug, Parser)]
#[command(name = "entropy-gap", version, about)]
struct Cli {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct PairArgs {
    /// First pmf file (`label<TAB>probability` per line; `-` for stdin).
    #[arg(long)]
    pmf_a: PathBuf,
    /// Second pmf file.
    #[arg(long)]
    pmf_b: PathBuf,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Local distance, total variation and their ratio.
    Distances(PairArgs),
    /// Every applicable entropy-gap bound, with the exact gap.
    Bounds(PairArgs),
    /// Build the maximal coupling and sample it.
    Coupling {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        /// Seed for the sampler; required, there is no ambient randomness.
        #[arg(long)]
        seed: u64,
    },
    /// Bounds on H(Po(np)) − H(Binom(n, p)).
    PoissonApprox {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        p: f64,
        /// Also evaluate the exact gap.
        #[arg(long)]
        exact_gap: bool,
        /// Mass allowed outside the entropy summation windows.
        #[arg(long, default_value_t = DEFAULT_TAIL_TOL)]
        tail_tol: f64,
    },
    /// Re-derive the published numeric examples; exits 4 if any check fails.
    Reproduce {
        /// Run only these cases (repeatable).
        #[arg(long = "case")]
        cases: Vec<String>,
    },
    /// Recompute a report from its echoed inputs.
    Replay {
        /// Report file (`-` for stdin).
        report: PathBuf,
    },
}

fn read_pair(pair: &PairArgs) -> Result<(PmfRecord, PmfRecord)> {
    if pair.pmf_a.as_os_str() == "-" && pair.pmf_b.as_os_str() == "-" {
        return Err(CliError::Usage(
            "only one pmf can be read from stdin".into(),
        ));
    }
    Ok((PmfRecord::read(&pair.pmf_a)?, PmfRecord::read(&pair.pmf_b)?))
}

fn read_report(path: &Path) -> Result<Report> {
    let io = |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    };
    let mut text = String::new();
    if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map_err(io)?;
    } else {
        text = std::fs::read_to_string(path).map_err(io)?;
    }
    Report::from_json(&text)
}

fn execute(command: Command) -> Result<(Report, usize)> {
    let report = match command {
        Command::Distances(pair) => {
            let (a, b) = read_pair(&pair)?;
            commands::distances(&a, &b)?
        }
        Command::Bounds(pair) => {
            let (a, b) = read_pair(&pair)?;
            commands::bounds(&a, &b)?
        }
        Command::Coupling {
            pair,
            samples,
            seed,
        } => {
            let (a, b) = read_pair(&pair)?;
            commands::coupling(&a, &b, samples, seed)?
        }
        Command::PoissonApprox {
            n,
            p,
            exact_gap,
            tail_tol,
        } => commands::poisson_approx(
            n,
            p,
            GapOptions {
                exact_gap,
                tail_tol,
            },
        )?,
        Command::Reproduce { cases } => return reproduce::run(&cases),
        Command::Replay { report } => return commands::replay(&read_report(&report)?),
    };
    Ok((report, 0))
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let (report, failed) = execute(cli.command)?;
    emit(&report.to_canonical()?, cli.out.as_deref())?;
    if failed > 0 {
        let total = report.results["total"].as_u64().unwrap_or(0) as usize;
        return Err(CliError::ChecksFailed { failed, total });
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
