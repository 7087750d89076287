//! Thin JSON front end over the library: each subcommand reads the wire
//! formats from [`pdcone::io`], calls one library entry point, and prints
//! or writes JSON/CSV. Exit codes: 0 on success, 2 on input validation
//! errors, 3 on solver non-convergence.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use pdcone::io::{
    read_json, CertificateJson, KarcherJson, MatrixJson, MeasureJson, TransportPlanJson,
};
use pdcone::{
    karcher_mean, run_converge_experiment, stochastic_leq_bruteforce, stochastic_leq_flow,
    thompson_dist, wasserstein1, write_approx_pair, DiscreteMeasure, Error, ExperimentConfig,
    PDMatrix, Result, SolverConfig, Tolerances,
};

#[derive(Parser)]
#[command(
    name = "pdcone",
    version,
    about = "Ordered measures and Karcher barycenters on the positive-definite cone"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    /// Max-flow decision with coupling / violating-subset certificates.
    Flow,
    /// Exhaustive subset check (small supports only).
    Brute,
}

#[derive(Subcommand)]
enum Cmd {
    /// Thompson distance between two matrices.
    Thompson {
        /// Matrix JSON file ({"dim": n, "data": [row-major reals]}).
        #[arg(long)]
        a: PathBuf,
        /// Matrix JSON file.
        #[arg(long)]
        b: PathBuf,
    },
    /// Decide the stochastic order mu <= nu and print a certificate.
    OrderCheck {
        /// Measure JSON file ({"points": [...], "weights": ["num/den", ...]}).
        #[arg(long)]
        mu: PathBuf,
        /// Measure JSON file.
        #[arg(long)]
        nu: PathBuf,
        /// Decision procedure.
        #[arg(long, value_enum, default_value_t = Method::Flow)]
        method: Method,
    },
    /// Exact Wasserstein-1 distance and an optimal transport plan.
    Wasserstein {
        /// Measure JSON file.
        #[arg(long)]
        mu: PathBuf,
        /// Measure JSON file.
        #[arg(long)]
        nu: PathBuf,
    },
    /// Weighted Karcher mean of a measure's support.
    Karcher {
        /// Measure JSON file.
        #[arg(long)]
        measure: PathBuf,
        /// Residual tolerance (default 1e-10).
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Barycenter of a measure (the Karcher mean of its weighted support).
    Barycenter {
        /// Measure JSON file.
        #[arg(long)]
        measure: PathBuf,
    },
    /// Paired order-preserving approximation of mu <= nu; writes one JSON
    /// per step plus trace.csv into --out.
    ApproxPair {
        /// Lower measure JSON file.
        #[arg(long)]
        mu: PathBuf,
        /// Upper measure JSON file.
        #[arg(long)]
        nu: PathBuf,
        /// Approximation depth.
        #[arg(long)]
        nmax: u32,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
    },
    /// Experiment runners.
    Experiment {
        #[command(subcommand)]
        which: ExperimentCmd,
    },
}

#[derive(Subcommand)]
enum ExperimentCmd {
    /// Seeded convergence experiment; writes a deterministic CSV trace.
    Converge {
        /// Matrix dimension (<= 8).
        #[arg(long)]
        dim: usize,
        /// Support size of generated measures (<= 64).
        #[arg(long)]
        size: usize,
        /// Number of trials.
        #[arg(long)]
        trials: u64,
        /// Base seed; fully determines the output.
        #[arg(long)]
        seed: u64,
        /// Approximation depth per trial.
        #[arg(long)]
        nmax: u32,
        /// Destination CSV path.
        #[arg(long)]
        csv: PathBuf,
    },
}

#[derive(Serialize)]
struct DistanceOut {
    distance: f64,
}

fn read_matrix(path: &Path, tol: &Tolerances) -> Result<PDMatrix> {
    let j: MatrixJson = read_json(path)?;
    j.to_pd(tol)
}

fn read_measure(path: &Path, tol: &Tolerances) -> Result<DiscreteMeasure> {
    let j: MeasureJson = read_json(path)?;
    j.to_measure(tol)
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    let tol = Tolerances::default();
    match cli.cmd {
        Cmd::Thompson { a, b } => {
            let a = read_matrix(&a, &tol)?;
            let b = read_matrix(&b, &tol)?;
            print_json(&DistanceOut {
                distance: thompson_dist(&a, &b, &tol)?,
            })
        }
        Cmd::OrderCheck { mu, nu, method } => {
            let mu = read_measure(&mu, &tol)?;
            let nu = read_measure(&nu, &tol)?;
            let cert = match method {
                Method::Flow => {
                    CertificateJson::from_certificate(&stochastic_leq_flow(&mu, &nu, &tol)?)
                }
                Method::Brute => CertificateJson {
                    leq: stochastic_leq_bruteforce(&mu, &nu, &tol)?,
                    witness: None,
                    violating_subset: None,
                },
            };
            print_json(&cert)
        }
        Cmd::Wasserstein { mu, nu } => {
            let mu = read_measure(&mu, &tol)?;
            let nu = read_measure(&nu, &tol)?;
            print_json(&TransportPlanJson::from_plan(&wasserstein1(&mu, &nu, &tol)?))
        }
        Cmd::Karcher { measure, tol: t } => {
            let m = read_measure(&measure, &tol)?;
            let cfg = match t {
                Some(t) => SolverConfig::new(t, SolverConfig::default().max_iter)?,
                None => SolverConfig::default(),
            };
            let res = karcher_mean(m.points(), m.weights(), &cfg, &tol)?;
            print_json(&KarcherJson::from_result(&res))
        }
        Cmd::Barycenter { measure } => {
            let m = read_measure(&measure, &tol)?;
            let res = karcher_mean(m.points(), m.weights(), &SolverConfig::default(), &tol)?;
            print_json(&KarcherJson::from_result(&res))
        }
        Cmd::ApproxPair { mu, nu, nmax, out } => {
            let mu = read_measure(&mu, &tol)?;
            let nu = read_measure(&nu, &tol)?;
            write_approx_pair(&mu, &nu, nmax, &out, &tol)
        }
        Cmd::Experiment {
            which:
                ExperimentCmd::Converge {
                    dim,
                    size,
                    trials,
                    seed,
                    nmax,
                    csv,
                },
        } => run_converge_experiment(&ExperimentConfig {
            dim,
            support_size: size,
            trials,
            seed,
            n_max: nmax,
            csv,
        }),
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("error: {e}");
        let code = match e {
            Error::SolverNonConvergence { .. } | Error::EigNonConvergence { .. } => 3,
            _ => 2,
        };
        std::process::exit(code);
    }
}
