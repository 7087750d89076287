//! Seeded generators and the convergence experiment runner.
//!
//! All randomness flows through a counter-seeded deterministic generator:
//! the experiment seed fixes the base state and each trial runs on its own
//! stream, so a `(seed, config)` pair determines every output byte and
//! trials could be computed in any order.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::approx::{order_approximate_pair, ApproxSchedule};
use crate::cone::{loewner_leq, PDMatrix, SymMatrix, Tolerances, MAX_DIM};
use crate::error::{Error, Result};
use crate::io::{write_json, CertificateJson, MeasureJson, StepJson};
use crate::karcher::{barycenter, SolverConfig};
use crate::measure::{DiscreteMeasure, Rational};
use crate::stochastic::stochastic_leq_flow;

/// Largest matrix dimension accepted by the experiment runner.
pub const EXPERIMENT_DIM_CAP: usize = 8;
/// Largest support size accepted by the experiment runner.
pub const EXPERIMENT_SUPPORT_CAP: usize = 64;

/// Parameters of a convergence experiment.
#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    /// Matrix dimension, at most [`EXPERIMENT_DIM_CAP`].
    pub dim: usize,
    /// Support size of each generated measure, at most
    /// [`EXPERIMENT_SUPPORT_CAP`].
    pub support_size: usize,
    /// Number of independent trials.
    pub trials: u64,
    /// Base seed; together with the config it determines every output byte.
    pub seed: u64,
    /// Approximation depth per trial.
    pub n_max: u32,
    /// Destination of the CSV trace.
    pub csv: PathBuf,
}

impl ExperimentConfig {
    /// Checks the documented bounds.
    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 || self.dim > EXPERIMENT_DIM_CAP {
            return Err(Error::CapExceeded {
                what: "experiment dimension",
                got: self.dim,
                cap: EXPERIMENT_DIM_CAP,
            });
        }
        if self.support_size == 0 || self.support_size > EXPERIMENT_SUPPORT_CAP {
            return Err(Error::CapExceeded {
                what: "experiment support size",
                got: self.support_size,
                cap: EXPERIMENT_SUPPORT_CAP,
            });
        }
        if self.n_max == 0 {
            return Err(Error::Precondition {
                reason: "n_max must be at least 1".into(),
            });
        }
        Ok(())
    }
}

/// Deterministic random positive-definite matrix `G·Gᵀ + 0.1·I` with `G`
/// drawn entrywise uniform on `(−1, 1)`; its least eigenvalue is at least
/// `0.1`, so it always passes the strict cone check.
pub fn gen_pd(rng: &mut ChaCha8Rng, dim: usize, tol: &Tolerances) -> Result<PDMatrix> {
    if dim == 0 || dim > MAX_DIM {
        return Err(Error::DimensionOutOfRange { dim, max: MAX_DIM });
    }
    let g: Vec<f64> = (0..dim * dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let mut data = vec![0.0; dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            let mut s = 0.0;
            for k in 0..dim {
                s += g[i * dim + k] * g[j * dim + k];
            }
            data[i * dim + j] = s;
        }
        data[i * dim + i] += 0.1;
    }
    PDMatrix::new(SymMatrix::new(dim, data)?, tol)
}

/// Random positive-semidefinite bump `H·Hᵀ` with `H` uniform on
/// `(−scale, scale)` entrywise.
fn gen_psd_bump(rng: &mut ChaCha8Rng, dim: usize, scale: f64) -> Result<SymMatrix> {
    let h: Vec<f64> = (0..dim * dim)
        .map(|_| rng.gen_range(-scale..scale))
        .collect();
    let mut data = vec![0.0; dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            let mut s = 0.0;
            for k in 0..dim {
                s += h[i * dim + k] * h[j * dim + k];
            }
            data[i * dim + j] = s;
        }
    }
    SymMatrix::new(dim, data)
}

/// Random positive weights with a common small denominator, summing to one.
fn gen_weights(rng: &mut ChaCha8Rng, n: usize) -> Result<Vec<Rational>> {
    let counts: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=8)).collect();
    let total: i64 = counts.iter().sum();
    counts
        .into_iter()
        .map(|c| Rational::new(c, total))
        .collect()
}

/// Deterministic ordered pair `μ ≤ ν` with shared weights: the `i`-th point
/// of `ν` is the `i`-th point of `μ` plus a random positive-semidefinite
/// bump, so the diagonal coupling witnesses the order. The flow verdict is
/// asserted before returning.
pub fn gen_ordered_pair(
    rng: &mut ChaCha8Rng,
    dim: usize,
    support_size: usize,
    tol: &Tolerances,
) -> Result<(DiscreteMeasure, DiscreteMeasure)> {
    if support_size == 0 || support_size > EXPERIMENT_SUPPORT_CAP {
        return Err(Error::CapExceeded {
            what: "generated support size",
            got: support_size,
            cap: EXPERIMENT_SUPPORT_CAP,
        });
    }
    let weights = gen_weights(rng, support_size)?;
    let mut lo = Vec::with_capacity(support_size);
    let mut hi = Vec::with_capacity(support_size);
    for _ in 0..support_size {
        let x = gen_pd(rng, dim, tol)?;
        let bump = gen_psd_bump(rng, dim, 0.6)?;
        let y = PDMatrix::new(x.as_sym().add(&bump)?, tol)?;
        lo.push(x);
        hi.push(y);
    }
    let mu = DiscreteMeasure::new(lo, weights.clone(), tol)?;
    let nu = DiscreteMeasure::new(hi, weights, tol)?;
    let cert = stochastic_leq_flow(&mu, &nu, tol)?;
    assert!(
        cert.verdict,
        "generated pair must be ordered by construction"
    );
    Ok((mu, nu))
}

fn error_token(e: &Error) -> &'static str {
    match e {
        Error::DimensionMismatch { .. } => "dimension_mismatch",
        Error::DimensionOutOfRange { .. } => "dimension_out_of_range",
        Error::NotPositiveDefinite { .. } => "not_positive_definite",
        Error::NotSymmetric { .. } => "not_symmetric",
        Error::EigNonConvergence { .. } => "eig_nonconvergence",
        Error::RationalOverflow { .. } => "rational_overflow",
        Error::InvalidRational { .. } => "invalid_rational",
        Error::InvalidMeasure { .. } => "invalid_measure",
        Error::CapExceeded { .. } => "cap_exceeded",
        Error::Precondition { .. } => "precondition",
        Error::SolverNonConvergence { .. } => "solver_nonconvergence",
        Error::Io(_) => "io",
        Error::Json(_) => "json",
    }
}

fn converge_trial(
    trial: u64,
    cfg: &ExperimentConfig,
    sched: &ApproxSchedule,
    solver: &SolverConfig,
    tol: &Tolerances,
) -> Result<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(trial);
    let (q, p) = gen_ordered_pair(&mut rng, cfg.dim, cfg.support_size, tol)?;
    let trace = order_approximate_pair(&q, &p, sched, cfg.n_max, tol)?;
    let mut out = String::new();
    for step in &trace.steps {
        let bq = barycenter(&step.q_n, solver, tol)?;
        let bp = barycenter(&step.p_n, solver, tol)?;
        let bary_mono_ok = loewner_leq(bq.as_sym(), bp.as_sym(), tol)?;
        writeln!(
            out,
            "{},{},{},{},{},{},ok",
            trial, step.n, step.dw_q, step.dw_p, step.leq_ok, bary_mono_ok
        )
        .expect("writing to a string cannot fail");
    }
    Ok(out)
}

/// Runs the convergence experiment and returns the CSV text.
///
/// Per trial: generate an ordered pair on the trial's own stream, run the
/// paired approximation to `n_max`, and emit one row per step with the
/// Wasserstein distances, the order verdict, and whether the barycenters
/// stayed ordered. A failing trial contributes a single error row and the
/// run continues — solver failures are data, not crashes.
pub fn converge_csv(cfg: &ExperimentConfig) -> Result<String> {
    cfg.validate()?;
    let tol = Tolerances::default();
    let solver = SolverConfig::default();
    let sched = ApproxSchedule::identity(cfg.dim)?;
    let mut csv = String::from("trial,n,dW_q,dW_p,leq_ok,bary_mono_ok,status\n");
    for trial in 0..cfg.trials {
        match converge_trial(trial, cfg, &sched, &solver, &tol) {
            Ok(rows) => csv.push_str(&rows),
            Err(e) => {
                writeln!(csv, "{},,,,,,error:{}", trial, error_token(&e))
                    .expect("writing to a string cannot fail");
            }
        }
    }
    Ok(csv)
}

/// Runs [`converge_csv`] and writes the result to `cfg.csv`.
pub fn run_converge_experiment(cfg: &ExperimentConfig) -> Result<()> {
    let csv = converge_csv(cfg)?;
    if let Some(parent) = cfg.csv.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)?;
        }
    }
    std::fs::write(&cfg.csv, csv)?;
    Ok(())
}

/// Runs the paired approximation and writes one JSON file per step
/// (`step_001.json`, …) plus a `trace.csv` into `out_dir`.
///
/// Each step file holds `q_n`, `p_n`, and the order certificate between
/// them; the CSV columns are `n,dW_q,dW_p,leq_ok,supp_q,supp_p`.
pub fn write_approx_pair(
    q: &DiscreteMeasure,
    p: &DiscreteMeasure,
    n_max: u32,
    out_dir: &Path,
    tol: &Tolerances,
) -> Result<()> {
    let sched = ApproxSchedule::identity(q.dim())?;
    let trace = order_approximate_pair(q, p, &sched, n_max, tol)?;
    std::fs::create_dir_all(out_dir)?;
    let mut csv = String::from("n,dW_q,dW_p,leq_ok,supp_q,supp_p\n");
    for step in &trace.steps {
        let cert = stochastic_leq_flow(&step.q_n, &step.p_n, tol)?;
        let step_json = StepJson {
            n: step.n,
            q_n: MeasureJson::from_measure(&step.q_n),
            p_n: MeasureJson::from_measure(&step.p_n),
            certificate: CertificateJson::from_certificate(&cert),
        };
        write_json(&out_dir.join(format!("step_{:03}.json", step.n)), &step_json)?;
        writeln!(
            csv,
            "{},{},{},{},{},{}",
            step.n, step.dw_q, step.dw_p, step.leq_ok, step.supp_q, step.supp_p
        )
        .expect("writing to a string cannot fail");
    }
    std::fs::write(out_dir.join("trace.csv"), csv)?;
    Ok(())
}
