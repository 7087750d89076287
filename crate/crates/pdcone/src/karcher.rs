//! Weighted Karcher means and the induced barycentric map.
//!
//! The Karcher mean of positive-definite matrices `A_1, …, A_n` with
//! positive weights `w_i` summing to one is the unique positive-definite
//! solution `X` of
//!
//! ```text
//! Σ w_i log(X^{-1/2} A_i X^{-1/2}) = 0.
//! ```
//!
//! It is permutation-invariant, idempotent, monotone in each argument, and
//! nonexpansive for the Thompson metric: the induced map on discrete
//! measures contracts the Wasserstein-1 distance. The solver runs a damped
//! fixed-point iteration from the log-Euclidean mean and certifies the
//! residual of the defining equation at the returned point.

use crate::cone::{
    congruence_pd, loewner_leq, sym_exp, thompson_dist, PDMatrix, SymMatrix, Tolerances,
};
use crate::error::{Error, Result};
use crate::measure::{DiscreteMeasure, Rational};

/// Smallest damping step; once reached, the candidate is accepted even if
/// the residual did not decrease (stagnation is then caught by `max_iter`).
pub const STEP_FLOOR: f64 = 1.0 / 1048576.0;

/// Stopping parameters for the Karcher solver.
#[derive(Clone, Copy, Debug)]
pub struct SolverConfig {
    /// Relative residual tolerance: stop when the Frobenius norm of the
    /// weighted log-sum is at most `tol · (1 + ‖X‖_F)`.
    pub tol: f64,
    /// Iteration cap; exceeding it is an error, never silently accepted.
    pub max_iter: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            tol: 1e-10,
            max_iter: 500,
        }
    }
}

impl SolverConfig {
    /// Validated constructor: `tol` positive and finite, `max_iter ≥ 1`.
    pub fn new(tol: f64, max_iter: usize) -> Result<Self> {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Error::Precondition {
                reason: format!("solver tolerance {tol} must be positive and finite"),
            });
        }
        if max_iter == 0 {
            return Err(Error::Precondition {
                reason: "max_iter must be at least 1".into(),
            });
        }
        Ok(SolverConfig { tol, max_iter })
    }
}

/// A converged Karcher solve.
#[derive(Clone, Debug)]
pub struct KarcherResult {
    /// The mean `X`.
    pub mean: PDMatrix,
    /// Frobenius norm of the weighted log-sum at `X`; always at most
    /// `tol · (1 + ‖X‖_F)`.
    pub residual: f64,
    /// Damped fixed-point steps taken (0 when the initial guess already
    /// satisfies the equation).
    pub iterations: usize,
}

fn validate_family(points: &[PDMatrix], weights: &[Rational]) -> Result<usize> {
    if points.is_empty() {
        return Err(Error::Precondition {
            reason: "karcher_mean requires at least one point".into(),
        });
    }
    if points.len() != weights.len() {
        return Err(Error::Precondition {
            reason: format!(
                "karcher_mean got {} points but {} weights",
                points.len(),
                weights.len()
            ),
        });
    }
    let dim = points[0].dim();
    for p in points {
        if p.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: p.dim(),
            });
        }
    }
    let mut total = Rational::zero();
    for w in weights {
        if !w.is_positive() {
            return Err(Error::Precondition {
                reason: format!("karcher_mean weights must be positive, got {w}"),
            });
        }
        total = total.checked_add(*w)?;
    }
    if total != Rational::one() {
        return Err(Error::Precondition {
            reason: format!("karcher_mean weights must sum to 1, got {total}"),
        });
    }
    Ok(dim)
}

/// `Σ w_i log(X^{-1/2} A_i X^{-1/2})`, the left side of the Karcher
/// equation at `x`.
fn weighted_log_sum(
    x: &PDMatrix,
    points: &[PDMatrix],
    wf: &[f64],
    tol: &Tolerances,
) -> Result<SymMatrix> {
    let xi = x.inv_sqrt(tol)?;
    let mut s = SymMatrix::zeros(x.dim())?;
    for (a, &w) in points.iter().zip(wf.iter()) {
        let inner = congruence_pd(&xi, a, tol)?;
        s = s.add(&inner.log().scale(w))?;
    }
    Ok(s)
}

/// Two-point geometric mean `a # b = a^{1/2}(a^{-1/2} b a^{-1/2})^{1/2} a^{1/2}`.
///
/// Closed form for the uniform two-point Karcher mean; symmetric in its
/// arguments and equal to `√(ab)` for commuting inputs.
pub fn geometric_mean_2(a: &PDMatrix, b: &PDMatrix, tol: &Tolerances) -> Result<PDMatrix> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: b.dim(),
        });
    }
    let sq = a.sqrt(tol)?;
    let isq = a.inv_sqrt(tol)?;
    let inner = congruence_pd(&isq, b, tol)?;
    let root = inner.sqrt(tol)?;
    congruence_pd(&sq, &root, tol)
}

/// Solves the weighted Karcher equation by damped fixed-point iteration.
///
/// Starting from the log-Euclidean mean `exp(Σ w_i log A_i)`, each
/// iteration moves `X ← X^{1/2} exp(step · S) X^{1/2}` where `S` is the
/// weighted log-sum at `X`. The step starts at 1 and halves whenever the
/// candidate's residual fails to decrease, down to [`STEP_FLOOR`] (at which
/// point the candidate is accepted and `max_iter` polices stagnation).
/// Convergence is declared on the residual of the defining equation, so a
/// returned mean always certifies `‖S‖_F ≤ tol · (1 + ‖X‖_F)`.
pub fn karcher_mean(
    points: &[PDMatrix],
    weights: &[Rational],
    cfg: &SolverConfig,
    tol: &Tolerances,
) -> Result<KarcherResult> {
    let dim = validate_family(points, weights)?;
    SolverConfig::new(cfg.tol, cfg.max_iter)?;
    let wf: Vec<f64> = weights.iter().map(|w| w.to_f64()).collect();

    let mut acc = SymMatrix::zeros(dim)?;
    for (a, &w) in points.iter().zip(wf.iter()) {
        acc = acc.add(&a.log().scale(w))?;
    }
    let mut x = sym_exp(&acc, tol)?;
    let mut s = weighted_log_sum(&x, points, &wf, tol)?;
    let mut residual = s.frob_norm();
    let mut iterations = 0usize;

    loop {
        if residual <= cfg.tol * (1.0 + x.frob_norm()) {
            return Ok(KarcherResult {
                mean: x,
                residual,
                iterations,
            });
        }
        if iterations >= cfg.max_iter {
            return Err(Error::SolverNonConvergence {
                iterations,
                residual,
            });
        }
        let sq = x.sqrt(tol)?;
        let mut step = 1.0f64;
        loop {
            let exp_part = sym_exp(&s.scale(step), tol)?;
            let candidate = congruence_pd(&sq, &exp_part, tol)?;
            let s_cand = weighted_log_sum(&candidate, points, &wf, tol)?;
            let r_cand = s_cand.frob_norm();
            if r_cand < residual || step <= STEP_FLOOR {
                x = candidate;
                s = s_cand;
                residual = r_cand;
                break;
            }
            step *= 0.5;
        }
        iterations += 1;
    }
}

/// The barycentric map: the Karcher mean of a measure's support weighted by
/// its masses. Satisfies `barycenter(δ_x) = x`, contracts the
/// Wasserstein-1 distance, and preserves the stochastic order.
pub fn barycenter(m: &DiscreteMeasure, cfg: &SolverConfig, tol: &Tolerances) -> Result<PDMatrix> {
    Ok(karcher_mean(m.points(), m.weights(), cfg, tol)?.mean)
}

fn uniform_weights(n: usize) -> Result<Vec<Rational>> {
    Ok(vec![Rational::new(1, n as i64)?; n])
}

fn validate_paired(points_a: &[PDMatrix], points_b: &[PDMatrix]) -> Result<()> {
    if points_a.len() != points_b.len() {
        return Err(Error::Precondition {
            reason: format!(
                "paired check requires equal-length sequences, got {} and {}",
                points_a.len(),
                points_b.len()
            ),
        });
    }
    if points_a.is_empty() {
        return Err(Error::Precondition {
            reason: "paired check requires nonempty sequences".into(),
        });
    }
    Ok(())
}

/// Contractivity observable for uniform tuples: returns
/// `(d(Λ(a), Λ(b)), (1/n) Σ d(a_i, b_i))`; the mean inequality guarantees
/// the first is at most the second.
pub fn check_contractive(
    points_a: &[PDMatrix],
    points_b: &[PDMatrix],
    cfg: &SolverConfig,
    tol: &Tolerances,
) -> Result<(f64, f64)> {
    validate_paired(points_a, points_b)?;
    let w = uniform_weights(points_a.len())?;
    let ma = karcher_mean(points_a, &w, cfg, tol)?.mean;
    let mb = karcher_mean(points_b, &w, cfg, tol)?.mean;
    let lhs = thompson_dist(&ma, &mb, tol)?;
    let mut rhs = 0.0f64;
    for (a, b) in points_a.iter().zip(points_b.iter()) {
        rhs += thompson_dist(a, b, tol)?;
    }
    rhs /= points_a.len() as f64;
    Ok((lhs, rhs))
}

/// Monotonicity observable for uniform tuples: requires `a_i ≤ b_i` for
/// every index (checked) and returns whether `Λ(a) ≤ Λ(b)` in the Loewner
/// order — always true for the Karcher mean.
pub fn check_monotone(
    points_a: &[PDMatrix],
    points_b: &[PDMatrix],
    cfg: &SolverConfig,
    tol: &Tolerances,
) -> Result<bool> {
    validate_paired(points_a, points_b)?;
    for (a, b) in points_a.iter().zip(points_b.iter()) {
        if !loewner_leq(a.as_sym(), b.as_sym(), tol)? {
            return Err(Error::Precondition {
                reason: "check_monotone requires a_i ≤ b_i for every index".into(),
            });
        }
    }
    let w = uniform_weights(points_a.len())?;
    let ma = karcher_mean(points_a, &w, cfg, tol)?.mean;
    let mb = karcher_mean(points_b, &w, cfg, tol)?.mean;
    loewner_leq(ma.as_sym(), mb.as_sym(), tol)
}
