//! Constructive approximation of ordered measures.
//!
//! Given `q ≤ p` in the stochastic order, the pipeline produces sequences
//! `q_n → q` and `p_n → p` in the Wasserstein-1 distance such that
//! `q_n ≤ p_n` at every step and all weights of `q_n`, `p_n` are dyadic.
//! Each step composes:
//!
//! 1. **truncation** into the growing interval `[e^{-n}a, e^{n}a]` — mass
//!    outside is clamped to the lower endpoint (for the lower sequence) or
//!    to the upper endpoint (for the upper sequence); the lowered image of
//!    `q` stays below the raised image of `p`;
//! 2. **dyadic rounding** — weights are floored to a common power-of-two
//!    grid and the excess mass is parked at a point below (resp. above) the
//!    whole support, which moves the measure only downward (resp. upward)
//!    in the order and costs less than the chosen `ε`.
//!
//! An optional interval-cover reduction coarsens a support to finitely many
//! Thompson-ball cells while moving only downward (or only upward).

use crate::cone::{
    in_interval, thompson_dist, OrderInterval, PDMatrix, Tolerances,
};
use crate::error::{Error, Result};
use crate::measure::{DiscreteMeasure, Rational};
use crate::stochastic::stochastic_leq_flow;
use crate::transport::wasserstein1;

/// Maximum dyadic refinement depth: weights are rounded to multiples of
/// `2^{-k}` with `k` at most this.
pub const DYADIC_DEPTH_CAP: u32 = 40;

/// The interval schedule `A_n = [e^{-n}a, e^{n}a]` around a base point `a`.
///
/// The closed Thompson ball of radius `n` around `a` equals `A_n`, so the
/// schedule exhausts the cone while each step stays strictly inside the
/// next (`K = 1`, radius `r_n = n`).
#[derive(Clone, Debug)]
pub struct ApproxSchedule {
    base: PDMatrix,
}

impl ApproxSchedule {
    /// Schedule around an arbitrary base point.
    pub fn new(base: PDMatrix) -> Self {
        ApproxSchedule { base }
    }

    /// Schedule around the identity (the default base point).
    pub fn identity(dim: usize) -> Result<Self> {
        Ok(ApproxSchedule {
            base: PDMatrix::identity(dim)?,
        })
    }

    /// The base point `a`.
    pub fn base(&self) -> &PDMatrix {
        &self.base
    }

    /// The ball-inclusion constant relating radii to endpoint distances.
    pub fn k(&self) -> f64 {
        1.0
    }

    /// Ball radius at step `n`.
    pub fn radius(&self, n: u32) -> f64 {
        n as f64
    }

    /// Lower endpoint `z_n = e^{-n} a`.
    pub fn lower_endpoint(&self, n: u32, tol: &Tolerances) -> Result<PDMatrix> {
        self.base.scale((-(n as f64)).exp(), tol)
    }

    /// Upper endpoint `w_n = e^{n} a`.
    pub fn upper_endpoint(&self, n: u32, tol: &Tolerances) -> Result<PDMatrix> {
        self.base.scale((n as f64).exp(), tol)
    }

    /// The order interval `A_n = [z_n, w_n]`.
    pub fn interval(&self, n: u32, tol: &Tolerances) -> Result<OrderInterval> {
        OrderInterval::new(
            self.lower_endpoint(n, tol)?,
            self.upper_endpoint(n, tol)?,
            tol,
        )
    }
}

fn positive_step(n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::Precondition {
            reason: "schedule step n must be positive".into(),
        });
    }
    Ok(())
}

/// Clamps mass outside `A_n` to the lower endpoint `z_n`.
///
/// Points inside the interval stay put; everything else maps to `z_n`. When
/// `q ≤ p`, the lowered image of `q` is below the raised image of `p`
/// ([`truncate_upper`]) — the pair of maps preserves the order between two
/// measures even though a single truncation need not compare with its own
/// input.
pub fn truncate_lower(
    q: &DiscreteMeasure,
    sched: &ApproxSchedule,
    n: u32,
    tol: &Tolerances,
) -> Result<DiscreteMeasure> {
    positive_step(n)?;
    if q.dim() != sched.base.dim() {
        return Err(Error::DimensionMismatch {
            expected: sched.base.dim(),
            got: q.dim(),
        });
    }
    let iv = sched.interval(n, tol)?;
    let z = iv.lo().clone();
    let mut images = Vec::with_capacity(q.len());
    for x in q.points() {
        images.push(if in_interval(x, &iv, tol)? {
            x.clone()
        } else {
            z.clone()
        });
    }
    DiscreteMeasure::new(images, q.weights().to_vec(), tol)
}

/// Clamps mass outside `A_n` to the upper endpoint `w_n`; dual of
/// [`truncate_lower`].
pub fn truncate_upper(
    p: &DiscreteMeasure,
    sched: &ApproxSchedule,
    n: u32,
    tol: &Tolerances,
) -> Result<DiscreteMeasure> {
    positive_step(n)?;
    if p.dim() != sched.base.dim() {
        return Err(Error::DimensionMismatch {
            expected: sched.base.dim(),
            got: p.dim(),
        });
    }
    let iv = sched.interval(n, tol)?;
    let w = iv.hi().clone();
    let mut images = Vec::with_capacity(p.len());
    for x in p.points() {
        images.push(if in_interval(x, &iv, tol)? {
            x.clone()
        } else {
            w.clone()
        });
    }
    DiscreteMeasure::new(images, p.weights().to_vec(), tol)
}

/// Picks the dyadic depth `k ≤ 40` with `2^{-k} ≤ eps / (count · b)`.
fn dyadic_depth(count: usize, b: f64, eps: f64) -> Result<u32> {
    let ratio = count as f64 * b / eps;
    let mut k: u32 = if ratio <= 1.0 {
        0
    } else {
        ratio.log2().ceil() as u32
    };
    while k <= DYADIC_DEPTH_CAP && ((1u64 << k) as f64) < ratio {
        k += 1;
    }
    if k > DYADIC_DEPTH_CAP {
        return Err(Error::CapExceeded {
            what: "dyadic depth",
            got: k as usize,
            cap: DYADIC_DEPTH_CAP as usize,
        });
    }
    Ok(k)
}

fn floor_to_dyadic(w: Rational, k: u32) -> Result<Rational> {
    let m = ((w.num() as i128) << k) / (w.den() as i128);
    Rational::new(m as i64, 1i64 << k)
}

/// Rounds a measure down to a dyadic uniform grid, parking the excess at a
/// point `z` below the whole support.
///
/// Every weight becomes a multiple of `2^{-k}` (each floored to the largest
/// dyadic value not above it), the leftover mass goes to `z`, and the
/// result `p` satisfies `p ≤ q` with Wasserstein-1 distance `< eps`. The
/// support of `p` is contained in `supp(q) ∪ {z}`.
pub fn dyadic_lower(
    q: &DiscreteMeasure,
    z: &PDMatrix,
    eps: f64,
    tol: &Tolerances,
) -> Result<DiscreteMeasure> {
    dyadic_round(q, z, eps, tol, true)
}

/// Order dual of [`dyadic_lower`]: requires `x ≤ w` on the support, parks
/// the excess at `w`, and returns `p ≥ q` with `d^W(q, p) < eps`.
pub fn dyadic_upper(
    q: &DiscreteMeasure,
    w: &PDMatrix,
    eps: f64,
    tol: &Tolerances,
) -> Result<DiscreteMeasure> {
    dyadic_round(q, w, eps, tol, false)
}

fn dyadic_round(
    q: &DiscreteMeasure,
    anchor: &PDMatrix,
    eps: f64,
    tol: &Tolerances,
    lower: bool,
) -> Result<DiscreteMeasure> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::Precondition {
            reason: format!("eps = {eps} must be positive and finite"),
        });
    }
    if q.dim() != anchor.dim() {
        return Err(Error::DimensionMismatch {
            expected: anchor.dim(),
            got: q.dim(),
        });
    }
    for x in q.points() {
        let ok = if lower {
            crate::cone::loewner_leq(anchor.as_sym(), x.as_sym(), tol)?
        } else {
            crate::cone::loewner_leq(x.as_sym(), anchor.as_sym(), tol)?
        };
        if !ok {
            return Err(Error::Precondition {
                reason: if lower {
                    "dyadic_lower anchor must sit below every support point".into()
                } else {
                    "dyadic_upper anchor must sit above every support point".into()
                },
            });
        }
    }

    let mut b = 0.0f64;
    for x in q.points() {
        b = b.max(thompson_dist(x, anchor, tol)?);
    }
    let k = dyadic_depth(q.len(), b, eps)?;

    let mut points = Vec::with_capacity(q.len() + 1);
    let mut weights = Vec::with_capacity(q.len() + 1);
    let mut kept = Rational::zero();
    for (x, &w) in q.points().iter().zip(q.weights().iter()) {
        let r = floor_to_dyadic(w, k)?;
        kept = kept.checked_add(r)?;
        if r.is_positive() {
            points.push(x.clone());
            weights.push(r);
        }
    }
    let excess = Rational::one().checked_sub(kept)?;
    if excess.is_positive() {
        points.push(anchor.clone());
        weights.push(excess);
    }
    DiscreteMeasure::new(points, weights, tol)
}

/// Direction selector for [`interval_cover_reduce`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoverDirection {
    /// Map each cell to `e^{-eps/4} ·` its center (result below the input).
    Lower,
    /// Map each cell to `e^{+eps/4} ·` its center (result above the input).
    Upper,
}

/// Coarsens a support by greedily covering it with Thompson balls of radius
/// `eps/4` and collapsing each cell to a scaled copy of its center.
///
/// Support points are scanned in canonical (lexicographic) order; a point
/// joins the first existing cell within `eps/4`, otherwise it opens a new
/// cell centered on itself. In direction `Lower`, a cell centered at `c`
/// maps to `e^{-eps/4}·c`, which sits below every member of the cell and
/// within `eps/2` of each, so the result is below the input and within
/// `eps/2` in Wasserstein-1 distance (dually for `Upper`).
pub fn interval_cover_reduce(
    q: &DiscreteMeasure,
    eps: f64,
    direction: CoverDirection,
    tol: &Tolerances,
) -> Result<DiscreteMeasure> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::Precondition {
            reason: format!("eps = {eps} must be positive and finite"),
        });
    }
    let radius = eps / 4.0;
    let factor = match direction {
        CoverDirection::Lower => (-radius).exp(),
        CoverDirection::Upper => radius.exp(),
    };
    let mut centers: Vec<PDMatrix> = Vec::new();
    let mut images = Vec::with_capacity(q.len());
    'points: for x in q.points() {
        for c in &centers {
            if thompson_dist(x, c, tol)? <= radius {
                images.push(c.scale(factor, tol)?);
                continue 'points;
            }
        }
        centers.push(x.clone());
        images.push(x.scale(factor, tol)?);
    }
    DiscreteMeasure::new(images, q.weights().to_vec(), tol)
}

/// One step of the paired approximation.
#[derive(Clone, Debug)]
pub struct ApproxStep {
    /// Step index `n`.
    pub n: u32,
    /// The lower approximant `q_n`.
    pub q_n: DiscreteMeasure,
    /// The upper approximant `p_n`.
    pub p_n: DiscreteMeasure,
    /// `d^W(q_n, q)`.
    pub dw_q: f64,
    /// `d^W(p_n, p)`.
    pub dw_p: f64,
    /// `d^W` between the truncated image of `q` and `q` itself.
    pub dw_trunc_q: f64,
    /// `d^W` between the truncated image of `p` and `p` itself.
    pub dw_trunc_p: f64,
    /// Certified verdict of `q_n ≤ p_n`.
    pub leq_ok: bool,
    /// Support size of `q_n`.
    pub supp_q: usize,
    /// Support size of `p_n`.
    pub supp_p: usize,
}

/// Full trace of [`order_approximate_pair`].
#[derive(Clone, Debug)]
pub struct ApproxTrace {
    /// Per-step records for `n = 1 ..= n_max`.
    pub steps: Vec<ApproxStep>,
}

/// Runs the paired order-preserving approximation of `q ≤ p` up to `n_max`.
///
/// Step `n` computes `q_n = dyadic_lower(truncate_lower(q, n), z_{n+1},
/// 1/n)` and `p_n = dyadic_upper(truncate_upper(p, n), w_{n+1}, 1/n)`,
/// certifies `q_n ≤ p_n` with the flow decider, and records Wasserstein
/// distances to the originals. Requires `q ≤ p` up front.
pub fn order_approximate_pair(
    q: &DiscreteMeasure,
    p: &DiscreteMeasure,
    sched: &ApproxSchedule,
    n_max: u32,
    tol: &Tolerances,
) -> Result<ApproxTrace> {
    positive_step(n_max)?;
    let pre = stochastic_leq_flow(q, p, tol)?;
    if !pre.verdict {
        return Err(Error::Precondition {
            reason: "order_approximate_pair requires q ≤ p in the stochastic order".into(),
        });
    }

    let mut steps = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        let tq = truncate_lower(q, sched, n, tol)?;
        let tp = truncate_upper(p, sched, n, tol)?;
        let eps = 1.0 / n as f64;
        let z_next = sched.lower_endpoint(n + 1, tol)?;
        let w_next = sched.upper_endpoint(n + 1, tol)?;
        let q_n = dyadic_lower(&tq, &z_next, eps, tol)?;
        let p_n = dyadic_upper(&tp, &w_next, eps, tol)?;

        let dw_q = wasserstein1(&q_n, q, tol)?.cost;
        let dw_p = wasserstein1(&p_n, p, tol)?.cost;
        let dw_trunc_q = wasserstein1(&tq, q, tol)?.cost;
        let dw_trunc_p = wasserstein1(&tp, p, tol)?.cost;
        let leq_ok = stochastic_leq_flow(&q_n, &p_n, tol)?.verdict;

        steps.push(ApproxStep {
            n,
            supp_q: q_n.len(),
            supp_p: p_n.len(),
            q_n,
            p_n,
            dw_q,
            dw_p,
            dw_trunc_q,
            dw_trunc_p,
            leq_ok,
        });
    }
    Ok(ApproxTrace { steps })
}
