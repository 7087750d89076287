//! Exact Wasserstein-1 distance and optimal couplings between discrete
//! measures under the Thompson metric.
//!
//! Weights are scaled by the least common multiple of their denominators to
//! exact integer supplies, so feasibility and optimal support structure come
//! from an integral transportation problem; only the arc costs (pairwise
//! Thompson distances) are floating point.

use crate::cone::{thompson_dist, PDMatrix, Tolerances};
use crate::error::{Error, Result};
use crate::flow;
use crate::measure::{
    lcm_denominators, scale_to_integer, Coupling, DiscreteMeasure, Rational, UniformTuple,
};

/// Cap on the combined support size accepted by [`wasserstein1`].
pub const TRANSPORT_SUPPORT_CAP: usize = 512;

/// Cap on the tuple length accepted by [`assignment_uniform`].
pub const ASSIGNMENT_CAP: usize = 256;

/// An optimal transport plan: a feasible coupling together with its cost.
#[derive(Clone, Debug)]
pub struct TransportPlan {
    /// The optimal coupling.
    pub coupling: Coupling,
    /// Total cost `Σ w(i,j) · d(x_i, y_j)`.
    pub cost: f64,
}

/// Builds the dense Thompson cost matrix between two supports.
fn cost_matrix(
    left: &[PDMatrix],
    right: &[PDMatrix],
    tol: &Tolerances,
) -> Result<Vec<Vec<f64>>> {
    let mut out = Vec::with_capacity(left.len());
    for x in left {
        let mut row = Vec::with_capacity(right.len());
        for y in right {
            row.push(thompson_dist(x, y, tol)?);
        }
        out.push(row);
    }
    Ok(out)
}

/// Exact Wasserstein-1 distance and an optimal coupling.
///
/// The cost is the optimum of the transportation linear program over all
/// couplings of the two measures; it is zero exactly when the canonical
/// measures coincide.
pub fn wasserstein1(
    m1: &DiscreteMeasure,
    m2: &DiscreteMeasure,
    tol: &Tolerances,
) -> Result<TransportPlan> {
    if m1.dim() != m2.dim() {
        return Err(Error::DimensionMismatch {
            expected: m1.dim(),
            got: m2.dim(),
        });
    }
    let combined = m1.len() + m2.len();
    if combined > TRANSPORT_SUPPORT_CAP {
        return Err(Error::CapExceeded {
            what: "combined transport support",
            got: combined,
            cap: TRANSPORT_SUPPORT_CAP,
        });
    }
    let l = lcm_denominators(
        m1.weights().iter().chain(m2.weights().iter()),
        None,
        "transport weight lcm",
    )?;
    let supply: Vec<i64> = m1.weights().iter().map(|&w| scale_to_integer(w, l)).collect();
    let demand: Vec<i64> = m2.weights().iter().map(|&w| scale_to_integer(w, l)).collect();
    let cost = cost_matrix(m1.points(), m2.points(), tol)?;

    let arcs = flow::solve_transportation(&supply, &demand, &cost)
        .map_err(|reason| Error::Precondition { reason })?;

    let mut pairs = Vec::with_capacity(arcs.len());
    let mut weights = Vec::with_capacity(arcs.len());
    let mut total = 0.0f64;
    for &(i, j, f) in &arcs {
        pairs.push((i, j));
        weights.push(Rational::new(f, l)?);
        total += (f as f64 / l as f64) * cost[i][j];
    }
    let coupling = Coupling::new(pairs, weights, m1.clone(), m2.clone())?;
    Ok(TransportPlan {
        coupling,
        cost: total,
    })
}

/// Minimum-cost perfect matching between two equal-length tuples under the
/// Thompson distance.
///
/// Returns the permutation `σ` (entry `i` of the first tuple pairs with
/// entry `σ(i)` of the second) and the **total** matching cost; dividing by
/// the tuple length gives the Wasserstein-1 distance of the induced uniform
/// measures.
pub fn assignment_uniform(
    t1: &UniformTuple,
    t2: &UniformTuple,
    tol: &Tolerances,
) -> Result<(Vec<usize>, f64)> {
    if t1.len() != t2.len() {
        return Err(Error::DimensionMismatch {
            expected: t1.len(),
            got: t2.len(),
        });
    }
    if t1.len() > ASSIGNMENT_CAP {
        return Err(Error::CapExceeded {
            what: "assignment tuple length",
            got: t1.len(),
            cap: ASSIGNMENT_CAP,
        });
    }
    let cost = cost_matrix(t1.entries(), t2.entries(), tol)?;
    let perm = flow::hungarian(&cost);
    let total: f64 = perm.iter().enumerate().map(|(i, &j)| cost[i][j]).sum();
    Ok((perm, total))
}

/// Transport upper bound along a point map: `Σ w(x) · d(x, f(x))`.
///
/// Always at least the Wasserstein-1 distance between `m` and the
/// push-forward of `m` under `f`, since the map induces one admissible
/// coupling.
pub fn plan_cost_bound(
    mut f: impl FnMut(&PDMatrix) -> Result<PDMatrix>,
    m: &DiscreteMeasure,
    tol: &Tolerances,
) -> Result<f64> {
    let mut total = 0.0;
    for (p, w) in m.points().iter().zip(m.weights().iter()) {
        let image = f(p)?;
        total += w.to_f64() * thompson_dist(p, &image, tol)?;
    }
    Ok(total)
}
