//! Finitely supported measures with exact rational weights, couplings, and
//! exact Wasserstein-1 transport under the Thompson ground metric.
//!
//! Run with `cargo run --example measures_and_transport`.

use pdcone::{
    dirac, plan_cost_bound, replicate_to_uniform, wasserstein1, DiscreteMeasure, PDMatrix,
    Rational, Result, SymMatrix, Tolerances,
};

fn scalar(v: f64, tol: &Tolerances) -> Result<PDMatrix> {
    PDMatrix::new(SymMatrix::diag(&[v])?, tol)
}

fn main() -> Result<()> {
    let tol = Tolerances::default();
    let e = std::f64::consts::E;

    // Weights are exact rationals; supports are canonicalized (sorted,
    // duplicates merged) so equal measures compare equal structurally.
    let mu = DiscreteMeasure::new(
        vec![scalar(1.0, &tol)?, scalar(e, &tol)?],
        vec![Rational::new(1, 4)?, Rational::new(3, 4)?],
        &tol,
    )?;
    println!("mu: {} support points, weights {:?}",
        mu.len(),
        mu.weights().iter().map(|w| w.to_string()).collect::<Vec<_>>());

    // Replication turns rational weights into a uniform tuple: (1/4, 3/4)
    // becomes 4 slots, one copy of the first point and three of the second.
    let tuple = replicate_to_uniform(&mu)?;
    println!("replicated to a uniform tuple of length {}", tuple.len());

    // Wasserstein-1 distance between diracs is the ground distance.
    let d = wasserstein1(&dirac(scalar(1.0, &tol)?), &dirac(scalar(e, &tol)?), &tol)?;
    println!("\nW1(δ_1, δ_e) = {:.6}  (= d(1, e))", d.cost);

    // A genuine transport problem: move (1/2, 1/2) on {1, e²} onto
    // (3/4, 1/4) on the same points. A quarter of the mass travels
    // distance 2, so the optimum is 1/2.
    let nu1 = DiscreteMeasure::new(
        vec![scalar(1.0, &tol)?, scalar(e * e, &tol)?],
        vec![Rational::new(1, 2)?, Rational::new(1, 2)?],
        &tol,
    )?;
    let nu2 = DiscreteMeasure::new(
        vec![scalar(1.0, &tol)?, scalar(e * e, &tol)?],
        vec![Rational::new(3, 4)?, Rational::new(1, 4)?],
        &tol,
    )?;
    let plan = wasserstein1(&nu1, &nu2, &tol)?;
    println!("\nW1 = {:.6} with optimal arcs:", plan.cost);
    for (&(i, j), w) in plan.coupling.pairs().iter().zip(plan.coupling.weights()) {
        println!("  move {} of the mass from point {} to point {}", w, i, j);
    }

    // The plan's marginals are validated exactly — couplings cannot drift.
    println!("plan left marginal == nu1: {}", *plan.coupling.left() == nu1);
    println!("plan right marginal == nu2: {}", *plan.coupling.right() == nu2);

    // Moving a measure along a point map costs at most the weighted sum of
    // point movements: W1(μ, f_*μ) ≤ Σ wᵢ·d(xᵢ, f(xᵢ)).
    let f = |x: &PDMatrix| x.scale(0.5f64.exp(), &tol);
    let bound = plan_cost_bound(f, &nu1, &tol)?;
    let image = pdcone::push_forward(f, &nu1, &tol)?;
    let actual = wasserstein1(&nu1, &image, &tol)?.cost;
    println!("\npush-forward by e^{{1/2}}·(·): bound {bound:.6} ≥ W1 {actual:.6}");
    Ok(())
}
