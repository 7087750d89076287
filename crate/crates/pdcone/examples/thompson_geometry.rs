//! Thompson metric on the positive-definite cone: distances, order,
//! invariances, and the identity of closed balls with order intervals.
//!
//! Run with `cargo run --example thompson_geometry`.

use pdcone::{
    in_interval, loewner_leq, thompson_ball, thompson_dist, PDMatrix, Result, SymMatrix,
    Tolerances,
};

fn main() -> Result<()> {
    let tol = Tolerances::default();

    // Two positive-definite 2×2 matrices.
    let a = PDMatrix::new(SymMatrix::new(2, vec![2.0, 1.0, 1.0, 2.0])?, &tol)?;
    let b = PDMatrix::new(SymMatrix::new(2, vec![1.0, 0.0, 0.0, 4.0])?, &tol)?;

    println!("d(a, b)      = {:.6}", thompson_dist(&a, &b, &tol)?);
    println!("d(a, a)      = {:.6}", thompson_dist(&a, &a, &tol)?);

    // Scalars: the metric reduces to |log x − log y|.
    let x = PDMatrix::new(SymMatrix::diag(&[1.0])?, &tol)?;
    let y = PDMatrix::new(SymMatrix::diag(&[std::f64::consts::E])?, &tol)?;
    println!("d(1, e)      = {:.6}  (scalars: |log x − log y|)", thompson_dist(&x, &y, &tol)?);

    // Scaling invariance: d(t·x, t·y) = d(x, y) for t > 0.
    let d0 = thompson_dist(&a, &b, &tol)?;
    let d1 = thompson_dist(&a.scale(7.5, &tol)?, &b.scale(7.5, &tol)?, &tol)?;
    println!("scale invariance: |d(7.5a, 7.5b) − d(a, b)| = {:.2e}", (d1 - d0).abs());

    // Congruence invariance: d(s·x·s, s·y·s) = d(x, y) for PD s.
    let s = PDMatrix::new(SymMatrix::new(2, vec![1.5, 0.5, 0.5, 1.0])?, &tol)?;
    let d2 = thompson_dist(
        &pdcone::congruence_pd(&s, &a, &tol)?,
        &pdcone::congruence_pd(&s, &b, &tol)?,
        &tol,
    )?;
    println!("congruence invariance: |d(sas, sbs) − d(a, b)| = {:.2e}", (d2 - d0).abs());

    // Closed balls are order intervals: the ball of radius r around a is
    // exactly [e^{-r}·a, e^{r}·a] in the Loewner order.
    let r = 0.75;
    let ball = thompson_ball(&a, r, &tol)?;
    println!("\nball of radius {r} around a = [e^{{-{r}}}a, e^{{{r}}}a]:");
    for (label, t) in [("inside", 0.5f64), ("boundary", 0.75), ("outside", 1.0)] {
        // Points along the scaling geodesic through a sit at distance |t|.
        let p = a.scale(t.exp(), &tol)?;
        println!(
            "  e^{{{t}}}·a ({label}): d = {:.4}, in ball: {}",
            thompson_dist(&p, &a, &tol)?,
            in_interval(&p, &ball, &tol)?
        );
    }

    // The Loewner order itself.
    println!("\nLoewner order:");
    println!("  a ≤ e·a : {}", loewner_leq(a.as_sym(), a.scale(1.0f64.exp(), &tol)?.as_sym(), &tol)?);
    println!("  e·a ≤ a : {}", loewner_leq(a.scale(1.0f64.exp(), &tol)?.as_sym(), a.as_sym(), &tol)?);

    // The cone has no smallest element: scaling down never leaves it.
    let deep = a.scale((-41.0f64).exp(), &tol)?;
    println!("\ndeep point e^{{-41}}·a still constructible; d(a, e^{{-41}}a) = {:.3}",
        thompson_dist(&a, &deep, &tol)?);
    Ok(())
}
