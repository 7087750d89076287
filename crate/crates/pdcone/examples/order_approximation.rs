//! The paired approximation pipeline: given q ≤ p, build sequences
//! q_n ≤ p_n with dyadic weights and supports in a growing interval
//! schedule, converging to q and p in Wasserstein-1 distance.
//!
//! Run with `cargo run --example order_approximation`.

use pdcone::{
    dyadic_lower, order_approximate_pair, ApproxSchedule, DiscreteMeasure, PDMatrix, Rational,
    Result, SymMatrix, Tolerances,
};

fn scalar(v: f64, tol: &Tolerances) -> Result<PDMatrix> {
    PDMatrix::new(SymMatrix::diag(&[v])?, tol)
}

fn main() -> Result<()> {
    let tol = Tolerances::default();
    let e = std::f64::consts::E;

    // The two building blocks, shown on their own first.
    //
    // 1. Dyadic lowering: round weights down to a power-of-two grid and
    //    park the excess at an anchor below the support. The result sits
    //    below the input in the stochastic order and within eps of it in
    //    Wasserstein distance.
    let q = DiscreteMeasure::new(
        vec![scalar(e, &tol)?, scalar(e * e, &tol)?],
        vec![Rational::new(2, 3)?, Rational::new(1, 3)?],
        &tol,
    )?;
    let z = scalar(1.0, &tol)?;
    let lowered = dyadic_lower(&q, &z, 0.2, &tol)?;
    println!("dyadic lowering of weights (2/3, 1/3) at eps = 0.2:");
    for (p, w) in lowered.points().iter().zip(lowered.weights()) {
        println!("  weight {} at point with top-left entry {:.4}", w, p.as_sym().get(0, 0));
    }

    // 2. The full pipeline: at step n, clamp q into [e^{-n}a, e^{n}a]
    //    toward the bottom endpoint (and p toward the top), then round
    //    weights dyadically with eps = 1/n, anchoring at the next
    //    interval's endpoints. The lower sequence only ever moves down,
    //    the upper one up, so q_n ≤ p_n is preserved at every step.
    let q = DiscreteMeasure::new(
        vec![scalar(0.2, &tol)?, scalar(1.0, &tol)?, scalar(4.0, &tol)?],
        vec![Rational::new(1, 3)?, Rational::new(1, 3)?, Rational::new(1, 3)?],
        &tol,
    )?;
    let p = DiscreteMeasure::new(
        vec![scalar(0.4, &tol)?, scalar(2.0, &tol)?, scalar(9.0, &tol)?],
        vec![Rational::new(1, 3)?, Rational::new(1, 3)?, Rational::new(1, 3)?],
        &tol,
    )?;

    let sched = ApproxSchedule::identity(1)?;
    let trace = order_approximate_pair(&q, &p, &sched, 12, &tol)?;

    println!("\n  n   d(q_n,q)   d(p_n,p)   q_n≤p_n   |q_n|  |p_n|");
    for s in &trace.steps {
        println!(
            " {:2}   {:8.5}   {:8.5}   {:>7}   {:4}   {:4}",
            s.n, s.dw_q, s.dw_p, s.leq_ok, s.supp_q, s.supp_p
        );
    }

    let last = trace.steps.last().expect("n_max ≥ 1 yields at least one step");
    println!("\nweights of q_{} are all dyadic:", last.n);
    for w in last.q_n.weights() {
        println!("  {w}");
    }
    Ok(())
}
