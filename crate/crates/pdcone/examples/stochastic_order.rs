//! Deciding the stochastic order between measures: flow-based certificates,
//! the independent brute-force check, and Hall matchings for uniform tuples.
//!
//! Run with `cargo run --example stochastic_order`.

use pdcone::{
    hall_matching, stochastic_leq_bruteforce, stochastic_leq_flow, upper_closure, DiscreteMeasure,
    PDMatrix, Rational, Result, SymMatrix, Tolerances, UniformTuple,
};

fn scalar(v: f64, tol: &Tolerances) -> Result<PDMatrix> {
    PDMatrix::new(SymMatrix::diag(&[v])?, tol)
}

fn main() -> Result<()> {
    let tol = Tolerances::default();

    // μ ≤ ν in the stochastic order iff μ(A) ≤ ν(↑A) for every subset A of
    // μ's support, where ↑A is everything above some point of A.
    let mu = DiscreteMeasure::new(
        vec![scalar(1.0, &tol)?, scalar(3.0, &tol)?],
        vec![Rational::new(1, 2)?, Rational::new(1, 2)?],
        &tol,
    )?;
    let nu = DiscreteMeasure::new(
        vec![scalar(2.0, &tol)?, scalar(4.0, &tol)?],
        vec![Rational::new(1, 2)?, Rational::new(1, 2)?],
        &tol,
    )?;

    // The flow decider returns a certificate either way: a mass-preserving
    // coupling supported on comparable pairs when true, or an explicit
    // violating subset when false.
    let cert = stochastic_leq_flow(&mu, &nu, &tol)?;
    println!("mu ≤ nu: {}", cert.verdict);
    if let Some(w) = &cert.witness {
        println!("witness coupling (only comparable pairs carry mass):");
        for (&(i, j), wt) in w.pairs().iter().zip(w.weights()) {
            println!("  mu[{i}] → nu[{j}] carries {wt}");
        }
    }

    // The reverse direction fails, and the certificate names a subset A
    // with mu-mass strictly above ν(↑A).
    let cert = stochastic_leq_flow(&nu, &mu, &tol)?;
    println!("\nnu ≤ mu: {}", cert.verdict);
    if let Some(a) = &cert.violating_subset {
        let up = upper_closure(a, nu.points(), mu.points(), &tol)?;
        println!("violating subset (indices into nu's support): {a:?}");
        println!("  nu(A) = {}", nu.mass_of(a)?);
        println!("  mu(↑A) = {}", mu.mass_of(&up)?);
    }

    // An independent exhaustive check over all support subsets agrees.
    println!("\nbrute-force agreement:");
    println!("  mu ≤ nu: {}", stochastic_leq_bruteforce(&mu, &nu, &tol)?);
    println!("  nu ≤ mu: {}", stochastic_leq_bruteforce(&nu, &mu, &tol)?);

    // For uniform tuples the order is a perfect matching: x_k ≤ y_{σ(k)}.
    let xs = UniformTuple::new(vec![scalar(1.0, &tol)?, scalar(2.0, &tol)?])?;
    let ys = UniformTuple::new(vec![scalar(2.0, &tol)?, scalar(3.0, &tol)?])?;
    match hall_matching(&xs, &ys, &tol)? {
        Some(sigma) => println!("\nHall matching for tuples: σ = {sigma:?}"),
        None => println!("\nno Hall matching exists"),
    }

    // Incomparable matrices make the order fail in both directions.
    let p = PDMatrix::new(SymMatrix::diag(&[1.0, 4.0])?, &tol)?;
    let q = PDMatrix::new(SymMatrix::diag(&[4.0, 1.0])?, &tol)?;
    let dp = pdcone::dirac(p);
    let dq = pdcone::dirac(q);
    println!(
        "\nincomparable diracs: δp ≤ δq: {}, δq ≤ δp: {}",
        stochastic_leq_flow(&dp, &dq, &tol)?.verdict,
        stochastic_leq_flow(&dq, &dp, &tol)?.verdict
    );
    Ok(())
}
