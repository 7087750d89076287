//! Karcher means and the barycentric map on measures: closed forms,
//! monotonicity in the Loewner order, and contraction of the
//! Wasserstein-1 distance.
//!
//! Run with `cargo run --example karcher_barycenter`.

use pdcone::{
    barycenter, check_contractive, check_monotone, dirac, geometric_mean_2, karcher_mean,
    loewner_leq, replicate_to_uniform, thompson_dist, wasserstein1, DiscreteMeasure, PDMatrix,
    Rational, Result, SolverConfig, SymMatrix, Tolerances,
};

fn pd(dim: usize, entries: &[f64], tol: &Tolerances) -> Result<PDMatrix> {
    PDMatrix::new(SymMatrix::new(dim, entries.to_vec())?, tol)
}

fn main() -> Result<()> {
    let tol = Tolerances::default();
    let cfg = SolverConfig::default();
    let e = std::f64::consts::E;

    // Two-point closed form: a # b = a^{1/2}(a^{-1/2} b a^{-1/2})^{1/2} a^{1/2}.
    let a = pd(2, &[3.0, 1.0, 1.0, 2.0], &tol)?;
    let b = pd(2, &[1.0, -0.5, -0.5, 4.0], &tol)?;
    let g = geometric_mean_2(&a, &b, &tol)?;
    let solved = karcher_mean(
        &[a.clone(), b.clone()],
        &[Rational::new(1, 2)?, Rational::new(1, 2)?],
        &cfg,
        &tol,
    )?;
    println!(
        "two-point mean: closed form vs solver agree to {:.2e} ({} iterations, residual {:.2e})",
        thompson_dist(&g, &solved.mean, &tol)?,
        solved.iterations,
        solved.residual
    );

    // Scalars reduce to the weighted geometric mean: mean(1, e⁴; 1/4, 3/4) = e³.
    let m = karcher_mean(
        &[pd(1, &[1.0], &tol)?, pd(1, &[e.powi(4)], &tol)?],
        &[Rational::new(1, 4)?, Rational::new(3, 4)?],
        &cfg,
        &tol,
    )?;
    println!(
        "scalar weighted mean of (1, e⁴; 1/4, 3/4) = {:.6} (e³ = {:.6})",
        m.mean.as_sym().get(0, 0),
        e.powi(3)
    );

    // The barycentric map sends δ_x to x and respects replication:
    // weights (3/4, 1/4) equal the uniform mean of (x, x, x, y).
    let x = pd(2, &[2.0, 1.0, 1.0, 3.0], &tol)?;
    let y = pd(2, &[1.0, 0.0, 0.0, 1.0], &tol)?;
    println!(
        "\nβ(δ_x) = x to {:.2e}",
        thompson_dist(&barycenter(&dirac(x.clone()), &cfg, &tol)?, &x, &tol)?
    );
    let m = DiscreteMeasure::new(
        vec![x.clone(), y.clone()],
        vec![Rational::new(3, 4)?, Rational::new(1, 4)?],
        &tol,
    )?;
    let direct = barycenter(&m, &cfg, &tol)?;
    let tuple = replicate_to_uniform(&m)?;
    let replicated = karcher_mean(tuple.entries(), &[Rational::new(1, 4)?; 4], &cfg, &tol)?;
    println!(
        "replication consistency: weighted vs uniform-on-4 means differ by {:.2e}",
        thompson_dist(&direct, &replicated.mean, &tol)?
    );

    // Monotone: pointwise-larger tuples produce a larger mean.
    let lo = [x.clone(), y.clone()];
    let hi = [
        pd(2, &[3.0, 1.5, 1.5, 4.0], &tol)?,
        pd(2, &[2.0, 0.5, 0.5, 1.5], &tol)?,
    ];
    println!("\nmonotone under pointwise order: {}", check_monotone(&lo, &hi, &cfg, &tol)?);

    // Contractive: the mean moves less than the average point movement...
    let (lhs, rhs) = check_contractive(&lo, &hi, &cfg, &tol)?;
    println!("contraction on tuples: d(Λa, Λb) = {lhs:.4} ≤ mean point distance {rhs:.4}");

    // ...and on measures, less than the Wasserstein-1 distance.
    let mu = DiscreteMeasure::new(
        lo.to_vec(),
        vec![Rational::new(1, 2)?, Rational::new(1, 2)?],
        &tol,
    )?;
    let nu = DiscreteMeasure::new(
        hi.to_vec(),
        vec![Rational::new(1, 2)?, Rational::new(1, 2)?],
        &tol,
    )?;
    let bary_dist = thompson_dist(&barycenter(&mu, &cfg, &tol)?, &barycenter(&nu, &cfg, &tol)?, &tol)?;
    let w1 = wasserstein1(&mu, &nu, &tol)?.cost;
    println!("contraction on measures: d(β(μ), β(ν)) = {bary_dist:.4} ≤ W1 = {w1:.4}");

    // Barycenters also preserve the stochastic order between measures.
    println!(
        "barycenter order β(μ) ≤ β(ν): {}",
        loewner_leq(
            barycenter(&mu, &cfg, &tol)?.as_sym(),
            barycenter(&nu, &cfg, &tol)?.as_sym(),
            &tol
        )?
    );
    Ok(())
}
