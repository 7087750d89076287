//! Property tests: metric axioms and invariances of the Thompson distance,
//! exactness of rational weight handling, canonicalization laws, transport
//! metric properties, order-decision coherence, and the interleaving of
//! the approximation pipeline with truncation.

mod common;

use common::{random_measure, random_ordered_pair, random_psd_bump, rng, scalar, tol};
use proptest::prelude::*;
use rand::Rng;

use pdcone::{
    congruence_pd, dyadic_lower, dyadic_upper, geometric_mean_2, in_interval, karcher_mean,
    loewner_leq, product_coupling, replicate_to_uniform, stochastic_leq_bruteforce,
    stochastic_leq_flow, sym_exp, thompson_ball, thompson_dist, truncate_lower, truncate_upper,
    uniform_of_tuple, wasserstein1, ApproxSchedule, DiscreteMeasure, PDMatrix, Rational,
    SolverConfig, SymMatrix,
};

fn gram_pd(dim: usize, g: &[f64]) -> PDMatrix {
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
    PDMatrix::new(SymMatrix::new(dim, data).unwrap(), &tol()).unwrap()
}

fn pd_strategy(dim: usize) -> impl Strategy<Value = PDMatrix> {
    prop::collection::vec(-1.0f64..1.0, dim * dim).prop_map(move |g| gram_pd(dim, &g))
}

proptest! {
    #[test]
    fn thompson_metric_axioms(
        x in pd_strategy(3),
        y in pd_strategy(3),
        z in pd_strategy(3),
    ) {
        let t = tol();
        let dxy = thompson_dist(&x, &y, &t).unwrap();
        let dyx = thompson_dist(&y, &x, &t).unwrap();
        prop_assert!(dxy >= 0.0);
        prop_assert_eq!(dxy, dyx);
        prop_assert_eq!(thompson_dist(&x, &x, &t).unwrap(), 0.0);
        let dxz = thompson_dist(&x, &z, &t).unwrap();
        let dyz = thompson_dist(&y, &z, &t).unwrap();
        prop_assert!(dxz <= dxy + dyz + 1e-9);
    }

    #[test]
    fn thompson_invariances(
        x in pd_strategy(2),
        y in pd_strategy(2),
        s in pd_strategy(2),
        factor in 0.05f64..20.0,
    ) {
        let t = tol();
        let d = thompson_dist(&x, &y, &t).unwrap();
        let d_scaled = thompson_dist(
            &x.scale(factor, &t).unwrap(),
            &y.scale(factor, &t).unwrap(),
            &t,
        ).unwrap();
        prop_assert!((d - d_scaled).abs() <= 1e-9);
        let d_cong = thompson_dist(
            &congruence_pd(&s, &x, &t).unwrap(),
            &congruence_pd(&s, &y, &t).unwrap(),
            &t,
        ).unwrap();
        prop_assert!((d - d_cong).abs() <= 1e-8);
    }

    #[test]
    fn balls_are_order_intervals(
        a in pd_strategy(2),
        x in pd_strategy(2),
        r in 0.1f64..3.0,
    ) {
        let t = tol();
        let d = thompson_dist(&a, &x, &t).unwrap();
        // Stay off the metric boundary where either answer is legitimate.
        prop_assume!((d - r).abs() > 1e-7);
        let ball = thompson_ball(&a, r, &t).unwrap();
        prop_assert_eq!(in_interval(&x, &ball, &t).unwrap(), d <= r);
    }

    #[test]
    fn exp_log_round_trip(x in pd_strategy(3)) {
        let t = tol();
        let back = sym_exp(&x.log(), &t).unwrap();
        prop_assert!(thompson_dist(&x, &back, &t).unwrap() <= 1e-9);
        let sq = x.sqrt(&t).unwrap();
        let again = congruence_pd(&sq, &PDMatrix::identity(3).unwrap(), &t).unwrap();
        prop_assert!(thompson_dist(&x, &again, &t).unwrap() <= 1e-9);
    }

    #[test]
    fn loewner_respects_psd_bumps(
        x in pd_strategy(2),
        h in prop::collection::vec(-0.7f64..0.7, 4),
    ) {
        let t = tol();
        let mut data = vec![0.0; 4];
        for i in 0..2 {
            for j in 0..2 {
                let mut s = 0.0;
                for k in 0..2 {
                    s += h[i * 2 + k] * h[j * 2 + k];
                }
                data[i * 2 + j] = s;
            }
        }
        let bump = SymMatrix::new(2, data).unwrap();
        let y = x.as_sym().add(&bump).unwrap();
        prop_assert!(loewner_leq(x.as_sym(), &y, &t).unwrap());
    }

    #[test]
    fn rational_parse_round_trip(num in 1i64..5000, den in 1i64..5000) {
        let r = Rational::new(num, den).unwrap();
        let back: Rational = r.to_string().parse().unwrap();
        prop_assert_eq!(r, back);
    }

    #[test]
    fn rational_field_laws(
        (a, b, c) in (1i64..80, 1i64..80, 1i64..80),
        (da, db, dc) in (1i64..80, 1i64..80, 1i64..80),
    ) {
        let x = Rational::new(a, da).unwrap();
        let y = Rational::new(b, db).unwrap();
        let z = Rational::new(c, dc).unwrap();
        prop_assert_eq!(x.checked_add(y).unwrap(), y.checked_add(x).unwrap());
        prop_assert_eq!(x.checked_mul(y).unwrap(), y.checked_mul(x).unwrap());
        prop_assert_eq!(
            x.checked_add(y).unwrap().checked_add(z).unwrap(),
            x.checked_add(y.checked_add(z).unwrap()).unwrap()
        );
        prop_assert_eq!(
            x.checked_mul(y.checked_add(z).unwrap()).unwrap(),
            x.checked_mul(y).unwrap().checked_add(x.checked_mul(z).unwrap()).unwrap()
        );
    }
}

#[test]
fn canonicalization_is_idempotent_and_mass_exact() {
    let mut rng = rng(11);
    for _ in 0..50 {
        let k = rng.gen_range(1..=6);
        let m = random_measure(&mut rng, 2, k);
        let again =
            DiscreteMeasure::new(m.points().to_vec(), m.weights().to_vec(), &tol()).unwrap();
        assert_eq!(m, again);
        let total = m
            .weights()
            .iter()
            .try_fold(Rational::zero(), |acc, &w| acc.checked_add(w))
            .unwrap();
        assert_eq!(total, Rational::one());
    }
}

#[test]
fn replication_round_trips() {
    let mut rng = rng(12);
    for _ in 0..30 {
        let k = rng.gen_range(1..=5);
        let m = random_measure(&mut rng, 2, k);
        let tuple = replicate_to_uniform(&m).unwrap();
        let back = uniform_of_tuple(&tuple, &tol()).unwrap();
        assert_eq!(m, back);
    }
}

#[test]
fn wasserstein_metric_properties() {
    let mut rng = rng(13);
    for _ in 0..40 {
        let (km, kn, kr) = (
            rng.gen_range(1..=4),
            rng.gen_range(1..=4),
            rng.gen_range(1..=4),
        );
        let mu = random_measure(&mut rng, 2, km);
        let nu = random_measure(&mut rng, 2, kn);
        let rho = random_measure(&mut rng, 2, kr);
        let dmn = wasserstein1(&mu, &nu, &tol()).unwrap().cost;
        let dnm = wasserstein1(&nu, &mu, &tol()).unwrap().cost;
        assert!(dmn >= 0.0);
        assert!((dmn - dnm).abs() <= 1e-9, "symmetry: {dmn} vs {dnm}");
        assert_eq!(wasserstein1(&mu, &mu, &tol()).unwrap().cost, 0.0);
        let dmr = wasserstein1(&mu, &rho, &tol()).unwrap().cost;
        let dnr = wasserstein1(&nu, &rho, &tol()).unwrap().cost;
        assert!(dmr <= dmn + dnr + 1e-9, "triangle: {dmr} > {dmn} + {dnr}");
        // Any explicit coupling bounds the optimum from above.
        let product = product_coupling(&mu, &nu).unwrap();
        let mut product_cost = 0.0;
        for (&(i, j), w) in product.pairs().iter().zip(product.weights()) {
            product_cost += w.to_f64()
                * thompson_dist(&mu.points()[i], &nu.points()[j], &tol()).unwrap();
        }
        assert!(dmn <= product_cost + 1e-9);
    }
}

#[test]
fn order_deciders_agree_and_certify() {
    let mut rng = rng(14);
    for case in 0..60 {
        let dim = 1 + (case % 3);
        let (ka, kb) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let (mu, nu) = if case % 2 == 0 {
            random_ordered_pair(&mut rng, dim, ka)
        } else {
            (
                random_measure(&mut rng, dim, ka),
                random_measure(&mut rng, dim, kb),
            )
        };
        let cert = stochastic_leq_flow(&mu, &nu, &tol()).unwrap();
        let brute = stochastic_leq_bruteforce(&mu, &nu, &tol()).unwrap();
        assert_eq!(cert.verdict, brute, "deciders disagree at case {case}");
        if let Some(w) = &cert.witness {
            // Every arc of the witness joins comparable points.
            for &(i, j) in w.pairs() {
                assert!(loewner_leq(
                    mu.points()[i].as_sym(),
                    nu.points()[j].as_sym(),
                    &tol()
                )
                .unwrap());
            }
        }
        // Reflexivity while we are here.
        assert!(stochastic_leq_flow(&mu, &mu, &tol()).unwrap().verdict);
    }
}

#[test]
fn order_is_transitive_on_stacked_bumps() {
    let mut rng = rng(15);
    for _ in 0..20 {
        let (mu, nu) = random_ordered_pair(&mut rng, 2, 4);
        // Stack a second bump on nu's points to get rho with nu ≤ rho.
        let bumped: Vec<PDMatrix> = nu
            .points()
            .iter()
            .map(|p| {
                let b = random_psd_bump(&mut rng, 2, 0.5);
                PDMatrix::new(p.as_sym().add(&b).unwrap(), &tol()).unwrap()
            })
            .collect();
        let rho = DiscreteMeasure::new(bumped, nu.weights().to_vec(), &tol()).unwrap();
        assert!(stochastic_leq_flow(&nu, &rho, &tol()).unwrap().verdict);
        assert!(stochastic_leq_flow(&mu, &rho, &tol()).unwrap().verdict);
    }
}

#[test]
fn dyadic_rounding_contract_randomized() {
    let mut rng = rng(16);
    for case in 0..40 {
        let k = rng.gen_range(1..=5);
        let m = random_measure(&mut rng, 2, k);
        let eps = [0.5, 0.2, 0.05][case % 3];
        // Anchor strictly below the support: scale the pointwise floor down.
        let z = m.points()[0].scale(0.02, &tol()).unwrap();
        let z_ok = m
            .points()
            .iter()
            .all(|p| loewner_leq(z.as_sym(), p.as_sym(), &tol()).unwrap());
        if !z_ok {
            continue;
        }
        let lower = dyadic_lower(&m, &z, eps, &tol()).unwrap();
        assert!(lower.weights().iter().all(|w| w.is_dyadic()));
        assert!(stochastic_leq_flow(&lower, &m, &tol()).unwrap().verdict);
        assert!(wasserstein1(&lower, &m, &tol()).unwrap().cost < eps);

        let w = m.points()[0].scale(60.0, &tol()).unwrap();
        if m.points()
            .iter()
            .all(|p| loewner_leq(p.as_sym(), w.as_sym(), &tol()).unwrap())
        {
            let upper = dyadic_upper(&m, &w, eps, &tol()).unwrap();
            assert!(upper.weights().iter().all(|we| we.is_dyadic()));
            assert!(stochastic_leq_flow(&m, &upper, &tol()).unwrap().verdict);
            assert!(wasserstein1(&m, &upper, &tol()).unwrap().cost < eps);
        }
    }
}

#[test]
fn truncation_interleaves_with_pipeline() {
    let mut rng = rng(17);
    let sched = ApproxSchedule::identity(2).unwrap();
    for _ in 0..10 {
        let (q, p) = random_ordered_pair(&mut rng, 2, 3);
        for n in 1..=4u32 {
            let tq = truncate_lower(&q, &sched, n, &tol()).unwrap();
            let tp = truncate_upper(&p, &sched, n, &tol()).unwrap();
            // Lowered image of the smaller measure stays below the raised
            // image of the larger one.
            assert!(stochastic_leq_flow(&tq, &tp, &tol()).unwrap().verdict);
            // Dyadic rounding pushes strictly outward around them.
            let z = sched.lower_endpoint(n + 1, &tol()).unwrap();
            let w = sched.upper_endpoint(n + 1, &tol()).unwrap();
            let eps = 1.0 / n as f64;
            let q_n = dyadic_lower(&tq, &z, eps, &tol()).unwrap();
            let p_n = dyadic_upper(&tp, &w, eps, &tol()).unwrap();
            assert!(stochastic_leq_flow(&q_n, &tq, &tol()).unwrap().verdict);
            assert!(stochastic_leq_flow(&tp, &p_n, &tol()).unwrap().verdict);
            assert!(stochastic_leq_flow(&q_n, &p_n, &tol()).unwrap().verdict);
        }
    }
}

#[test]
fn karcher_agrees_with_closed_form_and_contracts() {
    let mut rng = rng(18);
    let cfg = SolverConfig::default();
    for _ in 0..25 {
        let a = pdcone::gen_pd(&mut rng, 2, &tol()).unwrap();
        let b = pdcone::gen_pd(&mut rng, 2, &tol()).unwrap();
        let half = Rational::new(1, 2).unwrap();
        let solved = karcher_mean(&[a.clone(), b.clone()], &[half, half], &cfg, &tol()).unwrap();
        let closed = geometric_mean_2(&a, &b, &tol()).unwrap();
        assert!(thompson_dist(&solved.mean, &closed, &tol()).unwrap() <= 1e-8);
        assert!(solved.residual <= cfg.tol * (1.0 + solved.mean.frob_norm()));
    }
    for _ in 0..15 {
        let mu = random_measure(&mut rng, 2, 3);
        let nu = random_measure(&mut rng, 2, 3);
        let bmu = pdcone::barycenter(&mu, &cfg, &tol()).unwrap();
        let bnu = pdcone::barycenter(&nu, &cfg, &tol()).unwrap();
        let lhs = thompson_dist(&bmu, &bnu, &tol()).unwrap();
        let rhs = wasserstein1(&mu, &nu, &tol()).unwrap().cost;
        assert!(lhs <= rhs + 1e-8, "contraction: {lhs} > {rhs}");
    }
}

#[test]
fn scalar_sanity_anchors() {
    // Fixed tiny cases whose values are computable by hand.
    let t = tol();
    assert!((thompson_dist(&scalar(1.0), &scalar(std::f64::consts::E), &t).unwrap() - 1.0).abs() < 1e-12);
    let mu = DiscreteMeasure::new(
        vec![scalar(1.0), scalar(std::f64::consts::E)],
        vec![Rational::new(1, 2).unwrap(), Rational::new(1, 2).unwrap()],
        &t,
    )
    .unwrap();
    let nu = pdcone::dirac(scalar(1.0));
    assert!((wasserstein1(&mu, &nu, &t).unwrap().cost - 0.5).abs() < 1e-12);
}
