//! Shared helpers for the integration tests: seeded generators and an
//! independent transport oracle that enumerates basic feasible solutions.
#![allow(dead_code)]

use pdcone::{
    gen_pd, thompson_dist, DiscreteMeasure, PDMatrix, Rational, SymMatrix, Tolerances,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn tol() -> Tolerances {
    Tolerances::default()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn scalar(v: f64) -> PDMatrix {
    PDMatrix::new(SymMatrix::diag(&[v]).unwrap(), &tol()).unwrap()
}

/// Random positive weights with a small common denominator, summing to 1.
pub fn random_weights(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    let counts: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=8)).collect();
    let total: i64 = counts.iter().sum();
    counts
        .into_iter()
        .map(|c| Rational::new(c, total).unwrap())
        .collect()
}

/// Random measure with `support` points of dimension `dim`.
pub fn random_measure(rng: &mut ChaCha8Rng, dim: usize, support: usize) -> DiscreteMeasure {
    let points: Vec<PDMatrix> = (0..support)
        .map(|_| gen_pd(rng, dim, &tol()).unwrap())
        .collect();
    let weights = random_weights(rng, support);
    DiscreteMeasure::new(points, weights, &tol()).unwrap()
}

/// Random positive-semidefinite bump `H·Hᵀ` with entries of `H` uniform in
/// `(−scale, scale)`.
pub fn random_psd_bump(rng: &mut ChaCha8Rng, dim: usize, scale: f64) -> SymMatrix {
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
    SymMatrix::new(dim, data).unwrap()
}

/// Ordered pair with shared weights and pointwise-comparable supports.
pub fn random_ordered_pair(
    rng: &mut ChaCha8Rng,
    dim: usize,
    support: usize,
) -> (DiscreteMeasure, DiscreteMeasure) {
    let weights = random_weights(rng, support);
    let mut lo = Vec::with_capacity(support);
    let mut hi = Vec::with_capacity(support);
    for _ in 0..support {
        let x = gen_pd(rng, dim, &tol()).unwrap();
        let bump = random_psd_bump(rng, dim, 0.6);
        let y = PDMatrix::new(x.as_sym().add(&bump).unwrap(), &tol()).unwrap();
        lo.push(x);
        hi.push(y);
    }
    (
        DiscreteMeasure::new(lo, weights.clone(), &tol()).unwrap(),
        DiscreteMeasure::new(hi, weights, &tol()).unwrap(),
    )
}

/// Thompson cost matrix between two supports.
pub fn cost_matrix(mu: &DiscreteMeasure, nu: &DiscreteMeasure) -> Vec<Vec<f64>> {
    mu.points()
        .iter()
        .map(|x| {
            nu.points()
                .iter()
                .map(|y| thompson_dist(x, y, &tol()).unwrap())
                .collect()
        })
        .collect()
}

/// Exact optimal transport cost by enumerating every spanning-tree basis
/// of the balanced transportation polytope. Exponential, so only for tiny
/// supports; entirely independent of the flow solver under test.
pub fn oracle_transport_cost(supply: &[f64], demand: &[f64], cost: &[Vec<f64>]) -> f64 {
    let m = supply.len();
    let n = demand.len();
    let arcs: Vec<(usize, usize)> = (0..m)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .collect();
    let k = m + n - 1;
    let mut best = f64::INFINITY;
    let mut sel = Vec::with_capacity(k);
    enumerate(&arcs, k, 0, &mut sel, &mut |basis| {
        if let Some(c) = basis_cost(basis, supply, demand, cost, m, n) {
            if c < best {
                best = c;
            }
        }
    });
    assert!(best.is_finite(), "balanced problems always have a basis");
    best
}

fn enumerate(
    arcs: &[(usize, usize)],
    k: usize,
    start: usize,
    sel: &mut Vec<(usize, usize)>,
    visit: &mut impl FnMut(&[(usize, usize)]),
) {
    if sel.len() == k {
        visit(sel);
        return;
    }
    let needed = k - sel.len();
    for idx in start..arcs.len() {
        if arcs.len() - idx < needed {
            break;
        }
        sel.push(arcs[idx]);
        enumerate(arcs, k, idx + 1, sel, visit);
        sel.pop();
    }
}

/// Solves the unique flow on a candidate tree basis by peeling leaves;
/// `None` when the arcs do not form a spanning tree or the flow goes
/// negative.
fn basis_cost(
    basis: &[(usize, usize)],
    supply: &[f64],
    demand: &[f64],
    cost: &[Vec<f64>],
    m: usize,
    n: usize,
) -> Option<f64> {
    let nodes = m + n;
    let mut degree = vec![0usize; nodes];
    for &(i, j) in basis {
        degree[i] += 1;
        degree[m + j] += 1;
    }
    // Node balances: positive supply on the left, negative demand on the right.
    let mut balance: Vec<f64> = supply
        .iter()
        .copied()
        .chain(demand.iter().map(|d| -d))
        .collect();
    let remaining: Vec<(usize, usize)> = basis.to_vec();
    let mut used = vec![false; remaining.len()];
    let mut total = 0.0;
    for _ in 0..remaining.len() {
        // Find an unused arc incident to a leaf node.
        let pos = (0..remaining.len()).find(|&p| {
            if used[p] {
                return false;
            }
            let (i, j) = remaining[p];
            degree[i] == 1 || degree[m + j] == 1
        })?;
        let (i, j) = remaining[pos];
        used[pos] = true;
        let flow = if degree[i] == 1 {
            balance[i]
        } else {
            -balance[m + j]
        };
        if flow < -1e-9 {
            return None;
        }
        let flow = flow.max(0.0);
        total += flow * cost[i][j];
        balance[i] -= flow;
        balance[m + j] += flow;
        degree[i] -= 1;
        degree[m + j] -= 1;
    }
    Some(total)
}

/// Oracle Wasserstein-1 distance between two measures.
pub fn oracle_w1(mu: &DiscreteMeasure, nu: &DiscreteMeasure) -> f64 {
    let supply: Vec<f64> = mu.weights().iter().map(|w| w.to_f64()).collect();
    let demand: Vec<f64> = nu.weights().iter().map(|w| w.to_f64()).collect();
    oracle_transport_cost(&supply, &demand, &cost_matrix(mu, nu))
}
