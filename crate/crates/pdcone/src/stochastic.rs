//! The stochastic order between finitely supported measures.
//!
//! `μ ≤ ν` holds when `μ(A) ≤ ν(↑A)` for every subset `A` of the support of
//! `μ`, where `↑A` is the upward closure under the Loewner order. Two
//! independent deciders are provided:
//!
//! * [`stochastic_leq_flow`] — a coupling/max-flow formulation that scales
//!   to supports of a few hundred points and returns a certificate either
//!   way (an order-compatible coupling, or a violating subset), and
//! * [`stochastic_leq_bruteforce`] — direct enumeration of all support
//!   subsets with exact rational mass comparison.
//!
//! The two must agree wherever both apply; the test suite leans on this.

use crate::cone::{loewner_leq, PDMatrix, Tolerances};
use crate::error::{Error, Result};
use crate::flow;
use crate::measure::{lcm_denominators, scale_to_integer, Coupling, DiscreteMeasure, Rational, UniformTuple};

/// Cap on the per-side support size of the flow decider.
pub const ORDER_SUPPORT_CAP: usize = 512;

/// Cap on the left support size of the brute-force decider.
pub const BRUTEFORCE_SUPPORT_CAP: usize = 20;

/// Cap on the tuple length of [`hall_matching`].
pub const HALL_CAP: usize = 256;

/// Decision certificate for the stochastic order.
///
/// A `true` verdict carries a coupling supported on comparable pairs (every
/// pair `(i, j)` satisfies `x_i ≤ y_j`); a `false` verdict carries a subset
/// `A` of the left support with `μ(A) > ν(↑A)` in exact rationals.
#[derive(Clone, Debug)]
pub struct OrderCertificate {
    /// Whether `μ ≤ ν` holds.
    pub verdict: bool,
    /// Order-compatible coupling, present exactly when the verdict is true.
    pub witness: Option<Coupling>,
    /// Violating subset (indices into the left support), present exactly
    /// when the verdict is false.
    pub violating_subset: Option<Vec<usize>>,
}

/// Indices `j` of `right` lying above some point of `A` (given as indices
/// into `left`): the upward closure `↑A` intersected with the right support.
pub fn upper_closure(
    a: &[usize],
    left: &[PDMatrix],
    right: &[PDMatrix],
    tol: &Tolerances,
) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    'scan: for (j, y) in right.iter().enumerate() {
        for &i in a {
            if loewner_leq(left[i].as_sym(), y.as_sym(), tol)? {
                out.push(j);
                continue 'scan;
            }
        }
    }
    Ok(out)
}

/// Comparability adjacency: `adj[i]` lists the right indices `j` with
/// `x_i ≤ y_j`.
fn comparability(
    left: &[PDMatrix],
    right: &[PDMatrix],
    tol: &Tolerances,
) -> Result<Vec<Vec<usize>>> {
    let mut adj = Vec::with_capacity(left.len());
    for x in left {
        let mut row = Vec::new();
        for (j, y) in right.iter().enumerate() {
            if loewner_leq(x.as_sym(), y.as_sym(), tol)? {
                row.push(j);
            }
        }
        adj.push(row);
    }
    Ok(adj)
}

/// Decides `mu ≤ nu` by max-flow feasibility on the comparability graph.
///
/// Weights are scaled to integers by their common denominator; a feasible
/// full flow is exactly a coupling supported on comparable pairs. When
/// infeasible, the left side of the minimum cut is returned as a violating
/// subset, and its exact rational violation `μ(A) > ν(↑A)` is asserted
/// before returning.
pub fn stochastic_leq_flow(
    mu: &DiscreteMeasure,
    nu: &DiscreteMeasure,
    tol: &Tolerances,
) -> Result<OrderCertificate> {
    if mu.dim() != nu.dim() {
        return Err(Error::DimensionMismatch {
            expected: mu.dim(),
            got: nu.dim(),
        });
    }
    for (side, len) in [("left", mu.len()), ("right", nu.len())] {
        if len > ORDER_SUPPORT_CAP {
            return Err(Error::CapExceeded {
                what: if side == "left" {
                    "left order support"
                } else {
                    "right order support"
                },
                got: len,
                cap: ORDER_SUPPORT_CAP,
            });
        }
    }

    let adj = comparability(mu.points(), nu.points(), tol)?;
    let l = lcm_denominators(
        mu.weights().iter().chain(nu.weights().iter()),
        None,
        "order weight lcm",
    )?;

    let m = mu.len();
    let n = nu.len();
    let s = m + n;
    let t = m + n + 1;
    let mut g = flow::Dinic::new(m + n + 2);
    for (i, &w) in mu.weights().iter().enumerate() {
        g.add_edge(s, i, scale_to_integer(w, l));
    }
    let mut arc_ids = vec![Vec::new(); m];
    for (i, row) in adj.iter().enumerate() {
        for &j in row {
            arc_ids[i].push((j, g.add_edge(i, m + j, l)));
        }
    }
    for (j, &w) in nu.weights().iter().enumerate() {
        g.add_edge(m + j, t, scale_to_integer(w, l));
    }

    let flow_value = g.max_flow(s, t);
    if flow_value == l {
        let mut pairs = Vec::new();
        let mut weights = Vec::new();
        for (i, arcs) in arc_ids.iter().enumerate() {
            for &(j, id) in arcs {
                let f = g.flow_of(id);
                if f > 0 {
                    pairs.push((i, j));
                    weights.push(Rational::new(f, l)?);
                }
            }
        }
        let witness = Coupling::new(pairs, weights, mu.clone(), nu.clone())?;
        return Ok(OrderCertificate {
            verdict: true,
            witness: Some(witness),
            violating_subset: None,
        });
    }

    // Min-cut extraction: left nodes reachable from the source in the
    // residual graph form a subset A with μ(A) > ν(↑A).
    let reach = g.residual_reachable(s);
    let subset: Vec<usize> = (0..m).filter(|&i| reach[i]).collect();
    let mu_mass = mu.mass_of(&subset)?;
    let up = upper_closure(&subset, mu.points(), nu.points(), tol)?;
    let nu_mass = nu.mass_of(&up)?;
    assert!(
        mu_mass > nu_mass,
        "min-cut subset fails its violation inequality: {mu_mass} vs {nu_mass}"
    );
    Ok(OrderCertificate {
        verdict: false,
        witness: None,
        violating_subset: Some(subset),
    })
}

/// Decides `mu ≤ nu` by enumerating every subset of the left support and
/// comparing exact rational masses. Limited to 20 support points.
pub fn stochastic_leq_bruteforce(
    mu: &DiscreteMeasure,
    nu: &DiscreteMeasure,
    tol: &Tolerances,
) -> Result<bool> {
    if mu.dim() != nu.dim() {
        return Err(Error::DimensionMismatch {
            expected: mu.dim(),
            got: nu.dim(),
        });
    }
    let m = mu.len();
    if m > BRUTEFORCE_SUPPORT_CAP {
        return Err(Error::CapExceeded {
            what: "brute-force left support",
            got: m,
            cap: BRUTEFORCE_SUPPORT_CAP,
        });
    }
    // Bitmask of right points above each left point.
    let adj = comparability(mu.points(), nu.points(), tol)?;
    let up_masks: Vec<u64> = adj
        .iter()
        .map(|row| row.iter().fold(0u64, |acc, &j| acc | (1 << j)))
        .collect();

    for mask in 1u64..(1 << m) {
        let mut mu_mass = Rational::zero();
        let mut up_mask = 0u64;
        for (i, um) in up_masks.iter().enumerate() {
            if mask & (1 << i) != 0 {
                mu_mass = mu_mass.checked_add(mu.weights()[i])?;
                up_mask |= um;
            }
        }
        let mut nu_mass = Rational::zero();
        for (j, &w) in nu.weights().iter().enumerate() {
            if up_mask & (1 << j) != 0 {
                nu_mass = nu_mass.checked_add(w)?;
            }
        }
        if mu_mass > nu_mass {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Order-compatible permutation between equal-length tuples: returns `σ`
/// with `x_k ≤ y_{σ(k)}` for every `k` when one exists.
///
/// Existence is decided by maximum bipartite matching on the comparability
/// graph, and (by the marriage theorem) is equivalent to the stochastic
/// order of the induced uniform measures.
pub fn hall_matching(
    t1: &UniformTuple,
    t2: &UniformTuple,
    tol: &Tolerances,
) -> Result<Option<Vec<usize>>> {
    if t1.len() != t2.len() {
        return Err(Error::DimensionMismatch {
            expected: t1.len(),
            got: t2.len(),
        });
    }
    if t1.len() > HALL_CAP {
        return Err(Error::CapExceeded {
            what: "matching tuple length",
            got: t1.len(),
            cap: HALL_CAP,
        });
    }
    let adj = comparability(t1.entries(), t2.entries(), tol)?;
    let (count, match_left) = flow::kuhn_matching(t1.len(), t2.len(), &adj);
    if count < t1.len() {
        return Ok(None);
    }
    let mut sigma: Vec<usize> = match_left
        .into_iter()
        .map(|m| m.expect("perfect matching"))
        .collect();

    // Canonicalize: augmenting paths can leave an arbitrary valid σ; swap
    // any out-of-order pair that stays order-compatible, so earlier entries
    // prefer smaller targets and the result is reproducible (the identity
    // whenever the identity is valid and pairwise reachable by swaps).
    let n = t1.len();
    let mut comp = vec![vec![false; n]; n];
    for (i, row) in adj.iter().enumerate() {
        for &j in row {
            comp[i][j] = true;
        }
    }
    loop {
        let mut changed = false;
        for k in 0..n {
            for k2 in (k + 1)..n {
                if sigma[k] > sigma[k2] && comp[k][sigma[k2]] && comp[k2][sigma[k]] {
                    sigma.swap(k, k2);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    Ok(Some(sigma))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::SymMatrix;
    use crate::measure::dirac;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn scalar(v: f64) -> PDMatrix {
        PDMatrix::new(SymMatrix::diag(&[v]).unwrap(), &tol()).unwrap()
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn scalar_measure(pts: &[(f64, Rational)]) -> DiscreteMeasure {
        DiscreteMeasure::new(
            pts.iter().map(|&(v, _)| scalar(v)).collect(),
            pts.iter().map(|&(_, w)| w).collect(),
            &tol(),
        )
        .unwrap()
    }

    #[test]
    fn upper_closure_examples() {
        let left = vec![scalar(1.0), scalar(2.0)];
        let right = vec![scalar(2.0), scalar(3.0)];
        assert!(upper_closure(&[], &left, &right, &tol()).unwrap().is_empty());
        assert_eq!(upper_closure(&[0], &left, &right, &tol()).unwrap(), vec![0, 1]);

        let right2 = vec![scalar(1.0), scalar(3.0)];
        assert_eq!(upper_closure(&[1], &left, &right2, &tol()).unwrap(), vec![1]);
    }

    #[test]
    fn reflexivity_with_diagonal_witness() {
        let m = scalar_measure(&[(1.0, r(1, 2)), (2.0, r(1, 2))]);
        let cert = stochastic_leq_flow(&m, &m, &tol()).unwrap();
        assert!(cert.verdict);
        let w = cert.witness.unwrap();
        assert_eq!(w.pairs(), &[(0, 0), (1, 1)]);
        assert!(stochastic_leq_bruteforce(&m, &m, &tol()).unwrap());
    }

    #[test]
    fn scalar_true_case() {
        let mu = scalar_measure(&[(1.0, r(1, 2)), (2.0, r(1, 2))]);
        let nu = scalar_measure(&[(2.0, r(1, 2)), (3.0, r(1, 2))]);
        let cert = stochastic_leq_flow(&mu, &nu, &tol()).unwrap();
        assert!(cert.verdict);
        // Every witness pair must be comparable.
        let w = cert.witness.unwrap();
        for &(i, j) in w.pairs() {
            assert!(loewner_leq(
                mu.points()[i].as_sym(),
                nu.points()[j].as_sym(),
                &tol()
            )
            .unwrap());
        }
        assert!(stochastic_leq_bruteforce(&mu, &nu, &tol()).unwrap());
    }

    #[test]
    fn scalar_false_case_with_subset() {
        let mu = dirac(scalar(2.0));
        let nu = scalar_measure(&[(1.0, r(1, 2)), (3.0, r(1, 2))]);
        let cert = stochastic_leq_flow(&mu, &nu, &tol()).unwrap();
        assert!(!cert.verdict);
        let subset = cert.violating_subset.unwrap();
        assert_eq!(subset, vec![0]);
        // μ({2}) = 1 > ν(↑{2}) = ν({3}) = 1/2.
        let up = upper_closure(&subset, mu.points(), nu.points(), &tol()).unwrap();
        assert_eq!(nu.mass_of(&up).unwrap(), r(1, 2));
        assert!(!stochastic_leq_bruteforce(&mu, &nu, &tol()).unwrap());
    }

    #[test]
    fn strict_downward_is_false() {
        let mu = scalar_measure(&[(2.0, r(1, 2)), (3.0, r(1, 2))]);
        let nu = scalar_measure(&[(1.0, r(1, 2)), (2.0, r(1, 2))]);
        assert!(!stochastic_leq_flow(&mu, &nu, &tol()).unwrap().verdict);
        assert!(!stochastic_leq_bruteforce(&mu, &nu, &tol()).unwrap());
    }

    #[test]
    fn hall_examples() {
        let t = UniformTuple::new(vec![scalar(1.0), scalar(2.0)]).unwrap();
        let sigma = hall_matching(&t, &t, &tol()).unwrap().unwrap();
        for (k, &j) in sigma.iter().enumerate() {
            assert!(loewner_leq(
                t.entries()[k].as_sym(),
                t.entries()[j].as_sym(),
                &tol()
            )
            .unwrap());
        }

        let t1 = UniformTuple::new(vec![scalar(1.0), scalar(2.0)]).unwrap();
        let t2 = UniformTuple::new(vec![scalar(2.0), scalar(3.0)]).unwrap();
        assert_eq!(hall_matching(&t1, &t2, &tol()).unwrap().unwrap(), vec![0, 1]);

        // (1,3) vs (2,2): 3 fits nowhere, Hall fails on A = {3}.
        let t1 = UniformTuple::new(vec![scalar(1.0), scalar(3.0)]).unwrap();
        let t2 = UniformTuple::new(vec![scalar(2.0), scalar(2.0)]).unwrap();
        assert!(hall_matching(&t1, &t2, &tol()).unwrap().is_none());
    }

    #[test]
    fn matrix_case_with_incomparable_points() {
        // diag(1,2) and diag(2,1) are incomparable; ordering only via diag(2,2).
        let a = PDMatrix::new(SymMatrix::diag(&[1.0, 2.0]).unwrap(), &tol()).unwrap();
        let b = PDMatrix::new(SymMatrix::diag(&[2.0, 1.0]).unwrap(), &tol()).unwrap();
        let top = PDMatrix::new(SymMatrix::diag(&[2.0, 2.0]).unwrap(), &tol()).unwrap();
        let mu = DiscreteMeasure::new(
            vec![a.clone(), b.clone()],
            vec![r(1, 2), r(1, 2)],
            &tol(),
        )
        .unwrap();
        let nu = dirac(top);
        assert!(stochastic_leq_flow(&mu, &nu, &tol()).unwrap().verdict);
        // The reverse fails: the dirac sits above everything, not below.
        let back = stochastic_leq_flow(&nu, &mu, &tol()).unwrap();
        assert!(!back.verdict);
        assert_eq!(
            stochastic_leq_bruteforce(&nu, &mu, &tol()).unwrap(),
            back.verdict
        );
    }
}
