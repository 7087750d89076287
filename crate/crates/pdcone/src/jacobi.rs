//! Cyclic Jacobi eigensolver for small dense symmetric matrices.
//!
//! Sweeps the strict upper triangle in row-major order, rotating away one
//! off-diagonal entry at a time. The Frobenius norm is invariant under the
//! rotations, so convergence is declared when the off-diagonal mass drops
//! below `eig_tol` times the (fixed) Frobenius norm of the input.

/// Eigendecomposition `A = Q Λ Qᵀ` with `vals` in descending order and the
/// columns of the row-major matrix `vecs` holding the matching eigenvectors.
pub(crate) struct EigDecomp {
    pub vals: Vec<f64>,
    pub vecs: Vec<f64>,
}

/// Outcome of a failed run: sweeps executed and remaining off-diagonal mass.
#[derive(Debug)]
pub(crate) struct NonConvergence {
    pub sweeps: usize,
    pub off_diag: f64,
}

const MAX_SWEEPS: usize = 100;

/// Diagonalizes the symmetric row-major matrix `entries` (`dim` × `dim`).
pub(crate) fn jacobi_eig(
    dim: usize,
    entries: &[f64],
    eig_tol: f64,
) -> Result<EigDecomp, NonConvergence> {
    debug_assert_eq!(entries.len(), dim * dim);
    let mut a = entries.to_vec();
    let mut v = vec![0.0; dim * dim];
    for i in 0..dim {
        v[i * dim + i] = 1.0;
    }

    let fro: f64 = entries.iter().map(|x| x * x).sum::<f64>().sqrt();
    let threshold = eig_tol * fro;

    let mut sweeps = 0;
    loop {
        let off = off_diag_norm(dim, &a);
        if off <= threshold {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(NonConvergence {
                sweeps,
                off_diag: off,
            });
        }
        for p in 0..dim {
            for q in (p + 1)..dim {
                rotate(dim, &mut a, &mut v, p, q);
            }
        }
        sweeps += 1;
    }

    // Extract the diagonal and sort descending, keeping columns paired.
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&i, &j| a[j * dim + j].total_cmp(&a[i * dim + i]).then(i.cmp(&j)));
    let vals: Vec<f64> = order.iter().map(|&i| a[i * dim + i]).collect();
    let mut vecs = vec![0.0; dim * dim];
    for (new_col, &old_col) in order.iter().enumerate() {
        for r in 0..dim {
            vecs[r * dim + new_col] = v[r * dim + old_col];
        }
    }
    Ok(EigDecomp { vals, vecs })
}

fn off_diag_norm(dim: usize, a: &[f64]) -> f64 {
    let mut s = 0.0;
    for i in 0..dim {
        for j in (i + 1)..dim {
            s += 2.0 * a[i * dim + j] * a[i * dim + j];
        }
    }
    s.sqrt()
}

/// One Jacobi rotation zeroing `a[p][q]`, accumulating into `v`.
fn rotate(dim: usize, a: &mut [f64], v: &mut [f64], p: usize, q: usize) {
    let apq = a[p * dim + q];
    if apq == 0.0 {
        return;
    }
    let h = a[q * dim + q] - a[p * dim + p];
    // For |theta| huge the closed form underflows; fall back to its limit.
    let t = if apq.abs() * 1e15 < h.abs() {
        apq / h
    } else {
        let theta = 0.5 * h / apq;
        let t = 1.0 / (theta.abs() + (1.0 + theta * theta).sqrt());
        if theta < 0.0 {
            -t
        } else {
            t
        }
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let tau = s / (1.0 + c);

    a[p * dim + p] -= t * apq;
    a[q * dim + q] += t * apq;
    a[p * dim + q] = 0.0;
    a[q * dim + p] = 0.0;
    for r in 0..dim {
        if r == p || r == q {
            continue;
        }
        let arp = a[r * dim + p];
        let arq = a[r * dim + q];
        a[r * dim + p] = arp - s * (arq + tau * arp);
        a[p * dim + r] = a[r * dim + p];
        a[r * dim + q] = arq + s * (arp - tau * arq);
        a[q * dim + r] = a[r * dim + q];
    }
    for r in 0..dim {
        let vrp = v[r * dim + p];
        let vrq = v[r * dim + q];
        v[r * dim + p] = vrp - s * (vrq + tau * vrp);
        v[r * dim + q] = vrq + s * (vrp - tau * vrq);
    }
}
