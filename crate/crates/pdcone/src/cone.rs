//! Symmetric matrices, the open cone of positive-definite matrices, the
//! Loewner order, and the Thompson (part) metric.
//!
//! The cone carries two intertwined structures used throughout the crate:
//!
//! * the **Loewner order** `x ≤ y` iff `y − x` is positive semidefinite, and
//! * the **Thompson metric** `d(x, y) = max{log M(x/y), log M(y/x)}`, where
//!   `M(x/y) = inf{λ > 0 : x ≤ λy}` is the largest eigenvalue of
//!   `y^{-1/2} x y^{-1/2}`.
//!
//! The two meet in the ball–interval identity: the closed Thompson ball of
//! radius `r` around `a` is exactly the order interval `[e^{-r}a, e^{r}a]`.

use crate::error::{Error, Result};
use crate::jacobi;

/// Maximum supported matrix dimension.
pub const MAX_DIM: usize = 16;

/// Numerical tolerances shared by every order- and spectrum-sensitive
/// operation, so that borderline cases resolve the same way everywhere.
#[derive(Clone, Debug)]
pub struct Tolerances {
    /// Relative positive-definiteness floor: the smallest eigenvalue must
    /// exceed `pd_tol · max(1, spectral norm)` at input boundaries.
    pub pd_tol: f64,
    /// Jacobi convergence threshold on the off-diagonal Frobenius mass,
    /// relative to the Frobenius norm of the input; also the scale at which
    /// measure support points are considered identical.
    pub eig_tol: f64,
    /// Relative slack for Loewner comparisons: `x ≤ y` holds when the
    /// smallest eigenvalue of `y − x` is at least
    /// `−order_tol · max(1, ‖y−x‖_F)`.
    pub order_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            pd_tol: 1e-9,
            eig_tol: 1e-12,
            order_tol: 1e-9,
        }
    }
}

impl Tolerances {
    /// Builds a custom tolerance set; all values must lie in `(0, 1e-3)`.
    pub fn new(pd_tol: f64, eig_tol: f64, order_tol: f64) -> Result<Self> {
        for (name, v) in [
            ("pd_tol", pd_tol),
            ("eig_tol", eig_tol),
            ("order_tol", order_tol),
        ] {
            if !(v > 0.0 && v < 1e-3) {
                return Err(Error::Precondition {
                    reason: format!("{name} = {v} outside (0, 1e-3)"),
                });
            }
        }
        Ok(Tolerances {
            pd_tol,
            eig_tol,
            order_tol,
        })
    }
}

/// A real symmetric matrix with exactly mirrored entries.
///
/// Construction averages `(A + Aᵀ)/2` and rejects inputs whose asymmetry
/// exceeds `1e-8` relative to the Frobenius norm, so stored matrices satisfy
/// `entries[i][j] == entries[j][i]` bit for bit.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix {
    dim: usize,
    entries: Vec<f64>,
}

/// Relative asymmetry allowed before construction refuses to symmetrize.
pub const ASYMMETRY_LIMIT: f64 = 1e-8;

impl SymMatrix {
    /// Builds a symmetric matrix from row-major data, averaging the two
    /// triangles.
    pub fn new(dim: usize, data: Vec<f64>) -> Result<Self> {
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::DimensionOutOfRange { dim, max: MAX_DIM });
        }
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                got: data.len(),
            });
        }
        if data.iter().any(|x| !x.is_finite()) {
            return Err(Error::Precondition {
                reason: "matrix entries must be finite".into(),
            });
        }
        let fro: f64 = data.iter().map(|x| x * x).sum::<f64>().sqrt();
        let mut asym2 = 0.0;
        for i in 0..dim {
            for j in (i + 1)..dim {
                let d = data[i * dim + j] - data[j * dim + i];
                asym2 += 2.0 * d * d;
            }
        }
        let asym = asym2.sqrt();
        let limit = ASYMMETRY_LIMIT * fro.max(1.0);
        if asym > limit {
            return Err(Error::NotSymmetric {
                asymmetry: asym,
                limit,
            });
        }
        let mut entries = data;
        for i in 0..dim {
            for j in (i + 1)..dim {
                let avg = 0.5 * (entries[i * dim + j] + entries[j * dim + i]);
                entries[i * dim + j] = avg;
                entries[j * dim + i] = avg;
            }
        }
        Ok(SymMatrix { dim, entries })
    }

    /// The zero matrix.
    pub fn zeros(dim: usize) -> Result<Self> {
        SymMatrix::new(dim, vec![0.0; dim * dim])
    }

    /// The identity matrix.
    pub fn identity(dim: usize) -> Result<Self> {
        let mut data = vec![0.0; dim * dim];
        for i in 0..dim {
            data[i * dim + i] = 1.0;
        }
        SymMatrix::new(dim, data)
    }

    /// Diagonal matrix from the given entries.
    pub fn diag(d: &[f64]) -> Result<Self> {
        let dim = d.len();
        let mut data = vec![0.0; dim * dim];
        for (i, &v) in d.iter().enumerate() {
            data[i * dim + i] = v;
        }
        SymMatrix::new(dim, data)
    }

    /// Matrix dimension `n`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Row-major entries, length `n·n`.
    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// Entry `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.dim + j]
    }

    /// Frobenius norm.
    pub fn frob_norm(&self) -> f64 {
        self.entries.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// Entrywise sum; errors on dimension mismatch.
    pub fn add(&self, other: &SymMatrix) -> Result<SymMatrix> {
        self.zip_with(other, |a, b| a + b)
    }

    /// Entrywise difference; errors on dimension mismatch.
    pub fn sub(&self, other: &SymMatrix) -> Result<SymMatrix> {
        self.zip_with(other, |a, b| a - b)
    }

    /// Scalar multiple.
    pub fn scale(&self, t: f64) -> SymMatrix {
        SymMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|x| t * x).collect(),
        }
    }

    fn zip_with(&self, other: &SymMatrix, f: impl Fn(f64, f64) -> f64) -> Result<SymMatrix> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let entries = self
            .entries
            .iter()
            .zip(other.entries.iter())
            .map(|(&a, &b)| f(a, b))
            .collect();
        Ok(SymMatrix {
            dim: self.dim,
            entries,
        })
    }

    /// Largest absolute entry.
    pub fn max_abs_entry(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Entrywise ℓ∞ distance to another matrix of the same dimension.
    pub(crate) fn linf_dist(&self, other: &SymMatrix) -> f64 {
        self.entries
            .iter()
            .zip(other.entries.iter())
            .fold(0.0f64, |m, (&a, &b)| m.max((a - b).abs()))
    }

    /// Lexicographic comparison on row-major entries (total order used for
    /// canonical point ordering).
    pub(crate) fn lex_cmp(&self, other: &SymMatrix) -> std::cmp::Ordering {
        for (a, b) in self.entries.iter().zip(other.entries.iter()) {
            let c = a.total_cmp(b);
            if c != std::cmp::Ordering::Equal {
                return c;
            }
        }
        std::cmp::Ordering::Equal
    }
}

/// Dense row-major product `a · b` of `n × n` matrices.
fn mat_mul(n: usize, a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == 0.0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    out
}

/// Sandwich `s · x · s` for symmetric `s`, `x`, symmetrized to kill roundoff.
pub(crate) fn sym_sandwich(s: &SymMatrix, x: &SymMatrix) -> SymMatrix {
    let n = s.dim;
    let sx = mat_mul(n, &s.entries, &x.entries);
    let mut sxs = mat_mul(n, &sx, &s.entries);
    for i in 0..n {
        for j in (i + 1)..n {
            let avg = 0.5 * (sxs[i * n + j] + sxs[j * n + i]);
            sxs[i * n + j] = avg;
            sxs[j * n + i] = avg;
        }
    }
    SymMatrix {
        dim: n,
        entries: sxs,
    }
}

/// Eigendecomposition of a symmetric matrix.
///
/// Returns `(eigenvalues, q)` with eigenvalues in descending order and the
/// columns of the row-major orthogonal matrix `q` holding matching unit
/// eigenvectors, so `a = q · diag(eigenvalues) · qᵀ`.
pub fn eig_sym(a: &SymMatrix, tol: &Tolerances) -> Result<(Vec<f64>, Vec<f64>)> {
    match jacobi::jacobi_eig(a.dim, &a.entries, tol.eig_tol) {
        Ok(e) => Ok((e.vals, e.vecs)),
        Err(nc) => Err(Error::EigNonConvergence {
            sweeps: nc.sweeps,
            off_diag: nc.off_diag,
        }),
    }
}

/// Rebuilds `q · diag(vals) · qᵀ` as an exactly symmetric matrix.
fn from_eig(dim: usize, vals: &[f64], vecs: &[f64]) -> SymMatrix {
    let mut entries = vec![0.0; dim * dim];
    for i in 0..dim {
        for j in i..dim {
            let mut s = 0.0;
            for k in 0..dim {
                s += vecs[i * dim + k] * vals[k] * vecs[j * dim + k];
            }
            entries[i * dim + j] = s;
            entries[j * dim + i] = s;
        }
    }
    SymMatrix { dim, entries }
}

/// A symmetric positive-definite matrix.
///
/// The eigendecomposition is computed once at construction and cached, so
/// spectral maps (`sqrt`, `inv_sqrt`, `inv`, `log`, scaling) cost no further
/// eigensolves. Constructed values always have strictly positive spectra;
/// the user-facing constructor additionally enforces the absolute floor
/// `min eig > pd_tol · max(1, spectral norm)`.
#[derive(Clone, Debug)]
pub struct PDMatrix {
    base: SymMatrix,
    /// Eigenvalues, descending; all strictly positive.
    eigvals: Vec<f64>,
    /// Row-major orthogonal matrix whose columns pair with `eigvals`.
    eigvecs: Vec<f64>,
}

impl PartialEq for PDMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base
    }
}

impl PDMatrix {
    /// Validates positive definiteness (with the absolute floor) and caches
    /// the eigendecomposition.
    pub fn new(base: SymMatrix, tol: &Tolerances) -> Result<Self> {
        let (vals, vecs) = eig_sym(&base, tol)?;
        let spec = spectral_norm(&vals);
        let min_eig = vals[vals.len() - 1];
        let floor = tol.pd_tol * spec.max(1.0);
        if min_eig <= floor {
            return Err(Error::NotPositiveDefinite { min_eig, floor });
        }
        Ok(PDMatrix {
            base,
            eigvals: vals,
            eigvecs: vecs,
        })
    }

    /// Internal constructor for values produced by cone-preserving maps
    /// (spectral functions, positive scaling). Positivity is still checked,
    /// but only relative to the spectral norm — the absolute floor is a
    /// boundary-validation rule and scaling a well-conditioned matrix by a
    /// tiny positive factor must stay legal.
    fn from_eig_parts(dim: usize, vals: Vec<f64>, vecs: Vec<f64>, tol: &Tolerances) -> Result<Self> {
        let spec = spectral_norm(&vals);
        let min_eig = vals[vals.len() - 1];
        let floor = tol.pd_tol * spec;
        if !(min_eig > floor && min_eig > 0.0 && min_eig.is_finite() && spec.is_finite()) {
            return Err(Error::NotPositiveDefinite { min_eig, floor });
        }
        let base = from_eig(dim, &vals, &vecs);
        Ok(PDMatrix {
            base,
            eigvals: vals,
            eigvecs: vecs,
        })
    }

    /// The identity, positive definite in every dimension `1..=16`.
    pub fn identity(dim: usize) -> Result<Self> {
        PDMatrix::new(SymMatrix::identity(dim)?, &Tolerances::default())
    }

    /// View as a plain symmetric matrix.
    pub fn as_sym(&self) -> &SymMatrix {
        &self.base
    }

    /// Matrix dimension.
    pub fn dim(&self) -> usize {
        self.base.dim
    }

    /// Cached eigenvalues, descending.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigvals
    }

    /// Frobenius norm of the underlying matrix.
    pub fn frob_norm(&self) -> f64 {
        self.base.frob_norm()
    }

    fn map_eigs(&self, f: impl Fn(f64) -> f64, tol: &Tolerances) -> Result<PDMatrix> {
        // Mapping by a monotone function preserves the descending order;
        // re-sorting keeps the invariant for any map.
        let dim = self.dim();
        let mut pairs: Vec<(f64, usize)> = self
            .eigvals
            .iter()
            .map(|&v| f(v))
            .zip(0..dim)
            .collect();
        pairs.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
        let vals: Vec<f64> = pairs.iter().map(|p| p.0).collect();
        let mut vecs = vec![0.0; dim * dim];
        for (new_col, &(_, old_col)) in pairs.iter().enumerate() {
            for r in 0..dim {
                vecs[r * dim + new_col] = self.eigvecs[r * dim + old_col];
            }
        }
        PDMatrix::from_eig_parts(dim, vals, vecs, tol)
    }

    /// Principal square root.
    pub fn sqrt(&self, tol: &Tolerances) -> Result<PDMatrix> {
        self.map_eigs(f64::sqrt, tol)
    }

    /// Inverse of the principal square root.
    pub fn inv_sqrt(&self, tol: &Tolerances) -> Result<PDMatrix> {
        self.map_eigs(|v| 1.0 / v.sqrt(), tol)
    }

    /// Matrix inverse.
    pub fn inv(&self, tol: &Tolerances) -> Result<PDMatrix> {
        self.map_eigs(|v| 1.0 / v, tol)
    }

    /// Matrix logarithm (symmetric, in the ambient space).
    pub fn log(&self) -> SymMatrix {
        let vals: Vec<f64> = self.eigvals.iter().map(|&v| v.ln()).collect();
        from_eig(self.dim(), &vals, &self.eigvecs)
    }

    /// Positive scalar multiple `t · x`, exact on entries, no new eigensolve.
    pub fn scale(&self, t: f64, tol: &Tolerances) -> Result<PDMatrix> {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::Precondition {
                reason: format!("scale factor {t} must be positive and finite"),
            });
        }
        let vals: Vec<f64> = self.eigvals.iter().map(|&v| t * v).collect();
        let spec = spectral_norm(&vals);
        let min_eig = vals[vals.len() - 1];
        if !(min_eig > 0.0 && spec.is_finite()) {
            return Err(Error::NotPositiveDefinite {
                min_eig,
                floor: 0.0,
            });
        }
        let _ = tol;
        Ok(PDMatrix {
            base: self.base.scale(t),
            eigvals: vals,
            eigvecs: self.eigvecs.clone(),
        })
    }
}

fn spectral_norm(vals: &[f64]) -> f64 {
    vals.iter().fold(0.0f64, |m, v| m.max(v.abs()))
}

/// Matrix exponential of a symmetric matrix; always lands in the cone.
pub fn sym_exp(a: &SymMatrix, tol: &Tolerances) -> Result<PDMatrix> {
    let (vals, vecs) = eig_sym(a, tol)?;
    let evals: Vec<f64> = vals.iter().map(|&v| v.exp()).collect();
    PDMatrix::from_eig_parts(a.dim, evals, vecs, tol)
}

/// Scalar functions applied through the spectrum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpectralFn {
    /// Principal square root (positive-definite domain).
    Sqrt,
    /// Inverse square root (positive-definite domain).
    InvSqrt,
    /// Logarithm (positive-definite domain).
    Log,
    /// Exponential (defined on all symmetric matrices).
    Exp,
}

/// Applies a scalar function to a symmetric matrix through its spectrum.
///
/// `Sqrt`, `InvSqrt` and `Log` require the input to pass the
/// positive-definiteness check; `Exp` accepts any symmetric matrix.
pub fn spectral_map(f: SpectralFn, a: &SymMatrix, tol: &Tolerances) -> Result<SymMatrix> {
    match f {
        SpectralFn::Exp => Ok(sym_exp(a, tol)?.as_sym().clone()),
        SpectralFn::Sqrt | SpectralFn::InvSqrt | SpectralFn::Log => {
            let pd = PDMatrix::new(a.clone(), tol)?;
            Ok(match f {
                SpectralFn::Sqrt => pd.sqrt(tol)?.as_sym().clone(),
                SpectralFn::InvSqrt => pd.inv_sqrt(tol)?.as_sym().clone(),
                SpectralFn::Log => pd.log(),
                SpectralFn::Exp => unreachable!(),
            })
        }
    }
}

/// Loewner comparison `x ≤ y`: the smallest eigenvalue of `y − x` must be at
/// least `−order_tol · max(1, ‖y−x‖_F)`.
pub fn loewner_leq(x: &SymMatrix, y: &SymMatrix, tol: &Tolerances) -> Result<bool> {
    let d = y.sub(x)?;
    let (vals, _) = eig_sym(&d, tol)?;
    let min_eig = vals[vals.len() - 1];
    Ok(min_eig >= -tol.order_tol * d.frob_norm().max(1.0))
}

/// Congruence `s · x · s` of a positive-definite matrix by a positive-definite
/// `s`; the result stays in the cone.
pub fn congruence_pd(s: &PDMatrix, x: &PDMatrix, tol: &Tolerances) -> Result<PDMatrix> {
    if s.dim() != x.dim() {
        return Err(Error::DimensionMismatch {
            expected: s.dim(),
            got: x.dim(),
        });
    }
    let m = sym_sandwich(s.as_sym(), x.as_sym());
    let (vals, vecs) = eig_sym(&m, tol)?;
    PDMatrix::from_eig_parts(m.dim, vals, vecs, tol)
}

/// `M(x/y) = inf{λ > 0 : x ≤ λ y}`, the largest eigenvalue of
/// `y^{-1/2} x y^{-1/2}`.
pub fn m_ratio(x: &PDMatrix, y: &PDMatrix, tol: &Tolerances) -> Result<f64> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            expected: x.dim(),
            got: y.dim(),
        });
    }
    let s = y.inv_sqrt(tol)?;
    let m = sym_sandwich(s.as_sym(), x.as_sym());
    let (vals, _) = eig_sym(&m, tol)?;
    Ok(vals[0])
}

/// Thompson metric `d(x, y) = max{log M(x/y), log M(y/x)}`.
///
/// Identical arguments (bitwise) return exactly `0`.
pub fn thompson_dist(x: &PDMatrix, y: &PDMatrix, tol: &Tolerances) -> Result<f64> {
    if x.as_sym() == y.as_sym() {
        return Ok(0.0);
    }
    let a = m_ratio(x, y, tol)?.ln();
    let b = m_ratio(y, x, tol)?.ln();
    Ok(a.max(b).max(0.0))
}

/// Closed order interval `[lo, hi] = {x : lo ≤ x ≤ hi}`.
#[derive(Clone, Debug)]
pub struct OrderInterval {
    lo: PDMatrix,
    hi: PDMatrix,
}

impl OrderInterval {
    /// Builds the interval, checking `lo ≤ hi`.
    pub fn new(lo: PDMatrix, hi: PDMatrix, tol: &Tolerances) -> Result<Self> {
        if !loewner_leq(lo.as_sym(), hi.as_sym(), tol)? {
            return Err(Error::Precondition {
                reason: "order interval requires lo ≤ hi in the Loewner order".into(),
            });
        }
        Ok(OrderInterval { lo, hi })
    }

    /// Lower endpoint.
    pub fn lo(&self) -> &PDMatrix {
        &self.lo
    }

    /// Upper endpoint.
    pub fn hi(&self) -> &PDMatrix {
        &self.hi
    }
}

/// Closed Thompson ball of radius `r` around `a`, returned as the order
/// interval `[e^{-r}a, e^{r}a]`.
pub fn thompson_ball(a: &PDMatrix, r: f64, tol: &Tolerances) -> Result<OrderInterval> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::Precondition {
            reason: format!("ball radius {r} must be positive and finite"),
        });
    }
    let lo = a.scale((-r).exp(), tol)?;
    let hi = a.scale(r.exp(), tol)?;
    OrderInterval::new(lo, hi, tol)
}

/// Membership `x ∈ [lo, hi]` under the Loewner order.
pub fn in_interval(x: &PDMatrix, iv: &OrderInterval, tol: &Tolerances) -> Result<bool> {
    Ok(loewner_leq(iv.lo.as_sym(), x.as_sym(), tol)?
        && loewner_leq(x.as_sym(), iv.hi.as_sym(), tol)?)
}

/// Order-unit seminorm `|x|_a = inf{λ > 0 : −λa ≤ x ≤ λa}`, the largest
/// absolute eigenvalue of `a^{-1/2} x a^{-1/2}`.
pub fn order_unit_norm(x: &SymMatrix, a: &PDMatrix, tol: &Tolerances) -> Result<f64> {
    if x.dim() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: x.dim(),
        });
    }
    let s = a.inv_sqrt(tol)?;
    let m = sym_sandwich(s.as_sym(), x);
    let (vals, _) = eig_sym(&m, tol)?;
    Ok(vals[0].abs().max(vals[vals.len() - 1].abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn pd_diag(d: &[f64]) -> PDMatrix {
        PDMatrix::new(SymMatrix::diag(d).unwrap(), &tol()).unwrap()
    }

    #[test]
    fn eig_diagonal_and_hand_computed() {
        let (vals, vecs) = eig_sym(&SymMatrix::diag(&[3.0, 1.0]).unwrap(), &tol()).unwrap();
        assert_eq!(vals, vec![3.0, 1.0]);
        assert_eq!(vecs, vec![1.0, 0.0, 0.0, 1.0]);

        let (vals, _) = eig_sym(&SymMatrix::zeros(3).unwrap(), &tol()).unwrap();
        assert_eq!(vals, vec![0.0, 0.0, 0.0]);

        let m = SymMatrix::new(2, vec![2.0, 1.0, 1.0, 2.0]).unwrap();
        let (vals, _) = eig_sym(&m, &tol()).unwrap();
        assert!((vals[0] - 3.0).abs() < 1e-12);
        assert!((vals[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn construction_rejects_asymmetry() {
        let err = SymMatrix::new(2, vec![1.0, 2.0, 0.0, 1.0]).unwrap_err();
        assert!(matches!(err, Error::NotSymmetric { .. }));
        // Mild asymmetry is averaged away.
        let m = SymMatrix::new(2, vec![1.0, 2.0, 2.0 + 1e-12, 1.0]).unwrap();
        assert_eq!(m.get(0, 1), m.get(1, 0));
    }

    #[test]
    fn construction_rejects_bad_dims() {
        assert!(matches!(
            SymMatrix::new(0, vec![]),
            Err(Error::DimensionOutOfRange { .. })
        ));
        assert!(matches!(
            SymMatrix::new(17, vec![0.0; 17 * 17]),
            Err(Error::DimensionOutOfRange { .. })
        ));
        assert!(matches!(
            SymMatrix::new(2, vec![0.0; 3]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn pd_check_rejects_indefinite() {
        let err = PDMatrix::new(SymMatrix::diag(&[1.0, -1.0]).unwrap(), &tol()).unwrap_err();
        assert!(matches!(err, Error::NotPositiveDefinite { .. }));
        let err = PDMatrix::new(SymMatrix::diag(&[1.0, 1e-12]).unwrap(), &tol()).unwrap_err();
        assert!(matches!(err, Error::NotPositiveDefinite { .. }));
    }

    #[test]
    fn spectral_map_examples() {
        let s = spectral_map(SpectralFn::Sqrt, &SymMatrix::diag(&[4.0, 9.0]).unwrap(), &tol())
            .unwrap();
        assert!((s.get(0, 0) - 2.0).abs() < 1e-12);
        assert!((s.get(1, 1) - 3.0).abs() < 1e-12);

        let e = spectral_map(SpectralFn::Exp, &SymMatrix::zeros(2).unwrap(), &tol()).unwrap();
        assert!((e.get(0, 0) - 1.0).abs() < 1e-15);
        assert!((e.get(1, 1) - 1.0).abs() < 1e-15);
        assert_eq!(e.get(0, 1), 0.0);

        let l = spectral_map(
            SpectralFn::Log,
            &SymMatrix::diag(&[std::f64::consts::E, std::f64::consts::E.powi(2)]).unwrap(),
            &tol(),
        )
        .unwrap();
        assert!((l.get(0, 0) - 1.0).abs() < 1e-12);
        assert!((l.get(1, 1) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn spectral_map_domain_violation() {
        let x = SymMatrix::diag(&[1.0, -2.0]).unwrap();
        for f in [SpectralFn::Sqrt, SpectralFn::InvSqrt, SpectralFn::Log] {
            assert!(matches!(
                spectral_map(f, &x, &tol()),
                Err(Error::NotPositiveDefinite { .. })
            ));
        }
        assert!(spectral_map(SpectralFn::Exp, &x, &tol()).is_ok());
    }

    #[test]
    fn exp_log_round_trip() {
        let m = SymMatrix::new(3, vec![2.0, 0.3, -0.1, 0.3, 1.5, 0.2, -0.1, 0.2, 2.5]).unwrap();
        let pd = PDMatrix::new(m.clone(), &tol()).unwrap();
        let back = sym_exp(&pd.log(), &tol()).unwrap();
        let err = back.as_sym().sub(&m).unwrap().frob_norm();
        assert!(err <= 1e-9 * (1.0 + m.frob_norm()), "round trip error {err}");
    }

    #[test]
    fn loewner_examples() {
        let a = SymMatrix::diag(&[1.0, 2.0]).unwrap();
        assert!(loewner_leq(&a, &a, &tol()).unwrap());
        let b = SymMatrix::diag(&[2.0, 3.0]).unwrap();
        assert!(loewner_leq(&a, &b, &tol()).unwrap());
        assert!(!loewner_leq(&b, &a, &tol()).unwrap());
        // det of [[1,1],[1,0]] is −1, so the difference is indefinite.
        let i = SymMatrix::identity(2).unwrap();
        let c = SymMatrix::new(2, vec![2.0, 1.0, 1.0, 1.0]).unwrap();
        assert!(!loewner_leq(&i, &c, &tol()).unwrap());
    }

    #[test]
    fn m_ratio_examples() {
        let x = pd_diag(&[2.0, 3.0]);
        let i = PDMatrix::identity(2).unwrap();
        assert!((m_ratio(&x, &x, &tol()).unwrap() - 1.0).abs() < 1e-12);
        assert!((m_ratio(&x, &i, &tol()).unwrap() - 3.0).abs() < 1e-12);

        let a = PDMatrix::new(
            SymMatrix::new(2, vec![2.0, 0.5, 0.5, 1.0]).unwrap(),
            &tol(),
        )
        .unwrap();
        let r = 0.7f64;
        let ea = a.scale(r.exp(), &tol()).unwrap();
        assert!((m_ratio(&ea, &a, &tol()).unwrap() - r.exp()).abs() < 1e-9);
    }

    #[test]
    fn m_ratio_scaling_majorizes() {
        let x = PDMatrix::new(
            SymMatrix::new(2, vec![3.0, 1.0, 1.0, 2.0]).unwrap(),
            &tol(),
        )
        .unwrap();
        let y = PDMatrix::new(
            SymMatrix::new(2, vec![1.5, -0.2, -0.2, 1.0]).unwrap(),
            &tol(),
        )
        .unwrap();
        let lambda = m_ratio(&x, &y, &tol()).unwrap();
        let ly = y.scale(lambda, &tol()).unwrap();
        assert!(loewner_leq(x.as_sym(), ly.as_sym(), &tol()).unwrap());
        let shy = y.scale(lambda * (1.0 - 1e-6), &tol()).unwrap();
        assert!(!loewner_leq(x.as_sym(), shy.as_sym(), &tol()).unwrap());
    }

    #[test]
    fn thompson_examples() {
        let a = pd_diag(&[1.7, 0.4]);
        assert_eq!(thompson_dist(&a, &a, &tol()).unwrap(), 0.0);

        let i = PDMatrix::identity(2).unwrap();
        let d = pd_diag(&[std::f64::consts::E, std::f64::consts::E.powi(2)]);
        assert!((thompson_dist(&i, &d, &tol()).unwrap() - 2.0).abs() < 1e-12);

        let r = 1.3f64;
        let ea = a.scale(r.exp(), &tol()).unwrap();
        assert!((thompson_dist(&a, &ea, &tol()).unwrap() - r).abs() < 1e-9);
    }

    #[test]
    fn ball_is_interval() {
        let i = PDMatrix::identity(2).unwrap();
        let b = thompson_ball(&i, 1.0, &tol()).unwrap();
        assert!((b.lo().as_sym().get(0, 0) - (-1.0f64).exp()).abs() < 1e-15);
        assert!((b.hi().as_sym().get(0, 0) - 1.0f64.exp()).abs() < 1e-15);

        let a = PDMatrix::new(
            SymMatrix::new(2, vec![2.0, 0.4, 0.4, 1.0]).unwrap(),
            &tol(),
        )
        .unwrap();
        let ball = thompson_ball(&a, 0.5, &tol()).unwrap();
        assert!(in_interval(&a, &ball, &tol()).unwrap(), "center inside");
        let outside = a.scale((2.0 * 0.5f64).exp(), &tol()).unwrap();
        assert!(!in_interval(&outside, &ball, &tol()).unwrap());
    }

    #[test]
    fn interval_examples() {
        let x = pd_diag(&[1.0, 1.0]);
        let iv = OrderInterval::new(x.clone(), x.clone(), &tol()).unwrap();
        assert!(in_interval(&x, &iv, &tol()).unwrap());

        let e = std::f64::consts::E;
        let i = PDMatrix::identity(2).unwrap();
        let iv = OrderInterval::new(
            i.scale(1.0 / e, &tol()).unwrap(),
            i.scale(e, &tol()).unwrap(),
            &tol(),
        )
        .unwrap();
        assert!(in_interval(&pd_diag(&[1.0, 1.0]), &iv, &tol()).unwrap());
        assert!(!in_interval(&pd_diag(&[e * e, 1.0]), &iv, &tol()).unwrap());
        // Construction refuses inverted endpoints.
        assert!(OrderInterval::new(
            i.scale(e, &tol()).unwrap(),
            i.scale(1.0 / e, &tol()).unwrap(),
            &tol()
        )
        .is_err());
    }

    #[test]
    fn order_unit_norm_examples() {
        let a = pd_diag(&[2.0, 5.0]);
        assert_eq!(
            order_unit_norm(&SymMatrix::zeros(2).unwrap(), &a, &tol()).unwrap(),
            0.0
        );
        let i = PDMatrix::identity(2).unwrap();
        let x = SymMatrix::diag(&[2.0, -3.0]).unwrap();
        assert!((order_unit_norm(&x, &i, &tol()).unwrap() - 3.0).abs() < 1e-12);
        assert!((order_unit_norm(a.as_sym(), &a, &tol()).unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn deep_scaling_stays_constructible() {
        // Scaling by e^{-41} leaves the cone membership intact even though
        // the absolute eigenvalue floor would reject a fresh construction.
        let a = PDMatrix::new(
            SymMatrix::new(2, vec![1.5, 0.3, 0.3, 2.0]).unwrap(),
            &tol(),
        )
        .unwrap();
        let deep = a.scale((-41.0f64).exp(), &tol()).unwrap();
        assert!(deep.eigenvalues().iter().all(|&v| v > 0.0));
        let d = thompson_dist(&a, &deep, &tol()).unwrap();
        assert!((d - 41.0).abs() < 1e-9, "distance {d}");
    }
}
