//! Finitely supported probability measures on the cone, with exact rational
//! weights.
//!
//! Weights are rationals with `i64` components and checked arithmetic, so a
//! measure's total mass is exactly one after any sequence of mixtures,
//! push-forwards and merges — there is no floating-point drift on the mass
//! side, and order/transport feasibility problems scale to exact integers.
//!
//! Measures are kept canonical: support points are sorted lexicographically
//! on their row-major entries and points closer than `eig_tol` (entrywise)
//! are merged by summing weights.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};

use crate::cone::{PDMatrix, Tolerances};
use crate::error::{Error, Result};

/// Exact rational number backed by `i64` numerator and denominator, with
/// checked arithmetic (overflow is an error, never a panic or a wrap).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(Ratio<i64>);

fn reduce_i128(mut num: i128, mut den: i128, op: &'static str) -> Result<Rational> {
    if den == 0 {
        return Err(Error::InvalidRational {
            reason: "zero denominator".into(),
        });
    }
    if den < 0 {
        num = -num;
        den = -den;
    }
    let g = num.abs().gcd(&den);
    if g > 1 {
        num /= g;
        den /= g;
    }
    if num > i64::MAX as i128 || num < i64::MIN as i128 || den > i64::MAX as i128 {
        return Err(Error::RationalOverflow { op });
    }
    Ok(Rational(Ratio::new_raw(num as i64, den as i64)))
}

impl Rational {
    /// Builds `num/den` in lowest terms; `den` must be nonzero.
    pub fn new(num: i64, den: i64) -> Result<Self> {
        reduce_i128(num as i128, den as i128, "construction")
    }

    /// Zero.
    pub fn zero() -> Self {
        Rational(Ratio::new_raw(0, 1))
    }

    /// One.
    pub fn one() -> Self {
        Rational(Ratio::new_raw(1, 1))
    }

    /// Numerator (lowest terms, sign carried here).
    pub fn num(&self) -> i64 {
        *self.0.numer()
    }

    /// Denominator (lowest terms, always positive).
    pub fn den(&self) -> i64 {
        *self.0.denom()
    }

    /// Checked sum.
    pub fn checked_add(self, o: Rational) -> Result<Rational> {
        let n = self.num() as i128 * o.den() as i128 + o.num() as i128 * self.den() as i128;
        let d = self.den() as i128 * o.den() as i128;
        reduce_i128(n, d, "addition")
    }

    /// Checked difference.
    pub fn checked_sub(self, o: Rational) -> Result<Rational> {
        let n = self.num() as i128 * o.den() as i128 - o.num() as i128 * self.den() as i128;
        let d = self.den() as i128 * o.den() as i128;
        reduce_i128(n, d, "subtraction")
    }

    /// Checked product.
    pub fn checked_mul(self, o: Rational) -> Result<Rational> {
        let n = self.num() as i128 * o.num() as i128;
        let d = self.den() as i128 * o.den() as i128;
        reduce_i128(n, d, "multiplication")
    }

    /// Exact sum of a slice.
    pub fn sum(xs: &[Rational]) -> Result<Rational> {
        xs.iter()
            .try_fold(Rational::zero(), |acc, &x| acc.checked_add(x))
    }

    /// True when positive.
    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    /// True when zero.
    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Nearest `f64` value (used for costs and CSV output only, never for
    /// mass bookkeeping).
    pub fn to_f64(&self) -> f64 {
        self.num() as f64 / self.den() as f64
    }

    /// True when the denominator is a power of two.
    pub fn is_dyadic(&self) -> bool {
        let d = self.den();
        d & (d - 1) == 0
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num(), self.den())
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Parses `"num/den"` or a bare integer. Decimal notation is rejected —
    /// weights must be exact.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |reason: String| Error::InvalidRational { reason };
        if s.contains(['.', 'e', 'E']) {
            return Err(bad(format!(
                "'{s}' looks like a float; weights must be exact rationals like 3/4"
            )));
        }
        let mut parts = s.splitn(2, '/');
        let num_s = parts.next().unwrap_or("");
        let num: i64 = num_s
            .parse()
            .map_err(|_| bad(format!("'{s}' is not an integer or num/den rational")))?;
        match parts.next() {
            None => Rational::new(num, 1),
            Some(den_s) => {
                let den: i64 = den_s
                    .parse()
                    .map_err(|_| bad(format!("'{s}' has a non-integer denominator")))?;
                if den <= 0 {
                    return Err(bad(format!("'{s}' must have a positive denominator")));
                }
                Rational::new(num, den)
            }
        }
    }
}

/// Least common multiple of the denominators of `xs`, with overflow checked
/// and an optional cap.
pub(crate) fn lcm_denominators<'a>(
    xs: impl Iterator<Item = &'a Rational>,
    cap: Option<i64>,
    what: &'static str,
) -> Result<i64> {
    let mut acc: i128 = 1;
    for x in xs {
        let d = x.den() as i128;
        acc = acc / acc.gcd(&d) * d;
        if let Some(cap) = cap {
            if acc > cap as i128 {
                return Err(Error::CapExceeded {
                    what,
                    got: if acc > usize::MAX as i128 {
                        usize::MAX
                    } else {
                        acc as usize
                    },
                    cap: cap as usize,
                });
            }
        }
        if acc > i64::MAX as i128 {
            return Err(Error::RationalOverflow { op: "lcm of denominators" });
        }
    }
    Ok(acc as i64)
}

/// Scales a weight to the exact integer `w · l`; `l` must be a multiple of
/// the denominator.
pub(crate) fn scale_to_integer(w: Rational, l: i64) -> i64 {
    debug_assert_eq!(l % w.den(), 0);
    w.num() * (l / w.den())
}

/// A finitely supported probability measure with exact rational weights.
///
/// Canonical form: support points sorted lexicographically on row-major
/// entries, pairwise distinct beyond `eig_tol` (entrywise), weights positive
/// and summing to exactly one.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscreteMeasure {
    points: Vec<PDMatrix>,
    weights: Vec<Rational>,
}

impl DiscreteMeasure {
    /// Builds a measure, canonicalizing the support and validating the mass.
    pub fn new(points: Vec<PDMatrix>, weights: Vec<Rational>, tol: &Tolerances) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidMeasure {
                reason: "support must be nonempty".into(),
            });
        }
        if points.len() != weights.len() {
            return Err(Error::InvalidMeasure {
                reason: format!(
                    "{} points but {} weights",
                    points.len(),
                    weights.len()
                ),
            });
        }
        let dim = points[0].dim();
        if points.iter().any(|p| p.dim() != dim) {
            return Err(Error::InvalidMeasure {
                reason: "support points must share one dimension".into(),
            });
        }
        if weights.iter().any(|w| !w.is_positive()) {
            return Err(Error::InvalidMeasure {
                reason: "weights must be strictly positive".into(),
            });
        }
        let total = Rational::sum(&weights)?;
        if total != Rational::one() {
            return Err(Error::InvalidMeasure {
                reason: format!("weights sum to {total}, expected 1/1"),
            });
        }

        let mut order: Vec<usize> = (0..points.len()).collect();
        order.sort_by(|&i, &j| points[i].as_sym().lex_cmp(points[j].as_sym()));

        let mut out_points: Vec<PDMatrix> = Vec::with_capacity(points.len());
        let mut out_weights: Vec<Rational> = Vec::new();
        'next: for &i in &order {
            for (k, rep) in out_points.iter().enumerate() {
                if rep.as_sym().linf_dist(points[i].as_sym()) <= tol.eig_tol {
                    out_weights[k] = out_weights[k].checked_add(weights[i])?;
                    continue 'next;
                }
            }
            out_points.push(points[i].clone());
            out_weights.push(weights[i]);
        }
        Ok(DiscreteMeasure {
            points: out_points,
            weights: out_weights,
        })
    }

    /// Support points in canonical order.
    pub fn points(&self) -> &[PDMatrix] {
        &self.points
    }

    /// Weights parallel to [`points`](Self::points).
    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    /// Support size.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// Always false — measures carry at least one atom.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Common dimension of the support points.
    pub fn dim(&self) -> usize {
        self.points[0].dim()
    }

    /// Exact mass of an index subset of the support.
    pub fn mass_of(&self, idx: &[usize]) -> Result<Rational> {
        idx.iter()
            .try_fold(Rational::zero(), |acc, &i| acc.checked_add(self.weights[i]))
    }
}

/// The point measure `δ_x`.
pub fn dirac(x: PDMatrix) -> DiscreteMeasure {
    DiscreteMeasure {
        points: vec![x],
        weights: vec![Rational::one()],
    }
}

/// An ordered tuple of cone points, repetitions allowed; induces the uniform
/// measure that weights each distinct point by its multiplicity.
#[derive(Clone, Debug, PartialEq)]
pub struct UniformTuple {
    entries: Vec<PDMatrix>,
}

impl UniformTuple {
    /// Builds a tuple; must be nonempty with matching dimensions.
    pub fn new(entries: Vec<PDMatrix>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Precondition {
                reason: "uniform tuple must be nonempty".into(),
            });
        }
        let dim = entries[0].dim();
        if entries.iter().any(|p| p.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: entries.iter().map(|p| p.dim()).find(|&d| d != dim).unwrap(),
            });
        }
        Ok(UniformTuple { entries })
    }

    /// Tuple entries in order.
    pub fn entries(&self) -> &[PDMatrix] {
        &self.entries
    }

    /// Tuple length.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Always false.
    pub fn is_empty(&self) -> bool {
        false
    }
}

/// The measure `(1/n) Σ δ_{x_i}` induced by a tuple; multiplicities merge.
pub fn uniform_of_tuple(t: &UniformTuple, tol: &Tolerances) -> Result<DiscreteMeasure> {
    let n = t.len() as i64;
    let w = Rational::new(1, n)?;
    DiscreteMeasure::new(t.entries.to_vec(), vec![w; t.len()], tol)
}

/// Cap on the replication order of [`replicate_to_uniform`].
pub const REPLICATION_CAP: i64 = 4096;

/// The minimal uniform tuple inducing `m`: with `N` the least common
/// multiple of the weight denominators, each point appears `N·weight` times,
/// in canonical point order.
pub fn replicate_to_uniform(m: &DiscreteMeasure) -> Result<UniformTuple> {
    let n = lcm_denominators(
        m.weights.iter(),
        Some(REPLICATION_CAP),
        "replication order N",
    )?;
    let mut entries = Vec::with_capacity(n as usize);
    for (p, w) in m.points.iter().zip(m.weights.iter()) {
        let count = scale_to_integer(*w, n);
        for _ in 0..count {
            entries.push(p.clone());
        }
    }
    UniformTuple::new(entries)
}

/// Push-forward `f_*(m)`: applies `f` to every support point and merges
/// coinciding images with exact weight addition.
pub fn push_forward(
    mut f: impl FnMut(&PDMatrix) -> Result<PDMatrix>,
    m: &DiscreteMeasure,
    tol: &Tolerances,
) -> Result<DiscreteMeasure> {
    let mut images = Vec::with_capacity(m.len());
    for p in m.points() {
        images.push(f(p)?);
    }
    DiscreteMeasure::new(images, m.weights.to_vec(), tol)
}

/// Convex mixture `(1−t)·m1 + t·m2` with exact rational weights.
pub fn mixture(
    t: Rational,
    m1: &DiscreteMeasure,
    m2: &DiscreteMeasure,
    tol: &Tolerances,
) -> Result<DiscreteMeasure> {
    if t < Rational::zero() || t > Rational::one() {
        return Err(Error::Precondition {
            reason: format!("mixture parameter {t} outside [0, 1]"),
        });
    }
    if m1.dim() != m2.dim() {
        return Err(Error::DimensionMismatch {
            expected: m1.dim(),
            got: m2.dim(),
        });
    }
    let s = Rational::one().checked_sub(t)?;
    let mut points = Vec::new();
    let mut weights = Vec::new();
    for (p, w) in m1.points.iter().zip(m1.weights.iter()) {
        let sw = s.checked_mul(*w)?;
        if sw.is_positive() {
            points.push(p.clone());
            weights.push(sw);
        }
    }
    for (p, w) in m2.points.iter().zip(m2.weights.iter()) {
        let tw = t.checked_mul(*w)?;
        if tw.is_positive() {
            points.push(p.clone());
            weights.push(tw);
        }
    }
    DiscreteMeasure::new(points, weights, tol)
}

/// A coupling of two discrete measures: a joint measure on support-index
/// pairs whose marginals reproduce the two sides exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct Coupling {
    pairs: Vec<(usize, usize)>,
    weights: Vec<Rational>,
    left: DiscreteMeasure,
    right: DiscreteMeasure,
}

impl Coupling {
    /// Builds a coupling, merging duplicate pairs and validating both
    /// marginals with exact arithmetic.
    pub fn new(
        pairs: Vec<(usize, usize)>,
        weights: Vec<Rational>,
        left: DiscreteMeasure,
        right: DiscreteMeasure,
    ) -> Result<Self> {
        if pairs.len() != weights.len() {
            return Err(Error::InvalidMeasure {
                reason: "coupling pairs and weights must be parallel".into(),
            });
        }
        let mut merged: Vec<((usize, usize), Rational)> = Vec::with_capacity(pairs.len());
        let mut order: Vec<usize> = (0..pairs.len()).collect();
        order.sort_by_key(|&k| pairs[k]);
        for k in order {
            let (ij, w) = (pairs[k], weights[k]);
            if !w.is_positive() {
                return Err(Error::InvalidMeasure {
                    reason: "coupling weights must be strictly positive".into(),
                });
            }
            if ij.0 >= left.len() || ij.1 >= right.len() {
                return Err(Error::InvalidMeasure {
                    reason: format!("coupling pair {ij:?} outside the supports"),
                });
            }
            match merged.last_mut() {
                Some((last_ij, last_w)) if *last_ij == ij => {
                    *last_w = last_w.checked_add(w)?;
                }
                _ => merged.push((ij, w)),
            }
        }
        let mut row = vec![Rational::zero(); left.len()];
        let mut col = vec![Rational::zero(); right.len()];
        for ((i, j), w) in &merged {
            row[*i] = row[*i].checked_add(*w)?;
            col[*j] = col[*j].checked_add(*w)?;
        }
        if row != left.weights {
            return Err(Error::InvalidMeasure {
                reason: "coupling row sums do not reproduce the left marginal".into(),
            });
        }
        if col != right.weights {
            return Err(Error::InvalidMeasure {
                reason: "coupling column sums do not reproduce the right marginal".into(),
            });
        }
        let (pairs, weights) = merged.into_iter().unzip();
        Ok(Coupling {
            pairs,
            weights,
            left,
            right,
        })
    }

    /// Index pairs `(i, j)` in lexicographic order.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Weights parallel to [`pairs`](Self::pairs).
    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    /// Left marginal.
    pub fn left(&self) -> &DiscreteMeasure {
        &self.left
    }

    /// Right marginal.
    pub fn right(&self) -> &DiscreteMeasure {
        &self.right
    }
}

/// The product coupling `m1 × m2` (independent joint measure).
pub fn product_coupling(m1: &DiscreteMeasure, m2: &DiscreteMeasure) -> Result<Coupling> {
    let mut pairs = Vec::with_capacity(m1.len() * m2.len());
    let mut weights = Vec::with_capacity(m1.len() * m2.len());
    for (i, wi) in m1.weights.iter().enumerate() {
        for (j, wj) in m2.weights.iter().enumerate() {
            pairs.push((i, j));
            weights.push(wi.checked_mul(*wj)?);
        }
    }
    Coupling::new(pairs, weights, m1.clone(), m2.clone())
}
