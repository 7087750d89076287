//! On-disk JSON formats and conversions.
//!
//! Matrices travel as `{"dim": n, "data": [n·n reals, row-major]}`;
//! measures as `{"points": [Matrix…], "weights": ["num/den"…]}` with exact
//! rational weight strings (floats rejected); transport plans as
//! `{"cost": real, "arcs": [{"i", "j", "w"}…]}`; order certificates as
//! `{"leq": bool, "witness": arcs | null, "violating_subset": ints | null}`.
//! Readers validate through the library constructors, so anything loaded
//! from disk satisfies the same invariants as values built in memory.

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::cone::{PDMatrix, SymMatrix, Tolerances};
use crate::error::{Error, Result};
use crate::karcher::KarcherResult;
use crate::measure::{Coupling, DiscreteMeasure, Rational};
use crate::stochastic::OrderCertificate;
use crate::transport::TransportPlan;

/// Wire form of a symmetric matrix: row-major entries. Reading averages
/// `(A + Aᵀ)/2` and rejects relative asymmetry beyond `1e-8`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixJson {
    /// Matrix dimension `n`.
    pub dim: usize,
    /// `n·n` row-major entries.
    pub data: Vec<f64>,
}

impl MatrixJson {
    /// Wire form of a symmetric matrix.
    pub fn from_sym(m: &SymMatrix) -> Self {
        MatrixJson {
            dim: m.dim(),
            data: m.entries().to_vec(),
        }
    }

    /// Validated symmetric matrix (symmetrizes, rejects gross asymmetry).
    pub fn to_sym(&self) -> Result<SymMatrix> {
        SymMatrix::new(self.dim, self.data.clone())
    }

    /// Validated positive-definite matrix.
    pub fn to_pd(&self, tol: &Tolerances) -> Result<PDMatrix> {
        PDMatrix::new(self.to_sym()?, tol)
    }
}

/// Wire form of a finitely supported measure with exact rational weights.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MeasureJson {
    /// Support points.
    pub points: Vec<MatrixJson>,
    /// Weights as `"num/den"` strings, parsed exactly.
    pub weights: Vec<String>,
}

impl MeasureJson {
    /// Wire form of a measure.
    pub fn from_measure(m: &DiscreteMeasure) -> Self {
        MeasureJson {
            points: m
                .points()
                .iter()
                .map(|p| MatrixJson::from_sym(p.as_sym()))
                .collect(),
            weights: m.weights().iter().map(|w| w.to_string()).collect(),
        }
    }

    /// Validated measure (canonicalizes support, checks mass one).
    pub fn to_measure(&self, tol: &Tolerances) -> Result<DiscreteMeasure> {
        if self.points.len() != self.weights.len() {
            return Err(Error::InvalidMeasure {
                reason: format!(
                    "{} points but {} weights",
                    self.points.len(),
                    self.weights.len()
                ),
            });
        }
        let points = self
            .points
            .iter()
            .map(|p| p.to_pd(tol))
            .collect::<Result<Vec<_>>>()?;
        let weights = self
            .weights
            .iter()
            .map(|w| w.parse::<Rational>())
            .collect::<Result<Vec<_>>>()?;
        DiscreteMeasure::new(points, weights, tol)
    }
}

/// One coupling arc: mass `w` moved from left point `i` to right point `j`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ArcJson {
    /// Index into the left support.
    pub i: usize,
    /// Index into the right support.
    pub j: usize,
    /// Exact mass on the arc.
    pub w: String,
}

fn arcs_of_coupling(c: &Coupling) -> Vec<ArcJson> {
    c.pairs()
        .iter()
        .zip(c.weights().iter())
        .map(|(&(i, j), w)| ArcJson {
            i,
            j,
            w: w.to_string(),
        })
        .collect()
}

/// Wire form of an optimal transport plan.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TransportPlanJson {
    /// Total cost of the plan.
    pub cost: f64,
    /// Coupling arcs in canonical (lexicographic) order.
    pub arcs: Vec<ArcJson>,
}

impl TransportPlanJson {
    /// Wire form of a plan.
    pub fn from_plan(p: &TransportPlan) -> Self {
        TransportPlanJson {
            cost: p.cost,
            arcs: arcs_of_coupling(&p.coupling),
        }
    }
}

/// Wire form of a stochastic-order certificate.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertificateJson {
    /// The order verdict.
    pub leq: bool,
    /// Order-compatible coupling arcs when the verdict is true.
    pub witness: Option<Vec<ArcJson>>,
    /// Indices of a violating left-support subset when the verdict is false.
    pub violating_subset: Option<Vec<usize>>,
}

impl CertificateJson {
    /// Wire form of a certificate.
    pub fn from_certificate(c: &OrderCertificate) -> Self {
        CertificateJson {
            leq: c.verdict,
            witness: c.witness.as_ref().map(arcs_of_coupling),
            violating_subset: c.violating_subset.clone(),
        }
    }
}

/// Wire form of a Karcher solve.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KarcherJson {
    /// The mean.
    pub mean: MatrixJson,
    /// Residual of the defining equation at the mean.
    pub residual: f64,
    /// Fixed-point steps taken.
    pub iterations: usize,
}

impl KarcherJson {
    /// Wire form of a solver result.
    pub fn from_result(r: &KarcherResult) -> Self {
        KarcherJson {
            mean: MatrixJson::from_sym(r.mean.as_sym()),
            residual: r.residual,
            iterations: r.iterations,
        }
    }
}

/// One step of the paired approximation as written by the `approx-pair`
/// command: the two approximants plus the order certificate between them.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StepJson {
    /// Step index `n`.
    pub n: u32,
    /// Lower approximant `q_n`.
    pub q_n: MeasureJson,
    /// Upper approximant `p_n`.
    pub p_n: MeasureJson,
    /// Certificate for `q_n ≤ p_n`.
    pub certificate: CertificateJson,
}

/// Reads and deserializes a JSON file.
pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

/// Serializes a value to pretty JSON with a trailing newline.
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}
