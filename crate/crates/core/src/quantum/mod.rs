//! Density operators, unitaries and projective measurements.
//!
//! Every type validates its invariants on construction and is immutable
//! afterwards; the operations are pure functions.

mod eigen;
mod matrix;
pub mod random;

use num_complex::Complex64;

pub use eigen::{hermitian_eigenvalues, min_eigenvalue};
pub use matrix::CMatrix;

use crate::distribution::Distribution;
use crate::error::{Error, Result};
use crate::tol;

/// A Hermitian, unit-trace, positive semidefinite operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    mat: CMatrix,
}

impl DensityOperator {
    pub fn new(mat: CMatrix) -> Result<Self> {
        if !mat.is_square() {
            return Err(Error::DimensionMismatch {
                expected: mat.rows(),
                found: mat.cols(),
            });
        }
        let herm_err = mat.max_abs_diff(&mat.adjoint());
        if herm_err > tol::CONSTRUCTION {
            return Err(Error::InvalidState(format!("not Hermitian (deviation {herm_err:e})")));
        }
        let tr = mat.trace().re;
        if (tr - 1.0).abs() > tol::CONSTRUCTION {
            return Err(Error::InvalidState(format!("trace {tr} differs from 1")));
        }
        let min = min_eigenvalue(&mat);
        if min < -tol::PSD {
            return Err(Error::InvalidState(format!("negative eigenvalue {min:e}")));
        }
        Ok(Self { mat })
    }

    /// `|ψ⟩⟨ψ|` for a vector normalized here.
    pub fn pure(psi: &[Complex64]) -> Result<Self> {
        let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if psi.is_empty() || !norm.is_finite() || norm == 0.0 {
            return Err(Error::InvalidState("state vector has zero norm".into()));
        }
        let v: Vec<Complex64> = psi.iter().map(|z| z / norm).collect();
        Self::new(CMatrix::outer(&v, &v))
    }

    /// Classical mixture of computational basis states.
    pub fn diagonal(weights: &[f64]) -> Result<Self> {
        let d: Vec<Complex64> = weights.iter().map(|&w| Complex64::new(w, 0.0)).collect();
        Self::new(CMatrix::diagonal(&d))
    }

    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        Self::diagonal(&vec![1.0 / dim as f64; dim])
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    /// `Tr[ρ²]`.
    pub fn purity(&self) -> f64 {
        self.mat.trace_of_product(&self.mat).re
    }

    /// The state vector when `ρ` is pure (purity 1 within tolerance).
    pub fn state_vector(&self) -> Option<Vec<Complex64>> {
        if (self.purity() - 1.0).abs() > 1e-9 {
            return None;
        }
        let k = (0..self.dim())
            .max_by(|&a, &b| self.mat.get(a, a).re.total_cmp(&self.mat.get(b, b).re))?;
        let norm = self.mat.get(k, k).re.sqrt();
        Some((0..self.dim()).map(|i| self.mat.get(i, k) / norm).collect())
    }
}

/// A unitary operator.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryOp {
    mat: CMatrix,
}

impl UnitaryOp {
    pub fn new(mat: CMatrix) -> Result<Self> {
        if !mat.is_square() {
            return Err(Error::DimensionMismatch {
                expected: mat.rows(),
                found: mat.cols(),
            });
        }
        let err = (&mat.adjoint() * &mat).max_abs_diff(&CMatrix::identity(mat.rows()));
        if err > tol::CONSTRUCTION {
            return Err(Error::InvalidUnitary(format!("U†U deviates from I by {err:e}")));
        }
        Ok(Self { mat })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            mat: CMatrix::identity(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    /// `self` applied after `first`, i.e. the product `self · first`.
    pub fn after(&self, first: &UnitaryOp) -> Result<UnitaryOp> {
        check_dim(self.dim(), first.dim())?;
        UnitaryOp::new(&self.mat * &first.mat)
    }

    /// Matrix element `⟨row|U|col⟩`.
    pub fn element(&self, row: usize, col: usize) -> Complex64 {
        self.mat.get(row, col)
    }
}

/// One outcome of a projective measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct Branch {
    pub label: f64,
    pub projector: CMatrix,
}

/// A complete set of orthogonal projectors with distinct real labels.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectiveMeasurement {
    dim: usize,
    branches: Vec<Branch>,
}

impl ProjectiveMeasurement {
    pub fn new(branches: Vec<(f64, CMatrix)>) -> Result<Self> {
        let Some((_, first)) = branches.first() else {
            return Err(Error::InvalidMeasurement("no branches".into()));
        };
        let dim = first.rows();
        let mut sum = CMatrix::zeros(dim, dim);
        for (k, (label, p)) in branches.iter().enumerate() {
            if !label.is_finite() {
                return Err(Error::InvalidMeasurement(format!("label {label} is not finite")));
            }
            if branches[..k].iter().any(|(l, _)| l == label) {
                return Err(Error::InvalidMeasurement(format!("duplicate label {label}")));
            }
            if !p.is_square() || p.rows() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: p.rows().max(p.cols()),
                });
            }
            if !p.is_hermitian(tol::CONSTRUCTION) {
                return Err(Error::InvalidMeasurement(format!("projector {label} not Hermitian")));
            }
            if (p * p).max_abs_diff(p) > tol::CONSTRUCTION {
                return Err(Error::InvalidMeasurement(format!("projector {label} not idempotent")));
            }
            for (other, q) in &branches[..k] {
                if (p * q).max_abs() > tol::CONSTRUCTION {
                    return Err(Error::InvalidMeasurement(format!(
                        "projectors {other} and {label} not orthogonal"
                    )));
                }
            }
            sum = &sum + p;
        }
        let err = sum.max_abs_diff(&CMatrix::identity(dim));
        if err > tol::CONSTRUCTION {
            return Err(Error::InvalidMeasurement(format!("projectors sum to I only within {err:e}")));
        }
        Ok(Self {
            dim,
            branches: branches
                .into_iter()
                .map(|(label, projector)| Branch { label, projector })
                .collect(),
        })
    }

    /// Rank-1 projectors onto the computational basis, one label per basis state.
    pub fn computational(labels: &[f64]) -> Result<Self> {
        let dim = labels.len();
        let branches = labels
            .iter()
            .enumerate()
            .map(|(i, &l)| {
                let mut e = vec![Complex64::new(0.0, 0.0); dim];
                e[i] = Complex64::new(1.0, 0.0);
                (l, CMatrix::outer(&e, &e))
            })
            .collect();
        Self::new(branches)
    }

    /// Dichotomic `Q = ±1` readout of a two-level system: basis state 0 is `+1`.
    pub fn dichotomic() -> Self {
        Self::computational(&[1.0, -1.0]).expect("computational basis is a valid measurement")
    }

    /// Rank-1 projectors onto the columns of a unitary.
    pub fn from_basis(basis: &UnitaryOp, labels: &[f64]) -> Result<Self> {
        check_dim(basis.dim(), labels.len())?;
        let branches = labels
            .iter()
            .enumerate()
            .map(|(k, &l)| {
                let col: Vec<Complex64> = (0..basis.dim()).map(|i| basis.element(i, k)).collect();
                (l, CMatrix::outer(&col, &col))
            })
            .collect();
        Self::new(branches)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn branches(&self) -> &[Branch] {
        &self.branches
    }

    pub fn labels(&self) -> Vec<f64> {
        self.branches.iter().map(|b| b.label).collect()
    }

    pub fn len(&self) -> usize {
        self.branches.len()
    }

    pub fn is_empty(&self) -> bool {
        self.branches.is_empty()
    }

    pub fn projector(&self, label: f64) -> Result<&CMatrix> {
        self.branches
            .iter()
            .find(|b| b.label == label)
            .map(|b| &b.projector)
            .ok_or(Error::UnknownLabel(label))
    }

    /// True when every label is `+1` or `-1`.
    pub fn is_dichotomic(&self) -> bool {
        self.branches.iter().all(|b| b.label == 1.0 || b.label == -1.0)
    }

    /// Unit vector spanning a rank-1 projector, if the branch is rank 1.
    pub fn rank_one_vector(&self, index: usize) -> Option<Vec<Complex64>> {
        let p = &self.branches.get(index)?.projector;
        if (p.trace().re - 1.0).abs() > tol::CONSTRUCTION {
            return None;
        }
        let k = (0..self.dim).max_by(|&a, &b| p.get(a, a).re.total_cmp(&p.get(b, b).re))?;
        let norm = p.get(k, k).re.sqrt();
        Some((0..self.dim).map(|i| p.get(i, k) / norm).collect())
    }
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// `U ρ U†`.
pub fn evolve(state: &DensityOperator, u: &UnitaryOp) -> Result<DensityOperator> {
    check_dim(state.dim(), u.dim())?;
    let out = &(&u.mat * &state.mat) * &u.mat.adjoint();
    DensityOperator::new(out).map_err(|e| Error::InternalConsistency(format!("evolution produced {e}")))
}

/// Born-rule probabilities `Tr[ρ Π]` in branch order.
pub fn outcome_probabilities(state: &DensityOperator, m: &ProjectiveMeasurement) -> Result<Distribution> {
    check_dim(state.dim(), m.dim())?;
    let mut probs = Vec::with_capacity(m.len());
    for b in &m.branches {
        let p = state.mat.trace_of_product(&b.projector).re;
        if !(-tol::PROBABILITY_CLAMP..=1.0 + tol::PROBABILITY_CLAMP).contains(&p) {
            return Err(Error::InternalConsistency(format!(
                "probability {p} for outcome {} outside [0, 1]",
                b.label
            )));
        }
        probs.push(p.clamp(0.0, 1.0));
    }
    Distribution::new(m.labels(), probs).map_err(|e| Error::InternalConsistency(e.to_string()))
}

/// Lüders update `Π ρ Π / Tr[ρ Π]` after observing `label`.
pub fn collapse(state: &DensityOperator, m: &ProjectiveMeasurement, label: f64) -> Result<DensityOperator> {
    check_dim(state.dim(), m.dim())?;
    let p = m.projector(label)?;
    let prob = state.mat.trace_of_product(p).re;
    if prob <= tol::NULL_EVENT {
        return Err(Error::NullEvent(prob));
    }
    let post = (&(p * &state.mat) * p).scale(Complex64::new(1.0 / prob, 0.0));
    DensityOperator::new(post).map_err(|e| Error::InternalConsistency(format!("collapse produced {e}")))
}
