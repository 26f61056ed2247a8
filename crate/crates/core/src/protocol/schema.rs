//! JSON form of a [`TemporalScenario`].
//!
//! ```json
//! { "dim": 2,
//!   "initial": [[[1,0],[0,0]], [[0,0],[0,0]]],
//!   "segments": [ ... ],
//!   "measurements": [ { "labels": [1, -1], "projectors": [ ... ] } ] }
//! ```
//!
//! Matrices are arrays of rows; each complex entry is a `[re, im]` pair.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::TemporalScenario;
use crate::error::{Error, Result};
use crate::quantum::{CMatrix, DensityOperator, ProjectiveMeasurement, UnitaryOp};

pub type MatrixJson = Vec<Vec<[f64; 2]>>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasurementJson {
    pub labels: Vec<f64>,
    pub projectors: Vec<MatrixJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioJson {
    pub dim: usize,
    pub initial: MatrixJson,
    pub segments: Vec<MatrixJson>,
    pub measurements: Vec<MeasurementJson>,
}

fn to_matrix(dim: usize, m: &MatrixJson) -> Result<CMatrix> {
    let rows: Vec<Vec<Complex64>> = m
        .iter()
        .map(|r| r.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
        .collect();
    let mat = CMatrix::from_rows(&rows)?;
    if mat.rows() != dim || mat.cols() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: mat.rows().max(mat.cols()),
        });
    }
    Ok(mat)
}

fn from_matrix(m: &CMatrix) -> MatrixJson {
    m.to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(|z| [z.re, z.im]).collect())
        .collect()
}

impl ScenarioJson {
    pub fn to_scenario(&self) -> Result<TemporalScenario> {
        let initial = DensityOperator::new(to_matrix(self.dim, &self.initial)?)?;
        let segments = self
            .segments
            .iter()
            .map(|m| UnitaryOp::new(to_matrix(self.dim, m)?))
            .collect::<Result<Vec<_>>>()?;
        let measurements = self
            .measurements
            .iter()
            .map(|m| {
                if m.labels.len() != m.projectors.len() {
                    return Err(Error::InvalidMeasurement(format!(
                        "{} labels but {} projectors",
                        m.labels.len(),
                        m.projectors.len()
                    )));
                }
                let branches = m
                    .labels
                    .iter()
                    .zip(&m.projectors)
                    .map(|(&l, p)| Ok((l, to_matrix(self.dim, p)?)))
                    .collect::<Result<Vec<_>>>()?;
                ProjectiveMeasurement::new(branches)
            })
            .collect::<Result<Vec<_>>>()?;
        TemporalScenario::new(initial, segments, measurements)
    }

    pub fn from_scenario(s: &TemporalScenario) -> Self {
        Self {
            dim: s.dim(),
            initial: from_matrix(s.initial().matrix()),
            segments: s.segments().iter().map(|u| from_matrix(u.matrix())).collect(),
            measurements: s
                .measurements()
                .iter()
                .map(|m| MeasurementJson {
                    labels: m.labels(),
                    projectors: m.branches().iter().map(|b| from_matrix(&b.projector)).collect(),
                })
                .collect(),
        }
    }
}
