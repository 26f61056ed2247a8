//! Macroscopic analog of a precessing spin-1/2 starting from the equal
//! mixture of `Q = +1` and `Q = -1`.
//!
//! The closed forms are `C = cos ω(t_j − t_i)` and uniform marginals with or
//! without earlier measurements. [`spin_build_scenario`] gives a qubit
//! realization (precession `exp(−i ω t σ_x / 2)`) for cross-checks.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::distribution::Distribution;
use crate::error::{Error, Result};
use crate::protocol::TemporalScenario;
use crate::quantum::{CMatrix, DensityOperator, ProjectiveMeasurement, UnitaryOp};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpinParams {
    pub omega: f64,
    pub times: Vec<f64>,
}

impl SpinParams {
    pub fn new(omega: f64, times: Vec<f64>) -> Result<Self> {
        if !(omega.is_finite() && omega > 0.0) {
            return Err(Error::InvalidParams(format!("omega = {omega} must be positive")));
        }
        if times.is_empty() || times.iter().any(|t| !t.is_finite()) {
            return Err(Error::InvalidParams("times must be finite and non-empty".into()));
        }
        if times.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParams("times must be strictly increasing".into()));
        }
        Ok(Self { omega, times })
    }

    /// `n` times spaced by `dt` starting at zero.
    pub fn equally_spaced(omega: f64, dt: f64, n: usize) -> Result<Self> {
        Self::new(omega, (0..n).map(|k| k as f64 * dt).collect())
    }

    fn pair(&self, i: usize, j: usize) -> Result<(f64, f64)> {
        let len = self.times.len();
        for k in [i, j] {
            if k >= len {
                return Err(Error::IndexOutOfRange { index: k, len });
            }
        }
        if i >= j {
            return Err(Error::TimeOrder(vec![i, j]));
        }
        Ok((self.times[i], self.times[j]))
    }
}

/// `cos ω (t_j − t_i)`.
pub fn spin_correlation(p: &SpinParams, i: usize, j: usize) -> Result<f64> {
    let (ti, tj) = p.pair(i, j)?;
    Ok((p.omega * (tj - ti)).cos())
}

/// Later-time distributions without and with a measurement at `t_i`; both
/// uniform for the mixed initial state.
pub fn spin_nsit_probs(p: &SpinParams, i: usize, j: usize) -> Result<(Distribution, Distribution)> {
    p.pair(i, j)?;
    let half = Distribution::new(vec![1.0, -1.0], vec![0.5, 0.5])?;
    Ok((half.clone(), half))
}

/// `exp(−i θ σ_x / 2)`.
pub fn precession(theta: f64) -> Result<UnitaryOp> {
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    UnitaryOp::new(CMatrix::from_rows(&[
        vec![Complex64::new(c, 0.0), Complex64::new(0.0, -s)],
        vec![Complex64::new(0.0, -s), Complex64::new(c, 0.0)],
    ])?)
}

/// Qubit scenario with one checkpoint per measurement time.
pub fn spin_build_scenario(p: &SpinParams) -> Result<TemporalScenario> {
    let segments = p
        .times
        .windows(2)
        .map(|w| precession(p.omega * (w[1] - w[0])))
        .collect::<Result<Vec<_>>>()?;
    TemporalScenario::new(
        DensityOperator::maximally_mixed(2)?,
        segments,
        vec![ProjectiveMeasurement::dichotomic(); p.times.len()],
    )
}
