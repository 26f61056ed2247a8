//! Mach-Zehnder interferometer with a macrovariable `Q = ±1` for the path
//! before the first beam splitter (`t0`), inside the interferometer (`t1`)
//! and after the second beam splitter (`t2`).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::distribution::Distribution;
use crate::error::{Error, Result};
use crate::quantum::{CMatrix, DensityOperator, ProjectiveMeasurement, UnitaryOp};
use crate::protocol::TemporalScenario;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MzParams {
    /// Reflectivity of the first beam splitter.
    pub r1: f64,
    /// Reflectivity of the second beam splitter.
    pub r2: f64,
    /// Phase shift in the `-1` arm, radians.
    pub phi: f64,
    /// Initial weight of `|+1⟩`.
    pub q: f64,
}

impl MzParams {
    pub fn new(r1: f64, r2: f64, phi: f64, q: f64) -> Result<Self> {
        for (name, v) in [("R1", r1), ("R2", r2), ("q", q)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::InvalidParams(format!("{name} = {v} outside [0, 1]")));
            }
        }
        if !phi.is_finite() {
            return Err(Error::InvalidParams(format!("phi = {phi} is not finite")));
        }
        Ok(Self { r1, r2, phi, q })
    }

    pub fn t1(&self) -> f64 {
        1.0 - self.r1
    }

    pub fn t2(&self) -> f64 {
        1.0 - self.r2
    }

    /// `√(R1 T1 R2 T2)`, the interference visibility factor.
    fn visibility(&self) -> f64 {
        (self.r1 * self.t1() * self.r2 * self.t2()).sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MzCorrelations {
    pub c01: f64,
    pub c02: f64,
    pub c12: f64,
}

/// Closed-form temporal correlations; independent of `q`.
pub fn mz_correlations_analytic(p: &MzParams) -> MzCorrelations {
    let (r1, r2) = (p.r1, p.r2);
    MzCorrelations {
        c01: 1.0 - 2.0 * r1,
        c12: 2.0 * r2 - 1.0,
        c02: -1.0 + 2.0 * r1 + 2.0 * r2 - 4.0 * r1 * r2 + 4.0 * p.visibility() * p.phi.cos(),
    }
}

/// `K = C01 + C12 − C02 = 1 − 4 R1 T2 − 4 √(R1 T1 R2 T2) cos φ`.
pub fn mz_wigner_k(p: &MzParams) -> f64 {
    1.0 - 4.0 * p.r1 * p.t2() - 4.0 * p.visibility() * p.phi.cos()
}

/// `P(Q_t2 = +1) − P(Q_t2 = +1 | t1) = 2 (2q − 1) √(R1 T1 R2 T2) cos φ`.
pub fn mz_nsit_delta_analytic(p: &MzParams) -> f64 {
    2.0 * (2.0 * p.q - 1.0) * p.visibility() * p.phi.cos()
}

/// Closed-form `t2` distributions without and with the `t1` measurement.
pub fn mz_nsit_probs_analytic(p: &MzParams) -> Result<(Distribution, Distribution)> {
    let c02 = mz_correlations_analytic(p).c02;
    let bias = 2.0 * p.q - 1.0;
    let without = (0.5 + 0.5 * bias * c02).clamp(0.0, 1.0);
    let with = (0.5 + bias * (-0.5 + p.r1 + p.r2 - 2.0 * p.r1 * p.r2)).clamp(0.0, 1.0);
    Ok((
        Distribution::new(vec![1.0, -1.0], vec![without, 1.0 - without])?,
        Distribution::new(vec![1.0, -1.0], vec![with, 1.0 - with])?,
    ))
}

/// `[[√T, i√R], [i√R, √T]]`: transmission keeps the path label.
pub fn beam_splitter(r: f64) -> Result<UnitaryOp> {
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::InvalidParams(format!("reflectivity {r} outside [0, 1]")));
    }
    let (t, r) = ((1.0 - r).sqrt(), r.sqrt());
    UnitaryOp::new(CMatrix::from_rows(&[
        vec![Complex64::new(t, 0.0), Complex64::new(0.0, r)],
        vec![Complex64::new(0.0, r), Complex64::new(t, 0.0)],
    ])?)
}

/// `diag(1, e^{iφ})`: phase on the `-1` arm.
pub fn phase_shift(phi: f64) -> Result<UnitaryOp> {
    UnitaryOp::new(CMatrix::diagonal(&[Complex64::new(1.0, 0.0), Complex64::from_polar(1.0, phi)]))
}

/// Exchanges the two path labels.
pub fn port_swap() -> UnitaryOp {
    UnitaryOp::new(CMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).expect("2x2"))
        .expect("permutation is unitary")
}

/// Two-level scenario with checkpoints `t0, t1, t2`.
///
/// The output ports after the second beam splitter are labelled so that
/// reflection keeps the label (`C12 = 2 R2 − 1`), while at the first beam
/// splitter transmission does (`C01 = 1 − 2 R1`); hence the port swap in the
/// second segment.
pub fn mz_build_scenario(p: &MzParams) -> Result<TemporalScenario> {
    let initial = DensityOperator::diagonal(&[p.q, 1.0 - p.q])?;
    let first = beam_splitter(p.r1)?;
    let second = port_swap().after(&beam_splitter(p.r2)?.after(&phase_shift(p.phi)?)?)?;
    TemporalScenario::new(initial, vec![first, second], vec![ProjectiveMeasurement::dichotomic(); 3])
}
